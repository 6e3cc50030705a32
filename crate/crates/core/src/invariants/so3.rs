//! SO(3) invariants of `g` vectors in `Q^3`: the scalar products
//! `T_{i,j} = u_i·u_j` and the triple products `T_{i,j,k} = det(u_i|u_j|u_k)`,
//! together with the traceless 2x2 matrix model in which they become
//! traces of products.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{GaussianRational, Rational, RationalMatrix};
use crate::determinantal::subsets;
use crate::error::{Error, Result};

/// Values of the generating invariants on a tuple of vectors; keys are
/// 1-based and increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SO3Table {
    pub g: usize,
    pub t2: BTreeMap<(usize, usize), Rational>,
    pub t3: BTreeMap<(usize, usize, usize), Rational>,
}

impl SO3Table {
    /// `T_{i,j}` in either index order.
    pub fn pair(&self, i: usize, j: usize) -> Rational {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.t2.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    /// `T_{i,j,k}` with the sign of the sorting permutation; zero on a
    /// repeated index.
    pub fn triple(&self, i: usize, j: usize, k: usize) -> Rational {
        let mut v = [i, j, k];
        let mut negative = false;
        for a in 0..3 {
            for b in 0..(2 - a) {
                if v[b] == v[b + 1] {
                    return Rational::zero();
                }
                if v[b] > v[b + 1] {
                    v.swap(b, b + 1);
                    negative = !negative;
                }
            }
        }
        let x = self.t3.get(&(v[0], v[1], v[2])).cloned().unwrap_or_else(Rational::zero);
        if negative { -x } else { x }
    }
}

fn det3(a: &[Rational], b: &[Rational], c: &[Rational]) -> Rational {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

pub fn so3_eval_from_vectors(u: &[Vec<Rational>]) -> Result<SO3Table> {
    if u.is_empty() {
        return Err(Error::InvalidInput("need at least one vector".into()));
    }
    if let Some(v) = u.iter().find(|v| v.len() != 3) {
        return Err(Error::DimensionMismatch(format!("vector of length {} is not in Q^3", v.len())));
    }
    let g = u.len();
    let mut t2 = BTreeMap::new();
    for i in 0..g {
        for j in i..g {
            let dot: Rational = (0..3).map(|k| &u[i][k] * &u[j][k]).sum();
            t2.insert((i + 1, j + 1), dot);
        }
    }
    let mut t3 = BTreeMap::new();
    for s in subsets(g, 3) {
        t3.insert((s[0] + 1, s[1] + 1, s[2] + 1), det3(&u[s[0]], &u[s[1]], &u[s[2]]));
    }
    Ok(SO3Table { g, t2, t3 })
}

fn fmt_idx(v: &[usize]) -> String {
    v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")
}

/// Identifiers of the relations that fail on `t`:
/// `minor4[R|C]` for 4x4 minors of `[T_{i,j}]`, `rel1[I|J]` for
/// `T_I T_J = det[T_{i_n,j_m}]`, and `rel2[i0,i1,i2,i3;i4]` for the
/// alternating five-index relation. Empty when all hold.
pub fn so3_verify_relations(t: &SO3Table) -> Vec<String> {
    let g = t.g;
    let mut violated = Vec::new();
    let gram = |rows: &[usize], cols: &[usize]| {
        RationalMatrix::from_fn(rows.len(), cols.len(), |a, b| t.pair(rows[a] + 1, cols[b] + 1))
    };

    let quads = subsets(g, 4);
    for (a, rows) in quads.iter().enumerate() {
        for cols in &quads[a..] {
            if !gram(rows, cols).determinant().expect("square").is_zero() {
                violated.push(format!("minor4[{}|{}]", fmt_idx(rows), fmt_idx(cols)));
            }
        }
    }

    let triples = subsets(g, 3);
    for (a, ti) in triples.iter().enumerate() {
        for tj in &triples[a..] {
            let lhs = t.triple(ti[0] + 1, ti[1] + 1, ti[2] + 1) * t.triple(tj[0] + 1, tj[1] + 1, tj[2] + 1);
            let rhs = gram(ti, tj).determinant().expect("square");
            if lhs != rhs {
                violated.push(format!("rel1[{}|{}]", fmt_idx(ti), fmt_idx(tj)));
            }
        }
    }

    for q in &quads {
        for i4 in 0..g {
            let mut acc = Rational::zero();
            for s in 0..4 {
                let rest: Vec<usize> = (0..4).filter(|&x| x != s).map(|x| q[x] + 1).collect();
                let term = t.pair(q[s] + 1, i4 + 1) * t.triple(rest[0], rest[1], rest[2]);
                if s % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            if !acc.is_zero() {
                violated.push(format!("rel2[{};{}]", fmt_idx(q), i4 + 1));
            }
        }
    }
    violated
}

/// A 2x2 matrix over `Q(i)`.
pub type Matrix2 = [[GaussianRational; 2]; 2];

/// `[[u1, u2 - i u3], [u2 + i u3, -u1]]`.
pub fn vector_to_matrix(u: &[GaussianRational; 3]) -> Matrix2 {
    let iu3 = &GaussianRational::i() * &u[2];
    [[u[0].clone(), &u[1] - &iu3], [&u[1] + &iu3, -&u[0]]]
}

/// Inverse of [`vector_to_matrix`] on traceless matrices.
pub fn matrix_to_vector(x: &Matrix2) -> Result<[GaussianRational; 3]> {
    if !(&x[0][0] + &x[1][1]).is_zero() {
        return Err(Error::InvalidInput("matrix is not traceless".into()));
    }
    let half = GaussianRational::real(Rational::new(1.into(), 2.into()));
    let minus_half_i = GaussianRational::new(Rational::zero(), Rational::new((-1).into(), 2.into()));
    let u2 = &(&x[0][1] + &x[1][0]) * &half;
    // x10 - x01 = 2 i u3
    let u3 = &(&x[1][0] - &x[0][1]) * &minus_half_i;
    Ok([x[0][0].clone(), u2, u3])
}

fn mul2(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// `Tr(X_1 X_2 ... X_k)`.
pub fn trace_of_product(ms: &[Matrix2]) -> GaussianRational {
    let one = GaussianRational::real(Rational::one());
    let id: Matrix2 = [[one.clone(), GaussianRational::zero()], [GaussianRational::zero(), one]];
    let p = ms.iter().fold(id, |acc, m| mul2(&acc, m));
    &p[0][0] + &p[1][1]
}
