//! Rank-two bundles with trivial graded object `O ⊕ O`.
//!
//! The invariant ring is generated by `T_i_j` (symmetric) and `T_i_j_k`
//! (alternating); its tangent cone is cut out by the 4x4 minors of the
//! symmetric matrix `[T_i_j]`, all products of two 3-index variables, and
//! the five-index linear-in-`T_ijk` relations. The multiplicity is
//! `(1 + dim V_T) · d_g^{g-3}` where `d_g^r` is the degree of the
//! symmetric determinantal locus of corank `>= r`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::sampling::RationalSampler;
use crate::algebra::{binomial, symbolic_determinant, Polynomial, Rational, RationalMatrix};
use crate::error::{Error, Result};
use crate::moduli_local::ConePresentation;

/// Degree of the locus of `g x g` symmetric matrices of corank `>= r`:
/// `∏_{a<r} C(g+a, r-a) / C(2a+1, a)`.
pub fn harris_tu_degree(g: u64, r: u64) -> Result<BigInt> {
    if r > g {
        return Err(Error::InvalidInput(format!("corank {r} exceeds size {g}")));
    }
    let mut acc = Rational::one();
    for a in 0..r {
        acc *= Rational::new(binomial(g + a, r - a), binomial(2 * a + 1, a));
    }
    if !acc.is_integer() {
        return Err(Error::Internal(format!("degree product {acc} is not an integer")));
    }
    Ok(acc.to_integer())
}

/// `C(g,3) - C(g-3,3)` for `g >= 3`, zero for `g = 2`.
pub fn corank_formula(g: u64) -> Result<u64> {
    if g < 2 {
        return Err(Error::InvalidInput(format!("genus must be at least 2, got {g}")));
    }
    if g < 3 {
        return Ok(0);
    }
    let v = binomial(g, 3) - binomial(g - 3, 3);
    Ok(u64::try_from(v).expect("small count"))
}

/// The contraction map `V^∨ ⊗ Λ^4 V -> Λ^3 V`, `x ⊗ y ↦ T(x) ⌟ y`, for a
/// symmetric matrix `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorankMap {
    t: RationalMatrix,
}

impl CorankMap {
    pub fn new(t: RationalMatrix) -> Result<Self> {
        if !t.is_square() {
            return Err(Error::NotSquare { rows: t.rows(), cols: t.cols() });
        }
        if !t.is_symmetric() {
            return Err(Error::InvalidInput("matrix is not symmetric".into()));
        }
        Ok(Self { t })
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        Self { t: RationalMatrix::diagonal(values) }
    }

    pub fn g(&self) -> usize {
        self.t.rows()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.t
    }

    /// Matrix of the map: rows indexed by increasing 3-subsets, columns by
    /// `(i, J)` with `J` an increasing 4-subset, both in lex order.
    pub fn contraction_matrix(&self) -> RationalMatrix {
        let g = self.g();
        let triples = subsets(g, 3);
        let quads = subsets(g, 4);
        let mut out = RationalMatrix::zeros(triples.len(), g * quads.len());
        for i in 0..g {
            for (qi, quad) in quads.iter().enumerate() {
                let col = i * quads.len() + qi;
                for (s, &js) in quad.iter().enumerate() {
                    let coef = self.t.get(i, js);
                    if coef.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = quad.iter().copied().filter(|&x| x != js).collect();
                    let row = triples.binary_search(&rest).expect("3-subset present");
                    let signed = if s % 2 == 0 { coef.clone() } else { -coef };
                    let v = out.get(row, col) + &signed;
                    out.set(row, col, v);
                }
            }
        }
        out
    }
}

/// Increasing `k`-subsets of `0..n` in lex order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `dim Λ^3 V - rank` of the explicit contraction matrix.
pub fn corank_bruteforce(m: &CorankMap) -> usize {
    let g = m.g() as u64;
    let total = usize::try_from(binomial(g, 3)).expect("small count");
    if g < 4 {
        return total;
    }
    total - m.contraction_matrix().rank()
}

/// Random symmetric `G^T D G` with `D = diag(d1, d2, d3, 0, ...)`, all
/// `d_i` and `G` drawn from the sampler, `G` invertible.
pub fn random_rank3_symmetric(s: &mut RationalSampler, g: usize) -> RationalMatrix {
    assert!(g >= 3, "rank 3 needs at least 3 rows");
    let gm = s.invertible_matrix(g);
    let mut d = vec![Rational::zero(); g];
    for v in d.iter_mut().take(3) {
        *v = s.nonzero_rational();
    }
    let dm = RationalMatrix::diagonal(&d);
    gm.transpose()
        .checked_mul(&dm)
        .and_then(|x| x.checked_mul(&gm))
        .expect("square factors")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank2TrivialReport {
    pub g: u64,
    /// `dim Sym^2 V + dim Λ^3 V`.
    pub tangent_space_dim: u64,
    /// `dim V_T`, the length excess of the tangent cone along its reduced part.
    pub corank_dim: u64,
    /// `d_g^{g-3}`, taken as 1 when `g = 2`.
    pub segre_factor: BigInt,
    pub multiplicity: BigInt,
    pub cone: ConePresentation,
}

/// Multiplicity of the trivial bundle in the rank-two moduli space.
pub fn multiplicity_trivial_rank2(g: u64) -> Result<Rank2TrivialReport> {
    let corank_dim = corank_formula(g)?;
    let (segre_factor, multiplicity) = if g == 2 {
        (BigInt::one(), BigInt::one())
    } else {
        let d = harris_tu_degree(g, g - 3)?;
        let m = BigInt::from(1 + corank_dim) * &d;
        (d, m)
    };
    let tangent_space_dim = u64::try_from(binomial(g + 1, 2) + binomial(g, 3)).expect("small count");
    let mut cone = tangent_cone_equations(g)?;
    cone.declared_multiplicity = multiplicity.clone();
    Ok(Rank2TrivialReport { g, tangent_space_dim, corank_dim, segre_factor, multiplicity, cone })
}

/// Tangent cone of the trivial point as a presentation.
pub fn tangent_cone_trivial_rank2(g: u64) -> Result<ConePresentation> {
    Ok(multiplicity_trivial_rank2(g)?.cone)
}

/// Names `T_i_j` (i <= j) then `T_i_j_k` (i < j < k), 1-based, lex order.
pub fn trivial_rank2_variables(g: usize) -> Vec<String> {
    let mut names = Vec::new();
    for i in 1..=g {
        for j in i..=g {
            names.push(format!("T_{i}_{j}"));
        }
    }
    for t in subsets(g, 3) {
        names.push(format!("T_{}_{}_{}", t[0] + 1, t[1] + 1, t[2] + 1));
    }
    names
}

/// Index helpers for the `T` variables of a given genus.
pub(crate) struct TIndex {
    g: usize,
    triples: Vec<Vec<usize>>,
}

impl TIndex {
    pub(crate) fn new(g: usize) -> Self {
        Self { g, triples: subsets(g, 3) }
    }

    /// Position of `T_{i,j}` (0-based indices, either order).
    pub(crate) fn pair(&self, i: usize, j: usize) -> usize {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        // rows before a contribute g, g-1, ..., g-a+1 entries
        a * self.g - a * (a.saturating_sub(1)) / 2 + (b - a)
    }

    pub(crate) fn pair_count(&self) -> usize {
        self.g * (self.g + 1) / 2
    }

    /// Position and sign of `T_{i,j,k}`; `None` on a repeated index.
    pub(crate) fn triple(&self, idx: [usize; 3]) -> Option<(usize, i32)> {
        let mut v = idx;
        let mut sign = 1;
        // bubble sort, counting transpositions
        for a in 0..3 {
            for b in 0..(2 - a) {
                if v[b] == v[b + 1] {
                    return None;
                }
                if v[b] > v[b + 1] {
                    v.swap(b, b + 1);
                    sign = -sign;
                }
            }
        }
        let pos = self.triples.binary_search(&v.to_vec()).expect("sorted triple present");
        Some((self.pair_count() + pos, sign))
    }

    pub(crate) fn triples(&self) -> &[Vec<usize>] {
        &self.triples
    }
}

fn signed_var(vars: &Arc<[String]>, slot: Option<(usize, i32)>) -> Polynomial {
    match slot {
        None => Polynomial::zero(vars.clone()),
        Some((pos, s)) => {
            let v = Polynomial::var_at(vars.clone(), pos);
            if s < 0 { -&v } else { v }
        }
    }
}

/// `T_{i0,i4} T_{i1,i2,i3} - T_{i1,i4} T_{i0,i2,i3} + T_{i2,i4} T_{i0,i1,i3} - T_{i3,i4} T_{i0,i1,i2}`
/// over a ring laid out by `TIndex`.
pub(crate) fn five_index_relation(vars: &Arc<[String]>, ix: &TIndex, quad: [usize; 4], i4: usize) -> Polynomial {
    let mut acc = Polynomial::zero(vars.clone());
    for a in 0..4 {
        let rest: Vec<usize> = (0..4).filter(|&b| b != a).map(|b| quad[b]).collect();
        let t2 = Polynomial::var_at(vars.clone(), ix.pair(quad[a], i4));
        let t3 = signed_var(vars, ix.triple([rest[0], rest[1], rest[2]]));
        let term = &t2 * &t3;
        acc = if a % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// 4x4 minors of the symmetric matrix, one per unordered pair of row and
/// column sets, zero minors dropped.
pub(crate) fn symmetric_four_minors(vars: &Arc<[String]>, ix: &TIndex, g: usize) -> Result<Vec<Polynomial>> {
    let quads = subsets(g, 4);
    let mut out = Vec::new();
    for (a, rows) in quads.iter().enumerate() {
        for cols in &quads[a..] {
            let m: Vec<Vec<Polynomial>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| Polynomial::var_at(vars.clone(), ix.pair(i, j))).collect())
                .collect();
            let det = symbolic_determinant(&m)?;
            if !det.is_zero() {
                out.push(det);
            }
        }
    }
    Ok(out)
}

fn poly_key(p: &Polynomial) -> Vec<(Vec<u32>, Rational)> {
    p.terms().map(|(e, c)| (e.clone(), c.clone())).collect()
}

fn tangent_cone_equations(g: u64) -> Result<ConePresentation> {
    if g < 2 {
        return Err(Error::InvalidInput(format!("genus must be at least 2, got {g}")));
    }
    let g = g as usize;
    let names = trivial_rank2_variables(g);
    let vars: Arc<[String]> = names.clone().into();
    let ix = TIndex::new(g);

    let mut equations = symmetric_four_minors(&vars, &ix, g)?;

    let n3 = ix.triples().len();
    let base = ix.pair_count();
    for a in 0..n3 {
        for b in a..n3 {
            let p = &Polynomial::var_at(vars.clone(), base + a) * &Polynomial::var_at(vars.clone(), base + b);
            equations.push(p);
        }
    }

    let mut seen = BTreeSet::new();
    for quad in subsets(g, 4) {
        for i4 in 0..g {
            let rel = five_index_relation(&vars, &ix, [quad[0], quad[1], quad[2], quad[3]], i4).monic();
            if rel.is_zero() {
                continue;
            }
            if seen.insert(poly_key(&rel)) {
                equations.push(rel);
            }
        }
    }

    let free_dim = if g == 2 { names.len() } else { 0 };
    Ok(ConePresentation {
        tangent_space_dim: names.len(),
        variables: names,
        equations,
        free_dim,
        declared_multiplicity: BigInt::zero(),
    })
}
