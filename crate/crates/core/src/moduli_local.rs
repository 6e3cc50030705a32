//! Local structure at a non-stable point whose graded object splits into
//! two non-isomorphic stable summands.
//!
//! The completed local ring there is a smooth factor (the trace-free part
//! of the diagonal Ext groups) times the affine cone over a Segre product
//! `P^{d-1} x P^{d-1}`, with `d = r1·r2·(g-1)`. Everything in this module
//! follows from that description: tangent space, the 2x2-minor
//! presentation of the cone, its multiplicity `C(2d-2, d-1)`, and the
//! multiplicity of the theta divisor.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{binomial, factorial, Polynomial, Rational, RationalMatrix};
use crate::error::{Error, Result};

/// Presentations with more equations than this are refused.
pub const MAX_EQUATIONS: usize = 250_000;

/// Genus and the ranks of the two stable summands `gr1`, `gr2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SplitPoint {
    pub g: u64,
    pub r1: u64,
    pub r2: u64,
}

impl SplitPoint {
    pub fn new(g: u64, r1: u64, r2: u64) -> Result<Self> {
        if g < 2 {
            return Err(Error::InvalidInput(format!("genus must be at least 2, got {g}")));
        }
        if r1 == 0 || r2 == 0 {
            return Err(Error::InvalidInput("summand ranks must be positive".into()));
        }
        Ok(Self { g, r1, r2 })
    }

    pub fn ext_dims(&self) -> ExtDims {
        ExtDims::of(self)
    }

    /// Dimension of `Ext^1(gr1, gr2)` (equal to that of `Ext^1(gr2, gr1)`).
    pub fn off_diagonal_dim(&self) -> u64 {
        ext_dim(self.g, self.r1, self.r2, false)
    }

    /// Dimension of the trace-free part of `Ext^1(gr1,gr1) ⊕ Ext^1(gr2,gr2)`,
    /// assuming the sum-of-traces map onto `H^1(O)` is surjective.
    pub fn free_dim(&self) -> u64 {
        let d = self.ext_dims().d;
        d[0][0] + d[1][1] - self.g
    }
}

/// `d[i][j] = dim Ext^1(gr_i, gr_j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtDims {
    pub d: [[u64; 2]; 2],
}

impl ExtDims {
    pub fn of(p: &SplitPoint) -> Self {
        let r = [p.r1, p.r2];
        let mut d = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                d[i][j] = ext_dim(p.g, r[i], r[j], i == j);
            }
        }
        Self { d }
    }
}

/// `r_i r_j (g-1)`, plus one on the diagonal.
pub fn ext_dim(g: u64, ri: u64, rj: u64, diagonal: bool) -> u64 {
    ri * rj * (g - 1) + u64::from(diagonal)
}

/// A cone given by generators of its ideal, together with the data
/// reported alongside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConePresentation {
    pub variables: Vec<String>,
    pub equations: Vec<Polynomial>,
    /// Number of leading variables that appear in no equation.
    pub free_dim: usize,
    pub declared_multiplicity: BigInt,
    pub tangent_space_dim: usize,
}

impl ConePresentation {
    pub fn ambient_dim(&self) -> usize {
        self.variables.len()
    }

    /// Zariski tangent dimension at the origin read off the presentation:
    /// the number of variables minus the rank of the linear parts of the
    /// equations.
    pub fn zariski_tangent_dim(&self) -> usize {
        let n = self.variables.len();
        let mut rows = Vec::new();
        for eq in &self.equations {
            let lin = eq.homogeneous_part(1);
            if lin.is_zero() {
                continue;
            }
            let mut row = vec![Rational::zero(); n];
            for (e, c) in lin.terms() {
                let idx = e.iter().position(|&k| k == 1).expect("linear term");
                row[idx] = c.clone();
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return n;
        }
        n - RationalMatrix::from_rows(rows).expect("rows sized to ring").rank()
    }

    /// Initial (lowest-degree) forms of the listed equations.
    pub fn initial_forms(&self) -> Vec<Polynomial> {
        self.equations.iter().map(Polynomial::initial_form).collect()
    }

    /// Multiplicity at the origin of a hypersurface: the order of its
    /// equation. `None` unless there is exactly one equation.
    pub fn hypersurface_multiplicity(&self) -> Option<u32> {
        match self.equations.as_slice() {
            [eq] => eq.min_degree(),
            _ => None,
        }
    }
}

/// Rank of a quadratic form given as a homogeneous degree-2 polynomial.
pub fn quadric_rank(q: &Polynomial) -> Result<usize> {
    if !q.is_zero() && (q.min_degree() != Some(2) || q.total_degree() != Some(2)) {
        return Err(Error::InvalidInput("not a quadratic form".into()));
    }
    let n = q.num_vars();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut m = RationalMatrix::zeros(n, n);
    for (e, c) in q.terms() {
        let idx: Vec<usize> = e
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
            .collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m.set(i, i, c.clone());
        } else {
            m.set(i, j, c * &half);
            m.set(j, i, c * &half);
        }
    }
    Ok(m.rank())
}

/// `[(r1^2 + r2^2)(g-1) + 2 - g] + [r1 r2 (g-1)]^2`.
pub fn tangent_space_dim_case1(p: &SplitPoint) -> u64 {
    let d = p.off_diagonal_dim();
    p.free_dim() + d * d
}

/// `C(2d-2, d-1)` with `d = r1 r2 (g-1)`.
pub fn multiplicity_case1(p: &SplitPoint) -> BigInt {
    let d = p.off_diagonal_dim();
    binomial(2 * d - 2, d - 1)
}

fn shared_vars(names: &[String]) -> Arc<[String]> {
    names.to_vec().into()
}

/// Free coordinates `Y_1..Y_m`, Segre coordinates `Z_k_l` (k-major), and
/// every 2x2 minor `Z_k_l Z_k'_l' - Z_k_l' Z_k'_l` with `k < k'`, `l < l'`.
pub fn tangent_cone_case1(p: &SplitPoint) -> Result<ConePresentation> {
    let free = p.free_dim() as usize;
    let d = p.off_diagonal_dim() as usize;
    let minors = binomial(d as u64, 2).pow(2);
    if minors > BigInt::from(MAX_EQUATIONS) {
        return Err(Error::InvalidInput(format!("presentation would need {minors} minors")));
    }

    let mut names: Vec<String> = (1..=free).map(|i| format!("Y_{i}")).collect();
    for k in 1..=d {
        for l in 1..=d {
            names.push(format!("Z_{k}_{l}"));
        }
    }
    let vars = shared_vars(&names);
    let z = |k: usize, l: usize| Polynomial::var_at(vars.clone(), free + k * d + l);

    let mut equations = Vec::new();
    for k in 0..d {
        for k2 in (k + 1)..d {
            for l in 0..d {
                for l2 in (l + 1)..d {
                    let minor = &(&z(k, l) * &z(k2, l2)) - &(&z(k, l2) * &z(k2, l));
                    equations.push(minor);
                }
            }
        }
    }

    Ok(ConePresentation {
        variables: names,
        equations,
        free_dim: free,
        declared_multiplicity: multiplicity_case1(p),
        tangent_space_dim: tangent_space_dim_case1(p) as usize,
    })
}

/// Number of monomials of degree `n` in `k` variables, by dynamic
/// programming over the variables.
fn count_monomials(k: u64, n: u64) -> BigInt {
    // ways[s] = monomials of degree s in the variables seen so far
    let mut ways = vec![BigInt::one(); n as usize + 1];
    for _ in 1..k {
        for s in 1..=n as usize {
            let prev = ways[s - 1].clone();
            ways[s] += prev;
        }
    }
    if k == 0 {
        return if n == 0 { BigInt::one() } else { BigInt::zero() };
    }
    ways[n as usize].clone()
}

/// Degree of the Segre embedding of `P^{a-1} x P^{b-1}` computed from its
/// Hilbert function: `H(n)` (monomial counts) at `n = 0..a+b-2`, exact
/// interpolation in Newton form, leading coefficient times `(a+b-2)!`.
pub fn segre_degree_oracle(a: u64, b: u64) -> Result<BigInt> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidInput("Segre factors need positive dimension".into()));
    }
    let deg = (a + b - 2) as usize;
    let mut diffs: Vec<Rational> = (0..=deg as u64)
        .map(|n| Rational::from_integer(count_monomials(a, n) * count_monomials(b, n)))
        .collect();
    // Newton coefficients on the nodes 0..deg: the last divided difference
    // is the leading coefficient of the interpolant.
    for level in 1..=deg {
        for i in (level..=deg).rev() {
            diffs[i] = (&diffs[i] - &diffs[i - 1]) / Rational::from_integer(BigInt::from(level));
        }
    }
    let top = &diffs[deg] * Rational::from_integer(factorial(deg as u64));
    if !top.is_integer() {
        return Err(Error::Internal(format!("non-integral Segre degree {top}")));
    }
    Ok(top.to_integer())
}

/// Multiplicity of the theta divisor at a split point with rank-one
/// summands: `h · C(2g-4, g-2)` where `h = dim H^0(gr1)`.
pub fn theta_multiplicity(g: u64, h: u64) -> Result<BigInt> {
    if g < 2 {
        return Err(Error::InvalidInput(format!("genus must be at least 2, got {g}")));
    }
    if h == 0 {
        return Err(Error::NotOnTheta);
    }
    Ok(BigInt::from(h) * binomial(2 * g - 4, g - 2))
}
