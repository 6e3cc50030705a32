//! The polarized Cayley–Hamilton identity.
//!
//! For an `n x n` matrix `X` with characteristic polynomial `P_X`, the
//! form `f(X) = Tr(X · P_X(X))` vanishes identically, so its full
//! polarization in `n + 1` matrix arguments does too. Evaluating the
//! polarization at random rational matrices checks the implementation of
//! the characteristic polynomial and of the polarization formula.

use num_traits::Zero;

use crate::algebra::sampling::RationalSampler;
use crate::algebra::{Rational, RationalMatrix};
use crate::error::{Error, Result};

/// How `P_X` is formed inside `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharPolyMode {
    /// The full characteristic polynomial.
    Full,
    /// Only its leading term `λ^n`, so that `f(X) = Tr(X^{n+1})`.
    LeadingTerm,
}

/// Coefficients `c_0..c_n` of `det(λI - A)` (so `c_n = 1`), by the
/// Faddeev–LeVerrier recursion.
pub fn characteristic_polynomial(a: &RationalMatrix) -> Result<Vec<Rational>> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::from_integer(1.into());
    let mut m = RationalMatrix::zeros(n, n);
    let id = RationalMatrix::identity(n);
    for k in 1..=n {
        m = a.checked_mul(&m)?.checked_add(&id.scale(&c[n - k + 1]))?;
        let am = a.checked_mul(&m)?;
        c[n - k] = -am.trace() / Rational::from_integer(k.into());
    }
    Ok(c)
}

fn f(x: &RationalMatrix, mode: CharPolyMode) -> Result<Rational> {
    let n = x.rows();
    let coeffs = match mode {
        CharPolyMode::Full => characteristic_polynomial(x)?,
        CharPolyMode::LeadingTerm => {
            let mut c = vec![Rational::zero(); n + 1];
            c[n] = Rational::from_integer(1.into());
            c
        }
    };
    // Horner: P(X) = (...(c_n X + c_{n-1}) X + ...) + c_0
    let id = RationalMatrix::identity(n);
    let mut p = id.scale(&coeffs[n]);
    for c in coeffs[..n].iter().rev() {
        p = p.checked_mul(x)?.checked_add(&id.scale(c))?;
    }
    Ok(x.checked_mul(&p)?.trace())
}

/// `Σ_{S ≠ ∅} (-1)^{k - |S|} f(Σ_{i∈S} H_i)` over the `k` matrices `hs`.
pub fn polarized_trace_form(hs: &[RationalMatrix], mode: CharPolyMode) -> Result<Rational> {
    let k = hs.len();
    if k == 0 || k > 16 {
        return Err(Error::InvalidInput(format!("cannot polarize over {k} arguments")));
    }
    let n = hs[0].rows();
    let mut total = Rational::zero();
    for mask in 1u32..(1 << k) {
        let mut sum = RationalMatrix::zeros(n, n);
        for (i, h) in hs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = sum.checked_add(h)?;
            }
        }
        let v = f(&sum, mode)?;
        if (k - mask.count_ones() as usize).is_multiple_of(2) {
            total += v;
        } else {
            total -= v;
        }
    }
    Ok(total)
}

/// Runs `trials` evaluations on independent random `(n+1)`-tuples of
/// `n x n` matrices; true iff every polarization is exactly zero.
pub fn verify_polarized_trace_identity(n: usize, trials: usize, seed: u64) -> Result<bool> {
    verify_polarized_trace_identity_with(n, trials, seed, CharPolyMode::Full)
}

pub fn verify_polarized_trace_identity_with(n: usize, trials: usize, seed: u64, mode: CharPolyMode) -> Result<bool> {
    if n == 0 || n > 4 {
        return Err(Error::InvalidInput(format!("matrix size {n} outside 1..=4")));
    }
    if trials == 0 {
        return Err(Error::InvalidInput("need at least one trial".into()));
    }
    for trial in 0..trials {
        let mut s = RationalSampler::with_stream(seed, trial as u64);
        let hs: Vec<RationalMatrix> = (0..=n).map(|_| s.matrix(n, n)).collect();
        if !polarized_trace_form(&hs, mode)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn characteristic_polynomial_of_small_matrices() {
        let a = RationalMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(3), int(4)]]).unwrap();
        // λ^2 - 5λ - 2
        assert_eq!(characteristic_polynomial(&a).unwrap(), vec![int(-2), int(-5), int(1)]);
        let d = RationalMatrix::diagonal(&[int(1), int(2), int(3)]);
        // (λ-1)(λ-2)(λ-3)
        assert_eq!(characteristic_polynomial(&d).unwrap(), vec![int(-6), int(11), int(-6), int(1)]);
    }

    #[test]
    fn identity_holds() {
        assert!(verify_polarized_trace_identity(2, 1, 0).unwrap());
        assert!(verify_polarized_trace_identity(2, 20, 3).unwrap());
        assert!(verify_polarized_trace_identity(3, 10, 42).unwrap());
    }

    #[test]
    fn truncated_polynomial_fails() {
        assert!(!verify_polarized_trace_identity_with(2, 100, 7, CharPolyMode::LeadingTerm).unwrap());
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(verify_polarized_trace_identity(0, 1, 0).is_err());
        assert!(verify_polarized_trace_identity(2, 0, 0).is_err());
    }
}
