//! Degree-bounded ideal membership by linear algebra.
//!
//! To decide whether `target` lies in the ideal spanned by `generators`
//! with cofactors of bounded degree, every product `m·f_i` with
//! `deg m + deg f_i <= D` becomes a column of a coefficient matrix and the
//! target's coefficient vector is solved for. For homogeneous generators
//! and a homogeneous target of degree `D` this is exact membership.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::matrix::RationalMatrix;
use super::poly::{Exponent, Polynomial};
use super::rational::Rational;
use crate::error::{Error, Result};

/// A certificate `target = Σ cofactors[i] · generators[i]`.
#[derive(Debug, Clone)]
pub struct Membership {
    pub cofactors: Vec<Polynomial>,
}

/// All exponent vectors in `n` variables of total degree exactly `d`.
pub(crate) fn monomials_of_degree(n: usize, d: u32) -> Vec<Exponent> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(n, d - k, prefix, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Finds cofactors of degree at most `deg(target) - deg(f_i)` expressing
/// `target` in the ideal, or `None` if no such combination exists. The
/// returned certificate is re-multiplied and checked before it is handed
/// back.
pub fn ideal_membership(target: &Polynomial, generators: &[Polynomial]) -> Result<Option<Membership>> {
    let vars = target.vars().clone();
    for g in generators {
        if g.vars() != &vars {
            return Err(Error::VariableMismatch { left: target.var_names(), right: g.var_names() });
        }
    }
    if target.is_zero() {
        let cofactors = generators.iter().map(|_| Polynomial::zero(vars.clone())).collect();
        return Ok(Some(Membership { cofactors }));
    }
    let top = target.total_degree().unwrap_or(0);
    let n = vars.len();

    // columns: (generator index, multiplier monomial)
    let mut columns: Vec<(usize, Exponent)> = Vec::new();
    let mut products: Vec<Polynomial> = Vec::new();
    for (gi, g) in generators.iter().enumerate() {
        let Some(gd) = g.total_degree() else { continue };
        if gd > top {
            continue;
        }
        for d in 0..=(top - gd) {
            for mono in monomials_of_degree(n, d) {
                let m = Polynomial::monomial(vars.clone(), mono.clone(), Rational::from_integer(1.into()));
                products.push(&m * g);
                columns.push((gi, mono));
            }
        }
    }

    let mut row_index: BTreeMap<Exponent, usize> = BTreeMap::new();
    for p in products.iter().chain(std::iter::once(target)) {
        for (e, _) in p.terms() {
            let next = row_index.len();
            row_index.entry(e.clone()).or_insert(next);
        }
    }
    let rows = row_index.len();
    let mut a = RationalMatrix::zeros(rows, columns.len());
    for (j, p) in products.iter().enumerate() {
        for (e, c) in p.terms() {
            a.set(row_index[e], j, c.clone());
        }
    }
    let mut b = vec![Rational::zero(); rows];
    for (e, c) in target.terms() {
        b[row_index[e]] = c.clone();
    }

    // any particular solution will do: take the RREF of [A | b]
    let aug = RationalMatrix::from_fn(rows, columns.len() + 1, |i, j| {
        if j < columns.len() { a.get(i, j).clone() } else { b[i].clone() }
    });
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&columns.len()) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); columns.len()];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(row, columns.len()).clone();
    }

    let mut cofactors: Vec<Polynomial> = generators.iter().map(|_| Polynomial::zero(vars.clone())).collect();
    for ((gi, mono), coef) in columns.into_iter().zip(x) {
        if coef.is_zero() {
            continue;
        }
        let m = Polynomial::monomial(vars.clone(), mono, coef);
        cofactors[gi] = &cofactors[gi] + &m;
    }
    let mut check = Polynomial::zero(vars.clone());
    for (c, g) in cofactors.iter().zip(generators) {
        check = &check + &(c * g);
    }
    if &check != target {
        return Err(Error::Internal("membership certificate does not reproduce the target".into()));
    }
    Ok(Some(Membership { cofactors }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::var_list;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(1, 4), vec![vec![4]]);
        assert_eq!(monomials_of_degree(4, 0), vec![vec![0, 0, 0, 0]]);
    }

    #[test]
    fn membership_in_monomial_ideal() {
        let r = var_list(&["x", "y"]).unwrap();
        let x = Polynomial::var(r.clone(), "x").unwrap();
        let y = Polynomial::var(r.clone(), "y").unwrap();
        let target = &(&x * &y) + &x.pow(2);
        let cert = ideal_membership(&target, std::slice::from_ref(&x)).unwrap().unwrap();
        assert_eq!(&cert.cofactors[0] * &x, target);
        assert!(ideal_membership(&y, std::slice::from_ref(&x)).unwrap().is_none());
        assert!(ideal_membership(&y.pow(2), &[x.pow(2), (&x * &y)]).unwrap().is_none());
    }
}
