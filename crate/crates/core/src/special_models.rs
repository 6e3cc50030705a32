//! Named local models: the SU(3) genus-2 tangent cones, the local
//! equations of the Coble quartic and the Kummer variety in genus 3, and
//! the Hilbert polynomial computation giving the degree of the theta map.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{
    binomial, factorial, ideal_membership, int, symbolic_determinant, Polynomial, Rational, RationalMatrix,
};
use crate::error::{Error, Result};
use crate::invariants::{invariant_monomial_hilbert_basis, toric_relations, TorusActionSpec};
use crate::moduli_local::{tangent_cone_case1, ConePresentation, SplitPoint};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalModel {
    pub name: String,
    pub presentation: ConePresentation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Su3Case {
    /// Three rank-one summands, each `Ext^1` of dimension one.
    Torus,
    /// One rank-one and one rank-two summand.
    TwoSummand,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CobleCase {
    /// The point `O ⊕ O`.
    Trivial,
    /// A point `L ⊕ L^{-1}` with `L^2` nontrivial.
    Split,
}

/// Scales `p` so that the lex-greatest term of its initial form has
/// coefficient one.
fn normalize_initial(p: &Polynomial) -> Polynomial {
    match p.initial_form().terms().last() {
        Some((_, c)) => p.scale(&(Rational::one() / c)),
        None => p.clone(),
    }
}

fn hypersurface_model(name: &str, variables: Vec<String>, equation: Polynomial, free_dim: usize) -> Result<LocalModel> {
    let mut presentation = ConePresentation {
        variables,
        equations: vec![equation],
        free_dim,
        declared_multiplicity: BigInt::zero(),
        tangent_space_dim: 0,
    };
    presentation.tangent_space_dim = presentation.zariski_tangent_dim();
    let m = presentation
        .hypersurface_multiplicity()
        .ok_or_else(|| Error::Internal("hypersurface without an equation".into()))?;
    presentation.declared_multiplicity = BigInt::from(m);
    Ok(LocalModel { name: name.into(), presentation })
}

/// Local model of the rank-3 moduli space in genus 2 at a split point.
pub fn su3_genus2_local_model(case: Su3Case) -> Result<LocalModel> {
    match case {
        Su3Case::Torus => {
            let spec = TorusActionSpec::from_ranks(2, &[1, 1, 1])?;
            let gens = invariant_monomial_hilbert_basis(&spec, 3);
            let rels = toric_relations(&spec, &gens, 6)?;
            let [rel] = rels.as_slice() else {
                return Err(Error::Internal(format!("expected one toric relation, found {}", rels.len())));
            };
            // three diagonal Ext^1 of dimension g = 2, minus the determinant directions
            let free = 3 * 2 - 2;
            let mut names: Vec<String> = (1..=free).map(|i| format!("Y_{i}")).collect();
            names.extend((1..=gens.len()).map(|i| format!("X_{i}")));
            let vars: Arc<[String]> = names.clone().into();
            let images: Vec<Polynomial> =
                (0..gens.len()).map(|i| Polynomial::var_at(vars.clone(), free + i)).collect();
            let eq = normalize_initial(&rel.substitute(&images)?);
            hypersurface_model("su3-genus2-torus", names, eq, free)
        }
        Su3Case::TwoSummand => Ok(LocalModel {
            name: "su3-genus2-two-summand".into(),
            presentation: tangent_cone_case1(&SplitPoint::new(2, 1, 2)?)?,
        }),
    }
}

/// Names `T_i_j`, `i <= j`, of the entries of a generic symmetric 3x3 matrix.
fn symmetric_names() -> Vec<String> {
    let mut out = Vec::new();
    for i in 1..=3 {
        for j in i..=3 {
            out.push(format!("T_{i}_{j}"));
        }
    }
    out
}

/// Ring, equation and symmetric matrix of the Coble local model.
type CobleParts = (Arc<[String]>, Polynomial, Vec<Vec<Polynomial>>);

/// `T^2 - det(S)` in the variables `T, T_1_1, T_1_2, ..., T_3_3`, with the
/// matrix entries relabeled by `perm`.
fn coble_equation(perm: [usize; 3]) -> Result<CobleParts> {
    let mut names = vec!["T".to_string()];
    names.extend(symmetric_names());
    let vars: Arc<[String]> = names.into();
    let entry = |i: usize, j: usize| {
        let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
        Polynomial::var(vars.clone(), &format!("T_{}_{}", a + 1, b + 1)).expect("named variable")
    };
    let s: Vec<Vec<Polynomial>> = (0..3).map(|i| (0..3).map(|j| entry(i, j)).collect()).collect();
    let t = Polynomial::var_at(vars.clone(), 0);
    let q = &t.pow(2) - &symbolic_determinant(&s)?;
    Ok((vars, q, s))
}

/// Local equation of the Coble quartic at a non-stable point.
pub fn coble_local_model(case: CobleCase) -> Result<LocalModel> {
    match case {
        CobleCase::Trivial => {
            let (vars, q, _) = coble_equation([0, 1, 2])?;
            hypersurface_model("coble-trivial", vars.to_vec(), q, 0)
        }
        CobleCase::Split => Ok(LocalModel {
            name: "coble-split".into(),
            presentation: tangent_cone_case1(&SplitPoint::new(3, 1, 1)?)?,
        }),
    }
}

/// True when the partial derivatives of `T^2 - det(S)` generate the same
/// ideal as `T` together with the 2x2 minors of `S`, with explicit
/// cofactors in both directions.
pub fn kummer_partials_check() -> Result<bool> {
    kummer_partials_check_relabeled([0, 1, 2])
}

/// [`kummer_partials_check`] with the rows and columns of `S` permuted.
pub fn kummer_partials_check_relabeled(perm: [usize; 3]) -> Result<bool> {
    let mut seen = perm;
    seen.sort_unstable();
    if seen != [0, 1, 2] {
        return Err(Error::InvalidInput(format!("{perm:?} is not a permutation of 0, 1, 2")));
    }
    let (vars, q, s) = coble_equation(perm)?;
    let partials: Vec<Polynomial> = vars.iter().map(|v| q.partial(v)).collect::<Result<_>>()?;

    let mut target = vec![Polynomial::var_at(vars.clone(), 0)];
    for (r1, r2) in [(0, 1), (0, 2), (1, 2)] {
        for (c1, c2) in [(0, 1), (0, 2), (1, 2)] {
            let minor = &(&s[r1][c1] * &s[r2][c2]) - &(&s[r1][c2] * &s[r2][c1]);
            if !minor.is_zero() {
                target.push(minor);
            }
        }
    }
    for p in &partials {
        if ideal_membership(p, &target)?.is_none() {
            return Ok(false);
        }
    }
    for m in &target {
        if ideal_membership(m, &partials)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One linear condition on a univariate polynomial `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HilbertConstraint {
    /// `P(at) = value`.
    Value { at: i64, value: Rational },
    /// `P(at) = 0`.
    Zero { at: i64 },
    /// `P(n) = P(2c - n)` for the center `c`.
    Symmetry { center: Rational },
}

/// Solves for the polynomial of degree at most `degree` (in the variable
/// `n`) satisfying all constraints. Symmetry about `c` is imposed as the
/// vanishing of the odd coefficients of `P(c + t)`.
pub fn constrained_hilbert_solve(degree: usize, constraints: &[HilbertConstraint]) -> Result<Polynomial> {
    let cols = degree + 1;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    let powers = |x: &Rational| -> Vec<Rational> {
        let mut v = Vec::with_capacity(cols);
        let mut p = Rational::one();
        for _ in 0..cols {
            v.push(p.clone());
            p *= x;
        }
        v
    };
    for c in constraints {
        match c {
            HilbertConstraint::Value { at, value } => {
                rows.push(powers(&int(*at)));
                rhs.push(value.clone());
            }
            HilbertConstraint::Zero { at } => {
                rows.push(powers(&int(*at)));
                rhs.push(Rational::zero());
            }
            HilbertConstraint::Symmetry { center } => {
                let cp = powers(center);
                for j in (1..cols).step_by(2) {
                    // coefficient of t^j in Σ_k c_k (center + t)^k
                    let row = (0..cols)
                        .map(|k| {
                            if k < j {
                                Rational::zero()
                            } else {
                                Rational::from_integer(binomial(k as u64, j as u64)) * &cp[k - j]
                            }
                        })
                        .collect();
                    rows.push(row);
                    rhs.push(Rational::zero());
                }
            }
        }
    }
    if rows.is_empty() {
        return Err(Error::Underdetermined(cols));
    }
    let a = RationalMatrix::from_rows(rows)?;
    let coeffs = a.solve(&rhs)?;
    let vars: Arc<[String]> = vec!["n".to_string()].into();
    let terms = coeffs.into_iter().enumerate().map(|(k, c)| (vec![k as u32], c));
    Polynomial::from_terms(vars, terms)
}

/// Constraints on the Hilbert polynomial of the theta map's image: degree
/// 8, `P(n) = P(-6-n)`, zeros at `-5..-1`, `P(0) = 1`, `P(1) = 9`.
pub fn theta_map_hilbert_constraints() -> Vec<HilbertConstraint> {
    let mut c = vec![HilbertConstraint::Symmetry { center: int(-3) }];
    c.extend((-5..=-1).map(|at| HilbertConstraint::Zero { at }));
    c.push(HilbertConstraint::Value { at: 0, value: int(1) });
    c.push(HilbertConstraint::Value { at: 1, value: int(9) });
    c
}

/// The solved Hilbert polynomial of the theta map.
pub fn theta_map_hilbert_polynomial() -> Result<Polynomial> {
    constrained_hilbert_solve(8, &theta_map_hilbert_constraints())
}

/// Leading coefficient of the Hilbert polynomial times `8!`.
pub fn degree_of_theta_map() -> Result<BigInt> {
    let p = theta_map_hilbert_polynomial()?;
    let lead = p.coefficient(&[8]) * Rational::from_integer(factorial(8));
    if !lead.is_integer() {
        return Err(Error::Internal(format!("non-integral degree {lead}")));
    }
    Ok(lead.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::moduli_local::quadric_rank;

    #[test]
    fn torus_model() {
        let m = su3_genus2_local_model(Su3Case::Torus).unwrap();
        let p = &m.presentation;
        assert_eq!(p.ambient_dim(), 9);
        assert_eq!(p.tangent_space_dim, 9);
        assert_eq!(p.free_dim, 4);
        assert_eq!(p.equations.len(), 1);
        assert_eq!(p.equations[0].to_string(), "-X_1*X_2*X_3 + X_4*X_5");
        assert_eq!(p.declared_multiplicity, BigInt::from(2));
        assert_eq!(quadric_rank(&p.initial_forms()[0]).unwrap(), 2);
    }

    #[test]
    fn two_summand_model() {
        let m = su3_genus2_local_model(Su3Case::TwoSummand).unwrap();
        let p = &m.presentation;
        assert_eq!(p.free_dim, 5);
        assert_eq!(p.variables.iter().filter(|v| v.starts_with('Z')).count(), 4);
        assert_eq!(p.equations.len(), 1);
        assert_eq!(quadric_rank(&p.equations[0]).unwrap(), 4);
    }

    #[test]
    fn coble_models() {
        let m = coble_local_model(CobleCase::Trivial).unwrap();
        let p = &m.presentation;
        assert_eq!(p.variables, ["T", "T_1_1", "T_1_2", "T_1_3", "T_2_2", "T_2_3", "T_3_3"]);
        // T^2 plus the five monomials of the symmetric determinant
        assert_eq!(p.equations[0].num_terms(), 6);
        assert_eq!(p.equations[0].total_degree(), Some(3));
        assert_eq!(p.initial_forms()[0].to_string(), "T^2");
        assert_eq!(p.declared_multiplicity, BigInt::from(2));
        assert_eq!(p.tangent_space_dim, 7);

        let m = coble_local_model(CobleCase::Split).unwrap();
        assert_eq!(m.presentation, tangent_cone_case1(&SplitPoint::new(3, 1, 1).unwrap()).unwrap());
    }

    #[test]
    fn symmetric_determinant_monomials() {
        let (_, q, s) = coble_equation([0, 1, 2]).unwrap();
        // the two 3-cycles of the Leibniz expansion coincide on a symmetric matrix
        let det = symbolic_determinant(&s).unwrap();
        assert_eq!(det.num_terms(), 5);
        assert_eq!(det.coefficient(&[0, 0, 1, 1, 0, 1, 0]), int(2));
        let d = q.partial("T_1_1").unwrap();
        assert_eq!(d.to_string(), "-T_2_2*T_3_3 + T_2_3^2");
    }

    #[test]
    fn kummer_ideal() {
        assert!(kummer_partials_check().unwrap());
        for perm in [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            assert!(kummer_partials_check_relabeled(perm).unwrap());
        }
        assert!(kummer_partials_check_relabeled([0, 0, 1]).is_err());
    }

    #[test]
    fn even_quadratic() {
        let p = constrained_hilbert_solve(
            2,
            &[
                HilbertConstraint::Symmetry { center: int(0) },
                HilbertConstraint::Value { at: 1, value: int(1) },
                HilbertConstraint::Zero { at: 0 },
            ],
        )
        .unwrap();
        assert_eq!(p.univariate_coefficients().unwrap(), vec![int(0), int(0), int(1)]);
    }

    #[test]
    fn solver_errors() {
        let c = [HilbertConstraint::Zero { at: 0 }, HilbertConstraint::Value { at: 0, value: int(1) }];
        assert_eq!(constrained_hilbert_solve(1, &c), Err(Error::Inconsistent));
        let c = [HilbertConstraint::Zero { at: 0 }];
        assert_eq!(constrained_hilbert_solve(2, &c), Err(Error::Underdetermined(2)));
    }

    #[test]
    fn theta_map_degree() {
        let p = theta_map_hilbert_polynomial().unwrap();
        assert_eq!(p.coefficient(&[8]), rat(2, 40320));
        assert_eq!(degree_of_theta_map().unwrap(), BigInt::from(2));
        assert_eq!(p.eval(&[int(0)]).unwrap(), int(1));
        assert_eq!(p.eval(&[int(-6)]).unwrap(), int(1));
        assert_eq!(p.eval(&[int(-7)]).unwrap(), int(9));
        // P(n) - P(-6-n) vanishes as a polynomial
        let vars = p.vars().clone();
        let n = Polynomial::var_at(vars.clone(), 0);
        let reflected = &Polynomial::constant(vars, int(-6)) - &n;
        let mirrored = p.substitute(&[reflected]).unwrap();
        assert!((&p - &mirrored).is_zero());
    }
}
