//! Monomial invariants of a torus acting on quiver coordinates.
//!
//! Node `i` carries the weight `α_i`; an arrow variable `X_{i,j}` is
//! scaled by `α_i / α_j`. A monomial is invariant exactly when at every
//! node the total exponent of outgoing arrows equals that of incoming
//! ones.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{monomials_of_degree, Exponent, Polynomial, Rational, RationalMatrix};
use crate::error::{Error, Result};

/// Arrow multiplicities of a quiver on `n_summands` nodes, 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusActionSpec {
    n_summands: usize,
    multiplicity: BTreeMap<(usize, usize), usize>,
}

impl TorusActionSpec {
    pub fn new(n_summands: usize, multiplicity: BTreeMap<(usize, usize), usize>) -> Result<Self> {
        if n_summands < 2 {
            return Err(Error::InvalidInput(format!("need at least 2 summands, got {n_summands}")));
        }
        for &(i, j) in multiplicity.keys() {
            if i == j || i == 0 || j == 0 || i > n_summands || j > n_summands {
                return Err(Error::InvalidInput(format!("bad arrow ({i}, {j})")));
            }
        }
        let multiplicity = multiplicity.into_iter().filter(|&(_, d)| d > 0).collect();
        Ok(Self { n_summands, multiplicity })
    }

    /// Every ordered pair of distinct nodes with the same multiplicity.
    pub fn uniform(n_summands: usize, d: usize) -> Result<Self> {
        let mut m = BTreeMap::new();
        for i in 1..=n_summands {
            for j in 1..=n_summands {
                if i != j {
                    m.insert((i, j), d);
                }
            }
        }
        Self::new(n_summands, m)
    }

    /// Quiver of a split point `⊕ gr_i` on a genus `g` curve with summand
    /// ranks `ranks`: `dim Ext^1(gr_j, gr_i) = r_i r_j (g-1)` arrows `i -> j`.
    pub fn from_ranks(g: u64, ranks: &[u64]) -> Result<Self> {
        if g < 2 {
            return Err(Error::InvalidInput(format!("genus must be at least 2, got {g}")));
        }
        if ranks.contains(&0) {
            return Err(Error::InvalidInput("summand ranks must be positive".into()));
        }
        let mut m = BTreeMap::new();
        for (a, &ri) in ranks.iter().enumerate() {
            for (b, &rj) in ranks.iter().enumerate() {
                if a != b {
                    m.insert((a + 1, b + 1), (ri * rj * (g - 1)) as usize);
                }
            }
        }
        Self::new(ranks.len(), m)
    }

    pub fn n_summands(&self) -> usize {
        self.n_summands
    }

    pub fn multiplicity(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.multiplicity
    }

    /// One entry `(i, j)` per variable, in variable order.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        self.multiplicity
            .iter()
            .flat_map(|(&ij, &d)| std::iter::repeat_n(ij, d))
            .collect()
    }

    pub fn num_variables(&self) -> usize {
        self.multiplicity.values().sum()
    }

    /// `X_i_j`, or `X_i_j_k` (k = 1..d) when an arrow has multiplicity above one.
    pub fn variable_names(&self) -> Vec<String> {
        let mut names = Vec::new();
        for (&(i, j), &d) in &self.multiplicity {
            if d == 1 {
                names.push(format!("X_{i}_{j}"));
            } else {
                names.extend((1..=d).map(|k| format!("X_{i}_{j}_{k}")));
            }
        }
        names
    }
}

/// In-flow equals out-flow at every node.
pub fn invariance_condition(exponent: &[u32], spec: &TorusActionSpec) -> bool {
    let arrows = spec.arrows();
    if exponent.len() != arrows.len() {
        return false;
    }
    let mut balance = vec![0i64; spec.n_summands() + 1];
    for (&(i, j), &e) in arrows.iter().zip(exponent) {
        balance[i] += e as i64;
        balance[j] -= e as i64;
    }
    balance.iter().all(|&b| b == 0)
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Invariant monomials of degree exactly `d`, lex-greatest first.
fn invariant_monomials(spec: &TorusActionSpec, d: u32) -> Vec<Exponent> {
    monomials_of_degree(spec.num_variables(), d)
        .into_iter()
        .filter(|e| invariance_condition(e, spec))
        .collect()
}

/// Irreducible invariant monomials of degree at most `degree_bound`,
/// ordered by degree and then lex-greatest first.
pub fn invariant_monomial_hilbert_basis(spec: &TorusActionSpec, degree_bound: u32) -> Vec<Exponent> {
    let mut basis: Vec<Exponent> = Vec::new();
    for d in 1..=degree_bound {
        let found: Vec<Exponent> = invariant_monomials(spec, d)
            .into_iter()
            .filter(|m| !basis.iter().any(|b| divides(b, m)))
            .collect();
        basis.extend(found);
    }
    basis
}

/// Checks that every invariant monomial of degree at most `up_to` is a sum
/// of basis vectors; returns the first one that is not.
pub fn certify_hilbert_basis(spec: &TorusActionSpec, basis: &[Exponent], up_to: u32) -> Option<Exponent> {
    fn decomposes(m: &[u32], basis: &[Exponent], memo: &mut HashMap<Exponent, bool>) -> bool {
        if m.iter().all(|&x| x == 0) {
            return true;
        }
        if let Some(&v) = memo.get(m) {
            return v;
        }
        let ok = basis.iter().any(|b| {
            divides(b, m) && {
                let rest: Exponent = m.iter().zip(b).map(|(x, y)| x - y).collect();
                decomposes(&rest, basis, memo)
            }
        });
        memo.insert(m.to_vec(), ok);
        ok
    }
    let mut memo = HashMap::new();
    (1..=up_to)
        .flat_map(|d| invariant_monomials(spec, d))
        .find(|m| !decomposes(m, basis, &mut memo))
}

/// Exponent vectors of total weight `target` for the given positive
/// weights, lex-greatest first.
fn weighted_monomials(weights: &[u32], target: u32) -> Vec<Exponent> {
    fn rec(weights: &[u32], left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        let k = prefix.len();
        if k == weights.len() {
            if left == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for e in (0..=left / weights[k]).rev() {
            prefix.push(e);
            rec(weights, left - e * weights[k], prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(weights, target, &mut Vec::with_capacity(weights.len()), &mut out);
    out
}

/// Generator variable names `zeta_1 .. zeta_m`.
pub(crate) fn generator_names(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("zeta_{i}")).collect()
}

/// Minimal relations among the generator monomials up to X-degree
/// `x_degree_bound`, found degree by degree as kernels of the substitution
/// map modulo multiples of lower-degree relations. Each relation is made
/// monic in its lex-greatest term.
pub fn toric_relations(
    spec: &TorusActionSpec,
    generators: &[Exponent],
    x_degree_bound: u32,
) -> Result<Vec<Polynomial>> {
    let n = spec.num_variables();
    for g in generators {
        if g.len() != n || !invariance_condition(g, spec) {
            return Err(Error::InvalidInput(format!("{g:?} is not an invariant monomial of this spec")));
        }
        if g.iter().all(|&e| e == 0) {
            return Err(Error::InvalidInput("generators must be non-constant".into()));
        }
    }
    let vars: Arc<[String]> = generator_names(generators.len()).into();
    let weights: Vec<u32> = generators.iter().map(|g| g.iter().sum()).collect();
    let mut relations: Vec<Polynomial> = Vec::new();

    for d in 1..=x_degree_bound {
        let zmonos = weighted_monomials(&weights, d);
        if zmonos.len() < 2 {
            continue;
        }
        let column: HashMap<&Exponent, usize> = zmonos.iter().enumerate().map(|(c, m)| (m, c)).collect();
        let image = |z: &Exponent| -> Exponent {
            let mut x = vec![0u32; n];
            for (e, g) in z.iter().zip(generators) {
                for (xi, gi) in x.iter_mut().zip(g) {
                    *xi += e * gi;
                }
            }
            x
        };
        let mut rows: BTreeMap<Exponent, usize> = BTreeMap::new();
        for z in &zmonos {
            let next = rows.len();
            rows.entry(image(z)).or_insert(next);
        }
        let map = RationalMatrix::from_fn(rows.len(), zmonos.len(), |r, c| {
            if rows[&image(&zmonos[c])] == r { Rational::one() } else { Rational::zero() }
        });
        let kernel = map.kernel();
        if kernel.is_empty() {
            continue;
        }

        // span of (earlier relation) x (monomial) in this weighted degree
        let mut span: Vec<Vec<Rational>> = Vec::new();
        for rel in &relations {
            let rd: u32 = rel
                .terms()
                .next()
                .map(|(e, _)| e.iter().zip(&weights).map(|(a, w)| a * w).sum())
                .unwrap_or(0);
            if rd > d {
                continue;
            }
            for m in weighted_monomials(&weights, d - rd) {
                let mut v = vec![Rational::zero(); zmonos.len()];
                for (e, c) in rel.terms() {
                    let prod: Exponent = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                    v[column[&prod]] = c.clone();
                }
                span.push(v);
            }
        }
        let mut current_rank = rank_of(&span, zmonos.len());
        for kv in kernel {
            span.push(kv.clone());
            let r = rank_of(&span, zmonos.len());
            if r == current_rank {
                span.pop();
                continue;
            }
            current_rank = r;
            let terms = zmonos.iter().cloned().zip(kv).filter(|(_, c)| !c.is_zero());
            relations.push(Polynomial::from_terms(vars.clone(), terms)?.monic());
        }
    }
    Ok(relations)
}

fn rank_of(vectors: &[Vec<Rational>], len: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    RationalMatrix::from_fn(vectors.len(), len, |i, j| vectors[i][j].clone()).rank()
}

/// Generators, relations and the bound used to find them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantPresentation {
    pub x_variables: Vec<String>,
    pub generators: Vec<Exponent>,
    pub relations: Vec<Polynomial>,
    pub degree_bound: u32,
}

impl InvariantPresentation {
    /// Generators as monomials over the `X` variables.
    pub fn generator_monomials(&self) -> Vec<Polynomial> {
        let vars: Arc<[String]> = self.x_variables.clone().into();
        self.generators
            .iter()
            .map(|e| Polynomial::monomial(vars.clone(), e.clone(), Rational::one()))
            .collect()
    }

    /// True when every relation vanishes after substituting the generators.
    pub fn relations_vanish(&self) -> Result<bool> {
        let images = self.generator_monomials();
        for r in &self.relations {
            if !r.substitute(&images)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Hilbert basis up to `degree_bound` and its relations up to X-degree
/// `x_degree_bound`.
pub fn invariant_presentation(
    spec: &TorusActionSpec,
    degree_bound: u32,
    x_degree_bound: u32,
) -> Result<InvariantPresentation> {
    if degree_bound == 0 {
        return Err(Error::InvalidInput("degree bound must be at least 1".into()));
    }
    let generators = invariant_monomial_hilbert_basis(spec, degree_bound);
    let relations = toric_relations(spec, &generators, x_degree_bound)?;
    Ok(InvariantPresentation { x_variables: spec.variable_names(), generators, relations, degree_bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_cycle() -> TorusActionSpec {
        TorusActionSpec::from_ranks(2, &[1, 1, 1]).unwrap()
    }

    fn exp(spec: &TorusActionSpec, arrows: &[(usize, usize)]) -> Exponent {
        let all = spec.arrows();
        let mut e = vec![0; all.len()];
        for a in arrows {
            e[all.iter().position(|x| x == a).unwrap()] += 1;
        }
        e
    }

    #[test]
    fn variable_names() {
        let s = three_cycle();
        assert_eq!(s.variable_names(), ["X_1_2", "X_1_3", "X_2_1", "X_2_3", "X_3_1", "X_3_2"]);
        let s = TorusActionSpec::uniform(2, 2).unwrap();
        assert_eq!(s.variable_names(), ["X_1_2_1", "X_1_2_2", "X_2_1_1", "X_2_1_2"]);
        assert!(TorusActionSpec::uniform(1, 1).is_err());
    }

    #[test]
    fn invariance_examples() {
        let s = three_cycle();
        assert!(invariance_condition(&exp(&s, &[(1, 2), (2, 1)]), &s));
        assert!(invariance_condition(&exp(&s, &[(1, 2), (2, 3), (3, 1)]), &s));
        assert!(!invariance_condition(&exp(&s, &[(1, 2)]), &s));
    }

    #[test]
    fn three_node_basis() {
        let s = three_cycle();
        let b = invariant_monomial_hilbert_basis(&s, 3);
        let expected = vec![
            exp(&s, &[(1, 2), (2, 1)]),
            exp(&s, &[(1, 3), (3, 1)]),
            exp(&s, &[(2, 3), (3, 2)]),
            exp(&s, &[(1, 2), (2, 3), (3, 1)]),
            exp(&s, &[(1, 3), (3, 2), (2, 1)]),
        ];
        assert_eq!(b, expected);
        assert_eq!(certify_hilbert_basis(&s, &b, 6), None);
        assert_eq!(invariant_monomial_hilbert_basis(&s, 6), b);
    }

    #[test]
    fn two_node_bases() {
        let s = TorusActionSpec::uniform(2, 1).unwrap();
        assert_eq!(invariant_monomial_hilbert_basis(&s, 4), vec![vec![1, 1]]);
        let s = TorusActionSpec::uniform(2, 2).unwrap();
        let b = invariant_monomial_hilbert_basis(&s, 4);
        assert_eq!(b.len(), 4);
        assert!(b.iter().all(|e| e.iter().sum::<u32>() == 2));
    }

    #[test]
    fn basis_is_minimal() {
        let s = three_cycle();
        let b = invariant_monomial_hilbert_basis(&s, 4);
        for (i, x) in b.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if i != j {
                    assert!(!divides(y, x));
                }
            }
        }
    }

    #[test]
    fn certification_detects_missing_generator() {
        let s = three_cycle();
        let mut b = invariant_monomial_hilbert_basis(&s, 3);
        let dropped = b.pop().unwrap();
        assert_eq!(certify_hilbert_basis(&s, &b, 6), Some(dropped));
    }

    #[test]
    fn three_node_relation() {
        let p = invariant_presentation(&three_cycle(), 3, 6).unwrap();
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].to_string(), "zeta_1*zeta_2*zeta_3 - zeta_4*zeta_5");
        assert!(p.relations_vanish().unwrap());
    }

    #[test]
    fn two_node_relations() {
        let p = invariant_presentation(&TorusActionSpec::uniform(2, 1).unwrap(), 4, 8).unwrap();
        assert!(p.relations.is_empty());
        let p = invariant_presentation(&TorusActionSpec::uniform(2, 2).unwrap(), 4, 8).unwrap();
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].to_string(), "zeta_1*zeta_4 - zeta_2*zeta_3");
        assert!(p.relations_vanish().unwrap());
    }

    #[test]
    fn rejects_non_invariant_generators() {
        let s = three_cycle();
        assert!(toric_relations(&s, &[exp(&s, &[(1, 2)])], 4).is_err());
    }
}
