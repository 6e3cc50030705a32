//! Sparse multivariate polynomials over the rationals.
//!
//! A polynomial owns its variable list; terms are keyed by exponent vectors
//! of the same length, stored in a `BTreeMap` so iteration is always in
//! ascending lexicographic order of exponents. Binary operations require
//! identical variable lists: the checked variants return an error, the
//! operator impls panic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Exponent vector, one entry per variable.
pub type Exponent = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: Arc<[String]>,
    terms: BTreeMap<Exponent, Rational>,
}

/// Builds a shared variable list, rejecting duplicate names.
pub(crate) fn var_list<S: AsRef<str>>(names: &[S]) -> Result<Arc<[String]>> {
    let list: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
    let mut seen = std::collections::BTreeSet::new();
    for n in &list {
        if !seen.insert(n.as_str()) {
            return Err(Error::InvalidInput(format!("duplicate variable `{n}`")));
        }
    }
    Ok(list.into())
}

impl Polynomial {
    pub fn zero(vars: Arc<[String]>) -> Self {
        Self { vars, terms: BTreeMap::new() }
    }

    /// Zero polynomial over freshly named variables.
    pub fn zero_in<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Ok(Self::zero(var_list(names)?))
    }

    pub fn constant(vars: Arc<[String]>, c: Rational) -> Self {
        let n = vars.len();
        Self::monomial(vars, vec![0; n], c)
    }

    pub fn monomial(vars: Arc<[String]>, exp: Exponent, coef: Rational) -> Self {
        assert_eq!(exp.len(), vars.len(), "exponent length must match variable count");
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exp, coef);
        }
        Self { vars, terms }
    }

    /// The variable at position `idx`.
    pub fn var_at(vars: Arc<[String]>, idx: usize) -> Self {
        let mut exp = vec![0; vars.len()];
        exp[idx] = 1;
        Self::monomial(vars, exp, Rational::one())
    }

    pub fn var(vars: Arc<[String]>, name: &str) -> Result<Self> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var_at(vars, idx))
    }

    pub fn from_terms<I>(vars: Arc<[String]>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (exp, c) in terms {
            if exp.len() != p.vars.len() {
                return Err(Error::DimensionMismatch(format!(
                    "exponent of length {} over {} variables",
                    exp.len(),
                    p.vars.len()
                )));
            }
            p.add_term(exp, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exp: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn var_names(&self) -> Vec<String> {
        self.vars.to_vec()
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest total degree of a term, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Lowest total degree of a term, `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.total_degree() == self.min_degree()
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().sum::<u32>() == degree)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Self { vars: self.vars.clone(), terms }
    }

    /// Lowest-degree homogeneous component (the initial form at the origin).
    pub fn initial_form(&self) -> Self {
        match self.min_degree() {
            Some(d) => self.homogeneous_part(d),
            None => self.clone(),
        }
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch { left: self.var_names(), right: other.var_names() })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut out = Self::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        let terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        Self { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.vars.clone(), Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to the named variable.
    pub fn partial(&self, name: &str) -> Result<Self> {
        let idx = self
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[idx] -= 1;
            out.add_term(e2, c * Rational::from_integer(e[idx].into()));
        }
        Ok(out)
    }

    /// Evaluates at a point given in variable order.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} for {} variables",
                point.len(),
                self.vars.len()
            )));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Replaces variable `i` by `images[i]`; all images share one ring,
    /// which becomes the ring of the result.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Self> {
        if images.len() != self.vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.vars.len()
            )));
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => return Ok(self.clone()),
        };
        for img in images {
            if img.vars != target {
                return Err(Error::VariableMismatch {
                    left: target.to_vec(),
                    right: img.var_names(),
                });
            }
        }
        let mut out = Self::zero(target.clone());
        for (e, c) in &self.terms {
            let mut t = Self::constant(target.clone(), c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    t = &t * &img.pow(k);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Same terms over a new variable list of equal length.
    pub fn with_vars(&self, vars: Arc<[String]>) -> Result<Self> {
        if vars.len() != self.vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "renaming {} variables to {}",
                self.vars.len(),
                vars.len()
            )));
        }
        Ok(Self { vars, terms: self.terms.clone() })
    }

    /// Divides by the leading coefficient (largest exponent in lex order).
    pub fn monic(&self) -> Self {
        match self.terms.iter().next_back() {
            Some((_, c)) => self.scale(&(Rational::one() / c)),
            None => self.clone(),
        }
    }

    /// Univariate coefficient list `c_0..c_d` (single-variable rings only).
    pub fn univariate_coefficients(&self) -> Result<Vec<Rational>> {
        if self.vars.len() != 1 {
            return Err(Error::InvalidInput("not a univariate polynomial".into()));
        }
        let d = self.total_degree().unwrap_or(0) as usize;
        let mut out = vec![Rational::zero(); d + 1];
        for (e, c) in &self.terms {
            out[e[0] as usize] = c.clone();
        }
        Ok(out)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial addition over different rings")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial subtraction over different rings")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial product over different rings")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        Polynomial { vars: self.vars.clone(), terms }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest exponent first reads more naturally
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &k) in self.vars.iter().zip(e) {
                match k {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{k}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion
/// along the first row.
pub fn symbolic_determinant(m: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = m.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    for row in m {
        if row.len() != n {
            return Err(Error::NotSquare { rows: n, cols: row.len() });
        }
    }
    let vars = m[0][0].vars.clone();
    for p in m.iter().flatten() {
        p.check_same_ring(&m[0][0])?;
    }
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    Ok(cofactor_expand(m, &rows, &cols, &vars))
}

fn cofactor_expand(
    m: &[Vec<Polynomial>],
    rows: &[usize],
    cols: &[usize],
    vars: &Arc<[String]>,
) -> Polynomial {
    if rows.len() == 1 {
        return m[rows[0]][cols[0]].clone();
    }
    let mut acc = Polynomial::zero(vars.clone());
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &m[rows[0]][c];
        if entry.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = cofactor_expand(m, &rows[1..], &sub_cols, vars);
        let term = entry * &minor;
        acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn ring(names: &[&str]) -> Arc<[String]> {
        var_list(names).unwrap()
    }

    #[test]
    fn terms_never_store_zero() {
        let r = ring(&["x", "y"]);
        let x = Polynomial::var(r.clone(), "x").unwrap();
        let y = Polynomial::var(r, "y").unwrap();
        let p = &(&x + &y) - &y;
        assert_eq!(p, x);
        assert!((&x - &x).is_zero());
        assert_eq!((&x - &x).num_terms(), 0);
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let x = Polynomial::var(ring(&["x"]), "x").unwrap();
        let y = Polynomial::var(ring(&["y"]), "y").unwrap();
        assert!(matches!(x.checked_add(&y), Err(Error::VariableMismatch { .. })));
    }

    #[test]
    fn duplicate_variable_names_rejected() {
        assert!(var_list(&["a", "a"]).is_err());
    }

    #[test]
    fn determinant_one_by_one() {
        let x = Polynomial::var(ring(&["x"]), "x").unwrap();
        assert_eq!(symbolic_determinant(&[vec![x.clone()]]).unwrap(), x);
    }

    #[test]
    fn determinant_two_by_two() {
        let r = ring(&["a", "b", "c", "d"]);
        let v = |n: &str| Polynomial::var(r.clone(), n).unwrap();
        let det = symbolic_determinant(&[vec![v("a"), v("b")], vec![v("c"), v("d")]]).unwrap();
        let expected = &(&v("a") * &v("d")) - &(&v("b") * &v("c"));
        assert_eq!(det, expected);
    }

    #[test]
    fn determinant_rejects_non_square() {
        let x = Polynomial::var(ring(&["x"]), "x").unwrap();
        let m = vec![vec![x.clone(), x.clone()], vec![x.clone()]];
        assert!(matches!(symbolic_determinant(&m), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn partial_examples() {
        let r = ring(&["T"]);
        let t = Polynomial::var(r.clone(), "T").unwrap();
        let d = t.pow(2).partial("T").unwrap();
        assert_eq!(d, t.scale(&int(2)));
        assert!(matches!(t.partial("U"), Err(Error::UnknownVariable(_))));

        let r = ring(&["X1", "X2", "X3", "X4", "X5"]);
        let v = |n: &str| Polynomial::var(r.clone(), n).unwrap();
        let rel = &(&v("X4") * &v("X5")) - &(&(&v("X1") * &v("X2")) * &v("X3"));
        assert_eq!(rel.partial("X4").unwrap(), v("X5"));
    }

    #[test]
    fn initial_form_and_degrees() {
        let r = ring(&["x", "y"]);
        let x = Polynomial::var(r.clone(), "x").unwrap();
        let y = Polynomial::var(r, "y").unwrap();
        let p = &x.pow(2) - &(&y.pow(2) * &x);
        assert_eq!(p.min_degree(), Some(2));
        assert_eq!(p.total_degree(), Some(3));
        assert_eq!(p.initial_form(), x.pow(2));
        assert!(!p.is_homogeneous());
    }

    #[test]
    fn eval_and_substitute() {
        let r = ring(&["x", "y"]);
        let x = Polynomial::var(r.clone(), "x").unwrap();
        let y = Polynomial::var(r.clone(), "y").unwrap();
        let p = &(&x * &y) + &Polynomial::constant(r, rat(1, 2));
        assert_eq!(p.eval(&[int(3), rat(1, 3)]).unwrap(), rat(3, 2));

        let s = ring(&["t"]);
        let t = Polynomial::var(s, "t").unwrap();
        let q = p.substitute(&[t.clone(), t.pow(2)]).unwrap();
        assert_eq!(q.eval(&[int(2)]).unwrap(), rat(17, 2));
    }

    #[test]
    fn display_is_readable() {
        let r = ring(&["x", "y"]);
        let x = Polynomial::var(r.clone(), "x").unwrap();
        let y = Polynomial::var(r, "y").unwrap();
        let p = &x.pow(2).scale(&int(2)) - &y;
        assert_eq!(p.to_string(), "2*x^2 - y");
    }
}
