//! Dense matrices over the rationals.
//!
//! Rank and determinant go through fraction-free (Bareiss) elimination on
//! the integer matrix obtained by clearing denominators row by row; row
//! scaling changes neither rank nor the vanishing of minors. Kernels and
//! linear solves use reduced row echelon form over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Above this many entries `rank` uses the multimodular certificate instead
/// of running Bareiss on every column.
const DIRECT_BAREISS_LIMIT: usize = 2_000;

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix sum of different shapes".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    /// Submatrix on the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Each row multiplied by the lcm of its denominators.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut rows = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            rows.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
            scales.push(l);
        }
        (rows, scales)
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        if self.rows * self.cols <= DIRECT_BAREISS_LIMIT {
            return self.rank_bareiss();
        }
        match self.rank_certified() {
            Some(r) => r,
            None => self.rank_bareiss(),
        }
    }

    /// Rank by Bareiss elimination over every column.
    pub fn rank_bareiss(&self) -> usize {
        let (mut a, _) = self.integer_rows();
        let cols = self.cols;
        bareiss(&mut a, cols).rank
    }

    /// Rank bounded below modulo a prime and certified from above by an
    /// exact integer left-kernel basis; `None` when the certificate fails.
    pub(crate) fn rank_certified(&self) -> Option<usize> {
        let (a, _) = self.integer_rows();
        super::modular::certified_rank(&a, self.cols)
    }

    /// Determinant by Bareiss elimination.
    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows == 0 {
            return Ok(Rational::one());
        }
        let (mut a, scales) = self.integer_rows();
        let n = self.rows;
        let ech = bareiss(&mut a, n);
        if ech.rank < n {
            return Ok(Rational::zero());
        }
        let mut det = a[n - 1][n - 1].clone();
        if ech.swaps % 2 == 1 {
            det = -det;
        }
        let scale: BigInt = scales.iter().product();
        Ok(Rational::new(det, scale))
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = Rational::one() / a.get(r, c);
            for j in c..a.cols {
                let v = a.get(r, j) * &inv;
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in c..a.cols {
                    let v = a.get(i, j) - &f * a.get(r, j);
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Basis of the right kernel `{x : A x = 0}`, one vector per free column,
    /// with that free coordinate set to 1.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Unique solution of `A x = b`.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols { self.get(i, j).clone() } else { b[i].clone() }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        if pivots.len() < self.cols {
            return Err(Error::Underdetermined(self.cols - pivots.len()));
        }
        Ok((0..self.cols).map(|i| r.get(i, self.cols).clone()).collect())
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

struct Echelon {
    rank: usize,
    swaps: usize,
}

/// In-place fraction-free elimination, choosing pivots among the first
/// `pivot_cols` columns but updating every column. Each division is exact:
/// after step k every entry is a (k+1)-minor of the input.
fn bareiss(a: &mut [Vec<BigInt>], pivot_cols: usize) -> Echelon {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut swaps = 0;
    for c in 0..pivot_cols.min(n) {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            swaps += 1;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in (c + 1)..n {
                let v = &pivot * &row[j] - &factor * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero(), "inexact Bareiss division");
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        // rows skipped above still need their earlier-column entries zeroed,
        // which the loop already did; only the divisor advances
        prev = pivot;
        r += 1;
    }
    Echelon { rank: r, swaps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::sampling::RationalSampler;
    use crate::algebra::{int, rat};

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    /// Plain fraction-based elimination, kept independent of Bareiss.
    fn naive_rank(a: &RationalMatrix) -> usize {
        let mut rows: Vec<Vec<Rational>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
        let mut rank = 0;
        for c in 0..a.cols() {
            let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
            rows.swap(p, rank);
            for i in (rank + 1)..rows.len() {
                let f = &rows[i][c] / &rows[rank][c];
                for j in 0..a.cols() {
                    let v = &rows[i][j] - &f * &rows[rank][j];
                    rows[i][j] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::identity(2).rank(), 2);
        assert_eq!(m(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]).rank(), 1);
        assert_eq!(m(&[&[1, 2], &[2, 4], &[3, 6]]).rank(), 1);
        assert_eq!(RationalMatrix::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(m(&[&[2, 1], &[1, 3]]).determinant().unwrap(), int(5));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant().unwrap(), int(-1));
        let a = RationalMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 4), rat(1, 5)],
        ])
        .unwrap();
        assert_eq!(a.determinant().unwrap(), rat(1, 10) - rat(1, 12));
        assert!(matches!(RationalMatrix::zeros(2, 3).determinant(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn rank_is_transpose_invariant() {
        let mut s = RationalSampler::new(11);
        for t in 0..100 {
            let rows = 1 + t % 8;
            let cols = 1 + (t * 7) % 8;
            let a = s.low_rank_matrix(rows, cols, t % 4 + 1);
            assert_eq!(a.rank(), a.transpose().rank(), "trial {t}");
            assert_eq!(a.rank(), naive_rank(&a), "trial {t}");
        }
    }

    #[test]
    fn certified_rank_agrees_with_bareiss() {
        let mut s = RationalSampler::new(5);
        for t in 0..5 {
            let a = s.low_rank_matrix(20, 60, 4 + 3 * t);
            assert_eq!(a.rank_certified(), Some(a.rank_bareiss()));
            assert_eq!(a.rank(), 4 + 3 * t);
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = a.kernel();
        assert_eq!(k.len(), 4 - a.rank());
        for v in &k {
            let col = RationalMatrix::from_fn(4, 1, |i, _| v[i].clone());
            assert!(a.checked_mul(&col).unwrap().entries.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_reports_inconsistent_and_underdetermined() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(a.solve(&[int(1), int(2)]), Err(Error::Inconsistent));
        assert_eq!(a.solve(&[int(1), int(1)]), Err(Error::Underdetermined(1)));
        let b = m(&[&[1, 1], &[1, -1], &[2, 0]]);
        assert_eq!(b.solve(&[int(3), int(1), int(4)]).unwrap(), vec![int(2), int(1)]);
    }

    #[test]
    fn numeric_determinant_matches_symbolic_on_constants() {
        use crate::algebra::{symbolic_determinant, Polynomial};
        let mut s = RationalSampler::new(3);
        let vars = crate::algebra::poly::var_list(&["x"]).unwrap();
        for n in 1..=5 {
            let a = s.matrix(n, n);
            let polys: Vec<Vec<Polynomial>> = (0..n)
                .map(|i| (0..n).map(|j| Polynomial::constant(vars.clone(), a.get(i, j).clone())).collect())
                .collect();
            let d = symbolic_determinant(&polys).unwrap();
            assert_eq!(d.coefficient(&[0]), a.determinant().unwrap());
        }
    }
}
