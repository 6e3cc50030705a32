//! Seeded random rationals for property checks.
//!
//! Numerators are uniform in [-20, 20] and denominators uniform in [1, 10].
//! The generator is owned by the caller; the same seed always yields the
//! same stream on every platform.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::RationalMatrix;
use super::poly::Polynomial;
use super::rational::Rational;

pub struct RationalSampler {
    rng: ChaCha8Rng,
}

impl RationalSampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Independent stream for trial `stream` under `seed`.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    pub fn rational(&mut self) -> Rational {
        let num: i64 = self.rng.gen_range(-20..=20);
        let den: i64 = self.rng.gen_range(1..=10);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    pub fn vector(&mut self, n: usize) -> Vec<Rational> {
        (0..n).map(|_| self.rational()).collect()
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> RationalMatrix {
        RationalMatrix::from_fn(rows, cols, |_, _| self.rational())
    }

    /// Product of a `rows x k` and a `k x cols` random matrix.
    pub fn low_rank_matrix(&mut self, rows: usize, cols: usize, k: usize) -> RationalMatrix {
        let a = self.matrix(rows, k);
        let b = self.matrix(k, cols);
        a.checked_mul(&b).expect("inner dimensions agree")
    }

    pub fn invertible_matrix(&mut self, n: usize) -> RationalMatrix {
        loop {
            let m = self.matrix(n, n);
            if m.rank() == n {
                return m;
            }
        }
    }

    /// Random sparse polynomial with up to `terms` terms of degree at most
    /// `max_degree` in each variable.
    pub fn sparse_polynomial(&mut self, vars: &Arc<[String]>, terms: usize, max_degree: u32) -> Polynomial {
        let n = vars.len();
        let entries: Vec<_> = (0..terms)
            .map(|_| {
                let exp: Vec<u32> = (0..n).map(|_| self.rng.gen_range(0..=max_degree)).collect();
                (exp, self.rational())
            })
            .collect();
        Polynomial::from_terms(vars.clone(), entries).expect("exponents sized to the ring")
    }
}
