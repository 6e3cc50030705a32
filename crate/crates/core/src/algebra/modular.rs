//! Word-size modular arithmetic and a multimodular rank certificate.
//!
//! The rank of an integer matrix modulo a prime never exceeds its rank
//! over the rationals, which gives the lower bound for free. The upper
//! bound comes from exhibiting `rows - r` independent integer vectors in
//! the left kernel, reconstructed by the Chinese remainder theorem and then
//! checked by exact multiplication.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

const PRIME_COUNT: usize = 256;

/// The largest primes below `2^62`, descending.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut n = (1u64 << 62) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue below p")
}

/// Pivot rows (in selection order) and pivot columns of `a` modulo `p`.
fn pivots_mod(a: &[Vec<BigInt>], cols: usize, p: u64) -> (Vec<usize>, Vec<usize>) {
    let mut m: Vec<Vec<u64>> = a.iter().map(|row| row.iter().map(|x| residue(x, p)).collect()).collect();
    let mut order: Vec<usize> = (0..a.len()).collect();
    let mut pcols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(piv, r);
        order.swap(piv, r);
        let inv = inv_mod(m[r][c], p);
        for i in (r + 1)..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let f = mul_mod(m[i][c], inv, p);
            for j in c..cols {
                let sub = mul_mod(f, m[r][j], p);
                m[i][j] = (m[i][j] + p - sub) % p;
            }
        }
        pcols.push(c);
        r += 1;
    }
    order.truncate(r);
    (order, pcols)
}

/// Solves `M^T x_k = b_k` modulo `p` for every right-hand side, where `mt`
/// holds the rows of `M^T`. Returns `det M` and the solutions, or `None`
/// when `M` is singular modulo `p`.
fn solve_mod(mt: &[Vec<u64>], rhs: &[Vec<u64>], p: u64) -> Option<(u64, Vec<Vec<u64>>)> {
    let r = mt.len();
    let k = rhs.len();
    // augmented rows: r coefficients then k right-hand sides
    let mut a: Vec<Vec<u64>> = (0..r)
        .map(|i| mt[i].iter().copied().chain(rhs.iter().map(|b| b[i])).collect())
        .collect();
    let mut det = 1u64;
    for c in 0..r {
        let piv = (c..r).find(|&i| a[i][c] != 0)?;
        if piv != c {
            a.swap(piv, c);
            det = (p - det) % p;
        }
        det = mul_mod(det, a[c][c], p);
        let inv = inv_mod(a[c][c], p);
        for j in c..(r + k) {
            a[c][j] = mul_mod(a[c][j], inv, p);
        }
        for i in 0..r {
            if i == c || a[i][c] == 0 {
                continue;
            }
            let f = a[i][c];
            for j in c..(r + k) {
                let sub = mul_mod(f, a[c][j], p);
                a[i][j] = (a[i][j] + p - sub) % p;
            }
        }
    }
    let sols = (0..k).map(|b| (0..r).map(|i| a[i][r + b]).collect()).collect();
    Some((det, sols))
}

/// Upper bound on `log2 |x|` for the Euclidean norm of `row` restricted to `cols`.
fn norm_bits(row: &[BigInt], cols: &[usize]) -> u64 {
    let sq: BigInt = cols.iter().map(|&c| &row[c] * &row[c]).sum();
    sq.bits().div_ceil(2)
}

/// Exact rank of an integer matrix, or `None` if the certificate cannot be
/// completed with the available primes.
pub(crate) fn certified_rank(a: &[Vec<BigInt>], cols: usize) -> Option<usize> {
    let rows = a.len();
    let ps = primes();
    let (prow, pcol) = pivots_mod(a, cols, ps[0]);
    let r = prow.len();
    if r == rows {
        return Some(r);
    }
    let others: Vec<usize> = (0..rows).filter(|i| !prow.contains(i)).collect();

    // each kernel entry is an r x r minor of the pivot rows plus one more row
    let base: u64 = prow.iter().map(|&i| norm_bits(&a[i], &pcol)).sum();
    let extra = others.iter().map(|&i| norm_bits(&a[i], &pcol)).max().unwrap_or(0);
    let needed = base + extra + 2;

    let n_entries = r + 1;
    // values[k][e]: CRT accumulator for entry e of kernel vector k; entry r is det
    let mut values: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n_entries]; others.len()];
    let mut modulus = BigInt::from(1);
    let mut bits = 0u64;
    for &p in ps {
        if bits > needed {
            break;
        }
        let mt: Vec<Vec<u64>> = (0..r).map(|j| prow.iter().map(|&i| residue(&a[i][pcol[j]], p)).collect()).collect();
        let rhs: Vec<Vec<u64>> = others.iter().map(|&i| pcol.iter().map(|&c| residue(&a[i][c], p)).collect()).collect();
        let Some((det, sols)) = solve_mod(&mt, &rhs, p) else { continue };
        let m_inv = inv_mod(residue(&modulus, p), p);
        for (k, x) in sols.iter().enumerate() {
            // y = det * (e_i - x) on the pivot rows and row i
            let res = x.iter().map(|&xv| (p - mul_mod(det, xv, p)) % p).chain(std::iter::once(det));
            for (e, rp) in res.enumerate() {
                let cur = residue(&values[k][e], p);
                let t = mul_mod((rp + p - cur) % p, m_inv, p);
                values[k][e] += &modulus * BigInt::from(t);
            }
        }
        modulus *= BigInt::from(p);
        bits += 61;
    }
    if bits <= needed {
        return None;
    }
    let half = &modulus >> 1;
    for v in values.iter_mut().flatten() {
        if *v > half {
            *v -= &modulus;
        }
    }

    for (k, &i) in others.iter().enumerate() {
        let y = &values[k];
        if y[r].is_zero() {
            return None;
        }
        for j in 0..cols {
            let mut acc = &y[r] * &a[i][j];
            for (e, &pi) in prow.iter().enumerate() {
                if !a[pi][j].is_zero() && !y[e].is_zero() {
                    acc += &y[e] * &a[pi][j];
                }
            }
            if !acc.is_zero() {
                return None;
            }
        }
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(97) && is_prime((1 << 61) - 1));
        assert!(!is_prime(1) && !is_prime(91) && !is_prime(3215031751));
        let ps = primes();
        assert_eq!(ps.len(), PRIME_COUNT);
        assert!(ps.windows(2).all(|w| w[0] > w[1]) && ps[0] < 1 << 62);
    }

    #[test]
    fn small_ranks() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
        };
        assert_eq!(certified_rank(&m(&[&[1, 2], &[2, 4], &[3, 6]]), 2), Some(1));
        assert_eq!(certified_rank(&m(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]]), 3), Some(2));
        assert_eq!(certified_rank(&m(&[&[0, 0], &[0, 0]]), 2), Some(0));
        assert_eq!(certified_rank(&m(&[&[5, 1], &[2, 7]]), 2), Some(2));
    }

    #[test]
    fn pivot_rows_reflect_swaps() {
        let a: Vec<Vec<BigInt>> = [[0, 1], [1, 0]].iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        assert_eq!(pivots_mod(&a, 2, 7), (vec![1, 0], vec![0, 1]));
    }

    #[test]
    fn negative_residues() {
        assert_eq!(residue(&BigInt::from(-1), 7), 6);
        assert!(BigInt::from(-3).is_negative());
    }
}
