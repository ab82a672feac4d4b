//! Exact Bernoulli numbers and polynomials, power sums, and irregular pairs.
//!
//! `B_n` comes from the recurrence `Σ_{k=0}^{m} C(m+1,k) B_k = 0` (`m >= 1`),
//! memoized in a process-wide [`BernoulliCache`]. The convention is
//! `B_1 = -1/2`.

use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::primes::is_prime;
use crate::arith::rational::{binomial_row, denominator_valuation, rat_int, BigRational};
use crate::arith::{embed_rational, PadicNum};
use crate::error::{Error, Result};

/// Append-only table with `table[n] = B_n`.
#[derive(Debug)]
pub struct BernoulliCache {
    table: RwLock<Vec<BigRational>>,
}

impl Default for BernoulliCache {
    fn default() -> Self {
        Self::new()
    }
}

impl BernoulliCache {
    pub fn new() -> Self {
        Self {
            table: RwLock::new(vec![BigRational::one()]),
        }
    }

    /// Number of cached entries.
    pub fn cached(&self) -> usize {
        self.table.read().expect("bernoulli cache poisoned").len()
    }

    pub fn get(&self, n: usize) -> BigRational {
        {
            let table = self.table.read().expect("bernoulli cache poisoned");
            if let Some(b) = table.get(n) {
                return b.clone();
            }
        }
        let mut table = self.table.write().expect("bernoulli cache poisoned");
        while table.len() <= n {
            let m = table.len();
            let next = next_bernoulli(&table, m);
            table.push(next);
        }
        table[n].clone()
    }

    /// `B_0, ..., B_n`.
    pub fn prefix(&self, n: usize) -> Vec<BigRational> {
        self.get(n);
        self.table.read().expect("bernoulli cache poisoned")[..=n].to_vec()
    }
}

fn next_bernoulli(table: &[BigRational], m: usize) -> BigRational {
    if m >= 3 && m % 2 == 1 {
        return BigRational::zero();
    }
    let binom = binomial_row(m + 1);
    let mut sum = BigRational::zero();
    for (k, b) in table.iter().enumerate().take(m) {
        if !b.is_zero() {
            sum += b * &binom[k];
        }
    }
    -sum / rat_int(m as i64 + 1)
}

static CACHE: LazyLock<BernoulliCache> = LazyLock::new(BernoulliCache::new);

pub fn bernoulli_number(n: usize) -> BigRational {
    CACHE.get(n)
}

/// Coefficients of `B_n(X)` indexed by power of `X` (constant term first).
pub fn bernoulli_polynomial(n: usize) -> Vec<BigRational> {
    let b = CACHE.prefix(n);
    let binom = binomial_row(n);
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for i in 0..=n {
        coeffs[n - i] = &b[i] * &binom[i];
    }
    coeffs
}

/// Evaluates a polynomial given by ascending coefficients.
pub fn eval_polynomial(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// `S_m(n) = Σ_{a=0}^{n-1} a^m`, with `0^0 = 1`.
pub fn power_sum(m: u32, n: u64) -> BigRational {
    let mut s = BigInt::zero();
    for a in 0..n {
        s += Pow::pow(BigInt::from(a), m);
    }
    BigRational::from_integer(s)
}

/// `S_m(n)` through Bernoulli numbers: `Σ_{k=0}^{m} C(m+1,k) B_k n^{m+1-k} / (m+1)`.
pub fn power_sum_by_bernoulli(m: u32, n: u64) -> BigRational {
    let m = m as usize;
    let b = CACHE.prefix(m);
    let binom = binomial_row(m + 1);
    let n = BigInt::from(n);
    let mut s = BigRational::zero();
    for k in 0..=m {
        if b[k].is_zero() {
            continue;
        }
        let pw = Pow::pow(&n, (m + 1 - k) as u32);
        s += &b[k] * BigRational::from_integer(&binom[k] * pw);
    }
    s / rat_int(m as i64 + 1)
}

/// An odd prime `p >= 5` and an even `k` in `[2, p-3]` with `p | B_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IrregularPair {
    pub p: u64,
    pub k: u64,
}

impl IrregularPair {
    pub fn new(p: u64, k: u64) -> Result<Self> {
        if is_irregular_pair(p, k)? {
            Ok(Self { p, k })
        } else {
            Err(Error::InputNotIrregular { p, k })
        }
    }
}

fn check_scan_prime(p: u64) -> Result<()> {
    if p < 5 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

pub(crate) fn check_index(p: u64, k: u64) -> Result<()> {
    check_scan_prime(p)?;
    if k % 2 == 1 || k < 2 || k + 3 > p {
        return Err(Error::IndexOutOfRange { p, k });
    }
    Ok(())
}

/// Whether `p` divides the numerator of `B_k`.
pub fn is_irregular_pair(p: u64, k: u64) -> Result<bool> {
    check_index(p, k)?;
    let b = bernoulli_number(k as usize);
    Ok((b.numer() % BigInt::from(p)).is_zero())
}

/// All even `k` in `[2, p-3]` with `p | B_k`, ascending.
pub fn irregular_indices(p: u64) -> Result<Vec<u64>> {
    check_scan_prime(p)?;
    let mut out = Vec::new();
    for k in (2..=p - 3).step_by(2) {
        if is_irregular_pair(p, k)? {
            out.push(k);
        }
    }
    Ok(out)
}

/// `p·B_m ≡ Σ_{a=1}^{p-1} a^m (mod p^2)` for even `m`.
pub fn verify_power_sum_congruence(p: u64, m: u64) -> Result<bool> {
    check_scan_prime(p)?;
    if m < 2 || m % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "m={m} must be even and >= 2"
        )));
    }
    let lhs_rational = bernoulli_number(m as usize) * rat_int(p as i64);
    let lhs = embed_rational(&lhs_rational, p, 2)?;
    let mut rhs = PadicNum::zero(p, 2);
    for a in 1..p {
        rhs = &rhs + &PadicNum::from_i64(p, 2, a as i64)?.pow(m);
    }
    Ok(lhs == rhs)
}

/// `B_m / m` reduced into `Z_p / p^A`; requires `(p-1) ∤ m`.
pub fn bernoulli_quotient_residue(m: u64, p: u64, precision: u32) -> Result<PadicNum> {
    if m == 0 || m.is_multiple_of(p - 1) {
        return Err(Error::InvalidParameter(format!(
            "B_m/m is not p-integral for m={m}, p={p}"
        )));
    }
    let q = bernoulli_number(m as usize) / rat_int(m as i64);
    embed_rational(&q, p, precision)
}

/// Exponent of `p` in the denominator of `B_m`.
pub fn denominator_p_exponent(m: usize, p: u64) -> u32 {
    denominator_valuation(&bernoulli_number(m), p)
}
