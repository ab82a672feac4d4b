//! Exact rationals and p-adic valuations of integers and rationals.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub use num_rational::BigRational;

/// `v_p(n)` for nonzero `n`; `None` for zero.
pub fn int_valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

pub fn uint_valuation(n: &BigUint, p: u64) -> Option<u32> {
    int_valuation(&BigInt::from(n.clone()), p)
}

/// `v_p(q)` for nonzero `q`; `None` for zero.
pub fn rational_valuation(q: &BigRational, p: u64) -> Option<i64> {
    let num = int_valuation(q.numer(), p)? as i64;
    let den = int_valuation(q.denom(), p).unwrap_or(0) as i64;
    Some(num - den)
}

/// Exponent of `p` in the denominator of `q` (zero when `q` is p-integral).
pub fn denominator_valuation(q: &BigRational, p: u64) -> u32 {
    int_valuation(q.denom(), p).unwrap_or(0)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Binomial coefficients `C(n, 0..=n)` as exact integers.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::from(1);
    row.push(c.clone());
    for k in 0..n {
        c = c * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(c.clone());
    }
    row
}
