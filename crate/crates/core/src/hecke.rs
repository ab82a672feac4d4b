//! Hecke and diamond operators on truncated q-expansions.
//!
//! On a form of weight `k` and type `ε` the coefficient action is
//! `(T_l f)_n = a_{nl} + ε(l) l^{k-1} a_{n/l}`, the second term present only
//! when `l | n`. Operators never invent coefficients: `T_n` maps a series
//! known through `q^M` to one known through `q^{⌊M/n⌋}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Pow;

use crate::arith::primes::{factorize, is_prime};
use crate::arith::{teichmuller, PadicNum};
use crate::error::{Error, Result};
use crate::qseries::{CongruenceCheck, QExpansion};

/// `ε(n)` for the type of `f`, at the precision of `f`; zero when `p | n`.
pub fn character_at(f: &QExpansion, n: i64) -> Result<PadicNum> {
    let (p, a) = (f.p(), f.precision());
    if n.rem_euclid(p as i64) == 0 {
        return Ok(PadicNum::zero(p, a));
    }
    Ok(teichmuller(n, p, a)?.pow(f.char_exponent()))
}

/// `ε(l) l^{k-1}`, the coefficient of the lowering term.
fn lowering_factor(f: &QExpansion, l: u64) -> Result<PadicNum> {
    if f.weight() == 0 {
        return Err(Error::InvalidParameter(
            "Hecke action needs weight >= 1".into(),
        ));
    }
    let power = PadicNum::new(
        f.p(),
        f.precision(),
        Pow::pow(BigInt::from(l), f.weight() - 1),
    )?;
    character_at(f, l as i64)?.checked_mul(&power)
}

fn check_truncation(f: &QExpansion, n: u64) -> Result<usize> {
    let out = f.truncation() as u64 / n;
    if out < 1 {
        return Err(Error::TruncationTooShort {
            truncation: f.truncation(),
            index: n,
        });
    }
    Ok(out as usize)
}

/// `T_l f` for a prime `l`, truncated to `⌊M/l⌋`.
pub fn hecke_tl(f: &QExpansion, l: u64) -> Result<QExpansion> {
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    let out = check_truncation(f, l)?;
    let factor = lowering_factor(f, l)?;
    let lu = l as usize;
    let coeffs = (0..=out)
        .map(|n| {
            let mut c = f.coeffs()[n * lu].clone();
            if n % lu == 0 {
                c = c.checked_add(&factor.checked_mul(&f.coeffs()[n / lu])?)?;
            }
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    QExpansion::new(
        f.p(),
        f.weight(),
        f.char_exponent(),
        coeffs,
        format!("T_{l}({})", f.label()),
    )
}

/// `⟨d⟩f = ε(d) f` for `d` prime to `p`.
pub fn diamond(f: &QExpansion, d: i64) -> Result<QExpansion> {
    if d.gcd(&(f.p() as i64)) != 1 {
        return Err(Error::NotCoprime { n: d, p: f.p() });
    }
    Ok(f.scale(&character_at(f, d)?)?
        .with_label(format!("<{d}>({})", f.label())))
}

/// `T_{l^r} f` by `T_{l^{s+1}} = T_l T_{l^s} - l^{k-1}⟨l⟩ T_{l^{s-1}}`.
fn hecke_prime_power(f: &QExpansion, l: u64, r: u32) -> Result<QExpansion> {
    let factor = lowering_factor(f, l)?;
    let mut prev = f.clone();
    let mut cur = hecke_tl(f, l)?;
    for _ in 1..r {
        let next = hecke_tl(&cur, l)?;
        let lowered = prev.truncate(next.truncation()).scale(&factor)?;
        prev = cur;
        cur = next.sub(&lowered)?;
    }
    Ok(cur)
}

/// `T_n f` for `n >= 1`, truncated to `⌊M/n⌋`.
pub fn hecke_tn(f: &QExpansion, n: u64) -> Result<QExpansion> {
    if n == 0 {
        return Err(Error::InvalidParameter("T_0 is undefined".into()));
    }
    check_truncation(f, n)?;
    let mut out = f.clone();
    for (l, r) in factorize(n) {
        out = hecke_prime_power(&out, l, r)?;
    }
    Ok(out.with_label(format!("T_{n}({})", f.label())))
}

/// Compares `T_l f` with `λ f` modulo `p^m` through `q^{⌊M/l⌋}`.
pub fn is_eigen_mod(f: &QExpansion, l: u64, lambda: &PadicNum, m: u32) -> Result<CongruenceCheck> {
    let tf = hecke_tl(f, l)?;
    let rhs = f.truncate(tf.truncation()).scale(lambda)?;
    tf.congruent_mod(&rhs, m)
}
