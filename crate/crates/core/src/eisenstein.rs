//! Eisenstein series as truncated q-expansions.
//!
//! All constructors share one divisor sieve: every pair `(d, e)` with
//! `d·e <= M` is visited once, so a series costs `O(M log M)` coefficient
//! updates.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::padic::modulus;
use crate::arith::primes::is_prime;
use crate::arith::rational::{rat_int, BigRational};
use crate::arith::PadicNum;
use crate::bernoulli::{bernoulli_number, check_index, is_irregular_pair};
use crate::characters::{carlitz_check, l_value, DirichletCharacter, LArgument, TeichmullerTable};
use crate::error::{Error, Parity, Result};
use crate::qseries::{CongruenceCheck, QExpansion, MAX_TRUNCATION};

/// Calls `visit(n, d, e)` for every factorization `n = d·e` with `1 <= n <= m`.
pub fn for_each_divisor_pair(m: usize, mut visit: impl FnMut(usize, usize, usize)) {
    for d in 1..=m {
        let mut n = d;
        let mut e = 1;
        while n <= m {
            visit(n, d, e);
            n += d;
            e += 1;
        }
    }
}

/// `σ_r(n)` for `0 <= n <= m` (with `σ_r(0) = 0`).
pub fn sigma_table(r: u32, m: usize) -> Vec<BigInt> {
    let powers: Vec<BigInt> = (0..=m).map(|d| Pow::pow(BigInt::from(d), r)).collect();
    let mut out = vec![BigInt::zero(); m + 1];
    for_each_divisor_pair(m, |n, d, _| out[n] += &powers[d]);
    out
}

fn check_truncation(m: usize) -> Result<()> {
    if m == 0 || m > MAX_TRUNCATION {
        return Err(Error::InvalidParameter(format!(
            "truncation must be in [1, {MAX_TRUNCATION}], got {m}"
        )));
    }
    Ok(())
}

fn check_level(p: u64) -> Result<()> {
    if p < 5 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Character `ω^i` with the requested parity; trivial characters are rejected.
fn character(p: u64, i: i64, parity: Parity, precision: u32) -> Result<DirichletCharacter> {
    check_level(p)?;
    let chi = DirichletCharacter::padic(p, i, precision)?;
    if chi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let actual = if chi.is_even() {
        Parity::Even
    } else {
        Parity::Odd
    };
    if actual != parity {
        return Err(Error::BadCharacterParity {
            exponent: chi.exponent(),
            expected: parity,
        });
    }
    Ok(chi)
}

/// Builds `Σ_n (Σ_{d·e=n} weight(d, e)) q^n` with the given constant term.
fn twisted_divisor_series(
    chi: &DirichletCharacter,
    weight: u32,
    m: usize,
    precision: u32,
    constant: PadicNum,
    term: impl Fn(&[BigUint], usize, usize) -> BigUint,
    label: String,
) -> Result<QExpansion> {
    let p = chi.p();
    let values: Vec<BigUint> = TeichmullerTable::new(p, precision)
        .character_values(chi.exponent())
        .into_iter()
        .map(|v| v.residue().clone())
        .collect();
    let modulus = modulus(p, precision);
    let mut acc = vec![BigUint::zero(); m + 1];
    for_each_divisor_pair(m, |n, d, e| acc[n] += term(&values, d, e));
    let mut coeffs = Vec::with_capacity(m + 1);
    coeffs.push(constant);
    for a in acc.into_iter().skip(1) {
        coeffs.push(PadicNum::new(p, precision, BigInt::from(a % &modulus))?);
    }
    QExpansion::new(p, weight, chi.exponent(), coeffs, label)
}

fn half(x: PadicNum) -> Result<PadicNum> {
    let two = PadicNum::from_i64(x.p(), x.precision(), 2)?;
    x.div_unit(&two)
}

/// `G_{2,ε} = L(-1,ε)/2 + Σ_n Σ_{d|n} ε(d) d q^n` for `ε = ω^i` even and nontrivial.
pub fn eis_g2_char(p: u64, i: i64, m: usize, precision: u32) -> Result<QExpansion> {
    check_truncation(m)?;
    let chi = character(p, i, Parity::Even, precision)?;
    let constant = half(l_value(LArgument::MinusOne, &chi, precision)?)?;
    twisted_divisor_series(
        &chi,
        2,
        m,
        precision,
        constant,
        |eps, d, _| &eps[d % p as usize] * BigUint::from(d),
        format!("G_2,w^{}", chi.exponent()),
    )
}

/// `s_{2,ε} = Σ_n Σ_{d|n} ε(n/d) d q^n` for `ε = ω^i` even and nontrivial.
pub fn eis_s2_char(p: u64, i: i64, m: usize, precision: u32) -> Result<QExpansion> {
    check_truncation(m)?;
    let chi = character(p, i, Parity::Even, precision)?;
    twisted_divisor_series(
        &chi,
        2,
        m,
        precision,
        PadicNum::zero(p, precision),
        |eps, d, e| &eps[e % p as usize] * BigUint::from(d),
        format!("s_2,w^{}", chi.exponent()),
    )
}

/// `G_{1,ε} = L(0,ε)/2 + Σ_n Σ_{d|n} ε(d) q^n` for `ε = ω^i` odd.
pub fn eis_g1_char(p: u64, i: i64, m: usize, precision: u32) -> Result<QExpansion> {
    check_truncation(m)?;
    let chi = character(p, i, Parity::Odd, precision)?;
    let constant = half(l_value(LArgument::Zero, &chi, precision)?)?;
    twisted_divisor_series(
        &chi,
        1,
        m,
        precision,
        constant,
        |eps, d, _| eps[d % p as usize].clone(),
        format!("G_1,w^{}", chi.exponent()),
    )
}

/// A q-expansion with exact rational coefficients and trivial character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    pub weight: u32,
    pub coeffs: Vec<BigRational>,
    pub label: String,
}

impl RationalSeries {
    /// Embeds into `Z_p / p^A`; fails when a coefficient is not p-integral.
    pub fn embed(&self, p: u64, precision: u32) -> Result<QExpansion> {
        QExpansion::from_rationals(
            p,
            self.weight,
            0,
            precision,
            &self.coeffs,
            self.label.clone(),
        )
        .map_err(|e| match e {
            Error::DenominatorDivisibleByP { p } => Error::EmbeddingFailure { p, k: self.weight },
            other => other,
        })
    }
}

/// `G_k = -B_k/2k + Σ_n σ_{k-1}(n) q^n` for even `k >= 4`.
pub fn eis_gk_level1(k: u32, m: usize) -> Result<RationalSeries> {
    check_truncation(m)?;
    if k < 4 || k % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "G_k needs even k >= 4, got {k}"
        )));
    }
    let mut coeffs: Vec<BigRational> = sigma_table(k - 1, m)
        .into_iter()
        .map(BigRational::from_integer)
        .collect();
    coeffs[0] = -bernoulli_number(k as usize) / rat_int(2 * k as i64);
    Ok(RationalSeries {
        weight: k,
        coeffs,
        label: format!("G_{k}"),
    })
}

/// `G_2 = E_2(z) - p E_2(pz)` with `E_2 = -B_2/4 + Σ σ_1(n) q^n`.
pub fn eis_g2_level_p(p: u64, m: usize) -> Result<RationalSeries> {
    check_truncation(m)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let sigma = sigma_table(1, m);
    let pu = p as usize;
    let pb = BigInt::from(p);
    let mut coeffs = Vec::with_capacity(m + 1);
    let e2_constant = -bernoulli_number(2) / rat_int(4);
    coeffs.push(e2_constant * rat_int(1 - p as i64));
    for n in 1..=m {
        let mut a = sigma[n].clone();
        if n % pu == 0 {
            a -= &pb * &sigma[n / pu];
        }
        coeffs.push(BigRational::from_integer(a));
    }
    Ok(RationalSeries {
        weight: 2,
        coeffs,
        label: format!("G_2,level {p}"),
    })
}

/// How the unit-constant form was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum UnitFormCase {
    /// `p ∤ B_k`: `G_{2,ω^{k-2}}` itself.
    CaseI,
    /// `G_{1,ω^{n-1}} · G_{1,ω^{m-1}}` with `n + m ≡ k (mod p-1)`.
    CaseIi { n: u64, m: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitFormResult {
    /// Weight 2, type `ω^{k-2}`, constant term exactly 1.
    pub g: QExpansion,
    pub case: UnitFormCase,
    /// Constant term before normalization; a unit.
    pub raw_constant: PadicNum,
}

/// First even pair `n <= m` in `[2, p-3]` with `n + m ∈ {k, k + p - 1}` and
/// `p ∤ B_n B_m`, in lexicographic order.
pub fn case_two_pair(p: u64, k: u64) -> Result<Option<(u64, u64)>> {
    check_index(p, k)?;
    for n in (2..=p - 3).step_by(2) {
        for target in [k, k + p - 1] {
            if target < n + n {
                continue;
            }
            let m = target - n;
            if m > p - 3 {
                continue;
            }
            if !is_irregular_pair(p, n)? && !is_irregular_pair(p, m)? {
                return Ok(Some((n, m)));
            }
        }
    }
    Ok(None)
}

/// A weight-2 form of type `ω^{k-2}` with p-integral coefficients and
/// constant term 1.
pub fn build_unit_constant_form(
    p: u64,
    k: u64,
    m: usize,
    precision: u32,
) -> Result<UnitFormResult> {
    check_index(p, k)?;
    check_truncation(m)?;
    let (raw, case) = if k >= 4 && !is_irregular_pair(p, k)? {
        (
            eis_g2_char(p, k as i64 - 2, m, precision)?,
            UnitFormCase::CaseI,
        )
    } else if let Some((n, mm)) = case_two_pair(p, k)? {
        let left = eis_g1_char(p, n as i64 - 1, m, precision)?;
        let right = eis_g1_char(p, mm as i64 - 1, m, precision)?;
        (left.mul(&right)?, UnitFormCase::CaseIi { n, m: mm })
    } else {
        return Err(Error::CaseThreeViolation {
            p,
            k,
            carlitz_holds: carlitz_check(p)?,
        });
    };
    let raw_constant = raw.constant_term().clone();
    if !raw_constant.is_unit() {
        return Err(Error::InternalInconsistency(format!(
            "constant term {raw_constant} of the unit form for (p={p}, k={k}) is not a unit"
        )));
    }
    let g = raw
        .scale(&raw_constant.inverse()?)?
        .with_label(format!("g[{}]", raw.label()));
    debug_assert!(g.constant_term().residue().is_one());
    Ok(UnitFormResult {
        g,
        case,
        raw_constant,
    })
}

/// Coefficient-wise comparison of `G_{2,ω^{k-2}}` and `G_{1,ω^{k-1}}` with
/// the embedded `G_k` modulo `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EisensteinCongruence {
    pub p: u64,
    pub k: u64,
    pub g2_eps: CongruenceCheck,
    pub g1_eps: CongruenceCheck,
}

impl EisensteinCongruence {
    pub fn holds(&self) -> bool {
        self.g2_eps.holds && self.g1_eps.holds
    }
}

/// Checks the weight-2 and weight-1 Eisenstein series against `G_k` mod `p`
/// through `q^m`, constant terms included. Needs even `k` in `[4, p-3]`.
pub fn verify_eisenstein_congruence(
    p: u64,
    k: u64,
    m: usize,
    precision: u32,
) -> Result<EisensteinCongruence> {
    check_index(p, k)?;
    if k < 4 {
        return Err(Error::IndexOutOfRange { p, k });
    }
    let gk = eis_gk_level1(k as u32, m)?.embed(p, precision)?;
    let g2 = eis_g2_char(p, k as i64 - 2, m, precision)?;
    let g1 = eis_g1_char(p, k as i64 - 1, m, precision)?;
    Ok(EisensteinCongruence {
        p,
        k,
        g2_eps: g2.congruent_mod(&gk, 1)?,
        g1_eps: g1.congruent_mod(&gk, 1)?,
    })
}
