//! Dirichlet characters modulo `p` as powers of the Teichmüller character,
//! generalized Bernoulli numbers, L-values at `0` and `-1`, and the relative
//! class number of `Q(μ_p)`.
//!
//! Characters are evaluated either p-adically (the prime above `p` is the
//! embedding `ζ_{p-1} ↦ ω(g)` for the smallest primitive root `g`) or exactly
//! in `Q(μ_{p-1})`, where `ω(g^j) = ζ^j`.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::arith::primes::{discrete_log_table, is_prime, primitive_root};
use crate::arith::rational::{binomial_row, int_valuation, BigRational};
use crate::arith::{embed_rational, teichmuller, CyclotomicField, CyclotomicNumber, PadicNum};
use crate::bernoulli::{bernoulli_number, irregular_indices};
use crate::error::{Error, Result};

/// Largest `p` for which [`relative_class_number`] runs without an explicit bound.
pub const DEFAULT_CLASS_NUMBER_BOUND: u64 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Padic { precision: u32 },
    Cyclotomic,
}

/// The character `ω^i` modulo `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DirichletCharacter {
    p: u64,
    exponent: u64,
    backend: Backend,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharValue {
    Padic(PadicNum),
    Cyclotomic(CyclotomicNumber),
}

impl DirichletCharacter {
    pub fn new(p: u64, exponent: i64, backend: Backend) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if let Backend::Padic { precision: 0 } = backend {
            return Err(Error::PrecisionExhausted);
        }
        let exponent = exponent.rem_euclid(p as i64 - 1) as u64;
        Ok(Self {
            p,
            exponent,
            backend,
        })
    }

    pub fn padic(p: u64, exponent: i64, precision: u32) -> Result<Self> {
        Self::new(p, exponent, Backend::Padic { precision })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn is_even(&self) -> bool {
        self.exponent.is_multiple_of(2)
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }

    pub fn with_backend(&self, backend: Backend) -> Self {
        Self { backend, ..*self }
    }

    /// `ω(n)^i`, or zero when `p | n`.
    pub fn value(&self, n: i64) -> CharValue {
        match self.backend {
            Backend::Padic { precision } => CharValue::Padic(self.value_padic(n, precision)),
            Backend::Cyclotomic => {
                CharValue::Cyclotomic(self.value_cyclotomic(n, &CyclotomicField::new(self.p)))
            }
        }
    }

    pub fn value_padic(&self, n: i64, precision: u32) -> PadicNum {
        match teichmuller(n, self.p, precision) {
            Ok(w) => w.pow(self.exponent),
            Err(_) => PadicNum::zero(self.p, precision),
        }
    }

    pub fn value_cyclotomic(&self, n: i64, field: &Arc<CyclotomicField>) -> CyclotomicNumber {
        let r = n.rem_euclid(self.p as i64) as u64;
        if r == 0 {
            return CyclotomicNumber::zero(field);
        }
        let g = primitive_root(self.p);
        let log = discrete_log_table(self.p, g)[r as usize];
        CyclotomicNumber::zeta_power(field, (log * self.exponent % (self.p - 1)) as i64)
    }

    /// Values `χ(0), ..., χ(p-1)` at the given precision.
    pub fn value_table(&self, precision: u32) -> Vec<PadicNum> {
        TeichmullerTable::new(self.p, precision).character_values(self.exponent)
    }
}

/// Precomputed Teichmüller data modulo `p^A`: a discrete-log table for the
/// smallest primitive root `g` and the powers of `ω(g)`.
#[derive(Clone, Debug)]
pub struct TeichmullerTable {
    p: u64,
    precision: u32,
    generator: u64,
    dlog: Vec<u64>,
    powers: Vec<PadicNum>,
}

impl TeichmullerTable {
    pub fn new(p: u64, precision: u32) -> Self {
        let generator = primitive_root(p);
        let dlog = discrete_log_table(p, generator);
        let wg = teichmuller(generator as i64, p, precision).expect("generator is a unit");
        let mut powers = Vec::with_capacity(p as usize - 1);
        let mut x = PadicNum::one(p, precision);
        for _ in 0..p - 1 {
            powers.push(x.clone());
            x = &x * &wg;
        }
        Self {
            p,
            precision,
            generator,
            dlog,
            powers,
        }
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `ω(g)`, the image of `ζ_{p-1}`.
    pub fn zeta_image(&self) -> &PadicNum {
        &self.powers[1 % self.powers.len()]
    }

    pub fn omega_power(&self, exponent: u64, n: i64) -> PadicNum {
        let r = n.rem_euclid(self.p as i64) as usize;
        if r == 0 {
            return PadicNum::zero(self.p, self.precision);
        }
        let j = (self.dlog[r] as u128 * exponent as u128 % (self.p as u128 - 1)) as usize;
        self.powers[j].clone()
    }

    pub fn character_values(&self, exponent: u64) -> Vec<PadicNum> {
        (0..self.p as i64)
            .map(|a| self.omega_power(exponent, a))
            .collect()
    }
}

/// Dispatches to the evaluation backend carried by the character.
pub fn char_value(chi: &DirichletCharacter, n: i64) -> CharValue {
    chi.value(n)
}

/// `N_n(a) = Σ_i C(n,i) B_i p^i a^{n-i}`, so that `B_{n,χ} = (1/p) Σ_a χ(a) N_n(a)`.
fn bernoulli_kernel(n: usize, p: u64) -> Vec<BigRational> {
    let binom = binomial_row(n);
    let pb = BigInt::from(p);
    let weights: Vec<BigRational> = (0..=n)
        .map(|i| {
            bernoulli_number(i)
                * BigRational::from_integer(&binom[i] * num_traits::pow(pb.clone(), i))
        })
        .collect();
    (0..p)
        .map(|a| {
            let a = BigInt::from(a);
            let mut s = BigRational::zero();
            let mut apow = BigInt::one();
            for i in (0..=n).rev() {
                s += &weights[i] * &apow;
                apow *= &a;
            }
            s
        })
        .collect()
}

/// `B_{n,χ} = p^{n-1} Σ_{a=1}^{p} χ(a) B_n(a/p)` in `Z_p / p^A`.
///
/// The computation runs at precision `A + n` and divides by `p` once.
pub fn generalized_bernoulli(
    n: usize,
    chi: &DirichletCharacter,
    precision: u32,
) -> Result<PadicNum> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if chi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let p = chi.p;
    let working = precision + n as u32;
    let table = TeichmullerTable::new(p, working);
    let kernel = bernoulli_kernel(n, p);
    let mut sum = PadicNum::zero(p, working);
    for a in 1..p {
        let term = embed_rational(&kernel[a as usize], p, working)?;
        sum = &sum + &(&table.omega_power(chi.exponent, a as i64) * &term);
    }
    let value = sum.div_by_p().map_err(|e| match e {
        Error::NotDivisibleByP => Error::PoleAtP {
            exponent: chi.exponent,
        },
        other => other,
    })?;
    value.reduce(precision)
}

/// `B_{n,χ}` exactly in `Q(μ_{p-1})`.
pub fn generalized_bernoulli_exact(
    n: usize,
    chi: &DirichletCharacter,
    field: &Arc<CyclotomicField>,
) -> Result<CyclotomicNumber> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if chi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let p = chi.p;
    let g = primitive_root(p);
    let dlog = discrete_log_table(p, g);
    let kernel = bernoulli_kernel(n, p);
    let mut coeffs = vec![BigRational::zero(); (p - 1) as usize];
    for a in 1..p as usize {
        let j = (dlog[a] * chi.exponent % (p - 1)) as usize;
        coeffs[j] += &kernel[a];
    }
    Ok(CyclotomicNumber::from_coeffs(field, coeffs)
        .scale(&BigRational::new(BigInt::one(), BigInt::from(p))))
}

/// Argument of an L-value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LArgument {
    Zero,
    MinusOne,
}

impl TryFrom<i32> for LArgument {
    type Error = Error;

    fn try_from(s: i32) -> Result<Self> {
        match s {
            0 => Ok(LArgument::Zero),
            -1 => Ok(LArgument::MinusOne),
            _ => Err(Error::InvalidParameter(format!(
                "L-values are supported at s = 0, -1 only (got {s})"
            ))),
        }
    }
}

/// `L(0,χ) = -B_{1,χ}` and `L(-1,χ) = -B_{2,χ}/2`.
pub fn l_value(s: LArgument, chi: &DirichletCharacter, precision: u32) -> Result<PadicNum> {
    match s {
        LArgument::Zero => Ok(-generalized_bernoulli(1, chi, precision)?),
        LArgument::MinusOne => {
            let b2 = generalized_bernoulli(2, chi, precision)?;
            let two = PadicNum::from_i64(chi.p, precision, 2)?;
            Ok(-b2.div_unit(&two)?)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassNumberReport {
    pub p: u64,
    pub h_minus: BigUint,
    /// Exponent of `p` in `h_minus`.
    pub p_part_exponent: u32,
    /// Number of irregular indices `t`.
    pub irregular_count: usize,
    /// Carlitz exponent `(p-1)/4`.
    pub carlitz_bound: Ratio<u64>,
}

impl ClassNumberReport {
    /// `t < (p-1)/4` and `p^t | h⁻`.
    pub fn carlitz_holds(&self) -> bool {
        let t_below_bound = Ratio::from_integer(self.irregular_count as u64) < self.carlitz_bound;
        t_below_bound && self.p_part_exponent as usize >= self.irregular_count
    }
}

/// `h⁻ = 2p · Π_{χ odd} (-B_{1,χ}/2)`, evaluated exactly in `Q(μ_{p-1})`.
pub fn relative_class_number(p: u64) -> Result<ClassNumberReport> {
    relative_class_number_bounded(p, DEFAULT_CLASS_NUMBER_BOUND)
}

pub fn relative_class_number_bounded(p: u64, bound: u64) -> Result<ClassNumberReport> {
    if p < 5 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > bound {
        return Err(Error::ClassNumberBoundExceeded { p, bound });
    }
    let modulus = crate::arith::cyclotomic::cyclotomic_polynomial(p - 1);
    let g = primitive_root(p);
    let dlog = discrete_log_table(p, g);
    // p·B_{1,ω^i} = Σ_a a ζ^{i·log a} is integral; multiply those in Z[ζ] and rescale once.
    let mut product = vec![BigInt::one()];
    for i in (1..p - 1).step_by(2) {
        let mut factor = vec![BigInt::zero(); (p - 1) as usize];
        for a in 1..p {
            let j = (dlog[a as usize] * i % (p - 1)) as usize;
            factor[j] += a;
        }
        product = reduce_monic(
            poly_mul(&product, &reduce_monic(factor, &modulus)),
            &modulus,
        );
    }
    if product.iter().skip(1).any(|c| !c.is_zero()) {
        return Err(Error::InternalInconsistency(format!(
            "h⁻ for p={p} is not rational"
        )));
    }
    let odd_count = (p - 1) / 2;
    let h = BigRational::new(
        &product[0] * BigInt::from(2 * p),
        num_traits::pow(BigInt::from(-2 * p as i64), odd_count as usize),
    );
    if !h.is_integer() || !h.is_positive() {
        return Err(Error::InternalInconsistency(format!(
            "h⁻ for p={p} is not a positive integer: {h}"
        )));
    }
    let h_int = h.to_integer();
    let p_part_exponent = int_valuation(&h_int, p).unwrap_or(0);
    Ok(ClassNumberReport {
        p,
        h_minus: h_int.to_biguint().expect("positive"),
        p_part_exponent,
        irregular_count: irregular_indices(p)?.len(),
        carlitz_bound: Ratio::new(p - 1, 4),
    })
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Remainder modulo a monic integer polynomial.
fn reduce_monic(mut poly: Vec<BigInt>, modulus: &[BigInt]) -> Vec<BigInt> {
    let deg = modulus.len() - 1;
    for i in (deg..poly.len()).rev() {
        let c = std::mem::take(&mut poly[i]);
        if c.is_zero() {
            continue;
        }
        for (j, mj) in modulus[..deg]
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
        {
            poly[i - deg + j] -= &c * mj;
        }
    }
    poly.truncate(deg);
    poly
}

/// Whether `t < (p-1)/4` and `p^t | h⁻` at `p`.
pub fn carlitz_check(p: u64) -> Result<bool> {
    Ok(relative_class_number(p)?.carlitz_holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes::primes_below;
    use crate::arith::rational::{rat, rat_int};

    fn pn(p: u64, a: u32, v: i64) -> PadicNum {
        PadicNum::from_i64(p, a, v).unwrap()
    }

    /// `|det[R(r·s⁻¹)]_{1≤r,s≤(p-1)/2}| = p^{(p-3)/2} h⁻`, by Bareiss elimination.
    fn maillet_oracle(p: u64) -> BigInt {
        let n = ((p - 1) / 2) as usize;
        let inv = |s: u64| (1..p).find(|&x| x * s % p == 1).unwrap();
        let mut m: Vec<Vec<BigInt>> = (1..=n as u64)
            .map(|r| {
                (1..=n as u64)
                    .map(|s| BigInt::from(r * inv(s) % p))
                    .collect()
            })
            .collect();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                let swap = (k + 1..n)
                    .find(|&r| !m[r][k].is_zero())
                    .expect("nonsingular");
                m.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        let det = &m[n - 1][n - 1] * sign;
        let scale = num_traits::pow(BigInt::from(p), ((p - 3) / 2) as usize);
        assert!((&det % &scale).is_zero());
        (det / scale).abs()
    }

    #[test]
    fn maillet_matches_product_formula() {
        for p in primes_below(60).into_iter().filter(|&p| p >= 5) {
            let report = relative_class_number(p).unwrap();
            assert_eq!(BigInt::from(report.h_minus), maillet_oracle(p), "p={p}");
        }
    }

    #[test]
    fn class_number_examples() {
        let r5 = relative_class_number(5).unwrap();
        assert_eq!(r5.h_minus, BigUint::one());
        assert_eq!(r5.p_part_exponent, 0);
        assert_eq!(
            relative_class_number(23).unwrap().h_minus,
            BigUint::from(3u32)
        );
        let r37 = relative_class_number(37).unwrap();
        assert_eq!(r37.h_minus, BigUint::from(37u32));
        assert_eq!(r37.p_part_exponent, 1);
        assert_eq!(r37.irregular_count, 1);
        assert_eq!(r37.carlitz_bound, Ratio::from_integer(9));
        for p in [5u64, 7, 11, 13, 17, 19] {
            assert_eq!(relative_class_number(p).unwrap().h_minus, BigUint::one());
        }
        assert_eq!(
            relative_class_number(211),
            Err(Error::ClassNumberBoundExceeded { p: 211, bound: 200 })
        );
    }

    #[test]
    fn carlitz_examples() {
        assert!(carlitz_check(37).unwrap());
        assert!(carlitz_check(7).unwrap());
        let r = relative_class_number(157).unwrap();
        assert_eq!(r.irregular_count, 2);
        assert!(r.p_part_exponent >= 2);
        assert!(r.carlitz_holds());
    }

    #[test]
    fn character_value_examples() {
        let triv = DirichletCharacter::padic(5, 0, 2).unwrap();
        assert_eq!(char_value(&triv, 3), CharValue::Padic(pn(5, 2, 1)));
        let w = DirichletCharacter::padic(5, 1, 2).unwrap();
        assert_eq!(char_value(&w, 2), CharValue::Padic(pn(5, 2, 7)));
        let w2 = DirichletCharacter::padic(5, 2, 2).unwrap();
        assert_eq!(char_value(&w2, 2), CharValue::Padic(pn(5, 2, 24)));
        assert_eq!(char_value(&w2, 10), CharValue::Padic(pn(5, 2, 0)));
        assert!(w2.is_even() && !w.is_even() && triv.is_trivial());
        let wc = w.with_backend(Backend::Cyclotomic);
        let field = CyclotomicField::new(5);
        assert_eq!(
            char_value(&wc, 2),
            CharValue::Cyclotomic(CyclotomicNumber::zeta_power(&field, 1))
        );
    }

    #[test]
    fn table_matches_direct_values() {
        for p in [5u64, 13, 37] {
            let t = TeichmullerTable::new(p, 4);
            for i in 0..p - 1 {
                let chi = DirichletCharacter::padic(p, i as i64, 4).unwrap();
                for a in 0..p as i64 {
                    assert_eq!(t.omega_power(i, a), chi.value_padic(a, 4));
                }
            }
        }
    }

    #[test]
    fn generalized_bernoulli_examples() {
        let w = DirichletCharacter::padic(5, 1, 2).unwrap();
        assert_eq!(generalized_bernoulli(1, &w, 2).unwrap(), pn(5, 2, 13));
        assert_eq!(l_value(LArgument::Zero, &w, 2).unwrap(), pn(5, 2, 12));
        // L(0,ω) ≡ -B_2/2 ≡ 2 (mod 5)
        assert_eq!(l_value(LArgument::Zero, &w, 1).unwrap(), pn(5, 1, 2));
        let triv = DirichletCharacter::padic(5, 0, 2).unwrap();
        assert_eq!(
            generalized_bernoulli(1, &triv, 2),
            Err(Error::TrivialCharacter)
        );
        // ω^{-1} has a pole at p
        let winv = DirichletCharacter::padic(5, 3, 2).unwrap();
        assert_eq!(
            generalized_bernoulli(1, &winv, 2),
            Err(Error::PoleAtP { exponent: 3 })
        );
        assert!(LArgument::try_from(1).is_err());
    }

    #[test]
    fn second_bernoulli_matches_direct_sum() {
        // L(-1,χ) = -(1/2p) Σ χ(a)(a² - pa + p²/6), evaluated with rationals per term
        for p in [5u64, 7, 11, 13] {
            // i = p-3 is the pole of B_{2,ω^i}
            for i in (2..p - 3).step_by(2) {
                let chi = DirichletCharacter::padic(p, i as i64, 6).unwrap();
                let mut s = PadicNum::zero(p, 6);
                for a in 1..p as i64 {
                    let pi = p as i64;
                    let q =
                        BigRational::from_integer(BigInt::from(a * a - pi * a)) + rat(pi * pi, 6);
                    s = &s + &(&chi.value_padic(a, 6) * &embed_rational(&q, p, 6).unwrap());
                }
                let direct = -s.div_by_p().unwrap().div_unit(&pn(p, 5, 2)).unwrap();
                let via = l_value(LArgument::MinusOne, &chi, 4).unwrap();
                assert_eq!(direct.reduce(4).unwrap(), via, "p={p} i={i}");
                let b2 = generalized_bernoulli(2, &chi, 4).unwrap();
                assert_eq!(&b2 + &(&via * &pn(p, 4, 2)), PadicNum::zero(p, 4));
            }
        }
    }

    #[test]
    fn parity_vanishing() {
        for p in [7u64, 11, 13, 23] {
            let field = CyclotomicField::new(p);
            for i in 1..p - 1 {
                let chi = DirichletCharacter::padic(p, i as i64, 3).unwrap();
                if chi.is_even() {
                    assert!(generalized_bernoulli(1, &chi, 3).unwrap().is_zero());
                    assert!(generalized_bernoulli_exact(1, &chi, &field)
                        .unwrap()
                        .is_zero());
                } else {
                    assert!(generalized_bernoulli(2, &chi, 3).unwrap().is_zero());
                    assert!(generalized_bernoulli_exact(2, &chi, &field)
                        .unwrap()
                        .is_zero());
                }
            }
        }
    }

    #[test]
    fn backends_agree() {
        for p in [5u64, 7, 13, 37] {
            let field = CyclotomicField::new(p);
            let table = TeichmullerTable::new(p, 3);
            for i in 1..p - 1 {
                let chi = DirichletCharacter::padic(p, i as i64, 3).unwrap();
                for n in [1usize, 2] {
                    if (i + n as u64).is_multiple_of(p - 1) {
                        assert_eq!(
                            generalized_bernoulli(n, &chi, 3),
                            Err(Error::PoleAtP { exponent: i })
                        );
                        continue;
                    }
                    let exact = generalized_bernoulli_exact(n, &chi, &field).unwrap();
                    let padic = generalized_bernoulli(n, &chi, 3).unwrap();
                    assert_eq!(
                        exact.embed(table.generator(), 3).unwrap(),
                        padic,
                        "p={p} i={i} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn even_character_sums_vanish() {
        for p in primes_below(50).into_iter().filter(|&p| p >= 5) {
            let table = TeichmullerTable::new(p, 2);
            for i in (0..p - 1).step_by(2) {
                let mut s = PadicNum::zero(p, 2);
                for n in 1..p as i64 {
                    s = &s + &table.omega_power(i, n).scale(n);
                }
                assert!(s.reduce(1).unwrap().is_zero(), "p={p} i={i}");
            }
        }
    }

    #[test]
    fn l_values_match_bernoulli_quotients() {
        for p in primes_below(50).into_iter().filter(|&p| p >= 5) {
            for k in (2..=p - 3).step_by(2) {
                let target = -(bernoulli_number(k as usize) / rat_int(k as i64));
                let target = embed_rational(&target, p, 1).unwrap();
                let odd = DirichletCharacter::padic(p, k as i64 - 1, 1).unwrap();
                assert_eq!(
                    l_value(LArgument::Zero, &odd, 1).unwrap(),
                    target,
                    "p={p} k={k}"
                );
                if k >= 4 {
                    let even = DirichletCharacter::padic(p, k as i64 - 2, 1).unwrap();
                    assert_eq!(
                        l_value(LArgument::MinusOne, &even, 1).unwrap(),
                        target,
                        "p={p} k={k}"
                    );
                }
            }
        }
    }
}
