//! Exact arithmetic in `Q(μ_{p-1}) = Q[x]/Φ_{p-1}(x)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::padic::{embed_rational, teichmuller, PadicNum};
use super::primes::divisors;
use super::rational::{denominator_valuation, BigRational};
use crate::error::{Error, Result};

/// The `n`-th cyclotomic polynomial, coefficients from the constant term up.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d < n {
            poly = exact_div_monic(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// `Q(μ_{p-1})` together with its defining polynomial.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    p: u64,
    modulus: Vec<BigInt>,
}

impl CyclotomicField {
    pub fn new(p: u64) -> Arc<Self> {
        Arc::new(Self {
            p,
            modulus: cyclotomic_polynomial(p - 1),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Order of the distinguished root of unity `ζ`.
    pub fn order(&self) -> u64 {
        self.p - 1
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    fn reduce(&self, mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
        let deg = self.degree();
        for i in (deg..coeffs.len()).rev() {
            let c = std::mem::take(&mut coeffs[i]);
            if c.is_zero() {
                continue;
            }
            for j in 0..deg {
                let mj = &self.modulus[j];
                if !mj.is_zero() {
                    coeffs[i - deg + j] -= &c * mj;
                }
            }
        }
        coeffs.resize(deg, BigRational::zero());
        coeffs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycloOp {
    Add,
    Mul,
}

impl CyclotomicNumber {
    pub fn from_rational(field: &Arc<CyclotomicField>, q: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); field.degree()];
        coeffs[0] = q;
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Self::from_rational(field, BigRational::zero())
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    /// `ζ^j` with `ζ` the distinguished primitive `(p-1)`-th root of unity.
    pub fn zeta_power(field: &Arc<CyclotomicField>, j: i64) -> Self {
        let e = j.rem_euclid(field.order() as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); e.max(field.degree() - 1) + 1];
        coeffs[e] = BigRational::one();
        Self {
            field: field.clone(),
            coeffs: field.reduce(coeffs),
        }
    }

    /// Builds `Σ coeffs[i] ζ^i`, reducing modulo the cyclotomic polynomial.
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: Vec<BigRational>) -> Self {
        let mut coeffs = coeffs;
        if coeffs.len() < field.degree() {
            coeffs.resize(field.degree(), BigRational::zero());
        }
        Self {
            field: field.clone(),
            coeffs: field.reduce(coeffs),
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field.p != other.field.p {
            return Err(Error::MismatchedField);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let n = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Self {
            field: self.field.clone(),
            coeffs: self.field.reduce(prod),
        })
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Image under `ζ ↦ ω(g)` in `Z_p / p^A`, where `g` is a primitive root
    /// mod `p`. Coefficients may carry powers of `p` in their denominators as
    /// long as the image itself is p-integral.
    pub fn embed(&self, generator: u64, precision: u32) -> Result<PadicNum> {
        let p = self.field.p;
        let shift = self
            .coeffs
            .iter()
            .map(|c| denominator_valuation(c, p))
            .max()
            .unwrap_or(0);
        let working = precision + shift;
        let zeta = teichmuller(generator as i64, p, working)?;
        let scale = BigRational::from_integer(num_traits::pow(BigInt::from(p), shift as usize));
        let mut acc = PadicNum::zero(p, working);
        let mut power = PadicNum::one(p, working);
        for c in &self.coeffs {
            if !c.is_zero() {
                acc = &acc + &(&embed_rational(&(c * &scale), p, working)? * &power);
            }
            power = &power * &zeta;
        }
        for _ in 0..shift {
            acc = acc.div_by_p().map_err(|e| match e {
                Error::NotDivisibleByP => Error::DenominatorDivisibleByP { p },
                other => other,
            })?;
        }
        Ok(acc)
    }
}

/// Ring operation on two elements of the same cyclotomic field.
pub fn cyclo_arith(
    x: &CyclotomicNumber,
    y: &CyclotomicNumber,
    op: CycloOp,
) -> Result<CyclotomicNumber> {
    match op {
        CycloOp::Add => x.checked_add(y),
        CycloOp::Mul => x.checked_mul(y),
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;

            /// Panics when the operands belong to different fields.
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$checked(rhs)
                    .expect("cyclotomic operands in the same field")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}
