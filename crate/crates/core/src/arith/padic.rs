//! p-adic integers known to a fixed absolute precision.
//!
//! A [`PadicNum`] is an element of `Z_p` known modulo `p^A`. Ring operations
//! keep the smaller of the two precisions; dividing by `p` costs one digit.
//! Values of negative valuation are not representable: callers scale by a
//! power of `p` first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{uint_valuation, BigRational};
use crate::error::{Error, Result};

/// Precision used when nothing else is requested.
pub const DEFAULT_PRECISION: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicNum {
    p: u64,
    precision: u32,
    residue: BigUint,
}

/// Valuation of a [`PadicNum`], capped at its precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Valuation {
    pub value: u32,
    /// `false` when the residue vanishes to full precision, so the true
    /// valuation is only known to be at least `value`.
    pub exact: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PadicOp {
    Add,
    Sub,
    Mul,
    DivUnit,
    /// Ignores the second operand.
    DivByP,
}

pub fn modulus(p: u64, precision: u32) -> BigUint {
    num_traits::pow(BigUint::from(p), precision as usize)
}

fn reduce_signed(value: &BigInt, m: &BigUint) -> BigUint {
    let m = BigInt::from_biguint(Sign::Plus, m.clone());
    value
        .mod_floor(&m)
        .to_biguint()
        .expect("mod_floor is non-negative")
}

impl PadicNum {
    pub fn new(p: u64, precision: u32, value: impl Into<BigInt>) -> Result<Self> {
        if precision == 0 {
            return Err(Error::PrecisionExhausted);
        }
        let residue = reduce_signed(&value.into(), &modulus(p, precision));
        Ok(Self {
            p,
            precision,
            residue,
        })
    }

    pub fn from_i64(p: u64, precision: u32, value: i64) -> Result<Self> {
        Self::new(p, precision, value)
    }

    pub fn zero(p: u64, precision: u32) -> Self {
        assert!(precision > 0, "precision must be positive");
        Self {
            p,
            precision,
            residue: BigUint::zero(),
        }
    }

    pub fn one(p: u64, precision: u32) -> Self {
        assert!(precision > 0, "precision must be positive");
        let residue = BigUint::one() % modulus(p, precision);
        Self {
            p,
            precision,
            residue,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn modulus(&self) -> BigUint {
        modulus(self.p, self.precision)
    }

    /// Representative in `(-p^A/2, p^A/2]`.
    pub fn balanced(&self) -> BigInt {
        let m = self.modulus();
        let r = BigInt::from(self.residue.clone());
        if &self.residue * 2u32 > m {
            r - BigInt::from(m)
        } else {
            r
        }
    }

    pub fn valuation(&self) -> Valuation {
        match uint_valuation(&self.residue, self.p) {
            Some(v) if v < self.precision => Valuation {
                value: v,
                exact: true,
            },
            _ => Valuation {
                value: self.precision,
                exact: false,
            },
        }
    }

    /// Zero to full precision.
    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        !(&self.residue % self.p).is_zero()
    }

    /// Reduction to a lower precision.
    pub fn reduce(&self, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(Error::PrecisionExhausted);
        }
        if precision > self.precision {
            return Err(Error::PrecisionTooLow {
                requested: precision,
                available: self.precision,
            });
        }
        Ok(Self {
            p: self.p,
            precision,
            residue: &self.residue % modulus(self.p, precision),
        })
    }

    fn check_prime(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::MismatchedPrime {
                left: self.p,
                right: other.p,
            });
        }
        Ok(())
    }

    fn with_residue(&self, precision: u32, value: BigUint) -> Self {
        Self {
            p: self.p,
            precision,
            residue: value % modulus(self.p, precision),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let a = self.precision.min(other.precision);
        Ok(self.with_residue(a, &self.residue + &other.residue))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let a = self.precision.min(other.precision);
        let m = modulus(self.p, a);
        let x = &self.residue % &m;
        let y = &other.residue % &m;
        Ok(Self {
            p: self.p,
            precision: a,
            residue: (x + &m - y) % m,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let a = self.precision.min(other.precision);
        Ok(self.with_residue(a, &self.residue * &other.residue))
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NonUnitDivisor);
        }
        let m = BigInt::from(self.modulus());
        let x = BigInt::from(self.residue.clone());
        let egcd = x.extended_gcd(&m);
        debug_assert!(egcd.gcd.is_one());
        Ok(Self {
            p: self.p,
            precision: self.precision,
            residue: reduce_signed(&egcd.x, &self.modulus()),
        })
    }

    pub fn div_unit(&self, divisor: &Self) -> Result<Self> {
        self.check_prime(divisor)?;
        self.checked_mul(&divisor.inverse()?)
    }

    /// Exact division by `p`, dropping one digit of precision.
    pub fn div_by_p(&self) -> Result<Self> {
        if self.precision <= 1 {
            return Err(Error::PrecisionExhausted);
        }
        let (q, r) = self.residue.div_rem(&BigUint::from(self.p));
        if !r.is_zero() {
            return Err(Error::NotDivisibleByP);
        }
        Ok(self.with_residue(self.precision - 1, q))
    }

    pub fn pow(&self, exp: u64) -> Self {
        Self {
            p: self.p,
            precision: self.precision,
            residue: self.residue.modpow(&BigUint::from(exp), &self.modulus()),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = reduce_signed(&BigInt::from(k), &self.modulus());
        self.with_residue(self.precision, &self.residue * k)
    }
}

impl fmt::Display for PadicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.residue, self.p, self.precision)
    }
}

/// Applies a ring or division operation to two p-adic numbers.
pub fn padic_arith(x: &PadicNum, y: &PadicNum, op: PadicOp) -> Result<PadicNum> {
    match op {
        PadicOp::Add => x.checked_add(y),
        PadicOp::Sub => x.checked_sub(y),
        PadicOp::Mul => x.checked_mul(y),
        PadicOp::DivUnit => x.div_unit(y),
        PadicOp::DivByP => x.div_by_p(),
    }
}

/// Embeds a p-integral rational into `Z_p / p^A`.
pub fn embed_rational(q: &BigRational, p: u64, precision: u32) -> Result<PadicNum> {
    if precision == 0 {
        return Err(Error::PrecisionExhausted);
    }
    if (q.denom() % BigInt::from(p)).is_zero() {
        return Err(Error::DenominatorDivisibleByP { p });
    }
    let num = PadicNum::new(p, precision, q.numer().clone())?;
    let den = PadicNum::new(p, precision, q.denom().abs())?;
    num.div_unit(&den)
}

/// The Teichmüller representative of `n`: the unique `(p-1)`-th root of unity
/// congruent to `n` mod `p`, computed as `n^(p^(A-1)) mod p^A`.
pub fn teichmuller(n: i64, p: u64, precision: u32) -> Result<PadicNum> {
    if n.rem_euclid(p as i64) == 0 {
        return Err(Error::NotCoprime { n, p });
    }
    let base = PadicNum::new(p, precision, n)?;
    let m = modulus(p, precision - 1);
    Ok(PadicNum {
        p,
        precision,
        residue: base.residue.modpow(&m, &base.modulus()),
    })
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&PadicNum> for &PadicNum {
            type Output = PadicNum;

            /// Panics when the operands live over different primes.
            fn $method(self, rhs: &PadicNum) -> PadicNum {
                self.$checked(rhs)
                    .expect("p-adic operands over the same prime")
            }
        }

        impl $trait<PadicNum> for PadicNum {
            type Output = PadicNum;

            fn $method(self, rhs: PadicNum) -> PadicNum {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &PadicNum {
    type Output = PadicNum;

    fn neg(self) -> PadicNum {
        PadicNum::zero(self.p, self.precision) - self.clone()
    }
}

impl Neg for PadicNum {
    type Output = PadicNum;

    fn neg(self) -> PadicNum {
        -&self
    }
}
