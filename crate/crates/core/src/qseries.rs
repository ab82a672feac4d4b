//! Truncated q-expansions with p-adic coefficients.
//!
//! A [`QExpansion`] stores `a_0, ..., a_M` together with the level `p`, the
//! weight and the exponent `i` of its type `ω^i`. Binary operations truncate
//! to the shorter input; nothing is ever padded with assumed zeros.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{embed_rational, BigRational, PadicNum};
use crate::error::{Error, Result};

/// Default number of q-expansion coefficients past the constant term.
pub const DEFAULT_TRUNCATION: usize = 200;
/// Largest supported truncation.
pub const MAX_TRUNCATION: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    p: u64,
    weight: u32,
    char_exponent: u64,
    precision: u32,
    coeffs: Vec<PadicNum>,
    label: String,
}

/// Outcome of a coefficient-wise comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceCheck {
    pub holds: bool,
    /// Smallest index `n` with `v(a_n - b_n) < m`.
    pub first_failure: Option<usize>,
    /// Largest index compared.
    pub checked_up_to: usize,
}

/// Wire format used for golden files: residues as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QExpansionJson {
    pub p: u64,
    pub k: u32,
    pub eps_exponent: u64,
    pub precision: u32,
    pub truncation: usize,
    pub coeffs: Vec<String>,
}

impl QExpansion {
    /// Builds a series from coefficients; they are reduced to the smallest
    /// precision present.
    pub fn new(
        p: u64,
        weight: u32,
        char_exponent: u64,
        coeffs: Vec<PadicNum>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::InvalidParameter("a q-expansion needs a constant term".into()))?;
        if first.p() != p {
            return Err(Error::MismatchedPrime {
                left: p,
                right: first.p(),
            });
        }
        let mut precision = first.precision();
        for c in &coeffs {
            if c.p() != p {
                return Err(Error::MismatchedPrime {
                    left: p,
                    right: c.p(),
                });
            }
            precision = precision.min(c.precision());
        }
        let coeffs = coeffs
            .into_iter()
            .map(|c| {
                if c.precision() == precision {
                    Ok(c)
                } else {
                    c.reduce(precision)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            p,
            weight,
            char_exponent: char_exponent % (p - 1),
            precision,
            coeffs,
            label: label.into(),
        })
    }

    pub fn from_integers(
        p: u64,
        weight: u32,
        char_exponent: u64,
        precision: u32,
        values: &[BigInt],
        label: impl Into<String>,
    ) -> Result<Self> {
        let coeffs = values
            .iter()
            .map(|v| PadicNum::new(p, precision, v.clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, weight, char_exponent, coeffs, label)
    }

    /// Embeds p-integral rational coefficients.
    pub fn from_rationals(
        p: u64,
        weight: u32,
        char_exponent: u64,
        precision: u32,
        values: &[BigRational],
        label: impl Into<String>,
    ) -> Result<Self> {
        let coeffs = values
            .iter()
            .map(|v| embed_rational(v, p, precision))
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, weight, char_exponent, coeffs, label)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn char_exponent(&self) -> u64 {
        self.char_exponent
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Index `M` of the last known coefficient.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[PadicNum] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&PadicNum> {
        self.coeffs.get(n)
    }

    pub fn constant_term(&self) -> &PadicNum {
        &self.coeffs[0]
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Constant term zero to full precision.
    pub fn is_semicusp(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    pub fn truncate(&self, m: usize) -> Self {
        let mut out = self.clone();
        out.coeffs.truncate(m.min(self.truncation()) + 1);
        out
    }

    pub fn reduce_precision(&self, precision: u32) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.reduce(precision))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            coeffs,
            precision,
            ..self.clone()
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

    fn check_grading(&self, other: &Self) -> Result<()> {
        self.check_prime(other)?;
        if self.weight != other.weight || self.char_exponent != other.char_exponent {
            return Err(Error::GradingMismatch {
                left_weight: self.weight,
                left_eps: self.char_exponent,
                right_weight: other.weight,
                right_eps: other.char_exponent,
            });
        }
        Ok(())
    }

    pub fn scale(&self, alpha: &PadicNum) -> Result<Self> {
        if alpha.p() != self.p {
            return Err(Error::MismatchedPrime {
                left: self.p,
                right: alpha.p(),
            });
        }
        let coeffs = self.coeffs.iter().map(|c| c * alpha).collect();
        Self::new(
            self.p,
            self.weight,
            self.char_exponent,
            coeffs,
            self.label.clone(),
        )
    }

    /// `α·f + β·g`, truncated to the shorter input.
    pub fn linear(&self, other: &Self, alpha: &PadicNum, beta: &PadicNum) -> Result<Self> {
        self.check_grading(other)?;
        for s in [alpha, beta] {
            if s.p() != self.p {
                return Err(Error::MismatchedPrime {
                    left: self.p,
                    right: s.p(),
                });
            }
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| &(alpha * a) + &(beta * b))
            .collect();
        Self::new(
            self.p,
            self.weight,
            self.char_exponent,
            coeffs,
            self.label.clone(),
        )
    }

    /// `f - g`.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        let one = PadicNum::one(self.p, self.precision);
        self.linear(other, &one, &-&one)
    }

    /// Cauchy product; weights add and character exponents add mod `p-1`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let precision = self.precision.min(other.precision);
        let modulus = crate::arith::padic::modulus(self.p, precision);
        let m = self.truncation().min(other.truncation());
        let a: Vec<&BigUint> = self.coeffs[..=m].iter().map(PadicNum::residue).collect();
        let b: Vec<&BigUint> = other.coeffs[..=m].iter().map(PadicNum::residue).collect();
        let coeffs = (0..=m)
            .map(|n| {
                let mut s = BigUint::zero();
                for i in 0..=n {
                    if !a[i].is_zero() && !b[n - i].is_zero() {
                        s += a[i] * b[n - i];
                    }
                }
                PadicNum::new(self.p, precision, BigInt::from(s % &modulus))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            self.p,
            self.weight + other.weight,
            (self.char_exponent + other.char_exponent) % (self.p - 1),
            coeffs,
            format!("({})·({})", self.label, other.label),
        )
    }

    /// Whether `v(a_n - b_n) >= m` for every common index `n`.
    pub fn congruent_mod(&self, other: &Self, m: u32) -> Result<CongruenceCheck> {
        self.check_prime(other)?;
        let available = self.precision.min(other.precision);
        if m == 0 || m > available {
            return Err(Error::PrecisionTooLow {
                requested: m,
                available,
            });
        }
        let upto = self.truncation().min(other.truncation());
        let first_failure = (0..=upto).find(|&n| {
            let a = self.coeffs[n].reduce(m).expect("m <= precision");
            let b = other.coeffs[n].reduce(m).expect("m <= precision");
            a != b
        });
        Ok(CongruenceCheck {
            holds: first_failure.is_none(),
            first_failure,
            checked_up_to: upto,
        })
    }

    pub fn to_json(&self) -> QExpansionJson {
        QExpansionJson {
            p: self.p,
            k: self.weight,
            eps_exponent: self.char_exponent,
            precision: self.precision,
            truncation: self.truncation(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.residue().to_string())
                .collect(),
        }
    }

    pub fn from_json(json: &QExpansionJson) -> Result<Self> {
        if json.coeffs.len() != json.truncation + 1 {
            return Err(Error::InvalidParameter(format!(
                "truncation {} does not match {} coefficients",
                json.truncation,
                json.coeffs.len()
            )));
        }
        let values = json
            .coeffs
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|e| Error::InvalidParameter(format!("bad residue {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_integers(
            json.p,
            json.k,
            json.eps_exponent,
            json.precision,
            &values,
            "",
        )
    }
}

/// `α·f + β·g`.
pub fn qexp_linear(
    f: &QExpansion,
    g: &QExpansion,
    alpha: &PadicNum,
    beta: &PadicNum,
) -> Result<QExpansion> {
    f.linear(g, alpha, beta)
}

pub fn qexp_mul(f: &QExpansion, g: &QExpansion) -> Result<QExpansion> {
    f.mul(g)
}

pub fn qexp_congruent_mod(f: &QExpansion, g: &QExpansion, m: u32) -> Result<CongruenceCheck> {
    f.congruent_mod(g, m)
}
