//! The full construction for an irregular pair `(p, k)`: remove the constant
//! term of `G_{2,ω^{k-2}}`, check the result against `G_k` modulo `p`, and
//! check it is a Hecke eigenvector modulo `p` that `s_{2,ε}` cannot explain.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arith::primes::{is_prime, primes_below};
use crate::arith::{teichmuller, PadicNum};
use crate::bernoulli::{irregular_indices, IrregularPair};
use crate::eisenstein::{
    build_unit_constant_form, eis_g2_char, eis_gk_level1, verify_eisenstein_congruence,
    EisensteinCongruence, UnitFormCase,
};
use crate::error::{Error, Result};
use crate::hecke::{character_at, is_eigen_mod};
use crate::qseries::CongruenceCheck;

pub const DEFAULT_EIGEN_BOUND: u64 = 13;
pub const DEFAULT_WITNESS_BOUND: u64 = 1000;
pub const MAX_SCAN_BOUND: u64 = 1000;

pub const PROVENANCE: &str = "asserted by citation, not computed";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(rename = "M")]
    pub truncation: usize,
    #[serde(rename = "A")]
    pub precision: u32,
    pub eigen_bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantTerm {
    pub residue: String,
    pub valuation: u32,
    /// `false` when `c` vanishes to the working precision.
    pub valuation_exact: bool,
    /// `v(c) >= 1`.
    pub in_prime: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitFormSummary {
    #[serde(flatten)]
    pub case: UnitFormCase,
    pub raw_constant: String,
    pub raw_constant_is_unit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenVerdict {
    pub l: u64,
    pub lambda: String,
    pub ok: bool,
    pub first_failure: Option<usize>,
    pub checked_up_to: usize,
}

/// A prime `l` with `1 + ε(l) l ≢ l + ε(l) (mod p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub l: u64,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub deligne_serre_lift: String,
    pub newform_promotion: String,
}

impl Default for Provenance {
    fn default() -> Self {
        Self {
            deligne_serre_lift: PROVENANCE.into(),
            newform_promotion: PROVENANCE.into(),
        }
    }
}

/// Outcome of [`ribet_construct`]. Steps that did not run are `None`, and
/// `error` says why.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub pair: IrregularPair,
    pub epsilon_exponent: u64,
    pub parameters: Parameters,
    pub constant_c: Option<ConstantTerm>,
    pub unit_form_case: Option<UnitFormSummary>,
    #[serde(rename = "lemma31_verdicts")]
    pub eisenstein_congruence: Option<EisensteinCongruence>,
    pub semicusp_verdict: Option<bool>,
    #[serde(rename = "congruence_to_Gk")]
    pub congruence_to_gk: Option<CongruenceCheck>,
    pub eigen_verdicts: Vec<EigenVerdict>,
    pub distinguishing_prime: Option<Witness>,
    pub provenance: Provenance,
    pub overall_pass: bool,
    pub error: Option<String>,
}

impl PipelineReport {
    fn new(pair: IrregularPair, parameters: Parameters) -> Self {
        Self {
            epsilon_exponent: (pair.k - 2) % (pair.p - 1),
            pair,
            parameters,
            constant_c: None,
            unit_form_case: None,
            eisenstein_congruence: None,
            semicusp_verdict: None,
            congruence_to_gk: None,
            eigen_verdicts: Vec::new(),
            distinguishing_prime: None,
            provenance: Provenance::default(),
            overall_pass: false,
            error: None,
        }
    }

    /// Conjunction of every verdict; `false` for partial reports.
    pub fn all_verdicts_hold(&self) -> bool {
        self.error.is_none()
            && self.constant_c.as_ref().is_some_and(|c| c.in_prime)
            && self
                .unit_form_case
                .as_ref()
                .is_some_and(|u| u.raw_constant_is_unit)
            && self
                .eisenstein_congruence
                .as_ref()
                .is_some_and(EisensteinCongruence::holds)
            && self.semicusp_verdict == Some(true)
            && self.congruence_to_gk.as_ref().is_some_and(|c| c.holds)
            && !self.eigen_verdicts.is_empty()
            && self.eigen_verdicts.iter().all(|e| e.ok)
            && self.distinguishing_prime.is_some()
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable summary, one verdict per line.
    pub fn to_text(&self) -> String {
        fn mark(ok: bool) -> &'static str {
            if ok {
                "ok"
            } else {
                "FAIL"
            }
        }
        let mut s = String::new();
        let (p, k) = (self.pair.p, self.pair.k);
        let prm = &self.parameters;
        let _ = writeln!(
            s,
            "pair (p, k) = ({p}, {k}), epsilon = w^{}",
            self.epsilon_exponent
        );
        let _ = writeln!(
            s,
            "truncation {} precision {} eigen bound {}",
            prm.truncation, prm.precision, prm.eigen_bound
        );
        if let Some(c) = &self.constant_c {
            let _ = writeln!(
                s,
                "[{}] constant c = {} (v = {})",
                mark(c.in_prime),
                c.residue,
                c.valuation
            );
        }
        if let Some(u) = &self.unit_form_case {
            let case = match u.case {
                UnitFormCase::CaseI => "case i".to_string(),
                UnitFormCase::CaseIi { n, m } => format!("case ii ({n}, {m})"),
            };
            let _ = writeln!(
                s,
                "[{}] unit form {case}, raw constant {}",
                mark(u.raw_constant_is_unit),
                u.raw_constant
            );
        }
        if let Some(v) = &self.eisenstein_congruence {
            let _ = writeln!(s, "[{}] G_2,eps = G_k mod p", mark(v.g2_eps.holds));
            let _ = writeln!(s, "[{}] G_1,eps' = G_k mod p", mark(v.g1_eps.holds));
        }
        if let Some(b) = self.semicusp_verdict {
            let _ = writeln!(s, "[{}] f has constant term 0", mark(b));
        }
        if let Some(c) = &self.congruence_to_gk {
            let _ = writeln!(
                s,
                "[{}] f = G_k mod p through q^{}",
                mark(c.holds),
                c.checked_up_to
            );
        }
        for e in &self.eigen_verdicts {
            let _ = writeln!(
                s,
                "[{}] T_{} f = {} f mod p through q^{}",
                mark(e.ok),
                e.l,
                e.lambda,
                e.checked_up_to
            );
        }
        if let Some(w) = &self.distinguishing_prime {
            let _ = writeln!(
                s,
                "[ok] l = {}: 1+eps(l)l = {} vs l+eps(l) = {} mod p",
                w.l, w.lhs, w.rhs
            );
        }
        if let Some(e) = &self.error {
            let _ = writeln!(s, "[FAIL] aborted: {e}");
        }
        let _ = writeln!(s, "lift and newform: {PROVENANCE}");
        let _ = writeln!(
            s,
            "overall: {}",
            if self.overall_pass { "PASS" } else { "FAIL" }
        );
        s
    }
}

/// Runs the construction with the default eigen bound.
pub fn ribet_construct(p: u64, k: u64, m: usize, precision: u32) -> Result<PipelineReport> {
    ribet_construct_with(p, k, m, precision, DEFAULT_EIGEN_BOUND)
}

/// Input errors are returned as `Err`; failures after the input is accepted
/// produce a partial report with `error` set.
pub fn ribet_construct_with(
    p: u64,
    k: u64,
    m: usize,
    precision: u32,
    eigen_bound: u64,
) -> Result<PipelineReport> {
    if m < 50 {
        return Err(Error::InvalidParameter(format!(
            "truncation must be at least 50, got {m}"
        )));
    }
    if precision < 2 {
        return Err(Error::InvalidParameter(format!(
            "precision must be at least 2, got {precision}"
        )));
    }
    let pair = IrregularPair::new(p, k)?;
    let parameters = Parameters {
        truncation: m,
        precision,
        eigen_bound,
    };
    let mut report = PipelineReport::new(pair, parameters);
    if let Err(e) = run_steps(&mut report) {
        report.error = Some(e.to_string());
    }
    report.overall_pass = report.all_verdicts_hold();
    Ok(report)
}

fn run_steps(report: &mut PipelineReport) -> Result<()> {
    let IrregularPair { p, k } = report.pair;
    let Parameters {
        truncation: m,
        precision: a,
        eigen_bound,
    } = report.parameters;
    // B_2 = 1/6 is prime to p, so an irregular k is at least 4 and ε is nontrivial
    if k < 4 {
        return Err(Error::InternalInconsistency(format!(
            "irregular pair with k = {k}"
        )));
    }
    let g2 = eis_g2_char(p, k as i64 - 2, m, a)?;
    let c = g2.constant_term().clone();
    let v = c.valuation();
    report.constant_c = Some(ConstantTerm {
        residue: c.residue().to_string(),
        valuation: v.value,
        valuation_exact: v.exact,
        in_prime: v.value >= 1,
    });

    let unit = build_unit_constant_form(p, k, m, a)?;
    report.unit_form_case = Some(UnitFormSummary {
        case: unit.case,
        raw_constant: unit.raw_constant.residue().to_string(),
        raw_constant_is_unit: unit.raw_constant.is_unit(),
    });

    report.eisenstein_congruence = Some(verify_eisenstein_congruence(p, k, m, a)?);

    let one = PadicNum::one(p, a);
    let f = g2.linear(&unit.g, &one, &-&c)?.with_label("f");
    report.semicusp_verdict = Some(f.is_semicusp());

    let gk = eis_gk_level1(k as u32, m)?.embed(p, a)?;
    report.congruence_to_gk = Some(f.congruent_mod(&gk, 1)?);

    for l in primes_below(eigen_bound + 1)
        .into_iter()
        .filter(|&l| l != p)
    {
        let lambda = &one + &character_at(&f, l as i64)?.scale(l as i64);
        let check = is_eigen_mod(&f, l, &lambda, 1)?;
        report.eigen_verdicts.push(EigenVerdict {
            l,
            lambda: lambda.reduce(1)?.residue().to_string(),
            ok: check.holds,
            first_failure: check.first_failure,
            checked_up_to: check.checked_up_to,
        });
    }

    report.distinguishing_prime = Some(distinguish_from_s2(p, k, DEFAULT_WITNESS_BOUND)?);
    Ok(())
}

/// Smallest prime `l <= l_bound`, `l != p`, separating the eigenvalues
/// `1 + ε(l) l` of `G_{2,ε}` and `l + ε(l)` of `s_{2,ε}` modulo `p`, where
/// `ε = ω^{k-2}`.
pub fn distinguish_from_s2(p: u64, k: u64, l_bound: u64) -> Result<Witness> {
    if p < 5 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let exponent = (k as i64 - 2).rem_euclid(p as i64 - 1) as u64;
    if exponent == 0 {
        return Err(Error::TrivialCharacter);
    }
    for l in primes_below(l_bound.saturating_add(1))
        .into_iter()
        .filter(|&l| l != p)
    {
        let eps = teichmuller(l as i64, p, 1)?.pow(exponent);
        let ll = PadicNum::from_i64(p, 1, l as i64)?;
        let one = PadicNum::one(p, 1);
        let lhs = &one + &(&eps * &ll);
        let rhs = &ll + &eps;
        if lhs != rhs {
            return Ok(Witness {
                l,
                lhs: lhs.residue().to_string(),
                rhs: rhs.residue().to_string(),
            });
        }
    }
    Err(Error::NoWitnessFound { bound: l_bound })
}

/// All irregular pairs with `p < bound`, ordered by `(p, k)`.
pub fn scan_irregular(bound: u64) -> Result<Vec<IrregularPair>> {
    if bound > MAX_SCAN_BOUND {
        return Err(Error::InvalidParameter(format!(
            "scan bound must be at most {MAX_SCAN_BOUND}, got {bound}"
        )));
    }
    let mut out = Vec::new();
    for p in primes_below(bound).into_iter().filter(|&p| p >= 5) {
        for k in irregular_indices(p)? {
            out.push(IrregularPair { p, k });
        }
    }
    Ok(out)
}
