//! Symmetry and necessary conditions for cylinder knots.
//!
//! A cylinder knot with `d = gcd(n, m) > 1` has cyclic period `d` and its
//! factor knot is ribbon; with `d = 1` the knot itself is ribbon. Ribbon
//! knots have square determinant, vanishing signature and vanishing Arf
//! invariant, and their Alexander polynomial factors as `F(t)F(t⁻¹)`. The
//! checks here are necessary conditions only: a pass is consistency, never
//! a proof of ribbonness.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::braid::{self, BraidError, BraidWord};
use crate::exact;
use crate::geometry::{self, CurveParams};
use crate::invariants::{self, InvariantError, InvariantSet};
use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConditionError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("blocks do not repeat with period {period} (d = {d})")]
    NotPeriodic { d: usize, period: usize },
}

impl From<geometry::GeometryError> for ConditionError {
    fn from(e: geometry::GeometryError) -> Self {
        ConditionError::Braid(e.into())
    }
}

pub type Result<T> = std::result::Result<T, ConditionError>;

pub fn max_billiard_period(n: i64, m: i64) -> i64 {
    exact::gcd(n, m)
}

/// The first `n/d` blocks of a `d`-periodic cylinder braid; its closure is
/// the factor knot.
pub fn factor_braid(word: &BraidWord, d: usize) -> Result<BraidWord> {
    let v = braid::sign_vectors(word)?;
    if d == 1 {
        return Ok(word.clone());
    }
    if d == 0 || v.n % d != 0 {
        return Err(ConditionError::NotPeriodic { d, period: v.n });
    }
    let c = v.n / d;
    if v.n % v.block_period() != 0 || !c.is_multiple_of(v.block_period()) {
        return Err(ConditionError::NotPeriodic { d, period: c });
    }
    let len = c * (word.strands() - 1);
    Ok(BraidWord::new(word.strands(), word.letters()[..len].to_vec())?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub pass: bool,
    pub reasons: Vec<String>,
}

/// Outcome of the necessary-condition screen for one curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub params: CurveParams,
    pub braid: String,
    pub d: i64,
    /// Linking number of the knot with the cylinder axis.
    pub linking: i64,
    pub factor_braid: String,
    pub factor_invariants: InvariantSet,
    pub det_square: bool,
    pub signature_zero: bool,
    pub arf_zero: bool,
    /// `n/d` even: the factor knot should also be strongly positive
    /// amphicheiral.
    pub spa_expected: bool,
    /// Signature zero and symmetric Alexander polynomial, when expected.
    pub spa_consistent: Option<bool>,
    pub fox_milnor_witness: Option<LaurentPoly>,
    pub verdict: Verdict,
}

pub fn check_necessary(params: &CurveParams) -> Result<ConditionReport> {
    check_necessary_with(params, invariants::DEFAULT_JONES_CAP, invariants::DEFAULT_COEFF_BOUND)
}

pub fn check_necessary_with(
    params: &CurveParams,
    jones_cap: usize,
    coeff_bound: i64,
) -> Result<ConditionReport> {
    let word = braid::extract_braid(params)?;
    let d = max_billiard_period(params.n, params.m);
    let factor = factor_braid(&word, d as usize)?;
    let inv = InvariantSet::compute(&factor, jones_cap)?;
    let linking = geometry::winding_number(params.s, params.n)?;
    let det_square = invariants::is_square(&inv.det);
    let signature_zero = inv.signature == 0;
    let arf_zero = inv.arf == 0;
    let spa_expected = (params.n / d) % 2 == 0;
    let spa_consistent = spa_expected.then(|| signature_zero && inv.alexander.is_symmetric());
    let fox_milnor_witness = invariants::fox_milnor_search(&inv.alexander, coeff_bound);

    let mut reasons = Vec::new();
    if !det_square {
        reasons.push(format!("factor determinant {} is not a square", inv.det));
    }
    if !signature_zero {
        reasons.push(format!("factor signature is {}", inv.signature));
    }
    if !arf_zero {
        reasons.push("factor Arf invariant is 1".to_string());
    }
    let pass = reasons.is_empty();
    if pass {
        reasons.push("necessary ribbon conditions hold for the factor knot (consistency only)".into());
    }
    if fox_milnor_witness.is_none() {
        reasons.push(format!(
            "no factorization F(t)F(1/t) found with coefficients up to {coeff_bound} (inconclusive)"
        ));
    }
    Ok(ConditionReport {
        params: params.clone(),
        braid: word.to_string(),
        d,
        linking,
        factor_braid: factor.to_string(),
        factor_invariants: inv,
        det_square,
        signature_zero,
        arf_zero,
        spa_expected,
        spa_consistent,
        fox_milnor_witness,
        verdict: Verdict { pass, reasons },
    })
}

/// What is known about an abstract knot, as asserted by the caller.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotDossier {
    pub name: String,
    #[serde(with = "crate::exact::serde_bigint")]
    pub det: BigInt,
    pub ribbon: bool,
    /// Complete list of cyclic periods `(q, λ)` with linking number `λ`.
    pub periods: Vec<(i64, i64)>,
    pub bridge: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub name: String,
    pub cylinder_possible: bool,
    pub reasons: Vec<String>,
}

/// A cylinder knot is periodic (with `|λ| = s ≥ br`) or ribbon.
pub fn exclusion_check(k: &KnotDossier) -> Exclusion {
    let mut reasons = Vec::new();
    let excluded = if k.ribbon {
        reasons.push("knot is ribbon; the criterion does not apply".into());
        false
    } else if k.periods.is_empty() {
        reasons.push("not ribbon and has no cyclic period".into());
        if invariants::is_square(&k.det) {
            reasons.push(format!("determinant {} is a square", k.det));
        } else {
            reasons.push(format!(
                "determinant {} is not a square, consistent with not ribbon",
                k.det
            ));
        }
        true
    } else if k.periods.iter().all(|&(_, l)| l.abs() < k.bridge) {
        reasons.push("not ribbon".into());
        for &(q, l) in &k.periods {
            reasons.push(format!(
                "period {q} has linking number {l} with |{l}| < bridge number {}",
                k.bridge
            ));
        }
        true
    } else {
        reasons.push("a period has linking number at least the bridge number".into());
        false
    };
    Exclusion {
        name: k.name.clone(),
        cylinder_possible: !excluded,
        reasons,
    }
}
