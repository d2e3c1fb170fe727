//! Rosette braids `(σ_1^{ε_1} σ_2^{ε_2} … σ_{s−1}^{ε_{s−1}})^k` and their
//! realization as cylinder knots `Z(s, k(s+1), k)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{self, BraidError, BraidWord, Letter};
use crate::exact;
use crate::geometry::{CurveParams, GeometryError};
use crate::invariants::{self, InvariantError, InvariantSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RosetteError {
    #[error("invalid rosette parameters: {0}")]
    InvalidParams(String),
    #[error("gcd(s, k) = {0} > 1: the rosette is a link")]
    Link(i64),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

impl From<GeometryError> for RosetteError {
    fn from(e: GeometryError) -> Self {
        RosetteError::Braid(e.into())
    }
}

pub type Result<T> = std::result::Result<T, RosetteError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RosetteParams {
    pub s: usize,
    pub k: usize,
    /// Exponents of `σ_1 … σ_{s−1}`; alternating `+ − + …` when absent.
    pub eps: Option<Vec<i8>>,
}

impl RosetteParams {
    pub fn classical(s: usize, k: usize) -> Self {
        RosetteParams { s, k, eps: None }
    }

    pub fn signs(&self) -> Vec<i8> {
        match &self.eps {
            Some(e) => e.clone(),
            None => (1..self.s).map(|j| if j % 2 == 1 { 1 } else { -1 }).collect(),
        }
    }

    pub fn is_knot(&self) -> bool {
        exact::gcd(self.s as i64, self.k as i64) == 1
    }
}

pub fn rosette_braid(p: &RosetteParams) -> Result<BraidWord> {
    if p.s < 2 || p.k < 1 {
        return Err(RosetteError::InvalidParams(format!("s = {}, k = {}", p.s, p.k)));
    }
    let signs = p.signs();
    if signs.len() != p.s - 1 || signs.iter().any(|&e| e != 1 && e != -1) {
        return Err(RosetteError::InvalidParams(format!(
            "need {} signs of ±1, got {:?}",
            p.s - 1,
            signs
        )));
    }
    let block: Vec<Letter> = signs
        .iter()
        .enumerate()
        .map(|(i, &e)| Letter::new(i + 1, e))
        .collect();
    Ok(BraidWord::new(p.s, block)?.pow(p.k))
}

/// `Z(s, k(s+1), k)` at its generic phase.
pub fn rosette_as_cylinder(s: i64, k: i64) -> Result<CurveParams> {
    if s < 2 || k < 2 {
        return Err(RosetteError::InvalidParams(format!("s = {s}, k = {k}; need s ≥ 2, k ≥ 2")));
    }
    let g = exact::gcd(s, k);
    if g > 1 {
        return Err(RosetteError::Link(g));
    }
    Ok(CurveParams::generic(s, k * (s + 1), k)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RosetteReport {
    pub s: i64,
    pub k: i64,
    pub cylinder_params: CurveParams,
    pub invariants_lhs: InvariantSet,
    pub invariants_rhs: InvariantSet,
    pub pass: bool,
}

/// Compares the rosette closure with the closure read off `Z(s, k(s+1), k)`.
pub fn verify_rosette(s: i64, k: i64) -> Result<RosetteReport> {
    verify_rosette_with(s, k, invariants::DEFAULT_JONES_CAP)
}

pub fn verify_rosette_with(s: i64, k: i64, jones_cap: usize) -> Result<RosetteReport> {
    let params = rosette_as_cylinder(s, k)?;
    let lhs_word = rosette_braid(&RosetteParams::classical(s as usize, k as usize))?;
    let rhs_word = braid::extract_braid(&params)?;
    let (lhs, rhs) = rayon::join(
        || InvariantSet::compute(&lhs_word, jones_cap),
        || InvariantSet::compute(&rhs_word, jones_cap),
    );
    let (lhs, rhs) = (lhs?, rhs?);
    let pass = lhs.agrees_up_to_mirror(&rhs);
    Ok(RosetteReport {
        s,
        k,
        cylinder_params: params,
        invariants_lhs: lhs,
        invariants_rhs: rhs,
        pass,
    })
}

/// Every `(s, k)` in `list`, in parallel.
pub fn verify_rosettes(list: &[(i64, i64)]) -> Vec<Result<RosetteReport>> {
    list.par_iter().map(|&(s, k)| verify_rosette(s, k)).collect()
}

/// The braid the rosette proof reads off one period of `Z(s, k(s+1), k)`,
/// and the single block it should reduce to.
pub fn factor_block_braids(s: usize) -> Result<(BraidWord, BraidWord)> {
    if !(2..=9).contains(&s) {
        return Err(RosetteError::InvalidParams(format!("s = {s} outside 2..=9")));
    }
    let odd: Vec<usize> = (1..s).step_by(2).collect();
    let even: Vec<usize> = (2..s).step_by(2).collect();
    let letters = |gens: &[usize], sign: i8| gens.iter().map(|&j| Letter::new(j, sign)).collect::<Vec<_>>();
    let block = |so: i8, se: i8| {
        let mut v = letters(&odd, so);
        v.extend(letters(&even, se));
        BraidWord::new(s, v)
    };
    let full = if s % 2 == 1 {
        let h = s.div_ceil(2);
        block(1, 1)?.pow(h).concat(&block(-1, -1)?.pow(h))
    } else {
        let h = s / 2;
        block(1, 1)?
            .pow(h)
            .concat(&block(1, -1)?)
            .concat(&block(-1, -1)?.pow(h))
    };
    Ok((full, block(1, -1)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorBlockReport {
    pub s: usize,
    pub full: String,
    pub reduced: String,
    pub invariants_full: InvariantSet,
    pub invariants_reduced: InvariantSet,
    pub invariants_agree: bool,
    /// Reduced Burau characteristic polynomials agree (conjugation
    /// invariant, stronger than agreement of the closures).
    pub charpoly_agree: bool,
    /// Same comparison against the alternating block `σ_1 σ_2⁻¹ σ_3 …`.
    pub charpoly_agree_alternating: bool,
}

pub fn factor_block_identity_check(s: usize) -> Result<FactorBlockReport> {
    let (full, reduced) = factor_block_braids(s)?;
    let alternating = rosette_braid(&RosetteParams::classical(s, 1))?;
    let cap = invariants::DEFAULT_JONES_CAP.max(full.len());
    let invariants_full = InvariantSet::compute(&full, cap)?;
    let invariants_reduced = InvariantSet::compute(&reduced, cap)?;
    // the characteristic polynomial has degree s − 1 in x, so s points fix it
    let same = |a: &BraidWord, b: &BraidWord| {
        (0..s as i64).all(|x| invariants::burau_charpoly_at(a, x) == invariants::burau_charpoly_at(b, x))
    };
    Ok(FactorBlockReport {
        s,
        full: full.to_string(),
        reduced: reduced.to_string(),
        invariants_agree: invariants_full == invariants_reduced,
        invariants_full,
        invariants_reduced,
        charpoly_agree: same(&full, &reduced),
        charpoly_agree_alternating: same(&full, &alternating),
    })
}
