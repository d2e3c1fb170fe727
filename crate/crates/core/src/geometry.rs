//! The projected billiard curve: a `{n/s}` star polygon in the unit disk,
//! traversed proportionally to arclength, with the sawtooth height
//! `g(m t + φ)` on top.
//!
//! Crossing parameters are kept symbolic as `(k + ε·r_b) / 2n` where
//! `r_b = tan(πb/n) / tan(πs/n)` is irrational for every admissible `(s, n)`.
//! All singularity and over/under predicates reduce to signs of expressions
//! `a + c·r_b` with rational `a`, `c`, which are decided exactly when `c = 0`
//! and by refining an enclosure of `r_b` otherwise.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{self, best_rational, sign_of_linear, Interval, PrecisionExhausted};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("invalid curve parameters: {0}")]
    InvalidParams(String),
    #[error("phase {phi} is singular for Z({s},{n},{m})")]
    SingularPhase { s: i64, n: i64, m: i64, phi: String },
    #[error("certified comparison failed: {0}")]
    Precision(#[from] PrecisionExhausted),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}

pub type Result<T> = std::result::Result<T, GeometryError>;

fn q(n: i64, d: i64) -> BigRational {
    exact::ratio(n, d)
}

/// Checks `gcd(s, n) = 1` and `n >= 2s + 1`.
pub fn check_star(s: i64, n: i64) -> Result<()> {
    if s < 1 || n < 1 {
        return Err(GeometryError::InvalidParams(format!(
            "s = {s} and n = {n} must be positive"
        )));
    }
    if exact::gcd(s, n) != 1 {
        return Err(GeometryError::InvalidParams(format!(
            "gcd(s, n) = gcd({s}, {n}) must be 1"
        )));
    }
    if n < 2 * s + 1 {
        return Err(GeometryError::InvalidParams(format!(
            "n = {n} must be at least 2s + 1 = {}",
            2 * s + 1
        )));
    }
    Ok(())
}

/// A billiard curve `Z(s, n, m, φ)` with a phase that avoids every singular
/// configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct CurveParams {
    pub s: i64,
    pub n: i64,
    pub m: i64,
    #[serde(with = "crate::exact::serde_rational")]
    pub phi: BigRational,
}

#[derive(Deserialize)]
struct RawParams {
    s: i64,
    n: i64,
    m: i64,
    #[serde(with = "crate::exact::serde_rational")]
    phi: BigRational,
}

impl TryFrom<RawParams> for CurveParams {
    type Error = GeometryError;

    fn try_from(r: RawParams) -> Result<Self> {
        CurveParams::new(r.s, r.n, r.m, r.phi)
    }
}

impl CurveParams {
    /// Validates the standing assumptions and rejects singular phases.
    pub fn new(s: i64, n: i64, m: i64, phi: BigRational) -> Result<Self> {
        check_star(s, n)?;
        if m < 1 {
            return Err(GeometryError::InvalidParams(format!("m = {m} must be positive")));
        }
        if phi.is_negative() || phi >= BigRational::one() {
            return Err(GeometryError::InvalidParams(format!("phase {phi} outside [0, 1)")));
        }
        if bad_phases(s, n, m)?.contains(&phi) {
            return Err(GeometryError::SingularPhase {
                s,
                n,
                m,
                phi: phi.to_string(),
            });
        }
        Ok(CurveParams { s, n, m, phi })
    }

    /// `Z(s, n, m)` at the phase chosen by [`generic_phase`].
    pub fn generic(s: i64, n: i64, m: i64) -> Result<Self> {
        check_star(s, n)?;
        if m < 1 {
            return Err(GeometryError::InvalidParams(format!("m = {m} must be positive")));
        }
        let phi = generic_phase(s, n, m)?;
        Ok(CurveParams { s, n, m, phi })
    }
}

/// Enclosure of `r_b = tan(πb/n) / tan(πs/n)` that can be refined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelRatio {
    pub b: i64,
    pub s: i64,
    pub n: i64,
    coarse: Interval,
}

impl LevelRatio {
    pub fn new(b: i64, s: i64, n: i64) -> Self {
        let coarse = exact::tan_ratio(b, s, n, exact::PRECISION_TIERS[0]);
        LevelRatio { b, s, n, coarse }
    }

    pub fn enclosure(&self) -> &Interval {
        &self.coarse
    }

    pub fn refine(&self, bits: u32) -> Interval {
        if bits <= exact::PRECISION_TIERS[0] {
            self.coarse.clone()
        } else {
            exact::tan_ratio(self.b, self.s, self.n, bits)
        }
    }

    /// Exact sign of `a + c·r_b`.
    pub fn sign(&self, form: &LinearForm) -> Result<Ordering> {
        Ok(sign_of_linear(&form.a, &form.c, Some(&self.coarse), |bits| {
            self.refine(bits)
        })?)
    }
}

/// `a + c·r` for a fixed (implicit) level ratio `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub a: BigRational,
    pub c: BigRational,
}

impl LinearForm {
    pub fn rational(a: BigRational) -> Self {
        LinearForm {
            a,
            c: BigRational::zero(),
        }
    }

    fn add_rational(&self, x: &BigRational) -> Self {
        LinearForm {
            a: &self.a + x,
            c: self.c.clone(),
        }
    }

    fn scale(&self, k: &BigRational) -> Self {
        LinearForm {
            a: &self.a * k,
            c: &self.c * k,
        }
    }

    fn sub(&self, other: &Self) -> Self {
        LinearForm {
            a: &self.a - &other.a,
            c: &self.c - &other.c,
        }
    }

    pub fn enclose(&self, r: &Interval) -> Interval {
        r.scale(&self.c).add(&Interval::point(self.a.clone()))
    }
}

/// A curve parameter `t = (k + ε·r_b) / 2n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactParam {
    pub k: i64,
    pub eps: i8,
    pub b: i64,
    pub numeric: Interval,
    n: i64,
    ratio: Option<Arc<LevelRatio>>,
}

/// The symbolic part of an [`ExactParam`], as serialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymbolicParam {
    pub k: i64,
    pub eps: i8,
    pub b: i64,
}

impl ExactParam {
    /// Parameter `t = k / 2n` (vertex for even `k`, chord midpoint for odd `k`).
    pub fn rational(k: i64, n: i64) -> Self {
        let k = k.rem_euclid(2 * n);
        ExactParam {
            k,
            eps: 0,
            b: 0,
            numeric: Interval::point(q(k, 2 * n)),
            n,
            ratio: None,
        }
    }

    pub fn on_level(k: i64, eps: i8, ratio: &Arc<LevelRatio>) -> Self {
        assert!(eps == 1 || eps == -1);
        let n = ratio.n;
        let k = k.rem_euclid(2 * n);
        let mut p = ExactParam {
            k,
            eps,
            b: ratio.b,
            numeric: Interval::from_int(0),
            n,
            ratio: Some(Arc::clone(ratio)),
        };
        p.numeric = p.form().enclose(ratio.enclosure());
        p
    }

    pub fn symbolic(&self) -> SymbolicParam {
        SymbolicParam {
            k: self.k,
            eps: self.eps,
            b: self.b,
        }
    }

    /// `t` as a linear form in `r_b`.
    pub fn form(&self) -> LinearForm {
        LinearForm {
            a: q(self.k, 2 * self.n),
            c: q(self.eps as i64, 2 * self.n),
        }
    }

    pub fn level_ratio(&self) -> Option<&LevelRatio> {
        self.ratio.as_deref()
    }

    pub fn approx(&self) -> f64 {
        self.numeric.midpoint_f64()
    }
}

/// Height of the curve at one parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Height {
    pub form: LinearForm,
    pub enclosure: Interval,
}

fn sign_with(ratio: Option<&LevelRatio>, form: &LinearForm) -> Result<Ordering> {
    match ratio {
        Some(r) => r.sign(form),
        None => {
            debug_assert!(form.c.is_zero());
            Ok(form.a.cmp(&BigRational::zero()))
        }
    }
}

/// Sawtooth `g(x) = 2|x − ⌊x⌋ − 1/2|` applied to a linear form, returned as a
/// linear form valid at the actual value of `r`.
fn sawtooth(x: &LinearForm, ratio: Option<&LevelRatio>) -> Result<LinearForm> {
    let approx = match ratio {
        Some(r) => x.enclose(r.enclosure()).midpoint(),
        None => x.a.clone(),
    };
    let mut floor = approx.floor();
    loop {
        if sign_with(ratio, &x.add_rational(&-floor.clone()))? == Ordering::Less {
            floor -= BigRational::one();
            continue;
        }
        let above = x.add_rational(&-(&floor + BigRational::one()));
        if sign_with(ratio, &above)? != Ordering::Less {
            floor += BigRational::one();
            continue;
        }
        break;
    }
    let centred = x.add_rational(&-(floor + q(1, 2)));
    let two = q(2, 1);
    Ok(match sign_with(ratio, &centred)? {
        Ordering::Less => centred.scale(&-two),
        _ => centred.scale(&two),
    })
}

/// Certified height `g(m·t + φ)`.
pub fn height(t: &ExactParam, m: i64, phi: &BigRational) -> Result<Height> {
    let ratio = t.level_ratio();
    let x = t.form().scale(&q(m, 1)).add_rational(phi);
    let form = sawtooth(&x, ratio)?;
    let enclosure = match &ratio {
        Some(r) => form.enclose(r.enclosure()),
        None => Interval::point(form.a.clone()),
    };
    Ok(Height { form, enclosure })
}

/// Exact comparison of the heights at two parameters on the same level.
pub fn compare_heights(a: &ExactParam, b: &ExactParam, m: i64, phi: &BigRational) -> Result<Ordering> {
    let ha = height(a, m, phi)?;
    let hb = height(b, m, phi)?;
    let ratio = a.level_ratio().or_else(|| b.level_ratio());
    if a.eps != 0 && b.eps != 0 {
        assert_eq!(a.b, b.b, "height comparison across levels");
    }
    sign_with(ratio, &ha.form.sub(&hb.form))
}

/// Vertices `P_k = e^{2πi s k / n}` in traversal order.
pub fn vertices(s: i64, n: i64) -> Result<Vec<(f64, f64)>> {
    check_star(s, n)?;
    Ok((0..n)
        .map(|k| {
            let a = 2.0 * PI * ((s * k) % n) as f64 / n as f64;
            (a.cos(), a.sin())
        })
        .collect())
}

/// Point of the projected curve at parameter `t` (numeric, for rendering).
pub fn curve_point(s: i64, n: i64, t: f64) -> (f64, f64) {
    let u = t.rem_euclid(1.0) * n as f64;
    let k = (u.floor() as i64).min(n - 1);
    let frac = u - k as f64;
    let a0 = 2.0 * PI * (s * k) as f64 / n as f64;
    let a1 = 2.0 * PI * (s * (k + 1)) as f64 / n as f64;
    let (x0, y0) = (a0.cos(), a0.sin());
    let (x1, y1) = (a1.cos(), a1.sin());
    (x0 + frac * (x1 - x0), y0 + frac * (y1 - y0))
}

/// A double point of the projected star polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    /// Parameter on the strand moving outward (`eps = +1`).
    pub param_a: ExactParam,
    /// Parameter on the strand moving inward (`eps = −1`).
    pub param_b: ExactParam,
    /// Crossing circle index `b` in `1..s`; larger is farther from the centre.
    pub level: i64,
    /// Polar angle of the crossing as a multiple of `π/n`, in `0..2n`.
    pub angle_index: i64,
    pub point: Point,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point(pub f64, pub f64);

impl Eq for Point {}

impl Crossing {
    /// Position in counterclockwise reading order starting just after angle 0.
    pub fn reading_slot(&self, n: i64) -> i64 {
        if self.angle_index == 0 {
            2 * n
        } else {
            self.angle_index
        }
    }

    /// 1-based block index of the closed-braid reading.
    pub fn block(&self, n: i64) -> i64 {
        (self.reading_slot(n) + 1) / 2
    }
}

fn inverse_mod(a: i64, n: i64) -> Option<i64> {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (n, a.rem_euclid(n));
    while new_r != 0 {
        let qt = r / new_r;
        (t, new_t) = (new_t, t - qt * new_t);
        (r, new_r) = (new_r, r - qt * new_r);
    }
    (r == 1).then(|| t.rem_euclid(n))
}

pub(crate) fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    if n == 1 {
        return Some(0);
    }
    inverse_mod(a, n)
}

/// All `n(s − 1)` crossings, sorted in reading order (by angle from 0⁺, then
/// outermost level first).
pub fn chord_crossings(s: i64, n: i64) -> Result<Vec<Crossing>> {
    check_star(s, n)?;
    let s_inv = mod_inverse(s, n).expect("gcd(s, n) = 1");
    let half = PI * s as f64 / n as f64;
    let mut out = Vec::with_capacity(((s - 1) * n) as usize);
    for b in 1..s {
        let ratio = Arc::new(LevelRatio::new(b, s, n));
        let radius = half.cos() / (PI * b as f64 / n as f64).cos();
        for c1 in 0..n {
            let c2 = (c1 + b * s_inv).rem_euclid(n);
            let angle_index = ((2 * c1 + 1) * s + b).rem_euclid(2 * n);
            let ang = PI * angle_index as f64 / n as f64;
            out.push(Crossing {
                param_a: ExactParam::on_level(2 * c1 + 1, 1, &ratio),
                param_b: ExactParam::on_level(2 * c2 + 1, -1, &ratio),
                level: b,
                angle_index,
                point: Point(radius * ang.cos(), radius * ang.sin()),
            });
        }
    }
    out.sort_by_key(|c| (c.reading_slot(n), -c.level));
    Ok(out)
}

/// Checks that no crossing can be singular for every phase, i.e. that
/// `m(t₁ − t₂)` is never an integer. Returns the number of crossings checked.
pub fn certify_nonremovable_free(s: i64, n: i64, m: i64) -> Result<usize> {
    let crossings = chord_crossings(s, n)?;
    for c in &crossings {
        let diff = c.param_a.form().sub(&c.param_b.form()).scale(&q(m, 1));
        let ratio = c.param_a.level_ratio().unwrap();
        let mut excluded = false;
        for &bits in exact::PRECISION_TIERS.iter() {
            if !diff.enclose(&ratio.refine(bits)).contains_integer() {
                excluded = true;
                break;
            }
        }
        if !excluded {
            return Err(GeometryError::InternalContradiction(format!(
                "m(t1 - t2) may be an integer at crossing level {} angle {}π/{n} of Z({s},{n},{m})",
                c.level, c.angle_index
            )));
        }
    }
    Ok(crossings.len())
}

/// The finite set of phases `φ ∈ [0, 1)` at which some crossing becomes a
/// double point of the space curve, sorted ascending.
pub fn bad_phases(s: i64, n: i64, m: i64) -> Result<Vec<BigRational>> {
    check_star(s, n)?;
    if m < 1 {
        return Err(GeometryError::InvalidParams(format!("m = {m} must be positive")));
    }
    certify_nonremovable_free(s, n, m)?;
    let mut out = Vec::new();
    for c in chord_crossings(s, n)? {
        let (fa, fb) = (c.param_a.form(), c.param_b.form());
        let sum = LinearForm {
            a: fa.a + fb.a,
            c: fa.c + fb.c,
        };
        if !sum.c.is_zero() {
            return Err(GeometryError::InternalContradiction(
                "irrational parts of t1 + t2 do not cancel".into(),
            ));
        }
        // m(t1 + t2) + 2φ ∈ Z  ⇔  φ ≡ (j − m(t1 + t2)) / 2  (mod 1), j ∈ {0, 1}
        let base = &sum.a * q(m, 1);
        for j in 0..2 {
            let phi = exact::frac(&((q(j, 1) - &base) / q(2, 1)));
            out.push(phi);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Midpoints of all gaps between consecutive bad phases, sorted by
/// decreasing gap width and then increasing midpoint.
pub fn generic_phases(s: i64, n: i64, m: i64) -> Result<Vec<BigRational>> {
    let bad = bad_phases(s, n, m)?;
    if bad.is_empty() {
        return Ok(vec![BigRational::zero()]);
    }
    let one = BigRational::one();
    let mut gaps: Vec<(BigRational, BigRational)> = Vec::with_capacity(bad.len());
    for (i, lo) in bad.iter().enumerate() {
        let hi = if i + 1 < bad.len() {
            bad[i + 1].clone()
        } else {
            &bad[0] + &one
        };
        let width = &hi - lo;
        let mid = exact::frac(&((lo + &hi) / q(2, 1)));
        gaps.push((width, mid));
    }
    gaps.sort_by(|x, y| y.0.cmp(&x.0).then_with(|| x.1.cmp(&y.1)));
    Ok(gaps.into_iter().map(|(_, mid)| mid).collect())
}

/// At least `count` distinct generic phases: gaps between bad phases are
/// split into `r + 1` equal parts, with `r` growing until enough interior
/// points exist. Sorted, truncated to `count`.
pub fn sample_generic_phases(s: i64, n: i64, m: i64, count: usize) -> Result<Vec<BigRational>> {
    let mut bad = bad_phases(s, n, m)?;
    if bad.is_empty() {
        bad.push(BigRational::zero());
    }
    let one = BigRational::one();
    let mut r: i64 = 1;
    loop {
        let mut out = Vec::new();
        for (i, lo) in bad.iter().enumerate() {
            let hi = bad.get(i + 1).cloned().unwrap_or_else(|| &bad[0] + &one);
            let step = (&hi - lo) / q(r + 1, 1);
            for k in 1..=r {
                out.push(exact::frac(&(lo + &step * q(k, 1))));
            }
        }
        if out.len() >= count {
            out.sort();
            out.truncate(count);
            return Ok(out);
        }
        r += 1;
    }
}

/// Deterministic generic phase: midpoint of the widest gap between bad
/// phases, smallest midpoint on ties, `0` when there are no crossings.
pub fn generic_phase(s: i64, n: i64, m: i64) -> Result<BigRational> {
    Ok(generic_phases(s, n, m)?.swap_remove(0))
}

/// Numeric winding number of the projected polygon around the origin.
pub fn winding_number(s: i64, n: i64) -> Result<i64> {
    let v = vertices(s, n)?;
    let mut total = 0.0;
    for i in 0..v.len() {
        let (x0, y0) = v[i];
        let (x1, y1) = v[(i + 1) % v.len()];
        let a0 = y0.atan2(x0);
        let a1 = y1.atan2(x1);
        let mut d = a1 - a0;
        while d <= -PI {
            d += 2.0 * PI;
        }
        while d > PI {
            d -= 2.0 * PI;
        }
        total += d;
    }
    Ok((total / (2.0 * PI)).round() as i64)
}

/// One rational solution of `tan(πα) = λ·tan(πβ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TanRatioSolution {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub lambda: BigRational,
}

/// Scans all `0 < β < α < 1/2` with denominators at most `max_den` for
/// rational ratios `tan(πα)/tan(πβ)` (denominator at most `max_den`, within
/// `1e-12`).
pub fn tan_ratio_rationality_scan(max_den: i64) -> Vec<TanRatioSolution> {
    assert!(max_den >= 6, "scan needs max_den >= 6");
    let mut fractions: Vec<(i64, i64)> = Vec::new();
    for den in 2..=max_den {
        for num in 1..den {
            if 2 * num < den && exact::gcd(num, den) == 1 {
                fractions.push((num, den));
            }
        }
    }
    fractions.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    let tans: Vec<Interval> = fractions
        .iter()
        .map(|&(p, d)| exact::tan_pi_rational(p, d, 96))
        .collect();
    let approx: Vec<f64> = tans.iter().map(|t| t.midpoint_f64()).collect();
    let tol = BigRational::new(BigInt::one(), BigInt::from(10).pow(12));

    let mut out = Vec::new();
    for (ia, &(pa, da)) in fractions.iter().enumerate() {
        for (ib, &(pb, db)) in fractions.iter().enumerate().take(ia) {
            let r = approx[ia] / approx[ib];
            if !near_small_rational(r, max_den, 1e-9) {
                continue;
            }
            let ratio = tans[ia].div(&tans[ib]).expect("tan > 0");
            let mid = ratio.midpoint();
            let lambda = best_rational(&mid, max_den);
            if (&mid - &lambda).abs() < tol {
                out.push(TanRatioSolution {
                    alpha: q(pa, da),
                    beta: q(pb, db),
                    lambda,
                });
            }
        }
    }
    out
}

fn near_small_rational(x: f64, max_den: i64, tol: f64) -> bool {
    (1..=max_den).any(|d| {
        let scaled = x * d as f64;
        (scaled - scaled.round()).abs() < tol * d as f64
    })
}
