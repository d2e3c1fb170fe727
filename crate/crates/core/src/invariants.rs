//! Classical invariants of braid closures.
//!
//! Alexander polynomial from the reduced Burau representation, determinant
//! and Arf invariant from it, signature from the Seifert matrix of the
//! standard braid-closure surface, and the Jones polynomial through a
//! Temperley–Lieb state sum.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("closure has {0} components; a knot is required")]
    NotAKnot(usize),
    #[error("determinant {0} is even; the Arf invariant needs an odd determinant")]
    EvenDeterminant(BigInt),
    #[error("{letters} letters exceed the Jones cap of {cap}; inconclusive")]
    CapExceeded { letters: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, InvariantError>;

pub const DEFAULT_JONES_CAP: usize = 30;
pub const DEFAULT_COEFF_BOUND: i64 = 20;

fn require_knot(word: &BraidWord) -> Result<()> {
    match word.components() {
        1 => Ok(()),
        c => Err(InvariantError::NotAKnot(c)),
    }
}

/// Determinant of a square matrix of Laurent polynomials (fraction-free
/// Bareiss elimination).
pub fn laurent_determinant(mut a: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = a.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return LaurentPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Local block of the reduced Burau matrix of `σ_j^sign` on `strands`
/// strands, with the row/column indices it occupies.
fn burau_block(strands: usize, j: usize, sign: i8) -> (Vec<usize>, Vec<Vec<LaurentPoly>>) {
    let p = |c: i64, e: i64| LaurentPoly::monomial(c, e);
    let z = LaurentPoly::zero;
    let o = LaurentPoly::one;
    let inv = sign < 0;
    if strands == 2 {
        return (vec![0], vec![vec![if inv { p(-1, -1) } else { p(-1, 1) }]]);
    }
    if j == 1 {
        let m = if inv {
            vec![vec![p(-1, -1), p(1, -1)], vec![z(), o()]]
        } else {
            vec![vec![p(-1, 1), o()], vec![z(), o()]]
        };
        return (vec![0, 1], m);
    }
    if j == strands - 1 {
        let m = if inv {
            vec![vec![o(), z()], vec![o(), p(-1, -1)]]
        } else {
            vec![vec![o(), z()], vec![p(1, 1), p(-1, 1)]]
        };
        return (vec![j - 2, j - 1], m);
    }
    let mid = if inv {
        vec![o(), p(-1, -1), p(1, -1)]
    } else {
        vec![p(1, 1), p(-1, 1), o()]
    };
    let m = vec![vec![o(), z(), z()], mid, vec![z(), z(), o()]];
    (vec![j - 2, j - 1, j], m)
}

/// Reduced Burau matrix of the whole word.
pub fn reduced_burau(word: &BraidWord) -> Vec<Vec<LaurentPoly>> {
    let d = word.strands().saturating_sub(1);
    let mut m: Vec<Vec<LaurentPoly>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() })
                .collect()
        })
        .collect();
    for l in word.letters() {
        let (idx, g) = burau_block(word.strands(), l.generator, l.sign);
        for row in m.iter_mut() {
            let old: Vec<LaurentPoly> = idx.iter().map(|&c| row[c].clone()).collect();
            for (cj, &c) in idx.iter().enumerate() {
                let mut acc = LaurentPoly::zero();
                for (ri, val) in old.iter().enumerate() {
                    if !val.is_zero() && !g[ri][cj].is_zero() {
                        acc = &acc + &(val * &g[ri][cj]);
                    }
                }
                row[c] = acc;
            }
        }
    }
    m
}

/// `det(x·I − M)` of a Laurent matrix, as a polynomial in `x` with Laurent
/// coefficients, evaluated at the integer `x`.
pub fn burau_charpoly_at(word: &BraidWord, x: i64) -> LaurentPoly {
    let m = reduced_burau(word);
    let a = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, e)| {
                    let diag = if i == j { LaurentPoly::constant(x) } else { LaurentPoly::zero() };
                    &diag - e
                })
                .collect()
        })
        .collect();
    laurent_determinant(a)
}

/// Alexander polynomial of the closure, symmetric with `Δ(1) = 1`.
pub fn alexander(word: &BraidWord) -> Result<LaurentPoly> {
    require_knot(word)?;
    let s = word.strands() as i64;
    if s == 1 {
        return Ok(LaurentPoly::one());
    }
    let d = burau_charpoly_at(word, 1);
    // det(I − ρ̄) = Δ·(1 + t + … + t^{s−1}) up to a unit
    let one_minus = |e: i64| &LaurentPoly::one() - &LaurentPoly::monomial(1, e);
    let delta = (&d * &one_minus(1))
        .div_exact(&one_minus(s))
        .expect("Burau determinant is divisible by the strand factor");
    Ok(delta.normalize_symmetric())
}

/// `|Δ(−1)|`.
pub fn determinant(delta: &LaurentPoly) -> BigInt {
    delta.eval(-1).abs()
}

/// Arf invariant from the determinant (Levine's criterion).
pub fn arf(det: &BigInt) -> Result<u8> {
    if det.is_even() {
        return Err(InvariantError::EvenDeterminant(det.clone()));
    }
    let r = det.mod_floor(&BigInt::from(8));
    Ok(if r == BigInt::from(1) || r == BigInt::from(7) { 0 } else { 1 })
}

pub fn is_square(k: &BigInt) -> bool {
    if k.is_negative() {
        return false;
    }
    let r = k.sqrt();
    &r * &r == *k
}

/// Seifert matrix of the braid-closure surface: one disk per strand and one
/// half-twisted band per letter. The basis loops run between consecutive
/// bands of the same generator.
pub fn seifert_matrix(word: &BraidWord) -> Result<Vec<Vec<i64>>> {
    require_knot(word)?;
    Ok(seifert_unchecked(word))
}

fn seifert_unchecked(word: &BraidWord) -> Vec<Vec<i64>> {
    // loop = (generator, position of first band, position of second band)
    let mut loops: Vec<(usize, usize, usize)> = Vec::new();
    for j in 1..word.strands() {
        let pos: Vec<usize> = word
            .letters()
            .iter()
            .enumerate()
            .filter(|(_, l)| l.generator == j)
            .map(|(i, _)| i)
            .collect();
        loops.extend(pos.windows(2).map(|w| (j, w[0], w[1])));
    }
    // oriented crossing sign: the letter σ_j is a negative crossing
    let eps = |p: usize| -(word.letters()[p].sign as i64);
    let k = loops.len();
    let mut v = vec![vec![0i64; k]; k];
    for (x, &(ja, a0, a1)) in loops.iter().enumerate() {
        v[x][x] = -(eps(a0) + eps(a1)) / 2;
        for (y, &(jb, b0, b1)) in loops.iter().enumerate() {
            if x == y {
                continue;
            }
            if ja == jb && a1 == b0 {
                // consecutive loops sharing the band at a1
                if eps(a1) > 0 {
                    v[x][y] = 1;
                } else {
                    v[y][x] = -1;
                }
            } else if jb == ja + 1 && b0 < a0 && a0 < b1 && b1 < a1 {
                v[x][y] = -1;
            } else if jb == ja + 1 && a0 < b0 && b0 < a1 && a1 < b1 {
                v[x][y] = 1;
            }
        }
    }
    v
}

/// Signature of `V + Vᵀ`, by exact congruence diagonalization.
pub fn signature(v: &[Vec<i64>]) -> i64 {
    let n = v.len();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(BigInt::from(v[i][j] + v[j][i])))
                .collect()
        })
        .collect();
    symmetric_signature(&mut a)
}

/// Signature of a symmetric rational matrix (destroys the input).
pub fn symmetric_signature(a: &mut [Vec<BigRational>]) -> i64 {
    let n = a.len();
    let mut sig = 0;
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // add row/column j to k; the new pivot is 2·a[k][j]
                let add = a[j].clone();
                for (x, y) in a[k].iter_mut().zip(add) {
                    *x += y;
                }
                for row in a.iter_mut() {
                    let add = row[j].clone();
                    row[k] += add;
                }
            } else {
                continue;
            }
        }
        let pivot = a[k][k].clone();
        sig += if pivot.is_positive() { 1 } else { -1 };
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            let pivot_row = a[k].clone();
            for (x, y) in a[i].iter_mut().zip(&pivot_row).skip(k) {
                *x -= &f * y;
            }
            for row in a.iter_mut() {
                let sub = &f * &row[k];
                row[i] -= sub;
            }
        }
    }
    sig
}

/// Temperley–Lieb diagram on `2s` points: bottom `0..s`, top `s..2s`.
type Matching = Vec<u8>;

/// Composes a diagram with `e_i` on top; returns the new diagram and whether
/// a closed loop was removed.
fn apply_cup_cap(d: &Matching, s: usize, i: usize) -> (Matching, bool) {
    let (x, y) = (s + i - 1, s + i);
    let mut out = d.clone();
    let (px, py) = (d[x] as usize, d[y] as usize);
    if px == y {
        return (out, true);
    }
    out[px] = py as u8;
    out[py] = px as u8;
    out[x] = y as u8;
    out[y] = x as u8;
    (out, false)
}

/// Loops of the closure of a diagram (top `k` joined to bottom `k`).
fn closure_loops(d: &Matching, s: usize) -> usize {
    let mut seen = vec![false; 2 * s];
    let mut loops = 0;
    for start in 0..2 * s {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut p = start;
        loop {
            seen[p] = true;
            let q = d[p] as usize;
            seen[q] = true;
            let next = if q < s { q + s } else { q - s };
            if seen[next] {
                break;
            }
            p = next;
        }
    }
    loops
}

/// Kauffman bracket of the closure, as a Laurent polynomial in `A`, with
/// the empty diagram's single loop normalized to 1.
pub fn kauffman_bracket(word: &BraidWord) -> LaurentPoly {
    let s = word.strands();
    let mut state: HashMap<Matching, LaurentPoly> = HashMap::new();
    let identity: Matching = (0..2 * s).map(|p| ((p + s) % (2 * s)) as u8).collect();
    state.insert(identity, LaurentPoly::one());
    let delta = LaurentPoly::from_i64s(-2, &[-1, 0, 0, 0, -1]);
    for l in word.letters() {
        // positive crossing: A·1 + A⁻¹·e; negative: A⁻¹·1 + A·e
        let positive = l.sign < 0;
        let (id_coef, e_coef) = if positive {
            (LaurentPoly::monomial(1, 1), LaurentPoly::monomial(1, -1))
        } else {
            (LaurentPoly::monomial(1, -1), LaurentPoly::monomial(1, 1))
        };
        let mut next: HashMap<Matching, LaurentPoly> = HashMap::with_capacity(state.len() * 2);
        for (d, c) in &state {
            let keep = &id_coef * c;
            add_into(&mut next, d.clone(), keep);
            let (nd, loop_closed) = apply_cup_cap(d, s, l.generator);
            let mut term = &e_coef * c;
            if loop_closed {
                term = &term * &delta;
            }
            add_into(&mut next, nd, term);
        }
        next.retain(|_, v| !v.is_zero());
        state = next;
    }
    let mut total = LaurentPoly::zero();
    for (d, c) in &state {
        let loops = closure_loops(d, s) as u32;
        total = &total + &(c * &delta.pow(loops - 1));
    }
    total
}

fn add_into(map: &mut HashMap<Matching, LaurentPoly>, key: Matching, val: LaurentPoly) {
    match map.get_mut(&key) {
        Some(v) => *v = &*v + &val,
        None => {
            map.insert(key, val);
        }
    }
}

/// Converts a writhe-corrected bracket in `A` to a polynomial in `t^{1/2}`
/// via `A = t^{−1/4}`.
pub fn bracket_to_jones(bracket: &LaurentPoly, writhe: i64) -> LaurentPoly {
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    let f = &LaurentPoly::monomial(sign, -3 * writhe) * bracket;
    // all exponents of A share parity 2 mod 4 or 0 mod 4; A^e = (t^{1/2})^{−e/2}
    debug_assert!((f.low_degree()..=f.high_degree()).all(|e| f.coeff(e).is_zero() || e % 2 == 0));
    let mut coeffs: Vec<(i64, BigInt)> = (f.low_degree()..=f.high_degree())
        .filter(|&e| !f.coeff(e).is_zero())
        .map(|e| (-e / 2, f.coeff(e)))
        .collect();
    coeffs.sort_by_key(|(e, _)| *e);
    coeffs
        .into_iter()
        .map(|(e, c)| LaurentPoly::monomial(c, e))
        .sum()
}

/// Jones polynomial of the closure in powers of `t^{1/2}`.
pub fn jones(word: &BraidWord, cap: usize) -> Result<LaurentPoly> {
    if word.len() > cap {
        return Err(InvariantError::CapExceeded {
            letters: word.len(),
            cap,
        });
    }
    let writhe = -word.exponent_sum();
    Ok(bracket_to_jones(&kauffman_bracket(word), writhe))
}

/// Looks for `F ∈ Z[t]` with `F(t)·F(t⁻¹) = Δ` and coefficients bounded by
/// `coeff_bound`. `None` means inconclusive.
pub fn fox_milnor_search(delta: &LaurentPoly, coeff_bound: i64) -> Option<LaurentPoly> {
    if delta.is_zero() || delta.span() % 2 != 0 {
        return None;
    }
    let d = (delta.span() / 2) as usize;
    let target: Vec<i64> = (0..=d)
        .map(|k| delta.coeff(delta.low_degree() + d as i64 + k as i64).to_i64())
        .collect::<Option<_>>()?;
    // target[k] = Σ_i f_i f_{i+k}
    let mut f = vec![0i64; d + 1];
    if search_pairs(&target, &mut f, 0, coeff_bound) {
        let poly = LaurentPoly::from_i64s(0, &f);
        let poly = if poly.eval(1).is_negative() { -poly } else { poly };
        return Some(poly);
    }
    None
}

fn search_pairs(target: &[i64], f: &mut [i64], i: usize, bound: i64) -> bool {
    let d = f.len() - 1;
    let (lo, hi) = (i, d - i);
    if lo > hi {
        return verify_fm(target, f);
    }
    let sq: i64 = (0..lo).chain(hi + 1..=d).map(|x| f[x] * f[x]).sum();
    let budget = target[0] - sq;
    if budget < 0 {
        return false;
    }
    if lo == hi {
        for x in -bound..=bound {
            if x * x > budget {
                continue;
            }
            f[lo] = x;
            if verify_fm(target, f) {
                return true;
            }
        }
        f[lo] = 0;
        return false;
    }
    // coefficient of t^{hi−lo}: f_lo·f_d + f_0·f_hi + Σ_{0<j<lo} f_j f_{j+hi−lo} (terms already fixed)
    let k = hi - lo;
    let known: i64 = (1..lo).map(|j| f[j] * f[j + k]).sum();
    let rhs = target[k] - known;
    for x in -bound..=bound {
        if x * x > budget {
            continue;
        }
        f[lo] = x;
        let candidates: Vec<i64> = if i == 0 {
            // f_0·f_d = target[d]
            if x == 0 {
                continue;
            }
            if rhs % x != 0 {
                continue;
            }
            vec![rhs / x]
        } else {
            let rest = rhs - x * f[d];
            if f[0] == 0 || rest % f[0] != 0 {
                continue;
            }
            vec![rest / f[0]]
        };
        for y in candidates {
            if y.abs() > bound || x * x + y * y > budget {
                continue;
            }
            f[hi] = y;
            if search_pairs(target, f, i + 1, bound) {
                return true;
            }
        }
    }
    f[lo] = 0;
    f[hi] = 0;
    false
}

fn verify_fm(target: &[i64], f: &[i64]) -> bool {
    let d = f.len() - 1;
    (0..=d).all(|k| (0..=d - k).map(|j| f[j] * f[j + k]).sum::<i64>() == target[k])
}

/// The invariants used for identification and the ribbon screen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSet {
    pub alexander: LaurentPoly,
    #[serde(with = "crate::exact::serde_bigint")]
    pub det: BigInt,
    pub signature: i64,
    pub arf: u8,
    /// Powers of `t^{1/2}`; absent above the crossing cap.
    pub jones: Option<LaurentPoly>,
}

impl InvariantSet {
    pub fn compute(word: &BraidWord, jones_cap: usize) -> Result<Self> {
        let alexander = alexander(word)?;
        let det = determinant(&alexander);
        let arf = arf(&det)?;
        let signature = signature(&seifert_unchecked(word));
        let jones = match jones(word, jones_cap) {
            Ok(j) => Some(j),
            Err(InvariantError::CapExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(InvariantSet {
            alexander,
            det,
            signature,
            arf,
            jones,
        })
    }

    pub fn mirror(&self) -> Self {
        InvariantSet {
            signature: -self.signature,
            jones: self.jones.as_ref().map(|j| j.invert_variable()),
            ..self.clone()
        }
    }

    /// Equal, possibly after mirroring one side; Jones only compared when
    /// both are present.
    pub fn agrees_up_to_mirror(&self, other: &Self) -> bool {
        let core = self.alexander == other.alexander
            && self.det == other.det
            && self.signature.abs() == other.signature.abs()
            && self.arf == other.arf;
        let jones_ok = |m: &Self| match (&m.jones, &other.jones) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        };
        let sig_ok = |m: &Self| m.signature == other.signature || self.signature == 0;
        core && ((sig_ok(self) && jones_ok(self)) || (sig_ok(&self.mirror()) && jones_ok(&self.mirror())))
    }
}

/// Invariants of many words in parallel.
pub fn compute_all(words: &[BraidWord], jones_cap: usize) -> Vec<Result<InvariantSet>> {
    words
        .par_iter()
        .map(|w| InvariantSet::compute(w, jones_cap))
        .collect()
}
