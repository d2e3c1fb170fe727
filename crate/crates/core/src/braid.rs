//! Closed-braid reading of cylinder diagrams.
//!
//! Reading the projected curve counterclockwise around the cylinder axis
//! gives a braid on `s` strands. Strand positions are numbered from the
//! outside in, so a crossing on circle `b` is the generator `σ_{s−b}`. The
//! `2n` crossing slots at polar angles `kπ/n` alternate between odd and even
//! generators, which groups the word into `n` blocks
//! `σ_1 σ_3 … σ_2 σ_4 …` of `s − 1` letters each.
//!
//! Sign convention: the letter `σ_j` (sign `+1`) is a *negative* crossing of
//! the oriented closure and `σ_j⁻¹` a positive one.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact;
use crate::geometry::{self, compare_heights, Crossing, CurveParams, GeometryError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BraidError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("generator σ_{generator} out of range for {strands} strands")]
    GeneratorOutOfRange { generator: usize, strands: usize },
    #[error("not a cylinder braid: {0}")]
    Structure(String),
    #[error("run structure violated for v_{j} at index {index}: {detail}")]
    RunViolation { j: usize, index: usize, detail: String },
    #[error("run structure needs gcd(n, m) = 1 (got gcd({n}, {m}) = {d})")]
    NotCoprime { n: i64, m: i64, d: i64 },
    #[error("sign vector v_{0} is constant; no critical crossings")]
    NoSignChange(usize),
    #[error("{count} candidate braids exceed the bound {bound}")]
    BoundExceeded { count: usize, bound: String },
    #[error("braid text: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, BraidError>;

/// `σ_generator^sign`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub sign: i8,
}

impl Letter {
    pub fn new(generator: usize, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1, "letter sign must be ±1");
        Letter { generator, sign }
    }

    pub fn inverse(self) -> Self {
        Letter::new(self.generator, -self.sign)
    }
}

/// A braid word on a fixed number of strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        assert!(strands >= 1, "a braid needs at least one strand");
        if let Some(l) = letters
            .iter()
            .find(|l| l.generator == 0 || l.generator >= strands)
        {
            return Err(BraidError::GeneratorOutOfRange {
                generator: l.generator,
                strands,
            });
        }
        Ok(BraidWord { strands, letters })
    }

    /// Builds a word from signed generator indices, e.g. `[1, -2, 1, -2]`.
    pub fn from_signed(strands: usize, gens: &[i64]) -> Result<Self> {
        let letters = gens
            .iter()
            .map(|&g| {
                if g == 0 {
                    Err(BraidError::Parse("generator index 0".into()))
                } else {
                    Ok(Letter::new(g.unsigned_abs() as usize, g.signum() as i8))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(strands, letters)
    }

    pub fn empty(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// All exponents negated; the closure is the mirror image.
    pub fn mirror(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        assert_eq!(self.strands, other.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.repeat(k),
        }
    }

    /// Same letters on more strands.
    pub fn with_strands(&self, strands: usize) -> Result<Self> {
        BraidWord::new(strands, self.letters.clone())
    }

    /// Generators shifted up by `k` (and `k` more strands).
    pub fn shifted(&self, k: usize) -> Self {
        BraidWord {
            strands: self.strands + k,
            letters: self
                .letters
                .iter()
                .map(|l| Letter::new(l.generator + k, l.sign))
                .collect(),
        }
    }

    /// Permutation of strand positions: entry `p` is where the strand starting
    /// at position `p` (0-based) ends.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect(); // at[position] = strand
        for l in &self.letters {
            at.swap(l.generator - 1, l.generator);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    /// Number of components of the closure.
    pub fn components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut count = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = perm[p];
            }
        }
        count
    }

    pub fn is_knot(&self) -> bool {
        self.components() == 1
    }

    /// Exponent sum; equals minus the writhe of the closure.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign as i64).sum()
    }

    /// Parses `s1 s2^-1 s1`; the strand count is one more than the largest
    /// generator unless `strands` is given.
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(parse_letter)
            .collect::<Result<Vec<_>>>()?;
        let needed = letters.iter().map(|l| l.generator + 1).max().unwrap_or(1);
        let strands = strands.unwrap_or(needed);
        if strands == 0 {
            return Err(BraidError::Parse("strand count must be positive".into()));
        }
        BraidWord::new(strands, letters)
    }
}

fn parse_letter(tok: &str) -> Result<Letter> {
    let bad = || BraidError::Parse(format!("bad letter `{tok}` (expected s<j> or s<j>^-1)"));
    let rest = tok.strip_prefix('s').ok_or_else(bad)?;
    let (gen, sign) = match rest.split_once('^') {
        Some((g, "-1")) => (g, -1),
        Some((g, "1")) => (g, 1),
        Some(_) => return Err(bad()),
        None => (rest, 1),
    };
    let generator: usize = gen.parse().map_err(|_| bad())?;
    if generator == 0 {
        return Err(bad());
    }
    Ok(Letter::new(generator, sign))
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                if l.sign > 0 {
                    format!("s{}", l.generator)
                } else {
                    format!("s{}^-1", l.generator)
                }
            })
            .collect();
        f.write_str(&toks.join(" "))
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self> {
        BraidWord::parse(s, None)
    }
}

/// Generator order inside one block: odd generators ascending, then even.
pub fn block_layout(strands: usize) -> Vec<usize> {
    let odd = (1..strands).filter(|j| j % 2 == 1);
    let even = (1..strands).filter(|j| j % 2 == 0);
    odd.chain(even).collect()
}

/// The crossing-sign vectors `v_j` of a cylinder braid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVectors {
    /// Number of blocks.
    pub n: usize,
    /// `v[j − 1][i]` is the sign of `σ_j` in block `i` (0-based).
    pub v: Vec<Vec<i8>>,
}

impl SignVectors {
    pub fn strands(&self) -> usize {
        self.v.len() + 1
    }

    pub fn vector(&self, j: usize) -> &[i8] {
        &self.v[j - 1]
    }

    pub fn to_word(&self) -> BraidWord {
        let strands = self.strands();
        let layout = block_layout(strands);
        let mut letters = Vec::with_capacity(self.n * layout.len());
        for i in 0..self.n {
            for &j in &layout {
                letters.push(Letter::new(j, self.v[j - 1][i]));
            }
        }
        BraidWord { strands, letters }
    }

    pub fn negated(&self) -> Self {
        SignVectors {
            n: self.n,
            v: self
                .v
                .iter()
                .map(|row| row.iter().map(|&e| -e).collect())
                .collect(),
        }
    }

    /// Cyclic shift: block `i` of the result is block `i + r` of `self`.
    pub fn rotated(&self, r: usize) -> Self {
        SignVectors {
            n: self.n,
            v: self
                .v
                .iter()
                .map(|row| (0..self.n).map(|i| row[(i + r) % self.n]).collect())
                .collect(),
        }
    }

    /// The reversed word brought back into block form by a conjugation:
    /// odd generators come from block `n − 1 − i`, even ones from `n − 2 − i`.
    pub fn reversed(&self) -> Self {
        let n = self.n as i64;
        SignVectors {
            n: self.n,
            v: self
                .v
                .iter()
                .enumerate()
                .map(|(idx, row)| {
                    let j = idx + 1;
                    let offset = if j % 2 == 1 { 1 } else { 2 };
                    (0..n)
                        .map(|i| row[(n - offset - i).rem_euclid(n) as usize])
                        .collect()
                })
                .collect(),
        }
    }

    /// Lexicographic key with `+1` before `−1`, in word order.
    fn key(&self) -> Vec<u8> {
        let layout = block_layout(self.strands());
        let mut key = Vec::with_capacity(self.n * layout.len());
        for i in 0..self.n {
            for &j in &layout {
                key.push(if self.v[j - 1][i] > 0 { 0 } else { 1 });
            }
        }
        key
    }

    /// Smallest period `c` (dividing `n`) of the block sequence.
    pub fn block_period(&self) -> usize {
        (1..=self.n)
            .filter(|c| self.n.is_multiple_of(*c))
            .find(|&c| self.v.iter().all(|row| (0..self.n).all(|i| row[i] == row[(i + c) % self.n])))
            .unwrap_or(self.n)
    }
}

/// Reads off `v_j`; fails unless the word is `n` blocks in the cylinder layout.
pub fn sign_vectors(word: &BraidWord) -> Result<SignVectors> {
    let s = word.strands();
    let layout = block_layout(s);
    if layout.is_empty() {
        if !word.is_empty() {
            return Err(BraidError::Structure("letters on a 1-strand braid".into()));
        }
        return Ok(SignVectors { n: 0, v: Vec::new() });
    }
    if !word.len().is_multiple_of(layout.len()) {
        return Err(BraidError::Structure(format!(
            "{} letters is not a multiple of the block length {}",
            word.len(),
            layout.len()
        )));
    }
    let n = word.len() / layout.len();
    let mut v = vec![vec![0i8; n]; s - 1];
    for (idx, letter) in word.letters().iter().enumerate() {
        let (i, pos) = (idx / layout.len(), idx % layout.len());
        if letter.generator != layout[pos] {
            return Err(BraidError::Structure(format!(
                "letter {idx} is σ_{} but the block layout expects σ_{}",
                letter.generator, layout[pos]
            )));
        }
        v[letter.generator - 1][i] = letter.sign;
    }
    Ok(SignVectors { n, v })
}

/// One crossing of the diagram after over/under resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedCrossing {
    pub crossing: Crossing,
    /// 1-based block in reading order.
    pub block: i64,
    pub generator: usize,
    /// Letter sign (`+1` = `σ_j`).
    pub sign: i8,
    /// True when the outward-moving strand (`param_a`) is on top.
    pub outward_over: bool,
}

impl ResolvedCrossing {
    /// Parameters of the upper and lower strand.
    pub fn over_under(&self) -> (&geometry::ExactParam, &geometry::ExactParam) {
        if self.outward_over {
            (&self.crossing.param_a, &self.crossing.param_b)
        } else {
            (&self.crossing.param_b, &self.crossing.param_a)
        }
    }
}

/// The star polygon of `(s, n)`; resolving it at `(m, φ)` gives a diagram.
#[derive(Debug, Clone)]
pub struct StarPolygon {
    pub s: i64,
    pub n: i64,
    pub crossings: Vec<Crossing>,
}

impl StarPolygon {
    pub fn new(s: i64, n: i64) -> Result<Self> {
        Ok(StarPolygon {
            s,
            n,
            crossings: geometry::chord_crossings(s, n)?,
        })
    }

    pub fn resolve(&self, m: i64, phi: &BigRational) -> Result<Diagram> {
        let mut out = Vec::with_capacity(self.crossings.len());
        for c in &self.crossings {
            let ord = compare_heights(&c.param_a, &c.param_b, m, phi)?;
            let outward_over = match ord {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Equal => {
                    return Err(GeometryError::SingularPhase {
                        s: self.s,
                        n: self.n,
                        m,
                        phi: phi.to_string(),
                    }
                    .into())
                }
            };
            // outward strand on top is a positive crossing, i.e. the letter σ_j⁻¹
            let sign = if outward_over { -1 } else { 1 };
            out.push(ResolvedCrossing {
                block: c.block(self.n),
                generator: (self.s - c.level) as usize,
                crossing: c.clone(),
                sign,
                outward_over,
            });
        }
        Ok(Diagram {
            s: self.s,
            n: self.n,
            m,
            phi: phi.clone(),
            crossings: out,
        })
    }
}

/// Resolved diagram of a billiard curve.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub s: i64,
    pub n: i64,
    pub m: i64,
    pub phi: BigRational,
    pub crossings: Vec<ResolvedCrossing>,
}

impl Diagram {
    pub fn braid_word(&self) -> BraidWord {
        let letters = self
            .crossings
            .iter()
            .map(|c| Letter::new(c.generator, c.sign))
            .collect();
        BraidWord {
            strands: self.s as usize,
            letters,
        }
    }
}

pub fn resolve_diagram(params: &CurveParams) -> Result<Diagram> {
    StarPolygon::new(params.s, params.n)?.resolve(params.m, &params.phi)
}

/// The closed braid of `Z(s, n, m, φ)`, read counterclockwise from angle 0⁺.
pub fn extract_braid(params: &CurveParams) -> Result<BraidWord> {
    Ok(resolve_diagram(params)?.braid_word())
}

/// Result of checking one sign vector against the two-run pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunInfo {
    pub j: usize,
    /// 1-based start `b_j` of the leading run along the step `a`.
    pub b_j: usize,
    /// Sign of the leading run.
    pub leading: i8,
    pub leading_len: usize,
    pub trailing_len: usize,
    /// Constant vector accepted with an empty second run.
    pub degenerate: bool,
}

/// Step `a` with `a·m ≡ s (mod n)`, if it exists.
pub fn progression_step(s: i64, n: i64, m: i64) -> Option<i64> {
    let m_inv = geometry::mod_inverse(m, n)?;
    Some((s * m_inv).rem_euclid(n))
}

fn find_run_start(v: &[i8], a: usize) -> std::result::Result<(usize, i8), (usize, String)> {
    let n = v.len();
    let (long, short) = if n.is_multiple_of(2) { (n / 2, n / 2) } else { (n.div_ceil(2), n / 2) };
    let mut found = Vec::new();
    for b in 0..n {
        let seq: Vec<i8> = (0..n).map(|i| v[(b + i * a) % n]).collect();
        let lead = seq[0];
        if n.is_multiple_of(2) && lead != 1 {
            continue;
        }
        let ok = seq[..long].iter().all(|&e| e == lead) && seq[long..].iter().all(|&e| e == -lead);
        if ok {
            found.push((b, lead));
        }
    }
    match found.len() {
        1 => Ok(found[0]),
        0 => {
            // locate the first index where the sequence along the step starts a third run
            let seq: Vec<i8> = (0..n).map(|i| v[(i * a) % n]).collect();
            let changes: Vec<usize> = (0..n).filter(|&i| seq[i] != seq[(i + 1) % n]).collect();
            let index = if changes.len() > 2 {
                (changes[2] + 1) % n * a % n
            } else {
                changes.first().map(|&i| (i + 1) % n * a % n).unwrap_or(0)
            };
            Err((
                index,
                format!(
                    "{} sign changes along the step, expected runs of {long} and {short}",
                    changes.len()
                ),
            ))
        }
        k => Err((found[1].0, format!("{k} admissible starting points"))),
    }
}

/// Checks that every `v_j`, read along `b_j + i·a`, is one run of length
/// `⌈n/2⌉` followed by a run of the opposite sign.
pub fn verify_run_structure(v: &SignVectors, s: i64, n: i64, m: i64) -> Result<Vec<RunInfo>> {
    assert_eq!(v.n as i64, n, "sign vectors have {} blocks, expected {n}", v.n);
    let d = exact::gcd(n, m);
    let step = if d == 1 { progression_step(s, n, m) } else { None };
    let mut out = Vec::with_capacity(v.v.len());
    for (idx, row) in v.v.iter().enumerate() {
        let j = idx + 1;
        if row.iter().all(|&e| e == row[0]) {
            out.push(RunInfo {
                j,
                b_j: 1,
                leading: row[0],
                leading_len: row.len(),
                trailing_len: 0,
                degenerate: true,
            });
            continue;
        }
        let Some(a) = step else {
            return Err(BraidError::NotCoprime { n, m, d });
        };
        match find_run_start(row, a as usize) {
            Ok((b, lead)) => {
                let nn = row.len();
                out.push(RunInfo {
                    j,
                    b_j: b + 1,
                    leading: lead,
                    leading_len: nn.div_ceil(2),
                    trailing_len: nn / 2,
                    degenerate: false,
                })
            }
            Err((index, detail)) => {
                return Err(BraidError::RunViolation {
                    j,
                    index: index + 1,
                    detail,
                })
            }
        }
    }
    Ok(out)
}

/// Crossings that flip first when the phase moves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Critical {
    /// Even `n`: the pair flipped by decreasing φ, then the pair flipped by
    /// increasing φ (1-based block indices).
    Pairs([(usize, usize); 2]),
    /// Odd `n`: the crossing flipped by decreasing φ, then by increasing φ.
    Crossings(usize, usize),
}

impl Critical {
    /// Even case only: whether the two critical pairs share a crossing.
    pub fn pairs_overlap(&self) -> bool {
        match self {
            Critical::Pairs([p, q]) => [p.0, p.1].iter().any(|x| *x == q.0 || *x == q.1),
            Critical::Crossings(..) => false,
        }
    }
}

/// Critical pairs (even `n`) or critical crossings (odd `n`) of one sign
/// vector with step `a`.
pub fn critical_crossings(v_j: &[i8], n: usize, a: usize) -> Result<Critical> {
    assert_eq!(v_j.len(), n);
    if v_j.iter().all(|&e| e == v_j[0]) {
        return Err(BraidError::NoSignChange(0));
    }
    let (b0, _) = find_run_start(v_j, a % n).map_err(|(index, detail)| BraidError::RunViolation {
        j: 0,
        index: index + 1,
        detail,
    })?;
    let b = b0 + 1;
    Ok(critical_from_start(b, n, a))
}

/// Index arithmetic of the critical crossings from `b_j` (1-based).
pub fn critical_from_start(b: usize, n: usize, a: usize) -> Critical {
    let idx = |x: i64| ((x - 1).rem_euclid(n as i64) + 1) as usize;
    let (b, nn, a) = (b as i64, n as i64, a as i64);
    if n.is_multiple_of(2) {
        let half = nn / 2 * a;
        Critical::Pairs([
            (idx(b), idx(b + half)),
            (idx(b - a), idx(b - a + half)),
        ])
    } else {
        Critical::Crossings(idx(b), idx(b + (nn - 1) / 2 * a))
    }
}

/// Least representative under block rotation, mirror and reversal.
pub fn canonicalize(word: &BraidWord) -> Result<BraidWord> {
    Ok(canonical_vectors(&sign_vectors(word)?).to_word())
}

pub fn canonical_vectors(v: &SignVectors) -> SignVectors {
    if v.n == 0 {
        return v.clone();
    }
    let mut best: Option<(Vec<u8>, SignVectors)> = None;
    for base in [v.clone(), v.reversed()] {
        for cand in [base.clone(), base.negated()] {
            for r in 0..v.n {
                let rot = cand.rotated(r);
                let key = rot.key();
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    best = Some((key, rot));
                }
            }
        }
    }
    best.unwrap().1
}

/// `(n + 1)·2^(s − 3)` as an exact rational.
pub fn candidate_bound(s: i64, n: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(n + 1));
    let two = BigRational::from_integer(BigInt::from(2));
    if s >= 3 {
        base * num_traits::pow(two, (s - 3) as usize)
    } else {
        base / num_traits::pow(two, (3 - s) as usize)
    }
}

/// Canonical candidate braids for `(s, n)` together with the bound.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub s: i64,
    pub n: i64,
    /// Candidates grouped by block period `c = n/d`.
    pub by_period: BTreeMap<usize, BTreeSet<SignVectors>>,
    pub bound: BigRational,
}

impl Enumeration {
    pub fn count(&self) -> usize {
        self.all().len()
    }

    pub fn all(&self) -> BTreeSet<SignVectors> {
        self.by_period.values().flatten().cloned().collect()
    }

    pub fn words(&self) -> Vec<BraidWord> {
        self.all().iter().map(|v| v.to_word()).collect()
    }

    pub fn contains(&self, word: &BraidWord) -> Result<bool> {
        let canon = canonical_vectors(&sign_vectors(word)?);
        Ok(self.by_period.values().any(|set| set.contains(&canon)))
    }
}

fn divisors(n: i64) -> Vec<i64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Flip the sign of every `v_j` with `j >= 2` whose bit is set in `mask`.
fn flip_higher(v: &SignVectors, mask: usize) -> SignVectors {
    let mut out = v.clone();
    for (idx, row) in out.v.iter_mut().enumerate().skip(1) {
        if mask >> (idx - 1) & 1 == 1 {
            row.iter_mut().for_each(|e| *e = -*e);
        }
    }
    out
}

/// Maxima counts that represent each block period `c | n` and each class
/// `{a, −a}` of progression steps: `m = (n/c)·m'` with `m'` a unit mod `c`.
pub fn representative_maxima(n: i64) -> Vec<(usize, i64)> {
    let mut out = Vec::new();
    for c in divisors(n) {
        let d = n / c;
        if c == 1 {
            out.push((1, n));
            continue;
        }
        for mp in 1..c {
            if exact::gcd(mp, c) == 1 && mp <= c - mp {
                out.push((c as usize, d * mp));
            }
        }
    }
    out
}

/// All cylinder braids permitted by the run structure for `(s, n)`, up to
/// rotation, mirror and reversal.
///
/// Each block period `c` and step class contributes the words obtained from
/// one realizing curve (at every generic phase) by independently flipping
/// `v_2, …, v_{s−1}`; the trivial period contributes every single-block
/// power directly.
pub fn enumerate_candidates(s: i64, n: i64) -> Result<Enumeration> {
    geometry::check_star(s, n)?;
    let star = StarPolygon::new(s, n)?;
    let flips = 1usize << (s.max(2) - 2);
    let groups: Vec<(usize, BTreeSet<SignVectors>)> = representative_maxima(n)
        .into_par_iter()
        .map(|(c, m)| -> Result<(usize, BTreeSet<SignVectors>)> {
            let mut set = BTreeSet::new();
            if c == 1 {
                for signs in 0..(1usize << (s - 1)) {
                    let v = SignVectors {
                        n: n as usize,
                        v: (0..(s - 1) as usize)
                            .map(|j| vec![if signs >> j & 1 == 1 { -1 } else { 1 }; n as usize])
                            .collect(),
                    };
                    set.insert(canonical_vectors(&v));
                }
                return Ok((c, set));
            }
            for phi in geometry::generic_phases(s, n, m)? {
                let v = sign_vectors(&star.resolve(m, &phi)?.braid_word())?;
                for mask in 0..flips {
                    set.insert(canonical_vectors(&flip_higher(&v, mask)));
                }
            }
            Ok((c, set))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut by_period: BTreeMap<usize, BTreeSet<SignVectors>> = BTreeMap::new();
    for (c, set) in groups {
        by_period.entry(c).or_default().extend(set);
    }
    let e = Enumeration {
        s,
        n,
        by_period,
        bound: candidate_bound(s, n),
    };
    let count = e.count();
    if BigRational::from_integer(BigInt::from(count)) > e.bound {
        return Err(BraidError::BoundExceeded {
            count,
            bound: e.bound.to_string(),
        });
    }
    Ok(e)
}

/// Canonical braid of `Z(s, n, m)` at its generic phase for `m = 1..=m_max`.
pub fn realize_sweep(s: i64, n: i64, m_max: i64) -> Result<BTreeMap<i64, BraidWord>> {
    geometry::check_star(s, n)?;
    let star = StarPolygon::new(s, n)?;
    let out = (1..=m_max)
        .into_par_iter()
        .map(|m| {
            let phi = geometry::generic_phase(s, n, m)?;
            let word = star.resolve(m, &phi)?.braid_word();
            Ok((m, canonicalize(&word)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(strands: usize, g: &[i64]) -> BraidWord {
        BraidWord::from_signed(strands, g).unwrap()
    }

    #[test]
    fn text_round_trip() {
        let word = w(3, &[1, -2, 1]);
        assert_eq!(word.to_string(), "s1 s2^-1 s1");
        assert_eq!("s1 s2^-1 s1".parse::<BraidWord>().unwrap(), word);
        assert!("s0".parse::<BraidWord>().is_err());
        assert!("x1".parse::<BraidWord>().is_err());
        assert!("s1^2".parse::<BraidWord>().is_err());
        assert_eq!(BraidWord::parse("", Some(1)).unwrap(), BraidWord::empty(1));
        assert!(BraidWord::parse("s3", Some(3)).is_err());
    }

    #[test]
    fn permutation_and_components() {
        assert!(w(2, &[1, 1, 1]).is_knot());
        assert_eq!(w(2, &[1, 1]).components(), 2);
        assert!(w(3, &[1, -2, 1, -2]).is_knot());
        assert_eq!(w(3, &[1, -2, 1, -2, 1, -2]).components(), 3); // Borromean rings
        assert!(BraidWord::empty(1).is_knot());
    }

    #[test]
    fn sign_vector_readoff() {
        let v = sign_vectors(&w(2, &[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(v.v, vec![vec![1; 5]]);
        let m = sign_vectors(&w(2, &[1, 1, 1, 1, 1]).mirror()).unwrap();
        assert_eq!(m.v, vec![vec![-1; 5]]);
        // block layout for 4 strands is σ1 σ3 σ2
        let word = w(4, &[1, 3, -2, -1, 3, 2]);
        let v = sign_vectors(&word).unwrap();
        assert_eq!(v.n, 2);
        assert_eq!(v.vector(2), &[-1, 1]);
        assert_eq!(v.to_word(), word);
        assert!(sign_vectors(&w(4, &[1, 2, 3])).is_err());
        assert!(sign_vectors(&w(3, &[1, 2, 1])).is_err());
    }

    #[test]
    fn canonical_orbit() {
        let pos = w(3, &[1, 2, 1, 2, 1, 2]);
        assert_eq!(canonicalize(&pos).unwrap(), pos);
        let word = w(3, &[1, -2, -1, -2, 1, 2, -1, 2]);
        let c = canonicalize(&word).unwrap();
        assert_eq!(canonicalize(&word.mirror()).unwrap(), c);
        let v = sign_vectors(&word).unwrap();
        assert_eq!(canonicalize(&v.rotated(1).to_word()).unwrap(), c);
        assert_eq!(canonicalize(&v.reversed().to_word()).unwrap(), c);
        assert_eq!(v.reversed().reversed(), v);
    }

    #[test]
    fn critical_index_arithmetic() {
        assert_eq!(critical_from_start(2, 11, 9), Critical::Crossings(2, 3));
        let c = critical_from_start(1, 8, 3);
        assert_eq!(c, Critical::Pairs([(1, 5), (6, 2)]));
        assert!(!c.pairs_overlap());
        // n/d = 4: b - a + 2a = b + a
        let c4 = critical_from_start(1, 4, 1);
        assert_eq!(c4, Critical::Pairs([(1, 3), (4, 2)]));
        assert!(critical_crossings(&[1, 1, 1, 1, 1], 5, 2).is_err());
    }

    #[test]
    fn bound_values() {
        assert_eq!(candidate_bound(2, 5), BigRational::from_integer(3.into()));
        assert_eq!(candidate_bound(3, 7), BigRational::from_integer(8.into()));
        assert_eq!(candidate_bound(2, 7), BigRational::from_integer(4.into()));
        assert_eq!(candidate_bound(4, 9), BigRational::from_integer(20.into()));
    }

    #[test]
    fn step_solves_congruence() {
        assert_eq!(progression_step(3, 11, 4), Some(9));
        assert_eq!(progression_step(2, 5, 5), None);
    }
}
