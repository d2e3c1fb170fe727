//! Inputs shared by the benchmarks.

use cylknot_core::{extract_braid, BraidWord, CurveParams};

/// Curves of increasing size: `(s, n, m)`.
pub const CURVES: [(i64, i64, i64); 4] = [(2, 7, 3), (3, 11, 4), (4, 11, 10), (4, 21, 17)];

pub fn params(s: i64, n: i64, m: i64) -> CurveParams {
    CurveParams::generic(s, n, m).expect("benchmark curves are admissible")
}

pub fn word(s: i64, n: i64, m: i64) -> BraidWord {
    extract_braid(&params(s, n, m)).expect("generic phase")
}
