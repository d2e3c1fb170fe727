//! Knot table lookup.

use std::io::Read;

use cylknot_core::invariants::{self, InvariantSet};
use cylknot_core::LaurentPoly;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::CliError;

const BUILTIN: &str = include_str!("../data/knot_table.csv");

#[derive(Debug, Deserialize)]
struct RawRow {
    name: String,
    alex_offset: i64,
    alex_coeffs: String,
    det: String,
    signature: i64,
    jones: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotTableRow {
    pub name: String,
    pub alexander: LaurentPoly,
    pub det: BigInt,
    pub signature: i64,
    pub jones: Option<LaurentPoly>,
}

impl KnotTableRow {
    fn from_raw(raw: RawRow, line: usize) -> Result<Self, CliError> {
        let bad = |what: String| CliError::table(format!("row {line} ({}): {what}", raw.name));
        let coeffs = raw
            .alex_coeffs
            .split_whitespace()
            .map(|c| c.parse::<BigInt>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| bad(format!("alex_coeffs: {e}")))?;
        let alexander = LaurentPoly::new(raw.alex_offset, coeffs);
        let det: BigInt = raw.det.trim().parse().map_err(|e| bad(format!("det: {e}")))?;
        let recomputed = invariants::determinant(&alexander);
        if recomputed != det {
            return Err(bad(format!("det {det} but |Δ(−1)| = {recomputed}")));
        }
        let jones = match raw.jones.trim() {
            "" => None,
            text => Some(text.parse().map_err(|e| bad(format!("jones: {e:?}")))?),
        };
        Ok(KnotTableRow {
            name: raw.name,
            alexander,
            det,
            signature: raw.signature,
            jones,
        })
    }

    /// Some(mirror) if every invariant present on both sides agrees,
    /// directly (`false`) or after mirroring (`true`).
    pub fn matches(&self, inv: &InvariantSet) -> Option<bool> {
        if self.alexander != inv.alexander || self.det != inv.det {
            return None;
        }
        let jones_ok = |j: Option<LaurentPoly>| match (&self.jones, j) {
            (Some(a), Some(b)) => *a == b,
            _ => true,
        };
        if self.signature == inv.signature && jones_ok(inv.jones.clone()) {
            return Some(false);
        }
        if self.signature == -inv.signature && jones_ok(inv.jones.as_ref().map(|j| j.invert_variable())) {
            return Some(true);
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Match {
    pub name: String,
    /// The input is the mirror image of the tabulated knot.
    pub mirror: bool,
}

#[derive(Debug, Clone)]
pub struct KnotTable {
    pub rows: Vec<KnotTableRow>,
}

impl KnotTable {
    pub fn builtin() -> Self {
        Self::from_reader(BUILTIN.as_bytes()).expect("built-in knot table is valid")
    }

    pub fn from_reader<R: Read>(reader: R) -> Result<Self, CliError> {
        let mut rdr = csv::Reader::from_reader(reader);
        let headers = rdr.headers().map_err(|e| CliError::table(e.to_string()))?;
        let expected = ["name", "alex_offset", "alex_coeffs", "det", "signature", "jones"];
        if headers.iter().ne(expected.iter().copied()) {
            return Err(CliError::table(format!(
                "header must be {}",
                expected.join(",")
            )));
        }
        let mut rows = Vec::new();
        for (i, rec) in rdr.deserialize::<RawRow>().enumerate() {
            let raw = rec.map_err(|e| CliError::table(e.to_string()))?;
            rows.push(KnotTableRow::from_raw(raw, i + 2)?);
        }
        Ok(KnotTable { rows })
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self, CliError> {
        let file = std::fs::File::open(path)
            .map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
        Self::from_reader(file)
    }

    /// Every row whose invariants all agree with `inv`.
    pub fn identify(&self, inv: &InvariantSet) -> Vec<Match> {
        self.rows
            .iter()
            .filter_map(|row| {
                row.matches(inv).map(|mirror| Match {
                    name: row.name.clone(),
                    mirror,
                })
            })
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<&KnotTableRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cylknot_core::BraidWord;

    #[test]
    fn builtin_rows_parse() {
        let t = KnotTable::builtin();
        assert_eq!(t.get("4_1").unwrap().det, BigInt::from(5));
        assert_eq!(t.get("8_10").unwrap().det, BigInt::from(27));
        assert_eq!(t.rows.len(), 18);
    }

    #[test]
    fn bad_det_is_rejected() {
        let csv = "name,alex_offset,alex_coeffs,det,signature,jones\nx,-1,1 -1 1,5,2,\n";
        assert!(KnotTable::from_reader(csv.as_bytes()).is_err());
    }

    #[test]
    fn identifies_both_trefoils() {
        let t = KnotTable::builtin();
        let w: BraidWord = "s1 s1 s1".parse().unwrap();
        let inv = InvariantSet::compute(&w, 30).unwrap();
        assert_eq!(t.identify(&inv), vec![Match { name: "t(2,3)".into(), mirror: false }]);
        assert_eq!(t.identify(&inv.mirror()), vec![Match { name: "t(2,3)".into(), mirror: true }]);
    }

    #[test]
    fn every_row_identifies_itself() {
        let t = KnotTable::builtin();
        for row in &t.rows {
            let inv = InvariantSet {
                alexander: row.alexander.clone(),
                det: row.det.clone(),
                signature: row.signature,
                arf: invariants::arf(&row.det).unwrap(),
                jones: row.jones.clone(),
            };
            let names: Vec<_> = t.identify(&inv).into_iter().map(|m| m.name).collect();
            assert_eq!(names, vec![row.name.clone()]);
        }
    }
}
