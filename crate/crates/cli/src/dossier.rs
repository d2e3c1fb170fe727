//! Knot dossiers for the exclusion check.
//!
//! CSV header `name,det,ribbon,periods,bridge`; `periods` is a `;`-separated
//! list of `q:λ` pairs, empty when the knot has no cyclic period.

use std::io::Read;

use cylknot_core::KnotDossier;
use serde::Deserialize;

use crate::CliError;

const BUILTIN: &str = include_str!("../data/dossiers.csv");

#[derive(Debug, Deserialize)]
struct RawDossier {
    name: String,
    det: String,
    ribbon: bool,
    periods: String,
    bridge: i64,
}

fn parse_periods(text: &str) -> Result<Vec<(i64, i64)>, String> {
    text.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (q, l) = p.split_once(':').ok_or_else(|| format!("period {p:?} is not q:λ"))?;
            let q = q.trim().parse::<i64>().map_err(|e| format!("period {p:?}: {e}"))?;
            let l = l.trim().parse::<i64>().map_err(|e| format!("period {p:?}: {e}"))?;
            Ok((q, l))
        })
        .collect()
}

pub fn from_reader<R: Read>(reader: R) -> Result<Vec<KnotDossier>, CliError> {
    let mut rdr = csv::Reader::from_reader(reader);
    let mut out = Vec::new();
    for rec in rdr.deserialize::<RawDossier>() {
        let raw = rec.map_err(|e| CliError::table(e.to_string()))?;
        let det = raw
            .det
            .trim()
            .parse()
            .map_err(|e| CliError::table(format!("{}: det: {e}", raw.name)))?;
        let periods = parse_periods(&raw.periods).map_err(|e| CliError::table(format!("{}: {e}", raw.name)))?;
        out.push(KnotDossier {
            name: raw.name,
            det,
            ribbon: raw.ribbon,
            periods,
            bridge: raw.bridge,
        });
    }
    Ok(out)
}

pub fn builtin() -> Vec<KnotDossier> {
    from_reader(BUILTIN.as_bytes()).expect("built-in dossiers are valid")
}

pub fn from_path(path: &std::path::Path) -> Result<Vec<KnotDossier>, CliError> {
    let file = std::fs::File::open(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    from_reader(file)
}
