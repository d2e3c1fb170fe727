use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cylknot_core::braid::{self, resolve_diagram};
use cylknot_core::conditions::{self, check_necessary_with};
use cylknot_core::exact::parse_rational;
use cylknot_core::invariants::{self, InvariantSet};
use cylknot_core::rosette::{self, verify_rosette_with};
use cylknot_core::{canonicalize, enumerate_candidates, realize_sweep, BraidWord, CurveParams};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::DiagramJson;
use crate::render::render_svg;
use crate::table::{KnotTable, Match};
use crate::{dossier, CliError};

/// The rosettes `R^k_s` known to be cylinder knots, as `(s, k)`.
pub const ROSETTE_LIST: [(i64, i64); 8] = [(2, 3), (2, 5), (2, 7), (2, 9), (3, 2), (3, 4), (3, 5), (4, 3)];

fn parse_phi(text: &str) -> Result<BigRational, String> {
    parse_rational(text)
}

fn parse_word(text: &str) -> Result<BraidWord, String> {
    BraidWord::parse(text, None).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "cylknot", version, about = "Closed braids and knot invariants of cylinder billiard curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[arg(long)]
    pub s: i64,
    #[arg(long)]
    pub n: i64,
    #[arg(long)]
    pub m: i64,
    /// Phase as an exact rational `p/q`; a generic phase when omitted.
    #[arg(long, value_parser = parse_phi)]
    pub phi: Option<BigRational>,
}

impl CurveArgs {
    pub fn params(&self) -> Result<CurveParams, CliError> {
        curve_params(self.s, self.n, self.m, self.phi.clone())
    }
}

fn curve_params(s: i64, n: i64, m: i64, phi: Option<BigRational>) -> Result<CurveParams, CliError> {
    Ok(match phi {
        Some(phi) => CurveParams::new(s, n, m, phi)?,
        None => CurveParams::generic(s, n, m)?,
    })
}

/// A knot given either by a braid word or by curve parameters.
#[derive(Debug, Clone, Args)]
pub struct KnotInput {
    /// Braid word such as `s1 s2^-1 s1`.
    #[arg(long, value_parser = parse_word, conflicts_with_all = ["s", "n", "m", "phi"])]
    pub word: Option<BraidWord>,
    #[arg(long, requires = "word")]
    pub strands: Option<usize>,
    #[arg(long, required_unless_present = "word", requires_all = ["n", "m"])]
    pub s: Option<i64>,
    #[arg(long)]
    pub n: Option<i64>,
    #[arg(long)]
    pub m: Option<i64>,
    #[arg(long, value_parser = parse_phi)]
    pub phi: Option<BigRational>,
}

impl KnotInput {
    pub fn word(&self) -> Result<BraidWord, CliError> {
        if let Some(w) = &self.word {
            return Ok(match self.strands {
                Some(k) => w.with_strands(k)?,
                None => w.clone(),
            });
        }
        let (s, n, m) = (self.s.unwrap_or(0), self.n.unwrap_or(0), self.m.unwrap_or(0));
        Ok(braid::extract_braid(&curve_params(s, n, m, self.phi.clone())?)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the resolved diagram as JSON.
    Curve(CurveArgs),
    /// Emit the closed braid word.
    Braid {
        #[command(flatten)]
        input: KnotInput,
        /// Canonical representative up to rotation, mirror and reversal.
        #[arg(long)]
        canonical: bool,
    },
    /// Emit the invariant set as JSON.
    Invariants {
        #[command(flatten)]
        input: KnotInput,
        #[arg(long, default_value_t = invariants::DEFAULT_JONES_CAP)]
        cap: usize,
    },
    /// Run the ribbon screen on the factor knot; `--m-max` sweeps `m` and
    /// emits CSV.
    Check {
        #[arg(long)]
        s: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, required_unless_present = "m_max", conflicts_with = "m_max")]
        m: Option<i64>,
        #[arg(long, value_parser = parse_phi, conflicts_with = "m_max")]
        phi: Option<BigRational>,
        #[arg(long)]
        m_max: Option<i64>,
        #[arg(long, default_value_t = invariants::DEFAULT_JONES_CAP)]
        cap: usize,
        /// Coefficient bound for the `F(t)F(1/t)` search.
        #[arg(long, default_value_t = invariants::DEFAULT_COEFF_BOUND)]
        bound: i64,
    },
    /// List candidate braids for `(s, n)` and compare with the bound.
    Enumerate {
        #[arg(long)]
        s: i64,
        #[arg(long)]
        n: i64,
        /// Also check that every braid realized for `m ≤ m_max` is listed.
        #[arg(long)]
        m_max: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compare rosette closures with their cylinder realizations.
    Rosette {
        #[arg(long)]
        s: Option<i64>,
        #[arg(long, requires = "s", conflicts_with = "factor_block")]
        k: Option<i64>,
        /// Compare the long factor braid with the single alternating block.
        #[arg(long)]
        factor_block: bool,
        #[arg(long, default_value_t = invariants::DEFAULT_JONES_CAP)]
        cap: usize,
    },
    /// Match the invariants against the knot table.
    Identify {
        #[command(flatten)]
        input: KnotInput,
        /// CSV with header `name,alex_offset,alex_coeffs,det,signature,jones`.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, default_value_t = invariants::DEFAULT_JONES_CAP)]
        cap: usize,
    },
    /// Draw the projected diagram as SVG.
    Render {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide from known facts whether a knot can be a cylinder knot.
    Exclude {
        /// CSV with header `name,det,ribbon,periods,bridge`.
        #[arg(long)]
        dossier: Option<PathBuf>,
        #[arg(long)]
        name: Option<String>,
    },
}

fn json<T: Serialize>(v: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

#[derive(Serialize)]
struct Identification {
    invariants: InvariantSet,
    matches: Vec<Match>,
}

#[derive(Serialize)]
struct Candidate {
    word: String,
    block_period: usize,
}

#[derive(Serialize)]
struct Containment {
    m_max: i64,
    contained: bool,
    missing: Vec<i64>,
}

#[derive(Serialize)]
struct EnumerationJson {
    s: i64,
    n: i64,
    count: usize,
    bound: String,
    within_bound: bool,
    candidates: Vec<Candidate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    containment: Option<Containment>,
}

#[derive(Serialize)]
struct CheckRow {
    s: i64,
    n: i64,
    m: i64,
    phi: String,
    d: i64,
    factor_det: String,
    factor_signature: i64,
    factor_arf: u8,
    pass: bool,
}

/// Runs one command and returns what it prints on stdout.
pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Curve(c) => {
            let params = c.params()?;
            json(&DiagramJson::from_diagram(&params, &resolve_diagram(&params)?))
        }
        Command::Braid { input, canonical } => {
            let w = input.word()?;
            let w = if canonical { canonicalize(&w)? } else { w };
            Ok(format!("{w}\n"))
        }
        Command::Invariants { input, cap } => json(&InvariantSet::compute(&input.word()?, cap)?),
        Command::Check { s, n, m: Some(m), phi, cap, bound, .. } => {
            json(&check_necessary_with(&curve_params(s, n, m, phi)?, cap, bound)?)
        }
        Command::Check { s, n, m_max, cap, bound, .. } => {
            let m_max = m_max.unwrap_or(0);
            let rows = (1..=m_max)
                .into_par_iter()
                .map(|m| {
                    let r = check_necessary_with(&CurveParams::generic(s, n, m)?, cap, bound)?;
                    Ok(CheckRow {
                        s,
                        n,
                        m,
                        phi: r.params.phi.to_string(),
                        d: r.d,
                        factor_det: r.factor_invariants.det.to_string(),
                        factor_signature: r.factor_invariants.signature,
                        factor_arf: r.factor_invariants.arf,
                        pass: r.verdict.pass,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.serialize(row)?;
            }
            Ok(String::from_utf8(w.into_inner().map_err(|e| CliError::io(e.to_string()))?)
                .expect("csv output is utf-8"))
        }
        Command::Enumerate { s, n, m_max, format } => {
            let e = enumerate_candidates(s, n)?;
            let candidates: Vec<Candidate> = e
                .by_period
                .iter()
                .flat_map(|(&c, set)| {
                    set.iter().map(move |v| Candidate {
                        word: v.to_word().to_string(),
                        block_period: c,
                    })
                })
                .collect();
            if format == Format::Csv {
                let mut w = csv::Writer::from_writer(Vec::new());
                for c in &candidates {
                    w.serialize(c)?;
                }
                return Ok(String::from_utf8(w.into_inner().map_err(|e| CliError::io(e.to_string()))?)
                    .expect("csv output is utf-8"));
            }
            let containment = match m_max {
                Some(m_max) => {
                    let mut missing = Vec::new();
                    for (m, word) in realize_sweep(s, n, m_max)? {
                        if !e.contains(&word)? {
                            missing.push(m);
                        }
                    }
                    Some(Containment {
                        m_max,
                        contained: missing.is_empty(),
                        missing,
                    })
                }
                None => None,
            };
            let count = e.count();
            json(&EnumerationJson {
                s,
                n,
                count,
                bound: e.bound.to_string(),
                within_bound: BigRational::from_integer(count.into()) <= e.bound,
                candidates,
                containment,
            })
        }
        Command::Rosette { s, k, factor_block, cap } => {
            if factor_block {
                let list: Vec<usize> = match s {
                    Some(s) => vec![usize::try_from(s).map_err(|_| CliError::new("rosette", "s must be positive"))?],
                    None => (2..=9).collect(),
                };
                let reports = list
                    .par_iter()
                    .map(|&s| rosette::factor_block_identity_check(s))
                    .collect::<Result<Vec<_>, _>>()?;
                return json(&reports);
            }
            match (s, k) {
                (Some(s), Some(k)) => json(&verify_rosette_with(s, k, cap)?),
                (s, _) => {
                    let list: Vec<_> = ROSETTE_LIST.iter().filter(|p| s.is_none_or(|s| p.0 == s)).collect();
                    let reports = list
                        .par_iter()
                        .map(|&&(s, k)| verify_rosette_with(s, k, cap))
                        .collect::<Result<Vec<_>, _>>()?;
                    json(&reports)
                }
            }
        }
        Command::Identify { input, table, cap } => {
            let table = match table {
                Some(p) => KnotTable::from_path(&p)?,
                None => KnotTable::builtin(),
            };
            let inv = InvariantSet::compute(&input.word()?, cap)?;
            let matches = table.identify(&inv);
            json(&Identification { invariants: inv, matches })
        }
        Command::Render { curve, out } => {
            let svg = render_svg(&resolve_diagram(&curve.params()?)?);
            match out {
                Some(path) => {
                    std::fs::write(&path, svg).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(svg),
            }
        }
        Command::Exclude { dossier: path, name } => {
            let all = match path {
                Some(p) => dossier::from_path(&p)?,
                None => dossier::builtin(),
            };
            let chosen: Vec<_> = all.iter().filter(|k| name.as_ref().is_none_or(|n| &k.name == n)).collect();
            if chosen.is_empty() {
                return Err(CliError::table(format!("no dossier named {}", name.unwrap_or_default())));
            }
            json(&chosen.into_iter().map(conditions::exclusion_check).collect::<Vec<_>>())
        }
    }
}
