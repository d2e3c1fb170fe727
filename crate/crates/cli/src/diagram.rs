//! Diagram JSON.

use cylknot_core::braid::Diagram;
use cylknot_core::{CurveParams, SymbolicParam};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingJson {
    pub block: i64,
    pub level: i64,
    /// `+1` for `σ_j`, `−1` for `σ_j⁻¹`.
    pub sign: i8,
    pub t_over: SymbolicParam,
    pub t_under: SymbolicParam,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub params: CurveParams,
    pub crossings: Vec<CrossingJson>,
}

impl DiagramJson {
    pub fn from_diagram(params: &CurveParams, d: &Diagram) -> Self {
        let crossings = d
            .crossings
            .iter()
            .map(|c| {
                let (over, under) = c.over_under();
                CrossingJson {
                    block: c.block,
                    level: c.crossing.level,
                    sign: c.sign,
                    t_over: over.symbolic(),
                    t_under: under.symbolic(),
                }
            })
            .collect();
        DiagramJson {
            params: params.clone(),
            crossings,
        }
    }
}
