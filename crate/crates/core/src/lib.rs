//! Cylinder billiard curves as closed braids.
//!
//! A billiard curve `Z(s, n, m, φ)` projects onto a `{n/s}` star polygon in
//! the unit disk and moves up and down with `m` maxima. This crate builds the
//! projected diagram with exact crossing parameters, reads it as a closed
//! braid on `s` strands, and computes the classical invariants used to test
//! which knots arise this way.

pub mod exact;
pub mod geometry;
pub mod laurent;
pub mod braid;
pub mod invariants;
pub mod conditions;
pub mod rosette;

pub use braid::{
    canonicalize, enumerate_candidates, extract_braid, realize_sweep, sign_vectors,
    verify_run_structure, BraidError, BraidWord, Diagram, Letter, SignVectors, StarPolygon,
};
pub use conditions::{check_necessary, exclusion_check, ConditionReport, KnotDossier};
pub use exact::{Interval, PrecisionExhausted};
pub use geometry::{CurveParams, ExactParam, GeometryError, SymbolicParam};
pub use invariants::{InvariantError, InvariantSet};
pub use laurent::LaurentPoly;
pub use rosette::{verify_rosette, RosetteParams, RosetteReport};
