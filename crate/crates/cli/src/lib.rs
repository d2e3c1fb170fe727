//! Library side of the `cylknot` binary: argument definitions, command
//! runners, the knot table and the diagram emitters.

pub mod commands;
pub mod diagram;
pub mod dossier;
pub mod render;
pub mod table;

use serde::Serialize;

pub use commands::{run, Cli, Command};

/// A module error, reported as JSON on stderr with exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliError {
    pub error: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(kind: &'static str, message: impl Into<String>) -> Self {
        CliError {
            error: kind,
            message: message.into(),
        }
    }

    pub fn table(message: impl Into<String>) -> Self {
        Self::new("table", message)
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self::new("io", message)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("error serializes")
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.error, self.message)
    }
}

impl std::error::Error for CliError {}

macro_rules! from_module {
    ($($t:ty => $kind:literal),* $(,)?) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::new($kind, e.to_string())
            }
        })*
    };
}

from_module! {
    cylknot_core::GeometryError => "geometry",
    cylknot_core::BraidError => "braid",
    cylknot_core::InvariantError => "invariant",
    cylknot_core::conditions::ConditionError => "condition",
    cylknot_core::rosette::RosetteError => "rosette",
    serde_json::Error => "json",
    csv::Error => "csv",
}
