//! Scenario-driven front end over `tsra-core`: loads a JSON scenario, runs one
//! pipeline and returns a JSON [`Report`].

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tsra_core::cocycles::CocycleError;
use tsra_core::exact::ExactError;
use tsra_core::groups::GroupError;
use tsra_core::modcat::ModcatError;
use tsra_core::symplectic::SymplecticError;
use tsra_core::twisted_algebra::AlgebraError;

pub mod catalog;
mod commands;
pub mod scenario;

pub use catalog::{bundled_scenario, list_catalog, BUNDLED};
pub use commands::{run_scenario, Command};
pub use scenario::{Scenario, Setup};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("scenario does not parse: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error("unknown command {0:?}")]
    UnknownCommand(String),
    #[error(transparent)]
    Core(#[from] tsra_core::Error),
}

macro_rules! core_error {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Core(e.into())
            }
        })*
    };
}
core_error!(ExactError, GroupError, CocycleError, AlgebraError, SymplecticError, ModcatError);

pub const EXIT_PASS: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;

fn algebra_failure(e: &AlgebraError) -> bool {
    !matches!(
        e,
        AlgebraError::IndexOutOfRange { .. }
            | AlgebraError::NotClassFunction { .. }
            | AlgebraError::EmptySubset
            | AlgebraError::Exact(_)
            | AlgebraError::Cocycle(_)
    )
}

fn symplectic_failure(e: &SymplecticError) -> bool {
    match e {
        SymplecticError::ReflectionInvariant { .. } => true,
        SymplecticError::Algebra(a) => algebra_failure(a),
        _ => false,
    }
}

impl CliError {
    /// True when the input was well formed but a mathematical check failed.
    pub fn is_verification_failure(&self) -> bool {
        let CliError::Core(e) = self else { return false };
        match e {
            tsra_core::Error::Algebra(a) => algebra_failure(a),
            tsra_core::Error::Symplectic(s) => symplectic_failure(s),
            tsra_core::Error::Modcat(m) => match m {
                ModcatError::NoMatch { .. }
                | ModcatError::AlphaInconsistent { .. }
                | ModcatError::AlphaNotUnique { .. }
                | ModcatError::DimensionRatio
                | ModcatError::VanishingFails { .. }
                | ModcatError::UnsupportedTransfer(_)
                | ModcatError::TrivialFusion
                | ModcatError::Verification(_) => true,
                ModcatError::Algebra(a) => algebra_failure(a),
                ModcatError::Symplectic(s) => symplectic_failure(s),
                _ => false,
            },
            _ => false,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.is_verification_failure() {
            EXIT_VERIFICATION
        } else {
            EXIT_INPUT
        }
    }
}

/// Flags shared by every command; unset values fall back to the scenario,
/// then to the defaults (seed 0, tolerance 1e-8).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
    /// Worker threads for per-block work; 0 or unset lets rayon decide.
    pub jobs: Option<usize>,
    pub timings: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub scenario: String,
    pub scenario_sha256: String,
    pub seed: u64,
    pub tolerance: f64,
    pub inputs: serde_json::Value,
    pub passed: bool,
    /// All reported values are exact cyclotomic numbers.
    pub exact: bool,
    pub results: serde_json::Value,
    /// Seconds per phase, only with `--timings`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_PASS
        } else {
            EXIT_VERIFICATION
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Raw scenario text and the name it was loaded under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioSource {
    pub name: String,
    pub text: String,
}

impl ScenarioSource {
    /// Reads a file, or falls back to a bundled scenario of that name.
    pub fn load(path_or_name: &str) -> Result<ScenarioSource, CliError> {
        let path = Path::new(path_or_name);
        if path.exists() {
            let text = std::fs::read_to_string(path)
                .map_err(|source| CliError::Io { path: path_or_name.to_string(), source })?;
            let name = path.file_name().map_or_else(|| path_or_name.to_string(), |f| f.to_string_lossy().into_owned());
            return Ok(ScenarioSource { name, text });
        }
        match bundled_scenario(path_or_name) {
            Some((name, text)) => Ok(ScenarioSource { name: name.to_string(), text: text.to_string() }),
            None => Err(CliError::Io {
                path: path_or_name.to_string(),
                source: std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or bundled scenario"),
            }),
        }
    }
}
