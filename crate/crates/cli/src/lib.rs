//! Command-line front end: game spec files, the `simulate`, `verify`,
//! `equilibrium` and `payoff` commands, and their table / JSON output.

pub mod args;
pub mod commands;
pub mod output;
pub mod spec_file;

use thiserror::Error;

pub use args::Cli;
pub use commands::run;
pub use spec_file::{GameSpecFile, SpecError};

/// Exit codes: 0 pass, 1 verification failure, 2 input parse error,
/// 3 invariant violation in inputs.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const VERIFICATION_FAILED: i32 = 1;
    pub const PARSE_ERROR: i32 = 2;
    pub const INVARIANT_VIOLATION: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("cannot parse {what} {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
    #[error("invalid input: {0}")]
    Invariant(ewl_core::Error),
    #[error(transparent)]
    Core(ewl_core::Error),
}

impl From<ewl_core::Error> for CliError {
    fn from(e: ewl_core::Error) -> Self {
        use ewl_core::Error as E;
        match e {
            E::NonUnitStrategy { .. }
            | E::ProbabilityOutOfRange(_)
            | E::InvalidMixture(_)
            | E::Arity { .. }
            | E::PlayerOutOfRange { .. }
            | E::NoSamples => CliError::Invariant(e),
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Spec(_) | CliError::Parse { .. } => exit::PARSE_ERROR,
            CliError::Invariant(_) => exit::INVARIANT_VIOLATION,
            CliError::Core(_) => exit::VERIFICATION_FAILED,
        }
    }
}

/// Shipped example games, compiled in so `verify` can run without paths.
pub fn shipped_games() -> Vec<(&'static str, GameSpecFile)> {
    [
        ("dilemma3", include_str!("../../../games/dilemma3.json")),
        ("zero_sum2", include_str!("../../../games/zero_sum2.json")),
        ("constant3", include_str!("../../../games/constant3.json")),
    ]
    .into_iter()
    .map(|(name, text)| (name, GameSpecFile::parse(text).expect("shipped game spec is valid")))
    .collect()
}
