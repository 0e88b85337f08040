//! Batch runner behind the `geopursuit` binary.
//!
//! A run is described by a [`RunSpec`], built from command-line flags and an
//! optional flat `key = value` config file (flags win). Exit statuses: 0 all
//! asserted invariants pass, 1 invariant failure or illegal move, 2 usage
//! error, 3 I/O error.

mod output;
mod run;
mod spec;

pub use output::{outcome_json, svg_plot, transcript_csv, CSV_HEADER};
pub use run::{run, RunReport};
pub use spec::{
    load_run_spec, parse_domain, parse_point, parse_run_spec, parse_space, parse_strategy, Mode, Outputs, RunSpec,
    SweepGrid,
};

use std::fmt;

use thiserror::Error;

/// Where a setting came from, for error messages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Flag,
    Line(usize),
    Env,
    Default,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Flag => write!(f, "command line"),
            Source::Line(n) => write!(f, "config line {n}"),
            Source::Env => write!(f, "environment"),
            Source::Default => write!(f, "default"),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    /// `--help` or `--version` output; not a failure.
    #[error("{0}")]
    Help(String),
    #[error("{0}")]
    Usage(String),
    #[error("invalid value for `{key}` ({source_}): {msg}")]
    Parse { key: String, source_: Source, msg: String },
    #[error("missing mandatory key `{0}`")]
    Missing(String),
    #[error("{0}")]
    Engine(#[from] crate::Error),
    #[error("I/O error on {path}: {err}")]
    Io { path: String, err: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Help(_) => 0,
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Missing(_) => 2,
            CliError::Engine(crate::Error::IllegalMove { .. }) => 1,
            CliError::Engine(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

pub(crate) fn clap_err(e: clap::Error) -> CliError {
    use clap::error::ErrorKind;
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliError::Help(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    }
}

pub(crate) fn io_err(path: &std::path::Path, err: std::io::Error) -> CliError {
    CliError::Io { path: path.display().to_string(), err }
}

/// Space identifiers accepted by `--space`.
pub const SPACE_IDS: &[&str] = &["euclidean", "poincare", "sphere-cap", "river", "star", "star:<arms>"];

/// Strategy identifiers accepted by `--strategy`.
pub const STRATEGY_IDS: &[&str] = &[
    "stationary",
    "spiral",
    "spiral-ccw",
    "reverse@<k>",
    "reverse@<k>:<base>",
    "ray:<direction>",
    "flee",
    "random",
    "scripted:<path>",
];
