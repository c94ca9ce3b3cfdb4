//! Run manifests: what was run, with which configuration, and where the output went.

use std::ffi::OsString;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cli::Cli;

/// Record of one CLI invocation. Re-running `argv` reproduces the outputs byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    /// Command line as given.
    pub argv: Vec<String>,
    /// Subcommand path, such as `recover dt-study`.
    pub command: String,
    /// Parsed configuration, including global flags.
    pub config: Value,
    /// Seed, when one was given.
    pub seed: Option<u64>,
    /// Library version.
    pub version: String,
    /// Wall time in seconds.
    pub wall_time: f64,
    /// Output files.
    pub outputs: Vec<String>,
    /// Exit code.
    pub exit_code: i32,
}

impl RunManifest {
    /// Builds a manifest for a finished run.
    pub fn new(argv: &[OsString], cli: &Cli, wall_time: f64, outputs: Vec<String>, exit_code: i32) -> Self {
        let config = serde_json::to_value(cli).expect("serializable arguments");
        Self {
            argv: argv.iter().map(|a| a.to_string_lossy().into_owned()).collect(),
            command: cli.command.path().to_string(),
            config,
            seed: cli.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time,
            outputs,
            exit_code,
        }
    }
}
