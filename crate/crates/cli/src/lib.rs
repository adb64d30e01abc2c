//! Scenario runner for the focksim library.
//!
//! Each scenario reproduces one reference result as a CSV time series (or
//! table) plus a set of golden-value checks. Scenarios live behind the
//! [`scenario::Scenario`] trait, are registered by name, and get selected
//! at runtime from a `key=value` config file and/or `--key=value` flags.

pub mod config;
pub mod csvout;
pub mod error;
pub mod report;
pub mod scenario;
pub mod scenarios;

use std::path::{Path, PathBuf};

use config::ScenarioConfig;
use error::{CliError, Result};
use report::CheckResult;
use scenario::{execute, Scenario, ScenarioOutcome};

/// Where a scenario's CSV lands: explicit `out_path`, else `<name>.csv`
/// inside `base_dir`.
pub fn resolve_out_path(cfg: &ScenarioConfig, scenario: &dyn Scenario, base_dir: &Path) -> PathBuf {
    match &cfg.out_path {
        Some(p) => p.clone(),
        None => base_dir.join(format!("{}.csv", scenario.name())),
    }
}

/// Runs the configured scenario, writes its CSV, and returns the checks.
/// Summary printing and exit status are the caller's business.
pub fn run_to_file(cfg: &ScenarioConfig, base_dir: &Path) -> Result<(PathBuf, Vec<CheckResult>)> {
    let (scenario, ScenarioOutcome { csv, checks }) = execute(cfg)?;
    let path = resolve_out_path(cfg, scenario.as_ref(), base_dir);
    std::fs::write(&path, csv.to_csv_string()).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok((path, checks))
}
