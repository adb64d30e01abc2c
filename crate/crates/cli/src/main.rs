use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use focksim_cli::config::parse_config;
use focksim_cli::error::CliError;
use focksim_cli::report::CheckResult;
use focksim_cli::scenario::{default_config, registry};
use focksim_cli::run_to_file;

/// Truncated-Fock-space quantum optics scenarios with golden-value checks.
#[derive(Parser)]
#[command(name = "focksim", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario from a config file and/or --key=value overrides
    Run {
        /// Path to a key=value config file ('#' starts a comment)
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides of the form --key=value (applied after the file)
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        overrides: Vec<String>,
    },
    /// Print the scenario catalog
    List,
    /// Run every scenario at its default parameters and verify golden values
    Check {
        /// Directory the CSV files are written into
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

fn print_checks(scenario: &str, path: &Path, checks: &[CheckResult]) -> bool {
    println!("scenario {scenario}: wrote {}", path.display());
    let mut all_passed = true;
    for check in checks {
        println!("  {check}");
        all_passed &= check.passed;
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    println!("  {passed}/{} checks passed", checks.len());
    all_passed
}

fn run(config: Option<PathBuf>, overrides: Vec<String>) -> Result<bool, CliError> {
    let file_text = match &config {
        Some(path) => Some(std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?),
        None => None,
    };
    let cfg = parse_config(file_text.as_deref(), &overrides)?;
    let name = cfg.scenario.clone().unwrap_or_default();
    let (path, checks) = run_to_file(&cfg, Path::new("."))?;
    Ok(print_checks(&name, &path, &checks))
}

fn list() {
    println!("{:<18} description", "scenario");
    for scenario in registry() {
        println!("{:<18} {}", scenario.name(), scenario.summary());
        println!("{:<21} requires: {}", "", scenario.required_keys().join(", "));
        let defaults: Vec<String> = scenario
            .defaults()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        println!("{:<21} defaults: {}", "", defaults.join(" "));
    }
}

fn check(out_dir: &Path) -> Result<bool, CliError> {
    std::fs::create_dir_all(out_dir).map_err(|source| CliError::Io {
        path: out_dir.display().to_string(),
        source,
    })?;
    let mut all_passed = true;
    for scenario in registry() {
        let cfg = default_config(scenario.as_ref())?;
        let (path, checks) = run_to_file(&cfg, out_dir)?;
        all_passed &= print_checks(scenario.name(), &path, &checks);
    }
    Ok(all_passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run { config, overrides } => run(config, overrides),
        Command::List => {
            list();
            Ok(true)
        }
        Command::Check { out_dir } => check(&out_dir),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
