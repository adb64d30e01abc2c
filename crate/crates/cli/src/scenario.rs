//! The scenario registry: every runnable scenario sits behind one trait,
//! registered by name and selected at runtime from config or flags.

use crate::config::ScenarioConfig;
use crate::csvout::CsvDocument;
use crate::error::{CliError, Result};
use crate::report::CheckResult;

/// Everything a scenario run produces: its CSV document and its golden
/// checks. The driver handles file output and exit status.
pub struct ScenarioOutcome {
    pub csv: CsvDocument,
    pub checks: Vec<CheckResult>,
}

/// One runnable scenario. Implementations are pure computation over a
/// validated config; parameter-specific golden checks are included only when
/// the config matches the golden (default) parameter values, while
/// closed-form identity checks run for any parameters.
pub trait Scenario: Sync {
    /// Registry key, e.g. `jc-rabi`.
    fn name(&self) -> &'static str;

    /// One-line description for the catalog listing.
    fn summary(&self) -> &'static str;

    /// Keys that must be present in the config (besides `scenario`).
    fn required_keys(&self) -> &'static [&'static str];

    /// Default (golden) parameters, as key/value override strings.
    fn defaults(&self) -> Vec<(&'static str, String)>;

    /// CSV column labels; frozen under test.
    fn csv_columns(&self) -> &'static [&'static str];

    fn run(&self, cfg: &ScenarioConfig) -> Result<ScenarioOutcome>;
}

/// All scenarios, in catalog order.
pub fn registry() -> Vec<Box<dyn Scenario>> {
    vec![
        Box::new(crate::scenarios::states::CoherentDist),
        Box::new(crate::scenarios::states::ThermalDist),
        Box::new(crate::scenarios::photon_stats::G2Table),
        Box::new(crate::scenarios::closed_dynamics::JcRabi),
        Box::new(crate::scenarios::closed_dynamics::CollapseRevival),
        Box::new(crate::scenarios::closed_dynamics::CoupledCavities),
        Box::new(crate::scenarios::optics::BeamSplitter),
        Box::new(crate::scenarios::optics::MziSweep),
        Box::new(crate::scenarios::open_dynamics::Lindblad),
        Box::new(crate::scenarios::open_dynamics::Mcwf),
        Box::new(crate::scenarios::states::TruncationReport),
    ]
}

/// Looks a scenario up by its registry key.
pub fn find(name: &str) -> Result<Box<dyn Scenario>> {
    registry()
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| {
            CliError::Config(format!(
                "unknown scenario `{name}` (run `focksim list` for the catalog)"
            ))
        })
}

/// Validates required keys and runs the scenario named in the config.
pub fn execute(cfg: &ScenarioConfig) -> Result<(Box<dyn Scenario>, ScenarioOutcome)> {
    let name = cfg
        .scenario
        .as_deref()
        .ok_or_else(|| CliError::Config("missing required key `scenario`".into()))?;
    let scenario = find(name)?;
    for key in scenario.required_keys() {
        if !cfg.has(key) {
            return Err(CliError::Config(format!(
                "scenario `{name}` requires key `{key}`"
            )));
        }
    }
    let outcome = scenario.run(cfg)?;
    debug_assert_eq!(outcome.csv.columns(), scenario.csv_columns());
    Ok((scenario, outcome))
}

/// Config assembled from a scenario's defaults (used by `check`).
pub fn default_config(scenario: &dyn Scenario) -> Result<ScenarioConfig> {
    let mut overrides = vec![format!("--scenario={}", scenario.name())];
    overrides.extend(
        scenario
            .defaults()
            .iter()
            .map(|(k, v)| format!("--{k}={v}")),
    );
    crate::config::parse_config(None, &overrides)
}

pub(crate) fn wrap_sim(scenario: &'static str) -> impl Fn(focksim::Error) -> CliError {
    move |source| CliError::Scenario {
        scenario: scenario.to_string(),
        source,
    }
}
