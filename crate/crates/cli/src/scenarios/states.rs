//! State-distribution scenarios: coherent and thermal photon statistics,
//! and the truncation-dimension sweep.

use num_complex::Complex64 as C64;

use focksim::hilbert::FockSpace;
use focksim::observables::photon_distribution;
use focksim::stategen::{coherent_state, thermal_state, truncation_check};

use crate::config::ScenarioConfig;
use crate::csvout::CsvDocument;
use crate::error::Result;
use crate::report::CheckResult;
use crate::scenario::{wrap_sim, Scenario, ScenarioOutcome};

/// Tolerance used by the truncation-report scenario's adequacy flag.
pub const TRUNCATION_TOL: f64 = 1e-3;

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// Poisson probability e^{−a²}·a^{2n}/n! by an independent log-space route.
fn poisson(a: f64, n: usize) -> f64 {
    if a == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    (-a * a + 2.0 * n as f64 * a.ln() - ln_factorial(n)).exp()
}

pub struct CoherentDist;

impl Scenario for CoherentDist {
    fn name(&self) -> &'static str {
        "coherent-dist"
    }

    fn summary(&self) -> &'static str {
        "photon-number distribution of a coherent state |alpha>"
    }

    fn required_keys(&self) -> &'static [&'static str] {
        &["dim", "alpha"]
    }

    fn defaults(&self) -> Vec<(&'static str, String)> {
        vec![("dim", "15".into()), ("alpha", "2".into())]
    }

    fn csv_columns(&self) -> &'static [&'static str] {
        &["n", "p"]
    }

    fn run(&self, cfg: &ScenarioConfig) -> Result<ScenarioOutcome> {
        let space = FockSpace::new(cfg.dim()).map_err(wrap_sim(self.name()))?;
        let alpha = cfg.alpha();
        let state = coherent_state(space, C64::new(alpha, 0.0));
        let dist = photon_distribution(&state);

        let mut csv = CsvDocument::new(self.csv_columns());
        for (n, &p) in dist.probabilities().iter().enumerate() {
            csv.push_row(vec![n.into(), p.into()]);
        }

        let worst = dist
            .probabilities()
            .iter()
            .enumerate()
            .map(|(n, &p)| (p - poisson(alpha.abs(), n)).abs())
            .fold(0.0f64, f64::max);
        let mut checks = vec![CheckResult::at_most("poisson_closed_form", worst, 1e-9)];

        if cfg.dim() == 15 && alpha == 2.0 {
            checks.push(CheckResult::deviation(
                "p4_printed_value",
                dist.probabilities()[4],
                0.1954,
                1e-4,
            ));
        }
        Ok(ScenarioOutcome { csv, checks })
    }
}

pub struct ThermalDist;

impl Scenario for ThermalDist {
    fn name(&self) -> &'static str {
        "thermal-dist"
    }

    fn summary(&self) -> &'static str {
        "photon-number distribution of a thermal state with mean n_th"
    }

    fn required_keys(&self) -> &'static [&'static str] {
        &["dim", "n_th"]
    }

    fn defaults(&self) -> Vec<(&'static str, String)> {
        vec![("dim", "15".into()), ("n_th", "0.5".into())]
    }

    fn csv_columns(&self) -> &'static [&'static str] {
        &["n", "p"]
    }

    fn run(&self, cfg: &ScenarioConfig) -> Result<ScenarioOutcome> {
        let space = FockSpace::new(cfg.dim()).map_err(wrap_sim(self.name()))?;
        let n_th = cfg.n_th();
        let rho = thermal_state(space, n_th).map_err(wrap_sim(self.name()))?;
        let dist = photon_distribution(&rho);

        let mut csv = CsvDocument::new(self.csv_columns());
        for (n, &p) in dist.probabilities().iter().enumerate() {
            csv.push_row(vec![n.into(), p.into()]);
        }

        let worst = dist
            .probabilities()
            .iter()
            .enumerate()
            .map(|(n, &p)| {
                let geometric = n_th.powi(n as i32) / (1.0 + n_th).powi(n as i32 + 1);
                (p - geometric).abs()
            })
            .fold(0.0f64, f64::max);
        let mut checks = vec![CheckResult::at_most("geometric_closed_form", worst, 1e-12)];

        if n_th == 0.5 {
            checks.push(CheckResult::deviation(
                "p0_printed_value",
                dist.probabilities()[0],
                2.0 / 3.0,
                1e-9,
            ));
        }
        Ok(ScenarioOutcome { csv, checks })
    }
}

pub struct TruncationReport;

impl Scenario for TruncationReport {
    fn name(&self) -> &'static str {
        "truncation-report"
    }

    fn summary(&self) -> &'static str {
        "coherent-state norm deficit for every dimension up to dim (adequacy at 1e-3)"
    }

    fn required_keys(&self) -> &'static [&'static str] {
        &["dim", "alpha"]
    }

    fn defaults(&self) -> Vec<(&'static str, String)> {
        vec![("dim", "15".into()), ("alpha", "2".into())]
    }

    fn csv_columns(&self) -> &'static [&'static str] {
        &["d", "norm", "deficit", "adequate"]
    }

    fn run(&self, cfg: &ScenarioConfig) -> Result<ScenarioOutcome> {
        let alpha = C64::new(cfg.alpha(), 0.0);
        let mut csv = CsvDocument::new(self.csv_columns());
        let mut norms = Vec::with_capacity(cfg.dim());
        let mut min_deficit = f64::INFINITY;
        for d in 1..=cfg.dim() {
            let space = FockSpace::new(d).map_err(wrap_sim(self.name()))?;
            let state = coherent_state(space, alpha);
            let report = truncation_check(&state, TRUNCATION_TOL);
            min_deficit = min_deficit.min(report.norm_or_trace_deficit);
            norms.push(state.norm());
            csv.push_row(vec![
                d.into(),
                state.norm().into(),
                report.norm_or_trace_deficit.into(),
                report.adequate.into(),
            ]);
        }

        let mut checks = vec![CheckResult::at_least(
            "deficit_nonnegative",
            min_deficit,
            -1e-12,
        )];
        if cfg.alpha() == 2.0 {
            if cfg.dim() >= 10 {
                checks.push(CheckResult::deviation(
                    "norm_at_d10",
                    norms[9],
                    0.9959,
                    5e-4,
                ));
            }
            if cfg.dim() >= 15 {
                checks.push(CheckResult::at_least("norm_at_d15", norms[14], 0.99999));
            }
        }
        Ok(ScenarioOutcome { csv, checks })
    }
}
