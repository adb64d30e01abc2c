//! The g²(0) / mean-photon-number table for the three reference states.

use num_complex::Complex64 as C64;

use focksim::hilbert::{number_state, FockSpace};
use focksim::observables::{expectation, g2_zero};
use focksim::operators::number_operator;
use focksim::stategen::{coherent_state, thermal_state};

use crate::config::ScenarioConfig;
use crate::csvout::CsvDocument;
use crate::error::{CliError, Result};
use crate::report::CheckResult;
use crate::scenario::{wrap_sim, Scenario, ScenarioOutcome};

const DEFAULT_ALPHA: f64 = 1.7320508075688772; // √3
const DEFAULT_NTH: f64 = 0.85;

pub struct G2Table;

impl Scenario for G2Table {
    fn name(&self) -> &'static str {
        "g2-table"
    }

    fn summary(&self) -> &'static str {
        "mean photon number and g2(0) for |4>, a coherent state, and a thermal state"
    }

    fn required_keys(&self) -> &'static [&'static str] {
        &["dim"]
    }

    fn defaults(&self) -> Vec<(&'static str, String)> {
        vec![
            ("dim", "25".into()),
            ("alpha", DEFAULT_ALPHA.to_string()),
            ("n_th", DEFAULT_NTH.to_string()),
        ]
    }

    fn csv_columns(&self) -> &'static [&'static str] {
        &["state", "mean_n", "g2"]
    }

    fn run(&self, cfg: &ScenarioConfig) -> Result<ScenarioOutcome> {
        if cfg.dim() < 7 {
            return Err(CliError::Config(
                "g2-table needs dim >= 7 to hold |4> and its two-photon moments".into(),
            ));
        }
        let space = FockSpace::new(cfg.dim()).map_err(wrap_sim(self.name()))?;
        let alpha = cfg.alpha.unwrap_or(DEFAULT_ALPHA);
        let n_th = cfg.n_th.unwrap_or(DEFAULT_NTH);
        let n_op = number_operator(space);

        let ket4 = number_state(space, 4).map_err(wrap_sim(self.name()))?;
        let coh = coherent_state(space, C64::new(alpha, 0.0));
        let th = thermal_state(space, n_th).map_err(wrap_sim(self.name()))?;

        let err = wrap_sim(self.name());
        let mean_number = expectation(&n_op, &ket4).map_err(&err)?.re;
        let g2_number = g2_zero(&ket4).map_err(&err)?;
        let mean_coherent = expectation(&n_op, &coh).map_err(&err)?.re;
        let g2_coherent = g2_zero(&coh).map_err(&err)?;
        let mean_thermal = expectation(&n_op, &th).map_err(&err)?.re;
        let g2_thermal = g2_zero(&th).map_err(&err)?;

        let mut csv = CsvDocument::new(self.csv_columns());
        csv.push_row(vec!["number_4".into(), mean_number.into(), g2_number.into()]);
        csv.push_row(vec![
            "coherent".into(),
            mean_coherent.into(),
            g2_coherent.into(),
        ]);
        csv.push_row(vec!["thermal".into(), mean_thermal.into(), g2_thermal.into()]);

        let mut checks = vec![
            CheckResult::deviation("mean_number_4", mean_number, 4.0, 1e-12),
            CheckResult::deviation("g2_number_4", g2_number, 0.75, 1e-9),
        ];
        if alpha == DEFAULT_ALPHA && cfg.dim() >= 20 {
            checks.push(CheckResult::deviation(
                "mean_coherent",
                mean_coherent,
                3.0,
                1e-4,
            ));
            checks.push(CheckResult::deviation("g2_coherent", g2_coherent, 1.0, 1e-3));
        }
        if n_th == DEFAULT_NTH && cfg.dim() >= 20 {
            checks.push(CheckResult::deviation(
                "mean_thermal",
                mean_thermal,
                0.85,
                1e-3,
            ));
            checks.push(CheckResult::deviation("g2_thermal", g2_thermal, 2.0, 5e-3));
        }
        Ok(ScenarioOutcome { csv, checks })
    }
}
