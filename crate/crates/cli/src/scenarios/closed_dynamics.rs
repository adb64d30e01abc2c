//! Closed-system scenarios: Rabi oscillation, collapse and revival of the
//! atomic inversion, and photon hopping between two coupled cavities.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use focksim::dynamics::{
    atomic_inversion_analytic, coupled_cavity_analytic, evolve, evolve_expectation, TimeGrid,
};
use focksim::hilbert::{excited_state, number_state, tensor_state, CompositeSpace, FockSpace, QubitSpace};
use focksim::numerics::unitary_exp;
use focksim::operators::{
    atomic_operators, composite_basis_state, coupled_cavity_hamiltonian, jc_hamiltonian,
    tensor_op, ModelParams, Operator,
};
use focksim::stategen::coherent_state;

use crate::config::ScenarioConfig;
use crate::csvout::CsvDocument;
use crate::error::{CliError, Result};
use crate::report::CheckResult;
use crate::scenario::{wrap_sim, Scenario, ScenarioOutcome};

/// Initial photon number of the Rabi scenario (the |e,4⟩ figure).
const RABI_N: usize = 4;

pub struct JcRabi;

impl Scenario for JcRabi {
    fn name(&self) -> &'static str {
        "jc-rabi"
    }

    fn summary(&self) -> &'static str {
        "resonant vacuum-field Rabi oscillation from |e,4>: P_e and P_g over time"
    }

    fn required_keys(&self) -> &'static [&'static str] {
        &["dim", "g", "dt", "t_max"]
    }

    fn defaults(&self) -> Vec<(&'static str, String)> {
        vec![
            ("dim", "10".into()),
            ("g", "0.1".into()),
            ("dt", "0.1".into()),
            ("t_max", "30".into()),
        ]
    }

    fn csv_columns(&self) -> &'static [&'static str] {
        &["t", "p_e", "p_g"]
    }

    fn run(&self, cfg: &ScenarioConfig) -> Result<ScenarioOutcome> {
        if cfg.dim() < RABI_N + 2 {
            return Err(CliError::Config(format!(
                "jc-rabi starts in |e,{RABI_N}> and needs dim >= {}",
                RABI_N + 2
            )));
        }
        let err = wrap_sim(self.name());
        let f = FockSpace::new(cfg.dim()).map_err(&err)?;
        let params = ModelParams {
            g: cfg.g(),
            omega_f: cfg.omega_or_default(),
            omega_0: cfg.omega0_or_default(),
            ..Default::default()
        };
        let h = jc_hamiltonian(f, &params);
        let space = CompositeSpace::pair(QubitSpace, f);
        let en = composite_basis_state(&space, &[0, RABI_N]).map_err(&err)?;
        let gn1 = composite_basis_state(&space, &[1, RABI_N + 1]).map_err(&err)?;
        let grid = TimeGrid::new(cfg.dt(), cfg.t_max()).map_err(&err)?;

        let series = evolve(&en, &h, &grid, &[en.clone(), gn1], 1.0).map_err(&err)?;
        let pe = series.column("p0").unwrap();
        let pg = series.column("p1").unwrap();

        let mut csv = CsvDocument::new(self.csv_columns());
        for (k, &t) in grid.times().iter().enumerate() {
            csv.push_row(vec![t.into(), pe[k].into(), pg[k].into()]);
        }

        let completeness = (0..grid.samples())
            .map(|k| (pe[k] + pg[k] - 1.0).abs())
            .fold(0.0f64, f64::max);
        let mut checks = vec![CheckResult::at_most("completeness", completeness, 1e-9)];

        let resonant = params.omega_f == params.omega_0;
        if resonant {
            let omega_rabi = cfg.g() * ((RABI_N + 1) as f64).sqrt();
            let worst = grid
                .times()
                .iter()
                .enumerate()
                .map(|(k, &t)| (pe[k] - (omega_rabi * t).cos().powi(2)).abs())
                .fold(0.0f64, f64::max);
            checks.push(CheckResult::at_most("rabi_cos2_formula", worst, 1e-6));

            let t_transfer = PI / (2.0 * omega_rabi);
            if t_transfer <= cfg.t_max() && cfg.g() == 0.1 && cfg.dt() == 0.1 {
                let k_near = (t_transfer / grid.dt()).round() as usize;
                checks.push(CheckResult::at_least("full_transfer", pg[k_near], 0.999));
            }
        }
        Ok(ScenarioOutcome { csv, checks })
    }
}

pub struct CollapseRevival;

impl Scenario for CollapseRevival {
    fn name(&self) -> &'static str {
        "collapse-revival"
    }

    fn summary(&self) -> &'static str {
        "atomic inversion <sigma_z(t)> for an excited atom in a coherent field"
    }

    fn required_keys(&self) -> &'static [&'static str] {
        &["dim", "alpha", "g", "dt", "t_max"]
    }

    fn defaults(&self) -> Vec<(&'static str, String)> {
        vec![
            ("dim", "50".into()),
            ("alpha", "3".into()),
            ("g", "0.1".into()),
            ("dt", "0.1".into()),
            ("t_max", "500".into()),
        ]
    }

    fn csv_columns(&self) -> &'static [&'static str] {
        &["t", "w"]
    }

    fn run(&self, cfg: &ScenarioConfig) -> Result<ScenarioOutcome> {
        let err = wrap_sim(self.name());
        let f = FockSpace::new(cfg.dim()).map_err(&err)?;
        let alpha = C64::new(cfg.alpha(), 0.0);
        let params = ModelParams {
            g: cfg.g(),
            omega_f: cfg.omega_or_default(),
            omega_0: cfg.omega0_or_default(),
            ..Default::default()
        };
        let h = jc_hamiltonian(f, &params);
        let psi0 = tensor_state(&excited_state(), &coherent_state(f, alpha));
        let (sz, _, _) = atomic_operators();
        let obs = tensor_op(&sz, &Operator::identity(f));
        let grid = TimeGrid::new(cfg.dt(), cfg.t_max()).map_err(&err)?;

        let series = evolve_expectation(&psi0, &h, &grid, &obs, 1.0).map_err(&err)?;
        let w = series.column("obs").unwrap();

        let mut csv = CsvDocument::new(self.csv_columns());
        for (k, &t) in grid.times().iter().enumerate() {
            csv.push_row(vec![t.into(), w[k].into()]);
        }

        let mut checks = Vec::new();
        if params.omega_f == params.omega_0 {
            let worst = grid
                .times()
                .iter()
                .enumerate()
                .map(|(k, &t)| {
                    (w[k] - atomic_inversion_analytic(alpha, cfg.g(), t, cfg.dim() - 1)).abs()
                })
                .fold(0.0f64, f64::max);
            checks.push(CheckResult::at_most("analytic_series", worst, 1e-3));
        }
        if cfg.alpha() == 3.0 && cfg.g() == 0.1 && cfg.t_max() >= 40.0 {
            let k0 = (20.0 / cfg.dt()).round() as usize;
            let k1 = (40.0 / cfg.dt()).round() as usize;
            let plateau =
                (k0..=k1).map(|k| w[k].abs()).sum::<f64>() / (k1 - k0 + 1) as f64;
            checks.push(CheckResult::at_most("collapse_plateau", plateau, 0.05));
        }
        Ok(ScenarioOutcome { csv, checks })
    }
}

pub struct CoupledCavities;

impl Scenario for CoupledCavities {
    fn name(&self) -> &'static str {
        "coupled-cavities"
    }

    fn summary(&self) -> &'static str {
        "single-photon exchange between two coupled cavities from |1,0>"
    }

    fn required_keys(&self) -> &'static [&'static str] {
        &["dim", "J", "dt", "t_max"]
    }

    fn defaults(&self) -> Vec<(&'static str, String)> {
        vec![
            ("dim", "10".into()),
            ("J", "0.1".into()),
            ("dt", "0.1".into()),
            ("t_max", "50".into()),
        ]
    }

    fn csv_columns(&self) -> &'static [&'static str] {
        &["t", "p10", "p01"]
    }

    fn run(&self, cfg: &ScenarioConfig) -> Result<ScenarioOutcome> {
        if cfg.dim() < 2 {
            return Err(CliError::Config(
                "coupled-cavities needs dim >= 2 for the single photon".into(),
            ));
        }
        let err = wrap_sim(self.name());
        let f = FockSpace::new(cfg.dim()).map_err(&err)?;
        let j = cfg.j();
        let params = ModelParams {
            j,
            omega_f: cfg.omega_or_default(),
            ..Default::default()
        };
        let h = coupled_cavity_hamiltonian(f, &params);
        let space = CompositeSpace::pair(f, f);
        let s10 = composite_basis_state(&space, &[1, 0]).map_err(&err)?;
        let s01 = composite_basis_state(&space, &[0, 1]).map_err(&err)?;
        let grid = TimeGrid::new(cfg.dt(), cfg.t_max()).map_err(&err)?;

        let series = evolve(&s10, &h, &grid, &[s10.clone(), s01], 1.0).map_err(&err)?;
        let p10 = series.column("p0").unwrap();
        let p01 = series.column("p1").unwrap();

        let mut csv = CsvDocument::new(self.csv_columns());
        for (k, &t) in grid.times().iter().enumerate() {
            csv.push_row(vec![t.into(), p10[k].into(), p01[k].into()]);
        }

        let worst = grid
            .times()
            .iter()
            .enumerate()
            .map(|(k, &t)| (p10[k] - (j * t).cos().powi(2)).abs())
            .fold(0.0f64, f64::max);
        let mut checks = vec![CheckResult::at_most("hopping_cos2_formula", worst, 1e-6)];

        if j == 0.1 && cfg.dt() == 0.1 && cfg.t_max() >= PI / (2.0 * j) {
            let k_near = (PI / (2.0 * j) / cfg.dt()).round() as usize;
            checks.push(CheckResult::at_least("full_transfer", p01[k_near], 0.9999));
        }

        // Binomial closed form against one-shot matrix exponentials.
        let n_cap = 4.min(cfg.dim() - 1);
        let mut worst_formula: f64 = 0.0;
        for n_total in 0..=n_cap {
            for n in 0..=n_total {
                for jt in [0.3, 0.7, 1.1] {
                    let t = jt / j;
                    let u = unitary_exp(&h, C64::new(0.0, -t)).map_err(&err)?;
                    let init = tensor_state(
                        &number_state(f, n_total - n).map_err(&err)?,
                        &number_state(f, n).map_err(&err)?,
                    );
                    let via_matrix = u.apply(&init).map_err(&err)?;
                    let via_formula =
                        coupled_cavity_analytic(f, n_total, n, j, params.omega_f, t)
                            .map_err(&err)?;
                    for i in 0..via_matrix.dim() {
                        worst_formula = worst_formula.max(
                            (via_matrix.amplitudes()[i] - via_formula.amplitudes()[i]).norm(),
                        );
                    }
                }
            }
        }
        checks.push(CheckResult::at_most("binomial_oracle", worst_formula, 1e-10));

        Ok(ScenarioOutcome { csv, checks })
    }
}
