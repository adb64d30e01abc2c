//! Open-system scenarios: the dissipative atom-cavity master equation and
//! its Monte-Carlo wavefunction counterpart.

use focksim::dissipative::{
    integrate_master, integrate_master_observed, mcwf_ensemble, DecayChannel,
};
use focksim::dynamics::TimeGrid;
use focksim::hilbert::{
    density_from_pure, number_state, partial_trace, CompositeSpace, FockSpace, QubitSpace,
};
use focksim::operators::{
    annihilation, atomic_operators, composite_basis_state, jc_hamiltonian, tensor_op,
    ModelParams, Operator,
};

use crate::config::ScenarioConfig;
use crate::csvout::CsvDocument;
use crate::error::Result;
use crate::report::CheckResult;
use crate::scenario::{wrap_sim, Scenario, ScenarioOutcome};

struct OpenSystem {
    h: Operator,
    channels: Vec<DecayChannel>,
    e0: focksim::hilbert::StateVector,
    space: CompositeSpace,
}

fn build_open_system(cfg: &ScenarioConfig, scenario: &'static str) -> Result<OpenSystem> {
    let err = wrap_sim(scenario);
    let f = FockSpace::new(cfg.dim()).map_err(&err)?;
    let params = ModelParams {
        g: cfg.g(),
        kappa: cfg.kappa(),
        gamma: cfg.gamma_or_default(),
        omega_f: cfg.omega_or_default(),
        omega_0: cfg.omega0_or_default(),
        ..Default::default()
    };
    let h = jc_hamiltonian(f, &params);
    let mut channels = vec![DecayChannel::new(
        tensor_op(&Operator::identity(QubitSpace), &annihilation(f)),
        params.kappa,
    )
    .map_err(&err)?];
    if params.gamma > 0.0 {
        let (_, _, sminus) = atomic_operators();
        channels.push(
            DecayChannel::new(tensor_op(&sminus, &Operator::identity(f)), params.gamma)
                .map_err(&err)?,
        );
    }
    let space = CompositeSpace::pair(QubitSpace, f);
    let e0 = composite_basis_state(&space, &[0, 0]).map_err(&err)?;
    Ok(OpenSystem {
        h,
        channels,
        e0,
        space,
    })
}

fn is_fig4_defaults(cfg: &ScenarioConfig) -> bool {
    cfg.g() == 0.1
        && cfg.kappa() == 0.05
        && cfg.gamma_or_default() == 0.0
        && cfg.omega_or_default() == cfg.omega0_or_default()
}

pub struct Lindblad;

impl Scenario for Lindblad {
    fn name(&self) -> &'static str {
        "lindblad"
    }

    fn summary(&self) -> &'static str {
        "master-equation decay of an excited atom in a lossy cavity (RK4)"
    }

    fn required_keys(&self) -> &'static [&'static str] {
        &["dim", "g", "kappa", "dt", "t_max"]
    }

    fn defaults(&self) -> Vec<(&'static str, String)> {
        vec![
            ("dim", "10".into()),
            ("g", "0.1".into()),
            ("kappa", "0.05".into()),
            ("gamma", "0".into()),
            ("dt", "0.1".into()),
            ("t_max", "150".into()),
        ]
    }

    fn csv_columns(&self) -> &'static [&'static str] {
        &["t", "p_e", "p_e_reduced"]
    }

    fn run(&self, cfg: &ScenarioConfig) -> Result<ScenarioOutcome> {
        let err = wrap_sim(self.name());
        let sys = build_open_system(cfg, self.name())?;
        let grid = TimeGrid::new(cfg.dt(), cfg.t_max()).map_err(&err)?;
        let rho0 = density_from_pure(&sys.e0).map_err(&err)?;

        let mut max_trace_dev: f64 = 0.0;
        let mut max_herm: f64 = 0.0;
        let mut reduced_pe = Vec::with_capacity(grid.samples());
        let series = integrate_master_observed(
            &rho0,
            &sys.h,
            &sys.channels,
            &grid,
            std::slice::from_ref(&sys.e0),
            1.0,
            |_, _, rho| {
                max_trace_dev = max_trace_dev.max((rho.trace().re - 1.0).abs());
                max_herm = max_herm.max(rho.hermiticity_error());
                let atom = partial_trace(rho, &sys.space, 0)
                    .expect("composite space matches by construction");
                reduced_pe.push(atom.entries()[[0, 0]].re);
            },
        )
        .map_err(&err)?;
        let pe = series.column("p0").unwrap();

        let mut csv = CsvDocument::new(self.csv_columns());
        for (k, &t) in grid.times().iter().enumerate() {
            csv.push_row(vec![t.into(), pe[k].into(), reduced_pe[k].into()]);
        }

        let proj_dev = (0..grid.samples())
            .map(|k| (pe[k] - reduced_pe[k]).abs())
            .fold(0.0f64, f64::max);
        let mut checks = vec![
            CheckResult::at_most("trace_preserved", max_trace_dev, 1e-8),
            CheckResult::at_most("hermiticity", max_herm, 1e-8),
            CheckResult::at_most("projector_consistency", proj_dev, 1e-8),
        ];
        if is_fig4_defaults(cfg) && cfg.t_max() >= 150.0 {
            checks.push(CheckResult::at_most(
                "decay_to_ground",
                pe[grid.samples() - 1],
                0.02,
            ));
        }

        // Independent oracle: single-mode pure decay, P₁(t) = e^{−κt}.
        if cfg.kappa() * cfg.dt() <= 0.01 {
            let sm = FockSpace::new(5).map_err(&err)?;
            let one = number_state(sm, 1).map_err(&err)?;
            let decay = integrate_master(
                &density_from_pure(&one).map_err(&err)?,
                &Operator::zeros(sm),
                &[DecayChannel::new(annihilation(sm), cfg.kappa()).map_err(&err)?],
                &grid,
                std::slice::from_ref(&one),
                1.0,
            )
            .map_err(&err)?;
            let p1 = decay.column("p0").unwrap();
            let worst = grid
                .times()
                .iter()
                .enumerate()
                .map(|(k, &t)| (p1[k] - (-cfg.kappa() * t).exp()).abs())
                .fold(0.0f64, f64::max);
            checks.push(CheckResult::at_most("pure_decay_oracle", worst, 1e-6));
        }
        Ok(ScenarioOutcome { csv, checks })
    }
}

pub struct Mcwf;

impl Scenario for Mcwf {
    fn name(&self) -> &'static str {
        "mcwf"
    }

    fn summary(&self) -> &'static str {
        "quantum-jump ensemble of the lossy atom-cavity system vs the master equation"
    }

    fn required_keys(&self) -> &'static [&'static str] {
        &["dim", "g", "kappa", "dt", "t_max", "n_traj", "master_seed"]
    }

    fn defaults(&self) -> Vec<(&'static str, String)> {
        vec![
            ("dim", "10".into()),
            ("g", "0.1".into()),
            ("kappa", "0.05".into()),
            ("gamma", "0".into()),
            ("dt", "0.005".into()),
            ("t_max", "150".into()),
            ("n_traj", "500".into()),
            ("master_seed", "12345".into()),
        ]
    }

    fn csv_columns(&self) -> &'static [&'static str] {
        &["t", "p_e_mean", "p_e_stderr"]
    }

    fn run(&self, cfg: &ScenarioConfig) -> Result<ScenarioOutcome> {
        let err = wrap_sim(self.name());
        let sys = build_open_system(cfg, self.name())?;
        let grid = TimeGrid::new(cfg.dt(), cfg.t_max()).map_err(&err)?;

        let ensemble = mcwf_ensemble(
            &sys.e0,
            &sys.h,
            &sys.channels,
            &grid,
            std::slice::from_ref(&sys.e0),
            cfg.n_traj(),
            cfg.master_seed(),
            1.0,
        )
        .map_err(&err)?;
        let mean = ensemble.mean.column("p0").unwrap();
        let stderr = ensemble.stderr.column("p0").unwrap();

        let mut csv = CsvDocument::new(self.csv_columns());
        for (k, &t) in grid.times().iter().enumerate() {
            csv.push_row(vec![t.into(), mean[k].into(), stderr[k].into()]);
        }

        let range_dev = mean
            .iter()
            .map(|&p| (-p).max(p - 1.0).max(0.0))
            .fold(0.0f64, f64::max);
        let mut checks = vec![CheckResult::at_most(
            "mean_within_probability_range",
            range_dev,
            1e-9,
        )];

        // Statistical agreement with the master equation, at the golden
        // ensemble size and grid.
        if is_fig4_defaults(cfg) && cfg.n_traj() == 500 && cfg.dt() == 0.005 {
            let master = integrate_master(
                &density_from_pure(&sys.e0).map_err(&err)?,
                &sys.h,
                &sys.channels,
                &grid,
                std::slice::from_ref(&sys.e0),
                1.0,
            )
            .map_err(&err)?;
            let pe_me = master.column("p0").unwrap();
            let mut pointwise: f64 = 0.0;
            let mut total = 0.0;
            for k in 0..grid.samples() {
                let dev = (mean[k] - pe_me[k]).abs();
                pointwise = pointwise.max(dev);
                total += dev;
            }
            checks.push(CheckResult::at_most("pointwise_vs_master", pointwise, 0.1));
            checks.push(CheckResult::at_most(
                "time_avg_vs_master",
                total / grid.samples() as f64,
                0.03,
            ));
        }
        Ok(ScenarioOutcome { csv, checks })
    }
}
