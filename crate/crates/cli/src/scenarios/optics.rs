//! Linear-optics scenarios: a beam splitter on |2,0⟩ and the Mach–Zehnder
//! fringe sweep.

use std::f64::consts::{FRAC_PI_4, PI};

use focksim::hilbert::FockSpace;
use focksim::interferometry::{beam_splitter, bs_output_analytic, mzi, TwoModeSpace};
use focksim::observables::expectation;
use focksim::operators::{number_operator, tensor_op, Operator};

use crate::config::ScenarioConfig;
use crate::csvout::CsvDocument;
use crate::error::{CliError, Result};
use crate::report::CheckResult;
use crate::scenario::{wrap_sim, Scenario, ScenarioOutcome};

/// Photons fed into mode a of the beam-splitter scenario (the |2,0⟩ figure).
const BS_INPUT_PHOTONS: usize = 2;

pub struct BeamSplitter;

impl Scenario for BeamSplitter {
    fn name(&self) -> &'static str {
        "beamsplitter"
    }

    fn summary(&self) -> &'static str {
        "two-photon input |2,0> on a beam splitter of angle theta_bs"
    }

    fn required_keys(&self) -> &'static [&'static str] {
        &["dim", "theta_bs"]
    }

    fn defaults(&self) -> Vec<(&'static str, String)> {
        vec![("dim", "10".into()), ("theta_bs", FRAC_PI_4.to_string())]
    }

    fn csv_columns(&self) -> &'static [&'static str] {
        &["n", "p"]
    }

    fn run(&self, cfg: &ScenarioConfig) -> Result<ScenarioOutcome> {
        if cfg.dim() < BS_INPUT_PHOTONS + 1 {
            return Err(CliError::Config(format!(
                "beamsplitter feeds in {BS_INPUT_PHOTONS} photons and needs dim >= {}",
                BS_INPUT_PHOTONS + 1
            )));
        }
        let err = wrap_sim(self.name());
        let theta = cfg.theta_bs();
        let space = TwoModeSpace::symmetric(FockSpace::new(cfg.dim()).map_err(&err)?);
        let u = beam_splitter(&space, theta).map_err(&err)?;
        let input = space.basis_state(BS_INPUT_PHOTONS, 0).map_err(&err)?;
        let out = u.apply(&input).map_err(&err)?;

        // Distribution over the N-photon anti-diagonal |n, N−n⟩.
        let mut csv = CsvDocument::new(self.csv_columns());
        let mut probs = Vec::new();
        for n in 0..=BS_INPUT_PHOTONS {
            let basis = space.basis_state(n, BS_INPUT_PHOTONS - n).map_err(&err)?;
            let p = basis.inner(&out).map_err(&err)?.norm_sqr();
            probs.push(p);
            csv.push_row(vec![n.into(), p.into()]);
        }

        let num_a = tensor_op(
            &number_operator(space.mode_a()),
            &Operator::identity(space.mode_b()),
        );
        let num_b = tensor_op(
            &Operator::identity(space.mode_a()),
            &number_operator(space.mode_b()),
        );
        let intensity_a = expectation(&num_a, &out).map_err(&err)?.re;
        let intensity_b = expectation(&num_b, &out).map_err(&err)?.re;

        let udu = &u.adjoint() * &u;
        let unitarity = (&udu - &Operator::identity(u.space().clone())).max_abs();

        let via_formula =
            bs_output_analytic(BS_INPUT_PHOTONS, 0, theta, &space).map_err(&err)?;
        let box_dev = (0..out.dim())
            .map(|i| (out.amplitudes()[i] - via_formula.amplitudes()[i]).norm())
            .fold(0.0f64, f64::max);

        let mut checks = vec![
            CheckResult::at_most("unitarity", unitarity, 1e-10),
            CheckResult::at_most("boxed_formula", box_dev, 1e-10),
        ];
        if theta == FRAC_PI_4 {
            checks.push(CheckResult::deviation("p20", probs[2], 0.25, 1e-9));
            checks.push(CheckResult::deviation("p11", probs[1], 0.50, 1e-9));
            checks.push(CheckResult::deviation("p02", probs[0], 0.25, 1e-9));
            checks.push(CheckResult::deviation("intensity_a", intensity_a, 1.0, 1e-9));
            checks.push(CheckResult::deviation("intensity_b", intensity_b, 1.0, 1e-9));
        }
        Ok(ScenarioOutcome { csv, checks })
    }
}

pub struct MziSweep;

impl Scenario for MziSweep {
    fn name(&self) -> &'static str {
        "mzi-sweep"
    }

    fn summary(&self) -> &'static str {
        "single-photon Mach-Zehnder fringe: phi swept 0..2*pi in steps of pi/20"
    }

    fn required_keys(&self) -> &'static [&'static str] {
        &["dim"]
    }

    fn defaults(&self) -> Vec<(&'static str, String)> {
        vec![("dim", "10".into())]
    }

    fn csv_columns(&self) -> &'static [&'static str] {
        &["phi", "p10", "p01", "i_a", "i_b"]
    }

    fn run(&self, cfg: &ScenarioConfig) -> Result<ScenarioOutcome> {
        if cfg.dim() < 2 {
            return Err(CliError::Config(
                "mzi-sweep needs dim >= 2 for the single photon".into(),
            ));
        }
        let err = wrap_sim(self.name());
        let space = TwoModeSpace::symmetric(FockSpace::new(cfg.dim()).map_err(&err)?);
        let input = space.basis_state(1, 0).map_err(&err)?;

        let mut csv = CsvDocument::new(self.csv_columns());
        let mut worst_fringe: f64 = 0.0;
        let mut worst_i_a: f64 = 0.0;
        let mut worst_complete: f64 = 0.0;
        let mut worst_intensity: f64 = 0.0;
        for k in 0..=40 {
            let phi = k as f64 * PI / 20.0;
            let r = mzi(&input, phi, &space).map_err(&err)?;
            csv.push_row(vec![
                phi.into(),
                r.p10.into(),
                r.p01.into(),
                r.intensity_a.into(),
                r.intensity_b.into(),
            ]);
            let expect = 0.5 * (1.0 - phi.cos());
            worst_fringe = worst_fringe.max((r.p10 - expect).abs());
            worst_i_a = worst_i_a.max((r.intensity_a - expect).abs());
            worst_complete = worst_complete.max((r.p10 + r.p01 - 1.0).abs());
            worst_intensity = worst_intensity
                .max((r.intensity_a - r.p10).abs())
                .max((r.intensity_b - r.p01).abs());
        }

        let checks = vec![
            CheckResult::at_most("fringe_formula", worst_fringe, 1e-9),
            CheckResult::at_most("intensity_fringe", worst_i_a, 1e-9),
            CheckResult::at_most("completeness", worst_complete, 1e-9),
            CheckResult::at_most("intensity_equals_probability", worst_intensity, 1e-9),
        ];
        Ok(ScenarioOutcome { csv, checks })
    }
}
