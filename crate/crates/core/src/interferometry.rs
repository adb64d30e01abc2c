//! Two-mode linear optics: beam splitter, phase shifter, and the
//! Mach–Zehnder pipeline.
//!
//! The beam splitter is U = exp(iθ(a†⊗b + a⊗b†)); θ = π/4 is 50:50, with
//! cos²θ / sin²θ the reflectivity / transmissivity. The MZI is
//! U_BS·U_φ·U_BS with the phase shifter e^{iφ·a†a} on mode a — mirror
//! phases contribute only a global phase and are omitted.

use ndarray::Array1;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hilbert::{CompositeSpace, FockSpace, Space, StateVector};
use crate::numerics::unitary_exp;
use crate::operators::{annihilation, creation, number_operator, tensor_op, Operator};

/// Two bosonic modes, mode a leftmost: flat index = n_a·dim_b + n_b.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoModeSpace {
    a: FockSpace,
    b: FockSpace,
}

/// Which mode an operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    A,
    B,
}

impl TwoModeSpace {
    pub fn new(a: FockSpace, b: FockSpace) -> Self {
        TwoModeSpace { a, b }
    }

    /// Both modes with the same truncation.
    pub fn symmetric(mode_dim: FockSpace) -> Self {
        TwoModeSpace {
            a: mode_dim,
            b: mode_dim,
        }
    }

    pub fn mode_a(&self) -> FockSpace {
        self.a
    }

    pub fn mode_b(&self) -> FockSpace {
        self.b
    }

    pub fn composite(&self) -> CompositeSpace {
        CompositeSpace::pair(self.a, self.b)
    }

    pub fn dim(&self) -> usize {
        self.a.dim() * self.b.dim()
    }

    /// Basis state |n_a, n_b⟩.
    pub fn basis_state(&self, n_a: usize, n_b: usize) -> Result<StateVector> {
        let space = self.composite();
        let flat = space.flat_index(&[n_a, n_b])?;
        let mut amps = Array1::zeros(space.dim());
        amps[flat] = C64::new(1.0, 0.0);
        StateVector::new(space, amps)
    }
}

/// Beam-splitter unitary exp(iθ(a†⊗b + a⊗b†)). Requires equal mode
/// dimensions so the photon exchange stays inside the truncation symmetric.
pub fn beam_splitter(space: &TwoModeSpace, theta: f64) -> Result<Operator> {
    if space.a.dim() != space.b.dim() {
        return Err(Error::InvalidDimension(format!(
            "beam splitter needs equal mode dimensions, got {} and {}",
            space.a.dim(),
            space.b.dim()
        )));
    }
    let a = annihilation(space.a);
    let ad = creation(space.a);
    let b = annihilation(space.b);
    let bd = creation(space.b);
    // Hermitian generator; exp(iθ·G) through the eigen route is unitary.
    let generator = &tensor_op(&ad, &b) + &tensor_op(&a, &bd);
    unitary_exp(&generator, C64::new(0.0, theta))
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Closed-form beam-splitter output for the input |n, m⟩:
///
///   U_BS|n,m⟩ = Σ_{k,k'} C(n,k)·C(m,k')·(cosθ)^{m+k−k'}·(i sinθ)^{n−k+k'}
///               · √((k+k')!(n+m−k−k')!/(n!m!)) |k+k', n+m−k−k'⟩.
pub fn bs_output_analytic(
    n: usize,
    m: usize,
    theta: f64,
    space: &TwoModeSpace,
) -> Result<StateVector> {
    let min_dim = space.a.dim().min(space.b.dim());
    if n + m > min_dim - 1 {
        return Err(Error::Domain(format!(
            "input |{n},{m}⟩ spreads over {} photons but the truncation holds only {}",
            n + m,
            min_dim - 1
        )));
    }
    let composite = space.composite();
    let mut amps = Array1::<C64>::zeros(composite.dim());
    let cos = theta.cos();
    let i_sin = C64::new(0.0, theta.sin());
    let denom = factorial(n) * factorial(m);
    for k in 0..=n {
        for kp in 0..=m {
            let out_a = k + kp;
            let out_b = n + m - k - kp;
            let coeff = binomial(n, k)
                * binomial(m, kp)
                * cos.powi((m + k - kp) as i32)
                * (factorial(out_a) * factorial(out_b) / denom).sqrt();
            let amp = i_sin.powu((n - k + kp) as u32) * coeff;
            amps[composite.flat_index(&[out_a, out_b])?] += amp;
        }
    }
    StateVector::new(composite, amps)
}

/// Phase shifter exp(iφ·a†a) on one mode; diagonal, built directly.
pub fn phase_shifter(space: &TwoModeSpace, phi: f64, mode: Mode) -> Operator {
    let (da, db) = (space.a.dim(), space.b.dim());
    let composite = space.composite();
    let mut op = Operator::zeros(Space::Composite(composite));
    for na in 0..da {
        for nb in 0..db {
            let n = match mode {
                Mode::A => na,
                Mode::B => nb,
            };
            let idx = na * db + nb;
            op.entries_mut()[[idx, idx]] = C64::from_polar(1.0, phi * n as f64);
        }
    }
    op
}

/// Output of one Mach–Zehnder pass.
#[derive(Debug, Clone)]
pub struct MziResult {
    pub output: StateVector,
    /// |⟨1,0|ψ_out⟩|²
    pub p10: f64,
    /// |⟨0,1|ψ_out⟩|²
    pub p01: f64,
    /// ⟨a†a⟩ at the a output port
    pub intensity_a: f64,
    /// ⟨b†b⟩ at the b output port
    pub intensity_b: f64,
}

/// Mach–Zehnder interferometer: 50:50 splitter, phase φ on mode a, 50:50
/// splitter. Errors if the input would push photons past the truncation
/// (the splitter mixes all |k, N−k⟩ with N the total photon number).
pub fn mzi(input: &StateVector, phi: f64, space: &TwoModeSpace) -> Result<MziResult> {
    let composite = space.composite();
    if *input.space() != Space::Composite(composite.clone()) {
        return Err(Error::SpaceMismatch(
            "MZI input is not over the given two-mode space".into(),
        ));
    }
    if !input.is_normalized() {
        return Err(Error::Precondition(format!(
            "MZI input must be normalized (norm = {})",
            input.norm()
        )));
    }
    // Populated total photon number must fit both mode truncations.
    let db = space.b.dim();
    let mut max_total = 0usize;
    for (flat, amp) in input.amplitudes().iter().enumerate() {
        if amp.norm() > 0.0 {
            max_total = max_total.max(flat / db + flat % db);
        }
    }
    let min_dim = space.a.dim().min(db);
    if max_total > min_dim - 1 {
        return Err(Error::Domain(format!(
            "MZI input holds {max_total} photons but the truncation supports only {}",
            min_dim - 1
        )));
    }

    let u_bs = beam_splitter(space, std::f64::consts::FRAC_PI_4)?;
    let u_phi = phase_shifter(space, phi, Mode::A);
    let output = u_bs.apply(&u_phi.apply(&u_bs.apply(input)?)?)?;

    let s10 = space.basis_state(1, 0)?;
    let s01 = space.basis_state(0, 1)?;
    let p10 = s10.inner(&output)?.norm_sqr();
    let p01 = s01.inner(&output)?.norm_sqr();

    let num_a = tensor_op(&number_operator(space.a), &Operator::identity(space.b));
    let num_b = tensor_op(&Operator::identity(space.a), &number_operator(space.b));
    let intensity_a = crate::observables::expectation(&num_a, &output)?.re;
    let intensity_b = crate::observables::expectation(&num_b, &output)?.re;

    Ok(MziResult {
        output,
        p10,
        p01,
        intensity_a,
        intensity_b,
    })
}
