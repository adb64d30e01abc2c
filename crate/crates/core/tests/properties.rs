//! Property tests for the structural invariants: index conventions, tensor
//! algebra, purity, and constructor cross-checks.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use proptest::prelude::*;

use focksim::hilbert::{
    density_from_pure, number_state, partial_trace, tensor_state, CompositeSpace, FockSpace,
    StateVector,
};
use focksim::observables::{mean_photon_number, photon_distribution};
use focksim::operators::{tensor_op, Operator};
use focksim::stategen::{coherent_state, nsfcs, truncation_check};

fn complex_amp() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| C64::new(re, im))
}

fn random_state(dim: usize) -> impl Strategy<Value = StateVector> {
    proptest::collection::vec(complex_amp(), dim).prop_filter_map("norm too small", move |amps| {
        let space = FockSpace::new(dim).unwrap();
        let psi = StateVector::new(space, Array1::from(amps)).unwrap();
        (psi.norm() > 1e-3).then_some(psi)
    })
}

fn random_operator(dim: usize) -> impl Strategy<Value = Operator> {
    proptest::collection::vec(complex_amp(), dim * dim).prop_map(move |entries| {
        let space = FockSpace::new(dim).unwrap();
        let m = Array2::from_shape_vec((dim, dim), entries).unwrap();
        Operator::new(space, m).unwrap()
    })
}

proptest! {
    #[test]
    fn tensor_flat_index_law(
        d1 in 1usize..6,
        d2 in 1usize..6,
        n1 in 0usize..6,
        n2 in 0usize..6,
    ) {
        prop_assume!(n1 < d1 && n2 < d2);
        let s1 = FockSpace::new(d1).unwrap();
        let s2 = FockSpace::new(d2).unwrap();
        let product = tensor_state(
            &number_state(s1, n1).unwrap(),
            &number_state(s2, n2).unwrap(),
        );
        let flat = n1 * d2 + n2;
        for (i, amp) in product.amplitudes().iter().enumerate() {
            let expect = if i == flat { 1.0 } else { 0.0 };
            prop_assert_eq!(amp.re, expect);
            prop_assert_eq!(amp.im, 0.0);
        }
    }

    #[test]
    fn normalize_is_idempotent(psi in random_state(7)) {
        let once = psi.normalized().unwrap();
        let twice = once.normalized().unwrap();
        for (a, b) in once.amplitudes().iter().zip(twice.amplitudes().iter()) {
            prop_assert!((a - b).norm() <= 1e-15);
        }
    }

    #[test]
    fn pure_density_is_a_projector(psi in random_state(6)) {
        let rho = density_from_pure(&psi.normalized().unwrap()).unwrap();
        let m = rho.entries();
        let sq = m.dot(m);
        for (a, b) in sq.iter().zip(m.iter()) {
            prop_assert!((a - b).norm() <= 1e-10);
        }
        prop_assert!((rho.trace() - C64::new(1.0, 0.0)).norm() <= 1e-12);
        prop_assert!(rho.hermiticity_error() <= 1e-12);
    }

    #[test]
    fn partial_trace_of_product_recovers_factors(
        a in random_state(3),
        b in random_state(4),
    ) {
        let a = a.normalized().unwrap();
        let b = b.normalized().unwrap();
        let joint = density_from_pure(&tensor_state(&a, &b)).unwrap();
        let space = CompositeSpace::pair(FockSpace::new(3).unwrap(), FockSpace::new(4).unwrap());

        let rho_a = partial_trace(&joint, &space, 0).unwrap();
        let expect_a = density_from_pure(&a).unwrap();
        for (x, y) in rho_a.entries().iter().zip(expect_a.entries().iter()) {
            prop_assert!((x - y).norm() <= 1e-12);
        }

        let rho_b = partial_trace(&joint, &space, 1).unwrap();
        let expect_b = density_from_pure(&b).unwrap();
        for (x, y) in rho_b.entries().iter().zip(expect_b.entries().iter()) {
            prop_assert!((x - y).norm() <= 1e-12);
        }
    }

    #[test]
    fn kron_mixed_product_property(
        da in 2usize..5,
        db in 2usize..5,
        seed in 0u64..1000,
    ) {
        // (A⊗B)(C⊗D) = AC ⊗ BD on random factors.
        let mk = |dim: usize, salt: u64| {
            let mut rng = focksim::numerics::RngStream::derived(seed, salt);
            let m = Array2::from_shape_fn((dim, dim), |_| {
                C64::new(rng.uniform() - 0.5, rng.uniform() - 0.5)
            });
            Operator::new(FockSpace::new(dim).unwrap(), m).unwrap()
        };
        let (a, c) = (mk(da, 0), mk(da, 1));
        let (b, d) = (mk(db, 2), mk(db, 3));
        let lhs = &tensor_op(&a, &b) * &tensor_op(&c, &d);
        let rhs = tensor_op(&(&a * &c), &(&b * &d));
        prop_assert!((&lhs - &rhs).max_abs() <= 1e-12);
    }

    #[test]
    fn operator_adjoint_is_involutive(op in random_operator(5)) {
        let back = op.adjoint().adjoint();
        prop_assert!((&back - &op).max_abs() == 0.0);
    }

    #[test]
    fn nsfcs_matches_direct_formula(
        alpha_re in -1.5f64..1.5,
        alpha_im in -1.5f64..1.5,
        m in 0usize..15,
    ) {
        // Independent route: explicit powers and factorials, filter, normalize.
        let d = 15;
        let alpha = C64::new(alpha_re, alpha_im);
        prop_assume!(alpha.norm() > 1e-3);
        let space = FockSpace::new(d).unwrap();

        let mut direct: Vec<C64> = (0..d)
            .map(|n| {
                let fact: f64 = (1..=n).map(|k| k as f64).product();
                (-alpha.norm_sqr() / 2.0).exp() * alpha.powu(n as u32) / fact.sqrt()
            })
            .collect();
        direct[m] = C64::new(0.0, 0.0);
        let norm = direct.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-6);

        let via_module = nsfcs(space, alpha, m).unwrap();
        prop_assert_eq!(via_module.amplitudes()[m], C64::new(0.0, 0.0));
        for (n, z) in direct.iter().enumerate() {
            prop_assert!((via_module.amplitudes()[n] - z / norm).norm() <= 1e-12);
        }
    }

    #[test]
    fn coherent_mean_photon_number_converges(alpha in 0.2f64..2.0) {
        let d = 30;
        let space = FockSpace::new(d).unwrap();
        let coh = coherent_state(space, C64::new(alpha, 0.0));
        let report = truncation_check(&coh, 1e-6);
        prop_assume!(report.adequate);
        let mean = mean_photon_number(&coh).unwrap();
        prop_assert!((mean - alpha * alpha).abs() <= 1e-4);
    }

    #[test]
    fn distribution_total_is_one_minus_deficit(psi in random_state(8)) {
        let psi = psi.normalized().unwrap();
        let dist = photon_distribution(&psi);
        prop_assert!((dist.total() - 1.0).abs() <= 1e-10);
        for &p in dist.probabilities() {
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&p));
        }
    }
}
