//! Randomized structural invariants.
//!
//! Where the end-to-end suite checks named systems at fixed tolerances,
//! these properties check the algebra underneath over randomized inputs:
//! affine composition of coefficients, linearity of the integral
//! operators, which kernels may depend on the boundary map, the sparsity
//! topology of the projected mass matrix, time-signal translation and
//! differentiation identities, and agreement between time integrators
//! that share nothing but the projected system.

#[allow(dead_code)]
mod common;

use std::sync::Arc;

use common::{random_system, random_well_posed_b};
use pie_spectral::chebyshev::ChebSeries;
use pie_spectral::conversion::{boundary_trace, convert};
use pie_spectral::galerkin::{assemble, block_len, block_offset, initial_state};
use pie_spectral::harness::examples::{heat_dirichlet_neumann, transport_sine};
use pie_spectral::harness::{l2_norm, run, IntegratorChoice};
use pie_spectral::integrators::{solve_exact_eig, GaussOptions};
use pie_spectral::pde::PdeModel;
use pie_spectral::poly::Poly;
use pie_spectral::signal::TimeSignal;
use pie_spectral::Signal;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_states(rng: &mut impl Rng, ns: usize, len: usize) -> Vec<ChebSeries> {
    (0..ns)
        .map(|_| ChebSeries::new((0..len).map(|_| rng.random_range(-1.0..1.0)).collect()))
        .collect()
}

fn max_on_grid(s: &ChebSeries) -> f64 {
    (0..21)
        .map(|k| s.eval(-1.0 + k as f64 / 10.0).abs())
        .fold(0.0, f64::max)
}

proptest! {
    /// Composing coefficients with an affine map of the argument matches
    /// evaluating the original at the mapped point.
    #[test]
    fn affine_composition_matches_pointwise_evaluation(
        coeffs in prop::collection::vec(-2.0..2.0f64, 1..6),
        alpha in -2.0..2.0f64,
        beta in -2.0..2.0f64,
        x in -1.0..1.0f64,
    ) {
        let p = Poly::new(coeffs);
        let want = p.eval(alpha * x + beta);
        let got = p.compose_affine(alpha, beta).eval(x);
        prop_assert!(
            (got - want).abs() < 1e-9 * (1.0 + want.abs()),
            "composition mismatch: {got} vs {want}"
        );
    }

    /// Translating a signal in time equals evaluating it at the shifted
    /// argument, across polynomial, exponential, and oscillatory terms.
    #[test]
    fn signal_translation_matches_shifted_evaluation(
        pc in prop::collection::vec(-2.0..2.0f64, 1..4),
        ec in -2.0..2.0f64,
        ed in -1.0..1.0f64,
        sa in -2.0..2.0f64,
        sb in -2.0..2.0f64,
        freq in 0.1..2.0f64,
        s in -1.0..1.0f64,
        t in 0.0..2.0f64,
    ) {
        let sig = TimeSignal::polynomial(&pc)
            .add(&TimeSignal::exponential(ec, ed))
            .add(&TimeSignal::sinusoid(sa, sb, freq));
        let want = sig.value(t + s);
        let got = sig.shift(s).value(t);
        prop_assert!(
            (got - want).abs() < 1e-9 * (1.0 + want.abs()),
            "shifted signal mismatch: {got} vs {want}"
        );
    }

    /// The symbolic signal derivative agrees with a central difference.
    #[test]
    fn signal_derivative_matches_finite_difference(
        pc in prop::collection::vec(-2.0..2.0f64, 1..4),
        ec in -2.0..2.0f64,
        ed in -1.0..1.0f64,
        sa in -2.0..2.0f64,
        sb in -2.0..2.0f64,
        freq in 0.1..2.0f64,
        t in 0.0..2.0f64,
    ) {
        let sig = TimeSignal::polynomial(&pc)
            .add(&TimeSignal::exponential(ec, ed))
            .add(&TimeSignal::sinusoid(sa, sb, freq));
        let h = 1e-5;
        let fd = (sig.value(t + h) - sig.value(t - h)) / (2.0 * h);
        let got = sig.derivative().value(t);
        prop_assert!(
            (got - fd).abs() < 1e-6 * (1.0 + got.abs()),
            "derivative mismatch: {got} vs finite difference {fd}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Both integral operators are linear in the state.
    #[test]
    fn operator_images_are_linear_in_the_state(seed in any::<u64>(), lambda in -3.0..3.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_system(&mut rng);
        let pie = convert(sys.dims, &sys.a0, &sys.a1, &sys.a2, &sys.b).unwrap();
        let ns = sys.dims.ns();
        let u = random_states(&mut rng, ns, 6);
        let v = random_states(&mut rng, ns, 6);
        let w: Vec<ChebSeries> = (0..ns).map(|i| u[i].add(&v[i].scale(lambda))).collect();
        for op in [&pie.t_op, &pie.a_op] {
            let iu = op.apply(&u);
            let iv = op.apply(&v);
            let iw = op.apply(&w);
            for i in 0..ns {
                let combo = iu[i].add(&iv[i].scale(lambda));
                let diff = iw[i].add(&combo.scale(-1.0));
                let scale = 1.0 + max_on_grid(&iu[i]) + lambda.abs() * max_on_grid(&iv[i]);
                prop_assert!(
                    max_on_grid(&diff) < 1e-12 * scale,
                    "operator image not linear in component {i}"
                );
            }
        }
    }

    /// Differentiating the reconstruction recovers the state, and the
    /// reconstruction satisfies the boundary rows, for random systems.
    #[test]
    fn reconstruction_round_trip_over_random_systems(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_system(&mut rng);
        let pie = convert(sys.dims, &sys.a0, &sys.a1, &sys.a2, &sys.b).unwrap();
        let ns = sys.dims.ns();
        let uf = random_states(&mut rng, ns, 7);
        let h: Vec<f64> = (0..sys.dims.nbc())
            .map(|_| rng.random_range(-1.0..1.0))
            .collect();
        let primary = pie.reconstruct_primary(&uf, &h);
        for i in 0..ns {
            let mut derived = primary[i].clone();
            for _ in 0..sys.dims.smoothness(i) {
                derived = derived.derivative();
            }
            let diff = derived.add(&uf[i].scale(-1.0));
            prop_assert!(
                max_on_grid(&diff) < 1e-10,
                "round trip failed for component {i}"
            );
        }
        let trace = boundary_trace(sys.dims, &primary);
        for r in 0..sys.dims.nbc() {
            let got: f64 = (0..sys.dims.nbf()).map(|c| sys.b[(r, c)] * trace[c]).sum();
            prop_assert!((got - h[r]).abs() < 1e-10, "boundary row {r} violated");
        }
    }

    /// Swapping the boundary map changes only the closure kernels: the
    /// multiplier and the lower-triangular kernel of both operators are
    /// identical for any two well-posed boundary matrices.
    #[test]
    fn boundary_map_enters_only_through_the_closure_kernel(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_system(&mut rng);
        let b2 = random_well_posed_b(&mut rng, sys.dims);
        let pie1 = convert(sys.dims, &sys.a0, &sys.a1, &sys.a2, &sys.b).unwrap();
        let pie2 = convert(sys.dims, &sys.a0, &sys.a1, &sys.a2, &b2).unwrap();
        let pts: Vec<f64> = (0..5).map(|k| -1.0 + 0.5 * k as f64).collect();
        for (op1, op2) in [(&pie1.t_op, &pie2.t_op), (&pie1.a_op, &pie2.a_op)] {
            for r in 0..op1.n0.rows {
                for c in 0..op1.n0.cols {
                    for &x in &pts {
                        let d = (op1.n0.at(r, c).eval(x) - op2.n0.at(r, c).eval(x)).abs();
                        prop_assert!(d < 1e-15, "multiplier differs at ({r},{c})");
                    }
                }
            }
            for r in 0..op1.n1.rows {
                for c in 0..op1.n1.cols {
                    for &x in &pts {
                        for &s in &pts {
                            let d = (op1.n1.at(r, c).eval(x, s) - op2.n1.at(r, c).eval(x, s)).abs();
                            prop_assert!(d < 1e-15, "interior kernel differs at ({r},{c})");
                        }
                    }
                }
            }
        }
    }

    /// Away from the two boundary-coupled top rows of each block, the
    /// projected mass matrix is confined to a five-entry band on diagonal
    /// blocks and vanishes on off-diagonal blocks, whatever the system.
    #[test]
    fn mass_matrix_sparsity_holds_for_random_systems(seed in any::<u64>(), n in 6usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_system(&mut rng);
        let pie = convert(sys.dims, &sys.a0, &sys.a1, &sys.a2, &sys.b).unwrap();
        let ns = sys.dims.ns();
        let model = PdeModel {
            domain: (-1.0, 1.0),
            dims: sys.dims,
            a0: sys.a0,
            a1: sys.a1,
            a2: sys.a2,
            b: sys.b,
            h: vec![Signal::zero(); sys.dims.nbc()],
            forcing: vec![],
            primary_ic: vec![Arc::new(|_| 0.0); ns],
            fundamental_ic: Some(vec![Arc::new(|_| 0.0); ns]),
        };
        let gs = assemble(&pie, &model, n).unwrap();
        for i in 0..ns {
            let (ro, rl) = (block_offset(sys.dims, n, i), block_len(sys.dims, n, i));
            for j in 0..ns {
                let (co, cl) = (block_offset(sys.dims, n, j), block_len(sys.dims, n, j));
                for r in 2..rl {
                    for c in 0..cl {
                        let in_band = i == j && (c as isize - r as isize).abs() <= 2;
                        if !in_band {
                            let v = gs.m[(ro + r, co + c)].abs();
                            prop_assert!(
                                v < 1e-13,
                                "off-pattern mass entry {v:.3e} in block ({i},{j}) row {r} col {c}"
                            );
                        }
                    }
                }
            }
        }
    }
}

/// Four time integrators built on different principles agree on the mixed
/// boundary diffusion problem.
#[test]
fn unrelated_time_integrators_agree() {
    let case = heat_dirichlet_neumann(0.5);
    let choices = [
        IntegratorChoice::ExactEig,
        IntegratorChoice::ExactAlt,
        IntegratorChoice::Gauss(GaussOptions {
            ng: 20,
            nint: 20,
            ratio: 1.0,
        }),
        IntegratorChoice::Bdf {
            order: 4,
            dt: 1e-3,
        },
    ];
    let reports: Vec<_> = choices
        .into_iter()
        .map(|integrator| {
            let mut cfg = case.run_config();
            cfg.n = 12;
            cfg.output_times = vec![0.1];
            cfg.integrator = integrator;
            run(&cfg).unwrap()
        })
        .collect();
    for a in 0..reports.len() {
        for b in a + 1..reports.len() {
            let diff = reports[a].states[0][0]
                .iter()
                .zip(&reports[b].states[0][0])
                .map(|(x, y)| (x - y).abs())
                .fold(0.0f64, f64::max);
            assert!(
                diff < 1e-6,
                "{} and {} disagree by {diff:.3e}",
                reports[a].integrator,
                reports[b].integrator
            );
        }
    }
}

/// Solving to an intermediate time, translating the boundary data, and
/// continuing reproduces the direct solve: the closed-form propagator
/// composes as a semigroup.
#[test]
fn exact_propagation_composes_across_a_restart() {
    let case = heat_dirichlet_neumann(0.5);
    let (model, _) = case.model.to_computational().unwrap();
    let pie = convert(model.dims, &model.a0, &model.a1, &model.a2, &model.b).unwrap();
    let mut gs = assemble(&pie, &model, 12).unwrap();
    let a0 = initial_state(&model, 12).unwrap();
    let full = solve_exact_eig(&gs, &a0, &[0.05, 0.1]).unwrap();
    let mid = full.states[0].clone();
    for bt in &mut gs.b_terms {
        let Signal::Analytic(ts) = &bt.signal else {
            panic!("expected closed-form boundary data");
        };
        bt.signal = Signal::Analytic(ts.shift(0.05));
    }
    let tail = solve_exact_eig(&gs, &mid, &[0.05]).unwrap();
    let diff = tail.states[0]
        .iter()
        .zip(full.states[1].iter())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0f64, f64::max);
    assert!(diff < 1e-10, "restarted solve deviates by {diff:.3e}");
}

/// The quadrature integrator tracks the norm of a translating wave with
/// no drift. The window holds a non-integer number of half-periods, so
/// the windowed norm itself oscillates as the wave slides through; the
/// invariant is agreement with the translated reference, not constancy.
#[test]
fn quadrature_integration_tracks_the_traveling_wave_norm() {
    let c = 2.0;
    let case = transport_sine(c);
    let mut cfg = case.run_config();
    cfg.n = 8;
    cfg.output_times = (1..=5).map(|k| k as f64).collect();
    cfg.integrator = IntegratorChoice::Gauss(GaussOptions {
        ng: 60,
        nint: 8,
        ratio: 1.0,
    });
    let report = run(&cfg).unwrap();
    for (k, per_comp) in report.states.iter().enumerate() {
        let t = cfg.output_times[k];
        let reference: Vec<f64> = report.grid.iter().map(|x| (x - c * t).sin()).collect();
        let drift = l2_norm(&report.grid, &per_comp[0]) - l2_norm(&report.grid, &reference);
        assert!(
            drift.abs() < 1e-6,
            "norm drifted by {:.3e} at t={t}",
            drift.abs()
        );
    }
}
