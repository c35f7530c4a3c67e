//! Built-in benchmark problems with closed-form solutions.
//!
//! Each builder returns the full model (coefficients, boundary map,
//! boundary data, initial state) together with the reference solution and
//! sensible run defaults, so a single call produces everything a solve or
//! a convergence sweep needs. The suite covers a constant-viscosity
//! diffusion problem, diffusion with spatially varying viscosity, a forced
//! parabolic equation on an off-center interval, a vibrating clamped-free
//! beam, scalar advection, and the second-order wave equation with either
//! plain or characteristic boundary data.

use std::f64::consts::PI;
use std::sync::Arc;

use ndarray::{array, Array2};

use super::beam::{beam_eigen, BeamMode};
use super::{ExactFn, IntegratorChoice, PhysicalRecovery, RunConfig, OUTPUT_GRID};
use crate::conversion::StateDims;
use crate::integrators::GaussOptions;
use crate::pde::{ForcingTerm, PdeModel};
use crate::poly::{Poly, PolyMat};
use crate::signal::{Signal, TimeSignal};
use crate::{Error, Result};

/// A ready-to-run benchmark: model, reference solution, recovery recipe
/// and default solver settings.
pub struct ExampleCase {
    /// Stable identifier used in filenames and reports.
    pub id: String,
    /// One-line description.
    pub title: String,
    pub model: PdeModel,
    /// Reference solution per state component.
    pub exact: Option<Vec<ExactFn>>,
    /// How to rebuild the undifferentiated physical quantity, when the
    /// state formulation evolves derivatives.
    pub recovery: Option<PhysicalRecovery>,
    pub default_n: usize,
    pub default_tfinal: f64,
    pub default_integrator: IntegratorChoice,
}

impl ExampleCase {
    /// Run configuration using the case defaults: one output time at the
    /// default horizon.
    pub fn run_config(&self) -> RunConfig {
        RunConfig {
            label: self.id.clone(),
            model: self.model.clone(),
            n: self.default_n,
            integrator: self.default_integrator,
            output_times: vec![self.default_tfinal],
            exact: self.exact.clone(),
            recovery: self.recovery.clone(),
            grid_points: OUTPUT_GRID,
        }
    }
}

fn space(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Arc<dyn Fn(f64) -> f64 + Send + Sync> {
    Arc::new(f)
}

fn exact(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> ExactFn {
    Arc::new(f)
}

/// Diffusion u_t = nu u_xx on [-1, 1] with a decaying sine profile, value
/// data on the left and slope data on the right. The profile
/// sin(5 pi x / 4 + pi / 8) is an eigenfunction of the diffusion operator,
/// so the solution decays at the single rate nu (5 pi / 4)^2.
pub fn heat_dirichlet_neumann(nu: f64) -> ExampleCase {
    let wave = 1.25 * PI;
    let phase = move |x: f64| wave * x + PI / 8.0;
    let kappa = nu * wave * wave;

    let dims = StateDims::new(0, 0, 1);
    let a0 = PolyMat::zeros(1, 1);
    let a1 = PolyMat::zeros(1, 1);
    let a2 = PolyMat::from_const(&array![[nu]]);
    let b = array![
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0]
    ];
    let h = vec![
        Signal::Analytic(TimeSignal::exponential(phase(-1.0).sin(), -kappa)),
        Signal::Analytic(TimeSignal::exponential(wave * phase(1.0).cos(), -kappa)),
    ];

    let model = PdeModel {
        domain: (-1.0, 1.0),
        dims,
        a0,
        a1,
        a2,
        b,
        h,
        forcing: Vec::new(),
        primary_ic: vec![space(move |x| phase(x).sin())],
        fundamental_ic: Some(vec![space(move |x| -wave * wave * phase(x).sin())]),
    };

    ExampleCase {
        id: "heat_dn".into(),
        title: "diffusion, constant viscosity, value/slope boundary data".into(),
        model,
        exact: Some(vec![exact(move |x, t| phase(x).sin() * (-kappa * t).exp())]),
        recovery: None,
        default_n: 16,
        default_tfinal: 0.1,
        default_integrator: IntegratorChoice::ExactEig,
    }
}

/// Diffusion with viscosity growing linearly across [0, 2],
/// u_t = x u_xx, with value data at both ends chosen so that
/// u = -2 x t - x^2 solves the problem exactly.
pub fn variable_viscosity() -> ExampleCase {
    let dims = StateDims::new(0, 0, 1);
    let a0 = PolyMat::zeros(1, 1);
    let a1 = PolyMat::zeros(1, 1);
    let mut a2 = PolyMat::zeros(1, 1);
    *a2.at_mut(0, 0) = Poly::linear(0.0, 1.0);
    let b = array![
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0]
    ];
    let h = vec![
        Signal::Analytic(TimeSignal::zero()),
        Signal::Analytic(TimeSignal::polynomial(&[-4.0, -4.0])),
    ];

    let model = PdeModel {
        domain: (0.0, 2.0),
        dims,
        a0,
        a1,
        a2,
        b,
        h,
        forcing: Vec::new(),
        primary_ic: vec![space(|x| -x * x)],
        fundamental_ic: Some(vec![space(|_| -2.0)]),
    };

    ExampleCase {
        id: "heat_varvisc".into(),
        title: "diffusion, linearly varying viscosity, quadratic solution".into(),
        model,
        exact: Some(vec![exact(|x, t| -2.0 * x * t - x * x)]),
        recovery: None,
        default_n: 8,
        default_tfinal: 0.1,
        default_integrator: IntegratorChoice::ExactEig,
    }
}

/// Forced parabolic equation u_t = alpha u + beta u_x + gamma u_xx + f on
/// [a, b], manufactured so that u = sqrt(t + 1) sin(pi x). The square-root
/// clock is deliberately outside the closed-form signal family, so this
/// problem exercises the sampled-input path of the quadrature and
/// multistep integrators.
pub fn forced_parabolic(alpha: f64, beta: f64, gamma: f64, a: f64, b: f64) -> ExampleCase {
    let dims = StateDims::new(0, 0, 1);
    let a0 = PolyMat::from_const(&array![[alpha]]);
    let a1 = PolyMat::from_const(&array![[beta]]);
    let a2 = PolyMat::from_const(&array![[gamma]]);
    // Slope data on the left, value data on the right.
    let bmat = array![
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0]
    ];
    let slope_left = PI * (PI * a).cos();
    let value_right = (PI * b).sin();
    let h = vec![
        Signal::sampled_with_derivative(
            move |t: f64| slope_left * (t + 1.0).sqrt(),
            move |t: f64| slope_left * 0.5 / (t + 1.0).sqrt(),
        ),
        Signal::sampled_with_derivative(
            move |t: f64| value_right * (t + 1.0).sqrt(),
            move |t: f64| value_right * 0.5 / (t + 1.0).sqrt(),
        ),
    ];

    // f = u_t - alpha u - beta u_x - gamma u_xx splits into sin and cos
    // profiles with square-root clocks.
    let sin_clock = move |t: f64| 0.5 / (t + 1.0).sqrt() + (gamma * PI * PI - alpha) * (t + 1.0).sqrt();
    let cos_clock = move |t: f64| -beta * PI * (t + 1.0).sqrt();
    let forcing = vec![
        ForcingTerm {
            profiles: vec![space(|x| (PI * x).sin())],
            signal: Signal::sampled(sin_clock),
        },
        ForcingTerm {
            profiles: vec![space(|x| (PI * x).cos())],
            signal: Signal::sampled(cos_clock),
        },
    ];

    let model = PdeModel {
        domain: (a, b),
        dims,
        a0,
        a1,
        a2,
        b: bmat,
        h,
        forcing,
        primary_ic: vec![space(|x| (PI * x).sin())],
        fundamental_ic: Some(vec![space(|x| -PI * PI * (PI * x).sin())]),
    };

    ExampleCase {
        id: "parabolic_forced".into(),
        title: "forced parabolic equation with a square-root clock".into(),
        model,
        exact: Some(vec![exact(|x, t| (t + 1.0).sqrt() * (PI * x).sin())]),
        recovery: None,
        default_n: 16,
        default_tfinal: 0.1,
        default_integrator: IntegratorChoice::Gauss(GaussOptions {
            ng: 32,
            nint: 4,
            ratio: 0.25,
        }),
    }
}

/// Transverse vibration of a clamped-free beam, u_tt = -c u_xxxx, written
/// in the state variables v1 = u_t, v2 = u_xx. Initial data is the n-th
/// free-vibration mode, which then oscillates harmonically at omega_n.
/// The deflection itself is rebuilt from the curvature by integrating
/// twice from the clamped end.
pub fn cantilever_beam(mode_index: usize, c: f64, length: f64) -> Result<ExampleCase> {
    let mode: BeamMode = beam_eigen(mode_index, length, c, 1e-12)?;
    let omega = mode.omega;

    let dims = StateDims::new(0, 0, 2);
    let a0 = PolyMat::zeros(2, 2);
    let a1 = PolyMat::zeros(2, 2);
    // v1_t = -c (v2)_xx, v2_t = (v1)_xx.
    let a2 = PolyMat::from_const(&array![[0.0, -c], [1.0, 0.0]]);
    // Boundary vector layout: [v1(a), v2(a), v1(b), v2(b), v1x(a), v2x(a),
    // v1x(b), v2x(b)]. Clamped end: v1(a) = 0 and v1x(a) = 0 (the wall
    // neither moves nor rotates); free end: v2(b) = 0 and v2x(b) = 0 (no
    // moment, no shear).
    let mut bmat = Array2::zeros((4, 8));
    bmat[[0, 0]] = 1.0;
    bmat[[1, 3]] = 1.0;
    bmat[[2, 4]] = 1.0;
    bmat[[3, 7]] = 1.0;
    let h = vec![Signal::zero(), Signal::zero(), Signal::zero(), Signal::zero()];

    let model = PdeModel {
        domain: (0.0, length),
        dims,
        a0,
        a1,
        a2,
        b: bmat,
        h,
        forcing: Vec::new(),
        primary_ic: vec![space(|_| 0.0), space(move |x| mode.curvature(x))],
        fundamental_ic: Some(vec![space(|_| 0.0), space(move |x| mode.fourth(x))]),
    };

    Ok(ExampleCase {
        id: format!("euler_bernoulli_mode{mode_index}"),
        title: "clamped-free beam oscillating in a single mode".into(),
        model,
        exact: Some(vec![
            exact(move |x, t| -omega * mode.shape(x) * (omega * t).sin()),
            exact(move |x, t| mode.curvature(x) * (omega * t).cos()),
        ]),
        recovery: Some(PhysicalRecovery {
            source_component: 1,
            order: 2,
            boundary: Arc::new(|_t| vec![0.0, 0.0]),
            exact: Some(exact(move |x, t| mode.shape(x) * (omega * t).cos())),
        }),
        default_n: 16,
        default_tfinal: 0.1,
        default_integrator: IntegratorChoice::ExactEig,
    })
}

/// Normalized Gaussian bump and its first two derivatives.
fn gaussian(sigma: f64, mu: f64) -> (impl Fn(f64) -> f64 + Copy, impl Fn(f64) -> f64 + Copy, impl Fn(f64) -> f64 + Copy) {
    let norm = 1.0 / (sigma * (2.0 * PI).sqrt());
    let g = move |y: f64| norm * (-0.5 * ((y - mu) / sigma).powi(2)).exp();
    let dg = move |y: f64| -(y - mu) / (sigma * sigma) * g(y);
    let ddg = move |y: f64| (((y - mu) / (sigma * sigma)).powi(2) - 1.0 / (sigma * sigma)) * g(y);
    (g, dg, ddg)
}

/// Scalar advection u_t = -c u_x on [-1, 1] carrying a Gaussian bump to
/// the right, with inflow data at the left endpoint.
pub fn transport_gaussian(c: f64, sigma: f64, mu: f64) -> ExampleCase {
    let (g, dg, _) = gaussian(sigma, mu);

    let dims = StateDims::new(0, 1, 0);
    let a0 = PolyMat::zeros(1, 1);
    let a1 = PolyMat::from_const(&array![[-c]]);
    let a2 = PolyMat::zeros(1, 0);
    let bmat = array![[1.0, 0.0]];
    let h = vec![Signal::sampled_with_derivative(
        move |t: f64| g(-1.0 - c * t),
        move |t: f64| -c * dg(-1.0 - c * t),
    )];

    let model = PdeModel {
        domain: (-1.0, 1.0),
        dims,
        a0,
        a1,
        a2,
        b: bmat,
        h,
        forcing: Vec::new(),
        primary_ic: vec![space(move |x| g(x))],
        fundamental_ic: Some(vec![space(move |x| dg(x))]),
    };

    ExampleCase {
        id: "transport_gaussian".into(),
        title: "advection of a Gaussian bump with inflow data".into(),
        model,
        exact: Some(vec![exact(move |x, t| g(x - c * t))]),
        recovery: None,
        default_n: 32,
        default_tfinal: 0.1,
        default_integrator: IntegratorChoice::Gauss(GaussOptions {
            ng: 100,
            nint: 1,
            ratio: 1.0,
        }),
    }
}

/// Scalar advection of a sine wave, with closed-form inflow data; a good
/// long-horizon conservation benchmark because the sine is resolved by a
/// small basis.
pub fn transport_sine(c: f64) -> ExampleCase {
    let dims = StateDims::new(0, 1, 0);
    let a0 = PolyMat::zeros(1, 1);
    let a1 = PolyMat::from_const(&array![[-c]]);
    let a2 = PolyMat::zeros(1, 0);
    let bmat = array![[1.0, 0.0]];
    // u(-1, t) = sin(-1 - c t) expanded over sin(ct), cos(ct).
    let h = vec![Signal::Analytic(TimeSignal::sinusoid(
        -(1.0_f64).cos(),
        -(1.0_f64).sin(),
        c,
    ))];

    let model = PdeModel {
        domain: (-1.0, 1.0),
        dims,
        a0,
        a1,
        a2,
        b: bmat,
        h,
        forcing: Vec::new(),
        primary_ic: vec![space(|x| x.sin())],
        fundamental_ic: Some(vec![space(|x| x.cos())]),
    };

    ExampleCase {
        id: "transport_sine".into(),
        title: "long-horizon advection of a sine wave".into(),
        model,
        exact: Some(vec![exact(move |x, t| (x - c * t).sin())]),
        recovery: None,
        default_n: 8,
        default_tfinal: 10.0,
        default_integrator: IntegratorChoice::Gauss(GaussOptions {
            ng: 100,
            nint: 100,
            ratio: 1.0,
        }),
    }
}

/// Which wave-equation scenario to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveVariant {
    /// Gaussian initial bump at rest, splitting into two half-bumps.
    Split,
    /// Right-propagating Gaussian bump.
    Right,
    /// Right-propagating sine with value/slope boundary data.
    Sine,
    /// Right-propagating sine with a characteristic (outflow) condition at
    /// the right endpoint.
    Characteristic,
}

impl WaveVariant {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "split" => Ok(WaveVariant::Split),
            "right" => Ok(WaveVariant::Right),
            "sine" => Ok(WaveVariant::Sine),
            "characteristic" => Ok(WaveVariant::Characteristic),
            other => Err(Error::InvalidInput(format!(
                "unknown wave variant '{other}' (expected split, right, sine or characteristic)"
            ))),
        }
    }
}

/// Second-order wave equation u_tt = c^2 u_xx on [-1, 1] in the state
/// variables v1 = u_t, v2 = u_x. The displacement is rebuilt from the
/// strain v2 by one integration from the left endpoint.
pub fn wave(variant: WaveVariant, c: f64) -> ExampleCase {
    let dims = StateDims::new(0, 2, 0);
    let a0 = PolyMat::zeros(2, 2);
    // v1_t = c^2 (v2)_x, v2_t = (v1)_x.
    let a1 = PolyMat::from_const(&array![[0.0, c * c], [1.0, 0.0]]);
    let a2 = PolyMat::zeros(2, 0);
    // Boundary vector layout: [v1(-1), v2(-1), v1(1), v2(1)].

    let sigma = 0.2;
    let (g, dg, ddg) = gaussian(sigma, 0.0);

    let (id, title, bmat, h, ic, fundamental, exact_states, exact_u): (
        String,
        String,
        Array2<f64>,
        Vec<Signal>,
        Vec<Arc<dyn Fn(f64) -> f64 + Send + Sync>>,
        Vec<Arc<dyn Fn(f64) -> f64 + Send + Sync>>,
        Vec<ExactFn>,
        ExactFn,
    ) = match variant {
        WaveVariant::Split => {
            let bmat = array![
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 1.0]
            ];
            let h = vec![
                Signal::sampled_with_derivative(
                    move |t: f64| 0.5 * c * (dg(-1.0 + c * t) - dg(-1.0 - c * t)),
                    move |t: f64| 0.5 * c * c * (ddg(-1.0 + c * t) + ddg(-1.0 - c * t)),
                ),
                Signal::sampled_with_derivative(
                    move |t: f64| 0.5 * (dg(1.0 - c * t) + dg(1.0 + c * t)),
                    move |t: f64| 0.5 * c * (ddg(1.0 + c * t) - ddg(1.0 - c * t)),
                ),
            ];
            (
                "wave_split".into(),
                "wave equation splitting a Gaussian bump at rest".into(),
                bmat,
                h,
                vec![space(|_| 0.0), space(move |x| dg(x))],
                vec![space(|_| 0.0), space(move |x| ddg(x))],
                vec![
                    exact(move |x, t| 0.5 * c * (dg(x + c * t) - dg(x - c * t))),
                    exact(move |x, t| 0.5 * (dg(x - c * t) + dg(x + c * t))),
                ],
                exact(move |x, t| 0.5 * (g(x - c * t) + g(x + c * t))),
            )
        }
        WaveVariant::Right => {
            let bmat = array![
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 1.0]
            ];
            let h = vec![
                Signal::sampled_with_derivative(
                    move |t: f64| -c * dg(-1.0 - c * t),
                    move |t: f64| c * c * ddg(-1.0 - c * t),
                ),
                Signal::sampled_with_derivative(
                    move |t: f64| dg(1.0 - c * t),
                    move |t: f64| -c * ddg(1.0 - c * t),
                ),
            ];
            (
                "wave_right".into(),
                "wave equation carrying a Gaussian bump to the right".into(),
                bmat,
                h,
                vec![space(move |x| -c * dg(x)), space(move |x| dg(x))],
                vec![space(move |x| -c * ddg(x)), space(move |x| ddg(x))],
                vec![
                    exact(move |x, t| -c * dg(x - c * t)),
                    exact(move |x, t| dg(x - c * t)),
                ],
                exact(move |x, t| g(x - c * t)),
            )
        }
        WaveVariant::Sine | WaveVariant::Characteristic => {
            // u = sin(x - c t): v1 = -c cos(x - c t), v2 = cos(x - c t).
            let bmat = if variant == WaveVariant::Sine {
                array![
                    [1.0, 0.0, 0.0, 0.0],
                    [0.0, 0.0, 0.0, 1.0]
                ]
            } else {
                // Outflow condition u_t + c u_x = 0 at the right endpoint,
                // exactly satisfied by the right-moving wave.
                array![
                    [1.0, 0.0, 0.0, 0.0],
                    [0.0, 0.0, 1.0, c]
                ]
            };
            // v1(-1, t) = -c cos(1 + c t) expanded over sin(ct), cos(ct).
            let inflow = Signal::Analytic(TimeSignal::sinusoid(
                c * (1.0_f64).sin(),
                -c * (1.0_f64).cos(),
                c,
            ));
            let h = if variant == WaveVariant::Sine {
                // v2(1, t) = cos(1 - c t).
                vec![
                    inflow,
                    Signal::Analytic(TimeSignal::sinusoid((1.0_f64).sin(), (1.0_f64).cos(), c)),
                ]
            } else {
                vec![inflow, Signal::zero()]
            };
            let id = if variant == WaveVariant::Sine {
                "wave_sine"
            } else {
                "wave_characteristic"
            };
            let title = if variant == WaveVariant::Sine {
                "traveling sine wave with value/slope boundary data"
            } else {
                "traveling sine wave with an outflow condition"
            };
            (
                id.into(),
                title.into(),
                bmat,
                h,
                vec![space(move |x| -c * x.cos()), space(|x| x.cos())],
                vec![space(move |x| c * x.sin()), space(|x| -x.sin())],
                vec![
                    exact(move |x, t| -c * (x - c * t).cos()),
                    exact(move |x, t| (x - c * t).cos()),
                ],
                exact(move |x, t| (x - c * t).sin()),
            )
        }
    };

    let model = PdeModel {
        domain: (-1.0, 1.0),
        dims,
        a0,
        a1,
        a2,
        b: bmat,
        h,
        forcing: Vec::new(),
        primary_ic: ic,
        fundamental_ic: Some(fundamental),
    };

    let exact_u_boundary = exact_u.clone();
    let gaussian_case = matches!(variant, WaveVariant::Split | WaveVariant::Right);
    ExampleCase {
        id,
        title,
        model,
        exact: Some(exact_states),
        recovery: Some(PhysicalRecovery {
            source_component: 1,
            order: 1,
            boundary: Arc::new(move |t| vec![exact_u_boundary(-1.0, t)]),
            exact: Some(exact_u),
        }),
        default_n: if gaussian_case { 32 } else { 8 },
        default_tfinal: if gaussian_case { 0.1 } else { 10.0 },
        default_integrator: if gaussian_case {
            // The convolution integrand oscillates at the discrete spectral
            // radius, which grows like N^2 for first-order states; eight
            // panels keep the quadrature converged up to N = 48.
            IntegratorChoice::Gauss(GaussOptions {
                ng: 60,
                nint: 8,
                ratio: 1.0,
            })
        } else if variant == WaveVariant::Sine {
            IntegratorChoice::ExactEig
        } else {
            IntegratorChoice::Gauss(GaussOptions {
                ng: 100,
                nint: 100,
                ratio: 1.0,
            })
        },
    }
}

/// Build a benchmark by identifier, with optional variant, mode index and
/// speed overrides. Unknown identifiers and variants are rejected.
pub fn builtin(
    id: &str,
    variant: Option<&str>,
    mode_index: Option<usize>,
    speed: Option<f64>,
) -> Result<ExampleCase> {
    match id {
        "heat_dn" => Ok(heat_dirichlet_neumann(0.5)),
        "heat_varvisc" => Ok(variable_viscosity()),
        "parabolic_forced" => Ok(forced_parabolic(4.0, 2.0, 0.5, 1.25, 2.5)),
        "euler_bernoulli" => {
            cantilever_beam(mode_index.unwrap_or(2), speed.unwrap_or(2.0), 2.0)
        }
        "transport" => match variant.unwrap_or("gaussian") {
            "gaussian" => Ok(transport_gaussian(speed.unwrap_or(4.0), 0.2, 0.0)),
            "sine" => Ok(transport_sine(speed.unwrap_or(2.0))),
            other => Err(Error::InvalidInput(format!(
                "unknown transport variant '{other}' (expected gaussian or sine)"
            ))),
        },
        "wave" => {
            let v = WaveVariant::parse(variant.unwrap_or("split"))?;
            let default_speed = match v {
                WaveVariant::Split | WaveVariant::Right => 4.0,
                _ => 2.0,
            };
            Ok(wave(v, speed.unwrap_or(default_speed)))
        }
        other => Err(Error::InvalidInput(format!(
            "unknown example '{other}' (expected heat_dn, heat_varvisc, parabolic_forced, \
             euler_bernoulli, transport or wave)"
        ))),
    }
}

/// All benchmarks at their default parameters; used by the validation
/// suite to check shared invariants in one sweep.
pub fn all_default_cases() -> Result<Vec<ExampleCase>> {
    Ok(vec![
        heat_dirichlet_neumann(0.5),
        variable_viscosity(),
        forced_parabolic(4.0, 2.0, 0.5, 1.25, 2.5),
        cantilever_beam(2, 2.0, 2.0)?,
        cantilever_beam(4, 2.0, 2.0)?,
        transport_gaussian(4.0, 0.2, 0.0),
        transport_sine(2.0),
        wave(WaveVariant::Split, 4.0),
        wave(WaveVariant::Right, 4.0),
        wave(WaveVariant::Sine, 2.0),
        wave(WaveVariant::Characteristic, 2.0),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn varying_viscosity_solution_spot_value() {
        let case = variable_viscosity();
        let u = case.exact.as_ref().unwrap();
        assert!((u[0](1.0, 0.1) - (-1.2)).abs() < 1e-15);
    }

    #[test]
    fn transport_peak_value_travels_with_the_flow() {
        let case = transport_gaussian(4.0, 0.2, 0.0);
        let u = case.exact.as_ref().unwrap();
        let peak = 1.0 / (0.2 * (2.0 * PI).sqrt());
        assert!((u[0](4.0 * 0.1, 0.1) - peak).abs() < 1e-12);
    }

    #[test]
    fn wave_split_starts_from_the_bump_itself() {
        let case = wave(WaveVariant::Split, 4.0);
        let rec = case.recovery.as_ref().unwrap();
        let u = rec.exact.as_ref().unwrap();
        let (g, _, _) = gaussian(0.2, 0.0);
        for &x in &[-0.7, -0.1, 0.0, 0.3, 0.9] {
            assert!((u(x, 0.0) - g(x)).abs() < 1e-14);
        }
    }

    #[test]
    fn every_initial_state_satisfies_its_boundary_data() {
        // The residual is measured against the size of the initial data:
        // checking it involves spectrally differentiating an interpolant,
        // whose round-off noise scales with the data (the beam curvature
        // peaks near 60, a sine near 1).
        for case in all_default_cases().unwrap() {
            let (cmodel, _) = case.model.to_computational().unwrap();
            let mut scale = 0.0_f64;
            for f in &cmodel.primary_ic {
                for j in 0..=100 {
                    let x = -1.0 + 0.02 * j as f64;
                    scale = scale.max(f(x).abs());
                }
            }
            let residual = cmodel.boundary_compatibility_residual();
            assert!(
                residual < 1e-10 * (1.0 + scale),
                "case {}: boundary mismatch {residual:.3e} at t = 0 (data size {scale:.2})",
                case.id
            );
        }
    }

    #[test]
    fn forced_parabolic_forcing_balances_the_equation() {
        // d/dt of sqrt(t+1) sin(pi x) must equal the operator terms plus
        // the declared forcing, pointwise.
        let (alpha, beta, gamma) = (4.0, 2.0, 0.5);
        let case = forced_parabolic(alpha, beta, gamma, 1.25, 2.5);
        for &(x, t) in &[(1.3, 0.0), (1.9, 0.05), (2.45, 0.1)] {
            let s = (t + 1.0_f64).sqrt();
            let u = s * (PI * x).sin();
            let ux = s * PI * (PI * x).cos();
            let uxx = -s * PI * PI * (PI * x).sin();
            let ut = 0.5 / s * (PI * x).sin();
            let mut f = 0.0;
            for term in &case.model.forcing {
                f += term.profiles[0](x) * term.signal.value(t);
            }
            let residual = ut - (alpha * u + beta * ux + gamma * uxx + f);
            assert!(residual.abs() < 1e-12, "residual {residual:.3e} at ({x}, {t})");
        }
    }

    #[test]
    fn characteristic_boundary_row_carries_the_wave_speed() {
        let c = 2.0;
        let case = wave(WaveVariant::Characteristic, c);
        let b = &case.model.b;
        assert_eq!(b.shape(), &[2, 4]);
        assert_eq!(b[[1, 2]], 1.0);
        assert_eq!(b[[1, 3]], c);
        // The outflow row is exactly satisfied by the exact solution, so
        // its data is identically zero.
        assert!(case.model.h[1].value(3.7).abs() < 1e-15);
    }

    #[test]
    fn transport_inflow_signal_matches_the_trace_of_the_solution() {
        let c = 2.0;
        let case = transport_sine(c);
        for &t in &[0.0, 0.31, 2.4, 9.9] {
            let expect = (-1.0 - c * t).sin();
            assert!((case.model.h[0].value(t) - expect).abs() < 1e-13);
        }
    }

    #[test]
    fn wave_inflow_signal_matches_the_trace_of_the_solution() {
        let c = 2.0;
        for variant in [WaveVariant::Sine, WaveVariant::Characteristic] {
            let case = wave(variant, c);
            for &t in &[0.0, 0.31, 2.4] {
                let expect = -c * (-1.0 - c * t).cos();
                assert!((case.model.h[0].value(t) - expect).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn unknown_identifiers_are_rejected() {
        assert!(builtin("heat", None, None, None).is_err());
        assert!(builtin("transport", Some("square"), None, None).is_err());
        assert!(builtin("wave", Some("standing"), None, None).is_err());
    }

    #[test]
    fn beam_exact_states_satisfy_the_stated_equations() {
        // v1_t = -c (v2)_xx and v2_t = (v1)_xx, checked by centered
        // differences on the closed forms.
        let case = cantilever_beam(2, 2.0, 2.0).unwrap();
        let ex = case.exact.as_ref().unwrap();
        let (x, t, hx, ht) = (0.9, 0.07, 1e-4, 1e-5);
        let ddx = |f: &ExactFn, x: f64, t: f64| {
            (f(x + hx, t) - 2.0 * f(x, t) + f(x - hx, t)) / (hx * hx)
        };
        let dt = |f: &ExactFn, x: f64, t: f64| (f(x, t + ht) - f(x, t - ht)) / (2.0 * ht);
        let r1 = dt(&ex[0], x, t) + 2.0 * ddx(&ex[1], x, t);
        let r2 = dt(&ex[1], x, t) - ddx(&ex[0], x, t);
        assert!(r1.abs() < 1e-3, "first state residual {r1:.3e}");
        assert!(r2.abs() < 1e-3, "second state residual {r2:.3e}");
    }
}
