//! Time integration of the projected system M da/dt = A a + b(t).
//!
//! Two closed-form integrators evaluate the solution at arbitrary times with
//! no time-stepping error when every time input is analytic: one
//! diagonalizes M^-1 A, the other diagonalizes M itself and then the
//! transformed right-hand operator. A quadrature integrator evaluates the
//! variation-of-constants integral with composite Lobatto rules and works
//! for sampled inputs too, and BDF3/BDF4 time-stepping covers long-horizon
//! runs; its first steps are produced by the exact propagator so the global
//! order of the formula is preserved from the start.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::galerkin::{BTerm, GalerkinSystem};
use crate::linalg;
use crate::quadrature::gauss_lobatto_on;
use crate::signal::{conv_analytic, TimeSignal};
use crate::{Error, Result};

/// Residual above which an eigendecomposition is treated as unusable.
pub const DIAGONALIZABILITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct TrajectorySolution {
    pub times: Vec<f64>,
    pub states: Vec<Array1<f64>>,
    pub warnings: Vec<String>,
}

impl TrajectorySolution {
    /// State at a recorded time (exact match by index).
    pub fn state_at(&self, idx: usize) -> &Array1<f64> {
        &self.states[idx]
    }
}

fn validate_times(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::InvalidInput("need at least one output time".into()));
    }
    for &t in times {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::InvalidInput(format!(
                "output times must be finite and nonnegative, got {t}"
            )));
        }
    }
    Ok(())
}

fn analytic_signals(b_terms: &[BTerm]) -> Result<Vec<TimeSignal>> {
    b_terms
        .iter()
        .map(|bt| bt.signal.analytic().cloned().ok_or(Error::NonAnalyticSignal))
        .collect()
}

fn to_complex_vec(v: &Array1<f64>) -> Array1<Complex64> {
    v.mapv(|x| Complex64::new(x, 0.0))
}

/// Closed-form evaluation through the eigendecomposition of M^-1 A.
pub fn solve_exact_eig(
    gs: &GalerkinSystem,
    a0: &Array1<f64>,
    times: &[f64],
) -> Result<TrajectorySolution> {
    validate_times(times)?;
    let signals = analytic_signals(&gs.b_terms)?;
    let m_inv_a = linalg::solve_multi(&gs.m, &gs.a)?;
    let (vals, vecs) = linalg::eig(&m_inv_a)?;
    let vecs_inv = linalg::inv_complex(&vecs)?;
    let residual = linalg::diagonalization_residual(
        &linalg::to_complex(&m_inv_a),
        &vals,
        &vecs,
        &vecs_inv,
    );
    if residual > DIAGONALIZABILITY_TOL {
        return Err(Error::NotDiagonalizable { residual });
    }
    let w0 = vecs_inv.dot(&to_complex_vec(a0));
    let betas: Vec<Array1<Complex64>> = gs
        .b_terms
        .iter()
        .map(|bt| {
            let mb = linalg::solve(&gs.m, &bt.alpha)?;
            Ok(vecs_inv.dot(&to_complex_vec(&mb)))
        })
        .collect::<Result<_>>()?;
    let n = vals.len();
    let mut states = Vec::with_capacity(times.len());
    for &t in times {
        let mut y = Array1::<Complex64>::zeros(n);
        for k in 0..n {
            y[k] = (vals[k] * t).exp() * w0[k];
            for (l, sig) in signals.iter().enumerate() {
                y[k] += betas[l][k] * conv_analytic(vals[k], sig, t);
            }
        }
        states.push(vecs.dot(&y).mapv(|v| v.re));
    }
    Ok(TrajectorySolution {
        times: times.to_vec(),
        states,
        warnings: Vec::new(),
    })
}

/// Closed-form evaluation through the eigendecomposition of M followed by
/// one of the transformed right-hand operator. Exact like
/// [`solve_exact_eig`], but the inner spectrum can contain positive real
/// parts even for dissipative problems, which makes long-time evaluation
/// ill-conditioned; a warning is attached when that happens.
pub fn solve_exact_alt(
    gs: &GalerkinSystem,
    a0: &Array1<f64>,
    times: &[f64],
) -> Result<TrajectorySolution> {
    validate_times(times)?;
    let signals = analytic_signals(&gs.b_terms)?;
    let n = gs.m.nrows();
    let (mu, s) = linalg::eig(&gs.m)?;
    let s_inv = linalg::inv_complex(&s)?;
    let residual =
        linalg::diagonalization_residual(&linalg::to_complex(&gs.m), &mu, &s, &s_inv);
    if residual > DIAGONALIZABILITY_TOL {
        return Err(Error::NotDiagonalizable { residual });
    }
    let mu_max = mu.iter().map(|v| v.norm()).fold(0.0_f64, f64::max);
    if mu.iter().any(|v| v.norm() < 1e-13 * mu_max) {
        return Err(Error::InvalidInput(
            "mass matrix is numerically singular; use the M^-1 A form instead".into(),
        ));
    }

    // Inner operator C = diag(1/mu) S^-1 A S.
    let a_s = linalg::to_complex(&gs.a).dot(&s);
    let mut inner = s_inv.dot(&a_s);
    for i in 0..n {
        for j in 0..n {
            inner[[i, j]] /= mu[i];
        }
    }
    let (theta, w) = linalg::eig_complex(&inner)?;
    let w_inv = linalg::inv_complex(&w)?;
    let residual2 = linalg::diagonalization_residual(&inner, &theta, &w, &w_inv);
    if residual2 > DIAGONALIZABILITY_TOL {
        return Err(Error::NotDiagonalizable { residual: residual2 });
    }

    let mut warnings = Vec::new();
    let theta_max = theta.iter().map(|v| v.norm()).fold(0.0_f64, f64::max);
    if theta.iter().any(|v| v.re > 1e-12 * theta_max.max(1.0)) {
        warnings.push(
            "transformed spectrum has eigenvalues with positive real part; \
             long-time evaluation in this form is ill-conditioned"
                .to_string(),
        );
    }

    let sw = s.dot(&w);
    let y0 = w_inv.dot(&s_inv.dot(&to_complex_vec(a0)));
    let zs: Vec<Array1<Complex64>> = gs
        .b_terms
        .iter()
        .map(|bt| {
            let mut v = s_inv.dot(&to_complex_vec(&bt.alpha));
            for i in 0..n {
                v[i] /= mu[i];
            }
            w_inv.dot(&v)
        })
        .collect();

    let mut states = Vec::with_capacity(times.len());
    for &t in times {
        let mut y = Array1::<Complex64>::zeros(n);
        for k in 0..n {
            y[k] = (theta[k] * t).exp() * y0[k];
            for (l, sig) in signals.iter().enumerate() {
                y[k] += zs[l][k] * conv_analytic(theta[k], sig, t);
            }
        }
        states.push(sw.dot(&y).mapv(|v| v.re));
    }
    Ok(TrajectorySolution {
        times: times.to_vec(),
        states,
        warnings,
    })
}

/// Propagator e^{tau M^-1 A} v, spectral when the operator is
/// diagonalizable, Pade otherwise.
enum Propagator {
    Spectral {
        vals: Array1<Complex64>,
        vecs: Array2<Complex64>,
        vecs_inv: Array2<Complex64>,
    },
    Matrix {
        gen: Array2<f64>,
    },
}

impl Propagator {
    fn build(m_inv_a: Array2<f64>) -> Self {
        if let Ok((vals, vecs)) = linalg::eig(&m_inv_a) {
            if let Ok(vecs_inv) = linalg::inv_complex(&vecs) {
                let residual = linalg::diagonalization_residual(
                    &linalg::to_complex(&m_inv_a),
                    &vals,
                    &vecs,
                    &vecs_inv,
                );
                if residual <= DIAGONALIZABILITY_TOL {
                    return Propagator::Spectral {
                        vals,
                        vecs,
                        vecs_inv,
                    };
                }
            }
        }
        Propagator::Matrix { gen: m_inv_a }
    }

    fn apply(&self, tau: f64, v: &Array1<f64>) -> Result<Array1<f64>> {
        match self {
            Propagator::Spectral {
                vals,
                vecs,
                vecs_inv,
            } => {
                let mut y = vecs_inv.dot(&to_complex_vec(v));
                for (k, lam) in vals.iter().enumerate() {
                    y[k] *= (lam * tau).exp();
                }
                Ok(vecs.dot(&y).mapv(|c| c.re))
            }
            Propagator::Matrix { gen } => {
                let e = linalg::expm(&gen.mapv(|x| x * tau))?;
                Ok(e.dot(v))
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GaussOptions {
    /// Lobatto points per interval.
    pub ng: usize,
    /// Number of quadrature intervals per output time.
    pub nint: usize,
    /// Geometric length ratio between consecutive intervals; < 1 clusters
    /// points near the output time.
    pub ratio: f64,
}

impl Default for GaussOptions {
    fn default() -> Self {
        Self {
            ng: 32,
            nint: 1,
            ratio: 1.0,
        }
    }
}

/// Geometric partition of [0, t] into nint intervals with consecutive
/// length ratio `ratio`.
fn geometric_breaks(t: f64, nint: usize, ratio: f64) -> Vec<f64> {
    let mut breaks = Vec::with_capacity(nint + 1);
    breaks.push(0.0);
    if (ratio - 1.0).abs() < 1e-14 {
        for i in 1..nint {
            breaks.push(t * i as f64 / nint as f64);
        }
    } else {
        let first = t * (1.0 - ratio) / (1.0 - ratio.powi(nint as i32));
        let mut acc = 0.0;
        let mut len = first;
        for _ in 1..nint {
            acc += len;
            breaks.push(acc);
            len *= ratio;
        }
    }
    breaks.push(t);
    breaks
}

/// Variation-of-constants evaluation with composite Lobatto quadrature in
/// time. Handles sampled time inputs; accuracy at a fixed output time is
/// set by ng, nint and the clustering ratio.
pub fn solve_gauss(
    gs: &GalerkinSystem,
    a0: &Array1<f64>,
    times: &[f64],
    opts: GaussOptions,
) -> Result<TrajectorySolution> {
    validate_times(times)?;
    if opts.ng < 2 {
        return Err(Error::InvalidInput("need at least 2 quadrature points".into()));
    }
    if opts.nint == 0 {
        return Err(Error::InvalidInput("need at least one quadrature interval".into()));
    }
    if !(opts.ratio > 0.0) || !opts.ratio.is_finite() {
        return Err(Error::InvalidInput(format!(
            "interval ratio must be positive and finite, got {}",
            opts.ratio
        )));
    }
    let m_inv_a = linalg::solve_multi(&gs.m, &gs.a)?;
    let prop = Propagator::build(m_inv_a);
    let m_inv_alpha: Vec<Array1<f64>> = gs
        .b_terms
        .iter()
        .map(|bt| linalg::solve(&gs.m, &bt.alpha))
        .collect::<Result<_>>()?;
    let b_tilde = |s: f64| -> Array1<f64> {
        let mut acc = Array1::zeros(a0.len());
        for (ma, bt) in m_inv_alpha.iter().zip(&gs.b_terms) {
            let v = bt.signal.value(s);
            if v != 0.0 {
                acc.scaled_add(v, ma);
            }
        }
        acc
    };

    let mut states = Vec::with_capacity(times.len());
    for &t in times {
        let mut x = prop.apply(t, a0)?;
        if t > 0.0 && !gs.b_terms.is_empty() {
            let breaks = geometric_breaks(t, opts.nint, opts.ratio);
            for w in breaks.windows(2) {
                let (nodes, weights) = gauss_lobatto_on(opts.ng, w[0], w[1]);
                for (&s, &wt) in nodes.iter().zip(&weights) {
                    let contrib = prop.apply(t - s, &b_tilde(s))?;
                    x.scaled_add(wt, &contrib);
                }
            }
        }
        states.push(x);
    }
    Ok(TrajectorySolution {
        times: times.to_vec(),
        states,
        warnings: Vec::new(),
    })
}

/// Backward-differentiation coefficients (beta_0..beta_k) for orders 3, 4.
fn bdf_coeffs(order: usize) -> &'static [f64] {
    match order {
        3 => &[11.0 / 6.0, -3.0, 1.5, -1.0 / 3.0],
        4 => &[25.0 / 12.0, -4.0, 3.0, -4.0 / 3.0, 0.25],
        _ => unreachable!(),
    }
}

/// Fixed-step BDF3/BDF4 over a uniform grid covering every output time.
/// The order-1 startup values are produced by the exact propagator (one
/// Lobatto-quadrature step each), so the formula's global order holds from
/// the first step.
pub fn solve_bdf(
    gs: &GalerkinSystem,
    a0: &Array1<f64>,
    times: &[f64],
    order: usize,
    dt: f64,
) -> Result<TrajectorySolution> {
    validate_times(times)?;
    if order != 3 && order != 4 {
        return Err(Error::InvalidInput(format!(
            "supported backward-differentiation orders are 3 and 4, got {order}"
        )));
    }
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidInput(format!("step size must be positive, got {dt}")));
    }
    // Every output time must sit on the step grid.
    let mut out_steps = Vec::with_capacity(times.len());
    let mut last_step = 0usize;
    for &t in times {
        let k = (t / dt).round();
        if (k * dt - t).abs() > 1e-9 * dt.max(t) {
            return Err(Error::InvalidInput(format!(
                "output time {t} is not a multiple of the step size {dt}"
            )));
        }
        let k = k as usize;
        out_steps.push(k);
        last_step = last_step.max(k);
    }

    let beta = bdf_coeffs(order);
    let n = a0.len();
    let m_inv_a = linalg::solve_multi(&gs.m, &gs.a)?;
    let prop = Propagator::build(m_inv_a);
    let m_inv_alpha: Vec<Array1<f64>> = gs
        .b_terms
        .iter()
        .map(|bt| linalg::solve(&gs.m, &bt.alpha))
        .collect::<Result<_>>()?;

    // b(t) without the M^-1 (used on the BDF right-hand side).
    let b_raw = |t: f64| -> Array1<f64> {
        let mut acc = Array1::zeros(n);
        for bt in &gs.b_terms {
            let v = bt.signal.value(t);
            if v != 0.0 {
                acc.scaled_add(v, &bt.alpha);
            }
        }
        acc
    };
    // M^-1 b(t) (used inside the exact startup integral).
    let b_tilde = |t: f64| -> Array1<f64> {
        let mut acc = Array1::zeros(n);
        for (ma, bt) in m_inv_alpha.iter().zip(&gs.b_terms) {
            let v = bt.signal.value(t);
            if v != 0.0 {
                acc.scaled_add(v, ma);
            }
        }
        acc
    };

    // One exact step of length dt from time t0.
    let startup_ng = 12;
    let (su_nodes, su_weights) = gauss_lobatto_on(startup_ng, 0.0, dt);
    let exact_step = |t0: f64, from: &Array1<f64>| -> Result<Array1<f64>> {
        let mut x = prop.apply(dt, from)?;
        if !gs.b_terms.is_empty() {
            for (&tau, &wt) in su_nodes.iter().zip(&su_weights) {
                let contrib = prop.apply(dt - tau, &b_tilde(t0 + tau))?;
                x.scaled_add(wt, &contrib);
            }
        }
        Ok(x)
    };

    // History ring: states and their M-products, newest last.
    let mut history: Vec<Array1<f64>> = vec![a0.clone()];
    let mut recorded: Vec<Array1<f64>> = vec![a0.clone()];
    for j in 1..order.min(last_step + 1) {
        let next = exact_step((j - 1) as f64 * dt, history.last().unwrap())?;
        history.push(next.clone());
        recorded.push(next);
    }

    if last_step >= order {
        use ndarray_linalg::{Factorize, Solve};
        let sys = &gs.m * beta[0] - &gs.a * dt;
        let lu = sys
            .factorize()
            .map_err(|e| Error::Linalg(format!("factorizing the stepping matrix: {e}")))?;
        let mut m_hist: Vec<Array1<f64>> = history.iter().map(|a| gs.m.dot(a)).collect();
        for step in order..=last_step {
            let t_n = step as f64 * dt;
            let mut rhs = b_raw(t_n) * dt;
            // history holds a^{n-order}..a^{n-1}; beta[p] pairs with a^{n-p}.
            for p in 1..=order {
                rhs.scaled_add(-beta[p], &m_hist[order - p]);
            }
            let next = lu
                .solve(&rhs)
                .map_err(|e| Error::Linalg(format!("backward-differentiation solve: {e}")))?;
            m_hist.remove(0);
            m_hist.push(gs.m.dot(&next));
            history.remove(0);
            history.push(next.clone());
            recorded.push(next);
        }
    }

    let states = out_steps.iter().map(|&k| recorded[k].clone()).collect();
    Ok(TrajectorySolution {
        times: times.to_vec(),
        states,
        warnings: Vec::new(),
    })
}
