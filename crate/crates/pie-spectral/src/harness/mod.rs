//! End-to-end driver: push a model through mapping, conversion, projection
//! and time integration, then sample the recovered solution on a uniform
//! grid and measure errors against a reference solution when one is known.
//!
//! The error reported everywhere is the unweighted L2 norm over the
//! physical domain, approximated by the trapezoid rule on a uniform grid
//! (512 points by default).

pub mod beam;
pub mod config;
pub mod examples;
pub mod output;

use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::chebyshev::ChebSeries;
use crate::conversion::{convert, reconstruct_from_derivatives};
use crate::galerkin::{assemble, initial_state};
use crate::integrators::{solve_bdf, solve_exact_alt, solve_exact_eig, solve_gauss, GaussOptions};
use crate::pde::PdeModel;
use crate::{Error, Result};

/// Number of uniform sample points used for output and error norms.
pub const OUTPUT_GRID: usize = 512;

/// Mismatch size between initial and boundary data above which a run
/// carries a warning.
pub const COMPATIBILITY_WARNING: f64 = 1e-8;

/// Pointwise evaluator (x, t) -> value of a known solution component, in
/// the physical variable.
pub type ExactFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Left-endpoint data used to rebuild an undifferentiated quantity:
/// t -> [value at a] for one integration, [value at a, slope at a] for two.
pub type BoundaryFn = Arc<dyn Fn(f64) -> Vec<f64> + Send + Sync>;

/// Time-advancement scheme selection with its parameters.
#[derive(Debug, Clone, Copy)]
pub enum IntegratorChoice {
    /// Closed form through the eigendecomposition of M^-1 A.
    ExactEig,
    /// Closed form through the eigendecomposition of M alone.
    ExactAlt,
    /// Variation of constants with composite Lobatto quadrature in time.
    Gauss(GaussOptions),
    /// Implicit multistep with fixed step size.
    Bdf { order: usize, dt: f64 },
}

impl IntegratorChoice {
    /// Short stable identifier used in filenames and reports.
    pub fn id(&self) -> String {
        match self {
            IntegratorChoice::ExactEig => "exact".into(),
            IntegratorChoice::ExactAlt => "exact-alt".into(),
            IntegratorChoice::Gauss(_) => "gauss".into(),
            IntegratorChoice::Bdf { order, .. } => format!("bdf{order}"),
        }
    }
}

/// How to rebuild a physically meaningful quantity that the first-order
/// state form only carries in differentiated form (beam deflection from
/// curvature, wave displacement from strain).
#[derive(Clone)]
pub struct PhysicalRecovery {
    /// Index of the state component holding the spatial derivative.
    pub source_component: usize,
    /// How many spatial integrations to undo (1 or 2).
    pub order: usize,
    /// Physical left-endpoint values of the quantity (and its slope when
    /// order is 2) as functions of time.
    pub boundary: BoundaryFn,
    /// Reference values for error reporting, when known.
    pub exact: Option<ExactFn>,
}

/// Everything needed for one solve: the model, the resolution, the time
/// scheme, where to sample, and optionally what to compare against.
#[derive(Clone)]
pub struct RunConfig {
    /// Human-readable tag carried into reports and filenames.
    pub label: String,
    pub model: PdeModel,
    /// Truncation order of the spatial expansion.
    pub n: usize,
    pub integrator: IntegratorChoice,
    /// Strictly increasing sample times, all nonnegative.
    pub output_times: Vec<f64>,
    /// Reference solution per state component, when known.
    pub exact: Option<Vec<ExactFn>>,
    pub recovery: Option<PhysicalRecovery>,
    /// Uniform output grid resolution.
    pub grid_points: usize,
}

/// Samples, errors and diagnostics from one solve.
pub struct RunReport {
    pub label: String,
    pub n: usize,
    pub integrator: String,
    pub times: Vec<f64>,
    /// Physical sample points, endpoints included.
    pub grid: Vec<f64>,
    /// Sampled state values indexed [time][component][grid point].
    pub states: Vec<Vec<Vec<f64>>>,
    /// L2 errors indexed [time][component]; absent without a reference.
    pub errors: Option<Vec<Vec<f64>>>,
    /// Rebuilt physical quantity indexed [time][grid point].
    pub recovered: Vec<Vec<f64>>,
    /// L2 errors of the rebuilt quantity per time.
    pub recovered_errors: Option<Vec<f64>>,
    pub elapsed: Duration,
    pub warnings: Vec<String>,
}

impl RunReport {
    /// Per-component errors at the last sample time.
    pub fn final_errors(&self) -> Option<&[f64]> {
        self.errors.as_ref().and_then(|e| e.last()).map(|v| v.as_slice())
    }

    /// Worst error at the last sample time over state components and, when
    /// present, the rebuilt physical quantity.
    pub fn max_final_error(&self) -> Option<f64> {
        let mut worst: Option<f64> = None;
        if let Some(errs) = self.final_errors() {
            for &e in errs {
                worst = Some(worst.map_or(e, |w: f64| w.max(e)));
            }
        }
        if let Some(rec) = &self.recovered_errors {
            if let Some(&e) = rec.last() {
                worst = Some(worst.map_or(e, |w: f64| w.max(e)));
            }
        }
        worst
    }
}

/// Uniform grid on [a, b] with both endpoints included.
pub fn uniform_grid(a: f64, b: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2);
    let step = (b - a) / (points - 1) as f64;
    (0..points).map(|j| a + step * j as f64).collect()
}

/// Unweighted L2 norm of pointwise differences over a uniform grid, by the
/// trapezoid rule, with the measure normalized to the interval length so that
/// values are comparable across domains of different size: a constant
/// difference d reports as |d| on any interval.
pub fn l2_distance(grid: &[f64], f: &[f64], g: &[f64]) -> f64 {
    assert_eq!(grid.len(), f.len());
    assert_eq!(f.len(), g.len());
    let mut acc = 0.0;
    for j in 0..f.len() {
        let d = f[j] - g[j];
        let w = if j == 0 || j == f.len() - 1 { 0.5 } else { 1.0 };
        acc += w * d * d;
    }
    (acc / (f.len() - 1) as f64).sqrt()
}

/// Length-normalized trapezoid-rule L2 norm of sampled values.
pub fn l2_norm(grid: &[f64], f: &[f64]) -> f64 {
    let zeros = vec![0.0; f.len()];
    l2_distance(grid, f, &zeros)
}

fn validate_output_times(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::InvalidInput("no output times requested".into()));
    }
    for pair in times.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::InvalidInput(
                "output times must be strictly increasing".into(),
            ));
        }
    }
    if times[0] < 0.0 {
        return Err(Error::InvalidInput("output times must be nonnegative".into()));
    }
    Ok(())
}

/// Solve one configuration end to end and collect samples and errors.
pub fn run(cfg: &RunConfig) -> Result<RunReport> {
    let start = Instant::now();
    cfg.model.validate()?;
    validate_output_times(&cfg.output_times)?;
    if cfg.grid_points < 2 {
        return Err(Error::InvalidInput("need at least two grid points".into()));
    }

    let (cmodel, map) = cfg.model.to_computational()?;
    let mut warnings = Vec::new();
    let compat = cmodel.boundary_compatibility_residual();
    if compat > COMPATIBILITY_WARNING {
        warnings.push(format!(
            "initial state misses the boundary data by {compat:.3e} at t = 0"
        ));
    }

    let pie = convert(cmodel.dims, &cmodel.a0, &cmodel.a1, &cmodel.a2, &cmodel.b)?;
    let gs = assemble(&pie, &cmodel, cfg.n)?;
    let a0 = initial_state(&cmodel, cfg.n)?;

    let traj = match &cfg.integrator {
        IntegratorChoice::ExactEig => solve_exact_eig(&gs, &a0, &cfg.output_times)?,
        IntegratorChoice::ExactAlt => solve_exact_alt(&gs, &a0, &cfg.output_times)?,
        IntegratorChoice::Gauss(opts) => solve_gauss(&gs, &a0, &cfg.output_times, *opts)?,
        IntegratorChoice::Bdf { order, dt } => {
            solve_bdf(&gs, &a0, &cfg.output_times, *order, *dt)?
        }
    };
    warnings.extend(traj.warnings.iter().cloned());

    let ns = cfg.model.dims.ns();
    let grid = uniform_grid(cfg.model.domain.0, cfg.model.domain.1, cfg.grid_points);
    let comp_grid: Vec<f64> = grid.iter().map(|&x| map.to_computational(x)).collect();

    let mut states = Vec::with_capacity(cfg.output_times.len());
    let mut errors = cfg.exact.as_ref().map(|_| Vec::new());
    let mut recovered = Vec::new();
    let mut recovered_errors = cfg
        .recovery
        .as_ref()
        .and_then(|r| r.exact.as_ref())
        .map(|_| Vec::new());

    for (ti, &t) in cfg.output_times.iter().enumerate() {
        let primary = gs.recover_primary(traj.state_at(ti), t);
        let mut values: Vec<Vec<f64>> = Vec::with_capacity(ns);
        for series in &primary {
            values.push(comp_grid.iter().map(|&xc| series.eval(xc)).collect());
        }
        if let (Some(errs), Some(exact)) = (errors.as_mut(), cfg.exact.as_ref()) {
            let mut per_comp = Vec::with_capacity(ns);
            for (comp, num) in values.iter().enumerate() {
                let reference: Vec<f64> = grid.iter().map(|&x| exact[comp](x, t)).collect();
                per_comp.push(l2_distance(&grid, num, &reference));
            }
            errs.push(per_comp);
        }
        if let Some(rec) = &cfg.recovery {
            let series = rebuild_physical(rec, &primary, map.scale(), t)?;
            let sampled: Vec<f64> = comp_grid.iter().map(|&xc| series.eval(xc)).collect();
            if let (Some(errs), Some(exact)) = (recovered_errors.as_mut(), rec.exact.as_ref()) {
                let reference: Vec<f64> = grid.iter().map(|&x| exact(x, t)).collect();
                errs.push(l2_distance(&grid, &sampled, &reference));
            }
            recovered.push(sampled);
        }
        states.push(values);
    }

    Ok(RunReport {
        label: cfg.label.clone(),
        n: cfg.n,
        integrator: cfg.integrator.id(),
        times: cfg.output_times.clone(),
        grid,
        states,
        errors,
        recovered,
        recovered_errors,
        elapsed: start.elapsed(),
        warnings,
    })
}

/// Undo one or two spatial differentiations of a state component on the
/// computational interval, feeding in physical boundary data.
fn rebuild_physical(
    rec: &PhysicalRecovery,
    primary: &[ChebSeries],
    scale: f64,
    t: f64,
) -> Result<ChebSeries> {
    if rec.order != 1 && rec.order != 2 {
        return Err(Error::InvalidInput(format!(
            "can undo one or two differentiations, not {}",
            rec.order
        )));
    }
    if rec.source_component >= primary.len() {
        return Err(Error::InvalidInput(format!(
            "recovery component {} out of range",
            rec.source_component
        )));
    }
    let boundary = (rec.boundary)(t);
    if boundary.len() != rec.order {
        return Err(Error::InvalidInput(format!(
            "recovery needs {} boundary values, got {}",
            rec.order,
            boundary.len()
        )));
    }
    // d/dx_c = scale * d/dx, so the computational derivative series is the
    // state scaled by scale^order, and a physical slope picks up one power.
    let deriv = primary[rec.source_component].scale(scale.powi(rec.order as i32));
    let mut bv = vec![boundary[0]];
    if rec.order == 2 {
        bv.push(scale * boundary[1]);
    }
    Ok(reconstruct_from_derivatives(rec.order, &deriv, &bv))
}

/// Errors at the final output time for a range of resolutions, with a
/// decay-rate estimate over the initial (pre-plateau) stretch.
pub struct SweepSummary {
    pub n_values: Vec<usize>,
    /// Final-time per-component errors, indexed [n index][component].
    pub final_errors: Vec<Vec<f64>>,
    /// Final-time error of the rebuilt quantity, when compared.
    pub recovered: Vec<Option<f64>>,
    /// Worst final-time error per resolution over all compared quantities.
    pub overall: Vec<f64>,
    /// Estimated exponential decay rate r in error ~ C e^{-r N}, fitted by
    /// least squares over the leading strictly decreasing stretch; absent
    /// when fewer than two points still decrease.
    pub decay_rate: Option<f64>,
}

/// Run the same configuration at several resolutions and summarize the
/// convergence behavior. Requires a reference solution.
pub fn sweep(cfg: &RunConfig, n_values: &[usize]) -> Result<(Vec<RunReport>, SweepSummary)> {
    if cfg.exact.is_none() {
        return Err(Error::InvalidInput(
            "a convergence sweep needs a reference solution".into(),
        ));
    }
    if n_values.is_empty() {
        return Err(Error::InvalidInput("empty resolution list".into()));
    }
    let mut reports = Vec::with_capacity(n_values.len());
    let mut final_errors = Vec::new();
    let mut recovered = Vec::new();
    let mut overall = Vec::new();
    for &n in n_values {
        let mut one = cfg.clone();
        one.n = n;
        let report = run(&one)?;
        final_errors.push(report.final_errors().unwrap_or(&[]).to_vec());
        recovered.push(report.recovered_errors.as_ref().and_then(|e| e.last().copied()));
        overall.push(report.max_final_error().unwrap_or(f64::NAN));
        reports.push(report);
    }
    let decay_rate = fit_decay_rate(n_values, &overall);
    Ok((
        reports,
        SweepSummary {
            n_values: n_values.to_vec(),
            final_errors,
            recovered,
            overall,
            decay_rate,
        },
    ))
}

/// Least-squares slope of log error against N over the leading stretch
/// where the error still drops by at least ten percent per step; such a
/// stretch excludes the round-off or time-discretization plateau.
fn fit_decay_rate(n_values: &[usize], overall: &[f64]) -> Option<f64> {
    let mut count = 1;
    while count < overall.len()
        && overall[count] > 0.0
        && overall[count].is_finite()
        && overall[count] < 0.9 * overall[count - 1]
    {
        count += 1;
    }
    if count < 2 || !overall[0].is_finite() || overall[0] <= 0.0 {
        return None;
    }
    let xs: Vec<f64> = n_values[..count].iter().map(|&n| n as f64).collect();
    let ys: Vec<f64> = overall[..count].iter().map(|&e| e.ln()).collect();
    let m = count as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    let denom = m * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return None;
    }
    let slope = (m * sxy - sx * sy) / denom;
    Some(-slope)
}
