//! Clamped-free beam modes for the fourth-order bending model.
//!
//! Free vibration of a uniform cantilever of length L reduces to the
//! frequency equation
//!
//! cosh(z) cos(z) + 1 = 0,    z = beta L,
//!
//! whose n-th positive root sits near (2n - 1) pi / 2. The associated mode
//! shape is
//!
//! w(x) = cosh(beta x) - cos(beta x) - sigma (sinh(beta x) - sin(beta x)),
//!
//! with sigma = (cos z + cosh z) / (sin z + sinh z). Evaluating this form
//! literally loses accuracy for higher modes: cosh(beta x) and
//! sigma sinh(beta x) grow like e^z while their difference stays O(1).
//! The methods below therefore regroup the hyperbolic part as
//!
//! cosh(p) - sigma sinh(p) = e^p (1 - sigma) / 2 + e^-p (1 + sigma) / 2,
//!
//! where 1 - sigma = (sin z - cos z - e^-z) / (sin z + sinh z) is computed
//! without subtracting large numbers, so every endpoint value comes out
//! with absolute accuracy near machine precision.

use crate::{Error, Result};

/// One flexural mode of a clamped-free beam: the spatial wavenumber, the
/// oscillation frequency for a stiffness ratio c (u_tt = -c u_xxxx), and
/// the stably precomputed shape constants.
#[derive(Debug, Clone, Copy)]
pub struct BeamMode {
    /// Spatial wavenumber; beta * length solves the frequency equation.
    pub beta: f64,
    /// Temporal frequency, beta^2 sqrt(c).
    pub omega: f64,
    /// Mode-shape ratio sigma evaluated at z = beta * length.
    pub sigma: f64,
    one_minus_sigma: f64,
}

/// Residual of the frequency equation, normalized by cosh so the value
/// stays O(1) for large arguments.
pub fn frequency_residual(z: f64) -> f64 {
    z.cos() + 1.0 / z.cosh()
}

/// Solve cosh(z) cos(z) + 1 = 0 for the n-th root (n >= 1) and package the
/// mode data for a beam of the given length with stiffness ratio c.
/// The root is bracketed near (2n - 1) pi / 2, refined by bisection and
/// polished by Newton iteration until the relative residual
/// |cosh(z) cos(z) + 1| / cosh(z) drops below `tol`.
pub fn beam_eigen(n: usize, length: f64, c: f64, tol: f64) -> Result<BeamMode> {
    if n == 0 {
        return Err(Error::InvalidInput("mode index starts at 1".into()));
    }
    if !(length > 0.0) || !(c > 0.0) || !(tol > 0.0) {
        return Err(Error::InvalidInput(
            "beam length, stiffness ratio and tolerance must be positive".into(),
        ));
    }
    let center = (2.0 * n as f64 - 1.0) * std::f64::consts::FRAC_PI_2;
    let mut lo = center - 0.5;
    let mut hi = center + 0.5;
    let mut flo = frequency_residual(lo);
    let fhi = frequency_residual(hi);
    if flo == 0.0 {
        hi = lo;
    } else if fhi == 0.0 {
        lo = hi;
    } else if flo * fhi > 0.0 {
        return Err(Error::InvalidInput(format!(
            "no sign change bracketing mode {n}"
        )));
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let fmid = frequency_residual(mid);
        if fmid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if flo * fmid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
        if hi - lo < 1e-9 {
            break;
        }
    }
    let mut z = 0.5 * (lo + hi);
    // Newton polish on g(z) = cosh z cos z + 1; near the root the scaled
    // residual g / cosh stays well conditioned.
    for _ in 0..8 {
        let g = z.cosh() * z.cos() + 1.0;
        let dg = z.sinh() * z.cos() - z.cosh() * z.sin();
        if dg == 0.0 {
            break;
        }
        let step = g / dg;
        z -= step;
        if step.abs() < 1e-15 * z.abs() {
            break;
        }
    }
    let rel = (z.cosh() * z.cos() + 1.0).abs() / z.cosh();
    if rel > tol {
        return Err(Error::InvalidInput(format!(
            "frequency equation residual {rel:.3e} above tolerance {tol:.3e} for mode {n}"
        )));
    }
    let one_minus_sigma = (z.sin() - z.cos() - (-z).exp()) / (z.sin() + z.sinh());
    let beta = z / length;
    Ok(BeamMode {
        beta,
        omega: beta * beta * c.sqrt(),
        sigma: 1.0 - one_minus_sigma,
        one_minus_sigma,
    })
}

impl BeamMode {
    /// cosh(p) - sigma sinh(p), grouped by exponentials so the growing
    /// parts cancel analytically instead of numerically.
    fn hyper_even(&self, p: f64) -> f64 {
        0.5 * (p.exp() * self.one_minus_sigma + (-p).exp() * (1.0 + self.sigma))
    }

    /// sinh(p) - sigma cosh(p), same grouping.
    fn hyper_odd(&self, p: f64) -> f64 {
        0.5 * (p.exp() * self.one_minus_sigma - (-p).exp() * (1.0 + self.sigma))
    }

    /// Mode deflection w(x).
    pub fn shape(&self, x: f64) -> f64 {
        let p = self.beta * x;
        self.hyper_even(p) - p.cos() + self.sigma * p.sin()
    }

    /// Slope w'(x).
    pub fn slope(&self, x: f64) -> f64 {
        let p = self.beta * x;
        self.beta * (self.hyper_odd(p) + p.sin() + self.sigma * p.cos())
    }

    /// Curvature w''(x); vanishes at the free end.
    pub fn curvature(&self, x: f64) -> f64 {
        let p = self.beta * x;
        self.beta * self.beta * (self.hyper_even(p) + p.cos() - self.sigma * p.sin())
    }

    /// Third derivative w'''(x); vanishes at the free end.
    pub fn third(&self, x: f64) -> f64 {
        let p = self.beta * x;
        self.beta.powi(3) * (self.hyper_odd(p) - p.sin() - self.sigma * p.cos())
    }

    /// Fourth derivative; the mode satisfies w'''' = beta^4 w.
    pub fn fourth(&self, x: f64) -> f64 {
        self.beta.powi(4) * self.shape(x)
    }
}
