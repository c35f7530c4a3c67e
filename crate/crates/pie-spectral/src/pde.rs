//! Problem description: coupled linear 1-D PDEs with boundary conditions.
//!
//! A model collects the smoothness partition of the state, the polynomial
//! coefficient matrices of
//! `d/dt u = A0(x) u + A1(x) du/dx + A2(x) d2u/dx2 + f(x, t)`,
//! a boundary map `B u_bf = h(t)`, time inputs, and initial data, all on a
//! physical interval [a, b]. Everything downstream works on [-1, 1], so the
//! model knows how to rescale itself onto that interval: first-derivative
//! coefficients and boundary columns that read a derivative pick up a factor
//! 2/(b-a), second-derivative coefficients (2/(b-a))^2, and coefficient
//! polynomials are composed with the affine chart.

use ndarray::Array2;
use std::sync::Arc;

use crate::chebyshev::ChebSeries;
use crate::conversion::StateDims;
use crate::poly::PolyMat;
use crate::signal::Signal;
use crate::{Error, Result};

pub type SpaceFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Separable forcing contribution: per-component spatial profiles times one
/// time signal.
#[derive(Clone)]
pub struct ForcingTerm {
    pub profiles: Vec<SpaceFn>,
    pub signal: Signal,
}

/// Affine chart between the physical interval [a, b] and [-1, 1].
#[derive(Debug, Clone, Copy)]
pub struct DomainMap {
    pub a: f64,
    pub b: f64,
}

impl DomainMap {
    pub fn to_physical(&self, xc: f64) -> f64 {
        0.5 * (self.b - self.a) * xc + 0.5 * (self.a + self.b)
    }

    pub fn to_computational(&self, x: f64) -> f64 {
        (2.0 * x - (self.a + self.b)) / (self.b - self.a)
    }

    /// dx/dxc: half the physical width.
    pub fn scale(&self) -> f64 {
        0.5 * (self.b - self.a)
    }
}

#[derive(Clone)]
pub struct PdeModel {
    pub domain: (f64, f64),
    pub dims: StateDims,
    pub a0: PolyMat,
    pub a1: PolyMat,
    pub a2: PolyMat,
    /// Boundary map over [u1(a); u1(b); u2(a); u2(b); u2x(a); u2x(b)].
    pub b: Array2<f64>,
    /// Boundary data, one signal per row of `b`.
    pub h: Vec<Signal>,
    pub forcing: Vec<ForcingTerm>,
    /// Initial state, one closure per component, in the physical variable.
    pub primary_ic: Vec<SpaceFn>,
    /// Optional initial data for the differentiated state (physical
    /// derivatives of order 0/1/2 by smoothness class); when absent it is
    /// obtained by differentiating the interpolant of `primary_ic`.
    pub fundamental_ic: Option<Vec<SpaceFn>>,
}

impl PdeModel {
    pub fn validate(&self) -> Result<()> {
        let ns = self.dims.ns();
        let (a, b) = self.domain;
        if !(b > a) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidInput(format!(
                "domain [{a}, {b}] must be a finite interval with a < b"
            )));
        }
        let nd = self.dims.n1 + self.dims.n2;
        for (name, m, want_cols) in [
            ("a0", &self.a0, ns),
            ("a1", &self.a1, nd),
            ("a2", &self.a2, self.dims.n2),
        ] {
            if m.rows != ns || m.cols != want_cols {
                return Err(Error::InvalidInput(format!(
                    "{name} must be {ns}x{want_cols}, got {}x{}",
                    m.rows, m.cols
                )));
            }
        }
        if self.b.nrows() != self.dims.nbc() || self.b.ncols() != self.dims.nbf() {
            return Err(Error::InvalidInput(format!(
                "boundary map must be {}x{}, got {}x{}",
                self.dims.nbc(),
                self.dims.nbf(),
                self.b.nrows(),
                self.b.ncols()
            )));
        }
        if self.h.len() != self.dims.nbc() {
            return Err(Error::InvalidInput(format!(
                "need {} boundary signals, got {}",
                self.dims.nbc(),
                self.h.len()
            )));
        }
        if self.primary_ic.len() != ns {
            return Err(Error::InvalidInput(format!(
                "need {ns} initial-condition components, got {}",
                self.primary_ic.len()
            )));
        }
        if let Some(fic) = &self.fundamental_ic {
            if fic.len() != ns {
                return Err(Error::InvalidInput(format!(
                    "need {ns} differentiated initial-condition components, got {}",
                    fic.len()
                )));
            }
        }
        for (i, term) in self.forcing.iter().enumerate() {
            if term.profiles.len() != ns {
                return Err(Error::InvalidInput(format!(
                    "forcing term {i} needs {ns} profiles, got {}",
                    term.profiles.len()
                )));
            }
        }
        Ok(())
    }

    /// Rescale the model onto [-1, 1]; the returned map recovers physical
    /// coordinates and derivative scales.
    pub fn to_computational(&self) -> Result<(PdeModel, DomainMap)> {
        self.validate()?;
        let (a, b) = self.domain;
        let map = DomainMap { a, b };
        let alpha = map.scale(); // dx/dxc
        let beta = 0.5 * (a + b);
        let d1 = 1.0 / alpha;

        let a0 = self.a0.compose_affine(alpha, beta);
        let a1 = self.a1.compose_affine(alpha, beta).scale(d1);
        let a2 = self.a2.compose_affine(alpha, beta).scale(d1 * d1);

        // Boundary columns that read the first derivative of the smoothest
        // class see the computational derivative, larger by a factor alpha.
        let dims = self.dims;
        let mut bmat = self.b.clone();
        let u2x_start = 2 * dims.n1 + 2 * dims.n2;
        for col in u2x_start..dims.nbf() {
            for row in 0..bmat.nrows() {
                bmat[[row, col]] *= d1;
            }
        }

        let wrap = |f: &SpaceFn| -> SpaceFn {
            let f = f.clone();
            Arc::new(move |xc: f64| f(alpha * xc + beta))
        };
        let forcing = self
            .forcing
            .iter()
            .map(|term| ForcingTerm {
                profiles: term.profiles.iter().map(wrap).collect(),
                signal: term.signal.clone(),
            })
            .collect();
        let primary_ic: Vec<SpaceFn> = self.primary_ic.iter().map(wrap).collect();
        // d^p/dxc^p = alpha^p d^p/dx^p.
        let fundamental_ic = self.fundamental_ic.as_ref().map(|fic| {
            fic.iter()
                .enumerate()
                .map(|(i, f)| {
                    let p = dims.smoothness(i) as i32;
                    let f = f.clone();
                    let s = alpha.powi(p);
                    Arc::new(move |xc: f64| s * f(alpha * xc + beta)) as SpaceFn
                })
                .collect()
        });

        let model = PdeModel {
            domain: (-1.0, 1.0),
            dims,
            a0,
            a1,
            a2,
            b: bmat,
            h: self.h.clone(),
            forcing,
            primary_ic,
            fundamental_ic,
        };
        Ok((model, map))
    }

    /// Chebyshev interpolants of the differentiated state at t = 0, one per
    /// component with degree n - p(i). Must be called on a model already on
    /// [-1, 1].
    pub fn fundamental_ic_series(&self, n: usize) -> Result<Vec<ChebSeries>> {
        assert_eq!(self.domain, (-1.0, 1.0), "interpolation happens on [-1, 1]");
        let dims = self.dims;
        let mut out = Vec::with_capacity(dims.ns());
        for i in 0..dims.ns() {
            let p = dims.smoothness(i);
            if n < p {
                return Err(Error::InvalidInput(format!(
                    "truncation degree {n} too small for a component differentiated {p} times"
                )));
            }
            let series = match &self.fundamental_ic {
                Some(fic) => {
                    let f = fic[i].clone();
                    ChebSeries::from_fn(n - p, move |x| f(x))
                }
                None => {
                    let f = self.primary_ic[i].clone();
                    let mut s = ChebSeries::from_fn(n, move |x| f(x));
                    for _ in 0..p {
                        s = s.derivative();
                    }
                    s.truncated(n - p)
                }
            };
            out.push(series);
        }
        Ok(out)
    }

    /// Largest mismatch between the boundary map applied to the initial state
    /// and the boundary data at t = 0. Call on a model already on [-1, 1].
    /// A visible mismatch means the initial condition does not satisfy the
    /// boundary conditions, which costs accuracy near t = 0.
    pub fn boundary_compatibility_residual(&self) -> f64 {
        assert_eq!(self.domain, (-1.0, 1.0));
        let dims = self.dims;
        let sample = 64;
        let mut ubf = vec![0.0; dims.nbf()];
        for i in 0..dims.n1 {
            let f = &self.primary_ic[dims.n0 + i];
            ubf[i] = f(-1.0);
            ubf[dims.n1 + i] = f(1.0);
        }
        for i in 0..dims.n2 {
            let f = self.primary_ic[dims.n0 + dims.n1 + i].clone();
            let interp = ChebSeries::from_fn(sample, move |x| f(x));
            let deriv = interp.derivative();
            ubf[2 * dims.n1 + i] = interp.eval(-1.0);
            ubf[2 * dims.n1 + dims.n2 + i] = interp.eval(1.0);
            ubf[2 * dims.n1 + 2 * dims.n2 + i] = deriv.eval(-1.0);
            ubf[2 * dims.n1 + 3 * dims.n2 + i] = deriv.eval(1.0);
        }
        let mut worst = 0.0_f64;
        for row in 0..dims.nbc() {
            let mut acc = 0.0;
            for col in 0..dims.nbf() {
                acc += self.b[[row, col]] * ubf[col];
            }
            worst = worst.max((acc - self.h[row].value(0.0)).abs());
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::TimeSignal;
    use ndarray::array;

    fn heat_on(a: f64, b: f64, nu: f64) -> PdeModel {
        let dims = StateDims::new(0, 0, 1);
        PdeModel {
            domain: (a, b),
            dims,
            a0: PolyMat::zeros(1, 1),
            a1: PolyMat::zeros(1, 1),
            a2: PolyMat::from_const(&Array2::from_elem((1, 1), nu)),
            b: array![[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]],
            h: vec![Signal::zero(), Signal::zero()],
            forcing: vec![],
            primary_ic: vec![Arc::new(|x: f64| x * x)],
            fundamental_ic: None,
        }
    }

    #[test]
    fn width_two_interval_only_translates() {
        let (m, map) = heat_on(0.0, 2.0, 0.3).to_computational().unwrap();
        assert_eq!(map.scale(), 1.0);
        assert_eq!(m.a2.at(0, 0).coeffs, vec![0.3]);
        // x^2 on [0, 2] becomes (xc + 1)^2.
        assert!((m.primary_ic[0](0.0) - 1.0).abs() < 1e-15);
        assert!((m.primary_ic[0](1.0) - 4.0).abs() < 1e-15);
    }

    #[test]
    fn derivative_scales_follow_the_chart() {
        let (m, map) = heat_on(0.0, 4.0, 1.0).to_computational().unwrap();
        assert_eq!(map.scale(), 2.0);
        // d2/dx2 -> (1/2)^2 d2/dxc2.
        assert!((m.a2.at(0, 0).coeffs[0] - 0.25).abs() < 1e-15);
        // Dirichlet rows read values: unchanged.
        assert_eq!(m.b[[0, 0]], 1.0);
    }

    #[test]
    fn neumann_column_rescales() {
        let dims = StateDims::new(0, 0, 1);
        let mut m = heat_on(0.0, 4.0, 1.0);
        m.b = array![[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0]];
        assert_eq!(dims.nbf(), 4);
        let (mc, _) = m.to_computational().unwrap();
        // Physical-derivative column picks up 2/(b-a) = 1/2.
        assert!((mc.b[[1, 3]] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn fundamental_ic_differentiates_primary() {
        let (m, _) = heat_on(-1.0, 1.0, 1.0).to_computational().unwrap();
        let fic = m.fundamental_ic_series(8).unwrap();
        // (x^2)'' = 2.
        assert_eq!(fic.len(), 1);
        assert!((fic[0].eval(0.3) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn fundamental_ic_scaling_on_wide_interval() {
        let mut m = heat_on(0.0, 4.0, 1.0);
        // u(x) = x^2 has u'' = 2 in physical coordinates.
        m.fundamental_ic = Some(vec![Arc::new(|_x| 2.0)]);
        let (mc, map) = m.to_computational().unwrap();
        let fic = mc.fundamental_ic_series(6).unwrap();
        // d2u/dxc2 = alpha^2 u'' = 8, and indeed u(xc) = (2xc + 2)^2 there.
        assert!((fic[0].eval(0.1) - map.scale().powi(2) * 2.0).abs() < 1e-12);
    }

    #[test]
    fn compatibility_residual_flags_mismatch() {
        let mut m = heat_on(-1.0, 1.0, 1.0);
        m.h = vec![
            Signal::Analytic(TimeSignal::constant(1.0)),
            Signal::Analytic(TimeSignal::constant(1.0)),
        ];
        let (mc, _) = m.to_computational().unwrap();
        // IC x^2 matches u(+-1) = 1 exactly.
        assert!(mc.boundary_compatibility_residual() < 1e-12);
        let mut bad = heat_on(-1.0, 1.0, 1.0);
        bad.h = vec![Signal::zero(), Signal::zero()];
        let (bc, _) = bad.to_computational().unwrap();
        assert!(bc.boundary_compatibility_residual() > 0.9);
    }

    #[test]
    fn validate_rejects_shape_mismatches() {
        let mut m = heat_on(0.0, 1.0, 1.0);
        m.h.pop();
        assert!(m.validate().is_err());
        let mut m2 = heat_on(0.0, 1.0, 1.0);
        m2.b = Array2::zeros((2, 3));
        assert!(m2.validate().is_err());
    }
}
