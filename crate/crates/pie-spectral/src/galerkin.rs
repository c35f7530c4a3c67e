//! Chebyshev-Galerkin projection of the partial integral equation.
//!
//! The fundamental state component i (differentiated p(i) times in the PDE)
//! is expanded in T_0..T_{N-p(i)}, so the block sizes are N+1, N and N-1 for
//! the three smoothness classes. Testing against the same truncated basis
//! under the Chebyshev weight reduces each projected equation to reading off
//! Chebyshev coefficients: row (m, j) of an operator matrix is the T_j
//! coefficient of the operator applied to the trial function, because the
//! basis weights cancel row-wise. The integral operators map polynomials to
//! polynomials exactly, so the mass matrix entries are exact rationals up to
//! rounding.

use ndarray::{Array1, Array2};

use crate::chebyshev::ChebSeries;
use crate::conversion::{PieSystem, StateDims};
use crate::pde::PdeModel;
use crate::signal::Signal;
use crate::{Error, Result};

/// Number of Chebyshev coefficients carried by component i at truncation
/// degree n.
pub fn block_len(dims: StateDims, n: usize, i: usize) -> usize {
    n + 1 - dims.smoothness(i)
}

pub fn block_offset(dims: StateDims, n: usize, i: usize) -> usize {
    (0..i).map(|j| block_len(dims, n, j)).sum()
}

/// Total number of discrete unknowns.
pub fn total_len(dims: StateDims, n: usize) -> usize {
    (0..dims.ns()).map(|i| block_len(dims, n, i)).sum()
}

/// One separable forcing contribution to the projected right-hand side.
pub struct BTerm {
    pub alpha: Array1<f64>,
    pub signal: Signal,
}

/// The projected system M da/dt = A a + sum_l alpha_l sig_l(t), together
/// with the maps recovering the primary state from the coefficients.
pub struct GalerkinSystem {
    pub n: usize,
    pub dims: StateDims,
    pub m: Array2<f64>,
    pub a: Array2<f64>,
    pub b_terms: Vec<BTerm>,
    /// (n+1) ns x total: Chebyshev coefficients of the primary state induced
    /// by the fundamental coefficients.
    pub m_star: Array2<f64>,
    /// (n+1) ns x nbc: primary-state contribution of the boundary data.
    pub recon: Array2<f64>,
    /// Boundary signals, needed when evaluating the primary state in time.
    pub h: Vec<Signal>,
}

impl GalerkinSystem {
    pub fn total_len(&self) -> usize {
        self.m.ncols()
    }

    /// Primary-state Chebyshev series at one instant from the fundamental
    /// coefficients and that instant's boundary data.
    pub fn recover_primary(&self, a: &Array1<f64>, t: f64) -> Vec<ChebSeries> {
        let h_now: Vec<f64> = self.h.iter().map(|s| s.value(t)).collect();
        self.recover_primary_with(a, &h_now)
    }

    pub fn recover_primary_with(&self, a: &Array1<f64>, h_now: &[f64]) -> Vec<ChebSeries> {
        assert_eq!(a.len(), self.total_len());
        assert_eq!(h_now.len(), self.dims.nbc());
        let rows = self.n + 1;
        let mut y = self.m_star.dot(a);
        for (j, &hj) in h_now.iter().enumerate() {
            if hj != 0.0 {
                for r in 0..y.len() {
                    y[r] += self.recon[[r, j]] * hj;
                }
            }
        }
        (0..self.dims.ns())
            .map(|m| ChebSeries::new(y.slice(ndarray::s![m * rows..(m + 1) * rows]).to_vec()))
            .collect()
    }
}

/// Project the two operators of the PIE; returns (M, A, M*, recon).
pub fn project_operators(
    pie: &PieSystem,
    n: usize,
) -> (Array2<f64>, Array2<f64>, Array2<f64>, Array2<f64>) {
    let dims = pie.dims;
    let ns = dims.ns();
    let total = total_len(dims, n);
    let mut m = Array2::zeros((total, total));
    let mut a = Array2::zeros((total, total));
    let mut m_star = Array2::zeros(((n + 1) * ns, total));
    for i in 0..ns {
        let coff = block_offset(dims, n, i);
        for k in 0..block_len(dims, n, i) {
            let col = coff + k;
            let t_img = pie.t_op.apply_to_basis(i, k);
            let a_img = pie.a_op.apply_to_basis(i, k);
            for mm in 0..ns {
                let roff = block_offset(dims, n, mm);
                for j in 0..block_len(dims, n, mm) {
                    m[[roff + j, col]] = t_img[mm].coeff(j);
                    a[[roff + j, col]] = a_img[mm].coeff(j);
                }
                for j in 0..=n {
                    m_star[[mm * (n + 1) + j, col]] = t_img[mm].coeff(j);
                }
            }
        }
    }
    let mut recon = Array2::zeros(((n + 1) * ns, dims.nbc()));
    for mm in 0..ns {
        for c in 0..dims.nbc() {
            let p = pie.k_bti.at(mm, c);
            if !p.is_zero() {
                let cheb = p.to_cheb();
                for j in 0..=n.min(cheb.degree()) {
                    recon[[mm * (n + 1) + j, c]] = cheb.coeff(j);
                }
            }
        }
    }
    (m, a, m_star, recon)
}

/// Project a per-component spatial profile (Chebyshev series) into the test
/// space.
fn project_profile(dims: StateDims, n: usize, profile: &[ChebSeries]) -> Array1<f64> {
    let mut alpha = Array1::zeros(total_len(dims, n));
    for (m, series) in profile.iter().enumerate() {
        let off = block_offset(dims, n, m);
        for j in 0..block_len(dims, n, m) {
            alpha[off + j] = series.coeff(j);
        }
    }
    alpha
}

fn polymat_column_profile(p: &crate::poly::PolyMat, col: usize) -> Vec<ChebSeries> {
    (0..p.rows)
        .map(|r| {
            let e = p.at(r, col);
            if e.is_zero() {
                ChebSeries::zero()
            } else {
                e.to_cheb()
            }
        })
        .collect()
}

/// Full discretization of a converted model at truncation degree n. The
/// model must already live on [-1, 1].
pub fn assemble(pie: &PieSystem, model: &PdeModel, n: usize) -> Result<GalerkinSystem> {
    let dims = pie.dims;
    assert_eq!(model.domain, (-1.0, 1.0), "assemble expects the computational interval");
    assert_eq!(model.dims, dims);
    let p_max = if dims.n2 > 0 {
        2
    } else if dims.n1 > 0 {
        1
    } else {
        0
    };
    if n < p_max.max(1) {
        return Err(Error::InvalidInput(format!(
            "truncation degree {n} too small; need at least {}",
            p_max.max(1)
        )));
    }

    let (m, a, m_star, recon) = project_operators(pie, n);

    let mut b_terms = Vec::new();
    for j in 0..dims.nbc() {
        let sig = &model.h[j];
        let profile = polymat_column_profile(&pie.h_profile, j);
        let alpha = project_profile(dims, n, &profile);
        if alpha.iter().any(|&v| v != 0.0) && !sig.is_zero() {
            b_terms.push(BTerm {
                alpha,
                signal: sig.clone(),
            });
        }
        let dprofile = polymat_column_profile(&pie.hdot_profile, j);
        let dalpha = project_profile(dims, n, &dprofile);
        if dalpha.iter().any(|&v| v != 0.0) && !sig.is_zero() {
            b_terms.push(BTerm {
                alpha: dalpha,
                signal: sig.derivative()?,
            });
        }
    }
    for term in &model.forcing {
        if term.signal.is_zero() {
            continue;
        }
        let profile: Vec<ChebSeries> = term
            .profiles
            .iter()
            .map(|f| {
                let f = f.clone();
                ChebSeries::from_fn(n, move |x| f(x))
            })
            .collect();
        let alpha = project_profile(dims, n, &profile);
        if alpha.iter().any(|&v| v != 0.0) {
            b_terms.push(BTerm {
                alpha,
                signal: term.signal.clone(),
            });
        }
    }

    Ok(GalerkinSystem {
        n,
        dims,
        m,
        a,
        b_terms,
        m_star,
        recon,
        h: model.h.clone(),
    })
}

/// Initial coefficient vector: the differentiated initial state interpolated
/// per component at its block degree.
pub fn initial_state(model: &PdeModel, n: usize) -> Result<Array1<f64>> {
    let dims = model.dims;
    let series = model.fundamental_ic_series(n)?;
    Ok(project_profile(dims, n, &series))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conversion::convert;
    use crate::poly::PolyMat;
    use ndarray::array;

    fn heat_dn_pie(nu: f64) -> PieSystem {
        let dims = StateDims::new(0, 0, 1);
        let b = array![[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0]];
        let a0 = PolyMat::from_const(&array![[0.0]]);
        let a1 = PolyMat::zeros(1, 1);
        let a2 = PolyMat::from_const(&array![[nu]]);
        convert(dims, &a0, &a1, &a2, &b).unwrap()
    }

    #[test]
    fn mass_column_matches_hand_integration() {
        // For the Dirichlet/Neumann diffusion problem the T_2 trial column is
        // int_{-1}^{x} (x-s) T_2 ds - (x+1) int_{-1}^{1} T_2 ds
        //   = T_4/48 - T_2/6 - T_1/3 - 3 T_0/16 + (2/3)(T_1 + T_0).
        let pie = heat_dn_pie(0.5);
        let n = 6;
        let (m, _, _, _) = project_operators(&pie, n);
        let col = 2;
        let want = [
            -3.0 / 16.0 + 2.0 / 3.0,
            -1.0 / 3.0 + 2.0 / 3.0,
            -1.0 / 6.0,
            0.0,
            1.0 / 48.0,
        ];
        for (j, w) in want.iter().enumerate() {
            assert!(
                (m[[j, col]] - w).abs() < 1e-14,
                "row {j}: {} vs {w}",
                m[[j, col]]
            );
        }
    }

    #[test]
    fn stiffness_of_pure_diffusion_is_scaled_identity() {
        let nu = 0.37;
        let pie = heat_dn_pie(nu);
        let n = 8;
        let (_, a, _, _) = project_operators(&pie, n);
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                let want = if i == j { nu } else { 0.0 };
                assert!((a[[i, j]] - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn recovery_matches_direct_state_map() {
        let pie = heat_dn_pie(1.0);
        let n = 9;
        let (_, _, m_star, recon) = project_operators(&pie, n);
        let coeffs: Vec<f64> = (0..n - 1).map(|k| (k as f64 * 1.7).sin()).collect();
        let uf = vec![ChebSeries::new(coeffs.clone())];
        let h = [0.83, -0.41];
        let direct = pie.reconstruct_primary(&uf, &h);
        let a = Array1::from_vec(coeffs);
        let mut y = m_star.dot(&a);
        for (j, &hj) in h.iter().enumerate() {
            for r in 0..y.len() {
                y[r] += recon[[r, j]] * hj;
            }
        }
        for j in 0..=n {
            assert!((y[j] - direct[0].coeff(j)).abs() < 1e-13, "coeff {j}");
        }
    }

    #[test]
    fn boundary_terms_for_dirichlet_neumann_heat() {
        use crate::pde::PdeModel;
        use crate::signal::{Signal, TimeSignal};
        use std::sync::Arc;
        let dims = StateDims::new(0, 0, 1);
        let model = PdeModel {
            domain: (-1.0, 1.0),
            dims,
            a0: PolyMat::from_const(&array![[0.0]]),
            a1: PolyMat::zeros(1, 1),
            a2: PolyMat::from_const(&array![[0.5]]),
            b: array![[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0]],
            h: vec![
                Signal::Analytic(TimeSignal::exponential(2.0, -1.0)),
                Signal::Analytic(TimeSignal::zero()),
            ],
            forcing: vec![],
            primary_ic: vec![Arc::new(|_x| 0.0)],
            fundamental_ic: None,
        };
        let pie = convert(dims, &model.a0, &model.a1, &model.a2, &model.b).unwrap();
        let gs = assemble(&pie, &model, 8).unwrap();
        // A0 = 0 and A1 = 0 kill the h-profile; only the dh/dt term of the
        // first boundary signal survives, with profile -K B_T^-1 e_1 = -1.
        assert_eq!(gs.b_terms.len(), 1);
        assert!((gs.b_terms[0].alpha[0] + 1.0).abs() < 1e-15);
        assert!(gs.b_terms[0].alpha.iter().skip(1).all(|&v| v == 0.0));
        // d/dt of 2 e^{-t} is -2 e^{-t}.
        assert!((gs.b_terms[0].signal.value(0.0) + 2.0).abs() < 1e-15);
    }

    #[test]
    fn block_bookkeeping() {
        let dims = StateDims::new(1, 1, 1);
        let n = 10;
        assert_eq!(block_len(dims, n, 0), 11);
        assert_eq!(block_len(dims, n, 1), 10);
        assert_eq!(block_len(dims, n, 2), 9);
        assert_eq!(block_offset(dims, n, 2), 21);
        assert_eq!(total_len(dims, n), 30);
    }
}
