//! Boundary-condition elimination: PDE to PIE.
//!
//! The standardized state-space PDE on the computational interval [-1, 1]
//! couples three smoothness classes of state components: n0 components that
//! are never differentiated in x, n1 components differentiated once, n2
//! components differentiated twice. Writing u_f = (u0, d/dx u1, d2/dx2 u2)
//! for the fundamental state, the fundamental theorem of calculus gives the
//! primary state back as line integrals of u_f plus boundary values, and the
//! boundary condition B u_bf = h fixes those boundary values whenever
//! B_T = B T is invertible. Substituting produces the two 3-PI operators of
//! the partial integral equation T du_f/dt = A u_f + g.
//!
//! Everything here lives on [-1, 1]; [`crate::pde::PdeModel::to_computational`]
//! maps a physical-domain problem onto it first.

use crate::chebyshev::ChebSeries;
use crate::pi_operator::PiOperator;
use crate::poly::{Kernel2, KernelMat, Poly, PolyMat};
use crate::{Error, Result};
use ndarray::Array2;
use ndarray_linalg::{Inverse, SVD};

/// Partition of the state vector by smoothness class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateDims {
    pub n0: usize,
    pub n1: usize,
    pub n2: usize,
}

impl StateDims {
    pub fn new(n0: usize, n1: usize, n2: usize) -> Self {
        Self { n0, n1, n2 }
    }

    /// Total number of state components.
    pub fn ns(&self) -> usize {
        self.n0 + self.n1 + self.n2
    }

    /// Length of the full boundary-value vector
    /// (u1(a), u1(b), u2(a), u2(b), u2x(a), u2x(b)).
    pub fn nbf(&self) -> usize {
        2 * self.n1 + 4 * self.n2
    }

    /// Length of the core boundary vector (u1(a), u2(a), u2x(a)), which is
    /// also the number of boundary conditions required for well-posedness.
    pub fn nbc(&self) -> usize {
        self.n1 + 2 * self.n2
    }

    /// How many x-derivatives component `i` carries in the PDE (0, 1 or 2).
    pub fn smoothness(&self, i: usize) -> usize {
        if i < self.n0 {
            0
        } else if i < self.n0 + self.n1 {
            1
        } else {
            assert!(i < self.ns());
            2
        }
    }
}

/// The structural matrices of the boundary elimination, all on [-1, 1].
pub struct Structural {
    /// nbf x nbc, boundary-value propagation of the core boundary vector.
    pub t: Array2<f64>,
    /// nbf x ns over s: integral contributions to the boundary values.
    pub q: PolyMat,
    /// ns x nbc over x: boundary-value contributions to the primary state.
    pub k: PolyMat,
    /// (n1+n2) x nbc: boundary-value contributions to (u1, u2)_x.
    pub v: Array2<f64>,
    /// ns x ns: identity on the n0 block.
    pub g0: Array2<f64>,
    /// ns x ns kernels: Volterra part of the state map.
    pub g1: KernelMat,
    /// (n1+n2) x ns: picks u1 out of the fundamental state.
    pub g3: Array2<f64>,
    /// (n1+n2) x ns: picks u2'' into the derivative map.
    pub g4: Array2<f64>,
}

pub fn structural(dims: StateDims) -> Structural {
    let (n0, n1, n2) = (dims.n0, dims.n1, dims.n2);
    let ns = dims.ns();
    let (nbc, nbf) = (dims.nbc(), dims.nbf());
    // Offsets into u_bf and u_bc.
    let (u1a, u1b, u2a, u2b, u2xa, u2xb) =
        (0, n1, 2 * n1, 2 * n1 + n2, 2 * n1 + 2 * n2, 2 * n1 + 3 * n2);
    let (bc_u1, bc_u2, bc_u2x) = (0, n1, n1 + n2);
    // State column offsets.
    let (s1, s2) = (n0, n0 + n1);

    let mut t = Array2::zeros((nbf, nbc));
    for i in 0..n1 {
        t[(u1a + i, bc_u1 + i)] = 1.0;
        t[(u1b + i, bc_u1 + i)] = 1.0;
    }
    for i in 0..n2 {
        t[(u2a + i, bc_u2 + i)] = 1.0;
        t[(u2b + i, bc_u2 + i)] = 1.0;
        t[(u2b + i, bc_u2x + i)] = 2.0; // interval width b - a = 2
        t[(u2xa + i, bc_u2x + i)] = 1.0;
        t[(u2xb + i, bc_u2x + i)] = 1.0;
    }

    let mut q = PolyMat::zeros(nbf, ns);
    for i in 0..n1 {
        *q.at_mut(u1b + i, s1 + i) = Poly::constant(1.0);
    }
    for i in 0..n2 {
        *q.at_mut(u2b + i, s2 + i) = Poly::linear(1.0, -1.0); // b - s = 1 - s
        *q.at_mut(u2xb + i, s2 + i) = Poly::constant(1.0);
    }

    let mut k = PolyMat::zeros(ns, nbc);
    for i in 0..n1 {
        *k.at_mut(s1 + i, bc_u1 + i) = Poly::constant(1.0);
    }
    for i in 0..n2 {
        *k.at_mut(s2 + i, bc_u2 + i) = Poly::constant(1.0);
        *k.at_mut(s2 + i, bc_u2x + i) = Poly::linear(1.0, 1.0); // x - a = x + 1
    }

    let mut v = Array2::zeros((n1 + n2, nbc));
    for i in 0..n2 {
        v[(n1 + i, bc_u2x + i)] = 1.0;
    }

    let mut g0 = Array2::zeros((ns, ns));
    for i in 0..n0 {
        g0[(i, i)] = 1.0;
    }

    let mut g1 = KernelMat::zeros(ns, ns);
    for i in 0..n1 {
        *g1.at_mut(s1 + i, s1 + i) = Kernel2::constant(1.0);
    }
    for i in 0..n2 {
        *g1.at_mut(s2 + i, s2 + i) = Kernel2::x_minus_s();
    }

    let mut g3 = Array2::zeros((n1 + n2, ns));
    for i in 0..n1 {
        g3[(i, s1 + i)] = 1.0;
    }
    let mut g4 = Array2::zeros((n1 + n2, ns));
    for i in 0..n2 {
        g4[(n1 + i, s2 + i)] = 1.0;
    }

    Structural {
        t,
        q,
        k,
        v,
        g0,
        g1,
        g3,
        g4,
    }
}

/// Default reciprocal-condition threshold below which B_T is treated as
/// singular.
pub const BT_RCOND_THRESHOLD: f64 = 1e-12;

/// Check invertibility of B_T = B T and return (B_T, B_T^-1, rcond).
pub fn check_bt(b: &Array2<f64>, dims: StateDims) -> Result<(Array2<f64>, Array2<f64>, f64)> {
    check_bt_with_threshold(b, dims, BT_RCOND_THRESHOLD)
}

pub fn check_bt_with_threshold(
    b: &Array2<f64>,
    dims: StateDims,
    threshold: f64,
) -> Result<(Array2<f64>, Array2<f64>, f64)> {
    let nbc = dims.nbc();
    if b.nrows() != nbc || b.ncols() != dims.nbf() {
        return Err(Error::InvalidInput(format!(
            "boundary matrix must be {} x {}, got {} x {}",
            nbc,
            dims.nbf(),
            b.nrows(),
            b.ncols()
        )));
    }
    let s = structural(dims);
    let bt = b.dot(&s.t);
    if nbc == 0 {
        return Ok((bt.clone(), bt, 1.0));
    }
    let (_, sigma, _) = bt
        .svd(false, false)
        .map_err(|e| Error::Linalg(format!("svd of B_T: {e}")))?;
    let smax = sigma.iter().cloned().fold(0.0, f64::max);
    let smin = sigma.iter().cloned().fold(f64::INFINITY, f64::min);
    let rcond = if smax > 0.0 { smin / smax } else { 0.0 };
    if !rcond.is_finite() || rcond <= threshold {
        return Err(Error::SingularBoundaryMap { rcond });
    }
    let bt_inv = bt
        .inv()
        .map_err(|e| Error::Linalg(format!("inverting B_T: {e}")))?;
    Ok((bt, bt_inv, rcond))
}

/// The partial integral equation T du_f/dt = A u_f + g on [-1, 1].
pub struct PieSystem {
    pub dims: StateDims,
    /// State map: u = K B_T^-1 h + T_op u_f.
    pub t_op: PiOperator,
    /// Right-hand operator on the fundamental state.
    pub a_op: PiOperator,
    pub b: Array2<f64>,
    pub bt: Array2<f64>,
    pub bt_inv: Array2<f64>,
    pub bt_rcond: f64,
    /// K(x) B_T^-1, ns x nbc: boundary-input profile of the state map.
    pub k_bti: PolyMat,
    /// A0 K B_T^-1 + A1 V B_T^-1, ns x nbc: spatial profile multiplying h(t)
    /// in the PIE forcing g.
    pub h_profile: PolyMat,
    /// -K B_T^-1, profile multiplying dh/dt in g.
    pub hdot_profile: PolyMat,
}

/// Convert a standardized PDE on [-1, 1] (coefficients as polynomial
/// matrices) into its PIE form.
pub fn convert(
    dims: StateDims,
    a0: &PolyMat,
    a1: &PolyMat,
    a2: &PolyMat,
    b: &Array2<f64>,
) -> Result<PieSystem> {
    let ns = dims.ns();
    assert_eq!((a0.rows, a0.cols), (ns, ns), "A0 must be ns x ns");
    assert_eq!(
        (a1.rows, a1.cols),
        (ns, dims.n1 + dims.n2),
        "A1 must be ns x (n1+n2)"
    );
    assert_eq!((a2.rows, a2.cols), (ns, dims.n2), "A2 must be ns x n2");

    let (bt, bt_inv, bt_rcond) = check_bt(b, dims)?;
    let s = structural(dims);

    // G2(x,s) = -K(x) B_T^-1 B Q(s); only this block and G5 see B.
    let bti_b = bt_inv.dot(b);
    let w = s.k.matmul_const(&bti_b); // ns x nbf, in x
    let g2 = w.contract_separable(&s.q).scale(-1.0);

    let t_op = PiOperator::new(PolyMat::from_const(&s.g0), s.g1.clone(), g2.clone());

    // H0 = A0 G0 + A1 G3 + [0 0 A2].
    let mut a20 = PolyMat::zeros(ns, ns);
    for r in 0..ns {
        for c in 0..dims.n2 {
            *a20.at_mut(r, dims.n0 + dims.n1 + c) = a2.at(r, c).clone();
        }
    }
    let h0 = a0
        .matmul_const(&s.g0)
        .add(&a1.matmul_const(&s.g3))
        .add(&a20);

    // H1 = A0 G1 + A1 G4 (the latter constant in s).
    let h1 = a0
        .matmul_kernel(&s.g1)
        .add(&KernelMat::from_poly_in_x(&a1.matmul_const(&s.g4)));

    // H2 = A0 G2 + A1 G5 with G5(s) = -V B_T^-1 B Q(s).
    let vb = s.v.dot(&bti_b); // (n1+n2) x nbf
    let g5 = PolyMat::const_matmul(&vb, &s.q).scale(-1.0); // in s
    let h2 = a0.matmul_kernel(&g2).add(&a1.contract_separable(&g5));

    let a_op = PiOperator::new(h0, h1, h2);

    let k_bti = s.k.matmul_const(&bt_inv);
    let v_bti = PolyMat::from_const(&s.v.dot(&bt_inv));
    let h_profile = a0.matmul(&k_bti).add(&a1.matmul(&v_bti));
    let hdot_profile = k_bti.scale(-1.0);

    Ok(PieSystem {
        dims,
        t_op,
        a_op,
        b: b.clone(),
        bt,
        bt_inv,
        bt_rcond,
        k_bti,
        h_profile,
        hdot_profile,
    })
}

impl PieSystem {
    /// Map a fundamental state and boundary data h to the primary state:
    /// u = K B_T^-1 h + T_op u_f.
    pub fn reconstruct_primary(&self, uf: &[ChebSeries], h: &[f64]) -> Vec<ChebSeries> {
        assert_eq!(h.len(), self.dims.nbc());
        let mut out = self.t_op.apply(uf);
        for (m, series) in out.iter_mut().enumerate() {
            for (j, &hj) in h.iter().enumerate() {
                let p = self.k_bti.at(m, j);
                if !p.is_zero() {
                    series.add_scaled_in_place(hj, &p.to_cheb());
                }
            }
        }
        out
    }

    /// Evaluate the full boundary-value vector
    /// (u1(-1), u1(1), u2(-1), u2(1), u2x(-1), u2x(1)) of a primary state.
    pub fn boundary_trace(&self, primary: &[ChebSeries]) -> Vec<f64> {
        boundary_trace(self.dims, primary)
    }
}

pub fn boundary_trace(dims: StateDims, primary: &[ChebSeries]) -> Vec<f64> {
    assert_eq!(primary.len(), dims.ns());
    let mut out = Vec::with_capacity(dims.nbf());
    let u1 = &primary[dims.n0..dims.n0 + dims.n1];
    let u2 = &primary[dims.n0 + dims.n1..];
    for end in [-1.0, 1.0] {
        for s in u1 {
            out.push(s.eval(end));
        }
    }
    for end in [-1.0, 1.0] {
        for s in u2 {
            out.push(s.eval(end));
        }
    }
    let du2: Vec<ChebSeries> = u2.iter().map(ChebSeries::derivative).collect();
    for end in [-1.0, 1.0] {
        for s in &du2 {
            out.push(s.eval(end));
        }
    }
    out
}

/// Rebuild a function from its first or second derivative expansion on the
/// computational interval, given the boundary values at the left endpoint:
/// order 1 needs u(-1), order 2 needs (u(-1), u'(-1)). Derivatives are with
/// respect to the computational variable; callers on a physical domain of
/// width other than 2 scale the input series and the slope accordingly.
pub fn reconstruct_from_derivatives(
    order: usize,
    deriv: &ChebSeries,
    boundary_values: &[f64],
) -> ChebSeries {
    assert!(order == 1 || order == 2, "order must be 1 or 2");
    assert_eq!(boundary_values.len(), order);
    match order {
        1 => {
            let mut out = deriv.antiderivative();
            out.coeffs[0] += boundary_values[0];
            out
        }
        _ => {
            // u(-1) + u'(-1)(x+1) + int_{-1}^{x} (x-s) u''(s) ds, the last
            // term being the twice-repeated antiderivative.
            let mut out = deriv.antiderivative().antiderivative();
            out.coeffs[0] += boundary_values[0] + boundary_values[1];
            out.coeffs[1] += boundary_values[1];
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn const_mat(m: &Array2<f64>) -> PolyMat {
        PolyMat::from_const(m)
    }

    /// Heat equation with Dirichlet left / Neumann right data: B_T is the
    /// identity and the elimination kernels come out in closed form.
    #[test]
    fn diffusion_dirichlet_neumann_kernels() {
        let dims = StateDims::new(0, 0, 1);
        let nu = 0.5;
        let b = array![[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0]];
        let a0 = const_mat(&array![[0.0]]);
        let a1 = PolyMat::zeros(1, 1);
        let a2 = const_mat(&array![[nu]]);
        let pie = convert(dims, &a0, &a1, &a2, &b).unwrap();

        assert!((pie.bt[(0, 0)] - 1.0).abs() < 1e-15);
        assert!((pie.bt[(1, 1)] - 1.0).abs() < 1e-15);
        assert!(pie.bt[(0, 1)].abs() < 1e-15 && pie.bt[(1, 0)].abs() < 1e-15);

        // G1 = x - s, G2 = -(x + 1) independent of s, H0 = nu.
        for (x, s) in [(0.3, -0.8), (-0.5, 0.1), (0.9, 0.9)] {
            assert!((pie.t_op.n1.at(0, 0).eval(x, s) - (x - s)).abs() < 1e-14);
            assert!((pie.t_op.n2.at(0, 0).eval(x, s) + (x + 1.0)).abs() < 1e-14);
            assert!(pie.a_op.n1.at(0, 0).eval(x, s).abs() < 1e-15);
            assert!(pie.a_op.n2.at(0, 0).eval(x, s).abs() < 1e-15);
        }
        assert!((pie.a_op.n0.at(0, 0).eval(0.4) - nu).abs() < 1e-15);
        // K B_T^-1 = [1, x+1].
        assert!((pie.k_bti.at(0, 0).eval(0.7) - 1.0).abs() < 1e-15);
        assert!((pie.k_bti.at(0, 1).eval(0.7) - 1.7).abs() < 1e-15);
    }

    /// Dirichlet-Dirichlet elimination kernel: G2 = (x+1)(s-1)/2.
    #[test]
    fn diffusion_dirichlet_dirichlet_kernel() {
        let dims = StateDims::new(0, 0, 1);
        let b = array![[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]];
        let a0 = const_mat(&array![[0.0]]);
        let a1 = PolyMat::zeros(1, 1);
        let a2 = const_mat(&array![[1.0]]);
        let pie = convert(dims, &a0, &a1, &a2, &b).unwrap();
        for (x, s) in [(0.3, -0.8), (-0.5, 0.1), (0.9, -0.2)] {
            let want = 0.5 * (x + 1.0) * (s - 1.0);
            assert!((pie.t_op.n2.at(0, 0).eval(x, s) - want).abs() < 1e-14);
        }
    }

    /// Advection with inflow data at the left end: no elimination kernel at
    /// all, H0 = -c.
    #[test]
    fn transport_inflow_conversion() {
        let dims = StateDims::new(0, 1, 0);
        let c = 4.0;
        let b = array![[1.0, 0.0]];
        let a0 = const_mat(&array![[0.0]]);
        let a1 = const_mat(&array![[-c]]);
        let a2 = PolyMat::zeros(1, 0);
        let pie = convert(dims, &a0, &a1, &a2, &b).unwrap();
        assert!(pie.t_op.n2.at(0, 0).is_zero());
        assert!((pie.t_op.n1.at(0, 0).eval(0.2, -0.4) - 1.0).abs() < 1e-15);
        assert!((pie.a_op.n0.at(0, 0).eval(0.1) + c).abs() < 1e-15);
        assert!(pie.a_op.n1.at(0, 0).is_zero() && pie.a_op.n2.at(0, 0).is_zero());
    }

    #[test]
    fn neumann_neumann_is_rejected() {
        let dims = StateDims::new(0, 0, 1);
        let b = array![[0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]];
        match check_bt(&b, dims) {
            Err(Error::SingularBoundaryMap { .. }) => {}
            other => panic!("expected singular boundary map, got {other:?}"),
        }
    }

    #[test]
    fn periodic_first_order_is_rejected() {
        let dims = StateDims::new(0, 1, 0);
        let b = array![[1.0, -1.0]];
        match check_bt(&b, dims) {
            Err(Error::SingularBoundaryMap { .. }) => {}
            other => panic!("expected singular boundary map, got {other:?}"),
        }
    }

    #[test]
    fn reconstruct_constant_curvature() {
        // u'' = 2, u(-1) = u'(-1) = 0 integrates to (x+1)^2.
        let u = reconstruct_from_derivatives(2, &ChebSeries::constant(2.0), &[0.0, 0.0]);
        for &x in &[-1.0, -0.25, 0.5, 1.0] {
            assert!((u.eval(x) - (x + 1.0) * (x + 1.0)).abs() < 1e-14);
        }
    }

    /// Round trip of the state map on a hand-sized case: differentiate the
    /// reconstructed primary state and land back on the fundamental state,
    /// and check the boundary condition is met exactly.
    #[test]
    fn state_map_round_trip_dirichlet_neumann() {
        let dims = StateDims::new(0, 0, 1);
        let b = array![[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0]];
        let a0 = const_mat(&array![[0.0]]);
        let a1 = PolyMat::zeros(1, 1);
        let a2 = const_mat(&array![[1.0]]);
        let pie = convert(dims, &a0, &a1, &a2, &b).unwrap();

        let uf = vec![ChebSeries::new(vec![0.4, -1.1, 0.3, 0.9])];
        let h = [0.7, -0.2];
        let primary = pie.reconstruct_primary(&uf, &h);
        let ddu = primary[0].derivative().derivative();
        for k in 0..uf[0].coeffs.len() {
            assert!((ddu.coeff(k) - uf[0].coeff(k)).abs() < 1e-13);
        }
        let trace = pie.boundary_trace(&primary);
        let bh: Vec<f64> = (0..2)
            .map(|r| (0..4).map(|c| pie.b[(r, c)] * trace[c]).sum())
            .collect();
        assert!((bh[0] - h[0]).abs() < 1e-13);
        assert!((bh[1] - h[1]).abs() < 1e-13);
    }
}
