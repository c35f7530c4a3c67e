//! Shared oracle machinery for the integration suites.
//!
//! The quadrature here is deliberately independent of the library: the
//! library applies integral operators through the Chebyshev antiderivative
//! recurrence, while these oracles integrate the defining formulas
//! numerically with an adaptive Gauss-Kronrod rule, and evaluate Chebyshev
//! polynomials through the cosine form T_k(x) = cos(k arccos x). Agreement
//! between the two routes checks the algebra, not the round trip of one
//! implementation against itself.

use ndarray::Array2;
use pie_spectral::conversion::check_bt;
use pie_spectral::poly::{Poly, PolyMat};
use pie_spectral::StateDims;
use rand::Rng;

/// 15-point Kronrod abscissae (positive half; the rule is symmetric).
const XK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];

/// 15-point Kronrod weights matching `XK`.
const WK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

/// 7-point Gauss weights for the odd-indexed abscissae of `XK`.
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let f_center = f(c);
    let mut kronrod = WK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    for j in 0..7 {
        let dx = h * XK[j];
        let pair = f(c - dx) + f(c + dx);
        kronrod += WK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * h, (kronrod - gauss).abs() * h)
}

fn adaptive_rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: usize) -> f64 {
    let (value, err) = gk15(f, a, b);
    if err <= tol || depth == 0 {
        return value;
    }
    let c = 0.5 * (a + b);
    adaptive_rec(f, a, c, 0.5 * tol, depth - 1) + adaptive_rec(f, c, b, 0.5 * tol, depth - 1)
}

/// Adaptive Gauss-Kronrod integral of `f` over [a, b] to absolute
/// tolerance `tol`.
pub fn adaptive_integral(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    adaptive_rec(&f, a, b, tol, 28)
}

/// Chebyshev polynomial of the first kind through the trigonometric form,
/// valid on [-1, 1].
pub fn cheb_t(k: usize, x: f64) -> f64 {
    (k as f64 * x.clamp(-1.0, 1.0).acos()).cos()
}

/// A randomly generated well-posed system on [-1, 1].
pub struct RandomSystem {
    pub dims: StateDims,
    pub a0: PolyMat,
    pub a1: PolyMat,
    pub a2: PolyMat,
    pub b: Array2<f64>,
}

fn random_poly(rng: &mut impl Rng) -> Poly {
    let deg = rng.random_range(0..=2);
    Poly::new((0..=deg).map(|_| rng.random_range(-1.0..1.0)).collect())
}

fn random_poly_mat(rng: &mut impl Rng, rows: usize, cols: usize) -> PolyMat {
    PolyMat::from_fn(rows, cols, |_, _| random_poly(rng))
}

/// Random boundary matrix with reciprocal condition of B_T at least 0.05,
/// found by resampling. Entries are uniform on [-1, 1].
pub fn random_well_posed_b(rng: &mut impl Rng, dims: StateDims) -> Array2<f64> {
    let (nbc, nbf) = (dims.nbc(), dims.nbf());
    if nbc == 0 {
        return Array2::zeros((0, 0));
    }
    loop {
        let b = Array2::from_shape_fn((nbc, nbf), |_| rng.random_range(-1.0..1.0));
        if let Ok((_, _, rcond)) = check_bt(&b, dims) {
            if rcond > 0.05 {
                return b;
            }
        }
    }
}

/// Random system with n0, n1, n2 in {0, 1, 2} (at least one state),
/// polynomial coefficients of degree at most 2, and a well-posed B.
pub fn random_system(rng: &mut impl Rng) -> RandomSystem {
    let dims = loop {
        let d = StateDims::new(
            rng.random_range(0..=2),
            rng.random_range(0..=2),
            rng.random_range(0..=2),
        );
        if d.ns() > 0 {
            break d;
        }
    };
    let ns = dims.ns();
    RandomSystem {
        dims,
        a0: random_poly_mat(rng, ns, ns),
        a1: random_poly_mat(rng, ns, dims.n1 + dims.n2),
        a2: random_poly_mat(rng, ns, dims.n2),
        b: random_well_posed_b(rng, dims),
    }
}

/// Oracle value of a 3-PI operator entry applied to the basis function
/// T_k in component `comp`, evaluated at `x`: the multiplier plus the two
/// integral terms computed by adaptive quadrature.
pub fn pi_apply_oracle(
    op: &pie_spectral::PiOperator,
    row: usize,
    comp: usize,
    k: usize,
    x: f64,
    tol: f64,
) -> f64 {
    let mut value = op.n0.at(row, comp).eval(x) * cheb_t(k, x);
    let n1 = op.n1.at(row, comp);
    if !n1.is_zero() {
        value += adaptive_integral(|s| n1.eval(x, s) * cheb_t(k, s), -1.0, x, tol);
    }
    let n2 = op.n2.at(row, comp);
    if !n2.is_zero() {
        value += adaptive_integral(|s| n2.eval(x, s) * cheb_t(k, s), -1.0, 1.0, tol);
    }
    value
}
