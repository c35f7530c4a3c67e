//! Dense linear-algebra helpers on top of LAPACK.
//!
//! Thin wrappers with the error type of this crate, plus a Pade matrix
//! exponential used when a propagator is needed for a non-diagonalizable
//! system.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eig, Inverse, Solve, SVD};
use num_complex::Complex64;

use crate::{Error, Result};

pub fn to_complex(a: &Array2<f64>) -> Array2<Complex64> {
    a.mapv(|v| Complex64::new(v, 0.0))
}

/// Eigen-decomposition of a real matrix: (values, right eigenvectors).
pub fn eig(a: &Array2<f64>) -> Result<(Array1<Complex64>, Array2<Complex64>)> {
    a.eig().map_err(|e| Error::Linalg(format!("eigendecomposition failed: {e}")))
}

pub fn eig_complex(a: &Array2<Complex64>) -> Result<(Array1<Complex64>, Array2<Complex64>)> {
    a.eig().map_err(|e| Error::Linalg(format!("eigendecomposition failed: {e}")))
}

pub fn inv_complex(a: &Array2<Complex64>) -> Result<Array2<Complex64>> {
    a.inv().map_err(|e| Error::Linalg(format!("matrix inverse failed: {e}")))
}

pub fn inv(a: &Array2<f64>) -> Result<Array2<f64>> {
    a.inv().map_err(|e| Error::Linalg(format!("matrix inverse failed: {e}")))
}

/// X = A^-1 B column by column through one LU factorization.
pub fn solve_multi(a: &Array2<f64>, b: &Array2<f64>) -> Result<Array2<f64>> {
    use ndarray_linalg::Factorize;
    let f = a
        .factorize()
        .map_err(|e| Error::Linalg(format!("LU factorization failed: {e}")))?;
    let mut out = Array2::zeros(b.raw_dim());
    for (j, col) in b.columns().into_iter().enumerate() {
        let x = f
            .solve(&col.to_owned())
            .map_err(|e| Error::Linalg(format!("linear solve failed: {e}")))?;
        out.column_mut(j).assign(&x);
    }
    Ok(out)
}

pub fn solve(a: &Array2<f64>, b: &Array1<f64>) -> Result<Array1<f64>> {
    a.solve(b).map_err(|e| Error::Linalg(format!("linear solve failed: {e}")))
}

pub fn frob(a: &Array2<f64>) -> f64 {
    a.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn frob_complex(a: &Array2<Complex64>) -> f64 {
    a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Relative residual ||S diag(vals) S^-1 - A||_F / ||A||_F of a candidate
/// eigen-decomposition; large values flag a defective (non-diagonalizable)
/// matrix whose eigenvector matrix is numerically singular.
pub fn diagonalization_residual(
    a: &Array2<Complex64>,
    vals: &Array1<Complex64>,
    vecs: &Array2<Complex64>,
    vecs_inv: &Array2<Complex64>,
) -> f64 {
    let n = a.nrows();
    let mut scaled = vecs.clone();
    for (j, lam) in vals.iter().enumerate() {
        for i in 0..n {
            scaled[[i, j]] *= lam;
        }
    }
    let recomposed = scaled.dot(vecs_inv);
    let denom = frob_complex(a).max(f64::MIN_POSITIVE);
    frob_complex(&(&recomposed - a)) / denom
}

/// Smallest-to-largest singular value ratio; 0 for an exactly singular map.
pub fn rcond(a: &Array2<f64>) -> Result<f64> {
    let (_, sv, _) = a
        .svd(false, false)
        .map_err(|e| Error::Linalg(format!("SVD failed: {e}")))?;
    let max = sv.iter().cloned().fold(0.0_f64, f64::max);
    if max == 0.0 {
        return Ok(0.0);
    }
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(min / max)
}

fn one_norm(a: &Array2<f64>) -> f64 {
    (0..a.ncols())
        .map(|j| a.column(j).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0_f64, f64::max)
}

/// Matrix exponential by 13th-order Pade approximation with scaling and
/// squaring.
pub fn expm(a: &Array2<f64>) -> Result<Array2<f64>> {
    const THETA13: f64 = 5.371920351148152;
    const B: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    let norm = one_norm(a);
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let a = a.mapv(|v| v / 2f64.powi(s as i32));
    let eye = Array2::<f64>::eye(n);
    let a2 = a.dot(&a);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);
    let u_inner = a6.dot(&(&a6 * B[13] + &a4 * B[11] + &a2 * B[9]))
        + &a6 * B[7]
        + &a4 * B[5]
        + &a2 * B[3]
        + &eye * B[1];
    let u = a.dot(&u_inner);
    let v = a6.dot(&(&a6 * B[12] + &a4 * B[10] + &a2 * B[8]))
        + &a6 * B[6]
        + &a4 * B[4]
        + &a2 * B[2]
        + &eye * B[0];
    let mut r = solve_multi(&(&v - &u), &(&v + &u))?;
    for _ in 0..s {
        r = r.dot(&r);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn expm_of_diagonal() {
        let a = array![[1.0, 0.0], [0.0, -2.0]];
        let e = expm(&a).unwrap();
        assert!((e[[0, 0]] - 1f64.exp()).abs() < 1e-14);
        assert!((e[[1, 1]] - (-2f64).exp()).abs() < 1e-14);
        assert!(e[[0, 1]].abs() < 1e-15 && e[[1, 0]].abs() < 1e-15);
    }

    #[test]
    fn expm_of_rotation_generator() {
        let th = 1.3;
        let a = array![[0.0, -th], [th, 0.0]];
        let e = expm(&a).unwrap();
        assert!((e[[0, 0]] - th.cos()).abs() < 1e-14);
        assert!((e[[0, 1]] + th.sin()).abs() < 1e-14);
        assert!((e[[1, 0]] - th.sin()).abs() < 1e-14);
    }

    #[test]
    fn expm_of_nilpotent() {
        let a = array![[0.0, 3.0], [0.0, 0.0]];
        let e = expm(&a).unwrap();
        assert!((e[[0, 0]] - 1.0).abs() < 1e-15);
        assert!((e[[0, 1]] - 3.0).abs() < 1e-15);
        assert!((e[[1, 1]] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn expm_handles_large_norm_by_scaling() {
        let a = array![[-40.0, 10.0], [0.0, -30.0]];
        let e = expm(&a).unwrap();
        // Upper-triangular closed form: diag e^{a_ii}, off-diag
        // 10 (e^{-40} - e^{-30}) / (-40 + 30).
        let want01 = 10.0 * ((-40f64).exp() - (-30f64).exp()) / (-10.0);
        assert!((e[[0, 0]] - (-40f64).exp()).abs() < 1e-28);
        assert!((e[[1, 1]] - (-30f64).exp()).abs() < 1e-25);
        assert!((e[[0, 1]] - want01).abs() < 1e-25);
        assert!(e[[1, 0]].abs() == 0.0 || e[[1, 0]].abs() < 1e-30);
    }

    #[test]
    fn eig_round_trip() {
        let a = array![[2.0, 1.0], [1.0, 3.0]];
        let (vals, vecs) = eig(&a).unwrap();
        let vinv = inv_complex(&vecs).unwrap();
        let res = diagonalization_residual(&to_complex(&a), &vals, &vecs, &vinv);
        assert!(res < 1e-14, "residual {res}");
    }

    #[test]
    fn rcond_detects_singular() {
        let a = array![[1.0, 2.0], [2.0, 4.0]];
        assert!(rcond(&a).unwrap() < 1e-15);
        let b = array![[1.0, 0.0], [0.0, 0.5]];
        assert!((rcond(&b).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn solve_multi_matches_inverse() {
        let a = array![[3.0, 1.0], [1.0, 2.0]];
        let b = array![[1.0, 0.0], [0.0, 1.0]];
        let x = solve_multi(&a, &b).unwrap();
        let ainv = inv(&a).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((x[[i, j]] - ainv[[i, j]]).abs() < 1e-14);
            }
        }
    }
}
