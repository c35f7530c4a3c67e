//! Chebyshev series algebra on the reference interval [-1, 1].
//!
//! A [`ChebSeries`] stores coefficients a_k of sum_k a_k T_k(x). All
//! operations used by the solver (multiplication by x, products, derivatives,
//! antiderivatives) map polynomials to polynomials through the classical
//! recurrences
//!
//! ```text
//! x T_0 = T_1                     x T_k = (T_{k-1} + T_{k+1}) / 2
//! T_m T_k = (T_{m+k} + T_{|m-k|}) / 2
//! int T_0 = T_1,  int T_1 = (T_0 + T_2)/4,
//! int T_k = (T_{k+1}/(k+1) - T_{k-1}/(k-1)) / 2   for k >= 2
//! ```
//!
//! so they are exact up to floating-point rounding; no quadrature is involved
//! anywhere in this module except [`ChebSeries::from_fn`], which interpolates
//! at the Chebyshev-Gauss-Lobatto nodes (and is itself exact for polynomial
//! input of matching degree).

use std::f64::consts::PI;

/// Chebyshev weight of T_k in the L2_w inner product: (T_0,T_0) = pi,
/// (T_k,T_k) = pi/2 for k >= 1.
pub fn basis_weight(k: usize) -> f64 {
    if k == 0 {
        PI
    } else {
        PI / 2.0
    }
}

/// A finite Chebyshev expansion sum_k coeffs[k] T_k(x) on [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries {
    pub coeffs: Vec<f64>,
}

impl ChebSeries {
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        Self { coeffs }
    }

    /// The zero series.
    pub fn zero() -> Self {
        Self { coeffs: vec![0.0] }
    }

    pub fn constant(c: f64) -> Self {
        Self { coeffs: vec![c] }
    }

    /// The basis polynomial T_k.
    pub fn basis(k: usize) -> Self {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = 1.0;
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of T_k, zero beyond the stored length.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Interpolate `f` at the N+1 Chebyshev-Gauss-Lobatto nodes
    /// x_j = cos(pi j / N) and return the interpolant's coefficients.
    /// Exact (up to rounding) when `f` is a polynomial of degree <= N.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> f64) -> Self {
        if n == 0 {
            return Self::constant(f(1.0));
        }
        let nodes: Vec<f64> = (0..=n).map(|j| (PI * j as f64 / n as f64).cos()).collect();
        let fx: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
        let mut coeffs = vec![0.0; n + 1];
        for (k, ck) in coeffs.iter_mut().enumerate() {
            let mut acc = 0.5 * (fx[0] + if k % 2 == 0 { fx[n] } else { -fx[n] });
            for j in 1..n {
                acc += fx[j] * (PI * (j * k) as f64 / n as f64).cos();
            }
            let scale = if k == 0 || k == n { 1.0 } else { 2.0 };
            *ck = scale * acc / n as f64;
        }
        Self { coeffs }
    }

    /// Clenshaw evaluation. `x` must lie in [-1, 1] up to a small slack;
    /// values outside the interval indicate a mapping bug in the caller.
    pub fn eval(&self, x: f64) -> f64 {
        assert!(
            x.abs() <= 1.0 + 1e-12,
            "evaluation point {x} outside [-1, 1]"
        );
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for &a in self.coeffs.iter().skip(1).rev() {
            let next = a + 2.0 * x * b1 - b2;
            b2 = b1;
            b1 = next;
        }
        self.coeffs[0] + x * b1 - b2
    }

    /// Multiply the expansion by x.
    pub fn mul_x(&self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![0.0; n + 1];
        for (k, &a) in self.coeffs.iter().enumerate() {
            if k == 0 {
                out[1] += a;
            } else {
                out[k - 1] += 0.5 * a;
                out[k + 1] += 0.5 * a;
            }
        }
        Self { coeffs: out }
    }

    /// Exact product via the linearization T_m T_k = (T_{m+k} + T_{|m-k|})/2.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (m, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (k, &b) in other.coeffs.iter().enumerate() {
                let half = 0.5 * a * b;
                out[m + k] += half;
                out[m.abs_diff(k)] += half;
            }
        }
        Self { coeffs: out }
    }

    /// Term-by-term derivative, degree drops by one.
    pub fn derivative(&self) -> Self {
        let n = self.degree();
        if n == 0 {
            return Self::zero();
        }
        let mut out = vec![0.0; n];
        // c'_{k-1} = c'_{k+1} + 2k c_k, descending, then halve c'_0.
        for k in (1..=n).rev() {
            let above = if k + 1 < n { out[k + 1] } else { 0.0 };
            out[k - 1] = above + 2.0 * k as f64 * self.coeffs[k];
        }
        out[0] *= 0.5;
        Self { coeffs: out }
    }

    /// Antiderivative normalized to vanish at x = -1.
    pub fn antiderivative(&self) -> Self {
        let n = self.degree();
        let mut out = vec![0.0; n + 2];
        out[1] = self.coeff(0) - 0.5 * self.coeff(2);
        for k in 2..=n + 1 {
            out[k] = (self.coeff(k - 1) - self.coeff(k + 1)) / (2.0 * k as f64);
        }
        // Fix the constant so the result is zero at -1, where T_k = (-1)^k.
        let mut at_minus_one = 0.0;
        let mut sign = -1.0;
        for &a in out.iter().skip(1) {
            at_minus_one += sign * a;
            sign = -sign;
        }
        out[0] = -at_minus_one;
        Self { coeffs: out }
    }

    /// Definite integral over [-1, 1].
    pub fn definite_integral(&self) -> f64 {
        // The antiderivative vanishes at -1, so only the value at 1 remains;
        // there sum_k a_k, taken termwise, telescopes to the even-k formula.
        let mut acc = 0.0;
        for (k, &a) in self.coeffs.iter().enumerate() {
            if k % 2 == 0 {
                // int_{-1}^{1} T_k = -2 / (k^2 - 1) for even k.
                acc += a * 2.0 / (1.0 - (k * k) as f64);
            }
        }
        acc
    }

    /// Weighted inner product int u v / sqrt(1-x^2) dx of two expansions.
    pub fn weighted_inner(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut acc = 0.0;
        for k in 0..n {
            acc += basis_weight(k) * self.coeffs[k] * other.coeffs[k];
        }
        acc
    }

    /// Keep coefficients up to T_max_degree, discarding the tail.
    pub fn truncated(&self, max_degree: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(max_degree + 1);
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    /// Drop trailing coefficients that are exactly zero.
    pub fn trimmed(mut self) -> Self {
        while self.coeffs.len() > 1 && *self.coeffs.last().unwrap() == 0.0 {
            self.coeffs.pop();
        }
        self
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0.0; n];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.coeff(k) + other.coeff(k);
        }
        Self { coeffs: out }
    }

    /// self += s * other, growing as needed.
    pub fn add_scaled_in_place(&mut self, s: f64, other: &Self) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), 0.0);
        }
        for (k, &b) in other.coeffs.iter().enumerate() {
            self.coeffs[k] += s * b;
        }
    }

    /// Convert monomial coefficients (ascending powers of x) to Chebyshev.
    pub fn from_monomial(monomial: &[f64]) -> Self {
        // Horner in Chebyshev arithmetic: exact for any polynomial.
        let mut out = Self::constant(*monomial.last().unwrap_or(&0.0));
        for &c in monomial.iter().rev().skip(1) {
            out = out.mul_x();
            out.coeffs[0] += c;
        }
        out
    }

    /// Convert to monomial coefficients (ascending powers of x).
    pub fn to_monomial(&self) -> Vec<f64> {
        let n = self.degree();
        let mut out = vec![0.0; n + 1];
        // Rows of the T_k monomial expansion via T_{k+1} = 2x T_k - T_{k-1}.
        let mut prev = vec![1.0]; // T_0
        let mut cur = vec![0.0, 1.0]; // T_1
        for (k, &a) in self.coeffs.iter().enumerate() {
            if k >= 2 {
                let mut next = vec![0.0; k + 1];
                for (p, &c) in cur.iter().enumerate() {
                    next[p + 1] += 2.0 * c;
                }
                for (p, &c) in prev.iter().enumerate() {
                    next[p] -= c;
                }
                prev = std::mem::replace(&mut cur, next);
            }
            let row: &[f64] = if k == 0 { &prev } else { &cur };
            for (p, &c) in row.iter().enumerate() {
                out[p] += a * c;
            }
        }
        out
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, a| m.max(a.abs()))
    }
}
