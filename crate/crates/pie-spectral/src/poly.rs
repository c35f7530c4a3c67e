//! Polynomial data carried by the integral operators.
//!
//! Kernels of the 3-PI operators that arise from the boundary elimination are
//! low-degree polynomials, separable in x and s. They are kept in monomial
//! form (coefficient of x^p s^q) and converted to Chebyshev expansions only at
//! the point of application, so every algebraic step stays exact.

use crate::chebyshev::ChebSeries;
use ndarray::Array2;

/// Univariate polynomial, ascending monomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    pub coeffs: Vec<f64>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { coeffs: vec![0.0] }
    }

    pub fn constant(c: f64) -> Self {
        Self { coeffs: vec![c] }
    }

    /// c0 + c1 x.
    pub fn linear(c0: f64, c1: f64) -> Self {
        Self {
            coeffs: vec![c0, c1],
        }
    }

    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0.0; n];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.coeffs.get(k).unwrap_or(&0.0) + other.coeffs.get(k).unwrap_or(&0.0);
        }
        Self { coeffs: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// p(alpha x + beta), exact; used to recompose coefficients on the
    /// computational interval.
    pub fn compose_affine(&self, alpha: f64, beta: f64) -> Self {
        let arg = Poly::linear(beta, alpha);
        let mut out = Poly::constant(*self.coeffs.last().unwrap());
        for &c in self.coeffs.iter().rev().skip(1) {
            out = out.mul(&arg);
            out.coeffs[0] += c;
        }
        out
    }

    pub fn to_cheb(&self) -> ChebSeries {
        ChebSeries::from_monomial(&self.coeffs)
    }
}

/// Bivariate polynomial sum_{p,q} c\[p\]\[q\] x^p s^q on the unit square of
/// kernel arguments.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel2 {
    /// Rectangular grid, c\[p\]\[q\] multiplies x^p s^q.
    pub c: Vec<Vec<f64>>,
}

impl Kernel2 {
    pub fn zero() -> Self {
        Self { c: vec![vec![0.0]] }
    }

    pub fn constant(v: f64) -> Self {
        Self { c: vec![vec![v]] }
    }

    /// px(x) * ps(s).
    pub fn separable(px: &Poly, ps: &Poly) -> Self {
        let c = px
            .coeffs
            .iter()
            .map(|&a| ps.coeffs.iter().map(|&b| a * b).collect())
            .collect();
        Self { c }
    }

    /// x - s.
    pub fn x_minus_s() -> Self {
        Self {
            c: vec![vec![0.0, -1.0], vec![1.0, 0.0]],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|row| row.iter().all(|&v| v == 0.0))
    }

    pub fn eval(&self, x: f64, s: f64) -> f64 {
        let mut acc = 0.0;
        let mut xp = 1.0;
        for row in &self.c {
            let mut sq = 1.0;
            for &v in row {
                acc += v * xp * sq;
                sq *= s;
            }
            xp *= x;
        }
        acc
    }

    pub fn add_scaled(&mut self, s: f64, other: &Self) {
        let rows = self.c.len().max(other.c.len());
        let cols = self
            .c
            .iter()
            .chain(other.c.iter())
            .map(|r| r.len())
            .max()
            .unwrap();
        self.c.resize(rows, Vec::new());
        for row in self.c.iter_mut() {
            row.resize(cols, 0.0);
        }
        for (p, row) in other.c.iter().enumerate() {
            for (q, &v) in row.iter().enumerate() {
                self.c[p][q] += s * v;
            }
        }
    }

    /// Multiply by a polynomial in the x argument.
    pub fn mul_poly_x(&self, p: &Poly) -> Self {
        let mut out = vec![vec![0.0; self.c.first().map_or(1, Vec::len)]; self.c.len() + p.degree()];
        for (i, &a) in p.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (pp, row) in self.c.iter().enumerate() {
                for (q, &v) in row.iter().enumerate() {
                    out[i + pp][q] += a * v;
                }
            }
        }
        Self { c: out }
    }

    /// Iterate nonzero (p, q, coefficient) terms.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.c.iter().enumerate().flat_map(|(p, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, &v)| v != 0.0)
                .map(move |(q, &v)| (p, q, v))
        })
    }

    pub fn s_degree(&self) -> usize {
        self.c.first().map_or(0, |r| r.len() - 1)
    }
}

/// Dense row-major matrix of polynomial-valued entries.
#[derive(Debug, Clone)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

pub type PolyMat = Mat<Poly>;
pub type KernelMat = Mat<Kernel2>;

impl<T: Clone> Mat<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl PolyMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Poly::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| Poly::constant(if r == c { 1.0 } else { 0.0 }))
    }

    pub fn from_const(m: &Array2<f64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |r, c| Poly::constant(m[(r, c)]))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self.at(r, c).add(other.at(r, c)))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| self.at(r, c).scale(s))
    }

    /// self(x) * m, constant matrix on the right.
    pub fn matmul_const(&self, m: &Array2<f64>) -> Self {
        assert_eq!(self.cols, m.nrows());
        Self::from_fn(self.rows, m.ncols(), |r, c| {
            let mut acc = Poly::zero();
            for j in 0..self.cols {
                let v = m[(j, c)];
                if v != 0.0 {
                    acc = acc.add(&self.at(r, j).scale(v));
                }
            }
            acc
        })
    }

    /// m * self(x), constant matrix on the left.
    pub fn const_matmul(m: &Array2<f64>, p: &Self) -> Self {
        assert_eq!(m.ncols(), p.rows);
        Self::from_fn(m.nrows(), p.cols, |r, c| {
            let mut acc = Poly::zero();
            for j in 0..p.rows {
                let v = m[(r, j)];
                if v != 0.0 {
                    acc = acc.add(&p.at(j, c).scale(v));
                }
            }
            acc
        })
    }

    /// self(x) * other(x), same argument.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = Poly::zero();
            for j in 0..self.cols {
                let l = self.at(r, j);
                let rp = other.at(j, c);
                if !l.is_zero() && !rp.is_zero() {
                    acc = acc.add(&l.mul(rp));
                }
            }
            acc
        })
    }

    /// Separable contraction: entry (r, c) = sum_j self_rj(x) other_jc(s).
    pub fn contract_separable(&self, other_in_s: &Self) -> KernelMat {
        assert_eq!(self.cols, other_in_s.rows);
        KernelMat::from_fn(self.rows, other_in_s.cols, |r, c| {
            let mut acc = Kernel2::zero();
            for j in 0..self.cols {
                let px = self.at(r, j);
                let ps = other_in_s.at(j, c);
                if !px.is_zero() && !ps.is_zero() {
                    acc.add_scaled(1.0, &Kernel2::separable(px, ps));
                }
            }
            acc
        })
    }

    /// self(x) * kernel(x, s).
    pub fn matmul_kernel(&self, k: &KernelMat) -> KernelMat {
        assert_eq!(self.cols, k.rows);
        KernelMat::from_fn(self.rows, k.cols, |r, c| {
            let mut acc = Kernel2::zero();
            for j in 0..self.cols {
                let p = self.at(r, j);
                let g = k.at(j, c);
                if !p.is_zero() && !g.is_zero() {
                    acc.add_scaled(1.0, &g.mul_poly_x(p));
                }
            }
            acc
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    /// Recompose every entry as a polynomial of alpha x + beta.
    pub fn compose_affine(&self, alpha: f64, beta: f64) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| {
            self.at(r, c).compose_affine(alpha, beta)
        })
    }
}

impl KernelMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Kernel2::zero())
    }

    pub fn from_poly_in_x(p: &PolyMat) -> Self {
        Self::from_fn(p.rows, p.cols, |r, c| {
            Kernel2::separable(p.at(r, c), &Poly::constant(1.0))
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| {
            let mut acc = self.at(r, c).clone();
            acc.add_scaled(1.0, other.at(r, c));
            acc
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| {
            let mut acc = Kernel2::zero();
            acc.add_scaled(s, self.at(r, c));
            acc
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Kernel2::is_zero)
    }
}
