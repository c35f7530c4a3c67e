//! Matrix-valued 3-PI operators.
//!
//! A 3-PI operator maps a vector state u(x) on [-1, 1] to
//!
//! ```text
//! (P u)(x) = N0(x) u(x) + int_{-1}^{x} N1(x,s) u(s) ds + int_{-1}^{1} N2(x,s) u(s) ds
//! ```
//!
//! with polynomial multiplier N0 and polynomial kernels N1 (Volterra part) and
//! N2 (full-interval part). Applied to a Chebyshev expansion the result is
//! again a finite Chebyshev expansion, computed exactly: powers of s become
//! repeated `mul_x`, the inner integrals go through the antiderivative
//! recurrence, and the full-interval integral is the antiderivative evaluated
//! at the right endpoint (it vanishes at the left one by construction).

use crate::chebyshev::ChebSeries;
use crate::poly::{KernelMat, PolyMat};

/// A 3-PI operator with output dimension `rows` and input dimension `cols`.
#[derive(Debug, Clone)]
pub struct PiOperator {
    pub n0: PolyMat,
    pub n1: KernelMat,
    pub n2: KernelMat,
}

impl PiOperator {
    pub fn new(n0: PolyMat, n1: KernelMat, n2: KernelMat) -> Self {
        assert_eq!((n0.rows, n0.cols), (n1.rows, n1.cols));
        assert_eq!((n0.rows, n0.cols), (n2.rows, n2.cols));
        Self { n0, n1, n2 }
    }

    /// Pure multiplication operator.
    pub fn multiplier(n0: PolyMat) -> Self {
        let (r, c) = (n0.rows, n0.cols);
        Self {
            n0,
            n1: KernelMat::zeros(r, c),
            n2: KernelMat::zeros(r, c),
        }
    }

    pub fn rows(&self) -> usize {
        self.n0.rows
    }

    pub fn cols(&self) -> usize {
        self.n0.cols
    }

    /// Apply to a state given per component as a Chebyshev expansion.
    pub fn apply(&self, state: &[ChebSeries]) -> Vec<ChebSeries> {
        assert_eq!(state.len(), self.cols());
        let mut out = vec![ChebSeries::zero(); self.rows()];
        for (n, u) in state.iter().enumerate() {
            if u.coeffs.iter().all(|&c| c == 0.0) {
                continue;
            }
            self.accumulate_component(n, u, &mut out);
        }
        out
    }

    /// Apply to the basis state e_comp T_k.
    pub fn apply_to_basis(&self, comp: usize, k: usize) -> Vec<ChebSeries> {
        let mut out = vec![ChebSeries::zero(); self.rows()];
        self.accumulate_component(comp, &ChebSeries::basis(k), &mut out);
        out
    }

    fn accumulate_component(&self, n: usize, u: &ChebSeries, out: &mut [ChebSeries]) {
        // s^q u and its antiderivative are shared across output rows and
        // across the x powers of the kernels.
        let max_q = (0..self.rows())
            .flat_map(|m| [self.n1.at(m, n).s_degree(), self.n2.at(m, n).s_degree()])
            .max()
            .unwrap_or(0);
        let mut s_pows: Vec<ChebSeries> = Vec::with_capacity(max_q + 1);
        s_pows.push(u.clone());
        for q in 1..=max_q {
            let next = s_pows[q - 1].mul_x();
            s_pows.push(next);
        }
        let anti: Vec<ChebSeries> = s_pows.iter().map(ChebSeries::antiderivative).collect();
        let endpoint: Vec<f64> = anti.iter().map(|w| w.eval(1.0)).collect();

        for m in 0..self.rows() {
            let mult = self.n0.at(m, n);
            if !mult.is_zero() {
                out[m].add_scaled_in_place(1.0, &mult.to_cheb().product(u));
            }
            for (p, q, c) in self.n1.at(m, n).terms() {
                // c x^p int_{-1}^{x} s^q u(s) ds
                let mut term = anti[q].clone();
                for _ in 0..p {
                    term = term.mul_x();
                }
                out[m].add_scaled_in_place(c, &term);
            }
            for (p, q, c) in self.n2.at(m, n).terms() {
                // c x^p int_{-1}^{1} s^q u(s) ds, a polynomial times a scalar
                let mut term = ChebSeries::constant(1.0);
                for _ in 0..p {
                    term = term.mul_x();
                }
                out[m].add_scaled_in_place(c * endpoint[q], &term);
            }
        }
    }

    /// Left-compose with a polynomial multiplier: returns the operator
    /// x -> P(x) (self u)(x). The only composition the conversion needs.
    pub fn premultiply(&self, p: &PolyMat) -> Self {
        Self {
            n0: p.matmul(&self.n0),
            n1: p.matmul_kernel(&self.n1),
            n2: p.matmul_kernel(&self.n2),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            n0: self.n0.add(&other.n0),
            n1: self.n1.add(&other.n1),
            n2: self.n2.add(&other.n2),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            n0: self.n0.scale(s),
            n1: self.n1.scale(s),
            n2: self.n2.scale(s),
        }
    }
}
