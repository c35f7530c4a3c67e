//! Time inputs and their closed-form convolutions.
//!
//! Boundary data and separable forcing carry a time factor. When that factor
//! is a sum of `coef * t^p * e^(g t) * {1 | sin(w t) | cos(w t)}` terms the
//! solver can evaluate the variation-of-constants integral
//! `int_0^t e^(lambda (t-s)) b(s) ds` exactly for every (complex) eigenvalue
//! lambda, which is what the closed-form integrators do. Inputs outside this
//! family are carried as sampled closures and are only accepted by the
//! quadrature and BDF integrators.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trig {
    One,
    Sin,
    Cos,
}

/// One term coef * t^power * e^(decay t) * trig(freq t).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignalTerm {
    pub coef: f64,
    #[serde(default)]
    pub power: u32,
    #[serde(default)]
    pub decay: f64,
    #[serde(default)]
    pub freq: f64,
    #[serde(default = "trig_one")]
    pub trig: Trig,
}

fn trig_one() -> Trig {
    Trig::One
}

impl SignalTerm {
    pub fn value(&self, t: f64) -> f64 {
        let trig = match self.trig {
            Trig::One => 1.0,
            Trig::Sin => (self.freq * t).sin(),
            Trig::Cos => (self.freq * t).cos(),
        };
        self.coef * t.powi(self.power as i32) * (self.decay * t).exp() * trig
    }
}

/// A finite sum of polynomial-exponential-trigonometric terms; closed under
/// differentiation and time shifts.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TimeSignal {
    pub terms: Vec<SignalTerm>,
}

impl TimeSignal {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self {
            terms: vec![SignalTerm {
                coef: c,
                power: 0,
                decay: 0.0,
                freq: 0.0,
                trig: Trig::One,
            }],
        }
    }

    /// coef * e^(decay t).
    pub fn exponential(coef: f64, decay: f64) -> Self {
        Self {
            terms: vec![SignalTerm {
                coef,
                power: 0,
                decay,
                freq: 0.0,
                trig: Trig::One,
            }],
        }
    }

    /// Polynomial sum_k coefs[k] t^k.
    pub fn polynomial(coefs: &[f64]) -> Self {
        let terms = coefs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0.0)
            .map(|(k, &c)| SignalTerm {
                coef: c,
                power: k as u32,
                decay: 0.0,
                freq: 0.0,
                trig: Trig::One,
            })
            .collect();
        Self { terms }
    }

    /// a sin(w t) + b cos(w t).
    pub fn sinusoid(a: f64, b: f64, freq: f64) -> Self {
        let mut terms = Vec::new();
        if a != 0.0 {
            terms.push(SignalTerm {
                coef: a,
                power: 0,
                decay: 0.0,
                freq,
                trig: Trig::Sin,
            });
        }
        if b != 0.0 {
            terms.push(SignalTerm {
                coef: b,
                power: 0,
                decay: 0.0,
                freq,
                trig: Trig::Cos,
            });
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.coef == 0.0)
    }

    pub fn value(&self, t: f64) -> f64 {
        self.terms.iter().map(|term| term.value(t)).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Self { terms }.simplified()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| SignalTerm { coef: s * t.coef, ..*t })
                .collect(),
        }
    }

    /// Exact time derivative; the family is closed under d/dt.
    pub fn derivative(&self) -> Self {
        let mut terms = Vec::new();
        for term in &self.terms {
            if term.power > 0 {
                terms.push(SignalTerm {
                    coef: term.coef * term.power as f64,
                    power: term.power - 1,
                    ..*term
                });
            }
            if term.decay != 0.0 {
                terms.push(SignalTerm {
                    coef: term.coef * term.decay,
                    ..*term
                });
            }
            match term.trig {
                Trig::One => {}
                Trig::Sin => terms.push(SignalTerm {
                    coef: term.coef * term.freq,
                    trig: Trig::Cos,
                    ..*term
                }),
                Trig::Cos => terms.push(SignalTerm {
                    coef: -term.coef * term.freq,
                    trig: Trig::Sin,
                    ..*term
                }),
            }
        }
        Self { terms }.simplified()
    }

    /// The signal s -> value(t0 + s), expanded back into the same family.
    pub fn shift(&self, t0: f64) -> Self {
        let mut terms = Vec::new();
        for term in &self.terms {
            let scale = (term.decay * t0).exp() * term.coef;
            // (t0 + s)^p binomial expansion.
            for j in 0..=term.power {
                let binom = binomial(term.power, j);
                let poly_coef = scale * binom * t0.powi((term.power - j) as i32);
                match term.trig {
                    Trig::One => terms.push(SignalTerm {
                        coef: poly_coef,
                        power: j,
                        decay: term.decay,
                        freq: 0.0,
                        trig: Trig::One,
                    }),
                    Trig::Sin => {
                        // sin(w t0 + w s) = sin cos + cos sin
                        let (s0, c0) = (term.freq * t0).sin_cos();
                        terms.push(SignalTerm {
                            coef: poly_coef * c0,
                            power: j,
                            decay: term.decay,
                            freq: term.freq,
                            trig: Trig::Sin,
                        });
                        terms.push(SignalTerm {
                            coef: poly_coef * s0,
                            power: j,
                            decay: term.decay,
                            freq: term.freq,
                            trig: Trig::Cos,
                        });
                    }
                    Trig::Cos => {
                        let (s0, c0) = (term.freq * t0).sin_cos();
                        terms.push(SignalTerm {
                            coef: poly_coef * c0,
                            power: j,
                            decay: term.decay,
                            freq: term.freq,
                            trig: Trig::Cos,
                        });
                        terms.push(SignalTerm {
                            coef: -poly_coef * s0,
                            power: j,
                            decay: term.decay,
                            freq: term.freq,
                            trig: Trig::Sin,
                        });
                    }
                }
            }
        }
        Self { terms }.simplified()
    }

    /// Merge terms with identical shape, drop exact zeros.
    pub fn simplified(mut self) -> Self {
        let mut out: Vec<SignalTerm> = Vec::new();
        for term in self.terms.drain(..) {
            if term.coef == 0.0 {
                continue;
            }
            if let Some(hit) = out.iter_mut().find(|o| {
                o.power == term.power
                    && o.decay == term.decay
                    && o.trig == term.trig
                    && (o.freq == term.freq || o.trig == Trig::One)
            }) {
                hit.coef += term.coef;
            } else {
                out.push(term);
            }
        }
        out.retain(|t| t.coef != 0.0);
        Self { terms: out }
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    let mut acc = 1.0;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc
}

pub type TimeFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A time input: either analytic (closed-form convolutions available) or a
/// sampled closure, optionally with its derivative.
#[derive(Clone)]
pub enum Signal {
    Analytic(TimeSignal),
    Sampled { f: TimeFn, df: Option<TimeFn> },
}

impl fmt::Debug for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Signal::Analytic(s) => write!(f, "Analytic({} terms)", s.terms.len()),
            Signal::Sampled { df, .. } => {
                write!(f, "Sampled(df: {})", if df.is_some() { "yes" } else { "no" })
            }
        }
    }
}

impl Signal {
    pub fn zero() -> Self {
        Signal::Analytic(TimeSignal::zero())
    }

    pub fn sampled(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Signal::Sampled {
            f: Arc::new(f),
            df: None,
        }
    }

    pub fn sampled_with_derivative(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Signal::Sampled {
            f: Arc::new(f),
            df: Some(Arc::new(df)),
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        match self {
            Signal::Analytic(s) => s.value(t),
            Signal::Sampled { f, .. } => f(t),
        }
    }

    pub fn derivative(&self) -> Result<Signal> {
        match self {
            Signal::Analytic(s) => Ok(Signal::Analytic(s.derivative())),
            Signal::Sampled { df: Some(d), .. } => Ok(Signal::Sampled {
                f: d.clone(),
                df: None,
            }),
            Signal::Sampled { df: None, .. } => Err(Error::InvalidInput(
                "boundary signal needs a time derivative; provide one or use an analytic signal"
                    .into(),
            )),
        }
    }

    pub fn analytic(&self) -> Option<&TimeSignal> {
        match self {
            Signal::Analytic(s) => Some(s),
            Signal::Sampled { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Signal::Analytic(s) if s.is_zero())
    }
}

/// `int_0^t e^(lambda (t-s)) sig(s) ds` in closed form.
pub fn conv_analytic(lambda: Complex64, sig: &TimeSignal, t: f64) -> Complex64 {
    sig.terms
        .iter()
        .map(|term| conv_term(lambda, term, t))
        .sum()
}

fn conv_term(lambda: Complex64, term: &SignalTerm, t: f64) -> Complex64 {
    let gamma = Complex64::new(term.decay, 0.0);
    let i = Complex64::i();
    let p = term.power as usize;
    match term.trig {
        Trig::One => term.coef * kernel_integral(lambda, gamma, p, t),
        Trig::Cos => {
            let plus = kernel_integral(lambda, gamma + i * term.freq, p, t);
            let minus = kernel_integral(lambda, gamma - i * term.freq, p, t);
            0.5 * term.coef * (plus + minus)
        }
        Trig::Sin => {
            let plus = kernel_integral(lambda, gamma + i * term.freq, p, t);
            let minus = kernel_integral(lambda, gamma - i * term.freq, p, t);
            term.coef * (plus - minus) / (2.0 * i)
        }
    }
}

/// K_p = int_0^t e^(lambda (t-s)) s^p e^(mu s) ds for complex lambda, mu.
///
/// Near resonance (small (mu - lambda) t) the textbook antiderivative
/// cancels catastrophically, so a convergent series in (mu - lambda) t is
/// used there; it reduces to t^(p+1)/(p+1) e^(lambda t) at exact resonance.
/// Away from resonance a stable recurrence keeps every intermediate bounded
/// by the endpoint exponentials, so stiff decay never produces 0 * inf.
fn kernel_integral(lambda: Complex64, mu: Complex64, p: usize, t: f64) -> Complex64 {
    let d = mu - lambda;
    if (d * t).norm() < 0.5 {
        // e^(lambda t) t^(p+1) sum_j (d t)^j / (j! (p + j + 1))
        let e_l = (lambda * t).exp();
        let dt = d * t;
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term / (p as f64 + 1.0);
        for j in 1..60 {
            term *= dt / j as f64;
            let contrib = term / (p + j + 1) as f64;
            sum += contrib;
            if contrib.norm() < 1e-20 * sum.norm() {
                break;
            }
        }
        e_l * t.powi(p as i32 + 1) * sum
    } else {
        let e_mu = (mu * t).exp();
        let e_l = (lambda * t).exp();
        // K_0 = (e^(mu t) - e^(lambda t)) / d, K_p = (t^p e^(mu t) - p K_{p-1}) / d
        let mut k = (e_mu - e_l) / d;
        for j in 1..=p {
            k = (t.powi(j as i32) * e_mu - j as f64 * k) / d;
        }
        k
    }
}
