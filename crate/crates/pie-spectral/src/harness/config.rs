//! Declarative model descriptions.
//!
//! A structured text document describes a complete solvable problem:
//! domain, state partition, polynomial coefficient matrices, boundary map
//! and data, separable forcing, polynomial initial data, and solver
//! settings. Polynomials are written as coefficient lists in ascending
//! powers of the physical variable; time signals as lists of
//! coef * t^power * e^(decay t) * trig(freq t) terms. Everything expressible
//! here round-trips through parse and render, which keeps saved setups
//! reproducible.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use super::{IntegratorChoice, RunConfig, OUTPUT_GRID};
use crate::conversion::StateDims;
use crate::integrators::GaussOptions;
use crate::pde::{ForcingTerm, PdeModel};
use crate::poly::{Poly, PolyMat};
use crate::signal::{Signal, SignalTerm, TimeSignal};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub domain: DomainSection,
    pub states: StatesSection,
    pub coefficients: CoefficientsSection,
    pub boundary: BoundarySection,
    #[serde(default)]
    pub forcing: Vec<ForcingSection>,
    pub ic: IcSection,
    pub solver: SolverSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainSection {
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatesSection {
    pub n0: usize,
    pub n1: usize,
    pub n2: usize,
}

/// Coefficient matrices as grids of monomial coefficient lists; `a0` is
/// ns x ns, `a1` is ns x (n1 + n2), `a2` is ns x n2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientsSection {
    pub a0: Vec<Vec<Vec<f64>>>,
    pub a1: Vec<Vec<Vec<f64>>>,
    pub a2: Vec<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundarySection {
    /// Rows of the boundary map over [u1(a); u1(b); u2(a); u2(b);
    /// u2x(a); u2x(b)].
    pub rows: Vec<Vec<f64>>,
    /// Boundary data, one signal per row.
    pub data: Vec<SignalSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct SignalSection {
    #[serde(default)]
    pub terms: Vec<SignalTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForcingSection {
    /// One polynomial profile per state component.
    pub profiles: Vec<Vec<f64>>,
    pub signal: SignalSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IcSection {
    /// Polynomial initial data per state component.
    pub primary: Vec<Vec<f64>>,
    /// Optional polynomial data for the differentiated state.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fundamental: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverSection {
    pub n: usize,
    /// One of exact, exact-alt, gauss, bdf3, bdf4.
    pub integrator: String,
    pub tfinal: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ng: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nint: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_times: Option<Vec<f64>>,
}

/// Parse a document from its text form.
pub fn parse(text: &str) -> Result<Document> {
    toml::from_str(text).map_err(|e| Error::Config(format!("config parse error: {e}")))
}

/// Render a document back to text.
pub fn render(doc: &Document) -> Result<String> {
    toml::to_string_pretty(doc).map_err(|e| Error::Config(format!("config render error: {e}")))
}

fn poly_matrix(name: &str, rows: usize, cols: usize, data: &[Vec<Vec<f64>>]) -> Result<PolyMat> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(Error::Config(format!(
            "coefficient matrix {name} must be {rows} x {cols}"
        )));
    }
    let mut m = PolyMat::zeros(rows, cols);
    for (i, row) in data.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            *m.at_mut(i, j) = Poly::new(entry.clone());
        }
    }
    Ok(m)
}

/// Build the time scheme from a name and its optional parameters; shared
/// by the config reader and the command line.
pub fn integrator_from_parts(
    name: &str,
    dt: Option<f64>,
    ng: Option<usize>,
    nint: Option<usize>,
    ratio: Option<f64>,
) -> Result<IntegratorChoice> {
    match name {
        "exact" => Ok(IntegratorChoice::ExactEig),
        "exact-alt" => Ok(IntegratorChoice::ExactAlt),
        "gauss" => Ok(IntegratorChoice::Gauss(GaussOptions {
            ng: ng.unwrap_or(32),
            nint: nint.unwrap_or(1),
            ratio: ratio.unwrap_or(1.0),
        })),
        "bdf3" | "bdf4" => {
            let dt = dt.ok_or_else(|| {
                Error::Config(format!("integrator {name} needs a step size (dt)"))
            })?;
            let order = if name == "bdf3" { 3 } else { 4 };
            Ok(IntegratorChoice::Bdf { order, dt })
        }
        other => Err(Error::Config(format!(
            "unknown integrator '{other}' (expected exact, exact-alt, gauss, bdf3 or bdf4)"
        ))),
    }
}

fn poly_closures(
    name: &str,
    count: usize,
    data: &[Vec<f64>],
) -> Result<Vec<std::sync::Arc<dyn Fn(f64) -> f64 + Send + Sync>>> {
    if data.len() != count {
        return Err(Error::Config(format!(
            "{name} needs {count} polynomial entries, got {}",
            data.len()
        )));
    }
    Ok(data
        .iter()
        .map(|coeffs| {
            let p = Poly::new(coeffs.clone());
            std::sync::Arc::new(move |x: f64| p.eval(x))
                as std::sync::Arc<dyn Fn(f64) -> f64 + Send + Sync>
        })
        .collect())
}

/// Turn a parsed document into a runnable configuration. Config-driven
/// runs carry no reference solution, so reports contain samples but no
/// errors.
pub fn to_run_config(doc: &Document, label: &str) -> Result<RunConfig> {
    let dims = StateDims::new(doc.states.n0, doc.states.n1, doc.states.n2);
    let ns = dims.ns();
    if ns == 0 {
        return Err(Error::Config("at least one state component is required".into()));
    }

    let a0 = poly_matrix("a0", ns, ns, &doc.coefficients.a0)?;
    let a1 = poly_matrix("a1", ns, dims.n1 + dims.n2, &doc.coefficients.a1)?;
    let a2 = poly_matrix("a2", ns, dims.n2, &doc.coefficients.a2)?;

    let nbc = dims.nbc();
    let nbf = dims.nbf();
    if doc.boundary.rows.len() != nbc || doc.boundary.rows.iter().any(|r| r.len() != nbf) {
        return Err(Error::Config(format!(
            "boundary map must be {nbc} x {nbf} for this state partition"
        )));
    }
    let mut b = Array2::zeros((nbc, nbf));
    for (i, row) in doc.boundary.rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            b[[i, j]] = v;
        }
    }
    if doc.boundary.data.len() != nbc {
        return Err(Error::Config(format!(
            "boundary data needs {nbc} signals, got {}",
            doc.boundary.data.len()
        )));
    }
    let h: Vec<Signal> = doc
        .boundary
        .data
        .iter()
        .map(|s| Signal::Analytic(TimeSignal { terms: s.terms.clone() }))
        .collect();

    let mut forcing = Vec::with_capacity(doc.forcing.len());
    for (k, f) in doc.forcing.iter().enumerate() {
        forcing.push(ForcingTerm {
            profiles: poly_closures(&format!("forcing term {k}"), ns, &f.profiles)?,
            signal: Signal::Analytic(TimeSignal {
                terms: f.signal.terms.clone(),
            }),
        });
    }

    let primary_ic = poly_closures("initial data", ns, &doc.ic.primary)?;
    let fundamental_ic = match &doc.ic.fundamental {
        Some(data) => Some(poly_closures("differentiated initial data", ns, data)?),
        None => None,
    };

    let model = PdeModel {
        domain: (doc.domain.a, doc.domain.b),
        dims,
        a0,
        a1,
        a2,
        b,
        h,
        forcing,
        primary_ic,
        fundamental_ic,
    };

    let integrator = integrator_from_parts(
        &doc.solver.integrator,
        doc.solver.dt,
        doc.solver.ng,
        doc.solver.nint,
        doc.solver.ratio,
    )?;
    let output_times = doc
        .solver
        .output_times
        .clone()
        .unwrap_or_else(|| vec![doc.solver.tfinal]);

    Ok(RunConfig {
        label: label.to_string(),
        model,
        n: doc.solver.n,
        integrator,
        output_times,
        exact: None,
        recovery: None,
        grid_points: OUTPUT_GRID,
    })
}

/// A complete worked document: diffusion with linearly varying viscosity
/// on [0, 2], value data at both ends, quadratic initial state. Useful as
/// a template for writing new setups.
pub fn sample_document() -> Document {
    Document {
        domain: DomainSection { a: 0.0, b: 2.0 },
        states: StatesSection { n0: 0, n1: 0, n2: 1 },
        coefficients: CoefficientsSection {
            a0: vec![vec![vec![0.0]]],
            a1: vec![vec![vec![0.0]]],
            a2: vec![vec![vec![0.0, 1.0]]],
        },
        boundary: BoundarySection {
            rows: vec![vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0]],
            data: vec![
                SignalSection { terms: Vec::new() },
                SignalSection {
                    terms: vec![
                        SignalTerm {
                            coef: -4.0,
                            power: 0,
                            decay: 0.0,
                            freq: 0.0,
                            trig: crate::signal::Trig::One,
                        },
                        SignalTerm {
                            coef: -4.0,
                            power: 1,
                            decay: 0.0,
                            freq: 0.0,
                            trig: crate::signal::Trig::One,
                        },
                    ],
                },
            ],
        },
        forcing: Vec::new(),
        ic: IcSection {
            primary: vec![vec![0.0, 0.0, -1.0]],
            fundamental: Some(vec![vec![-2.0]]),
        },
        solver: SolverSection {
            n: 8,
            integrator: "exact".into(),
            tfinal: 0.1,
            dt: None,
            ng: None,
            nint: None,
            ratio: None,
            output_times: None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_round_trips_through_text() {
        let doc = sample_document();
        let text = render(&doc).unwrap();
        let back = parse(&text).unwrap();
        assert_eq!(doc, back);
    }

    #[test]
    fn sample_solves_to_the_known_quadratic() {
        let doc = sample_document();
        let cfg = to_run_config(&doc, "sample").unwrap();
        let report = super::super::run(&cfg).unwrap();
        // u(x, 0.1) = -0.2 x - x^2; compare at the grid point closest to 1.
        let j = report
            .grid
            .iter()
            .enumerate()
            .min_by(|a, b| {
                (a.1 - 1.0).abs().partial_cmp(&(b.1 - 1.0).abs()).unwrap()
            })
            .map(|(j, _)| j)
            .unwrap();
        let x = report.grid[j];
        let expect = -2.0 * x * 0.1 - x * x;
        let got = report.states[0][0][j];
        assert!(
            (got - expect).abs() < 1e-8,
            "sample solution off by {:.3e}",
            (got - expect).abs()
        );
    }

    #[test]
    fn shape_mismatches_are_reported_as_config_errors() {
        let mut doc = sample_document();
        doc.boundary.rows.pop();
        let err = match to_run_config(&doc, "bad") {
            Ok(_) => panic!("mismatched boundary shape was accepted"),
            Err(e) => e,
        };
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn multistep_without_a_step_size_is_rejected() {
        assert!(integrator_from_parts("bdf3", None, None, None, None).is_err());
        assert!(integrator_from_parts("bdf4", Some(1e-3), None, None, None).is_ok());
        assert!(integrator_from_parts("leapfrog", None, None, None, None).is_err());
    }

    #[test]
    fn omitted_sections_take_defaults() {
        let text = r#"
            [domain]
            a = -1.0
            b = 1.0

            [states]
            n0 = 0
            n1 = 1
            n2 = 0

            [coefficients]
            a0 = [[[0.0]]]
            a1 = [[[-2.0]]]
            a2 = [[]]

            [boundary]
            rows = [[1.0, 0.0]]

            [[boundary.data]]
            terms = [{ coef = 1.0, freq = 2.0, trig = "sin" }]

            [ic]
            primary = [[0.0, 1.0]]

            [solver]
            n = 8
            integrator = "gauss"
            tfinal = 0.5
        "#;
        let doc = parse(text).unwrap();
        assert!(doc.forcing.is_empty());
        assert!(doc.ic.fundamental.is_none());
        let cfg = to_run_config(&doc, "inline").unwrap();
        assert_eq!(cfg.output_times, vec![0.5]);
        assert!(matches!(cfg.integrator, IntegratorChoice::Gauss(_)));
    }
}
