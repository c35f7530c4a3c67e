//! Chebyshev-Galerkin solution of linear 1-D PDEs through partial integral
//! equations.
//!
//! Boundary-value problems for PDEs of up to second spatial order (heat,
//! advection, and second-order-in-time systems rewritten in first-order state
//! form) are converted to an equivalent partial integral equation
//!
//! ```text
//! T d/dt u_f = A u_f + g(x, t)
//! ```
//!
//! for the boundary-condition-free fundamental state u_f (the highest
//! x-derivative of each state component). T and A are 3-PI operators:
//! sums of a multiplication, an integral from the left endpoint, and an
//! integral over the whole interval, with polynomial kernels produced by
//! eliminating the boundary conditions ([`conversion`]). The PIE is then
//! discretized with a Chebyshev-Galerkin projection whose mass and stiffness
//! matrices are assembled exactly, coefficient by coefficient
//! ([`galerkin`]), and the resulting ODE system is integrated either in
//! closed form through an eigendecomposition or numerically
//! ([`integrators`]).
//!
//! The [`harness`] module bundles ready-made benchmark problems (heat
//! equation with Dirichlet/Neumann data, variable-coefficient and forced
//! parabolic problems, an Euler-Bernoulli cantilever, advection, and waves),
//! convergence sweeps, and CSV/config plumbing for the CLI. Each of them is
//! also wired up as a runnable example; start with
//!
//! ```text
//! cargo run --release --example heat_dirichlet_neumann
//! ```

pub mod chebyshev;
pub mod conversion;
pub mod galerkin;
pub mod harness;
pub mod integrators;
pub mod linalg;
pub mod pde;
pub mod pi_operator;
pub mod poly;
pub mod quadrature;
pub mod signal;

pub use chebyshev::ChebSeries;
pub use conversion::{PieSystem, StateDims};
pub use galerkin::GalerkinSystem;
pub use integrators::TrajectorySolution;
pub use pde::PdeModel;
pub use pi_operator::PiOperator;
pub use signal::{Signal, TimeSignal};

/// Library-wide error type. The CLI maps the variants to exit codes.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// B_T = B T is numerically singular: the boundary conditions do not
    /// determine the lower-order state from the fundamental state. Periodic
    /// conditions and double-Neumann conditions on a second-order state are
    /// the classic members of this family.
    #[error(
        "boundary map B_T is numerically singular (reciprocal condition {rcond:.3e}); \
         these boundary conditions cannot be eliminated (periodic and \
         Neumann-Neumann families are outside the method)"
    )]
    SingularBoundaryMap { rcond: f64 },

    /// Eigendecomposition residual too large for the closed-form integrators.
    #[error(
        "matrix is not diagonalizable to working tolerance (residual {residual:.3e}); \
         use the gauss or bdf integrator instead"
    )]
    NotDiagonalizable { residual: f64 },

    /// A closed-form integrator was asked to handle a sampled (non-analytic)
    /// time signal.
    #[error("time input has no closed-form representation; use the gauss or bdf integrator")]
    NonAnalyticSignal,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("linear algebra failure: {0}")]
    Linalg(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
