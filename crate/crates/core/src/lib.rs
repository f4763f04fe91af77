//! The hyperbolic sine integral `Shi(z) = ∫₀^z sinh(t)/t dt`.
//!
//! - [`shi`]: `sinhc`, `Shi` and `Shi^(m)` with error estimates.
//! - [`poly`]: exact integer closed forms for `Shi^(m)`.
//! - [`bounds`]: rational `tanh` bounds, `cosh` and `Shi` envelopes.
//! - [`verify`]: a catalog of inequalities about `Shi` checked on grids.
//! - [`cli`]: the `shikit` command-line front end.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod hiprec;
pub mod poly;
pub mod shi;
pub mod verify;

pub use bounds::{
    cosh_bounds, shi_envelope, tanh_bound, tanh_bound_eval, BoundKind, BoundTarget, EnvelopeResult,
    RationalBound,
};
pub use error::{Error, Result};
pub use poly::{derivative_polynomials, eval_closed_form, DerivClosedForm, IntPolynomial};
pub use shi::{shi, shi_derivative, sinhc, EvalConfig, Method, ShiEval};
pub use verify::{
    catalog, quadrature_shi, verify_all, verify_case, verify_document, GridDefaults, GridSpec, InequalityCase, ReportDocument,
    Status, VerificationReport,
};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
