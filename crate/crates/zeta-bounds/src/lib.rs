//! Certified evaluation of the Riemann zeta function on the critical strip
//! together with the explicit constants that bound `zeta'/zeta` and
//! `1/zeta` inside and to the right of the classical zero-free region.
//!
//! The crate has four layers:
//!
//! * [`numerics`]: midpoint-radius ball arithmetic over arbitrary-precision
//!   floats, Stieltjes constants with certified radii, and real-axis zeta
//!   values.
//! * [`zeta_eval`]: the Euler-Maclaurin evaluation of `zeta` and `zeta'`
//!   with a rigorous tail bound, plus certified suprema of `|zeta|` and
//!   `|1/zeta|` on vertical segments.
//! * [`bounds`]: every bound constant as a checkable function: the
//!   convexity-interpolated strip bounds, the Landau-style `zeta'/zeta`
//!   constants, the reciprocal constants, and the small-height machinery,
//!   each returning its value together with a report of its side
//!   conditions and validity region.
//! * [`optimizer`]: derivative-free minimization of those constants over
//!   their free parameters, and reproduction of the published tables from
//!   a fixture file.
//!
//! The `zeta-bounds` binary exposes all of it on the command line.

pub mod bounds;
pub mod numerics;
pub mod optimizer;
pub mod zeta_eval;

pub use bounds::{
    combine_regimes, Condition, ConditionReport, ConditionedBound, Region, SigmaRegion,
};
pub use numerics::{
    format_float, CertifiedReal, Constants, PrecisionContext, RoundingPolicy, StieltjesTable,
};
pub use zeta_eval::{em_zeta, em_zeta_deriv, CertifiedComplex, EMParams};

/// Everything that can go wrong, from bad inputs to exhausted budgets.
/// Side conditions that merely fail to hold are not errors; they are
/// reported through [`bounds::ConditionReport`].
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain: {0}")]
    Domain(String),

    #[error("evaluation point is at the pole s = 1")]
    Pole,

    #[error("index {n} out of range, table holds 0..={max}")]
    IndexOutOfRange { n: u32, max: u32 },

    #[error("requested tolerance is below what the stored data supports: {0}")]
    PrecisionUnreachable(String),

    #[error("did not converge: {0}")]
    Nonconvergence(String),

    #[error("modulus enclosure contains zero on the segment near t = {t}")]
    ZeroCrossing { t: f64 },

    #[error("subdivision budget exhausted: {0}")]
    Budget(String),

    #[error("search box is infeasible: {0}")]
    InfeasibleBox(String),

    #[error("ladder rows must have strictly increasing widths: {0}")]
    LadderOrder(String),

    #[error("regions cannot be combined: {0}")]
    IncompatibleRegion(String),

    #[error("fixture not found: {0}")]
    FixtureMissing(String),

    #[error("invalid precision: {0}")]
    InvalidPrecision(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
