//! Exact arithmetic substrate: scalar fields, factored rational functions,
//! truncated series and residues.

mod linform;
mod params;
mod scalar;
mod series;

pub use linform::{InfinityConvention, LinForm, LinFormWire};
pub use params::{random_params, Params, RationalParams, DEFAULT_RESONANCE_BOUND};
pub use scalar::{Fp, Mode, Rational, Scalar, PRIME};
pub use series::{Center, TruncSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by zero modulo the prime; retry with another specialization")]
    ModularDivisionByZero,
    #[error("evaluation point is a pole")]
    PoleAtPoint,
    #[error("form is not regular at the expansion point")]
    NotRegular,
    #[error("series have different centers")]
    CenterMismatch,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("parameters are resonant: {0}")]
    Resonant(String),
}
