use thiserror::Error as ThisError;

use crate::exact::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("requested size {requested} exceeds the cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("resonance: {0}")]
    Resonance(String),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("shift differs across basis elements: {0}")]
    InconsistentShift(String),
    #[error("no single global sign relates [e, f] to h: {0}")]
    SignInconsistent(String),
    #[error("shuffle product left a denominator: {0}")]
    DenominatorNotCancelled(String),
    #[error("input is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("malformed input: {0}")]
    Format(String),
}
