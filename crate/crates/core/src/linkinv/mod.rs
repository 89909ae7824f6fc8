//! Virtual knot invariants from a switch: presentations from signed Gauss
//! codes or virtual braid words, then module rank and elementary ideals.

mod braid;
mod gauss;
mod invariants;
mod present;

use thiserror::Error;

use crate::linalg::LinalgError;

pub use braid::{braid_rep, BraidWord, Generator};
pub use gauss::{CrossingSite, GaussCode, Passage, Role, Sign};
pub use invariants::{invariants, invariants_with, Ideal, InvariantResult, MinorStrategy};
pub use present::{
    presentation_from_braid, presentation_from_gauss, switch_units, CrossingConvention,
    Presentation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("token {position} ({token:?}): {reason}")]
    Syntax {
        position: usize,
        token: String,
        reason: String,
    },
    #[error("invalid code: {0}")]
    Validation(String),
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("switch is not invertible")]
    NonInvertibleSwitch,
    #[error("depth {depth} is outside 1..={} for dimension {dimension}", dimension + 1)]
    DepthExceedsDimension { depth: usize, dimension: usize },
    #[error("position {position} is outside a code of length {len}")]
    BadPosition { position: usize, len: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
