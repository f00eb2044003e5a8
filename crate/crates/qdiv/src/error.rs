use thiserror::Error;

use crate::circuit::CircuitError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("width {width} is below the minimum {min} for this construction")]
    InvalidWidth { width: u32, min: u32 },
    #[error("register widths are inconsistent: {0}")]
    InvalidWidths(String),
    #[error("placement mismatch: {0}")]
    PlacementMismatch(String),
    #[error("variant not supported here: {0}")]
    UnsupportedVariant(String),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}
