//! Reversible circuit synthesis and resource estimation for quantum integer
//! division.
//!
//! The crate builds compare-and-subtract circuits and the long, restoring,
//! and non-restoring division circuits composed from them, simulates them
//! exhaustively against integer references, lowers them to Clifford+T, and
//! validates the measured gate counts and depths against closed-form cost
//! formulas and prior-work baselines.

pub mod adders;
pub mod circuit;
pub mod compnsub;
pub mod dividers;
pub mod error;
pub mod export;
pub mod lowering;
pub mod metrics;
pub mod oracle;
pub mod resources;
pub mod sim;
pub mod unitary;

pub use circuit::{Circuit, CircuitError, Gate, Polarity, QubitId, QubitRole, RegisterMap};
pub use compnsub::{build_compnsub, CnsPlacement, CnsVariant};
pub use dividers::{
    build_long_division, build_non_restoring_division, build_restoring_division, read_result,
    simulate_division, DivisionAlgorithm, DivisionResult, NonRestoringVariant,
};
pub use error::BuildError;
pub use lowering::{lower, LoweringOptions, LoweringStrategy};
pub use metrics::{count_resources, CountLevel, ResourceReport};
pub use sim::{check_ancilla_restoration, simulate, BasisState};
