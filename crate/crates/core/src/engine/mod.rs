//! Ground-state degeneracy of decorated surfaces by contraction of the
//! region graph, the closed-form wall-chain formula, and GSD-preserving
//! rewrite moves.

mod chain;
mod contraction;
mod moves;
mod trace;

pub use chain::{gsd_chain, ChainResult};
pub use contraction::{gsd, gsd_unchecked, GsdOptions, GsdOutput, Method, Order};
pub use moves::{apply_move, Move, MoveError, Partition};
pub use trace::{ReductionTrace, StepKind, TraceStep};
