//! Matrices with polynomial off-diagonal decay on finite connected simple
//! graphs: Beurling-class norms, fusion-vertex covers, truncation and
//! commutator estimates, lower stability bounds, norm-controlled inversion,
//! and polynomial bounds on matrix powers and Markov hops.
//!
//! Every inequality with an explicit constant is evaluated exactly at desk
//! scale; inequalities with unquantified absolute constants are tracked as
//! implied constants along scaling families.

pub mod covering;
pub mod error;
pub mod families;
pub mod fit;
pub mod graph;
pub mod inversion;
pub mod io;
pub mod matrix;
pub mod norms;
pub mod powers;
pub mod report;
pub mod cli;
pub mod config;
pub mod stability;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, GraphMetrics};
pub use matrix::GraphMatrix;
pub use norms::{BeurlingParams, DecayEnvelope, Lp};

/// Relative slack used when comparing two computed sides of an inequality.
pub const REL_TOL: f64 = 1e-10;
const ABS_TOL: f64 = 1e-13;

/// `lhs ≤ rhs` up to floating-point rounding.
pub fn approx_le(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + REL_TOL * lhs.abs().max(rhs.abs()) + ABS_TOL
}
