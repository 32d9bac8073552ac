//! Computational tools for 2-arc-transitive graphs of odd order whose
//! automorphism groups have alternating socle.
//!
//! The crate is layered: [`perm`] is a permutation-group engine built on
//! stabilizer chains, [`two_adic`] holds the parity arithmetic, [`graphs`]
//! builds odd graphs and coset graphs and tests s-arc-transitivity, and
//! [`census`] enumerates odd-index subgroups and checks the classification
//! exhaustively at small degree.

pub mod caps;
pub mod census;
pub mod error;
pub mod graphs;
pub mod perm;
pub mod two_adic;

pub use caps::Caps;
pub use error::{Error, Result};
