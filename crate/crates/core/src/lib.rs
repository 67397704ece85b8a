//! Cyclic reduction in free groups and its combinatorics.
//!
//! * [`freegroup`]: words, reductions, good rotations, reduction profiles.
//! * [`pairing`]: non-crossing half-pairings and the unique admissible one.
//! * [`counting`]: exact word counts, Kesten moments, exhaustive censuses.
//! * [`poly`]: integer polynomials whose standard reduction is `Q_n`.
//! * [`rmt`]: Haar-unitary Monte Carlo checks of trace moments and fluctuations.

pub mod freegroup;
mod bigjson;
pub mod pairing;
pub mod counting;
pub mod poly;
pub mod rmt;
pub mod cli;

pub use freegroup::{Letter, Word, WordError};
pub use pairing::{HalfPairing, PairingError};
