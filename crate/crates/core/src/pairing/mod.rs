//! Non-crossing half-pairings attached to words.
//!
//! Points are 1-based throughout, matching the positions `1..=n` of a word.

mod admissible;
mod dots;
mod half_pairing;

use thiserror::Error;

pub use admissible::{
    admissible_half_pairing, is_w_admissible, is_w_pairing, pairing_from_rotation,
    standard_cyclic_reduction,
    through_string_word,
};

pub use dots::{
    enumerate_half_pairings, from_dots, half_pairing_count, to_dots, Dot, DotDiagram,
};
pub use half_pairing::{
    is_half_pairing, partition_is_noncrossing, HalfPairing, HalfPairingJson, Orientation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error("blocks do not partition the points: {0}")]
    NotAPartition(String),
    #[error("partition is not a non-crossing half-pairing")]
    NotHalfPairing,
    #[error("orientations do not match the pairing")]
    OrientationMismatch,
    #[error("word has {word} letters but the pairing has {points} points")]
    LengthMismatch { word: usize, points: usize },
    #[error("word is reducible to 1, so it has no half-pairing")]
    TrivialWord,
    #[error("dot diagram needs more white than black dots (got {black} black, {white} white)")]
    TooManyBlackDots { black: usize, white: usize },
    #[error("unexpected dot {0:?}; use B or W")]
    BadDot(char),
    #[error("no half-pairings on {n} points with {k} through strings (need 1 <= k <= n, n - k even)")]
    BadThroughStrings { n: usize, k: usize },
}
