//! Words in the free group `F_N`: parsing, linear and cyclic reduction,
//! good reduction, rotations and the prefix-reduction profile.

mod decompose;
mod profile;
mod reduce;
mod word;

use thiserror::Error;

pub use decompose::{standard_decomposition, Decomposition};
pub use profile::{
    default_horizon, min_horizon, reduction_profile, stabilization_bound, ReductionProfile,
};
pub use reduce::{
    cyclic_length, cyclic_reduce, good_rotations, has_good_reduction, is_cyclically_reduced,
    is_linearly_reduced, is_reducible_to_one, linear_reduce, reduced_length, StackPass,
};
pub(crate) use reduce::first_good_rotation;
pub use word::{Letter, Word, MAX_ALPHA_GENERATORS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,
    #[error("generator {generator} exceeds alphabet size {gens}")]
    GeneratorOutOfRange { generator: usize, gens: usize },
    #[error("0 is not a letter; use ±i for generator i")]
    ZeroLetter,
    #[error("unexpected character {0:?} in word")]
    BadCharacter(char),
    #[error("malformed word: {0}")]
    Malformed(String),
    #[error("operation needs a nonempty word")]
    EmptyWord,
    #[error("word is reducible to 1 (cyclic reduction has length 0)")]
    TrivialCyclicReduction,
    #[error("horizon {horizon} is shorter than the required {required}")]
    HorizonTooShort { horizon: usize, required: usize },
}
