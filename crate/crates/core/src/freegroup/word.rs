use std::fmt;

use serde::{Deserialize, Serialize};

use super::WordError;

/// Largest alphabet that has a single-character encoding (`a..z`).
pub const MAX_ALPHA_GENERATORS: usize = 26;

/// A generator `u_i` or its inverse, stored as the signed index `±i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(i32);

impl Letter {
    /// `generator` is 1-based.
    pub fn new(generator: usize, inverted: bool) -> Self {
        assert!(generator >= 1 && generator <= i32::MAX as usize, "generator index out of range");
        let g = generator as i32;
        Letter(if inverted { -g } else { g })
    }

    pub fn from_signed(value: i32) -> Result<Self, WordError> {
        if value == 0 {
            return Err(WordError::ZeroLetter);
        }
        Ok(Letter(value))
    }

    pub fn generator(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_inverted(self) -> bool {
        self.0 < 0
    }

    /// `+1` or `-1`.
    pub fn exponent(self) -> i32 {
        self.0.signum()
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.0 == -other.0
    }

    /// Alphabetic form: lowercase for `u_i`, uppercase for `u_i^{-1}`.
    pub fn to_char(self) -> Option<char> {
        let g = self.generator();
        if g > MAX_ALPHA_GENERATORS {
            return None;
        }
        let c = (b'a' + (g - 1) as u8) as char;
        Some(if self.is_inverted() { c.to_ascii_uppercase() } else { c })
    }

    pub fn from_char(c: char) -> Option<Self> {
        if c.is_ascii_lowercase() {
            Some(Letter::new((c as u8 - b'a') as usize + 1, false))
        } else if c.is_ascii_uppercase() {
            Some(Letter::new((c as u8 - b'A') as usize + 1, true))
        } else {
            None
        }
    }
}

/// A finite string of letters over `u_1^{±1}, …, u_N^{±1}`.
///
/// Construction never simplifies: `aA` is a word of length two.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    gens: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(gens: usize, letters: Vec<Letter>) -> Result<Self, WordError> {
        if gens == 0 {
            return Err(WordError::EmptyAlphabet);
        }
        if let Some(l) = letters.iter().find(|l| l.generator() > gens) {
            return Err(WordError::GeneratorOutOfRange {
                generator: l.generator(),
                gens,
            });
        }
        Ok(Word { gens, letters })
    }

    pub fn empty(gens: usize) -> Self {
        assert!(gens >= 1, "alphabet must have at least one generator");
        Word { gens, letters: Vec::new() }
    }

    /// Letters already known to respect `gens`.
    pub(crate) fn from_trusted(gens: usize, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|l| l.generator() <= gens));
        Word { gens, letters }
    }

    pub fn from_signed(gens: usize, values: &[i32]) -> Result<Self, WordError> {
        let letters = values
            .iter()
            .map(|&v| Letter::from_signed(v))
            .collect::<Result<Vec<_>, _>>()?;
        Word::new(gens, letters)
    }

    /// Parses either the alphabetic encoding (`AbBABa`) or a JSON array of
    /// signed generator indices (`[1,-2]`).
    pub fn parse(text: &str, gens: usize) -> Result<Self, WordError> {
        let text = text.trim();
        if text.starts_with('[') {
            let values: Vec<i32> =
                serde_json::from_str(text).map_err(|e| WordError::Malformed(e.to_string()))?;
            return Word::from_signed(gens, &values);
        }
        let letters = text
            .chars()
            .map(|c| Letter::from_char(c).ok_or(WordError::BadCharacter(c)))
            .collect::<Result<Vec<_>, _>>()?;
        Word::new(gens, letters)
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_signed(&self) -> Vec<i32> {
        self.letters.iter().map(|l| l.signed()).collect()
    }

    /// `None` when the word uses a generator beyond `z`.
    pub fn to_alpha(&self) -> Option<String> {
        self.letters.iter().map(|l| l.to_char()).collect()
    }

    /// `l_n^{-1} … l_1^{-1}`, without reduction.
    pub fn inverse(&self) -> Word {
        Word::from_trusted(self.gens, self.letters.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Offset `r` gives `l_{r+1} … l_n l_1 … l_r`; offsets are taken mod `n`.
    pub fn rotate(&self, r: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let mut letters = self.letters.clone();
        letters.rotate_left(r % self.len());
        Word::from_trusted(self.gens, letters)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word::from_trusted(self.gens.max(other.gens), letters)
    }

    /// Letters `start..end` (0-based, half open) as a word.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word::from_trusted(self.gens, self.letters[start..end].to_vec())
    }

    /// Whether `other` is a cyclic rotation of `self` (letter-for-letter).
    pub fn is_rotation_of(&self, other: &Word) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        (0..self.len()).any(|r| {
            let n = self.len();
            (0..n).all(|i| self.letters[(i + r) % n] == other.letters[i])
        })
    }

    /// The `i`-th letter of the periodic word `w w w …` (0-based).
    pub fn periodic_letter(&self, i: usize) -> Letter {
        self.letters[i % self.len()]
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_alpha() {
            Some(s) => f.write_str(&s),
            None => write!(f, "{}", serde_json::to_string(&self.to_signed()).unwrap_or_default()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct WordRepr {
    gens: usize,
    letters: Vec<i32>,
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WordRepr { gens: self.gens, letters: self.to_signed() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = WordRepr::deserialize(d)?;
        Word::from_signed(repr.gens, &repr.letters).map_err(serde::de::Error::custom)
    }
}
