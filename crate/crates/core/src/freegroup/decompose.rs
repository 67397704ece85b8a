//! Splitting a word as `x · core · y` with `x y` reducible to 1 and a core
//! whose linear reduction is already cyclically reduced.

use serde::Serialize;

use super::reduce::{cyclic_length, is_cyclically_reduced, is_reducible_to_one, linear_reduce};
use super::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub x: Word,
    pub core: Word,
    pub y: Word,
}

impl Decomposition {
    /// Checks every structural requirement against the original word.
    pub fn is_valid_for(&self, w: &Word) -> bool {
        let concat = self.x.concat(&self.core).concat(&self.y);
        concat.letters() == w.letters()
            && is_reducible_to_one(&self.x.concat(&self.y))
            && is_cyclically_reduced(&linear_reduce(&self.core))
            && longest_reducible_prefix(self.core.letters()) == 0
            && longest_reducible_suffix(self.core.letters()) == 0
            && linear_reduce(&self.core).len() == cyclic_length(w)
    }
}

/// Length of the longest nonempty prefix that reduces to 1 (0 if none).
fn longest_reducible_prefix(letters: &[Letter]) -> usize {
    let mut stack: Vec<Letter> = Vec::new();
    let mut best = 0;
    for (i, &l) in letters.iter().enumerate() {
        if stack.last().is_some_and(|&top| top.cancels(l)) {
            stack.pop();
        } else {
            stack.push(l);
        }
        if stack.is_empty() {
            best = i + 1;
        }
    }
    best
}

fn longest_reducible_suffix(letters: &[Letter]) -> usize {
    let reversed: Vec<Letter> = letters.iter().rev().copied().collect();
    longest_reducible_prefix(&reversed)
}

/// Peels the word from the outside in. Each round cancels a matching
/// first/last pair if there is one, otherwise strips the longest reducible
/// prefix, otherwise the longest reducible suffix; it stops once none applies.
pub fn standard_decomposition(w: &Word) -> Decomposition {
    let letters = w.letters();
    let (mut lo, mut hi) = (0usize, letters.len());
    // y is built back to front
    let mut y_rev: Vec<Letter> = Vec::new();
    let mut x: Vec<Letter> = Vec::new();
    loop {
        let core = &letters[lo..hi];
        if core.len() >= 2 && core[0].cancels(core[core.len() - 1]) {
            x.push(core[0]);
            y_rev.push(core[core.len() - 1]);
            lo += 1;
            hi -= 1;
            continue;
        }
        let p = longest_reducible_prefix(core);
        if p > 0 {
            x.extend_from_slice(&core[..p]);
            lo += p;
            continue;
        }
        let s = longest_reducible_suffix(core);
        if s > 0 {
            y_rev.extend(core[core.len() - s..].iter().rev());
            hi -= s;
            continue;
        }
        break;
    }
    y_rev.reverse();
    let gens = w.gens();
    Decomposition {
        x: Word::from_trusted(gens, x),
        core: Word::from_trusted(gens, letters[lo..hi].to_vec()),
        y: Word::from_trusted(gens, y_rev),
    }
}
