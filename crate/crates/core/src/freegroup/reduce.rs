//! Linear and cyclic reduction, good reduction and the cyclic rotations
//! that have it.

use super::{Letter, Word, WordError};

/// Result of one left-to-right stack pass over a word.
///
/// Each cancelled letter records the position it cancelled against, so the
/// pass yields both the linear reduction and a non-crossing pairing of the
/// removed letters. Positions are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackPass {
    /// Positions of the letters that survive, in order.
    pub survivors: Vec<usize>,
    /// `partner[i]` is the position `i` cancelled against, if any.
    pub partner: Vec<Option<usize>>,
}

impl StackPass {
    pub fn run(letters: &[Letter]) -> Self {
        let mut stack: Vec<usize> = Vec::with_capacity(letters.len());
        let mut partner = vec![None; letters.len()];
        for (i, &l) in letters.iter().enumerate() {
            match stack.last() {
                Some(&top) if letters[top].cancels(l) => {
                    stack.pop();
                    partner[top] = Some(i);
                    partner[i] = Some(top);
                }
                _ => stack.push(i),
            }
        }
        StackPass { survivors: stack, partner }
    }
}

/// Length of the linear reduction of every prefix: entry `i` is `|l_1 … l_{i+1}|`.
pub(crate) fn prefix_lengths(letters: &[Letter]) -> Vec<usize> {
    let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
    letters
        .iter()
        .map(|&l| {
            if stack.last().is_some_and(|&top| top.cancels(l)) {
                stack.pop();
            } else {
                stack.push(l);
            }
            stack.len()
        })
        .collect()
}

pub fn linear_reduce(w: &Word) -> Word {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        if stack.last().is_some_and(|&top| top.cancels(l)) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Word::from_trusted(w.gens(), stack)
}

/// `|w|`: the length of the linear reduction.
pub fn reduced_length(w: &Word) -> usize {
    linear_reduce(w).len()
}

pub fn is_linearly_reduced(w: &Word) -> bool {
    w.letters().windows(2).all(|p| !p[0].cancels(p[1]))
}

/// Linearly reduced and the last letter does not cancel the first.
pub fn is_cyclically_reduced(w: &Word) -> bool {
    let l = w.letters();
    is_linearly_reduced(w) && (l.len() < 2 || !l[0].cancels(l[l.len() - 1]))
}

/// Canonical cyclic reduction: linear reduction followed by stripping
/// mutually inverse end letters.
pub fn cyclic_reduce(w: &Word) -> Word {
    let reduced = linear_reduce(w);
    let l = reduced.letters();
    let (mut lo, mut hi) = (0, l.len());
    while hi - lo >= 2 && l[lo].cancels(l[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    reduced.slice(lo, hi)
}

/// `k`, the length of any cyclic reduction of `w`.
pub fn cyclic_length(w: &Word) -> usize {
    cyclic_reduce(w).len()
}

pub fn is_reducible_to_one(w: &Word) -> bool {
    linear_reduce(w).is_empty()
}

/// No prefix reducible to 1 and a cyclically reduced linear reduction.
pub fn has_good_reduction(w: &Word) -> Result<bool, WordError> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    Ok(good_reduction_of(w.letters()))
}

fn good_reduction_of(letters: &[Letter]) -> bool {
    let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if stack.last().is_some_and(|&top| top.cancels(l)) {
            stack.pop();
            if stack.is_empty() {
                return false;
            }
        } else {
            stack.push(l);
        }
    }
    let n = stack.len();
    n == 1 || !stack[0].cancels(stack[n - 1])
}

/// Whether the rotation by `r` has good reduction, without materializing it.
pub(crate) fn rotation_is_good(w: &Word, r: usize) -> bool {
    let n = w.len();
    let mut stack: Vec<Letter> = Vec::with_capacity(n);
    for i in 0..n {
        let l = w.letters()[(r + i) % n];
        if stack.last().is_some_and(|&top| top.cancels(l)) {
            stack.pop();
            if stack.is_empty() {
                return false;
            }
        } else {
            stack.push(l);
        }
    }
    let m = stack.len();
    m == 1 || !stack[0].cancels(stack[m - 1])
}

/// Offsets `r` (see [`Word::rotate`]) whose rotation has good reduction,
/// in increasing order. There are exactly `k` of them.
pub fn good_rotations(w: &Word) -> Result<Vec<usize>, WordError> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    Ok((0..w.len()).filter(|&r| rotation_is_good(w, r)).collect())
}

/// The least good rotation offset, if `k ≥ 1`.
pub(crate) fn first_good_rotation(w: &Word) -> Option<usize> {
    (0..w.len()).find(|&r| rotation_is_good(w, r))
}
