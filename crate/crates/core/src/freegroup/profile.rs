//! Prefix-reduction profile of the periodic word `w_∞ = w w w …`.

use serde::Serialize;

use super::reduce::{cyclic_length, prefix_lengths};
use super::{Word, WordError};

/// `t_i = |first i letters of w_∞|` for `i = 1..=horizon`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionProfile {
    pub word: Word,
    /// `values[i - 1]` is `t_i`.
    pub values: Vec<usize>,
    /// Least `i` such that `t_{j+n} = t_j + k` for every `j ≥ i` inside the horizon.
    pub period_start: usize,
    /// The shift `k` per period.
    pub shift: usize,
}

impl ReductionProfile {
    /// `t_i`, 1-based.
    pub fn t(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn horizon(&self) -> usize {
        self.values.len()
    }
}

/// `floor(n (1 + n/k))`: past this many letters every prefix `s` of `w_∞`
/// satisfies `|ws| = k + |s|`.
pub fn stabilization_bound(n: usize, k: usize) -> usize {
    assert!(k >= 1);
    (n * k + n * n) / k
}

/// Shortest horizon accepted by [`reduction_profile`].
pub fn min_horizon(n: usize, k: usize) -> usize {
    (n * k + n * n).div_ceil(k) + n
}

/// Two full stabilization bounds, which leaves at least one period of slack.
pub fn default_horizon(n: usize, k: usize) -> usize {
    2 * (stabilization_bound(n, k) + n)
}

pub fn reduction_profile(w: &Word, horizon: Option<usize>) -> Result<ReductionProfile, WordError> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    let n = w.len();
    let k = cyclic_length(w);
    if k == 0 {
        return Err(WordError::TrivialCyclicReduction);
    }
    let required = min_horizon(n, k);
    let horizon = horizon.unwrap_or_else(|| default_horizon(n, k));
    if horizon < required {
        return Err(WordError::HorizonTooShort { horizon, required });
    }
    let stream: Vec<_> = (0..horizon).map(|i| w.periodic_letter(i)).collect();
    let values = prefix_lengths(&stream);

    // t_{i+n} = t_i + k, scanned from the end; values is 0-based.
    let last_failure = (1..=horizon - n)
        .rev()
        .find(|&i| values[i + n - 1] != values[i - 1] + k);
    let period_start = last_failure.map_or(1, |i| i + 1);
    debug_assert!(period_start <= stabilization_bound(n, k) + 1);

    Ok(ReductionProfile { word: w.clone(), values, period_start, shift: k })
}
