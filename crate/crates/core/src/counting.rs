//! Exact counts of words by their standard cyclic reduction.
//!
//! `s(n, k, N) = (2N-1)^{(n-k)/2} · C(n, (n-k)/2)` words of length `n` share
//! any given standard cyclic reduction of length `k ≥ 1`; the words reducible
//! to 1 are counted by the Kesten moments instead. The census enumerates all
//! `(2N)^n` words and tallies them, which is the ground truth the formula is
//! checked against.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Pow, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::freegroup::{is_cyclically_reduced, Letter, Word};
use crate::pairing::standard_cyclic_reduction;

/// Default cap on `(2N)^n · n` for exhaustive enumeration.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountingError {
    #[error("alphabet size must be at least 1")]
    NoGenerators,
    #[error("word length must be at least 1")]
    ZeroLength,
    #[error("k = 0 has no closed form; use the Kesten moment")]
    ZeroReductionLength,
    #[error("enumeration needs {required} word-steps, over the budget of {budget}")]
    BudgetExceeded { required: String, budget: u64 },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

fn binomial_big(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of length-`n` words whose standard cyclic reduction is a given
/// cyclically reduced word of length `k ≥ 1`.
pub fn s_count(n: usize, k: usize, gens: usize) -> Result<BigUint, CountingError> {
    if gens == 0 {
        return Err(CountingError::NoGenerators);
    }
    if n == 0 {
        return Err(CountingError::ZeroLength);
    }
    if k == 0 {
        return Err(CountingError::ZeroReductionLength);
    }
    if k > n || !(n - k).is_multiple_of(2) {
        return Ok(BigUint::zero());
    }
    let pairs = (n - k) / 2;
    Ok(BigUint::from(2 * gens - 1).pow(pairs) * binomial_big(n, pairs))
}

/// Number of length-`n` words over `2N` letters reducible to 1.
///
/// Dynamic programme over the length `ℓ` of the reduced prefix: from `ℓ = 0`
/// all `2N` letters go up, from `ℓ > 0` there are `2N - 1` ways up and one
/// way down.
pub fn kesten_moment(n: usize, gens: usize) -> BigUint {
    assert!(gens >= 1, "alphabet size must be at least 1");
    let mut ways = vec![BigUint::zero(); n + 2];
    ways[0] = BigUint::one();
    for step in 0..n {
        let mut next = vec![BigUint::zero(); n + 2];
        for level in 0..=step.min(n) {
            if ways[level].is_zero() {
                continue;
            }
            let up = if level == 0 { 2 * gens } else { 2 * gens - 1 };
            next[level + 1] += &ways[level] * up;
            if level > 0 {
                next[level - 1] += &ways[level];
            }
        }
        ways = next;
    }
    ways.swap_remove(0)
}

/// Letter for digit `d` in `0..2N`: `a, A, b, B, …`.
fn letter_of_digit(d: usize) -> Letter {
    Letter::new(d / 2 + 1, d % 2 == 1)
}

/// Odometer over all words of a fixed length, least significant digit last.
#[derive(Debug, Clone)]
pub struct WordCounter {
    gens: usize,
    digits: Vec<usize>,
    remaining: u64,
}

impl WordCounter {
    /// Words number `start .. start + count` in odometer order.
    pub fn new(len: usize, gens: usize, start: u64, count: u64) -> Self {
        let radix = (2 * gens) as u64;
        let mut digits = vec![0; len];
        let mut rest = start;
        for d in digits.iter_mut().rev() {
            *d = (rest % radix) as usize;
            rest /= radix;
        }
        WordCounter { gens, digits, remaining: count }
    }

    fn advance(&mut self) {
        let radix = 2 * self.gens;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < radix {
                return;
            }
            *d = 0;
        }
    }
}

impl Iterator for WordCounter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let letters = self.digits.iter().map(|&d| letter_of_digit(d)).collect();
        let word = Word::new(self.gens, letters).expect("digits stay below 2N");
        self.advance();
        Some(word)
    }
}

/// All words of length `len`, `(2N)^len` of them.
pub fn all_words(len: usize, gens: usize) -> WordCounter {
    let total = (2 * gens as u64).pow(len as u32);
    WordCounter::new(len, gens, 0, total)
}

/// All cyclically reduced words of length `k`, in odometer order.
pub fn cyclically_reduced_words(k: usize, gens: usize) -> Vec<Word> {
    fn extend(prefix: &mut Vec<Letter>, k: usize, gens: usize, out: &mut Vec<Word>) {
        if prefix.len() == k {
            let w = Word::new(gens, prefix.clone()).expect("letters in range");
            if is_cyclically_reduced(&w) {
                out.push(w);
            }
            return;
        }
        for d in 0..2 * gens {
            let l = letter_of_digit(d);
            if prefix.last().is_some_and(|&p| p.cancels(l)) {
                continue;
            }
            prefix.push(l);
            extend(prefix, k, gens, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(k), k, gens, &mut out);
    out
}

#[derive(Debug, Clone, Copy)]
pub struct CensusOptions {
    /// Cap on `(2N)^n · n`.
    pub budget: u64,
    /// Worker threads; 0 uses rayon's default.
    pub threads: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { budget: DEFAULT_BUDGET, threads: 1 }
    }
}

fn word_total(len: usize, gens: usize, budget: u64) -> Result<u64, CountingError> {
    let total = BigUint::from(2 * gens).pow(len);
    let steps = &total * len.max(1);
    match (total.to_u64(), steps.to_u64()) {
        (Some(t), Some(s)) if s <= budget => Ok(t),
        _ => Err(CountingError::BudgetExceeded { required: steps.to_string(), budget }),
    }
}

/// Tally of all words of one length by standard cyclic reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub gens: usize,
    pub len: usize,
    /// Keyed by the standard cyclic reduction itself; the empty word collects
    /// everything reducible to 1.
    pub counts: BTreeMap<Word, u64>,
}

impl Census {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count_of(&self, v: &Word) -> u64 {
        self.counts.get(v).copied().unwrap_or(0)
    }

    /// Classes whose reduction has length `k`.
    pub fn classes_of_length(&self, k: usize) -> impl Iterator<Item = (&Word, u64)> {
        self.counts.iter().filter(move |(w, _)| w.len() == k).map(|(w, &c)| (w, c))
    }

    /// `reduction,length,count` rows; the empty reduction is written as `e`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("reduction,length,count\n");
        for (w, c) in &self.counts {
            let key = if w.is_empty() { "e".to_string() } else { w.to_string() };
            let key = if key.contains(',') { format!("\"{key}\"") } else { key };
            let _ = writeln!(out, "{key},{},{c}", w.len());
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let counts: serde_json::Map<String, serde_json::Value> = self
            .counts
            .iter()
            .map(|(w, &c)| (w.to_string(), serde_json::Value::from(c)))
            .collect();
        serde_json::json!({ "gens": self.gens, "len": self.len, "total": self.total(), "counts": counts })
    }
}

fn tally(len: usize, gens: usize, start: u64, count: u64) -> BTreeMap<Word, u64> {
    let mut counts = BTreeMap::new();
    for w in WordCounter::new(len, gens, start, count) {
        *counts.entry(standard_cyclic_reduction(&w)).or_insert(0) += 1;
    }
    counts
}

/// Enumerates all `(2N)^n` words, splitting the counter range across threads.
/// The result does not depend on the thread count.
pub fn census(len: usize, gens: usize, opts: CensusOptions) -> Result<Census, CountingError> {
    if gens == 0 {
        return Err(CountingError::NoGenerators);
    }
    let total = word_total(len, gens, opts.budget)?;
    let threads = if opts.threads == 0 { rayon::current_num_threads() } else { opts.threads };
    let chunks = (threads as u64 * 4).clamp(1, total.max(1));
    let ranges: Vec<(u64, u64)> = (0..chunks)
        .map(|c| {
            let lo = total * c / chunks;
            let hi = total * (c + 1) / chunks;
            (lo, hi - lo)
        })
        .collect();

    let partials: Vec<BTreeMap<Word, u64>> = if threads <= 1 {
        ranges.iter().map(|&(s, c)| tally(len, gens, s, c)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CountingError::ThreadPool(e.to_string()))?;
        pool.install(|| ranges.par_iter().map(|&(s, c)| tally(len, gens, s, c)).collect())
    };

    let mut counts = BTreeMap::new();
    for part in partials {
        for (w, c) in part {
            *counts.entry(w).or_insert(0) += c;
        }
    }
    Ok(Census { gens, len, counts })
}

/// The triangle `s[n][k]`, `0 ≤ k ≤ n ≤ n_max`, with Kesten moments in
/// column 0 and `s[0][0] = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MomentTable {
    pub gens: usize,
    #[serde(serialize_with = "crate::bigjson::table")]
    pub rows: Vec<Vec<BigUint>>,
}

impl MomentTable {
    pub fn build(n_max: usize, gens: usize) -> Result<Self, CountingError> {
        if gens == 0 {
            return Err(CountingError::NoGenerators);
        }
        let rows = (0..=n_max)
            .map(|n| {
                (0..=n)
                    .map(|k| match (n, k) {
                        (_, 0) => Ok(kesten_moment(n, gens)),
                        _ => s_count(n, k, gens),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MomentTable { gens, rows })
    }

    pub fn get(&self, n: usize, k: usize) -> &BigUint {
        &self.rows[n][k]
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `n,k,s` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,s\n");
        for (n, row) in self.rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                let _ = writeln!(out, "{n},{k},{v}");
            }
        }
        out
    }
}

/// Per-length summary inside an [`XToQReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub k: usize,
    /// Cyclically reduced words of length `k`.
    pub reduced_words: usize,
    /// Distinct reductions of length `k` seen in the census.
    pub classes_seen: usize,
    #[serde(serialize_with = "crate::bigjson::num")]
    pub expected_each: BigUint,
    pub min_count: u64,
    pub max_count: u64,
}

/// Outcome of checking `ŵ(x^n) = Q_n + s_{n,n-2} Q_{n-2} + …` against a census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XToQReport {
    pub n: usize,
    pub gens: usize,
    pub total: u64,
    #[serde(serialize_with = "crate::bigjson::num")]
    pub expected_total: BigUint,
    pub classes: Vec<ClassSummary>,
    /// Census count of words reducible to 1.
    pub identity_count: u64,
    #[serde(serialize_with = "crate::bigjson::num")]
    pub kesten: BigUint,
    pub violations: Vec<String>,
}

impl XToQReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_x_to_q(n: usize, gens: usize, opts: CensusOptions) -> Result<XToQReport, CountingError> {
    let census = census(n, gens, opts)?;
    Ok(check_x_to_q(&census))
}

/// Checks a census row against the expansion of `ŵ(x^n)`.
pub fn check_x_to_q(census: &Census) -> XToQReport {
    let (n, gens) = (census.len, census.gens);
    let mut violations = Vec::new();

    for w in census.counts.keys() {
        let k = w.len();
        if !is_cyclically_reduced(w) {
            violations.push(format!("{w} is not cyclically reduced"));
        }
        if k > n || !(n - k).is_multiple_of(2) {
            violations.push(format!("{w} has length {k} of the wrong parity for n = {n}"));
        }
    }

    let mut classes = Vec::new();
    for k in (1..=n).filter(|k| (n - k) % 2 == 0) {
        let expected = s_count(n, k, gens).expect("n, k >= 1");
        let reduced = cyclically_reduced_words(k, gens);
        let seen: Vec<(&Word, u64)> = census.classes_of_length(k).collect();
        for v in &reduced {
            let c = census.count_of(v);
            if BigUint::from(c) != expected {
                violations.push(format!("{v}: {c} words, expected {expected}"));
            }
        }
        if seen.len() != reduced.len() {
            violations.push(format!(
                "length {k}: {} classes seen, {} cyclically reduced words exist",
                seen.len(),
                reduced.len()
            ));
        }
        classes.push(ClassSummary {
            k,
            reduced_words: reduced.len(),
            classes_seen: seen.len(),
            expected_each: expected,
            min_count: seen.iter().map(|&(_, c)| c).min().unwrap_or(0),
            max_count: seen.iter().map(|&(_, c)| c).max().unwrap_or(0),
        });
    }

    let identity_count = census.count_of(&Word::empty(gens));
    let kesten = kesten_moment(n, gens);
    if BigUint::from(identity_count) != kesten {
        violations.push(format!("identity: {identity_count} words, Kesten moment is {kesten}"));
    }

    let total = census.total();
    let expected_total = BigUint::from(2 * gens).pow(n);
    if BigUint::from(total) != expected_total {
        violations.push(format!("total {total}, expected {expected_total}"));
    }
    // Σ_k |Q_k| · s[n][k] + s[n][0] must also reach (2N)^n.
    let weighted: BigUint = classes
        .iter()
        .map(|c| &c.expected_each * c.reduced_words)
        .sum::<BigUint>()
        + &kesten;
    if weighted != expected_total {
        violations.push(format!("Σ |Q_k| s(n,k) + s(n,0) = {weighted}, expected {expected_total}"));
    }

    XToQReport { n, gens, total, expected_total, classes, identity_count, kesten, violations }
}
