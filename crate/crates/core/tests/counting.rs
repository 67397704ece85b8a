mod common;

use std::collections::BTreeMap;

use common::*;
use cyclelemma::counting::{
    all_words, census, check_x_to_q, cyclically_reduced_words, kesten_moment, s_count,
    verify_x_to_q, CensusOptions, CountingError, MomentTable,
};
use cyclelemma::Word;
use num_bigint::BigUint;

fn opts() -> CensusOptions {
    CensusOptions::default()
}

/// Closed count of cyclically reduced words of length `k >= 1`.
fn reduced_word_count(k: u32, gens: u64) -> u64 {
    let odd = 2 * gens - 1;
    let even_correction = if k.is_multiple_of(2) { 2 * (gens - 1) } else { 0 };
    odd.pow(k) + 1 + even_correction
}

#[test]
fn formula_against_independent_arithmetic() {
    for gens in 1..=4u64 {
        for n in 1..=14u64 {
            for k in 1..=n {
                let expected = if (n - k) % 2 == 1 {
                    0
                } else {
                    (2 * gens - 1).pow(((n - k) / 2) as u32) * binomial(n, (n - k) / 2)
                };
                assert_eq!(s_count(n as usize, k as usize, gens as usize).unwrap(), BigUint::from(expected));
            }
        }
    }
    assert_eq!(s_count(5, 1, 1).unwrap(), BigUint::from(10u32));
    assert_eq!(s_count(6, 2, 2).unwrap(), BigUint::from(135u32));
    assert_eq!(s_count(5, 2, 3).unwrap(), BigUint::from(0u32));
    assert_eq!(s_count(3, 0, 2), Err(CountingError::ZeroReductionLength));
}

#[test]
fn kesten_against_enumeration() {
    for gens in 1..=3 {
        for n in 0..=8usize {
            if (2 * gens as u64).pow(n as u32) > 300_000 {
                continue;
            }
            assert_eq!(kesten_moment(n, gens), BigUint::from(brute_kesten(n, gens)), "n={n} N={gens}");
        }
    }
    let moments: Vec<u64> = (0..=6).map(|n| kesten_moment(n, 2).try_into().unwrap()).collect();
    assert_eq!(moments, [1, 0, 4, 0, 28, 0, 232]);
}

#[test]
fn reduced_word_lists() {
    for gens in 1..=3 {
        for k in 1..=7 {
            let words = cyclically_reduced_words(k, gens);
            assert_eq!(words.len() as u64, reduced_word_count(k as u32, gens as u64));
            let brute = all_sequences(k, gens).into_iter().filter(|s| naive_is_cyclically_reduced(s)).count();
            assert_eq!(words.len(), brute);
        }
    }
}

#[test]
fn enumerator_visits_every_word_once() {
    let words: Vec<Word> = all_words(4, 2).collect();
    assert_eq!(words.len(), 256);
    let distinct: std::collections::BTreeSet<_> = words.iter().collect();
    assert_eq!(distinct.len(), 256);
}

#[test]
fn census_five_one() {
    let c = census(5, 1, opts()).unwrap();
    let got: BTreeMap<String, u64> = c.counts.iter().map(|(w, &n)| (w.to_string(), n)).collect();
    let expected: BTreeMap<String, u64> =
        [("a", 10), ("A", 10), ("aaa", 5), ("AAA", 5), ("aaaaa", 1), ("AAAAA", 1)]
            .into_iter()
            .map(|(w, n)| (w.to_string(), n))
            .collect();
    assert_eq!(got, expected);
}

#[test]
fn census_classes_have_formula_size() {
    for (gens, n_max) in [(1, 12), (2, 7), (3, 5)] {
        for n in 1..=n_max {
            let c = census(n, gens, opts()).unwrap();
            assert_eq!(c.total(), (2 * gens as u64).pow(n as u32));
            for (w, count) in &c.counts {
                let expected = if w.is_empty() { kesten_moment(n, gens) } else { s_count(n, w.len(), gens).unwrap() };
                assert_eq!(BigUint::from(*count), expected, "n={n} N={gens} v={w}");
            }
            for k in (1..=n).rev().step_by(2) {
                assert_eq!(
                    c.classes_of_length(k).count() as u64,
                    reduced_word_count(k as u32, gens as u64),
                    "every reduced word of length {k} appears"
                );
            }
        }
    }
}

#[test]
fn column_sums() {
    for gens in 1..=3usize {
        let table = MomentTable::build(12, gens).unwrap();
        for n in 1..=12usize {
            let mut total = table.get(n, 0).clone();
            for k in 1..=n {
                total += table.get(n, k) * BigUint::from(reduced_word_count(k as u32, gens as u64));
            }
            assert_eq!(total, BigUint::from(2 * gens).pow(n as u32), "n={n} N={gens}");
        }
    }
}

#[test]
fn census_is_thread_independent() {
    let one = census(6, 2, CensusOptions { threads: 1, ..opts() }).unwrap();
    let four = census(6, 2, CensusOptions { threads: 4, ..opts() }).unwrap();
    assert_eq!(one, four);
}

#[test]
fn x_to_q_reports() {
    for gens in 1..=2 {
        for n in 1..=6 {
            let r = verify_x_to_q(n, gens, opts()).unwrap();
            assert!(r.passed(), "{:?}", r.violations);
        }
    }
    let mut c = census(4, 2, opts()).unwrap();
    let key = c.counts.keys().find(|w| w.len() == 2).unwrap().clone();
    *c.counts.get_mut(&key).unwrap() -= 1;
    *c.counts.entry(Word::empty(2)).or_insert(0) += 1;
    let r = check_x_to_q(&c);
    assert!(!r.passed());
}

#[test]
fn budget_guard() {
    let small = CensusOptions { budget: 1000, threads: 1 };
    assert!(matches!(census(8, 2, small), Err(CountingError::BudgetExceeded { .. })));
    assert!(census(3, 2, small).is_ok());
}

#[test]
fn table_exports() {
    let t = MomentTable::build(3, 2).unwrap();
    let csv = t.to_csv();
    assert!(csv.starts_with("n,k,s\n0,0,1\n1,0,0\n1,1,1\n2,0,4\n"));
    let json = serde_json::to_value(&t).unwrap();
    assert_eq!(json["rows"][3], serde_json::json!([0, 9, 0, 1]));
    let c = census(2, 1, opts()).unwrap();
    assert_eq!(c.to_csv(), "reduction,length,count\ne,0,2\nAA,2,1\naa,2,1\n");
}
