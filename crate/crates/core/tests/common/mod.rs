//! Brute-force oracles shared by the integration tests. None of them call the
//! library's reduction or pairing code.
#![allow(dead_code)]

use cyclelemma::Word;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_letters(rng: &mut impl Rng, len: usize, gens: usize) -> Vec<i32> {
    (0..len)
        .map(|_| {
            let g = rng.random_range(1..=gens as i32);
            if rng.random_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect()
}

pub fn word(gens: usize, letters: &[i32]) -> Word {
    Word::from_signed(gens, letters).unwrap()
}

/// Every signed-letter sequence of length `len` over `gens` generators.
pub fn all_sequences(len: usize, gens: usize) -> Vec<Vec<i32>> {
    let alphabet: Vec<i32> = (1..=gens as i32).flat_map(|g| [g, -g]).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                alphabet.iter().map(move |&l| {
                    let mut q = p.clone();
                    q.push(l);
                    q
                })
            })
            .collect();
    }
    out
}

/// Deletes the first adjacent inverse pair until none is left.
pub fn naive_reduce(letters: &[i32]) -> Vec<i32> {
    let mut v = letters.to_vec();
    loop {
        match (1..v.len()).find(|&i| v[i - 1] == -v[i]) {
            Some(i) => {
                v.drain(i - 1..=i);
            }
            None => return v,
        }
    }
}

pub fn naive_cyclic_length(letters: &[i32]) -> usize {
    let mut v = naive_reduce(letters);
    while v.len() >= 2 && v[0] == -v[v.len() - 1] {
        v = v[1..v.len() - 1].to_vec();
    }
    v.len()
}

pub fn naive_is_cyclically_reduced(letters: &[i32]) -> bool {
    naive_reduce(letters).len() == letters.len()
        && (letters.len() < 2 || letters[0] != -letters[letters.len() - 1])
}

pub fn rotate(letters: &[i32], r: usize) -> Vec<i32> {
    let mut v = letters[r..].to_vec();
    v.extend_from_slice(&letters[..r]);
    v
}

pub fn naive_good_reduction(letters: &[i32]) -> bool {
    (1..=letters.len()).all(|i| !naive_reduce(&letters[..i]).is_empty())
        && naive_is_cyclically_reduced(&naive_reduce(letters))
}

pub fn naive_good_rotations(letters: &[i32]) -> Vec<usize> {
    (0..letters.len()).filter(|&r| naive_good_reduction(&rotate(letters, r))).collect()
}

pub fn is_rotation(a: &[i32], b: &[i32]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|r| rotate(a, r) == b))
}

/// A half-pairing as a list of 1-based pairs plus the singletons.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RawPairing {
    pub n: usize,
    pub pairs: Vec<(usize, usize)>,
    pub singletons: Vec<usize>,
}

fn crosses((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Every non-crossing half-pairing of `[n]` by filtering all partial
/// matchings: pairs may not cross, at least one singleton, and no pair has
/// singletons on both sides.
pub fn brute_half_pairings(n: usize) -> Vec<RawPairing> {
    fn matchings(free: &[usize]) -> Vec<Vec<(usize, usize)>> {
        let Some((&first, rest)) = free.split_first() else {
            return vec![Vec::new()];
        };
        let mut out = matchings(rest);
        for (idx, &other) in rest.iter().enumerate() {
            let mut remaining = rest.to_vec();
            remaining.remove(idx);
            for mut m in matchings(&remaining) {
                m.push((first, other));
                out.push(m);
            }
        }
        out
    }
    let points: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    for mut pairs in matchings(&points) {
        pairs.sort_unstable();
        let used: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        let singletons: Vec<usize> = points.iter().copied().filter(|p| !used.contains(p)).collect();
        if singletons.is_empty() {
            continue;
        }
        let noncrossing = pairs.iter().enumerate().all(|(i, &p)| pairs[i + 1..].iter().all(|&q| !crosses(p, q)));
        let separated = pairs.iter().any(|&(a, b)| {
            let inside = singletons.iter().filter(|&&s| a < s && s < b).count();
            inside != 0 && inside != singletons.len()
        });
        if noncrossing && !separated {
            out.push(RawPairing { n, pairs, singletons });
        }
    }
    out.sort();
    out
}

impl RawPairing {
    pub fn mate(&self, i: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(a, b)| {
            if a == i {
                Some(b)
            } else if b == i {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Singletons are out; a pair `r < s` has `r` out exactly when no
    /// singleton lies between them.
    pub fn is_out(&self, i: usize) -> bool {
        match self.mate(i) {
            None => true,
            Some(m) => {
                let (r, s) = (i.min(m), i.max(m));
                let between = self.singletons.iter().any(|&t| r < t && t < s);
                (i == r) != between
            }
        }
    }

    /// `i` covers `j`: both out and the points strictly clockwise between them
    /// are matched among themselves.
    pub fn covers(&self, i: usize, j: usize) -> bool {
        if !self.is_out(i) || !self.is_out(j) {
            return false;
        }
        let n = self.n;
        let mut gap = Vec::new();
        let mut p = i % n + 1;
        while p != j {
            gap.push(p);
            p = p % n + 1;
        }
        gap.iter().all(|&q| self.mate(q).is_some_and(|m| gap.contains(&m)))
    }

    pub fn through_letters(&self, w: &[i32]) -> Vec<i32> {
        self.singletons.iter().map(|&s| w[s - 1]).collect()
    }

    /// Admissibility straight from the definition.
    pub fn is_admissible_for(&self, w: &[i32]) -> bool {
        if self.pairs.iter().any(|&(a, b)| w[a - 1] != -w[b - 1]) {
            return false;
        }
        let v = self.through_letters(w);
        if !naive_is_cyclically_reduced(&v) || v.len() != naive_cyclic_length(w) {
            return false;
        }
        let mut core = naive_reduce(w);
        while core.len() >= 2 && core[0] == -core[core.len() - 1] {
            core = core[1..core.len() - 1].to_vec();
        }
        if !is_rotation(&v, &core) {
            return false;
        }
        (1..=self.n).all(|i| (1..=self.n).all(|j| !self.covers(i, j) || w[i - 1] != -w[j - 1]))
    }
}

/// Number of length-`n` words reducible to 1, by direct enumeration.
pub fn brute_kesten(n: usize, gens: usize) -> u64 {
    all_sequences(n, gens).iter().filter(|s| naive_reduce(s).is_empty()).count() as u64
}

pub fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
