use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::PairingError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Out,
    In,
}

/// A non-crossing partition of `[n]` into pairs and at least one singleton
/// (through string) such that merging all singletons into one block keeps it
/// non-crossing.
///
/// Points are 1-based in every public method.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfPairing {
    /// 0-based mate of each point; `None` for through strings.
    mate: Vec<Option<usize>>,
}

/// Whether the blocks (1-based, any sizes) form a non-crossing partition.
///
/// A partition crosses iff two of its arcs cross, where the arcs of a block
/// join consecutive elements in sorted order.
pub fn partition_is_noncrossing(blocks: &[Vec<usize>]) -> bool {
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for block in blocks {
        let mut sorted = block.clone();
        sorted.sort_unstable();
        arcs.extend(sorted.windows(2).map(|p| (p[0], p[1])));
    }
    for (i, &(a, b)) in arcs.iter().enumerate() {
        for &(c, d) in &arcs[i + 1..] {
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                return false;
            }
        }
    }
    true
}

fn check_partition(n: usize, blocks: &[Vec<usize>]) -> Result<(), PairingError> {
    let mut seen = vec![false; n];
    for block in blocks {
        if block.is_empty() {
            return Err(PairingError::NotAPartition("empty block".into()));
        }
        for &p in block {
            if p == 0 || p > n {
                return Err(PairingError::NotAPartition(format!("point {p} outside [1, {n}]")));
            }
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(PairingError::NotAPartition(format!("point {p} appears twice")));
            }
        }
    }
    if let Some(p) = seen.iter().position(|&s| !s) {
        return Err(PairingError::NotAPartition(format!("point {} is missing", p + 1)));
    }
    Ok(())
}

/// Decides whether a partition of `[n]` is a non-crossing half-pairing.
///
/// Errors only when `blocks` is not a partition of `[n]` at all.
pub fn is_half_pairing(n: usize, blocks: &[Vec<usize>]) -> Result<bool, PairingError> {
    check_partition(n, blocks)?;
    if blocks.iter().any(|b| b.len() > 2) {
        return Ok(false);
    }
    let singletons: Vec<usize> = blocks.iter().filter(|b| b.len() == 1).map(|b| b[0]).collect();
    if singletons.is_empty() || !partition_is_noncrossing(blocks) {
        return Ok(false);
    }
    let mut merged: Vec<Vec<usize>> = blocks.iter().filter(|b| b.len() == 2).cloned().collect();
    merged.push(singletons);
    Ok(partition_is_noncrossing(&merged))
}

impl HalfPairing {
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self, PairingError> {
        if !is_half_pairing(n, blocks)? {
            return Err(PairingError::NotHalfPairing);
        }
        let mut mate = vec![None; n];
        for b in blocks.iter().filter(|b| b.len() == 2) {
            mate[b[0] - 1] = Some(b[1] - 1);
            mate[b[1] - 1] = Some(b[0] - 1);
        }
        Ok(HalfPairing { mate })
    }

    /// From 1-based pairs; every point not mentioned becomes a singleton.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, PairingError> {
        let mut blocks: Vec<Vec<usize>> = pairs.iter().map(|&(r, s)| vec![r, s]).collect();
        let used: BTreeSet<usize> = pairs.iter().flat_map(|&(r, s)| [r, s]).collect();
        blocks.extend((1..=n).filter(|p| !used.contains(p)).map(|p| vec![p]));
        HalfPairing::from_blocks(n, &blocks)
    }

    /// Mates produced by a construction that guarantees validity.
    pub(crate) fn from_mates_unchecked(mate: Vec<Option<usize>>) -> Self {
        let hp = HalfPairing { mate };
        debug_assert!(is_half_pairing(hp.n(), &hp.blocks()).unwrap_or(false));
        hp
    }

    pub fn n(&self) -> usize {
        self.mate.len()
    }

    /// 1-based mate of point `i`.
    pub fn mate(&self, i: usize) -> Option<usize> {
        self.mate[i - 1].map(|j| j + 1)
    }

    pub fn is_singleton(&self, i: usize) -> bool {
        self.mate[i - 1].is_none()
    }

    /// Pairs `(r, s)` with `r < s`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.filter(|&j| j > i).map(|j| (i + 1, j + 1)))
            .collect()
    }

    pub fn singletons(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.mate[i].is_none()).map(|i| i + 1).collect()
    }

    /// Number of through strings.
    pub fn through_strings(&self) -> usize {
        self.mate.iter().filter(|m| m.is_none()).count()
    }

    /// Blocks sorted by their least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        (1..=self.n())
            .filter_map(|i| match self.mate(i) {
                None => Some(vec![i]),
                Some(j) if j > i => Some(vec![i, j]),
                _ => None,
            })
            .collect()
    }

    /// Points `i+1, i+2, …` clockwise, `len` of them (1-based, wrapping).
    fn cyclic_run(&self, start: usize, len: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n();
        (0..len).map(move |d| (start - 1 + d) % n + 1)
    }

    /// Singletons are out; a pair `(r, s)` has `r` out when the clockwise
    /// interval from `r` to `s` holds no singleton.
    pub fn orientations(&self) -> Vec<Orientation> {
        let n = self.n();
        let mut out = vec![Orientation::Out; n];
        for (r, s) in self.pairs() {
            let inner_has_singleton = (r..=s).any(|p| self.is_singleton(p));
            if inner_has_singleton {
                out[r - 1] = Orientation::In;
            } else {
                out[s - 1] = Orientation::In;
            }
        }
        out
    }

    /// Whether every point of the clockwise run is paired inside the run.
    fn run_is_closed(&self, start: usize, len: usize) -> bool {
        let n = self.n();
        let end_offset = |p: usize| (p + n - start) % n;
        self.cyclic_run(start, len).all(|p| match self.mate(p) {
            None => false,
            Some(q) => end_offset(q) < len,
        })
    }

    /// All `(i, j)` such that `i` covers `j`: both out, and the clockwise gap
    /// `[i+1, j-1]` is either empty or paired entirely within itself.
    ///
    /// The gap from `i` to itself is the rest of the circle, so a lone
    /// through string with everything else paired internally covers itself.
    pub fn cover_relation(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let orient = self.orientations();
        let outs: Vec<usize> = (1..=n).filter(|&i| orient[i - 1] == Orientation::Out).collect();
        let mut covers = Vec::new();
        for &i in &outs {
            for &j in &outs {
                let gap = if i == j { n - 1 } else { (j + n - i - 1) % n };
                if gap == 0 || self.run_is_closed(i % n + 1, gap) {
                    covers.push((i, j));
                }
            }
        }
        covers
    }

    /// Shifts every point by `r` (mod `n`): point `i` moves to `i + r`.
    pub fn shifted(&self, r: usize) -> HalfPairing {
        let n = self.n();
        let mut mate = vec![None; n];
        for (i, m) in self.mate.iter().enumerate() {
            mate[(i + r) % n] = m.map(|j| (j + r) % n);
        }
        HalfPairing { mate }
    }

    /// One line, blocks by least element: `1—6, 2—5, |3, |4`.
    pub fn render_ascii(&self) -> String {
        self.blocks()
            .iter()
            .map(|b| match b.as_slice() {
                [s] => format!("|{s}"),
                [r, s] => format!("{r}—{s}"),
                _ => unreachable!(),
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for HalfPairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_ascii())
    }
}

/// JSON shape `{n, pairs, singletons, orientations}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HalfPairingJson {
    pub n: usize,
    pub pairs: Vec<(usize, usize)>,
    pub singletons: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientations: Option<Vec<Orientation>>,
}

impl From<&HalfPairing> for HalfPairingJson {
    fn from(p: &HalfPairing) -> Self {
        HalfPairingJson {
            n: p.n(),
            pairs: p.pairs(),
            singletons: p.singletons(),
            orientations: Some(p.orientations()),
        }
    }
}

impl TryFrom<HalfPairingJson> for HalfPairing {
    type Error = PairingError;

    fn try_from(j: HalfPairingJson) -> Result<Self, PairingError> {
        let mut blocks: Vec<Vec<usize>> = j.pairs.iter().map(|&(r, s)| vec![r, s]).collect();
        blocks.extend(j.singletons.iter().map(|&s| vec![s]));
        let p = HalfPairing::from_blocks(j.n, &blocks)?;
        if let Some(o) = j.orientations {
            if o != p.orientations() {
                return Err(PairingError::OrientationMismatch);
            }
        }
        Ok(p)
    }
}

impl Serialize for HalfPairing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        HalfPairingJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for HalfPairing {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = HalfPairingJson::deserialize(d)?;
        HalfPairing::try_from(j).map_err(serde::de::Error::custom)
    }
}
