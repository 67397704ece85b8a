//! Black/white dot diagrams and their bijection with half-pairings.
//!
//! A pair contributes a black dot at its out endpoint and a white dot at its
//! in endpoint; every through string is white. Decoding matches each black
//! dot with the first free white dot clockwise, where every black dot passed
//! on the way reserves one white dot for itself.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_integer::binomial;

use super::{HalfPairing, Orientation, PairingError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dot {
    Black,
    White,
}

/// Colors read clockwise from point 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DotDiagram {
    colors: Vec<Dot>,
}

impl DotDiagram {
    pub fn new(colors: Vec<Dot>) -> Self {
        DotDiagram { colors }
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[Dot] {
        &self.colors
    }

    pub fn blacks(&self) -> usize {
        self.colors.iter().filter(|&&d| d == Dot::Black).count()
    }

    pub fn whites(&self) -> usize {
        self.n() - self.blacks()
    }
}

impl fmt::Display for DotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.colors {
            f.write_str(match d {
                Dot::Black => "B",
                Dot::White => "W",
            })?;
        }
        Ok(())
    }
}

impl FromStr for DotDiagram {
    type Err = PairingError;

    fn from_str(s: &str) -> Result<Self, PairingError> {
        s.trim()
            .chars()
            .map(|c| match c {
                'B' | 'b' => Ok(Dot::Black),
                'W' | 'w' => Ok(Dot::White),
                other => Err(PairingError::BadDot(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(DotDiagram::new)
    }
}

pub fn to_dots(p: &HalfPairing) -> DotDiagram {
    let orient = p.orientations();
    let colors = (1..=p.n())
        .map(|i| match (p.is_singleton(i), orient[i - 1]) {
            (false, Orientation::Out) => Dot::Black,
            _ => Dot::White,
        })
        .collect();
    DotDiagram::new(colors)
}

/// Requires strictly more white dots than black ones.
pub fn from_dots(d: &DotDiagram) -> Result<HalfPairing, PairingError> {
    if d.blacks() >= d.whites() {
        return Err(PairingError::TooManyBlackDots { black: d.blacks(), white: d.whites() });
    }
    let n = d.n();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    let mut open: Vec<usize> = Vec::new();
    // Black dots still open after one lap are matched on the second lap;
    // any white dot skipped on the first lap lies before all of them.
    for lap in 0..2 {
        for (i, &c) in d.colors().iter().enumerate() {
            match c {
                Dot::Black if lap == 0 => open.push(i),
                Dot::White if mate[i].is_none() => {
                    if let Some(b) = open.pop() {
                        mate[b] = Some(i);
                        mate[i] = Some(b);
                    }
                }
                _ => {}
            }
        }
    }
    debug_assert!(open.is_empty());
    Ok(HalfPairing::from_mates_unchecked(mate))
}

fn check_nk(n: usize, k: usize) -> Result<(), PairingError> {
    if k == 0 || k > n || !(n - k).is_multiple_of(2) {
        return Err(PairingError::BadThroughStrings { n, k });
    }
    Ok(())
}

/// Number of half-pairings on `[n]` with `k` through strings: `C(n, (n-k)/2)`.
pub fn half_pairing_count(n: usize, k: usize) -> Result<u128, PairingError> {
    check_nk(n, k)?;
    Ok(binomial(n as u128, ((n - k) / 2) as u128))
}

/// Every half-pairing on `[n]` with `k` through strings, one per dot diagram
/// with `(n-k)/2` black dots, in lexicographic order of the black positions.
pub fn enumerate_half_pairings(n: usize, k: usize) -> Result<Vec<HalfPairing>, PairingError> {
    check_nk(n, k)?;
    (0..n)
        .combinations((n - k) / 2)
        .map(|blacks| {
            let mut colors = vec![Dot::White; n];
            for b in blacks {
                colors[b] = Dot::Black;
            }
            from_dots(&DotDiagram::new(colors))
        })
        .collect()
}
