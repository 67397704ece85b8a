//! Integer polynomials in `x = u_1 + u_1^{-1} + … + u_N + u_N^{-1}` and the
//! family `P_n` with `ŵ(P_n(x)) = Q_n`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::counting::{census, kesten_moment, s_count, CensusOptions, CountingError};
use crate::freegroup::{is_cyclically_reduced, Word};

/// Coefficients `c_0, c_1, …, c_d`, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPolynomial {
    #[serde(serialize_with = "crate::bigjson::seq", deserialize_with = "crate::bigjson::int_seq")]
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPolynomial::new(vec![c.into()])
    }

    /// `x^d`.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn x() -> Self {
        Self::monomial(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Constant polynomial value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.coeffs.len() {
            0 => Some(BigInt::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn shift_up(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigInt::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Coefficients as `f64`, constant first.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

/// Highest degree first: `x^3 - 9x`, `x^2 + 2`, `-x`, `0`.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match d {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    f.write_str("x")?;
                    if d > 1 {
                        write!(f, "^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Initial condition used for `R_1` in the three-term recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum R1Choice {
    /// `R_1 = 1`, taken literally.
    AsPrinted,
    /// `R_1 = x`, which keeps `deg R_k = k`.
    #[default]
    DegreeConsistent,
}

/// `R_0 = 2`, `R_1` per `r1`, `R_{k+1} = x R_k - (2N-1) R_{k-1}`.
pub fn chebyshev_r(k: usize, gens: usize, r1: R1Choice) -> IntPolynomial {
    let c = BigInt::from(2 * gens as i64 - 1);
    let mut prev = IntPolynomial::constant(2);
    if k == 0 {
        return prev;
    }
    let mut cur = match r1 {
        R1Choice::AsPrinted => IntPolynomial::constant(1),
        R1Choice::DegreeConsistent => IntPolynomial::x(),
    };
    for _ in 1..k {
        let next = &cur.shift_up() - &prev.scale(&c);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `P_n = R_n` for odd `n`, `R_n + 2` for even `n`; `n ≥ 1`.
pub fn p_from_recurrence(n: usize, gens: usize, r1: R1Choice) -> IntPolynomial {
    assert!(n >= 1, "P_n is defined for n >= 1");
    let r = chebyshev_r(n, gens, r1);
    if n.is_multiple_of(2) {
        &r + &IntPolynomial::constant(2)
    } else {
        r
    }
}

/// `P_0 = 1, …, P_n_max` by back-substitution through
/// `ŵ(x^j) = Q_j + Σ_{k<j} s[j][k] Q_k` (with `Q_0 = e`, `s[j][0]` Kesten).
pub fn p_family_from_triangle(n_max: usize, gens: usize) -> Vec<IntPolynomial> {
    let mut family: Vec<IntPolynomial> = vec![IntPolynomial::constant(1)];
    for j in 1..=n_max {
        let mut p = IntPolynomial::monomial(j);
        for (k, pk) in family.iter().enumerate() {
            let s = if k == 0 {
                kesten_moment(j, gens)
            } else {
                s_count(j, k, gens).expect("j, k >= 1")
            };
            if !s.is_zero() {
                p = &p - &pk.scale(&BigInt::from(s));
            }
        }
        family.push(p);
    }
    family
}

/// The unique monic degree-`n` polynomial with `ŵ(P_n(x)) = Q_n`; `n ≥ 1`.
pub fn p_from_triangle(n: usize, gens: usize) -> IntPolynomial {
    assert!(n >= 1, "P_n is defined for n >= 1");
    p_family_from_triangle(n, gens).swap_remove(n)
}

/// Formal integer combination of words.
pub type GroupElement = BTreeMap<Word, BigInt>;

/// `ŵ(f(x))` computed by expanding each power `x^j` through a census.
pub fn standard_reduction_of(
    f: &IntPolynomial,
    gens: usize,
    opts: CensusOptions,
) -> Result<GroupElement, CountingError> {
    let mut out = GroupElement::new();
    for (j, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if j == 0 {
            *out.entry(Word::empty(gens)).or_default() += c;
            continue;
        }
        for (w, count) in census(j, gens, opts)?.counts {
            *out.entry(w).or_default() += c * BigInt::from(count);
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QIdentityReport {
    pub n: usize,
    pub gens: usize,
    pub polynomial: String,
    /// Coefficient left on the identity element.
    #[serde(serialize_with = "crate::bigjson::num")]
    pub identity_constant: BigInt,
    /// Everything except the identity matches `Q_n`.
    pub matches_up_to_constant: bool,
    /// `ŵ(P(x)) = Q_n` exactly.
    pub exact: bool,
    pub violations: Vec<String>,
}

/// Applies `ŵ` to `f(x)` and compares the result with `Q_n`.
pub fn verify_q_identity(
    f: &IntPolynomial,
    n: usize,
    gens: usize,
    opts: CensusOptions,
) -> Result<QIdentityReport, CountingError> {
    let reduced = standard_reduction_of(f, gens, opts)?;
    let identity = Word::empty(gens);
    let mut violations = Vec::new();
    let mut hits = 0usize;
    for (w, c) in &reduced {
        if *w == identity {
            continue;
        }
        if w.len() == n && is_cyclically_reduced(w) && c.is_one() {
            hits += 1;
        } else {
            violations.push(format!("{w}: coefficient {c}"));
        }
    }
    let q_size = crate::counting::cyclically_reduced_words(n, gens).len();
    if hits != q_size {
        violations.push(format!("{hits} of the {q_size} words of Q_{n} have coefficient 1"));
    }
    let identity_constant = reduced.get(&identity).cloned().unwrap_or_default();
    let matches_up_to_constant = violations.is_empty();
    Ok(QIdentityReport {
        n,
        gens,
        polynomial: f.to_string(),
        exact: matches_up_to_constant && identity_constant.is_zero(),
        identity_constant,
        matches_up_to_constant,
        violations,
    })
}
