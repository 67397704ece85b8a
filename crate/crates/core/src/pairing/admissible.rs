//! `w`-pairings, admissibility, and the unique admissible half-pairing.

use crate::freegroup::{
    cyclic_reduce, first_good_rotation, is_cyclically_reduced, StackPass, Word,
};

use super::{HalfPairing, PairingError};

fn check_len(w: &Word, p: &HalfPairing) -> Result<(), PairingError> {
    if w.len() != p.n() {
        return Err(PairingError::LengthMismatch { word: w.len(), points: p.n() });
    }
    Ok(())
}

/// Letters on the through strings, in increasing point order.
pub fn through_string_word(w: &Word, p: &HalfPairing) -> Word {
    let letters = p.singletons().iter().map(|&i| w.letters()[i - 1]).collect();
    Word::new(w.gens(), letters).expect("letters come from w")
}

/// Paired letters are mutually inverse and the through-string letters form a
/// cyclic reduction of `w`.
pub fn is_w_pairing(w: &Word, p: &HalfPairing) -> Result<bool, PairingError> {
    check_len(w, p)?;
    let l = w.letters();
    if p.pairs().iter().any(|&(r, s)| !l[r - 1].cancels(l[s - 1])) {
        return Ok(false);
    }
    let v = through_string_word(w, p);
    Ok(is_cyclically_reduced(&v) && v.is_rotation_of(&cyclic_reduce(w)))
}

/// A `w`-pairing in which no point covers a point carrying its inverse letter.
pub fn is_w_admissible(w: &Word, p: &HalfPairing) -> Result<bool, PairingError> {
    if !is_w_pairing(w, p)? {
        return Ok(false);
    }
    let l = w.letters();
    Ok(p.cover_relation().iter().all(|&(i, j)| !l[i - 1].cancels(l[j - 1])))
}

/// Stack pairing of the rotation by `r`, mapped back to the original points.
///
/// Survivors of the stack pass become through strings. When `r` is a good
/// rotation this is the admissible half-pairing; `r` must not give a rotation
/// that reduces to 1.
pub fn pairing_from_rotation(w: &Word, r: usize) -> HalfPairing {
    let n = w.len();
    let rotated = w.rotate(r);
    let pass = StackPass::run(rotated.letters());
    let mut mate = vec![None; n];
    for (i, m) in pass.partner.iter().enumerate() {
        mate[(i + r) % n] = m.map(|j| (j + r) % n);
    }
    HalfPairing::from_mates_unchecked(mate)
}

/// The unique `w`-admissible half-pairing.
///
/// Rotates to the first offset with good reduction, pairs letters
/// leftmost-first with a stack, and rotates the points back.
pub fn admissible_half_pairing(w: &Word) -> Result<HalfPairing, PairingError> {
    let r = first_good_rotation(w).ok_or(PairingError::TrivialWord)?;
    Ok(pairing_from_rotation(w, r))
}

/// `ŵ`: the through-string letters of the admissible half-pairing. The empty
/// word when `w` reduces to 1.
pub fn standard_cyclic_reduction(w: &Word) -> Word {
    match admissible_half_pairing(w) {
        Ok(p) => through_string_word(w, &p),
        Err(_) => Word::empty(w.gens()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::good_rotations;

    fn w(s: &str, n: usize) -> Word {
        Word::parse(s, n).unwrap()
    }

    fn hp(n: usize, pairs: &[(usize, usize)]) -> HalfPairing {
        HalfPairing::from_pairs(n, pairs).unwrap()
    }

    #[test]
    fn three_w_pairings_one_admissible() {
        let word = w("aaaAA", 1);
        let first = hp(5, &[(2, 5), (3, 4)]);
        let second = hp(5, &[(1, 5), (3, 4)]);
        let third = hp(5, &[(1, 5), (2, 4)]);
        for p in [&first, &second, &third] {
            assert!(is_w_pairing(&word, p).unwrap());
        }
        assert!(is_w_admissible(&word, &first).unwrap());
        assert!(!is_w_admissible(&word, &second).unwrap());
        assert!(!is_w_admissible(&word, &third).unwrap());
        assert_eq!(admissible_half_pairing(&word).unwrap(), first);
    }

    #[test]
    fn mixed_word_pairing() {
        let word = w("AbBABa", 2);
        let p = hp(6, &[(1, 6), (2, 5)]);
        assert!(is_w_pairing(&word, &p).unwrap());
        assert!(is_w_admissible(&word, &p).unwrap());
        assert_eq!(admissible_half_pairing(&word).unwrap(), p);
        assert_eq!(standard_cyclic_reduction(&word).to_string(), "BA");
    }

    #[test]
    fn letters_must_be_inverse() {
        let word = w("ab", 2);
        let p = hp(2, &[]);
        assert!(is_w_pairing(&word, &p).unwrap());
        // the pair (1, 2) on "aa" is not inverse letters
        let word = w("aab", 2);
        assert!(!is_w_pairing(&word, &hp(3, &[(1, 2)])).unwrap());
        assert!(!is_w_admissible(&word, &hp(3, &[(1, 2)])).unwrap());
        assert!(matches!(
            is_w_pairing(&w("abc", 3), &hp(2, &[])),
            Err(PairingError::LengthMismatch { word: 3, points: 2 })
        ));
    }

    #[test]
    fn trivial_words() {
        assert_eq!(admissible_half_pairing(&w("aA", 1)), Err(PairingError::TrivialWord));
        assert!(standard_cyclic_reduction(&w("aA", 1)).is_empty());
        assert!(standard_cyclic_reduction(&w("", 2)).is_empty());
    }

    #[test]
    fn standard_reduction_examples() {
        assert_eq!(standard_cyclic_reduction(&w("aaaAA", 1)).to_string(), "a");
        let fig6 = w("aaAbbBAA", 2);
        let v = standard_cyclic_reduction(&fig6);
        assert_eq!(v.to_string(), "Ab");
        assert!(v.is_rotation_of(&cyclic_reduce(&fig6)));
    }

    #[test]
    fn every_good_rotation_gives_same_pairing() {
        let fig6 = w("aaAbbBAA", 2);
        let rots = good_rotations(&fig6).unwrap();
        let base = pairing_from_rotation(&fig6, rots[0]);
        for &r in &rots {
            assert_eq!(pairing_from_rotation(&fig6, r), base);
            assert!(base.is_singleton(r + 1));
        }
    }
}
