use num_integer::Integer;

use super::LemmaError;
use crate::automorphisms::GroupAuto;
use crate::words::{Decomposition, FactorSet, Word};

/// A rotation of `{0, .., len-1}` by `shift` places.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftPermutation {
    pub shift: usize,
    pub len: usize,
    pub order: usize,
}

impl ShiftPermutation {
    fn new(shift: usize, len: usize) -> Self {
        let order = if shift == 0 { 1 } else { len / shift.gcd(&len) };
        ShiftPermutation { shift, len, order }
    }

    pub fn apply(&self, i: usize) -> usize {
        (i + self.shift) % self.len
    }
}

/// Splits a cyclically reduced word into pairs `(a_i, x_i)` of alternating
/// syllables, `a_i` from `first` and `x_i` from `second`.
pub(crate) fn alternating_pairs(
    w: &Word,
    d: &Decomposition,
    first: FactorSet,
    second: FactorSet,
) -> Result<Vec<(Word, Word)>, LemmaError> {
    let syl = w.syllables(d, &[first, second])?;
    if syl.len() < 2 || syl.len() % 2 != 0 || syl[0].block != 0 {
        return Err(LemmaError::NotAlternating);
    }
    Ok(syl.chunks(2).map(|c| (c[0].word.clone(), c[1].word.clone())).collect())
}

/// The rotation of syllable pairs induced by `h` on a word whose conjugacy
/// class it fixes.
///
/// `h` must fix the `base` block generator by generator and preserve the
/// `moved` block; together the two blocks must cover every factor. Returns
/// the smallest shift `s` with `a_{i+s} = a_i` and `x_{i+s} = h(x_i)`.
pub fn shift_permutation(
    a: &Word,
    h: &GroupAuto,
    d: &Decomposition,
    base: FactorSet,
    moved: FactorSet,
) -> Result<ShiftPermutation, LemmaError> {
    d.check_partition(&[base, moved])?;
    if !h.fixes_block(d, base) {
        return Err(LemmaError::NotFixingBlock(h.label().to_string()));
    }
    if !h.preserves_block(d, moved) {
        return Err(LemmaError::NotPreservingBlock(h.label().to_string()));
    }
    if !a.is_cyclically_reduced() {
        return Err(LemmaError::NotCyclicallyReduced);
    }
    let pairs = alternating_pairs(a, d, base, moved)?;
    if h.apply(a).canonical_cyclic() != a.canonical_cyclic() {
        return Err(LemmaError::ClassNotFixed);
    }
    let m = pairs.len();
    let moved_x: Vec<Word> = pairs.iter().map(|(_, x)| h.apply(x)).collect();
    (0..m)
        .find(|&s| (0..m).all(|i| pairs[(i + s) % m].0 == pairs[i].0 && pairs[(i + s) % m].1 == moved_x[i]))
        .map(|s| ShiftPermutation::new(s, m))
        .ok_or_else(|| LemmaError::LemmaViolation("no rotation of the syllable pairs matches h".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::make_cyclic_perm;
    use crate::words::Alphabet;

    fn setup() -> Alphabet {
        Alphabet::from_factors(&[
            ("F0", &["b", "b2"][..]),
            ("X0", &["z"][..]),
            ("X1", &["y1", "y2", "y3"][..]),
        ])
        .unwrap()
    }

    fn parse(al: &Alphabet, names: &[&str]) -> Word {
        names.iter().fold(Word::identity(), |w, n| w.multiply(&al.gen(n).unwrap()))
    }

    #[test]
    fn symmetric_rotation() {
        let al = setup();
        let d = al.decomposition();
        let h = make_cyclic_perm(d, "X1").unwrap();
        let a = parse(&al, &["b", "y1", "b", "y2", "b", "y3"]);
        let s = shift_permutation(&a, &h, d, d.block(&["F0"]).unwrap(), d.block(&["X0", "X1"]).unwrap()).unwrap();
        assert_eq!((s.shift, s.order), (1, 3));
    }

    #[test]
    fn identity_gives_trivial_shift() {
        let al = setup();
        let d = al.decomposition();
        let h = GroupAuto::identity(al.rank());
        let a = parse(&al, &["b", "y1", "b2", "z"]);
        let s = shift_permutation(&a, &h, d, d.block(&["F0"]).unwrap(), d.block(&["X0", "X1"]).unwrap()).unwrap();
        assert_eq!((s.shift, s.order), (0, 1));
    }

    #[test]
    fn distinct_errors() {
        let al = setup();
        let d = al.decomposition();
        let h = make_cyclic_perm(d, "X1").unwrap();
        let (f0, x) = (d.block(&["F0"]).unwrap(), d.block(&["X0", "X1"]).unwrap());
        let moved = parse(&al, &["b", "y1"]);
        assert_eq!(shift_permutation(&moved, &h, d, f0, x), Err(LemmaError::ClassNotFixed));
        let starts_x = parse(&al, &["y1", "b"]);
        assert_eq!(shift_permutation(&starts_x, &h, d, f0, x), Err(LemmaError::NotAlternating));
        let unreduced = parse(&al, &["b", "y1"]).multiply(&parse(&al, &["b"]).inverse());
        assert_eq!(shift_permutation(&unreduced, &h, d, f0, x), Err(LemmaError::NotCyclicallyReduced));
        let swapped = shift_permutation(&parse(&al, &["b", "y1"]), &h, d, x, f0);
        assert!(matches!(swapped, Err(LemmaError::NotFixingBlock(_))));
    }
}
