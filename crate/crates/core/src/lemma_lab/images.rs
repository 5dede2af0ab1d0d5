use std::collections::BTreeSet;

use super::conj2::is_prime;
use super::LemmaError;
use crate::automorphisms::GroupAuto;
use crate::imaginaries::{canonical_key, in_subproduct_we, BasicElem};
use crate::words::{Decomposition, FactorSet};

/// Number of distinct classes among `x, f(x), .., f^{p-1}(x)`.
///
/// `f` must have prime order `p > 2` and fix the `base` blocks; `x` must be
/// a non-conjugacy element with no representative inside the base.
pub fn basic_image_count(
    x: &BasicElem,
    f: &GroupAuto,
    p: u32,
    d: &Decomposition,
    base: FactorSet,
) -> Result<usize, LemmaError> {
    if p <= 2 || !is_prime(p) {
        return Err(LemmaError::NotOddPrime(p));
    }
    if f.order(p) != Some(p) {
        return Err(LemmaError::WrongOrder { label: f.label().to_string(), p });
    }
    if !f.fixes_block(d, base) {
        return Err(LemmaError::NotFixingBlock(f.label().to_string()));
    }
    if matches!(x, BasicElem::S1(_)) {
        return Err(LemmaError::ConjugacyClass);
    }
    if in_subproduct_we(x, d, base) {
        return Err(LemmaError::InsideBase);
    }
    Ok(image_keys(x, f, p).len())
}

pub(crate) fn image_keys(x: &BasicElem, f: &GroupAuto, p: u32) -> BTreeSet<crate::imaginaries::ClassKey> {
    let mut keys = BTreeSet::new();
    let mut cur = x.clone();
    for _ in 0..p {
        keys.insert(canonical_key(&cur));
        cur = f.apply_basic(&cur);
    }
    keys
}

#[cfg(test)]
mod tests {
    use std::num::NonZeroU32;

    use super::*;
    use crate::automorphisms::make_cyclic_perm;
    use crate::words::Alphabet;

    fn setup() -> Alphabet {
        Alphabet::from_factors(&[("F2", &["e1", "e2"][..]), ("C", &["c1", "c2", "c3"][..])]).unwrap()
    }

    #[test]
    fn three_roots() {
        let al = setup();
        let d = al.decomposition();
        let f = make_cyclic_perm(d, "C").unwrap();
        let g = d.block(&["F2"]).unwrap();
        let one = NonZeroU32::new(1).unwrap();
        let x = BasicElem::S2 { a: al.gen("e1").unwrap(), b: al.gen("c1").unwrap(), m: one };
        assert_eq!(basic_image_count(&x, &f, 3, d, g).unwrap(), 3);
        let inside = BasicElem::S2 { a: al.gen("e1").unwrap(), b: al.gen("e2").unwrap(), m: one };
        assert_eq!(basic_image_count(&inside, &f, 3, d, g), Err(LemmaError::InsideBase));
        let s1 = BasicElem::S1(al.gen("c1").unwrap());
        assert_eq!(basic_image_count(&s1, &f, 3, d, g), Err(LemmaError::ConjugacyClass));
        assert_eq!(basic_image_count(&x, &f, 2, d, g), Err(LemmaError::NotOddPrime(2)));
        assert!(matches!(basic_image_count(&x, &f, 5, d, g), Err(LemmaError::WrongOrder { .. })));
    }
}
