use super::LemmaError;
use crate::automorphisms::{make_f_a, nielsen_generators, orbit, OrbitReport};
use crate::imaginaries::{in_subproduct_we, BasicElem};
use crate::roots::{centralizer_generator, primitive_root};
use crate::words::{Alphabet, Decomposition, FactorSet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MalOrbVerdict {
    ExceptionalItem1,
    ExceptionalItem2,
    ExceptionalItem3,
    NonExceptional,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MalOrbClassification {
    pub verdict: MalOrbVerdict,
    /// Which part of the normal form matched.
    pub details: String,
}

impl MalOrbClassification {
    fn new(verdict: MalOrbVerdict, details: impl Into<String>) -> Self {
        MalOrbClassification { verdict, details: details.into() }
    }
}

/// Normal form `g_0 e^{k_0} g_1 … e^{k_{m-1}} g_m` with respect to `G * ⟨e⟩`.
/// The outer `g_0`, `g_m` may be trivial, the inner ones never are.
struct LinearForm {
    base: Vec<Word>,
    e_powers: Vec<i64>,
}

fn linear_form(w: &Word, e: usize) -> LinearForm {
    let mut base = vec![Vec::new()];
    let mut e_powers = Vec::new();
    let mut in_e = false;
    for &l in w.letters() {
        if l.generator() == e {
            if !in_e {
                e_powers.push(0);
                in_e = true;
            }
            *e_powers.last_mut().unwrap() += l.sign();
        } else {
            if in_e {
                base.push(Vec::new());
                in_e = false;
            }
            base.last_mut().unwrap().push(l);
        }
    }
    if in_e {
        base.push(Vec::new());
    }
    LinearForm { base: base.iter().map(|ls| Word::from_letters(ls)).collect(), e_powers }
}

/// `H = G * ⟨e⟩` with `e` spanning its own factor.
struct Frame<'a> {
    d: &'a Decomposition,
    g_block: FactorSet,
}

impl<'a> Frame<'a> {
    fn new(d: &'a Decomposition, e: usize, twists: &[&Word]) -> Result<Self, LemmaError> {
        if e >= d.rank() || d.generators_of(d.factor_of(e)) != [e] {
            return Err(LemmaError::ForeignLetters);
        }
        let g_block = d.complement(FactorSet::single(d.factor_of(e)));
        for t in twists {
            if t.is_empty() || !t.lies_in_subproduct(d, g_block) {
                return Err(LemmaError::BadTwist);
            }
        }
        Ok(Frame { d, g_block })
    }

    fn in_base(&self, w: &Word) -> bool {
        w.lies_in_subproduct(self.d, self.g_block)
    }
}

/// `x ∈ C(a)` for nontrivial `a`, by comparing centralizer generators.
fn centralizes(x: &Word, a: &Word) -> bool {
    x.is_empty() || centralizer_generator(x).ok() == centralizer_generator(a).ok()
}

/// Whether `b` commutes with some `G`-conjugate of `a`. Both lie in the free
/// factor `G`, so this holds exactly when the roots of `b` and `a^{±1}` are
/// conjugate.
fn centralizes_some_conjugate(b: &Word, a: &Word) -> bool {
    if b.is_empty() {
        return true;
    }
    let rb = primitive_root(b).expect("nontrivial").root.canonical_cyclic();
    let ra = primitive_root(a).expect("nontrivial").root;
    rb == ra.canonical_cyclic() || rb == ra.inverse().canonical_cyclic()
}

/// Matches `x` against the three exceptional shapes for orbits under the
/// powers of `f_a` on `H = G * ⟨e⟩`.
///
/// Centralizer components are only defined up to their cyclic centralizer,
/// so the second shape is tried on the component, its inverse and the
/// first three powers of its root in both directions. The third shape's
/// "centralizer of a conjugate of `a`" is decided exactly over all
/// conjugators in `G`.
pub fn malorb_classify(x: &BasicElem, a: &Word, d: &Decomposition, e: usize) -> Result<MalOrbClassification, LemmaError> {
    let frame = Frame::new(d, e, &[a])?;
    if in_subproduct_we(x, d, frame.g_block) {
        return Err(LemmaError::InsideBase);
    }
    use MalOrbVerdict::*;
    let (centralizing, middle): (Vec<&Word>, &Word) = match x {
        BasicElem::S1(w) => return Ok(classify_conjugacy(w, a, e)),
        BasicElem::S2 { a: coset, b, .. } | BasicElem::S3 { a: coset, b, .. } => (vec![b], coset),
        BasicElem::S4 { a: left, b, c: right, .. } => (vec![left, right], b),
    };
    for (slot, comp) in centralizing.iter().enumerate() {
        if comp.is_empty() || frame.in_base(comp) {
            continue;
        }
        let root = primitive_root(comp).expect("nontrivial").root;
        let mut candidates = vec![(*comp).clone(), comp.inverse()];
        candidates.extend([1, -1, 2, -2, 3, -3].into_iter().map(|k| root.pow(k)));
        for cand in &candidates {
            let lf = linear_form(cand, e);
            if lf.e_powers.len() > 1 && centralizes(&lf.base[1], a) {
                return Ok(MalOrbClassification::new(
                    ExceptionalItem2,
                    format!("centralizer component {slot} has second syllable in C(a)"),
                ));
            }
        }
    }
    if centralizing.iter().all(|c| frame.in_base(c)) {
        let lf = linear_form(middle, e);
        let m = lf.e_powers.len();
        if let Some(i) = (1..m).find(|&i| centralizes(&lf.base[i], a)) {
            return Ok(MalOrbClassification::new(ExceptionalItem3, format!("inner syllable {} in C(a)", i + 1)));
        }
        if let Some(slot) = centralizing.iter().position(|c| centralizes_some_conjugate(c, a)) {
            return Ok(MalOrbClassification::new(
                ExceptionalItem3,
                format!("centralizer component {slot} commutes with a conjugate of a"),
            ));
        }
    }
    Ok(MalOrbClassification::new(NonExceptional, "no exceptional shape"))
}

fn classify_conjugacy(w: &Word, a: &Word, e: usize) -> MalOrbClassification {
    let core = w.cyclic_reduce().core;
    let letters = core.letters();
    let n = letters.len();
    let is_e = |i: usize| letters[i % n].generator() == e;
    // Rotate so the word opens with a base syllable right after an e-syllable.
    let start = (0..n).find(|&i| !is_e(i) && is_e(i + n - 1));
    let Some(start) = start else {
        return MalOrbClassification::new(MalOrbVerdict::NonExceptional, "cyclic word is a power of e");
    };
    let lf = linear_form(&core.rotate(start), e);
    let m = lf.e_powers.len();
    if m > 1 {
        if let Some(i) = (0..m).find(|&i| centralizes(&lf.base[i], a)) {
            return MalOrbClassification::new(MalOrbVerdict::ExceptionalItem1, format!("syllable b{} in C(a)", i + 1));
        }
    }
    MalOrbClassification::new(MalOrbVerdict::NonExceptional, "no exceptional shape")
}

/// Whether the orbit of `x` under `f_a` and `f_c` reaches `budget` classes
/// without closing.
pub fn infinite_orbit_check(
    x: &BasicElem,
    a: &Word,
    c: &Word,
    d: &Decomposition,
    e: usize,
    budget: usize,
) -> Result<bool, LemmaError> {
    let frame = Frame::new(d, e, &[a, c])?;
    if centralizer_generator(a) == centralizer_generator(c) {
        return Err(LemmaError::CentralizersCoincide);
    }
    if in_subproduct_we(x, d, frame.g_block) {
        return Err(LemmaError::InsideBase);
    }
    let gens = [make_f_a(d, frame.g_block, a, e)?, make_f_a(d, frame.g_block, c, e)?];
    let report = orbit(x, &gens, budget)?;
    Ok(report.keys.len() == budget && !report.exhausted)
}

/// Orbit of the class of the commutator `[e1, e2]` under the Nielsen
/// generators of `Aut(F2)`.
pub fn f2_commutator_orbit(budget: usize) -> Result<OrbitReport, LemmaError> {
    let al = Alphabet::free(&["e1", "e2"])?;
    let (e1, e2) = (al.gen("e1")?, al.gen("e2")?);
    let comm = e1.multiply(&e2).multiply(&e1.inverse()).multiply(&e2.inverse());
    Ok(orbit(&BasicElem::S1(comm), &nielsen_generators(&al)?, budget)?)
}

#[cfg(test)]
mod tests {
    use std::num::NonZeroU32;

    use super::*;
    use crate::imaginaries::{canonical_key, ClassKey};

    fn setup() -> Alphabet {
        Alphabet::from_factors(&[("F2", &["e1", "e2"][..]), ("E", &["e"][..])]).unwrap()
    }

    fn word(al: &Alphabet, names: &[&str]) -> Word {
        names
            .iter()
            .map(|n| match n.strip_suffix("'") {
                Some(base) => al.gen(base).unwrap().inverse(),
                None => al.gen(n).unwrap(),
            })
            .fold(Word::identity(), |w, g| w.multiply(&g))
    }

    #[test]
    fn item_one_example() {
        let al = setup();
        let d = al.decomposition();
        let e = al.generator_index("e").unwrap();
        let a = word(&al, &["e1"]);
        let w = word(&al, &["e2", "e", "e1", "e'"]);
        let c = malorb_classify(&BasicElem::S1(w.clone()), &a, d, e).unwrap();
        assert_eq!(c.verdict, MalOrbVerdict::ExceptionalItem1);
        let f = make_f_a(d, d.block(&["F2"]).unwrap(), &a, e).unwrap();
        assert_eq!(f.apply(&w), w);
    }

    #[test]
    fn plain_word_is_not_exceptional() {
        let al = setup();
        let d = al.decomposition();
        let e = al.generator_index("e").unwrap();
        let c = malorb_classify(&BasicElem::S1(word(&al, &["e1", "e"])), &word(&al, &["e2"]), d, e).unwrap();
        assert_eq!(c.verdict, MalOrbVerdict::NonExceptional);
    }

    #[test]
    fn coset_shapes() {
        let al = setup();
        let d = al.decomposition();
        let e = al.generator_index("e").unwrap();
        let a = word(&al, &["e1"]);
        let one = NonZeroU32::new(1).unwrap();
        // Centralizer component e e1 e^-1 e2: second base syllable e1.
        let x = BasicElem::S2 { a: word(&al, &["e2"]), b: word(&al, &["e", "e1", "e'", "e2"]), m: one };
        assert_eq!(malorb_classify(&x, &a, d, e).unwrap().verdict, MalOrbVerdict::ExceptionalItem2);
        // Root e2 is conjugate to nothing related to e1, middle has no inner syllable.
        let y = BasicElem::S2 { a: word(&al, &["e"]), b: word(&al, &["e2"]), m: one };
        assert_eq!(malorb_classify(&y, &a, d, e).unwrap().verdict, MalOrbVerdict::NonExceptional);
        // Root e2 e1 e2^-1 is a conjugate of a.
        let z = BasicElem::S3 { a: word(&al, &["e"]), b: word(&al, &["e2", "e1", "e2'"]), m: one };
        assert_eq!(malorb_classify(&z, &a, d, e).unwrap().verdict, MalOrbVerdict::ExceptionalItem3);
        let inside = BasicElem::S2 { a: word(&al, &["e2"]), b: word(&al, &["e1"]), m: one };
        assert_eq!(malorb_classify(&inside, &a, d, e), Err(LemmaError::InsideBase));
    }

    #[test]
    fn pair_of_twists() {
        let al = setup();
        let d = al.decomposition();
        let e = al.generator_index("e").unwrap();
        let (a, c) = (word(&al, &["e1"]), word(&al, &["e2"]));
        let x = BasicElem::S1(word(&al, &["e1", "e"]));
        assert!(infinite_orbit_check(&x, &a, &c, d, e, 25).unwrap());
        let fixed_by_a = BasicElem::S1(word(&al, &["e2", "e", "e1", "e'"]));
        assert!(infinite_orbit_check(&fixed_by_a, &a, &c, d, e, 10).unwrap());
        let inside = BasicElem::S1(word(&al, &["e1", "e2"]));
        assert_eq!(infinite_orbit_check(&inside, &a, &c, d, e, 10), Err(LemmaError::InsideBase));
        assert_eq!(
            infinite_orbit_check(&x, &a, &word(&al, &["e1", "e1"]), d, e, 10),
            Err(LemmaError::CentralizersCoincide)
        );
    }

    #[test]
    fn commutator_has_two_classes() {
        let r = f2_commutator_orbit(50).unwrap();
        assert!(r.exhausted);
        let al = Alphabet::free(&["e1", "e2"]).unwrap();
        let comm = word(&al, &["e1", "e2", "e1'", "e2'"]);
        let expected: std::collections::BTreeSet<ClassKey> =
            [canonical_key(&BasicElem::S1(comm.clone())), canonical_key(&BasicElem::S1(comm.inverse()))].into();
        assert_eq!(r.keys, expected);
        let tight = f2_commutator_orbit(1).unwrap();
        assert!(!tight.exhausted);
        assert_eq!(tight.keys.len(), 1);
    }
}
