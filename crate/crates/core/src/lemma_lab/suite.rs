use std::fmt;
use std::num::NonZeroU32;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::conj2::{conj2_verdict, Conj2Blocks, Conj2Verdict};
use super::cyclic::cyclic_lemma_witness;
use super::images::image_keys;
use super::malorb::{f2_commutator_orbit, infinite_orbit_check, malorb_classify, MalOrbVerdict};
use super::shift::{alternating_pairs, shift_permutation};
use crate::automorphisms::{make_cyclic_perm, make_f_a, orbit, GroupAuto};
use crate::imaginaries::{in_subproduct_we, BasicElem};
use crate::words::{enumerate_words, least_rotation, visit_words, Alphabet, Decomposition, FactorSet, Word};

/// Every range the lemma scans and the acceptance suite use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeskScale {
    pub cyclic_max_order: u64,
    pub cyclic_max_d: u64,
    /// Word length for the exhaustive conjugacy comparison.
    pub conjugacy_max_len: usize,
    pub double_coset_instances: usize,
    pub shift_max_len: usize,
    pub conj2_max_len: usize,
    pub conj2_max_syllables: usize,
    /// Component length for two-component elements in the image count scan.
    pub images_pair_len: usize,
    /// Component length for three-component elements in the same scan.
    pub images_triple_len: usize,
    pub images_max_exponent: u32,
    pub malorb_word_len: usize,
    pub malorb_pair_len: usize,
    pub malorb_triple_len: usize,
    pub malorb_budget: usize,
    pub infinite_samples: usize,
    pub infinite_component_len: usize,
    pub infinite_budget: usize,
    pub f2_budget: usize,
    pub seed: u64,
}

impl DeskScale {
    pub fn acceptance() -> Self {
        DeskScale {
            cyclic_max_order: 60,
            cyclic_max_d: 12,
            conjugacy_max_len: 6,
            double_coset_instances: 10_000,
            shift_max_len: 6,
            conj2_max_len: 6,
            conj2_max_syllables: 4,
            images_pair_len: 3,
            images_triple_len: 2,
            images_max_exponent: 2,
            malorb_word_len: 5,
            malorb_pair_len: 3,
            malorb_triple_len: 2,
            malorb_budget: 10,
            infinite_samples: 50,
            infinite_component_len: 4,
            infinite_budget: 25,
            f2_budget: 50,
            seed: 0x5eed_0001,
        }
    }

    /// Small ranges for smoke tests.
    pub fn quick() -> Self {
        DeskScale {
            cyclic_max_order: 16,
            cyclic_max_d: 6,
            conjugacy_max_len: 4,
            double_coset_instances: 500,
            shift_max_len: 4,
            conj2_max_len: 4,
            conj2_max_syllables: 4,
            images_pair_len: 2,
            images_triple_len: 1,
            images_max_exponent: 1,
            malorb_word_len: 3,
            malorb_pair_len: 2,
            malorb_triple_len: 1,
            malorb_budget: 10,
            infinite_samples: 10,
            infinite_component_len: 3,
            infinite_budget: 10,
            f2_budget: 50,
            ..DeskScale::acceptance()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LemmaName {
    Cyclic,
    Shift,
    Conj2,
    Images,
    MalOrb,
    InfiniteOrbit,
    F2Commutator,
}

impl LemmaName {
    pub const ALL: [LemmaName; 7] = [
        LemmaName::Cyclic,
        LemmaName::Shift,
        LemmaName::Conj2,
        LemmaName::Images,
        LemmaName::MalOrb,
        LemmaName::InfiniteOrbit,
        LemmaName::F2Commutator,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaName::Cyclic => "cyclic",
            LemmaName::Shift => "shift",
            LemmaName::Conj2 => "conj2",
            LemmaName::Images => "images",
            LemmaName::MalOrb => "malorb",
            LemmaName::InfiniteOrbit => "infinite-orbit",
            LemmaName::F2Commutator => "f2-commutator",
        }
    }
}

impl fmt::Display for LemmaName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaOutcome {
    pub name: LemmaName,
    pub cases: usize,
    /// Descriptions of failing cases, capped at a few.
    pub failures: Vec<String>,
    pub failure_count: usize,
}

impl LemmaOutcome {
    pub fn passed(&self) -> bool {
        self.failure_count == 0 && self.cases > 0
    }
}

struct Tally {
    name: LemmaName,
    cases: usize,
    failures: Vec<String>,
    failure_count: usize,
}

impl Tally {
    fn new(name: LemmaName) -> Self {
        Tally { name, cases: 0, failures: Vec::new(), failure_count: 0 }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < 5 {
                self.failures.push(describe());
            }
        }
    }

    fn finish(self) -> LemmaOutcome {
        LemmaOutcome { name: self.name, cases: self.cases, failures: self.failures, failure_count: self.failure_count }
    }
}

pub fn run_lemma(name: LemmaName, scale: &DeskScale) -> LemmaOutcome {
    let mut t = Tally::new(name);
    match name {
        LemmaName::Cyclic => scan_cyclic(&mut t, scale),
        LemmaName::Shift => scan_shift(&mut t, scale),
        LemmaName::Conj2 => scan_conj2(&mut t, scale),
        LemmaName::Images => scan_images(&mut t, scale),
        LemmaName::MalOrb => scan_malorb(&mut t, scale),
        LemmaName::InfiniteOrbit => scan_infinite(&mut t, scale),
        LemmaName::F2Commutator => {
            let r = f2_commutator_orbit(scale.f2_budget);
            t.check(matches!(&r, Ok(r) if r.exhausted && r.keys.len() == 2), || format!("{r:?}"));
        }
    }
    t.finish()
}

fn scan_cyclic(t: &mut Tally, scale: &DeskScale) {
    for m in 1..=scale.cyclic_max_order {
        for s in 0..m {
            for u in 0..m {
                for d in 2..=scale.cyclic_max_d {
                    let r = cyclic_lemma_witness(m, s, u, d);
                    let ok = matches!(r, Ok((k, l)) if (s * k) % m == (u * l) % m && !(k % d == 0 && l % d == 0));
                    t.check(ok, || format!("M={m} s={s} t={u} d={d}: {r:?}"));
                }
            }
        }
    }
}

fn nz(k: u32) -> NonZeroU32 {
    NonZeroU32::new(k).expect("positive")
}

fn exponents(max: u32) -> impl Iterator<Item = NonZeroU32> + Clone {
    (1..=max).map(nz)
}

/// Valid rotations of syllable pairs, found by rotating the whole word: the
/// pair shift `s` works when `h(a)` equals `a` rotated past its first `s`
/// pairs.
fn rotation_oracle(a: &Word, h: &GroupAuto, pairs: &[(Word, Word)]) -> Vec<usize> {
    let image = h.apply(a);
    let mut offset = 0;
    let mut out = Vec::new();
    for (s, (ai, xi)) in pairs.iter().enumerate() {
        // Pair i of the rotation is pair i+s of a; pair i of h(a) is
        // (a_i, h(x_i)).
        if a.rotate(offset) == image {
            out.push(s);
        }
        offset += ai.len() + xi.len();
    }
    out
}

fn scan_shift(t: &mut Tally, scale: &DeskScale) {
    let al = Alphabet::from_factors(&[
        ("F0", &["b1", "b2"][..]),
        ("X0", &["z"][..]),
        ("X1", &["y1", "y2", "y3"][..]),
    ])
    .expect("valid alphabet");
    let d = al.decomposition();
    let h = make_cyclic_perm(d, "X1").expect("three generators");
    let p = 3;
    let base = d.block(&["F0"]).unwrap();
    let moved = d.block(&["X0", "X1"]).unwrap();
    let x1 = d.block(&["X1"]).unwrap();
    let gens: Vec<usize> = (0..al.rank()).collect();

    let check = |t: &mut Tally, a: &Word, built_shift: Option<usize>| {
        let pairs = alternating_pairs(a, d, base, moved).expect("caller filtered");
        let oracle = rotation_oracle(a, &h, &pairs);
        let r = shift_permutation(a, &h, d, base, moved);
        let ok = match &r {
            Ok(sp) => {
                let m = pairs.len();
                let conditions = (0..m).all(|i| {
                    let j = sp.apply(i);
                    pairs[j].0 == pairs[i].0 && pairs[j].1 == h.apply(&pairs[i].1)
                });
                conditions
                    && sp.order % p == 0
                    && oracle.first() == Some(&sp.shift)
                    && built_shift.is_none_or(|s| oracle.contains(&s))
            }
            Err(_) => false,
        };
        t.check(ok, || format!("a={} shift={r:?} oracle={oracle:?}", al.render(a)));
    };

    visit_words(&gens, scale.shift_max_len, |a| {
        let (Some(first), Some(last)) = (a.first(), a.last()) else { return };
        let in_block = |l: crate::words::Letter, b: FactorSet| b.contains(d.factor_of(l.generator()));
        if !a.is_cyclically_reduced() || !in_block(first, base) || !in_block(last, moved) {
            return;
        }
        if !a.letters().iter().any(|&l| in_block(l, x1)) {
            return;
        }
        if h.apply(a).canonical_cyclic() != a.canonical_cyclic() {
            return;
        }
        check(t, a, None);
    });

    // Rotation-symmetric templates: the block of pairs repeated p times with
    // the moved syllables pushed through successive powers of h.
    let w = |names: &[&str]| names.iter().fold(Word::identity(), |acc, n| acc.multiply(&al.gen(n).unwrap()));
    let fixed_parts = [w(&["b1"]), w(&["b2"]), w(&["b1", "b2"]), w(&["b2", "b1", "b1"])];
    let moved_parts = [w(&["y1"]), w(&["y1", "z"]), w(&["z", "y2"]), w(&["y1", "y2"]), w(&["y3", "z", "y3"])];
    let mut blocks: Vec<Vec<(Word, Word)>> = Vec::new();
    for fa in &fixed_parts {
        for xa in &moved_parts {
            blocks.push(vec![(fa.clone(), xa.clone())]);
            for fb in &fixed_parts {
                for xb in &moved_parts {
                    blocks.push(vec![(fa.clone(), xa.clone()), (fb.clone(), xb.clone())]);
                }
            }
        }
    }
    for block in blocks {
        let q = block.len();
        let mut a = Word::identity();
        let mut hk = GroupAuto::identity(al.rank());
        for _ in 0..p {
            for (fa, xa) in &block {
                a = a.multiply(fa).multiply(&hk.apply(xa));
            }
            hk = h.compose(&hk);
        }
        // h(a) is a rotated left by one block of q pairs.
        check(t, &a, Some(q));
    }
}

fn cyclic_syllable_count(w: &Word, d: &Decomposition) -> usize {
    let letters = w.letters();
    if letters.is_empty() {
        return 0;
    }
    let f = |i: usize| d.factor_of(letters[i].generator());
    let n = letters.len();
    let changes = (0..n).filter(|&i| f(i) != f((i + 1) % n)).count();
    changes.max(1)
}

fn scan_conj2(t: &mut Tally, scale: &DeskScale) {
    let al = Alphabet::from_factors(&[
        ("Uf", &["u1", "u2", "u3"][..]),
        ("W", &["w"][..]),
        ("Ug", &["v1", "v2", "v3"][..]),
    ])
    .expect("valid alphabet");
    let d = al.decomposition();
    let f = make_cyclic_perm(d, "Ug").expect("three generators");
    let g = make_cyclic_perm(d, "Uf").expect("three generators");
    let blocks = Conj2Blocks {
        u_f: d.block(&["Uf"]).unwrap(),
        w: d.block(&["W"]).unwrap(),
        u_g: d.block(&["Ug"]).unwrap(),
    };
    // Validate the shapes once through the public entry point.
    let shape = super::conj2::conj2_check(&al.gen("w").unwrap(), &f, &g, d, blocks, 3);
    t.check(shape.is_ok(), || format!("shape rejected: {shape:?}"));
    let gens: Vec<usize> = (0..al.rank()).collect();
    visit_words(&gens, scale.conj2_max_len, |a| {
        if a.is_empty() || !a.is_cyclically_reduced() || least_rotation(a.letters()) != 0 {
            return;
        }
        if cyclic_syllable_count(a, d) > scale.conj2_max_syllables {
            return;
        }
        let r = conj2_verdict(a, &f, &g, d, blocks);
        t.check(r.verdict != Conj2Verdict::Counterexample, || format!("a={} {r:?}", al.render(a)));
    });
}

fn pairs_of(sort: u8, words: &[Word], m: NonZeroU32) -> impl Iterator<Item = BasicElem> + '_ {
    words.iter().flat_map(move |a| {
        words.iter().map(move |b| match sort {
            2 => BasicElem::S2 { a: a.clone(), b: b.clone(), m },
            _ => BasicElem::S3 { a: a.clone(), b: b.clone(), m },
        })
    })
}

fn triples_of(words: &[Word], m: NonZeroU32, n: NonZeroU32) -> impl Iterator<Item = BasicElem> + '_ {
    words.iter().flat_map(move |a| {
        words.iter().flat_map(move |b| {
            words.iter().map(move |c| BasicElem::S4 { a: a.clone(), b: b.clone(), c: c.clone(), m, n })
        })
    })
}

/// Non-S1 elements over `words`: both coset sorts for every exponent, then
/// the double cosets over `triple_words`.
fn non_conjugacy_elements<'a>(
    pair_words: &'a [Word],
    triple_words: &'a [Word],
    max_exp: u32,
) -> impl Iterator<Item = BasicElem> + 'a {
    let cosets = exponents(max_exp).flat_map(move |m| pairs_of(2, pair_words, m).chain(pairs_of(3, pair_words, m)));
    let doubles = exponents(max_exp)
        .flat_map(move |m| exponents(max_exp).flat_map(move |n| triples_of(triple_words, m, n)));
    cosets.chain(doubles)
}

fn scan_images(t: &mut Tally, scale: &DeskScale) {
    let al = Alphabet::from_factors(&[("F2", &["e1", "e2"][..]), ("F3", &["c1", "c2", "c3"][..])])
        .expect("valid alphabet");
    let d = al.decomposition();
    let f = make_cyclic_perm(d, "F3").expect("three generators");
    let base = d.block(&["F2"]).unwrap();
    let gens: Vec<usize> = (0..al.rank()).collect();
    let pair_words = enumerate_words(&gens, scale.images_pair_len);
    let triple_words = enumerate_words(&gens, scale.images_triple_len);
    // Validate the automorphism through the public entry point once.
    let probe = BasicElem::S2 { a: Word::identity(), b: al.gen("c1").unwrap(), m: nz(1) };
    let shape = super::images::basic_image_count(&probe, &f, 3, d, base);
    t.check(shape == Ok(3), || format!("probe: {shape:?}"));
    for x in non_conjugacy_elements(&pair_words, &triple_words, scale.images_max_exponent) {
        if in_subproduct_we(&x, d, base) {
            continue;
        }
        let n = image_keys(&x, &f, 3).len();
        t.check(n == 3, || format!("{x:?}: {n} images"));
    }
}

struct OrbitFrame {
    al: Alphabet,
    base: FactorSet,
    e: usize,
}

fn orbit_frame() -> OrbitFrame {
    let al = Alphabet::from_factors(&[("F2", &["e1", "e2"][..]), ("E", &["e"][..])]).expect("valid alphabet");
    let base = al.decomposition().block(&["F2"]).unwrap();
    let e = al.generator_index("e").unwrap();
    OrbitFrame { al, base, e }
}

fn scan_malorb(t: &mut Tally, scale: &DeskScale) {
    let OrbitFrame { al, base, e } = orbit_frame();
    let d = al.decomposition();
    let (e1, e2) = (al.gen("e1").unwrap(), al.gen("e2").unwrap());
    let twists = [e1.clone(), e1.multiply(&e2)];
    let gens: Vec<usize> = (0..al.rank()).collect();
    let base_gens = d.generators_in(base);
    let s1_words = enumerate_words(&gens, scale.malorb_word_len);
    let pair_words = enumerate_words(&gens, scale.malorb_pair_len);
    let triple_words = enumerate_words(&gens, scale.malorb_triple_len);
    let ew = Word::generator(e);
    for a in &twists {
        let f = make_f_a(d, base, a, e).expect("twist lies in the base");
        let elements = s1_words
            .iter()
            .map(|w| BasicElem::S1(w.clone()))
            .chain(non_conjugacy_elements(&pair_words, &triple_words, 1));
        for x in elements {
            if in_subproduct_we(&x, d, base) {
                continue;
            }
            let c = malorb_classify(&x, a, d, e);
            match c {
                Ok(c) if c.verdict == MalOrbVerdict::NonExceptional => {
                    let r = orbit(&x, std::slice::from_ref(&f), scale.malorb_budget);
                    let ok = matches!(&r, Ok(r) if r.keys.len() == scale.malorb_budget && !r.exhausted);
                    t.check(ok, || format!("a={} x={x:?}: orbit {:?}", al.render(a), r.map(|r| r.keys.len())));
                }
                Ok(_) => {}
                Err(err) => t.check(false, || format!("x={x:?}: {err}")),
            }
        }
        // Constructed first-item shape b·e·a·e⁻¹.
        for b in enumerate_words(&base_gens, 3).into_iter().filter(|b| !b.is_empty()) {
            let w = b.multiply(&ew).multiply(a).multiply(&ew.inverse());
            let c = malorb_classify(&BasicElem::S1(w.clone()), a, d, e);
            let ok = matches!(&c, Ok(c) if c.verdict == MalOrbVerdict::ExceptionalItem1) && f.apply(&w) == w;
            t.check(ok, || format!("constructed {}: {c:?}", al.render(&w)));
        }
    }
}

/// Random element of a random sort with components of length at most
/// `max_len`, outside the base and not degenerate.
pub(crate) fn sample_outside_base<R: Rng>(
    rng: &mut R,
    d: &Decomposition,
    base: FactorSet,
    max_len: usize,
) -> BasicElem {
    let rank = d.rank();
    let word = |rng: &mut R| {
        let len = rng.gen_range(0..=max_len);
        crate::words::reduce((0..len).map(|_| crate::words::Letter::new(rng.gen_range(0..rank), rng.gen())))
    };
    loop {
        let m = nz(rng.gen_range(1..=3));
        let n = nz(rng.gen_range(1..=3));
        let x = match rng.gen_range(0..4) {
            0 => BasicElem::S1(word(rng)),
            1 => BasicElem::S2 { a: word(rng), b: word(rng), m },
            2 => BasicElem::S3 { a: word(rng), b: word(rng), m },
            _ => BasicElem::S4 { a: word(rng), b: word(rng), c: word(rng), m, n },
        };
        if !in_subproduct_we(&x, d, base) {
            return x;
        }
    }
}

fn scan_infinite(t: &mut Tally, scale: &DeskScale) {
    let OrbitFrame { al, base, e } = orbit_frame();
    let d = al.decomposition();
    let (a, c) = (al.gen("e1").unwrap(), al.gen("e2").unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(scale.seed);
    for _ in 0..scale.infinite_samples {
        let x = sample_outside_base(&mut rng, d, base, scale.infinite_component_len);
        let r = infinite_orbit_check(&x, &a, &c, d, e, scale.infinite_budget);
        t.check(r == Ok(true), || format!("x={x:?}: {r:?}"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        let scale = DeskScale::quick();
        for name in LemmaName::ALL {
            let out = run_lemma(name, &scale);
            assert!(out.passed(), "{name}: {:?}", out.failures);
        }
    }
}
