//! Automorphisms given by generator images together with an explicit
//! inverse, their action on words and on basic elements, and bounded orbit
//! enumeration.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::imaginaries::{canonical_key, BasicElem, ClassKey};
use crate::words::{Alphabet, Decomposition, FactorSet, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutoError {
    #[error("expected {expected} generator images, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("image word uses generator {0}, outside the alphabet")]
    ForeignGenerator(usize),
    #[error("`{label}`: supplied inverse does not undo the map on generator {generator}")]
    NotInverse { label: String, generator: usize },
    #[error("the element a must lie in the fixed block")]
    OutsideBlock,
    #[error("generator {0} lies inside the fixed block")]
    GeneratorInBlock(usize),
    #[error("factor `{0}` needs at least two generators to permute")]
    TooFewGenerators(String),
    #[error("Nielsen generators need an alphabet of rank 2, got {0}")]
    WrongRank(usize),
    #[error("orbit budget must be at least 1")]
    ZeroBudget,
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Substitutes `images[g]` for every generator `g` and reduces. Works for
/// any endomorphism, invertible or not.
pub fn apply_images(images: &[Word], w: &Word) -> Word {
    let mut out = Word::identity();
    for l in w.letters() {
        let img = &images[l.generator()];
        out = if l.is_inverse() {
            out.multiply(&img.inverse())
        } else {
            out.multiply(img)
        };
    }
    out
}

/// An automorphism with a verified inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAuto {
    label: String,
    images: Vec<Word>,
    inverse_images: Vec<Word>,
}

impl GroupAuto {
    /// Checks both compositions against the identity on every generator.
    pub fn new(label: impl Into<String>, images: Vec<Word>, inverse_images: Vec<Word>) -> Result<Self, AutoError> {
        let label = label.into();
        let rank = images.len();
        if inverse_images.len() != rank {
            return Err(AutoError::RankMismatch { expected: rank, got: inverse_images.len() });
        }
        for w in images.iter().chain(&inverse_images) {
            if let Some(g) = w.max_generator().filter(|&g| g >= rank) {
                return Err(AutoError::ForeignGenerator(g));
            }
        }
        for g in 0..rank {
            let x = Word::generator(g);
            let there_and_back = apply_images(&inverse_images, &images[g]);
            let back_and_there = apply_images(&images, &inverse_images[g]);
            if there_and_back != x || back_and_there != x {
                return Err(AutoError::NotInverse { label, generator: g });
            }
        }
        Ok(GroupAuto { label, images, inverse_images })
    }

    /// Images for the listed generators; every other generator is fixed.
    pub fn from_assignments(
        label: impl Into<String>,
        rank: usize,
        images: &[(usize, Word)],
        inverse_images: &[(usize, Word)],
    ) -> Result<Self, AutoError> {
        let fill = |pairs: &[(usize, Word)]| -> Result<Vec<Word>, AutoError> {
            let mut v: Vec<Word> = (0..rank).map(Word::generator).collect();
            for (g, w) in pairs {
                if *g >= rank {
                    return Err(AutoError::ForeignGenerator(*g));
                }
                v[*g] = w.clone();
            }
            Ok(v)
        };
        Self::new(label, fill(images)?, fill(inverse_images)?)
    }

    pub fn identity(rank: usize) -> Self {
        let images: Vec<Word> = (0..rank).map(Word::generator).collect();
        GroupAuto { label: "id".into(), inverse_images: images.clone(), images }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, generator: usize) -> &Word {
        &self.images[generator]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[Word] {
        &self.inverse_images
    }

    pub fn apply(&self, w: &Word) -> Word {
        apply_images(&self.images, w)
    }

    pub fn apply_basic(&self, x: &BasicElem) -> BasicElem {
        x.map(|w| self.apply(w))
    }

    pub fn inverse(&self) -> GroupAuto {
        GroupAuto {
            label: format!("{}^-1", self.label),
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GroupAuto) -> GroupAuto {
        GroupAuto {
            label: format!("{}*{}", self.label, other.label),
            images: other.images.iter().map(|w| self.apply(w)).collect(),
            inverse_images: self.inverse_images.iter().map(|w| other.inverse().apply(w)).collect(),
        }
    }

    pub fn power(&self, k: i64) -> GroupAuto {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupAuto::identity(self.rank());
        for _ in 0..k.unsigned_abs() {
            out = base.compose(&out);
        }
        out.with_label(format!("{}^{k}", self.label))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(g, w)| *w == Word::generator(g))
    }

    /// Smallest `k <= max` with `self^k = id`.
    pub fn order(&self, max: u32) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=max {
            if acc.is_identity() {
                return Some(k);
            }
            acc = self.compose(&acc);
        }
        None
    }

    /// Whether every generator of `blocks` is mapped to itself.
    pub fn fixes_block(&self, d: &Decomposition, blocks: FactorSet) -> bool {
        d.generators_in(blocks).into_iter().all(|g| self.images[g] == Word::generator(g))
    }

    /// Whether the subproduct on `blocks` is mapped into itself.
    pub fn preserves_block(&self, d: &Decomposition, blocks: FactorSet) -> bool {
        d.generators_in(blocks)
            .into_iter()
            .all(|g| self.images[g].lies_in_subproduct(d, blocks))
    }
}

/// The automorphism of `G * ⟨e⟩` that is the identity on `G` and sends
/// `e ↦ e·a`.
pub fn make_f_a(d: &Decomposition, g_block: FactorSet, a: &Word, e: usize) -> Result<GroupAuto, AutoError> {
    let rank = d.rank();
    if !a.lies_in_subproduct(d, g_block) {
        return Err(AutoError::OutsideBlock);
    }
    if e >= rank {
        return Err(AutoError::ForeignGenerator(e));
    }
    if g_block.contains(d.factor_of(e)) {
        return Err(AutoError::GeneratorInBlock(e));
    }
    let ew = Word::generator(e);
    GroupAuto::from_assignments(
        "f_a",
        rank,
        &[(e, ew.multiply(a))],
        &[(e, ew.multiply(&a.inverse()))],
    )
}

/// Cyclically permutes the generators of one factor, in alphabet order:
/// `g_0 ↦ g_1 ↦ … ↦ g_{p-1} ↦ g_0`.
pub fn make_cyclic_perm(d: &Decomposition, factor: &str) -> Result<GroupAuto, AutoError> {
    let f = d.factor_index(factor)?;
    let gens = d.generators_of(f);
    let p = gens.len();
    if p < 2 {
        return Err(AutoError::TooFewGenerators(factor.to_string()));
    }
    let fwd: Vec<(usize, Word)> = (0..p).map(|k| (gens[k], Word::generator(gens[(k + 1) % p]))).collect();
    let back: Vec<(usize, Word)> = (0..p).map(|k| (gens[(k + 1) % p], Word::generator(gens[k]))).collect();
    GroupAuto::from_assignments(format!("cyc_{factor}"), d.rank(), &fwd, &back)
}

/// Inversion `e1 ↦ e1⁻¹`, swap `e1 ↔ e2` and transvection `e1 ↦ e1 e2` of
/// a rank-2 free group.
pub fn nielsen_generators(alphabet: &Alphabet) -> Result<Vec<GroupAuto>, AutoError> {
    if alphabet.rank() != 2 {
        return Err(AutoError::WrongRank(alphabet.rank()));
    }
    Ok(nielsen_generators_on(2, 0, 1))
}

/// The same three automorphisms acting on generators `x`, `y` of a larger
/// alphabet, fixing everything else.
pub fn nielsen_generators_on(rank: usize, x: usize, y: usize) -> Vec<GroupAuto> {
    let gx = Word::generator(x);
    let gy = Word::generator(y);
    let build = |label: &str, fwd: &[(usize, Word)], back: &[(usize, Word)]| {
        GroupAuto::from_assignments(label, rank, fwd, back).expect("Nielsen moves are invertible")
    };
    vec![
        build("nielsen_inv", &[(x, gx.inverse())], &[(x, gx.inverse())]),
        build("nielsen_swap", &[(x, gy.clone()), (y, gx.clone())], &[(x, gy.clone()), (y, gx.clone())]),
        build(
            "nielsen_tv",
            &[(x, gx.multiply(&gy))],
            &[(x, gx.multiply(&gy.inverse()))],
        ),
    ]
}

/// Result of a bounded orbit enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub keys: BTreeSet<ClassKey>,
    /// The whole orbit fits in the budget and was closed under every
    /// generator and inverse.
    pub exhausted: bool,
    /// Number of breadth-first generations that contributed keys.
    pub depth_reached: usize,
    pub budget: usize,
}

/// Breadth-first closure of `{x}` under `gens` and their inverses, one key
/// per class, stopping once `budget` distinct keys are known and another
/// would be needed.
///
/// New keys of a generation are admitted in `ClassKey` order, so the result
/// does not depend on the order of `gens`; and a larger budget only extends
/// the key set.
pub fn orbit(x: &BasicElem, gens: &[GroupAuto], budget: usize) -> Result<OrbitReport, AutoError> {
    if budget == 0 {
        return Err(AutoError::ZeroBudget);
    }
    let all: Vec<GroupAuto> = gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    let start = canonical_key(x);
    let mut keys = BTreeSet::from([start.clone()]);
    let mut frontier = vec![start];
    let mut depth = 0;
    loop {
        let mut fresh = BTreeSet::new();
        for k in &frontier {
            let rep = k.representative();
            for g in &all {
                let img = canonical_key(&g.apply_basic(&rep));
                if !keys.contains(&img) {
                    fresh.insert(img);
                }
            }
        }
        if fresh.is_empty() {
            return Ok(OrbitReport { keys, exhausted: true, depth_reached: depth, budget });
        }
        depth += 1;
        frontier = Vec::with_capacity(fresh.len());
        for k in fresh {
            if keys.len() == budget {
                return Ok(OrbitReport { keys, exhausted: false, depth_reached: depth, budget });
            }
            keys.insert(k.clone());
            frontier.push(k);
        }
    }
}
