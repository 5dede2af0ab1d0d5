//! The four basic sorts as decidable equivalence relations.
//!
//! * `S1(w)`: conjugacy classes.
//! * `S2_m(a, b)`: `(a1, b1) ~ (a2, b2)` iff `b1 = b2 = 1`, or both are
//!   nontrivial with a common centralizer `⟨r⟩` and `a1⁻¹ a2 ∈ ⟨r^m⟩`.
//! * `S3_m(a, b)`: as `S2_m` with `a1 a2⁻¹ ∈ ⟨r^m⟩`.
//! * `S4_{m,n}(a, b, c)`: `a` and `c` determine centralizers `⟨α⟩`, `⟨γ⟩` and
//!   `b` ranges over the double coset `⟨α^m⟩ b ⟨γ^n⟩`. Triples with `a = 1` or
//!   `c = 1` all fall in one class.
//!
//! `r`, `α`, `γ` are taken to be centralizer generators (primitive roots up to
//! inversion); the cyclic subgroups they generate do not depend on the sign.

use std::fmt;
use std::num::NonZeroU32;

use thiserror::Error;

use crate::roots::{
    centralizer_generator, double_coset_solve, min_double_coset, min_left_coset, min_right_coset,
    power_coset_member,
};
use crate::words::{Decomposition, FactorSet, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImaginaryError {
    #[error("cannot compare elements of sorts {0} and {1}")]
    SortMismatch(Sort, Sort),
}

/// Sort of a basic element, including its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    S1,
    S2(NonZeroU32),
    S3(NonZeroU32),
    S4(NonZeroU32, NonZeroU32),
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::S1 => write!(f, "S1"),
            Sort::S2(m) => write!(f, "S2_{m}"),
            Sort::S3(m) => write!(f, "S3_{m}"),
            Sort::S4(m, n) => write!(f, "S4_{m}_{n}"),
        }
    }
}

/// A representative tuple of a basic sort.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BasicElem {
    S1(Word),
    S2 { a: Word, b: Word, m: NonZeroU32 },
    S3 { a: Word, b: Word, m: NonZeroU32 },
    S4 { a: Word, b: Word, c: Word, m: NonZeroU32, n: NonZeroU32 },
}

impl BasicElem {
    pub fn sort(&self) -> Sort {
        match self {
            BasicElem::S1(_) => Sort::S1,
            BasicElem::S2 { m, .. } => Sort::S2(*m),
            BasicElem::S3 { m, .. } => Sort::S3(*m),
            BasicElem::S4 { m, n, .. } => Sort::S4(*m, *n),
        }
    }

    pub fn components(&self) -> Vec<&Word> {
        match self {
            BasicElem::S1(w) => vec![w],
            BasicElem::S2 { a, b, .. } | BasicElem::S3 { a, b, .. } => vec![a, b],
            BasicElem::S4 { a, b, c, .. } => vec![a, b, c],
        }
    }

    /// Applies `f` to every component, keeping the sort.
    pub fn map<F: FnMut(&Word) -> Word>(&self, mut f: F) -> BasicElem {
        match self {
            BasicElem::S1(w) => BasicElem::S1(f(w)),
            BasicElem::S2 { a, b, m } => BasicElem::S2 { a: f(a), b: f(b), m: *m },
            BasicElem::S3 { a, b, m } => BasicElem::S3 { a: f(a), b: f(b), m: *m },
            BasicElem::S4 { a, b, c, m, n } => BasicElem::S4 { a: f(a), b: f(b), c: f(c), m: *m, n: *n },
        }
    }

    /// Whether this tuple lies in a degenerate class (`b = 1` for the coset
    /// sorts, `a = 1` or `c = 1` for the double-coset sort).
    pub fn is_degenerate(&self) -> bool {
        match self {
            BasicElem::S1(_) => false,
            BasicElem::S2 { b, .. } | BasicElem::S3 { b, .. } => b.is_empty(),
            BasicElem::S4 { a, c, .. } => a.is_empty() || c.is_empty(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CosetClass {
    pub root: Word,
    pub rep: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DoubleCosetClass {
    pub left_root: Word,
    pub right_root: Word,
    pub rep: Word,
}

/// Canonical name of an equivalence class. `None` marks the degenerate class
/// of a sort.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassKey {
    Conjugacy(Word),
    LeftCoset { m: NonZeroU32, class: Option<CosetClass> },
    RightCoset { m: NonZeroU32, class: Option<CosetClass> },
    DoubleCoset { m: NonZeroU32, n: NonZeroU32, class: Option<DoubleCosetClass> },
}

impl ClassKey {
    /// A member of the class, built from the key alone.
    pub fn representative(&self) -> BasicElem {
        let one = Word::identity;
        match self {
            ClassKey::Conjugacy(w) => BasicElem::S1(w.clone()),
            ClassKey::LeftCoset { m, class } => match class {
                Some(c) => BasicElem::S2 { a: c.rep.clone(), b: c.root.clone(), m: *m },
                None => BasicElem::S2 { a: one(), b: one(), m: *m },
            },
            ClassKey::RightCoset { m, class } => match class {
                Some(c) => BasicElem::S3 { a: c.rep.clone(), b: c.root.clone(), m: *m },
                None => BasicElem::S3 { a: one(), b: one(), m: *m },
            },
            ClassKey::DoubleCoset { m, n, class } => match class {
                Some(c) => BasicElem::S4 {
                    a: c.left_root.clone(),
                    b: c.rep.clone(),
                    c: c.right_root.clone(),
                    m: *m,
                    n: *n,
                },
                None => BasicElem::S4 { a: one(), b: one(), c: one(), m: *m, n: *n },
            },
        }
    }
}

fn cg(w: &Word) -> Word {
    centralizer_generator(w).expect("caller checked w is nontrivial")
}

/// Decides the basic equivalence relation directly from its defining clauses.
pub fn eq_basic(x: &BasicElem, y: &BasicElem) -> Result<bool, ImaginaryError> {
    if x.sort() != y.sort() {
        return Err(ImaginaryError::SortMismatch(x.sort(), y.sort()));
    }
    Ok(match (x, y) {
        (BasicElem::S1(u), BasicElem::S1(v)) => u.canonical_cyclic() == v.canonical_cyclic(),
        (BasicElem::S2 { a: a1, b: b1, m }, BasicElem::S2 { a: a2, b: b2, .. }) => {
            coset_clause(b1, b2, *m, || a1.inverse().multiply(a2))
        }
        (BasicElem::S3 { a: a1, b: b1, m }, BasicElem::S3 { a: a2, b: b2, .. }) => {
            coset_clause(b1, b2, *m, || a1.multiply(&a2.inverse()))
        }
        (
            BasicElem::S4 { a: a1, b: b1, c: c1, m, n },
            BasicElem::S4 { a: a2, b: b2, c: c2, .. },
        ) => match (x.is_degenerate(), y.is_degenerate()) {
            (true, true) => true,
            (false, false) => {
                let alpha = cg(a1);
                let gamma = cg(c1);
                alpha == cg(a2)
                    && gamma == cg(c2)
                    && double_coset_solve(b1, b2, &alpha, &gamma, *m, *n)
                        .expect("roots are nontrivial")
                        .is_some()
            }
            _ => false,
        },
        _ => unreachable!("sorts already compared"),
    })
}

fn coset_clause<F: FnOnce() -> Word>(b1: &Word, b2: &Word, m: NonZeroU32, quotient: F) -> bool {
    match (b1.is_empty(), b2.is_empty()) {
        (true, true) => true,
        (false, false) => {
            let r = cg(b1);
            r == cg(b2)
                && power_coset_member(&quotient(), &r, m)
                    .expect("r is nontrivial")
                    .is_some()
        }
        _ => false,
    }
}

pub fn canonical_key(x: &BasicElem) -> ClassKey {
    match x {
        BasicElem::S1(w) => ClassKey::Conjugacy(w.canonical_cyclic()),
        BasicElem::S2 { a, b, m } => ClassKey::LeftCoset {
            m: *m,
            class: (!b.is_empty()).then(|| {
                let root = cg(b);
                let rep = min_left_coset(a, &root.pow(m.get() as i64));
                CosetClass { root, rep }
            }),
        },
        BasicElem::S3 { a, b, m } => ClassKey::RightCoset {
            m: *m,
            class: (!b.is_empty()).then(|| {
                let root = cg(b);
                let rep = min_right_coset(&root.pow(m.get() as i64), a);
                CosetClass { root, rep }
            }),
        },
        BasicElem::S4 { a, b, c, m, n } => ClassKey::DoubleCoset {
            m: *m,
            n: *n,
            class: (!x.is_degenerate()).then(|| {
                let left_root = cg(a);
                let right_root = cg(c);
                let rep = min_double_coset(&left_root, b, &right_root, *m, *n);
                DoubleCosetClass { left_root, right_root, rep }
            }),
        },
    }
}

/// Whether the class of `x` has a representative with every component in
/// the subproduct generated by `blocks`.
///
/// Free factors are closed under roots and under the multiplications that
/// move a representative within its class, so the test reduces to the cyclic
/// core (for `S1`) or to the centralizer roots and the coset word.
pub fn in_subproduct_we(x: &BasicElem, d: &Decomposition, blocks: FactorSet) -> bool {
    let inside = |w: &Word| w.lies_in_subproduct(d, blocks);
    if x.is_degenerate() {
        return true;
    }
    match x {
        BasicElem::S1(w) => inside(&w.cyclic_reduce().core),
        BasicElem::S2 { a, b, .. } | BasicElem::S3 { a, b, .. } => inside(&cg(b)) && inside(a),
        BasicElem::S4 { a, b, c, .. } => inside(&cg(a)) && inside(&cg(c)) && inside(b),
    }
}
