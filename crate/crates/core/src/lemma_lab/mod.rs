//! Executable checks of the combinatorial lemmas behind the orbit arguments.
//!
//! Every check is a falsification harness: the statements are theorems, so a
//! reported counterexample means a bug in this crate.

mod conj2;
mod cyclic;
mod images;
mod malorb;
mod shift;
mod suite;

pub use conj2::{conj2_check, Conj2Blocks, Conj2Report, Conj2Verdict};
pub use cyclic::cyclic_lemma_witness;
pub use images::basic_image_count;
pub use malorb::{f2_commutator_orbit, infinite_orbit_check, malorb_classify, MalOrbClassification, MalOrbVerdict};
pub use shift::{shift_permutation, ShiftPermutation};
pub use suite::{run_lemma, DeskScale, LemmaName, LemmaOutcome};

use thiserror::Error;

use crate::automorphisms::AutoError;
use crate::words::WordError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("cyclic group order must be positive and d > 1 (got order {order}, d = {d})")]
    BadCyclicInput { order: u64, d: u64 },
    #[error("residue {0} is not reduced modulo the group order")]
    ResidueOutOfRange(u64),
    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,
    #[error("word does not alternate between the two blocks")]
    NotAlternating,
    #[error("automorphism does not fix the conjugacy class")]
    ClassNotFixed,
    #[error("automorphism `{0}` does not fix the required block")]
    NotFixingBlock(String),
    #[error("automorphism `{0}` does not preserve the required block")]
    NotPreservingBlock(String),
    #[error("automorphism `{label}` does not have order {p}")]
    WrongOrder { label: String, p: u32 },
    #[error("automorphism `{label}` fixes generator {generator} of its moved block")]
    FixedGenerator { label: String, generator: usize },
    #[error("{0} is not a prime greater than 2")]
    NotOddPrime(u32),
    #[error("conjugacy classes are out of scope here")]
    ConjugacyClass,
    #[error("element has a representative inside the base group")]
    InsideBase,
    #[error("word has letters outside the base group and the adjoined generator")]
    ForeignLetters,
    #[error("the twisting element must be a nontrivial element of the base group")]
    BadTwist,
    #[error("the two twisting elements have the same centralizer")]
    CentralizersCoincide,
    #[error("lemma violated: {0}")]
    LemmaViolation(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Auto(#[from] AutoError),
}
