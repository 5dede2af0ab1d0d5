//! Free groups presented as free products of free factors: reduced words,
//! conjugacy and roots, the four basic sorts of imaginaries with canonical
//! class keys, automorphism orbits, and executable checks of the
//! combinatorial lemmas about those orbits.

pub mod automorphisms;
pub mod cli;
pub mod imaginaries;
pub mod lemma_lab;
pub mod roots;
pub mod words;

pub use automorphisms::{orbit, GroupAuto, OrbitReport};
pub use imaginaries::{canonical_key, eq_basic, BasicElem, ClassKey, Sort};
pub use roots::{centralizer_generator, double_coset_solve, is_conjugate, primitive_root};
pub use words::{Alphabet, Decomposition, FactorSet, Letter, Word};
