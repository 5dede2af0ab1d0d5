use super::LemmaError;
use crate::automorphisms::GroupAuto;
use crate::words::{Decomposition, FactorSet, Word};

/// The three blocks of `G = U_f * W * U_g`. `f` fixes `W` and `U_f` and
/// moves `U_g`; `g` is the mirror image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conj2Blocks {
    pub u_f: FactorSet,
    pub w: FactorSet,
    pub u_g: FactorSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conj2Verdict {
    /// At least one of the two automorphisms moves the class.
    HypothesisNotMet,
    InWUf,
    InWUg,
    /// Both clauses hold, i.e. the core lies in `W`.
    InW,
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conj2Report {
    /// Cyclically reduced core of the input; the subproduct tests use it.
    pub core: Word,
    pub fixed_by_f: bool,
    pub fixed_by_g: bool,
    pub in_w_uf: bool,
    pub in_w_ug: bool,
    pub verdict: Conj2Verdict,
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k))
}

fn check_shape(
    h: &GroupAuto,
    d: &Decomposition,
    fixed: FactorSet,
    moved: FactorSet,
    p: u32,
) -> Result<(), LemmaError> {
    let label = || h.label().to_string();
    if h.order(p) != Some(p) {
        return Err(LemmaError::WrongOrder { label: label(), p });
    }
    if !h.fixes_block(d, fixed) {
        return Err(LemmaError::NotFixingBlock(label()));
    }
    if !h.preserves_block(d, moved) {
        return Err(LemmaError::NotPreservingBlock(label()));
    }
    if let Some(&g) = d.generators_in(moved).iter().find(|&&g| h.image(g) == &Word::generator(g)) {
        return Err(LemmaError::FixedGenerator { label: label(), generator: g });
    }
    Ok(())
}

/// Tests whether `a` satisfies the two-automorphism statement: if both `f`
/// and `g` fix its conjugacy class, its core lies in `W*U_f` or `W*U_g`.
///
/// The statement is about conjugacy classes, so the subproduct tests run on
/// the cyclically reduced core. A conjugate like `v·u·w·u⁻¹·v⁻¹` lies in
/// neither subproduct even though its class does.
pub fn conj2_check(
    a: &Word,
    f: &GroupAuto,
    g: &GroupAuto,
    d: &Decomposition,
    blocks: Conj2Blocks,
    p: u32,
) -> Result<Conj2Report, LemmaError> {
    if !is_prime(p) {
        return Err(LemmaError::WrongOrder { label: f.label().to_string(), p });
    }
    d.check_partition(&[blocks.u_f, blocks.w, blocks.u_g])?;
    check_shape(f, d, blocks.w.union(blocks.u_f), blocks.u_g, p)?;
    check_shape(g, d, blocks.w.union(blocks.u_g), blocks.u_f, p)?;
    Ok(conj2_verdict(a, f, g, d, blocks))
}

/// [`conj2_check`] without the shape checks, for scans that validated the
/// automorphisms once.
pub(crate) fn conj2_verdict(a: &Word, f: &GroupAuto, g: &GroupAuto, d: &Decomposition, blocks: Conj2Blocks) -> Conj2Report {
    let core = a.cyclic_reduce().core;
    let class = core.canonical_cyclic();
    let fixed_by_f = f.apply(&core).canonical_cyclic() == class;
    let fixed_by_g = g.apply(&core).canonical_cyclic() == class;
    let in_w_uf = core.lies_in_subproduct(d, blocks.w.union(blocks.u_f));
    let in_w_ug = core.lies_in_subproduct(d, blocks.w.union(blocks.u_g));
    let verdict = match (fixed_by_f && fixed_by_g, in_w_uf, in_w_ug) {
        (false, _, _) => Conj2Verdict::HypothesisNotMet,
        (true, true, true) => Conj2Verdict::InW,
        (true, true, false) => Conj2Verdict::InWUf,
        (true, false, true) => Conj2Verdict::InWUg,
        (true, false, false) => Conj2Verdict::Counterexample,
    };
    Conj2Report { core, fixed_by_f, fixed_by_g, in_w_uf, in_w_ug, verdict }
}
