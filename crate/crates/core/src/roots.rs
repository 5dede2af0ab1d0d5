//! Conjugacy with witnesses, primitive roots, centralizers, and the two
//! cyclic-power equations behind the coset and double-coset sorts.
//!
//! Every search here is exact. Where an exponent has to be bounded, the bound
//! comes from the Cayley tree: for `A`, `D` that do not commute, with
//! translation lengths `ℓ_A`, `ℓ_D` and conjugators `u_A`, `u_D` (so the axis of
//! `A` passes within `|u_A|` of the base point),
//!
//! ```text
//! |A^i D^j| >= |i| ℓ_A + |j| ℓ_D - 2(|u_A| + |u_D|) - 2(ℓ_A + ℓ_D)
//! ```
//!
//! because two axes in a free group overlap in less than `ℓ_A + ℓ_D` unless the
//! elements commute.

use std::num::NonZeroU32;

use num_integer::Integer;
use thiserror::Error;

use crate::words::{least_rotation, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("the identity has no primitive root")]
    Identity,
}

/// `input = root^exponent`, `root` not a proper power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDecomposition {
    pub root: Word,
    pub exponent: u64,
}

/// `u = b^(m·exponent)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CosetWitness {
    pub exponent: i64,
}

/// `a^(m·i) · b1 · c^(n·j) = b2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoubleCosetWitness {
    pub i: i64,
    pub j: i64,
}

/// A conjugator `g` with `g⁻¹ u g = v`, if `u` and `v` are conjugate.
pub fn is_conjugate(u: &Word, v: &Word) -> Option<Word> {
    let cu = u.cyclic_reduce();
    let cv = v.cyclic_reduce();
    if cu.core.len() != cv.core.len() {
        return None;
    }
    let ku = least_rotation(cu.core.letters());
    let kv = least_rotation(cv.core.letters());
    if cu.core.rotate(ku) != cv.core.rotate(kv) {
        return None;
    }
    // cv.core = x⁻¹ · cu.core · x with x the first `s` letters of cu.core.
    let len = cu.core.len().max(1);
    let s = (ku + len - kv % len) % len;
    let x = Word::from_letters(&cu.core.letters()[..s.min(cu.core.len())]);
    let g = cu.conjugator.multiply(&x).multiply(&cv.conjugator.inverse());
    debug_assert_eq!(u.conjugate_by(&g), *v);
    Some(g)
}

pub fn primitive_root(w: &Word) -> Result<RootDecomposition, RootError> {
    if w.is_empty() {
        return Err(RootError::Identity);
    }
    let cw = w.cyclic_reduce();
    let t = cw.core.letters();
    let len = t.len();
    let period = (1..=len)
        .filter(|d| len.is_multiple_of(*d))
        .find(|&d| (d..len).all(|i| t[i] == t[i - d]))
        .expect("the full length is always a period");
    let root = cw
        .conjugator
        .multiply(&Word::from_letters(&t[..period]))
        .multiply(&cw.conjugator.inverse());
    Ok(RootDecomposition { root, exponent: (len / period) as u64 })
}

/// The lexicographically smaller of the primitive root and its inverse: a
/// canonical generator of the (cyclic) centralizer.
pub fn centralizer_generator(w: &Word) -> Result<Word, RootError> {
    let r = primitive_root(w)?.root;
    let ri = r.inverse();
    Ok(if ri < r { ri } else { r })
}

/// `Some(k)` with `w = r^k` when `r` is primitive and `w` is a power of it.
pub fn power_of_primitive(w: &Word, r: &Word) -> Option<i64> {
    if w.is_empty() {
        return Some(0);
    }
    let d = primitive_root(w).ok()?;
    if d.root == *r {
        Some(d.exponent as i64)
    } else if d.root == r.inverse() {
        Some(-(d.exponent as i64))
    } else {
        None
    }
}

/// Solves `u = b^(m·i)`; the solution is unique when it exists.
pub fn power_coset_member(u: &Word, b: &Word, m: NonZeroU32) -> Result<Option<CosetWitness>, RootError> {
    let rb = primitive_root(b)?;
    let step = rb.exponent as i64 * m.get() as i64;
    Ok(power_of_primitive(u, &rb.root)
        .filter(|s| s % step == 0)
        .map(|s| CosetWitness { exponent: s / step }))
}

/// Translation length and conjugator length of a nontrivial element.
fn axis(w: &Word) -> (usize, usize) {
    let cw = w.cyclic_reduce();
    (cw.core.len(), cw.conjugator.len())
}

/// The constant `K` of `|A^i D^j| >= |i| ℓ_A + |j| ℓ_D - K` for nontrivial,
/// non-commuting `A`, `D`.
pub fn separation_constant(a: &Word, d: &Word) -> usize {
    let (la, ua) = axis(a);
    let (ld, ud) = axis(d);
    2 * (ua + ud) + 2 * (la + ld)
}

/// Solves `a^(m·i) · b1 · c^(n·j) = b2`.
///
/// When `a^m` commutes with `b1 c^n b1⁻¹` the solutions form a lattice and the
/// one with smallest `|i|` (then smallest `|j|`) is returned; otherwise the
/// solution is unique.
pub fn double_coset_solve(
    b1: &Word,
    b2: &Word,
    a: &Word,
    c: &Word,
    m: NonZeroU32,
    n: NonZeroU32,
) -> Result<Option<DoubleCosetWitness>, RootError> {
    let big_a = a.pow(m.get() as i64);
    let big_c = c.pow(n.get() as i64);
    if big_a.is_empty() || big_c.is_empty() {
        return Err(RootError::Identity);
    }
    let d = b1.multiply(&big_c).multiply(&b1.inverse());
    let t = b2.multiply(&b1.inverse());
    let rho = primitive_root(&big_a)?.root;
    let out = match power_of_primitive(&d, &rho) {
        Some(delta) => {
            let alpha = power_of_primitive(&big_a, &rho).expect("rho is the root of A");
            power_of_primitive(&t, &rho).and_then(|tau| solve_linear(alpha, delta, tau))
        }
        None => {
            let (la, _) = axis(&big_a);
            let bound = ((t.len() + separation_constant(&big_a, &d)) / la) as i64;
            let a_inv = big_a.inverse();
            signed_range(bound).find_map(|i| {
                // A^-i t = D^j  <=>  b1⁻¹ A^-i t b1 = c^(n j)
                let s = a_inv.pow(i).multiply(&t);
                let s = b1.inverse().multiply(&s).multiply(b1);
                power_coset_member(&s, c, n)
                    .expect("c is nontrivial")
                    .map(|w| DoubleCosetWitness { i, j: w.exponent })
            })
        }
    };
    if let Some(w) = out {
        debug_assert_eq!(
            a.pow(m.get() as i64 * w.i).multiply(b1).multiply(&c.pow(n.get() as i64 * w.j)),
            *b2
        );
    }
    Ok(out)
}

/// 0, -1, 1, -2, 2, ... up to `bound` in absolute value.
pub(crate) fn signed_range(bound: i64) -> impl Iterator<Item = i64> {
    (0..=bound).flat_map(|k| if k == 0 { vec![0] } else { vec![-k, k] })
}

/// `alpha·i + delta·j = tau`, choosing the solution with least `|i|`, then
/// least `|j|`.
fn solve_linear(alpha: i64, delta: i64, tau: i64) -> Option<DoubleCosetWitness> {
    let eg = alpha.extended_gcd(&delta);
    let g = eg.gcd;
    if tau % g != 0 {
        return None;
    }
    let (i0, j0) = (eg.x * (tau / g), eg.y * (tau / g));
    let (si, sj) = (delta / g, alpha / g);
    // i = i0 + si·s, j = j0 - sj·s
    let s0 = Integer::div_floor(&-i0, &si);
    (s0 - 1..=s0 + 2)
        .map(|s| DoubleCosetWitness { i: i0 + si * s, j: j0 - sj * s })
        .min_by_key(|w| (w.i.abs(), w.j.abs(), w.i, w.j))
}

fn shortlex_min<I: IntoIterator<Item = Word>>(it: I) -> Word {
    it.into_iter()
        .min_by(|x, y| x.shortlex_cmp(y))
        .expect("candidate set contains the starting word")
}

/// Shortlex-least element of `a · ⟨gen⟩`.
pub fn min_left_coset(a: &Word, gen: &Word) -> Word {
    let (l, _) = axis(gen);
    // |a g^i| >= |i| ℓ - |a|, and the i = 0 candidate already has length |a|.
    let bound = (2 * a.len() / l + 1) as i64;
    shortlex_min(signed_range(bound).map(|i| a.multiply(&gen.pow(i))))
}

/// Shortlex-least element of `⟨gen⟩ · a`.
pub fn min_right_coset(gen: &Word, a: &Word) -> Word {
    let (l, _) = axis(gen);
    let bound = (2 * a.len() / l + 1) as i64;
    shortlex_min(signed_range(bound).map(|i| gen.pow(i).multiply(a)))
}

/// Memoized powers `base^k`, built by repeated multiplication.
struct PowerCache {
    pos: Vec<Word>,
    neg: Vec<Word>,
}

impl PowerCache {
    fn new(base: &Word) -> Self {
        PowerCache { pos: vec![Word::identity(), base.clone()], neg: vec![Word::identity(), base.inverse()] }
    }

    fn get(&mut self, k: i64) -> &Word {
        let list = if k < 0 { &mut self.neg } else { &mut self.pos };
        let n = k.unsigned_abs() as usize;
        while list.len() <= n {
            let next = list[list.len() - 1].multiply(&list[1]);
            list.push(next);
        }
        &list[n]
    }
}

/// Shortlex-least element of `⟨a^m⟩ · b · ⟨c^n⟩`.
pub fn min_double_coset(a: &Word, b: &Word, c: &Word, m: NonZeroU32, n: NonZeroU32) -> Word {
    let big_a = a.pow(m.get() as i64);
    let big_c = c.pow(n.get() as i64);
    let d = b.multiply(&big_c).multiply(&b.inverse());
    let rho = primitive_root(&big_a).expect("a is nontrivial").root;
    match power_of_primitive(&d, &rho) {
        Some(delta) => {
            // ⟨A⟩ b ⟨C⟩ = ⟨A⟩⟨D⟩ b = ⟨rho^g⟩ b
            let alpha = power_of_primitive(&big_a, &rho).expect("rho is the root of A");
            let g = alpha.gcd(&delta);
            min_right_coset(&rho.pow(g), b)
        }
        None => {
            let k = separation_constant(&big_a, &d);
            let (la, _) = axis(&big_a);
            let (lc, _) = axis(&big_c);
            // |A^i b C^j| >= |A^i D^j| - |b|, and the (0, 0) candidate has length |b|.
            let bi = ((2 * b.len() + k) / la) as i64;
            let bj = ((2 * b.len() + k) / lc) as i64;
            let mut a_pows = PowerCache::new(&big_a);
            let mut c_pows = PowerCache::new(&big_c);
            let mut best = b.clone();
            for i in signed_range(bi) {
                // |A^i b C^j| >= |i| ℓ_A - K - |b| over the whole row.
                if (i.unsigned_abs() as usize * la) > best.len() + k + b.len() {
                    continue;
                }
                let left = a_pows.get(i).multiply(b);
                // |left · C^j| >= |j| ℓ_C - |left|, so longer rows cannot win.
                let reach = (((best.len() + left.len()) / lc) as i64).min(bj);
                for j in -reach..=reach {
                    let cj = c_pows.get(j);
                    if left.product_len(cj) > best.len() {
                        continue;
                    }
                    let x = left.multiply(cj);
                    if x.shortlex_cmp(&best).is_lt() {
                        best = x;
                    }
                }
            }
            best
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::enumerate_words;

    fn nz(k: u32) -> NonZeroU32 {
        NonZeroU32::new(k).unwrap()
    }

    fn w(p: &[(usize, i64)]) -> Word {
        Word::from_powers(p)
    }

    #[test]
    fn conjugate_examples() {
        let aba = w(&[(0, 1), (1, 1), (0, -1)]);
        let b = w(&[(1, 1)]);
        let g = is_conjugate(&aba, &b).unwrap();
        assert_eq!(g, w(&[(0, 1)]));
        assert_eq!(aba.conjugate_by(&g), b);
        assert_eq!(is_conjugate(&w(&[(0, 1)]), &w(&[(1, 1)])), None);
        assert_eq!(is_conjugate(&Word::identity(), &Word::identity()), Some(Word::identity()));
    }

    #[test]
    fn root_examples() {
        let r = w(&[(0, 1), (1, 1)]);
        let d = primitive_root(&r.pow(3)).unwrap();
        assert_eq!(d, RootDecomposition { root: r, exponent: 3 });
        let d = primitive_root(&w(&[(0, 1)])).unwrap();
        assert_eq!(d.exponent, 1);
        assert_eq!(primitive_root(&Word::identity()), Err(RootError::Identity));
        // conjugated power
        let x = w(&[(1, 1)]);
        let v = x.multiply(&w(&[(0, 2)])).multiply(&x.inverse());
        let d = primitive_root(&v).unwrap();
        assert_eq!(d.exponent, 2);
        assert_eq!(d.root, w(&[(1, 1), (0, 1), (1, -1)]));
    }

    #[test]
    fn centralizer_examples() {
        assert_eq!(centralizer_generator(&w(&[(0, 2)])).unwrap(), w(&[(0, 1)]));
        let v = w(&[(0, 1), (1, -1), (0, 1)]);
        assert_eq!(
            centralizer_generator(&v).unwrap(),
            centralizer_generator(&v.inverse()).unwrap()
        );
        assert_eq!(centralizer_generator(&Word::identity()), Err(RootError::Identity));
    }

    #[test]
    fn power_coset_examples() {
        let b = w(&[(1, 1)]);
        assert_eq!(power_coset_member(&b.pow(6), &b, nz(2)).unwrap(), Some(CosetWitness { exponent: 3 }));
        assert_eq!(power_coset_member(&b.pow(5), &b, nz(2)).unwrap(), None);
        assert_eq!(power_coset_member(&Word::identity(), &b, nz(3)).unwrap(), Some(CosetWitness { exponent: 0 }));
        assert_eq!(power_coset_member(&b, &Word::identity(), nz(1)), Err(RootError::Identity));
        // b given as a proper power: ⟨(b²)^2⟩ = ⟨b⁴⟩
        assert_eq!(power_coset_member(&b.pow(-8), &b.pow(2), nz(2)).unwrap(), Some(CosetWitness { exponent: -2 }));
    }

    #[test]
    fn double_coset_examples() {
        let e1 = w(&[(0, 1)]);
        let e2 = w(&[(1, 1)]);
        let b1 = w(&[(0, 1), (1, 1)]);
        let b2 = w(&[(0, 3), (1, 3)]);
        assert_eq!(
            double_coset_solve(&b1, &b2, &e1, &e2, nz(2), nz(2)).unwrap(),
            Some(DoubleCosetWitness { i: 1, j: 1 })
        );
        assert_eq!(
            double_coset_solve(&b1, &b1, &e1, &e2, nz(1), nz(3)).unwrap(),
            Some(DoubleCosetWitness { i: 0, j: 0 })
        );
        assert_eq!(
            double_coset_solve(&b1, &e1, &e1, &e2, nz(1), nz(1)).unwrap(),
            Some(DoubleCosetWitness { i: 0, j: -1 })
        );
        let e2e1 = w(&[(1, 1), (0, 1)]);
        assert_eq!(double_coset_solve(&b1, &e2e1, &e1, &e2, nz(1), nz(1)).unwrap(), None);
    }

    #[test]
    fn double_coset_commuting_case() {
        // a = c = e1, b1 = 1: e1^(2i) e1^(3j) = e1^7 has solutions
        let e1 = w(&[(0, 1)]);
        let sol = double_coset_solve(&Word::identity(), &e1.pow(7), &e1, &e1, nz(2), nz(3))
            .unwrap()
            .unwrap();
        assert_eq!(2 * sol.i + 3 * sol.j, 7);
        assert_eq!(sol.i.abs(), 1);
        // parity obstruction
        assert_eq!(
            double_coset_solve(&Word::identity(), &e1.pow(3), &e1, &e1, nz(2), nz(4)).unwrap(),
            None
        );
    }

    #[test]
    fn coset_minima_are_shortest() {
        let b = w(&[(1, 1), (0, 1)]);
        let a = w(&[(0, -1), (1, 1), (0, 1), (1, 1), (0, 1)]);
        let best = min_left_coset(&a, &b);
        for i in -8..=8 {
            assert!(best.shortlex_cmp(&a.multiply(&b.pow(i))).is_le());
        }
        assert!(power_coset_member(&a.inverse().multiply(&best), &b, nz(1)).unwrap().is_some());
    }

    #[test]
    fn double_coset_min_brute_force() {
        let words = enumerate_words(&[0, 1], 2);
        let ones = NonZeroU32::MIN;
        for a in words.iter().filter(|w| !w.is_empty()) {
            for c in words.iter().filter(|w| !w.is_empty()) {
                for b in &words {
                    let fast = min_double_coset(a, b, c, ones, nz(2));
                    let c2 = c.pow(2);
                    let slow = (-12..=12)
                        .flat_map(|i| (-12..=12).map(move |j| (i, j)))
                        .map(|(i, j)| a.pow(i).multiply(b).multiply(&c2.pow(j)))
                        .min_by(|x, y| x.shortlex_cmp(y))
                        .unwrap();
                    assert_eq!(fast, slow, "a={a:?} b={b:?} c={c:?}");
                }
            }
        }
    }
}
