//! Reduced words over a finite, factor-partitioned alphabet.
//!
//! A [`Word`] is always freely reduced; the empty word is the identity. The
//! alphabet carries a [`Decomposition`] that assigns every generator to one
//! free factor, so that the same letters describe both the free group on the
//! whole basis and its free-product structure.

use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("alphabet needs at least one generator")]
    EmptyAlphabet,
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("duplicate factor `{0}`")]
    DuplicateFactor(String),
    #[error("factor `{0}` has no generators")]
    EmptyFactor(String),
    #[error("unknown factor `{0}`")]
    UnknownFactor(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("too many factors ({0}); at most 64 are supported")]
    TooManyFactors(usize),
    #[error("generator index {index} is out of range for an alphabet of rank {rank}")]
    AlphabetMismatch { index: usize, rank: usize },
    #[error("blocks do not partition the factor list")]
    NotAPartition,
}

/// A generator or its inverse.
///
/// Encoded as `2 * generator + inverse`, so the derived order is generator
/// index major with the positive letter before the negative one.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u32) << 1 | inverse as u32)
    }

    pub fn pos(generator: usize) -> Self {
        Self::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Self::new(generator, true)
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "g{}^-1", self.generator())
        } else {
            write!(f, "g{}", self.generator())
        }
    }
}

/// A freely reduced word. Ordered lexicographically by letters.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l:?}")?;
        }
        Ok(())
    }
}

/// Free reduction of an arbitrary letter sequence.
pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in raw {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn from_letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![Letter::pos(g)])
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        reduce(letters.iter().copied())
    }

    /// Builds a word from `(generator, exponent)` pairs, reducing the result.
    pub fn from_powers(powers: &[(usize, i64)]) -> Self {
        reduce(powers.iter().flat_map(|&(g, k)| {
            let l = Letter::new(g, k < 0);
            std::iter::repeat_n(l, k.unsigned_abs() as usize)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        // Cancellation only happens at the seam.
        let mut k = 0;
        let (a, b) = (&self.0, &other.0);
        while k < a.len() && k < b.len() && a[a.len() - 1 - k] == b[k].inverse() {
            k += 1;
        }
        let mut out = Vec::with_capacity(a.len() + b.len() - 2 * k);
        out.extend_from_slice(&a[..a.len() - k]);
        out.extend_from_slice(&b[k..]);
        Word(out)
    }

    /// Length of `self · other` without building it.
    pub fn product_len(&self, other: &Word) -> usize {
        let (a, b) = (&self.0, &other.0);
        let k = a.iter().rev().zip(b.iter()).take_while(|(x, y)| **x == y.inverse()).count();
        a.len() + b.len() - 2 * k
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let n = k.unsigned_abs() as usize;
        if n == 0 || base.is_empty() {
            return Word::identity();
        }
        let cw = base.cyclic_reduce();
        // u c^n u^-1 is reduced as written when c is cyclically reduced.
        let mut out = Vec::with_capacity(2 * cw.conjugator.len() + n * cw.core.len());
        out.extend_from_slice(&cw.conjugator.0);
        for _ in 0..n {
            out.extend_from_slice(&cw.core.0);
        }
        out.extend(cw.conjugator.0.iter().rev().map(|l| l.inverse()));
        Word(out)
    }

    /// `g^-1 · self · g`.
    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.inverse().multiply(self).multiply(g)
    }

    pub fn commutes_with(&self, other: &Word) -> bool {
        self.multiply(other) == other.multiply(self)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(a), Some(b)) => self.len() == 1 || a != b.inverse(),
            _ => true,
        }
    }

    pub fn cyclic_reduce(&self) -> CyclicWord {
        let l = &self.0;
        let (mut i, mut j) = (0, l.len());
        while j - i >= 2 && l[i] == l[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        CyclicWord {
            core: Word(l[i..j].to_vec()),
            conjugator: Word(l[..i].to_vec()),
        }
    }

    /// Left rotation by `k` letters. Only meaningful on cyclically reduced
    /// words, where the result is again reduced.
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return Word::identity();
        }
        let k = k % self.len();
        let mut v = Vec::with_capacity(self.len());
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// The least rotation of the cyclically reduced core. Two words give the
    /// same result exactly when they are conjugate.
    pub fn canonical_cyclic(&self) -> Word {
        let core = self.cyclic_reduce().core;
        let k = least_rotation(&core.0);
        core.rotate(k)
    }

    /// Length first, then lexicographic.
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.cmp(other))
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator()).max()
    }

    pub fn lies_in_subproduct(&self, d: &Decomposition, blocks: FactorSet) -> bool {
        self.0.iter().all(|l| blocks.contains(d.factor_of(l.generator())))
    }

    /// Maximal runs of letters whose factors fall in the same block of
    /// `grouping`.
    pub fn syllables(&self, d: &Decomposition, grouping: &[FactorSet]) -> Result<Vec<Syllable>, WordError> {
        d.check_partition(grouping)?;
        let block_of = |l: &Letter| {
            let f = d.factor_of(l.generator());
            grouping.iter().position(|b| b.contains(f)).expect("partition covers every factor")
        };
        let mut out: Vec<Syllable> = Vec::new();
        for l in &self.0 {
            let b = block_of(l);
            match out.last_mut() {
                Some(s) if s.block == b => s.word.0.push(*l),
                _ => out.push(Syllable { block: b, word: Word(vec![*l]) }),
            }
        }
        Ok(out)
    }
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs)
    }
}

/// Start index of the lexicographically least rotation.
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = &s[(i + k) % n];
        let b = &s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// `original = conjugator · core · conjugator⁻¹` with `core` cyclically reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicWord {
    pub core: Word,
    pub conjugator: Word,
}

impl CyclicWord {
    pub fn reassemble(&self) -> Word {
        self.conjugator.multiply(&self.core).multiply(&self.conjugator.inverse())
    }
}

/// A maximal single-block run inside a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Syllable {
    /// Index into the grouping passed to [`Word::syllables`].
    pub block: usize,
    pub word: Word,
}

/// A set of factor indices, at most 64 factors.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorSet(u64);

impl FactorSet {
    pub fn empty() -> Self {
        FactorSet(0)
    }

    pub fn single(f: usize) -> Self {
        FactorSet(1 << f)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        FactorSet(it.into_iter().fold(0, |acc, f| acc | 1 << f))
    }

    pub fn contains(self, f: usize) -> bool {
        self.0 >> f & 1 == 1
    }

    pub fn union(self, other: FactorSet) -> FactorSet {
        FactorSet(self.0 | other.0)
    }

    pub fn intersects(self, other: FactorSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&f| self.contains(f))
    }
}

/// Partition of the generators into named free factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    factors: Vec<String>,
    factor_of: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl Decomposition {
    pub fn factors(&self) -> &[String] {
        &self.factors
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.factor_of.len()
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn factor_of(&self, generator: usize) -> usize {
        self.factor_of[generator]
    }

    pub fn factor_index(&self, name: &str) -> Result<usize, WordError> {
        self.factors
            .iter()
            .position(|f| f == name)
            .ok_or_else(|| WordError::UnknownFactor(name.to_string()))
    }

    /// Generators of a factor, in alphabet order.
    pub fn generators_of(&self, factor: usize) -> &[usize] {
        &self.members[factor]
    }

    pub fn generators_in(&self, blocks: FactorSet) -> Vec<usize> {
        (0..self.factor_of.len()).filter(|&g| blocks.contains(self.factor_of[g])).collect()
    }

    pub fn all(&self) -> FactorSet {
        FactorSet::from_indices(0..self.factors.len())
    }

    pub fn complement(&self, blocks: FactorSet) -> FactorSet {
        FactorSet::from_indices((0..self.factors.len()).filter(|&f| !blocks.contains(f)))
    }

    pub fn block<S: AsRef<str>>(&self, names: &[S]) -> Result<FactorSet, WordError> {
        names
            .iter()
            .map(|n| self.factor_index(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(FactorSet::from_indices)
    }

    /// One block per factor.
    pub fn singleton_blocks(&self) -> Vec<FactorSet> {
        (0..self.factors.len()).map(FactorSet::single).collect()
    }

    pub fn check_partition(&self, grouping: &[FactorSet]) -> Result<(), WordError> {
        let mut seen = FactorSet::empty();
        for b in grouping {
            if b.intersects(seen) || b.is_empty() {
                return Err(WordError::NotAPartition);
            }
            seen = seen.union(*b);
        }
        if seen != self.all() {
            return Err(WordError::NotAPartition);
        }
        Ok(())
    }
}

/// Named generators, each assigned to exactly one factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    generators: Vec<String>,
    index: HashMap<String, usize>,
    decomposition: Decomposition,
}

impl Alphabet {
    /// Generators are numbered in the order the factors list them.
    pub fn from_factors<F: AsRef<str>, G: AsRef<str>>(factors: &[(F, &[G])]) -> Result<Self, WordError> {
        let mut gens = Vec::new();
        for (f, gs) in factors {
            for g in gs.iter() {
                gens.push((g.as_ref().to_string(), f.as_ref().to_string()));
            }
        }
        let names: Vec<String> = factors.iter().map(|(f, _)| f.as_ref().to_string()).collect();
        Self::new(gens, names)
    }

    /// A free group: every generator in the single factor `F`.
    pub fn free<G: AsRef<str>>(generators: &[G]) -> Result<Self, WordError> {
        Self::from_factors(&[("F", generators)])
    }

    /// `generators` is `(name, factor name)` in alphabet order; `factors`
    /// fixes the factor order.
    pub fn new(generators: Vec<(String, String)>, factors: Vec<String>) -> Result<Self, WordError> {
        if generators.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        if factors.len() > 64 {
            return Err(WordError::TooManyFactors(factors.len()));
        }
        for (i, f) in factors.iter().enumerate() {
            if factors[..i].contains(f) {
                return Err(WordError::DuplicateFactor(f.clone()));
            }
        }
        let mut index = HashMap::new();
        let mut names = Vec::with_capacity(generators.len());
        let mut factor_of = Vec::with_capacity(generators.len());
        let mut members = vec![Vec::new(); factors.len()];
        for (i, (g, f)) in generators.into_iter().enumerate() {
            let fi = factors
                .iter()
                .position(|x| *x == f)
                .ok_or_else(|| WordError::UnknownFactor(f.clone()))?;
            if index.insert(g.clone(), i).is_some() {
                return Err(WordError::DuplicateGenerator(g));
            }
            names.push(g);
            factor_of.push(fi);
            members[fi].push(i);
        }
        if let Some(fi) = members.iter().position(|m| m.is_empty()) {
            return Err(WordError::EmptyFactor(factors[fi].clone()));
        }
        Ok(Alphabet {
            generators: names,
            index,
            decomposition: Decomposition { factors, factor_of, members },
        })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn name(&self, generator: usize) -> &str {
        &self.generators[generator]
    }

    pub fn generator_index(&self, name: &str) -> Result<usize, WordError> {
        self.index.get(name).copied().ok_or_else(|| WordError::UnknownGenerator(name.to_string()))
    }

    /// Single-letter word for a named generator.
    pub fn gen(&self, name: &str) -> Result<Word, WordError> {
        self.generator_index(name).map(Word::generator)
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    pub fn check(&self, w: &Word) -> Result<(), WordError> {
        match w.max_generator() {
            Some(g) if g >= self.rank() => Err(WordError::AlphabetMismatch { index: g, rank: self.rank() }),
            _ => Ok(()),
        }
    }

    /// Multiplication that rejects words not over this alphabet.
    pub fn multiply(&self, u: &Word, v: &Word) -> Result<Word, WordError> {
        self.check(u)?;
        self.check(v)?;
        Ok(u.multiply(v))
    }

    /// Text form: `name` or `name^k` atoms, `1` for the identity.
    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let mut j = i + 1;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            let name = self.name(letters[i].generator());
            let k = (j - i) as i64 * letters[i].sign();
            parts.push(if k == 1 { name.to_string() } else { format!("{name}^{k}") });
            i = j;
        }
        parts.join(" ")
    }
}

/// All reduced words of length at most `max_len` over the given generators,
/// shortest first.
pub fn enumerate_words(generators: &[usize], max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = generators.iter().flat_map(|&g| [Letter::pos(g), Letter::neg(g)]).collect();
    let mut out = vec![Word::identity()];
    let mut layer = vec![Word::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last() != Some(l.inverse()) {
                    let mut v = w.0.clone();
                    v.push(l);
                    next.push(Word(v));
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Calls `visit` on every reduced word of length at most `max_len` over the
/// given generators, depth first, without materializing the whole set.
pub fn visit_words<F: FnMut(&Word)>(generators: &[usize], max_len: usize, mut visit: F) {
    fn go<F: FnMut(&Word)>(letters: &[Letter], max_len: usize, w: &mut Word, visit: &mut F) {
        visit(w);
        if w.len() == max_len {
            return;
        }
        for &l in letters {
            if w.last() != Some(l.inverse()) {
                w.0.push(l);
                go(letters, max_len, w, visit);
                w.0.pop();
            }
        }
    }
    let letters: Vec<Letter> = generators.iter().flat_map(|&g| [Letter::pos(g), Letter::neg(g)]).collect();
    go(&letters, max_len, &mut Word::identity(), &mut visit);
}
