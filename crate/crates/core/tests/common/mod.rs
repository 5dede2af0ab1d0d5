//! Brute-force oracles shared by the integration tests. None of them calls
//! the algorithm it checks.

#![allow(dead_code)]

use freeprod::words::{enumerate_words, Letter, Word};
use rand::Rng;

/// Cancels one adjacent inverse pair per pass until nothing changes.
pub fn naive_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut cur = letters.to_vec();
    loop {
        let hit = (1..cur.len()).find(|&i| cur[i] == cur[i - 1].inverse());
        match hit {
            Some(i) => {
                cur.drain(i - 1..=i);
            }
            None => return cur,
        }
    }
}

pub fn random_letters<R: Rng>(rng: &mut R, rank: usize, len: usize) -> Vec<Letter> {
    (0..len).map(|_| Letter::new(rng.gen_range(0..rank), rng.gen())).collect()
}

/// A random reduced word of length exactly `len`.
pub fn random_reduced<R: Rng>(rng: &mut R, rank: usize, len: usize) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    while out.len() < len {
        let l = Letter::new(rng.gen_range(0..rank), rng.gen());
        if out.last() != Some(&l.inverse()) {
            out.push(l);
        }
    }
    Word::from_letters(&out)
}

/// A random reduced word with length drawn from `lens`.
pub fn random_reduced_in<R: Rng>(rng: &mut R, rank: usize, lens: std::ops::RangeInclusive<usize>) -> Word {
    let len = rng.gen_range(lens);
    random_reduced(rng, rank, len)
}

/// Conjugacy by exhaustive conjugators: `related[i]` has bit `j` set when
/// `g⁻¹ words[i] g = words[j]` for some listed conjugator `g`.
pub struct ConjugacyTable {
    pub words: Vec<Word>,
    related: Vec<Vec<u64>>,
}

impl ConjugacyTable {
    pub fn build(rank: usize, max_len: usize, max_conjugator: usize) -> Self {
        let gens: Vec<usize> = (0..rank).collect();
        let words = enumerate_words(&gens, max_len);
        let conjugators = enumerate_words(&gens, max_conjugator);
        let index: std::collections::HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let blocks = words.len().div_ceil(64);
        let mut related = vec![vec![0u64; blocks]; words.len()];
        for (i, u) in words.iter().enumerate() {
            for g in &conjugators {
                let v = g.inverse().multiply(u).multiply(g);
                if let Some(&j) = index.get(&v) {
                    related[i][j / 64] |= 1 << (j % 64);
                }
            }
        }
        ConjugacyTable { words, related }
    }

    pub fn conjugate(&self, i: usize, j: usize) -> bool {
        self.related[i][j / 64] >> (j % 64) & 1 == 1
    }
}

/// Primitive root by trying every divisor-length prefix of the cyclic core.
pub fn divisor_prefix_root(w: &Word) -> (Word, u64) {
    let l = w.letters();
    let mut peel = 0;
    while l.len() - 2 * peel >= 2 && l[peel] == l[l.len() - 1 - peel].inverse() {
        peel += 1;
    }
    let core = &l[peel..l.len() - peel];
    let n = core.len();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        if (0..n).all(|i| core[i] == core[i % d]) {
            let u = Word::from_letters(&l[..peel]);
            let root = u.multiply(&Word::from_letters(&core[..d])).multiply(&u.inverse());
            return (root, (n / d) as u64);
        }
    }
    unreachable!("d = n always matches")
}

fn power(w: &Word, k: i64) -> Word {
    let base = if k < 0 { w.inverse() } else { w.clone() };
    (0..k.unsigned_abs()).fold(Word::identity(), |acc, _| acc.multiply(&base))
}

/// Exhaustive search for `a^(m i) b1 c^(n j) = b2` with `|i|, |j| <= bound`.
pub fn brute_double_coset(b1: &Word, b2: &Word, a: &Word, c: &Word, m: u32, n: u32, bound: i64) -> Option<(i64, i64)> {
    let am = power(a, m as i64);
    let cn = power(c, n as i64);
    for i in -bound..=bound {
        let left = power(&am, i).multiply(b1);
        for j in -bound..=bound {
            if left.multiply(&power(&cn, j)) == *b2 {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn pow_naive(w: &Word, k: i64) -> Word {
    power(w, k)
}
