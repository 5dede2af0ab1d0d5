//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines always reach the console; exits nonzero on failure.

mod common;

use std::num::NonZeroU32;
use std::time::{Duration, Instant};

use freeprod::imaginaries::{eq_basic, BasicElem};
use freeprod::lemma_lab::{run_lemma, DeskScale, LemmaName, LemmaOutcome};
use freeprod::roots::{double_coset_solve, is_conjugate, primitive_root};
use freeprod::words::{enumerate_words, reduce};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{brute_double_coset, naive_reduce, pow_naive, random_letters, random_reduced_in, ConjugacyTable};

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

struct Verdict {
    passed: bool,
    summary: String,
}

fn lemma_verdict(out: &LemmaOutcome, elapsed: Duration, limit: Option<Duration>) -> Verdict {
    let in_time = limit.is_none_or(|l| elapsed < l);
    let mut summary = format!("{} cases, {} failures, {:.1?}", out.cases, out.failure_count, elapsed);
    if let Some(l) = limit {
        summary.push_str(&format!(" (limit {l:?})"));
    }
    for f in &out.failures {
        summary.push_str(&format!("\n      {f}"));
    }
    Verdict { passed: out.passed() && in_time, summary }
}

fn timed_lemma(name: LemmaName, scale: &DeskScale, limit: Option<Duration>) -> Verdict {
    let t0 = Instant::now();
    let out = run_lemma(name, scale);
    lemma_verdict(&out, t0.elapsed(), limit)
}

fn criterion_2(scale: &DeskScale) -> Verdict {
    let n = scale.conjugacy_max_len;
    let table = ConjugacyTable::build(2, n, n);
    let mut pairs = 0usize;
    let mut bad = Vec::new();
    for (i, u) in table.words.iter().enumerate() {
        for (j, v) in table.words.iter().enumerate() {
            pairs += 1;
            let got = is_conjugate(u, v);
            let ok = match &got {
                Some(g) => table.conjugate(i, j) && g.inverse().multiply(u).multiply(g) == *v,
                None => !table.conjugate(i, j),
            };
            if !ok && bad.len() < 5 {
                bad.push(format!("{u:?} vs {v:?}: {got:?}"));
            }
        }
    }
    Verdict { passed: bad.is_empty(), summary: format!("{pairs} pairs, {} disagreements {bad:?}", bad.len()) }
}

fn criterion_3(scale: &DeskScale) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(scale.seed ^ 3);
    let mut failures = Vec::new();
    let (mut found, mut returned) = (0, 0);
    for k in 0..scale.double_coset_instances {
        let a = random_reduced_in(&mut rng, 2, 1..=3);
        let c = random_reduced_in(&mut rng, 2, 1..=3);
        let b1 = random_reduced_in(&mut rng, 2, 0..=6);
        let (m, n) = (rng.gen_range(1..=3u32), rng.gen_range(1..=3u32));
        // Half the instances are solvable by construction.
        let b2 = if k % 2 == 0 {
            let (i, j) = (rng.gen_range(-3..=3i64), rng.gen_range(-3..=3i64));
            pow_naive(&a, m as i64 * i).multiply(&b1).multiply(&pow_naive(&c, n as i64 * j))
        } else {
            random_reduced_in(&mut rng, 2, 0..=8)
        };
        let nz = |x: u32| NonZeroU32::new(x).unwrap();
        let got = double_coset_solve(&b1, &b2, &a, &c, nz(m), nz(n)).expect("a, c nontrivial");
        let oracle = brute_double_coset(&b1, &b2, &a, &c, m, n, 10);
        found += oracle.is_some() as usize;
        let verifies = got.as_ref().is_none_or(|w| {
            returned += 1;
            pow_naive(&a, m as i64 * w.i).multiply(&b1).multiply(&pow_naive(&c, n as i64 * w.j)) == b2
        });
        let complete = oracle.is_none() || got.is_some();
        if !(verifies && complete) && failures.len() < 5 {
            failures.push(format!("a={a:?} c={c:?} b1={b1:?} b2={b2:?} m={m} n={n}: {got:?} oracle {oracle:?}"));
        }
    }
    Verdict {
        passed: failures.is_empty(),
        summary: format!(
            "{} instances, oracle solvable {found}, solver witnesses {returned}, failures {failures:?}",
            scale.double_coset_instances
        ),
    }
}

fn basic_samples() -> Vec<BasicElem> {
    let nz = |x: u32| NonZeroU32::new(x).unwrap();
    let short = enumerate_words(&[0, 1], 2);
    let mut out: Vec<BasicElem> = enumerate_words(&[0, 1], 3).into_iter().map(BasicElem::S1).collect();
    for m in [nz(1), nz(2)] {
        for a in &short {
            for b in &short {
                out.push(BasicElem::S2 { a: a.clone(), b: b.clone(), m });
                out.push(BasicElem::S3 { a: a.clone(), b: b.clone(), m });
            }
        }
    }
    let tiny = enumerate_words(&[0, 1], 1);
    for a in &tiny {
        for b in &short {
            for c in &tiny {
                out.push(BasicElem::S4 { a: a.clone(), b: b.clone(), c: c.clone(), m: nz(1), n: nz(2) });
            }
        }
    }
    out
}

fn criterion_9(scale: &DeskScale) -> Verdict {
    const N: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(scale.seed ^ 9);
    let mut failures: Vec<String> = Vec::new();
    let mut fail = |what: &str, detail: String| {
        if failures.len() < 8 {
            failures.push(format!("{what}: {detail}"));
        }
    };
    let word = |rng: &mut ChaCha8Rng, max: usize| {
        let len = rng.gen_range(0..=max);
        reduce(random_letters(rng, 3, len))
    };
    for _ in 0..N {
        let len = rng.gen_range(0..=12);
        let raw = random_letters(&mut rng, 3, len);
        let w = reduce(raw.iter().copied());
        if reduce(w.letters().iter().copied()) != w || w.letters() != naive_reduce(&raw).as_slice() {
            fail("reduce", format!("{raw:?}"));
        }
    }
    for _ in 0..N {
        let w = word(&mut rng, 10);
        if !w.multiply(&w.inverse()).is_empty() || !w.inverse().multiply(&w).is_empty() || w.inverse().inverse() != w {
            fail("inverse", format!("{w:?}"));
        }
    }
    for _ in 0..N {
        let (u, v, x) = (word(&mut rng, 8), word(&mut rng, 8), word(&mut rng, 8));
        if u.multiply(&v).multiply(&x) != u.multiply(&v.multiply(&x)) {
            fail("associativity", format!("{u:?} {v:?} {x:?}"));
        }
    }
    for _ in 0..N {
        let w = word(&mut rng, 10);
        let cw = w.cyclic_reduce();
        if cw.conjugator.multiply(&cw.core).multiply(&cw.conjugator.inverse()) != w || !cw.core.is_cyclically_reduced() {
            fail("cyclic reassembly", format!("{w:?}"));
        }
    }
    for _ in 0..N {
        let w = loop {
            let w = word(&mut rng, 6);
            if !w.is_empty() {
                break pow_naive(&w, rng.gen_range(1..=4));
            }
        };
        let rd = primitive_root(&w).expect("nontrivial");
        if pow_naive(&rd.root, rd.exponent as i64) != w {
            fail("root reassembly", format!("{w:?}"));
        }
    }
    let samples = basic_samples();
    for _ in 0..N {
        let x = &samples[rng.gen_range(0..samples.len())];
        let y = &samples[rng.gen_range(0..samples.len())];
        let refl = eq_basic(x, x) == Ok(true);
        let sym = x.sort() != y.sort() || eq_basic(x, y) == eq_basic(y, x);
        if !(refl && sym) {
            fail("reflexive/symmetric", format!("{x:?} {y:?}"));
        }
    }
    // Transitivity over every triple of same-sort samples, through the
    // relation matrix.
    let mut triples = 0usize;
    let mut by_sort: std::collections::BTreeMap<String, Vec<&BasicElem>> = Default::default();
    for x in &samples {
        by_sort.entry(x.sort().to_string()).or_default().push(x);
    }
    for group in by_sort.values() {
        let n = group.len();
        let rel: Vec<Vec<bool>> =
            group.iter().map(|x| group.iter().map(|y| eq_basic(x, y).unwrap()).collect()).collect();
        for i in 0..n {
            for j in (0..n).filter(|&j| rel[i][j]) {
                for k in (0..n).filter(|&k| rel[j][k]) {
                    triples += 1;
                    if !rel[i][k] {
                        fail("transitivity", format!("{:?} {:?} {:?}", group[i], group[j], group[k]));
                    }
                }
            }
        }
    }
    Verdict {
        passed: failures.is_empty(),
        summary: format!("{N} checks per law, {triples} chained triples, failures {failures:?}"),
    }
}

fn main() {
    let scale = DeskScale::acceptance();
    let criteria: Vec<Criterion> = vec![
        ("1 cyclic-group witnesses", Box::new(|| timed_lemma(LemmaName::Cyclic, &scale, Some(Duration::from_secs(10))))),
        ("2 conjugacy vs brute force", Box::new(|| criterion_2(&scale))),
        ("3 double-coset solver vs oracle", Box::new(|| criterion_3(&scale))),
        ("4 p distinct images", Box::new(|| timed_lemma(LemmaName::Images, &scale, Some(Duration::from_secs(120))))),
        ("5 two-automorphism lemma", Box::new(|| timed_lemma(LemmaName::Conj2, &scale, None))),
        ("6 f_a-orbit classification", Box::new(|| timed_lemma(LemmaName::MalOrb, &scale, None))),
        ("7 two-generator infinite orbits", Box::new(|| timed_lemma(LemmaName::InfiniteOrbit, &scale, None))),
        ("8 F2 commutator orbit", Box::new(|| timed_lemma(LemmaName::F2Commutator, &scale, Some(Duration::from_secs(5))))),
        ("9 algebraic invariants", Box::new(|| criterion_9(&scale))),
    ];
    let mut all = true;
    for (name, run) in &criteria {
        let t0 = Instant::now();
        let v = run();
        all &= v.passed;
        let status = if v.passed { "PASS" } else { "FAIL" };
        println!("criterion {name}: {status} [{:.1?}] {}", t0.elapsed(), v.summary);
    }
    if !all {
        std::process::exit(1);
    }
}
