use num_integer::Integer;

use super::LemmaError;

fn order(x: u64, modulus: u64) -> u64 {
    modulus / x.gcd(&modulus)
}

/// Exponents `(k, l)` with `k·s = l·t` in the cyclic group of order `modulus`
/// (written additively) and `d` not dividing both.
///
/// Split `o(s) = e·f`, `o(t) = e·g` with `f, g` coprime. Then `f·s` and `g·t`
/// both generate the subgroup of order `e`, so one is a multiple of the other;
/// `d` fails to divide at least one of `f`, `g` and that one is kept.
pub fn cyclic_lemma_witness(modulus: u64, s: u64, t: u64, d: u64) -> Result<(u64, u64), LemmaError> {
    if modulus == 0 || d < 2 {
        return Err(LemmaError::BadCyclicInput { order: modulus, d });
    }
    for r in [s, t] {
        if r >= modulus {
            return Err(LemmaError::ResidueOutOfRange(r));
        }
    }
    let (os, ot) = (order(s, modulus), order(t, modulus));
    let e = os.gcd(&ot);
    let (f, g) = (os / e, ot / e);
    let sf = s * f % modulus;
    let tg = t * g % modulus;
    // Both have order e, so the multiplier lies in 1..=e.
    let multiplier = |from: u64, to: u64| (1..=e).find(|r| r * from % modulus == to);
    let (k, l) = if f % d != 0 {
        let r = multiplier(tg, sf).ok_or_else(|| LemmaError::LemmaViolation("f·s not a multiple of g·t".into()))?;
        (f, g * r)
    } else {
        let r = multiplier(sf, tg).ok_or_else(|| LemmaError::LemmaViolation("g·t not a multiple of f·s".into()))?;
        (f * r, g)
    };
    debug_assert_eq!(s * (k % modulus) % modulus, t * (l % modulus) % modulus);
    Ok((k, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve() {
        assert_eq!(cyclic_lemma_witness(12, 3, 2, 2).unwrap(), (2, 3));
    }

    #[test]
    fn equal_residues() {
        for d in 2..=12 {
            assert_eq!(cyclic_lemma_witness(30, 7, 7, d).unwrap(), (1, 1));
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(cyclic_lemma_witness(12, 3, 2, 1).is_err());
        assert!(cyclic_lemma_witness(12, 12, 2, 2).is_err());
        assert!(cyclic_lemma_witness(0, 0, 0, 2).is_err());
    }
}
