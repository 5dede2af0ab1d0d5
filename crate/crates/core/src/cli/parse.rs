//! Text grammars for words and basic elements.

use std::num::NonZeroU32;

use thiserror::Error;

use crate::imaginaries::BasicElem;
use crate::words::{reduce, Alphabet, Letter, Word};

/// Largest accepted `|k|` in a `name^k` atom.
pub const MAX_EXPONENT: i64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at byte {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed exponent `{0}`")]
    MalformedExponent(String),
    #[error("exponent must be nonzero")]
    ZeroExponent,
    #[error("exponent {0} is larger than {MAX_EXPONENT} in absolute value")]
    ExponentTooLarge(i64),
    #[error("expected a word (write 1 for the identity)")]
    EmptyWord,
    #[error("expected S1[..], S2_m[..], S3_m[..] or S4_m_n[..]")]
    BadSortHeader,
    #[error("sort parameter `{0}` is not a positive integer")]
    BadParameter(String),
    #[error("{sort} takes {expected} components, found {found}")]
    ComponentCount { sort: &'static str, expected: usize, found: usize },
    #[error("missing closing `]`")]
    Unclosed,
}

fn err(offset: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { offset, kind }
}

/// Whitespace-separated tokens with their byte offsets.
fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split_whitespace().map(move |tok| (tok.as_ptr() as usize - text.as_ptr() as usize, tok))
}

/// Parses `name` and `name^k` atoms separated by whitespace; `1` is the
/// identity. The result is freely reduced.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, ParseError> {
    parse_word_at(text, 0, alphabet)
}

fn parse_word_at(text: &str, base: usize, alphabet: &Alphabet) -> Result<Word, ParseError> {
    let mut letters = Vec::new();
    let mut any = false;
    for (off, tok) in tokens(text) {
        any = true;
        if tok == "1" {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (n, Some(e)),
            None => (tok, None),
        };
        let g = alphabet
            .generator_index(name)
            .map_err(|_| err(base + off, ParseErrorKind::UnknownGenerator(name.to_string())))?;
        let k = match exp {
            None => 1,
            Some(e) => {
                let at = base + off + name.len() + 1;
                let k: i64 = e.parse().map_err(|_| err(at, ParseErrorKind::MalformedExponent(e.to_string())))?;
                if k == 0 {
                    return Err(err(at, ParseErrorKind::ZeroExponent));
                }
                if k.abs() > MAX_EXPONENT {
                    return Err(err(at, ParseErrorKind::ExponentTooLarge(k)));
                }
                k
            }
        };
        let l = Letter::new(g, k < 0);
        letters.extend(std::iter::repeat_n(l, k.unsigned_abs() as usize));
    }
    if !any {
        return Err(err(base, ParseErrorKind::EmptyWord));
    }
    Ok(reduce(letters))
}

fn parse_param(text: &str, offset: usize) -> Result<NonZeroU32, ParseError> {
    text.parse::<NonZeroU32>()
        .map_err(|_| err(offset, ParseErrorKind::BadParameter(text.to_string())))
}

/// Parses `S1[w]`, `S2_m[a | b]`, `S3_m[a | b]` or `S4_m_n[a | b | c]`.
pub fn parse_basic(text: &str, alphabet: &Alphabet) -> Result<BasicElem, ParseError> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    let open = body.find('[').ok_or_else(|| err(lead, ParseErrorKind::BadSortHeader))?;
    if !body.ends_with(']') {
        return Err(err(lead + body.len(), ParseErrorKind::Unclosed));
    }
    let head = &body[..open];
    let mut parts = head.split('_');
    let sort = parts.next().unwrap_or("");
    let params: Vec<(usize, &str)> = {
        let mut at = lead + sort.len() + 1;
        parts
            .map(|p| {
                let here = at;
                at += p.len() + 1;
                (here, p)
            })
            .collect()
    };
    let (name, expected, n_params): (&'static str, usize, usize) = match sort {
        "S1" => ("S1", 1, 0),
        "S2" => ("S2", 2, 1),
        "S3" => ("S3", 2, 1),
        "S4" => ("S4", 3, 2),
        _ => return Err(err(lead, ParseErrorKind::BadSortHeader)),
    };
    if params.len() != n_params {
        return Err(err(lead, ParseErrorKind::BadSortHeader));
    }
    let params: Vec<NonZeroU32> = params.iter().map(|&(o, p)| parse_param(p, o)).collect::<Result<_, _>>()?;
    let inner_start = lead + open + 1;
    let inner = &body[open + 1..body.len() - 1];
    let mut comps = Vec::new();
    let mut at = inner_start;
    for piece in inner.split('|') {
        comps.push((at, piece));
        at += piece.len() + 1;
    }
    if comps.len() != expected {
        return Err(err(inner_start, ParseErrorKind::ComponentCount { sort: name, expected, found: comps.len() }));
    }
    let words: Vec<Word> = comps
        .iter()
        .map(|&(o, piece)| parse_word_at(piece, o, alphabet))
        .collect::<Result<_, _>>()?;
    let mut w = words.into_iter();
    let mut next = || w.next().expect("component count checked");
    Ok(match name {
        "S1" => BasicElem::S1(next()),
        "S2" => BasicElem::S2 { a: next(), b: next(), m: params[0] },
        "S3" => BasicElem::S3 { a: next(), b: next(), m: params[0] },
        _ => BasicElem::S4 { a: next(), b: next(), c: next(), m: params[0], n: params[1] },
    })
}

/// Inverse of [`parse_basic`].
pub fn render_basic(x: &BasicElem, alphabet: &Alphabet) -> String {
    let r = |w: &Word| alphabet.render(w);
    match x {
        BasicElem::S1(w) => format!("S1[{}]", r(w)),
        BasicElem::S2 { a, b, m } => format!("S2_{m}[{} | {}]", r(a), r(b)),
        BasicElem::S3 { a, b, m } => format!("S3_{m}[{} | {}]", r(a), r(b)),
        BasicElem::S4 { a, b, c, m, n } => format!("S4_{m}_{n}[{} | {} | {}]", r(a), r(b), r(c)),
    }
}
