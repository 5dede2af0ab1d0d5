//! Session files: the alphabet, its factors and named automorphisms.
//!
//! ```text
//! # comment
//! alphabet: e1 e2 e          (optional generator order)
//! factor F2: e1 e2
//! factor E: e
//! auto f_e1: e -> e e1
//! inv: e -> e e1^-1
//! ```
//!
//! Every `auto` line lists images of the moved generators and must be
//! followed by an `inv` line giving the inverse the same way.

use std::collections::BTreeMap;

use thiserror::Error;

use super::parse::{parse_word, ParseError};
use crate::automorphisms::{AutoError, GroupAuto};
use crate::words::{Alphabet, Decomposition, Word, WordError};

pub const DEFAULT_SESSION: &str = "\
factor F2: e1 e2
factor E: e
factor C: c1 c2 c3

auto f_e1: e -> e e1
inv: e -> e e1^-1
auto f_e2: e -> e e2
inv: e -> e e2^-1
auto cyc_C: c1 -> c2; c2 -> c3; c3 -> c1
inv: c1 -> c3; c2 -> c1; c3 -> c2
auto nielsen_inv: e1 -> e1^-1
inv: e1 -> e1^-1
auto nielsen_swap: e1 -> e2; e2 -> e1
inv: e1 -> e2; e2 -> e1
auto nielsen_tv: e1 -> e1 e2
inv: e1 -> e1 e2^-1
";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SessionError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Word { line: usize, source: ParseError },
    #[error("line {line}: {source}")]
    Auto { line: usize, source: AutoError },
    #[error(transparent)]
    Alphabet(#[from] WordError),
    #[error("unknown automorphism `{0}`")]
    UnknownAuto(String),
}

fn syntax(line: usize, message: impl Into<String>) -> SessionError {
    SessionError::Syntax { line, message: message.into() }
}

#[derive(Debug, Clone)]
pub struct Session {
    alphabet: Alphabet,
    autos: BTreeMap<String, GroupAuto>,
}

struct AutoStanza {
    line: usize,
    label: String,
    forward: String,
    inverse: Option<(usize, String)>,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl Session {
    pub fn builtin() -> Session {
        Session::parse(DEFAULT_SESSION).expect("built-in session is valid")
    }

    pub fn parse(text: &str) -> Result<Session, SessionError> {
        let mut order: Option<(usize, Vec<String>)> = None;
        let mut factors: Vec<(String, Vec<String>)> = Vec::new();
        let mut stanzas: Vec<AutoStanza> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (head, rest) = content
                .split_once(':')
                .ok_or_else(|| syntax(line, "expected `alphabet:`, `factor NAME:`, `auto NAME:` or `inv:`"))?;
            let head = head.trim();
            let rest = rest.trim();
            if head == "alphabet" {
                if order.is_some() {
                    return Err(syntax(line, "second `alphabet` line"));
                }
                order = Some((line, rest.split_whitespace().map(str::to_string).collect()));
            } else if head == "inv" {
                match stanzas.last_mut() {
                    Some(s) if s.inverse.is_none() => s.inverse = Some((line, rest.to_string())),
                    _ => return Err(syntax(line, "`inv` must directly follow an `auto` line")),
                }
            } else if let Some(name) = head.strip_prefix("factor ") {
                let name = name.trim();
                if !valid_name(name) {
                    return Err(syntax(line, format!("bad factor name `{name}`")));
                }
                let gens: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if let Some(bad) = gens.iter().find(|g| !valid_name(g)) {
                    return Err(syntax(line, format!("bad generator name `{bad}`")));
                }
                factors.push((name.to_string(), gens));
            } else if let Some(label) = head.strip_prefix("auto ") {
                if let Some(prev) = stanzas.last() {
                    if prev.inverse.is_none() {
                        return Err(syntax(prev.line, format!("`auto {}` has no `inv` line", prev.label)));
                    }
                }
                let label = label.trim();
                if !valid_name(label) {
                    return Err(syntax(line, format!("bad automorphism name `{label}`")));
                }
                if stanzas.iter().any(|s| s.label == label) {
                    return Err(syntax(line, format!("duplicate automorphism `{label}`")));
                }
                stanzas.push(AutoStanza { line, label: label.to_string(), forward: rest.to_string(), inverse: None });
            } else {
                return Err(syntax(line, format!("unknown stanza `{head}`")));
            }
        }
        if let Some(prev) = stanzas.last() {
            if prev.inverse.is_none() {
                return Err(syntax(prev.line, format!("`auto {}` has no `inv` line", prev.label)));
            }
        }
        if factors.is_empty() {
            return Err(syntax(0, "no `factor` lines"));
        }

        let factor_of: BTreeMap<&str, &str> =
            factors.iter().flat_map(|(f, gs)| gs.iter().map(move |g| (g.as_str(), f.as_str()))).collect();
        let generators: Vec<(String, String)> = match &order {
            None => factors.iter().flat_map(|(f, gs)| gs.iter().map(move |g| (g.clone(), f.clone()))).collect(),
            Some((line, names)) => {
                let listed: usize = factors.iter().map(|(_, gs)| gs.len()).sum();
                if names.len() != listed {
                    return Err(syntax(*line, "`alphabet` must list every factor generator exactly once"));
                }
                names
                    .iter()
                    .map(|g| {
                        factor_of
                            .get(g.as_str())
                            .map(|f| (g.clone(), f.to_string()))
                            .ok_or_else(|| syntax(*line, format!("generator `{g}` is in no factor")))
                    })
                    .collect::<Result<_, _>>()?
            }
        };
        let alphabet = Alphabet::new(generators, factors.iter().map(|(f, _)| f.clone()).collect())?;

        let mut autos = BTreeMap::new();
        for s in stanzas {
            let fwd = parse_assignments(&s.forward, s.line, &alphabet)?;
            let (inv_line, inv_text) = s.inverse.expect("checked above");
            let back = parse_assignments(&inv_text, inv_line, &alphabet)?;
            let auto = GroupAuto::from_assignments(s.label.as_str(), alphabet.rank(), &fwd, &back)
                .map_err(|source| SessionError::Auto { line: s.line, source })?;
            autos.insert(s.label, auto);
        }
        Ok(Session { alphabet, autos })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn decomposition(&self) -> &Decomposition {
        self.alphabet.decomposition()
    }

    pub fn auto(&self, name: &str) -> Result<&GroupAuto, SessionError> {
        self.autos.get(name).ok_or_else(|| SessionError::UnknownAuto(name.to_string()))
    }

    pub fn auto_names(&self) -> impl Iterator<Item = &str> {
        self.autos.keys().map(String::as_str)
    }
}

fn parse_assignments(text: &str, line: usize, alphabet: &Alphabet) -> Result<Vec<(usize, Word)>, SessionError> {
    let mut out: Vec<(usize, Word)> = Vec::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (lhs, rhs) = part
            .split_once("->")
            .ok_or_else(|| syntax(line, format!("expected `generator -> word`, found `{part}`")))?;
        let g = alphabet
            .generator_index(lhs.trim())
            .map_err(|_| syntax(line, format!("unknown generator `{}`", lhs.trim())))?;
        if out.iter().any(|(h, _)| *h == g) {
            return Err(syntax(line, format!("generator `{}` assigned twice", lhs.trim())));
        }
        let w = parse_word(rhs, alphabet).map_err(|source| SessionError::Word { line, source })?;
        out.push((g, w));
    }
    Ok(out)
}
