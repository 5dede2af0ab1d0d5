//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on a domain error or a failing lemma check,
//! 2 on a usage error.

mod parse;
mod session;

pub use parse::{parse_basic, parse_word, render_basic, ParseError, ParseErrorKind};
pub use session::{Session, SessionError, DEFAULT_SESSION};

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::automorphisms::{orbit, AutoError};
use crate::imaginaries::{canonical_key, eq_basic, ClassKey, ImaginaryError};
use crate::lemma_lab::{run_lemma, DeskScale, LemmaName};
use crate::roots::{centralizer_generator, is_conjugate, primitive_root, RootError};

#[derive(Parser, Debug)]
#[command(name = "freeprod", version, about = "Words, conjugacy, imaginaries and automorphism orbits in free products")]
struct Cli {
    /// Session file with factors and named automorphisms.
    #[arg(long, global = true, value_name = "FILE")]
    session: Option<PathBuf>,
    /// Emit key=value lines only.
    #[arg(long, global = true)]
    plain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Freely reduce a word and show its cyclic class.
    Reduce { word: String },
    /// Decide conjugacy and print a witness g with g^-1 u g = v.
    Conjugate { u: String, v: String },
    /// Primitive root, exponent and centralizer generator.
    Root { word: String },
    /// Compare two basic elements.
    Eqclass { x: String, y: String },
    /// Bounded orbit of a basic element under named automorphisms.
    Orbit {
        element: String,
        #[arg(long = "auto", required = true, value_name = "NAME")]
        autos: Vec<String>,
        #[arg(long, default_value_t = 10)]
        budget: usize,
    },
    /// Run lemma scans.
    LemmaCheck(LemmaArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("which").required(true).multiple(true)))]
struct LemmaArgs {
    /// Every scan below
    #[arg(long, group = "which")]
    all: bool,
    /// Witnesses (k, l) in cyclic groups of order up to the scale limit
    #[arg(long, group = "which")]
    cyclic: bool,
    /// Syllable-pair rotations induced by a factor permutation
    #[arg(long, group = "which")]
    shift: bool,
    /// Classes fixed by two permutation automorphisms
    #[arg(long, group = "which")]
    conj2: bool,
    /// p distinct images of non-S1 elements outside the base
    #[arg(long, group = "which")]
    images: bool,
    /// Exceptional shapes and orbit growth under one twist
    #[arg(long, group = "which")]
    malorb: bool,
    /// Orbit growth under two twists with different centralizers
    #[arg(long, group = "which")]
    infinite_orbit: bool,
    /// The commutator class of F2 under Nielsen moves
    #[arg(long, group = "which")]
    f2_commutator: bool,
    #[arg(long, value_enum, default_value_t = Scale::Full)]
    scale: Scale,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Scale {
    Quick,
    Full,
}

impl LemmaArgs {
    fn selected(&self) -> Vec<LemmaName> {
        let flags = [
            (self.cyclic, LemmaName::Cyclic),
            (self.shift, LemmaName::Shift),
            (self.conj2, LemmaName::Conj2),
            (self.images, LemmaName::Images),
            (self.malorb, LemmaName::MalOrb),
            (self.infinite_orbit, LemmaName::InfiniteOrbit),
            (self.f2_commutator, LemmaName::F2Commutator),
        ];
        flags.into_iter().filter(|&(on, _)| on || self.all).map(|(_, n)| n).collect()
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("session: {0}")]
    Session(#[from] SessionError),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Imaginary(#[from] ImaginaryError),
    #[error("{0}")]
    Root(#[from] RootError),
    #[error("{0}")]
    Auto(#[from] AutoError),
}

/// Everything a run produces; `main` writes it out and exits with `code`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput { code: 2, stdout: String::new(), stderr: text }
            } else {
                CliOutput { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok((code, body)) => {
            let mut stdout = String::new();
            if !cli.plain {
                writeln!(stdout, "freeprod {}", env!("CARGO_PKG_VERSION")).unwrap();
            }
            stdout.push_str(&body);
            CliOutput { code, stdout, stderr: String::new() }
        }
        Err(e) => CliOutput { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn load_session(path: Option<&PathBuf>) -> Result<Session, CliError> {
    match path {
        None => Ok(Session::builtin()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Io { path: p.display().to_string(), message: e.to_string() })?;
            Ok(Session::parse(&text)?)
        }
    }
}

fn execute(cli: &Cli) -> Result<(u8, String), CliError> {
    let session = load_session(cli.session.as_ref())?;
    let al = session.alphabet();
    let plain = cli.plain;
    let mut out = String::new();
    let key_text = |k: &ClassKey| render_basic(&k.representative(), al);
    match &cli.command {
        Command::Reduce { word } => {
            let w = parse_word(word, al)?;
            let class = w.canonical_cyclic();
            if plain {
                writeln!(out, "word={}\nlength={}\ncyclic_class={}", al.render(&w), w.len(), al.render(&class)).unwrap();
            } else {
                writeln!(out, "{}\nlength {}, cyclic class {}", al.render(&w), w.len(), al.render(&class)).unwrap();
            }
        }
        Command::Conjugate { u, v } => {
            let (u, v) = (parse_word(u, al)?, parse_word(v, al)?);
            match is_conjugate(&u, &v) {
                Some(g) if plain => writeln!(out, "conjugate=true\nwitness={}", al.render(&g)).unwrap(),
                Some(g) => writeln!(out, "conjugate: g^-1 u g = v with g = {}", al.render(&g)).unwrap(),
                None if plain => writeln!(out, "conjugate=false").unwrap(),
                None => writeln!(out, "not conjugate").unwrap(),
            }
        }
        Command::Root { word } => {
            let w = parse_word(word, al)?;
            let rd = primitive_root(&w)?;
            let cg = centralizer_generator(&w)?;
            if plain {
                writeln!(out, "root={}\nexponent={}\ncentralizer={}", al.render(&rd.root), rd.exponent, al.render(&cg))
                    .unwrap();
            } else {
                writeln!(out, "{} = ({})^{}", al.render(&w), al.render(&rd.root), rd.exponent).unwrap();
                writeln!(out, "centralizer generated by {}", al.render(&cg)).unwrap();
            }
        }
        Command::Eqclass { x, y } => {
            let (x, y) = (parse_basic(x, al)?, parse_basic(y, al)?);
            let same = eq_basic(&x, &y)?;
            let verdict = if same { "equivalent" } else { "inequivalent" };
            let (kx, ky) = (key_text(&canonical_key(&x)), key_text(&canonical_key(&y)));
            if plain {
                writeln!(out, "relation={verdict}\nkey1={kx}\nkey2={ky}").unwrap();
            } else {
                writeln!(out, "{verdict}\n  key 1: {kx}\n  key 2: {ky}").unwrap();
            }
        }
        Command::Orbit { element, autos, budget } => {
            let x = parse_basic(element, al)?;
            let gens = autos.iter().map(|n| session.auto(n).cloned()).collect::<Result<Vec<_>, _>>()?;
            let r = orbit(&x, &gens, *budget)?;
            let summary = format!(
                "keys={} exhausted={} depth={} budget={}",
                r.keys.len(),
                r.exhausted,
                r.depth_reached,
                r.budget
            );
            if plain {
                for part in summary.split(' ') {
                    writeln!(out, "{part}").unwrap();
                }
                for k in &r.keys {
                    writeln!(out, "key={}", key_text(k)).unwrap();
                }
            } else {
                writeln!(out, "{summary}").unwrap();
                for k in &r.keys {
                    writeln!(out, "  {}", key_text(k)).unwrap();
                }
            }
        }
        Command::LemmaCheck(args) => {
            let scale = match args.scale {
                Scale::Quick => DeskScale::quick(),
                Scale::Full => DeskScale::acceptance(),
            };
            let outcomes: Vec<_> = args.selected().into_iter().map(|n| run_lemma(n, &scale)).collect();
            let status = |ok: bool| if ok { "pass" } else { "fail" };
            if !plain {
                writeln!(out, "{:<16} {:<6} {:>10}", "lemma", "status", "cases").unwrap();
                for o in &outcomes {
                    writeln!(out, "{:<16} {:<6} {:>10}", o.name.as_str(), status(o.passed()), o.cases).unwrap();
                }
                for o in outcomes.iter().filter(|o| !o.passed()) {
                    writeln!(out, "\n{} failed in {} of {} cases:", o.name, o.failure_count, o.cases).unwrap();
                    for f in &o.failures {
                        writeln!(out, "  {f}").unwrap();
                    }
                }
                out.push('\n');
            }
            for o in &outcomes {
                writeln!(out, "lemma={} status={} cases={}", o.name, status(o.passed()), o.cases).unwrap();
            }
            let code = if outcomes.iter().all(|o| o.passed()) { 0 } else { 1 };
            return Ok((code, out));
        }
    }
    Ok((0, out))
}
