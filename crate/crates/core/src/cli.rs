//! Batch command line front end. Every command prints one JSON document
//! (or CSV for word lists) and maps outcomes onto exit codes.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::certificates::{certify_chain, CertificateError};
use crate::coeffs::{CoeffError, FieldSpec};
use crate::composition::{build_Md, cross_check_patterns, CompositionError, MAX_LIFT_DEGREE};
use crate::invariants::{degree_bound, full_system, nonvanishing, InvariantError};
use crate::linalg::{EchelonSystem, LinalgError};
use crate::nilpotency::{formula_report, profiles, C_compute, C_formula, NilpotencyError};
use crate::tables::{check_table, paper_table, TableError, B1d};
use crate::words::{Multidegree, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Composition(#[from] CompositionError),
    #[error(transparent)]
    Certificate(#[from] CertificateError),
    #[error(transparent)]
    Nilpotency(#[from] NilpotencyError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("could not start worker pool: {0}")]
    Threads(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "nilcube", version, about = "Relatively free algebras of the identity x^3 = 0")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Components with more words than this are refused or taken from tables.
    #[arg(long, default_value_t = 20_000, global = true)]
    max_words: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Component {
    /// Characteristic: 0 or a prime.
    #[arg(short = 'p')]
    p: u32,
    /// Multidegree as a comma-separated list, e.g. 3,3.
    #[arg(short = 'm', value_delimiter = ',', required = true)]
    m: Vec<u32>,
}

#[derive(Debug, Args)]
struct Alphabet {
    #[arg(short = 'p')]
    p: u32,
    /// Number of generators.
    #[arg(short = 'd')]
    d: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension of one homogeneous component by row reduction.
    Dim(Component),
    /// Lexicographically least basis by row reduction.
    Basis(Component),
    /// The closed-form basis table.
    Table(Component),
    /// Compare closed-form tables against row reduction.
    Verify {
        #[command(subcommand)]
        what: VerifyTarget,
    },
    /// Multilinear identities lifted from five letters, with the completeness check.
    Composition(Alphabet),
    /// Certify independence of the recursive multilinear tables up to d.
    Certify {
        #[command(flatten)]
        a: Alphabet,
        /// Allow d = 9 and 10.
        #[arg(long)]
        long: bool,
    },
    /// Nilpotency degree.
    Nilpotency {
        #[command(flatten)]
        a: Alphabet,
        /// Report the closed form only.
        #[arg(long)]
        formula: bool,
    },
    /// Generating system of invariants of d matrices of order 3.
    Gens {
        #[command(flatten)]
        a: Alphabet,
        #[arg(long)]
        count_only: bool,
        /// Random draws per generator for the non-vanishing check (0 skips it).
        #[arg(long, default_value_t = 0)]
        draws: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyTarget {
    /// Check every table up to a norm is a basis of its component
    Tables {
        #[arg(short = 'p')]
        p: u32,
        #[arg(long, default_value_t = 8)]
        max_norm: usize,
        /// Largest alphabet (default: max-norm).
        #[arg(short = 'd')]
        d: Option<usize>,
        /// Also require every table to be the lexicographically least basis.
        #[arg(long)]
        strict: bool,
    },
}

/// What a command produced: the document and whether its check passed.
struct Outcome {
    doc: Value,
    words: Option<Vec<Word>>,
    passed: bool,
}

impl Outcome {
    fn ok(doc: Value) -> Self {
        Outcome {
            doc,
            words: None,
            passed: true,
        }
    }

    fn words(doc: Value, words: Vec<Word>) -> Self {
        Outcome {
            doc,
            words: Some(words),
            passed: true,
        }
    }

    fn check(doc: Value, passed: bool) -> Self {
        Outcome {
            doc,
            words: None,
            passed,
        }
    }
}

fn with_schema(mut doc: Value) -> Value {
    if let Value::Object(map) = &mut doc {
        map.insert("schema".into(), json!(SCHEMA));
    }
    doc
}

fn csv(words: &[Word]) -> String {
    let mut out = String::from("index,word\n");
    for (i, w) in words.iter().enumerate() {
        let letters: Vec<String> = w.letters().iter().map(|l| l.to_string()).collect();
        out.push_str(&format!("{i},{}\n", letters.join(" ")));
    }
    out
}

fn component(c: &Component, cap: u128) -> Result<(FieldSpec, Multidegree), CliError> {
    let field = FieldSpec::new(c.p)?;
    let m = Multidegree::new(c.m.clone());
    if m.len() > u8::MAX as usize {
        return Err(CliError::Usage("too many letters".into()));
    }
    if m.word_count() > cap {
        return Err(CliError::Usage(format!(
            "{} has {} words, above --max-words {cap}",
            m,
            m.word_count()
        )));
    }
    Ok((field, m))
}

fn dim(c: &Component, cap: u128) -> Result<Outcome, CliError> {
    let (field, m) = component(c, cap)?;
    if m.max_entry() >= 4 {
        return Ok(Outcome::ok(json!({"p": c.p, "mdeg": m, "dim": 0, "words": m.word_count()})));
    }
    let es = EchelonSystem::for_component(&m, field)?;
    let mut doc = json!({
        "p": c.p,
        "mdeg": m,
        "dim": es.quotient_dim(),
        "words": es.word_count(),
        "rank": es.rank(),
    });
    if field.is_rational() {
        doc["denominator_flag"] = json!(es.denominator_flag());
    }
    Ok(Outcome::ok(doc))
}

fn basis(c: &Component, cap: u128) -> Result<Outcome, CliError> {
    let (field, m) = component(c, cap)?;
    let es = EchelonSystem::for_component(&m, field)?;
    let b = es.minimal_basis();
    let doc = json!({"p": c.p, "mdeg": m, "dim": b.len(), "basis": b});
    Ok(Outcome::words(doc, b))
}

fn table(c: &Component) -> Result<Outcome, CliError> {
    let field = FieldSpec::new(c.p)?;
    let m = Multidegree::new(c.m.clone());
    let t = paper_table(field, &m)?;
    let doc = json!({
        "p": c.p,
        "mdeg": m,
        "source": t.source,
        "count": t.words.len(),
        "words": t.words,
    });
    Ok(Outcome::words(doc, t.words))
}

fn verify_tables(
    p: u32,
    max_norm: usize,
    d: Option<usize>,
    strict: bool,
    cap: u128,
) -> Result<Outcome, CliError> {
    let field = FieldSpec::new(p)?;
    let d = d.unwrap_or(max_norm);
    let (todo, skipped): (Vec<Multidegree>, Vec<Multidegree>) = (1..=max_norm)
        .flat_map(|n| profiles(n, d))
        .partition(|m| m.word_count() <= cap);
    let checks = todo
        .par_iter()
        .map(|m| check_table(field, m))
        .collect::<Result<Vec<_>, _>>()?;
    let checked = checks.len();
    let failures: Vec<Value> = checks
        .iter()
        .filter(|c| !c.is_basis)
        .map(|c| json!({"mdeg": c.mdeg, "dim": c.dim, "table": c.table.len()}))
        .collect();
    let not_minimal: Vec<&Multidegree> = checks
        .iter()
        .filter(|c| !c.equals_minimal_basis)
        .map(|c| &c.mdeg)
        .collect();
    let passed = failures.is_empty() && (!strict || not_minimal.is_empty());
    let doc = json!({
        "p": p,
        "max_norm": max_norm,
        "checked": checked,
        "skipped": skipped,
        "failures": failures,
        "not_lex_least": not_minimal,
        "strict": strict,
        "passed": passed,
    });
    Ok(Outcome::check(doc, passed))
}

fn composition(a: &Alphabet) -> Result<Outcome, CliError> {
    if !(5..=MAX_LIFT_DEGREE).contains(&a.d) {
        return Err(CliError::Usage(format!("-d must lie in 5..={MAX_LIFT_DEGREE}")));
    }
    let m = build_Md(a.p, a.d)?;
    let basis = m.basis_words();
    let expected = B1d(a.p, a.d)?.words;
    let complete = m.is_complete_under_composition();
    let mut doc = json!({
        "p": a.p,
        "d": a.d,
        "rows": m.len(),
        "basis": basis,
        "matches_B1d": basis == expected,
        "complete": complete,
    });
    let mut passed = complete && basis == expected;
    if a.d <= 6 {
        let pc = cross_check_patterns(&m)?;
        passed &= pc.mismatches.is_empty();
        doc["patterns"] = json!({"words_checked": pc.words_checked, "mismatches": pc.mismatches});
    }
    doc["passed"] = json!(passed);
    Ok(Outcome {
        doc,
        words: Some(basis),
        passed,
    })
}

fn certify(a: &Alphabet, long: bool) -> Result<Outcome, CliError> {
    let top = if long { 10 } else { 8 };
    if !(5..=top).contains(&a.d) {
        return Err(CliError::Usage(format!("-d must lie in 5..={top}")));
    }
    let chain = certify_chain(a.p, a.d)?;
    let last = chain.last().expect("chain starts at 5");
    let passed = last.d == a.d && last.independent;
    let doc = json!({
        "p": a.p,
        "d": a.d,
        "independent": passed,
        "method": last.method,
        "chain": chain,
    });
    Ok(Outcome::check(doc, passed))
}

fn nilpotency(a: &Alphabet, formula: bool, cap: u128) -> Result<Outcome, CliError> {
    if formula {
        let r = formula_report(a.p, a.d)?;
        return Ok(Outcome::ok(serde_json::to_value(r).expect("plain data")));
    }
    let r = C_compute(a.p, a.d, cap)?;
    let closed = C_formula(a.p, a.d).ok();
    let passed = closed.is_none_or(|c| c == r.c);
    let mut doc = serde_json::to_value(&r).expect("plain data");
    doc["formula"] = json!(closed);
    Ok(Outcome::check(doc, passed))
}

fn gens(a: &Alphabet, count_only: bool, draws: usize, seed: u64) -> Result<Outcome, CliError> {
    let g = full_system(a.p, a.d)?;
    let by_degree: serde_json::Map<String, Value> = g
        .by_degree()
        .into_iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    let mut doc = json!({
        "p": a.p,
        "d": a.d,
        "total": g.total(),
        "by_degree": by_degree,
        "max_degree": g.max_degree(),
        "degree_bound": degree_bound(a.p, a.d),
    });
    if !count_only {
        let list: Vec<Value> = g
            .groups
            .iter()
            .flat_map(|(m, gs)| gs.iter().map(move |x| json!({"mdeg": m, "generator": x})))
            .collect();
        doc["generators"] = json!(list);
    }
    if draws > 0 {
        let field = FieldSpec::new(a.p)?;
        let mut suspicious = Vec::new();
        for x in g.generators() {
            if !nonvanishing(x, field, a.d, draws, seed)? {
                suspicious.push(json!(x));
            }
        }
        doc["vanishing_on_samples"] = json!(suspicious);
    }
    Ok(Outcome::ok(doc))
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let cap = cli.max_words;
    match &cli.command {
        Command::Dim(c) => dim(c, cap),
        Command::Basis(c) => basis(c, cap),
        Command::Table(c) => table(c),
        Command::Verify {
            what: VerifyTarget::Tables { p, max_norm, d, strict },
        } => verify_tables(*p, *max_norm, *d, *strict, cap),
        Command::Composition(a) => composition(a),
        Command::Certify { a, long } => certify(a, *long),
        Command::Nilpotency { a, formula } => nilpotency(a, *formula, cap),
        Command::Gens { a, count_only, draws, seed } => gens(a, *count_only, *draws, *seed),
    }
}

/// Runs one invocation; returns the exit code and the text for standard
/// output (on success) or standard error (on usage errors).
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        pool = pool.num_threads(n);
    }
    let result = pool
        .build()
        .map_err(|e| CliError::Threads(e.to_string()))
        .and_then(|pool| pool.install(|| dispatch(&cli)));
    match result {
        Ok(out) => {
            let code = if out.passed { EXIT_OK } else { EXIT_FAILED };
            let text = match (cli.format, &out.words) {
                (Format::Csv, Some(words)) => csv(words),
                _ => {
                    let mut s = serde_json::to_string_pretty(&with_schema(out.doc))
                        .expect("plain data");
                    s.push('\n');
                    s
                }
            };
            (code, text)
        }
        Err(e) => (EXIT_USAGE, format!("error: {e}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn json_of(args: &[&str]) -> (i32, Value) {
        let (code, out) = run(std::iter::once("nilcube").chain(args.iter().copied()));
        (code, serde_json::from_str(&out).unwrap_or(Value::Null))
    }

    #[test]
    fn dim_of_three_three() {
        let (code, v) = json_of(&["dim", "-p", "3", "-m", "3,3"]);
        assert_eq!(code, 0);
        assert_eq!(v["dim"], 1);
        assert_eq!(v["schema"], 1);
    }

    #[test]
    fn nilpotency_p2_d4() {
        let (code, v) = json_of(&["nilpotency", "-p", "2", "-d", "4"]);
        assert_eq!(code, 0);
        assert_eq!(v["C"], 7);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(["nilcube", "dim", "-p", "4", "-m", "1,1"]).0, EXIT_USAGE);
        assert_eq!(run(["nilcube", "frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run(["nilcube", "composition", "-p", "2", "-d", "12"]).0, EXIT_USAGE);
    }

    #[test]
    fn csv_basis() {
        let (code, out) = run(["nilcube", "--format", "csv", "basis", "-p", "0", "-m", "2,1"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("index,word\n0,1 1 2\n"));
    }

    #[test]
    fn deterministic_output() {
        let args = ["nilcube", "gens", "-p", "0", "-d", "2", "--draws", "5", "--seed", "3"];
        assert_eq!(run(args), run(args));
    }
}
