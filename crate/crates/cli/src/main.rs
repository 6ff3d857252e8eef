//! `poisset`: inspect finite posets and the Poisson structures on their
//! incidence algebras.

mod input;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use poisset_core::io::{BracketDoc, ClassificationDoc, ElementDoc, PosetDoc, SigmaDoc};
use poisset_core::{classify, Bracket, Error, Poset, Report, RingSpec, Status};

use input::{load_bracket, load_poset, load_sigma, Failure};

#[derive(Parser, Debug)]
#[command(name = "poisset", version, about = "Poisson structures on incidence algebras of finite posets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Elements, covers, intervals, components and maximal chains.
    PosetInfo(Common),
    /// Connected components and chain components.
    Components(Common),
    /// Solve for all antisymmetric biderivations and compare with the chain components.
    Classify(Common),
    /// Check antisymmetry, both Leibniz rules and Jacobi on a bracket table.
    Verify(WithBracket),
    /// Build the bracket of a chain-constant sigma.
    FromSigma(WithSigma),
    /// Recover sigma from a Poisson bracket.
    ExtractSigma(WithBracket),
    /// Decide whether a bracket is a central multiple of the commutator.
    IsStandard(WithBracket),
    /// Check the idempotent identities on random elements.
    LemmaSuite(LemmaArgs),
    /// Hasse diagram in DOT.
    ExportDot(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Poset JSON: {"elements": [...], "covers": [[lo, hi], ...]}
    #[arg(long)]
    poset: PathBuf,
    /// Coefficient ring: Q, Z or Z/m.
    #[arg(long, default_value = "Q", value_parser = parse_ring)]
    ring: RingSpec,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct WithBracket {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    bracket: PathBuf,
    /// Take the table literally instead of completing it antisymmetrically.
    #[arg(long)]
    raw: bool,
}

#[derive(Args, Debug)]
struct WithSigma {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    sigma: PathBuf,
}

#[derive(Args, Debug)]
struct LemmaArgs {
    #[command(flatten)]
    bracket: WithBracket,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn parse_ring(s: &str) -> Result<RingSpec, String> {
    RingSpec::parse(s).map_err(|e| e.to_string())
}

/// Result of a command: the document to print and whether it records
/// violations.
struct Outcome {
    doc: Value,
    text: Option<String>,
    ok: bool,
}

impl Outcome {
    fn ok<T: Serialize>(doc: &T) -> Result<Self, Failure> {
        Ok(Outcome { doc: to_value(doc)?, text: None, ok: true })
    }

    fn report(report: &Report) -> Result<Self, Failure> {
        Ok(Outcome { doc: to_value(report)?, text: None, ok: report.passed() })
    }
}

fn to_value<T: Serialize>(doc: &T) -> Result<Value, Failure> {
    serde_json::to_value(doc).map_err(|e| Failure(format!("cannot serialise output: {e}")))
}

fn single_failure(check: &str, instance: String) -> Report {
    let mut r = Report::new();
    r.push(check, instance, Status::Fail);
    r
}

fn labels(p: &Poset, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| p.label(x).to_string()).collect()
}

fn chain_component_doc(p: &Poset) -> Vec<Vec<Value>> {
    p.chain_components()
        .classes
        .iter()
        .map(|c| c.iter().map(|s| json!({"lo": p.label(s.lo), "hi": p.label(s.hi)})).collect())
        .collect()
}

fn connected_doc(p: &Poset) -> Vec<Vec<String>> {
    p.connected_components().iter().map(|c| labels(p, c)).collect()
}

fn poset_info(c: &Common) -> Result<Outcome, Failure> {
    let p = load_poset(&c.poset)?;
    let doc = PosetDoc::from_poset(&p);
    Outcome::ok(&json!({
        "elements": doc.elements,
        "covers": doc.covers,
        "intervals": p.intervals().len(),
        "strict_pairs": p.strict_pairs().len(),
        "connected": p.is_connected(),
        "connected_components": connected_doc(&p),
        "maximal_chains": p.maximal_chains().iter().map(|m| labels(&p, m)).collect::<Vec<_>>(),
        "maximal_chain_overlap": p.maximal_chain_overlap(),
        "chain_components": p.chain_components().len(),
    }))
}

fn components(c: &Common) -> Result<Outcome, Failure> {
    let p = load_poset(&c.poset)?;
    Outcome::ok(&json!({
        "connected_components": connected_doc(&p),
        "chain_components": chain_component_doc(&p),
    }))
}

fn run_classify(c: &Common) -> Result<Outcome, Failure> {
    let p = Arc::new(load_poset(&c.poset)?);
    match classify(&p, &c.ring) {
        Ok(cl) => {
            let doc = ClassificationDoc::from_classification(&cl);
            Ok(Outcome { ok: doc.matches, ..Outcome::ok(&doc)? })
        }
        Err(Error::BijectionViolation(msg)) => Outcome::report(&single_failure("classification", msg)),
        Err(e) => Err(Failure(e.to_string())),
    }
}

fn bracket_input(a: &WithBracket) -> Result<(Arc<Poset>, Bracket), Failure> {
    let p = Arc::new(load_poset(&a.common.poset)?);
    let b = load_bracket(&a.bracket, &p, &a.common.ring, !a.raw)?;
    Ok((p, b))
}

fn verify(a: &WithBracket) -> Result<Outcome, Failure> {
    let (_, b) = bracket_input(a)?;
    Outcome::report(&b.verify_poisson())
}

fn from_sigma(a: &WithSigma) -> Result<Outcome, Failure> {
    let p = Arc::new(load_poset(&a.common.poset)?);
    let sigma = load_sigma(&a.sigma, &p, &a.common.ring)?;
    match Bracket::from_sigma(&sigma) {
        Ok(b) => Outcome::ok(&BracketDoc::from_bracket(&b)),
        Err(Error::NotChainConstant(msg)) => Outcome::report(&single_failure("chain-constant", msg)),
        Err(e) => Err(Failure(e.to_string())),
    }
}

fn extract_sigma(a: &WithBracket) -> Result<Outcome, Failure> {
    let (_, b) = bracket_input(a)?;
    match b.extract_sigma() {
        Ok(s) => Outcome::ok(&SigmaDoc::from_sigma(&s)),
        Err(Error::NotABiderivation(_)) => {
            let mut r = b.check_antisymmetric();
            r.extend(b.check_biderivation());
            Outcome::report(&r)
        }
        Err(e) => Err(Failure(e.to_string())),
    }
}

fn is_standard(a: &WithBracket) -> Result<Outcome, Failure> {
    let (_, b) = bracket_input(a)?;
    match b.is_standard() {
        Ok(Some(lambda)) => Outcome::ok(&json!({"standard": true, "lambda": ElementDoc::from_element(&lambda)})),
        Ok(None) => Outcome::ok(&json!({"standard": false, "lambda": null})),
        Err(Error::NotABiderivation(msg)) => Outcome::report(&single_failure("antisymmetric-biderivation", msg)),
        Err(e) => Err(Failure(e.to_string())),
    }
}

/// The identity suite is run even when the bracket is not a biderivation,
/// so that the report shows which identities break.
fn lemma_suite(a: &LemmaArgs) -> Result<Outcome, Failure> {
    let (_, b) = bracket_input(&a.bracket)?;
    let mut r = b.check_antisymmetric();
    r.extend(b.check_biderivation());
    r.extend(b.lemma_suite_unchecked(a.samples, a.seed));
    Outcome::report(&r)
}

fn export_dot(c: &Common) -> Result<Outcome, Failure> {
    let p = load_poset(&c.poset)?;
    let dot = p.to_dot();
    Ok(Outcome { doc: json!({"dot": dot}), text: Some(dot), ok: true })
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::PosetInfo(c) | Command::Components(c) | Command::Classify(c) | Command::ExportDot(c) => c,
        Command::Verify(a) | Command::ExtractSigma(a) | Command::IsStandard(a) => &a.common,
        Command::FromSigma(a) => &a.common,
        Command::LemmaSuite(a) => &a.bracket.common,
    }
}

fn execute(cmd: &Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::PosetInfo(c) => poset_info(c),
        Command::Components(c) => components(c),
        Command::Classify(c) => run_classify(c),
        Command::Verify(a) => verify(a),
        Command::FromSigma(a) => from_sigma(a),
        Command::ExtractSigma(a) => extract_sigma(a),
        Command::IsStandard(a) => is_standard(a),
        Command::LemmaSuite(a) => lemma_suite(a),
        Command::ExportDot(c) => export_dot(c),
    }
}

fn emit(out: &str, path: Option<&Path>) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, out).map_err(|e| Failure(format!("{}: {e}", p.display()))),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("POISSET_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| Failure(format!("POISSET_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n.max(1))
        .build_global()
        .map_err(|e| Failure(format!("thread pool: {e}")))
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    configure_threads()?;
    let outcome = execute(&cli.command)?;
    let c = common(&cli.command);
    let out = match c.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&outcome.doc).expect("values serialise")),
        Format::Text => outcome.text.unwrap_or_else(|| render::text(&outcome.doc)),
    };
    emit(&out, c.output.as_deref())?;
    Ok(outcome.ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
