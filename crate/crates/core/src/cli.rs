//! Command-line front end behind the `crn` binary.
//!
//! Verbs: `classify`, `compare`, `realize`, `odes`, `random`. Exit codes are
//! the same for every verb: 0 when the answer is affirmative, 1 when it is
//! negative or a precondition fails, 2 on input errors.
//!
//! With `--json` each verb prints a report
//! `{"schema_version": "1", "command": ..., "inputs": [{"path", "sha256"}], "result": ...}`.
//! Witnesses inside `result` deserialize back into the library types and
//! recheck against the input files.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::classify::{classify, ClassificationReport};
use crate::egraph::{EGraph, RateAssignment};
use crate::equivalence::{capacity_for_equivalence, dynamics_included};
use crate::error::Error;
use crate::massaction::generate_field;
use crate::parser::{default_species, parse, union_species, NetworkDocument};
use crate::random::{random_rates, random_with_requirements, Requirement};
use crate::rational::{parse_rational, Q};
use crate::realize::{eliminate_zero_sources, ewr_realize_2d, make_source_only_with_rates, RealizationResult};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Parser)]
#[command(name = "crn", version, about = "Exact reaction network classification, comparison and realization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Emit a JSON report.
    #[arg(long)]
    json: bool,
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structural flags with witnesses. Several files are classified in parallel.
    Classify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Exit 1 unless FLAG has value BOOL, e.g. `strongly_endotactic=true`.
        #[arg(long, value_name = "FLAG=BOOL")]
        expect: Vec<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Dynamics inclusion (A's dynamics contained in B's) or capacity for equivalence.
    Compare {
        #[arg(long, conflicts_with = "capacity", required_unless_present = "capacity")]
        includes: bool,
        #[arg(long)]
        capacity: bool,
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Builds a realization and prints it as a network file.
    #[command(group = ArgGroup::new("which").required(true))]
    Realize {
        #[arg(long, group = "which")]
        source_only: bool,
        #[arg(long, group = "which")]
        wr_eliminate: bool,
        #[arg(long, group = "which")]
        ewr2d: bool,
        file: PathBuf,
        /// Rates in edge order, each `value` or `label=value`.
        #[arg(long)]
        rates: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Prints the mass-action ODEs.
    Odes {
        file: PathBuf,
        #[arg(long)]
        rates: Option<String>,
        #[arg(long)]
        latex: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Seeded random network satisfying the requested flags.
    Random {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 4)]
        sources: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_parser = parse_requirement)]
        require: Vec<Requirement>,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[command(flatten)]
        output: Output,
    },
}

fn parse_requirement(s: &str) -> Result<Requirement, String> {
    serde_json::from_value(Value::String(s.into())).map_err(|_| {
        "expected one of reversible, weakly-reversible, source-only, consistent, endotactic, \
         strongly-endotactic, extremally-weakly-reversible, boundary-sources"
            .to_string()
    })
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
    error: Option<Error>,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into(), error: None }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: format!("{} ({})", e, error_kind(&e)), error: Some(e) }
    }
}

/// Variant name of a library error, e.g. `InteriorSourcePresent`.
pub fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

/// 1 for failed preconditions and negative outcomes, 2 for malformed input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotEndotactic
        | Error::NotWeaklyReversible
        | Error::NotStronglyEndotactic
        | Error::WrongDimension { .. }
        | Error::WrongStoichiometricDimension { .. }
        | Error::InteriorSourcePresent(_)
        | Error::ExponentNotASource(_)
        | Error::NoPositiveSolution(_)
        | Error::ReplacementInfeasible(_)
        | Error::EmptyExtremalSet
        | Error::PostconditionFailed(_)
        | Error::InternalInvariantBroken(_)
        | Error::RejectionBudgetExceeded(_) => 1,
        _ => 2,
    }
}

type Outcome = Result<i32, Failure>;

struct Input {
    path: PathBuf,
    text: String,
}

impl Input {
    fn read(path: &Path) -> Result<Self, Failure> {
        let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        Ok(Input { path: path.to_path_buf(), text })
    }

    fn digest(&self) -> Value {
        json!({ "path": self.path.display().to_string(), "sha256": hex::encode(Sha256::digest(self.text.as_bytes())) })
    }

    fn document(&self) -> Result<NetworkDocument, Failure> {
        parse(&self.text).map_err(|e| Failure::input(format!("{}: {e}", self.path.display())))
    }
}

fn report(command: &str, inputs: &[&Input], result: impl Serialize) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs.iter().map(|i| i.digest()).collect::<Vec<_>>(),
        "result": result,
    })
}

fn emit(output: &Output, out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::input(e.to_string())),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

/// Rates in edge order from `value` or `label=value` entries separated by commas.
fn parse_rate_list(s: &str) -> Result<Vec<Q>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let value = t.rsplit_once('=').map_or(t, |(_, v)| v).trim();
            parse_rational(value).ok_or_else(|| Failure::input(format!("bad rate `{t}`")))
        })
        .collect()
}

fn graph_of(input: &Input, rates: Option<&str>) -> Result<(NetworkDocument, EGraph, Option<RateAssignment>), Failure> {
    let mut doc = input.document()?;
    if let Some(r) = rates {
        doc.apply_rates(&parse_rate_list(r)?)?;
    }
    let (g, k) = doc.to_egraph().map_err(|e| Failure::input(format!("{}: {e}", input.path.display())))?;
    Ok((doc, g, k))
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let json = match &cli.command {
        Command::Classify { output, .. }
        | Command::Compare { output, .. }
        | Command::Realize { output, .. }
        | Command::Odes { output, .. }
        | Command::Random { output, .. } => output.json,
    };
    let command = command_name(&cli.command);
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            if json && f.code == 1 {
                if let Some(e) = &f.error {
                    let v = json!({
                        "schema_version": SCHEMA_VERSION,
                        "command": command,
                        "error": { "kind": error_kind(e), "message": e.to_string() },
                    });
                    let _ = out.write_all(pretty(&v).as_bytes());
                }
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Classify { .. } => "classify",
        Command::Compare { .. } => "compare",
        Command::Realize { .. } => "realize",
        Command::Odes { .. } => "odes",
        Command::Random { .. } => "random",
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Classify { files, expect, output } => cmd_classify(&files, &expect, &output, out, err),
        Command::Compare { includes, a, b, output, .. } => cmd_compare(&a, &b, includes, &output, out),
        Command::Realize { source_only, wr_eliminate, file, rates, output, .. } => {
            let which = if source_only {
                Which::SourceOnly
            } else if wr_eliminate {
                Which::WrEliminate
            } else {
                Which::Ewr2d
            };
            cmd_realize(&file, which, rates.as_deref(), &output, out)
        }
        Command::Odes { file, rates, latex, output } => cmd_odes(&file, rates.as_deref(), latex, &output, out),
        Command::Random { dim, sources, seed, require, budget, output } => {
            cmd_random(dim, sources, seed, &require, budget, &output, out)
        }
    }
}

const FLAGS: [&str; 7] = [
    "reversible",
    "weakly_reversible",
    "source_only",
    "consistent",
    "endotactic",
    "strongly_endotactic",
    "extremally_weakly_reversible",
];

fn flag_value(r: &ClassificationReport, flag: &str) -> Option<bool> {
    Some(match flag {
        "reversible" => r.reversible,
        "weakly_reversible" => r.weakly_reversible,
        "source_only" => r.source_only,
        "consistent" => r.consistent,
        "endotactic" => r.endotactic,
        "strongly_endotactic" => r.strongly_endotactic,
        "extremally_weakly_reversible" => r.extremally_weakly_reversible,
        _ => return None,
    })
}

fn parse_expectations(expect: &[String]) -> Result<Vec<(String, bool)>, Failure> {
    expect
        .iter()
        .map(|e| {
            let (flag, value) = e.split_once('=').ok_or_else(|| Failure::input(format!("bad expectation `{e}`")))?;
            let flag = flag.trim().replace('-', "_");
            let value = match value.trim() {
                "true" => true,
                "false" => false,
                _ => return Err(Failure::input(format!("bad expectation `{e}`"))),
            };
            if !FLAGS.contains(&flag.as_str()) {
                return Err(Failure::input(format!("unknown flag `{flag}`")));
            }
            Ok((flag, value))
        })
        .collect()
}

fn human_classification(path: &Path, r: &ClassificationReport) -> String {
    let mut s = format!("{}\n", path.display());
    for flag in FLAGS {
        s += &format!("  {flag}: {}\n", flag_value(r, flag).expect("known flag"));
    }
    if let Some(v) = &r.endotactic_violation {
        s += &format!("  endotactic violation: w = {}, edge {}\n", v.w, v.edge);
    } else if let Some(v) = &r.strong_violation {
        s += &format!("  strong violation: w = {}, edge {}\n", v.w, v.edge);
    }
    s
}

fn cmd_classify(
    files: &[PathBuf],
    expect: &[String],
    output: &Output,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let expectations = parse_expectations(expect)?;
    let results: Vec<Result<(Input, ClassificationReport), Failure>> = std::thread::scope(|scope| {
        let handles: Vec<_> = files
            .iter()
            .map(|path| {
                scope.spawn(move || {
                    let input = Input::read(path)?;
                    let (_, g, _) = graph_of(&input, None)?;
                    let r = classify(&g);
                    Ok((input, r))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("classifier thread panicked")).collect()
    });

    let mut text = String::new();
    let mut code = 0;
    for res in results {
        match res {
            Ok((input, r)) => {
                if output.json {
                    let v = report("classify", &[&input], &r);
                    if files.len() == 1 {
                        text += &pretty(&v);
                    } else {
                        text += &(serde_json::to_string(&v).expect("report serializes") + "\n");
                    }
                } else {
                    text += &human_classification(&input.path, &r);
                }
                for (flag, want) in &expectations {
                    let got = flag_value(&r, flag).expect("validated flag");
                    if got != *want {
                        let _ = writeln!(err, "{}: expected {flag}={want}, got {got}", input.path.display());
                        code = code.max(1);
                    }
                }
            }
            Err(f) => {
                let _ = writeln!(err, "error: {}", f.message);
                code = 2;
            }
        }
    }
    emit(output, out, &text)?;
    Ok(code)
}

fn cmd_compare(a: &Path, b: &Path, includes: bool, output: &Output, out: &mut dyn Write) -> Outcome {
    let (ia, ib) = (Input::read(a)?, Input::read(b)?);
    let (da, db) = (ia.document()?, ib.document()?);
    let species = union_species([&da, &db]);
    let over = |d: &NetworkDocument, i: &Input| {
        d.to_egraph_over(&species, false)
            .map(|(g, _)| g)
            .map_err(|e| Failure::input(format!("{}: {e}", i.path.display())))
    };
    let (ga, gb) = (over(&da, &ia)?, over(&db, &ib)?);
    let (holds, text, v) = if includes {
        let r = dynamics_included(&ga, &gb)?;
        let mut text = format!(
            "dynamics of {} included in {}: {}\n",
            a.display(),
            b.display(),
            r.holds
        );
        if let (Some(s), Some(reason)) = (&r.failing_source, r.failing_reason) {
            text += &format!("  fails at source {s}: {reason:?}\n");
        }
        let v = report("compare", &[&ia, &ib], json!({ "mode": "includes", "species": species, "report": r }));
        (r.holds, text, v)
    } else {
        let r = capacity_for_equivalence(&ga, &gb)?;
        let mut text = format!("capacity for equivalence of {} and {}: {}\n", a.display(), b.display(), r.holds);
        if let Some(f) = &r.shared_field {
            for line in f.to_text(&species) {
                text += &format!("  {line}\n");
            }
        }
        if let Some(s) = &r.failing_source {
            text += &format!("  no shared relative-interior point at source {s}\n");
        }
        let shared = r.shared_field.as_ref().map(|f| f.to_text(&species));
        let v = report(
            "compare",
            &[&ia, &ib],
            json!({ "mode": "capacity", "species": species, "report": r, "shared_field_text": shared }),
        );
        (r.holds, text, v)
    };
    emit(output, out, &if output.json { pretty(&v) } else { text })?;
    Ok(if holds { 0 } else { 1 })
}

#[derive(Clone, Copy)]
enum Which {
    SourceOnly,
    WrEliminate,
    Ewr2d,
}

fn cmd_realize(file: &Path, which: Which, rates: Option<&str>, output: &Output, out: &mut dyn Write) -> Outcome {
    let input = Input::read(file)?;
    let (doc, g, k) = graph_of(&input, rates)?;
    let (name, result): (&str, RealizationResult) = match which {
        Which::SourceOnly => ("source-only", make_source_only_with_rates(&g, k.as_ref())?),
        Which::WrEliminate => {
            let k = k.ok_or_else(|| {
                let line = doc.reactions.iter().find(|r| r.rates.is_empty()).map_or(1, |r| r.line);
                Failure::from(Error::MissingRate { line })
            })?;
            ("wr-eliminate", eliminate_zero_sources(&g, &k)?)
        }
        Which::Ewr2d => ("ewr2d", ewr_realize_2d(&g)?),
    };
    let network = NetworkDocument::from_egraph(&result.graph, &doc.species, result.rates.as_ref())?.serialize();
    let text = if output.json {
        pretty(&report(
            "realize",
            &[&input],
            json!({ "construction": name, "network": network, "realization": result }),
        ))
    } else {
        let mut s = String::new();
        for c in &result.checks {
            s += &format!("# {}: {}\n", c.name, c.holds);
        }
        s + &network
    };
    emit(output, out, &text)?;
    Ok(if result.all_checks_hold() { 0 } else { 1 })
}

fn cmd_odes(file: &Path, rates: Option<&str>, latex: bool, output: &Output, out: &mut dyn Write) -> Outcome {
    let input = Input::read(file)?;
    let mut doc = input.document()?;
    if let Some(r) = rates {
        doc.apply_rates(&parse_rate_list(r)?)?;
    }
    let (g, k) = doc.to_egraph_with_rates()?;
    let f = generate_field(&g, &k)?;
    let lines = if latex { f.to_latex(&doc.species) } else { f.to_text(&doc.species) };
    let text = if output.json {
        pretty(&report("odes", &[&input], json!({ "species": doc.species, "field": f, "lines": lines })))
    } else {
        lines.join("\n") + "\n"
    };
    emit(output, out, &text)?;
    Ok(0)
}

fn cmd_random(
    dim: usize,
    sources: usize,
    seed: u64,
    require: &[Requirement],
    budget: usize,
    output: &Output,
    out: &mut dyn Write,
) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_with_requirements(&mut rng, dim, sources, require, budget)?;
    let k = random_rates(&mut rng, g.num_edges());
    let network = NetworkDocument::from_egraph(&g, &default_species(dim), Some(&k))?.serialize();
    let text = if output.json {
        pretty(&report(
            "random",
            &[],
            json!({ "seed": seed, "dim": dim, "requirements": require, "network": network, "classification": classify(&g) }),
        ))
    } else {
        network
    };
    emit(output, out, &text)?;
    Ok(0)
}
