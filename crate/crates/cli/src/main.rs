//! `tbtop`: characters, convergence certificates and finite abelian groups
//! from the command line.
//!
//! Exit codes: 0 success or certified, 1 malformed input, 2 refuted,
//! 3 evidence only under `--require-certified`.

mod commands;
mod parse;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use commands::{Outcome, Status};

#[derive(Parser)]
#[command(name = "tbtop", version, about = "Exact character families, convergence certificates and finite abelian group tools")]
struct Cli {
    /// Emit a JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a character at a group element.
    Eval(EvalArgs),
    /// Certify or scan h(x_n) -> 0.
    Certify(CertifyArgs),
    /// Find a character separating two points.
    Separate(SeparateArgs),
    /// Find an element telling two coordinate-sum characters apart.
    Distinguish(DistinguishArgs),
    /// Print a prefix of a sequence.
    Generate(GenerateArgs),
    /// Check sequence hypotheses.
    Validate(ValidateArgs),
    /// Smith normal form of an integer matrix.
    Snf(SnfArgs),
    /// Invariant factors and ranks of Z^g / rowspan.
    Quotient(QuotientArgs),
    /// Proper subgroups of K containing H.
    Subgroups(GroupArgs),
    /// The family H_A indexed by proper subsets of the cyclic factors of K/H.
    Thm17(GroupArgs),
    /// Extend a character from a subgroup to the whole group.
    Extend(ExtendArgs),
    /// Compare point separation with generating the whole dual.
    Dualcheck(DualcheckArgs),
}

#[derive(Args, Serialize)]
pub struct EvalArgs {
    /// Character JSON.
    #[arg(long)]
    pub character: String,
    /// Group element JSON.
    #[arg(long)]
    pub element: String,
    /// Interval width target for characters without exact values.
    #[arg(long)]
    pub precision: Option<String>,
}

#[derive(Args, Serialize)]
pub struct CertifyArgs {
    /// 5.1, 5.2, comb or scan.
    #[arg(long)]
    pub theorem: String,
    #[arg(long)]
    pub p: Option<u64>,
    /// Coefficients a_n of the factorial sequence: const:a, alt:a,b or periodic:a,...
    #[arg(long)]
    pub digits: Option<String>,
    /// fac:all, fac:args:m,..., finite:k,... or JSON; repeat for comb.
    #[arg(long = "index-set")]
    pub index_set: Vec<String>,
    /// Integer coefficients for comb, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// Sequence schema JSON.
    #[arg(long)]
    pub sequence: Option<String>,
    /// Character JSON.
    #[arg(long)]
    pub character: Option<String>,
    #[arg(long = "n-max", default_value_t = 7)]
    pub n_max: u64,
    /// Terms checked past the cutoff for 5.1.
    #[arg(long, default_value_t = 10)]
    pub window: u64,
    /// Declared bound for scan as from:bound, repeatable.
    #[arg(long)]
    pub threshold: Vec<String>,
    #[arg(long, default_value = "1/1000000")]
    pub precision: String,
    #[arg(long)]
    pub require_certified: bool,
}

#[derive(Args, Serialize)]
pub struct SeparateArgs {
    /// dsum2, dsum:p^r, int, pruefer:p, cyclic:n or an order schema JSON.
    #[arg(long)]
    pub ambient: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
}

#[derive(Args, Serialize)]
pub struct DistinguishArgs {
    #[arg(long)]
    pub ambient: String,
    #[arg(long)]
    pub h: String,
    #[arg(long)]
    pub h2: String,
    #[arg(long, default_value_t = 10_000)]
    pub bound: u64,
}

#[derive(Args, Serialize)]
pub struct GenerateArgs {
    #[arg(long)]
    pub sequence: Option<String>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub digits: Option<String>,
    #[arg(long, default_value_t = 8)]
    pub count: u64,
}

#[derive(Args, Serialize)]
pub struct ValidateArgs {
    /// 5.1 or growth.
    #[arg(long)]
    pub conditions: String,
    #[arg(long)]
    pub sequence: String,
    /// Set rule JSON for S; defaults to the schema's own avoided set.
    #[arg(long = "S")]
    pub s: Option<String>,
    #[arg(long, default_value_t = 50)]
    pub prefix: u64,
}

#[derive(Args, Serialize)]
pub struct SnfArgs {
    #[arg(long)]
    pub matrix: String,
}

#[derive(Args, Serialize)]
pub struct QuotientArgs {
    /// Relation rows as JSON.
    #[arg(long)]
    pub relations: String,
    /// Number of generators; defaults to the column count.
    #[arg(long)]
    pub gens: Option<usize>,
    /// Also report the p-primary component.
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Args, Serialize)]
pub struct GroupArgs {
    /// Cyclic moduli of K, e.g. 2,4.
    #[arg(long)]
    pub group: String,
    /// Generators of H as JSON, e.g. [[0,2]]; default H = 0.
    #[arg(long)]
    pub h: Option<String>,
}

#[derive(Args, Serialize)]
pub struct ExtendArgs {
    #[arg(long)]
    pub group: String,
    /// Values on generators of A: [[[2],"1/2"]] or {"assignments":[...]}.
    #[arg(long)]
    pub chi: String,
    /// List every extension, not only the least.
    #[arg(long)]
    pub all: bool,
}

#[derive(Args, Serialize)]
pub struct DualcheckArgs {
    #[arg(long)]
    pub group: String,
    /// Characters as value lists on the generators, e.g. [["1/2","0"]];
    /// default is the character basis.
    #[arg(long)]
    pub characters: Option<String>,
}

#[derive(Serialize)]
struct RunReport<'a> {
    command: &'a str,
    version: &'a str,
    inputs: serde_json::Value,
    outputs: serde_json::Value,
}

fn dispatch(cmd: &Command) -> (&'static str, serde_json::Value, Result<Outcome, commands::CliError>) {
    fn inputs<T: Serialize>(a: &T) -> serde_json::Value {
        serde_json::to_value(a).expect("arguments serialize")
    }
    match cmd {
        Command::Eval(a) => ("eval", inputs(a), commands::eval(a)),
        Command::Certify(a) => ("certify", inputs(a), commands::certify(a)),
        Command::Separate(a) => ("separate", inputs(a), commands::separate(a)),
        Command::Distinguish(a) => ("distinguish", inputs(a), commands::distinguish(a)),
        Command::Generate(a) => ("generate", inputs(a), commands::generate(a)),
        Command::Validate(a) => ("validate", inputs(a), commands::validate(a)),
        Command::Snf(a) => ("snf", inputs(a), commands::snf(a)),
        Command::Quotient(a) => ("quotient", inputs(a), commands::quotient(a)),
        Command::Subgroups(a) => ("subgroups", inputs(a), commands::subgroups(a)),
        Command::Thm17(a) => ("thm17", inputs(a), commands::thm17(a)),
        Command::Extend(a) => ("extend", inputs(a), commands::extend(a)),
        Command::Dualcheck(a) => ("dualcheck", inputs(a), commands::dualcheck(a)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, mut inputs, result) = dispatch(&cli.command);
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let (Some(budget), Some(map)) = (outcome.budget, inputs.as_object_mut()) {
        map.insert("budget".into(), budget.into());
    }
    let mut out = std::io::stdout().lock();
    // A closed pipe is not an error of ours.
    let _ = if cli.json {
        let report = RunReport { command: name, version: env!("CARGO_PKG_VERSION"), inputs, outputs: outcome.outputs };
        writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"))
    } else {
        write!(out, "{}", outcome.text)
    };
    match outcome.status {
        Status::Ok => ExitCode::SUCCESS,
        Status::Refuted => ExitCode::from(2),
        Status::EvidenceOnly { required: true } => ExitCode::from(3),
        Status::EvidenceOnly { required: false } => ExitCode::SUCCESS,
    }
}
