use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand};
use serde::Deserialize;

use mcsdetect_core::corpus::{reproduce_table, TableId};
use mcsdetect_core::numeric::SearchConfig;
use mcsdetect_core::report::{analyze, AnalyzeOptions};
use mcsdetect_core::{Dimension, GbsSet, VerdictOptions};

mod output;

#[derive(Parser)]
#[command(name = "mcsdetect", version, about = "Detectors and one-way LOCC verdicts for generalized Bell state sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one set of generalized Bell states.
    Analyze(AnalyzeArgs),
    /// Regenerate the embedded reference tables and diff them.
    Tables(TablesArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Local dimension d.
    #[arg(long, required_unless_present = "file", conflicts_with = "file")]
    d: Option<u32>,
    /// Set as semicolon-separated "m,n" pairs, e.g. "0,0;1,0;0,1".
    #[arg(long, required_unless_present = "file", conflicts_with = "file")]
    set: Option<String>,
    /// JSON document {"d": 4, "set": [[0,0],[1,0]]}.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Build the verdict's witness states and check the protocol numerically.
    #[arg(long)]
    verify: bool,
    /// Run the feasibility optimizer.
    #[arg(long)]
    search: bool,
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    /// Iterations per restart.
    #[arg(long, default_value_t = 2000)]
    iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Feasibility tolerance.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Treat sets of at most three states as distinguishable.
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    assume_small_sets: bool,
    /// Emit the report as JSON.
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit the report as a CSV header and one row.
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct TablesArgs {
    /// Table id (I..VI) or "all".
    #[arg(long, default_value = "all")]
    id: String,
    /// One JSON diff record per table.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(mcsdetect_core::Error),
    #[error("{0} table(s) differ from the reference")]
    TableDiff(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            CliError::TableDiff(_) => 4,
        }
    }
}

impl From<mcsdetect_core::Error> for CliError {
    fn from(e: mcsdetect_core::Error) -> Self {
        use mcsdetect_core::Error as E;
        match e {
            E::Parse(msg) => CliError::Parse(msg),
            E::UnknownTable(_) => CliError::Parse(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}

#[derive(Deserialize)]
struct SetFile {
    d: u32,
    set: Vec<[i64; 2]>,
}

fn load_set(args: &AnalyzeArgs) -> Result<GbsSet, CliError> {
    if let Some(path) = &args.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        let doc: SetFile = serde_json::from_str(&text)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        let d = Dimension::new(doc.d)?;
        let pairs: Vec<(i64, i64)> = doc.set.iter().map(|p| (p[0], p[1])).collect();
        return Ok(GbsSet::from_pairs(d, &pairs)?);
    }
    let d = Dimension::new(args.d.expect("clap enforces --d"))?;
    Ok(GbsSet::parse(d, args.set.as_deref().expect("clap enforces --set"))?)
}

fn run_analyze(args: &AnalyzeArgs) -> Result<(), CliError> {
    let set = load_set(args)?;
    let opts = AnalyzeOptions {
        verdict: VerdictOptions {
            assume_small_sets: args.assume_small_sets,
        },
        verify: args.verify,
        search: args.search.then_some(SearchConfig {
            restarts: args.restarts,
            iterations: args.iters,
            seed: args.seed,
            tolerance: args.tol,
        }),
        seed: args.seed,
    };
    let report = analyze(&set, &opts)?;
    let text = if args.json {
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    } else if args.csv {
        output::csv(&report)
    } else {
        output::text(&report)
    };
    print!("{text}");
    Ok(())
}

fn run_tables(args: &TablesArgs) -> Result<(), CliError> {
    let ids: Vec<TableId> = if args.id.trim().eq_ignore_ascii_case("all") {
        TableId::ALL.to_vec()
    } else {
        vec![args.id.parse()?]
    };
    let mut failed = 0;
    for id in ids {
        let diff = reproduce_table(id)?;
        if !diff.is_empty() {
            failed += 1;
        }
        if args.json {
            println!("{}", serde_json::to_string(&diff).expect("diff serializes"));
        } else {
            print!("{}", output::table_diff(&diff));
        }
    }
    if failed > 0 {
        return Err(CliError::TableDiff(failed));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(a) => run_analyze(a),
        Command::Tables(t) => run_tables(t),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mcsdetect: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
