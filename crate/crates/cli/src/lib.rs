//! `exclcs` command-line front end.
//!
//! Exit codes: 0 success (or solver and oracle agree), 1 disagreement,
//! 2 runtime error, 64 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;

use exclcs::automaton::{normalize, ExclusionAutomaton};
use exclcs::bench::time_instance;
use exclcs::gen::{bench_instance, generate, GenParams};
use exclcs::oracle::oracle_lcs_excluding;
use exclcs::solver::{solve_table, solve_with, Mode, SolveResult};

pub mod ingest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

impl From<exclcs::Error> for CliError {
    fn from(e: exclcs::Error) -> Self {
        match e {
            exclcs::Error::InvalidParameter(_) => CliError::Usage(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "exclcs", version, about = "Longest common subsequence avoiding forbidden substrings")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance.
    Solve(SolveArgs),
    /// Solve an instance and check the length against brute force.
    Oracle(OracleArgs),
    /// Write a reproducible random instance.
    Gen(GenArgs),
    /// Time the length-only solver over generated instances, as CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("x_input").required(true).args(["x", "x_str"])))]
#[command(group(ArgGroup::new("y_input").required(true).args(["y", "y_str"])))]
struct InstanceArgs {
    /// File holding X
    #[arg(long = "x", value_name = "FILE")]
    x: Option<PathBuf>,
    /// X given inline
    #[arg(long = "x-str", value_name = "S", allow_hyphen_values = true)]
    x_str: Option<OsString>,
    /// File holding Y
    #[arg(long = "y", value_name = "FILE")]
    y: Option<PathBuf>,
    /// Y given inline
    #[arg(long = "y-str", value_name = "S", allow_hyphen_values = true)]
    y_str: Option<OsString>,
    /// Constraint file, one pattern per line
    #[arg(long, value_name = "FILE")]
    constraints: Option<PathBuf>,
    /// Constraint pattern given inline (repeatable)
    #[arg(long = "p-str", value_name = "S", allow_hyphen_values = true)]
    p_str: Vec<OsString>,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

impl InstanceArgs {
    fn load(&self) -> Result<ingest::Instance, CliError> {
        let (x, x_source) = ingest::sequence(self.x.as_ref(), self.x_str.as_ref())?;
        let (y, y_source) = ingest::sequence(self.y.as_ref(), self.y_str.as_ref())?;
        let mut patterns = match &self.constraints {
            Some(path) => ingest::read_patterns(path)?,
            None => Vec::new(),
        };
        patterns.extend(self.p_str.iter().map(ingest::os_bytes));
        Ok(ingest::Instance {
            x,
            y,
            patterns,
            x_source,
            y_source,
            pattern_source: self.constraints.clone(),
        })
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Report the length only (two-row DP, no witness)
    #[arg(long)]
    length_only: bool,
    /// Write the automaton as JSON to stderr
    #[arg(long)]
    dump_automaton: bool,
    /// Write the automaton and the full DP cube as JSON to stderr (unstable)
    #[arg(long, conflicts_with = "length_only")]
    dump_table: bool,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[command(flatten)]
    instance: InstanceArgs,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    n: usize,
    #[arg(long, default_value_t = 20)]
    m: usize,
    /// Number of distinct characters, drawn from 'a'..
    #[arg(long, default_value_t = 4)]
    alphabet: usize,
    #[arg(long, default_value_t = 3)]
    num_patterns: usize,
    #[arg(long, default_value_t = 3)]
    max_pattern_len: usize,
    /// Writes PREFIX.x, PREFIX.y and PREFIX.constraints
    #[arg(long, value_name = "PREFIX")]
    out_prefix: PathBuf,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Comma-separated NxM pairs, e.g. 500x500,1000x500
    #[arg(long, default_value = "", value_parser = parse_sizes)]
    sizes: SizeList,
    /// Comma-separated total constraint lengths
    #[arg(long, default_value = "32", value_parser = parse_lengths)]
    r: LengthList,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Runs per row; the median is reported
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    #[arg(long, default_value_t = 4)]
    alphabet: usize,
    /// Length of each generated constraint pattern
    #[arg(long, default_value_t = 8)]
    pattern_len: usize,
}

#[derive(Debug, Clone)]
struct SizeList(Vec<(usize, usize)>);

#[derive(Debug, Clone)]
struct LengthList(Vec<usize>);

fn parse_sizes(s: &str) -> Result<SizeList, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|pair| {
            let (n, m) = pair
                .split_once(['x', 'X'])
                .ok_or_else(|| format!("expected NxM, got {pair:?}"))?;
            let n = n.trim().parse().map_err(|e| format!("{pair:?}: {e}"))?;
            let m = m.trim().parse().map_err(|e| format!("{pair:?}: {e}"))?;
            Ok((n, m))
        })
        .collect::<Result<_, _>>()
        .map(SizeList)
}

fn parse_lengths(s: &str) -> Result<LengthList, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|r| r.parse().map_err(|e| format!("{r:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(LengthList)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(&args, out, err),
        Command::Oracle(args) => cmd_oracle(&args, out),
        Command::Gen(args) => cmd_gen(&args, out),
        Command::Bench(args) => cmd_bench(&args, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RemovedJson {
    pub pattern: String,
    pub reason: &'static str,
}

/// JSON shape of `solve --json`.
#[derive(Debug, Serialize)]
pub struct SolveJson {
    pub length: usize,
    pub lcs: Option<String>,
    /// Hex of the witness, present only when `lcs` is not valid UTF-8.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lcs_hex: Option<String>,
    pub terminal_state: usize,
    pub removed_constraints: Vec<RemovedJson>,
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub r: usize,
    pub s: usize,
    pub elapsed_ms: f64,
}

impl From<&SolveResult> for SolveJson {
    fn from(r: &SolveResult) -> Self {
        let lcs_hex = r
            .lcs
            .as_ref()
            .filter(|z| std::str::from_utf8(z).is_err())
            .map(|z| z.iter().map(|b| format!("{b:02x}")).collect());
        SolveJson {
            length: r.length,
            lcs: r.lcs.as_ref().map(|z| String::from_utf8_lossy(z).into_owned()),
            lcs_hex,
            terminal_state: r.terminal_state,
            removed_constraints: r
                .removed
                .iter()
                .map(|rm| RemovedJson {
                    pattern: String::from_utf8_lossy(&rm.pattern).into_owned(),
                    reason: rm.reason.as_str(),
                })
                .collect(),
            n: r.stats.n,
            m: r.stats.m,
            d: r.stats.d,
            r: r.stats.r,
            s: r.stats.s,
            elapsed_ms: r.stats.elapsed.as_secs_f64() * 1e3,
        }
    }
}

fn cmd_solve(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let inst = args.instance.load()?;
    let start = std::time::Instant::now();
    let cs = normalize(&inst.patterns)?;
    let automaton = ExclusionAutomaton::new(&cs);
    let mode = if args.length_only { Mode::LengthOnly } else { Mode::Witness };
    let mut result = solve_with(&inst.x, &inst.y, &cs, &automaton, mode)?;
    result.stats.elapsed = start.elapsed();

    if args.dump_table {
        let table = solve_table(&inst.x, &inst.y, &automaton)?;
        let dump = serde_json::json!({ "automaton": automaton.dump(), "f": table.to_nested() });
        writeln!(err, "{}", serde_json::to_string_pretty(&dump).expect("serializable"))?;
    } else if args.dump_automaton {
        writeln!(err, "{}", serde_json::to_string_pretty(&automaton.dump()).expect("serializable"))?;
    }

    if args.instance.json {
        writeln!(out, "{}", serde_json::to_string(&SolveJson::from(&result)).expect("serializable"))?;
    } else {
        writeln!(out, "length: {}", result.length)?;
        if let Some(lcs) = &result.lcs {
            out.write_all(b"lcs: ")?;
            out.write_all(lcs)?;
            out.write_all(b"\n")?;
        }
        for rm in &result.removed {
            out.write_all(b"removed: ")?;
            out.write_all(&rm.pattern)?;
            writeln!(out, " ({})", rm.reason.as_str())?;
        }
    }
    Ok(EXIT_OK)
}

/// Report of `oracle`: the solver result next to the brute-force length.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub result: SolveJson,
    pub oracle_length: Option<usize>,
    pub agreement: Option<bool>,
}

/// The verdict line and exit code for a solver/oracle comparison.
pub fn oracle_verdict(solver: usize, oracle: usize) -> (String, i32) {
    if solver == oracle {
        (format!("solver: {solver}, oracle: {oracle}, AGREE"), EXIT_OK)
    } else {
        (format!("solver: {solver}, oracle: {oracle}, DISAGREE"), EXIT_DISAGREE)
    }
}

fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let inst = args.instance.load()?;
    let cs = normalize(&inst.patterns)?;
    let oracle = oracle_lcs_excluding(&inst.x, &inst.y, cs.patterns(), false)?;
    let automaton = ExclusionAutomaton::new(&cs);
    let result = solve_with(&inst.x, &inst.y, &cs, &automaton, Mode::Witness)?;
    let (line, code) = oracle_verdict(result.length, oracle.length);
    if args.instance.json {
        let report = RunReport {
            result: SolveJson::from(&result),
            oracle_length: Some(oracle.length),
            agreement: Some(code == EXIT_OK),
        };
        writeln!(out, "{}", serde_json::to_string(&report).expect("serializable"))?;
    } else {
        writeln!(out, "{line}")?;
    }
    Ok(code)
}

fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let params = GenParams {
        n: args.n,
        m: args.m,
        alphabet: args.alphabet,
        num_patterns: args.num_patterns,
        max_pattern_len: args.max_pattern_len,
    };
    let inst = generate(args.seed, &params)?;
    let path = |ext: &str| {
        let mut p = args.out_prefix.clone().into_os_string();
        p.push(ext);
        PathBuf::from(p)
    };
    let mut constraints = Vec::new();
    for p in &inst.patterns {
        constraints.extend_from_slice(p);
        constraints.push(b'\n');
    }
    for (file, bytes) in [(path(".x"), &inst.x), (path(".y"), &inst.y), (path(".constraints"), &constraints)] {
        fs::write(&file, bytes)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", file.display())))?;
        writeln!(out, "{}", file.display())?;
    }
    Ok(EXIT_OK)
}

pub const CSV_HEADER: &str = "n,m,r,s,elapsed_ms";

fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if args.repeats == 0 {
        return Err(CliError::Usage("--repeats must be at least 1".into()));
    }
    writeln!(out, "{CSV_HEADER}")?;
    for &(n, m) in &args.sizes.0 {
        for &r in &args.r.0 {
            let inst = bench_instance(args.seed, n, m, r, args.alphabet, args.pattern_len)?;
            let row = time_instance(&inst, args.repeats)?;
            writeln!(out, "{},{},{},{},{:.3}", row.n, row.m, row.r, row.s, row.elapsed_ms())?;
        }
    }
    Ok(EXIT_OK)
}
