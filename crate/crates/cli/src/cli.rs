//! Argument parsing and the six subcommands.

use std::fs::{File, OpenOptions};
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use wex_core::extract::TRACE_CSV_HEADER;
use wex_core::graph::is_simple_path_edges;
use wex_core::kpath::decide_repeated;
use wex_core::{Algorithm, BackendKind, Graph, Phases};

use crate::checks;
use crate::harness::{
    self, count_small, extract_point, generate, parse_sweep, Family, OracleSetup, WitnessCount,
    PRECHECK_REPS,
};
use crate::record::{write_csv, BenchRecord};

#[derive(Parser, Debug)]
#[command(
    name = "wex",
    version,
    about = "k-path witness extraction and benchmarks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a benchmark graph
    Gen(GenArgs),
    /// Decide whether a graph has a path on k vertices (exit 0 = YES, 1 = NO)
    Decide(DecideArgs),
    /// Find a path on k vertices
    Extract(ExtractArgs),
    /// Median-of-5 extraction sweep over n and k, as CSV
    Bench(BenchArgs),
    /// Compare the field backends in decision and extraction mode, as CSV
    Fieldtest(FieldtestArgs),
    /// Run the built-in correctness suites
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    /// Field multiplication backend: naive, lookup or clmul
    #[arg(long)]
    pub backend: Option<BackendKind>,
    /// Field exponent; defaults to 26 (naive), 7 (lookup), 64 (clmul)
    #[arg(long)]
    pub q: Option<u32>,
    /// Independent oracle runs per query; YES if any run says YES
    #[arg(long, default_value_t = 1)]
    pub reps: u32,
    /// Master seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl OracleArgs {
    fn setup(&self, default: BackendKind) -> Result<OracleSetup> {
        OracleSetup::new(self.backend.unwrap_or(default), self.q, self.reps)
    }
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// spider-unique, spider-many or random
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    /// Path length the spider is built around; for random graphs, only used
    /// to count witnesses on small inputs
    #[arg(long)]
    pub k: Option<usize>,
    /// Edge count (random family)
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file (default: stdout)
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DecideArgs {
    /// Graph file, `-` for stdin
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub oracle: OracleArgs,
    /// Append a result row to this CSV file
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExtractArgs {
    /// Graph file, `-` for stdin
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// fifo or hklr
    #[arg(long, default_value = "fifo")]
    pub algo: Algorithm,
    /// one (edges only) or two (vertices, then edges)
    #[arg(long, default_value = "two")]
    pub phases: Phases,
    #[command(flatten)]
    pub oracle: OracleArgs,
    /// Append a result row to this CSV file
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Write one CSV row per oracle query to this file
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, default_value = "spider-unique")]
    pub family: Family,
    /// Vertex counts: `1000`, `128,256,512` or `128..=2048`
    #[arg(long, default_value = "1000")]
    pub n: String,
    /// Path lengths, same syntax as --n
    #[arg(long)]
    pub k: String,
    /// Edge count (random family)
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value = "fifo")]
    pub algo: Algorithm,
    #[arg(long, default_value = "two")]
    pub phases: Phases,
    #[command(flatten)]
    pub oracle: OracleArgs,
    /// Output file (default: stdout)
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FieldtestArgs {
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 10)]
    pub k: usize,
    /// Random products timed per field; 0 skips the multiplication rows
    #[arg(long, default_value_t = 1_000_000)]
    pub mul_count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file (default: stdout)
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    /// Smaller fields and fewer trials
    #[arg(long)]
    pub quick: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Damage one lookup-table entry before the backend comparison
    #[arg(long, hide = true)]
    pub corrupt_table: bool,
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Decide(a) => cmd_decide(a),
        Command::Extract(a) => cmd_extract(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Fieldtest(a) => cmd_fieldtest(a),
        Command::Selftest(a) => Ok(cmd_selftest(a)),
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let g = if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Graph::parse_str(&text)?
    } else {
        let f = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
        Graph::parse(BufReader::new(f)).with_context(|| format!("in {}", path.display()))?
    };
    Ok(g)
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Append rows, writing the seed comment and header first if the file is
/// new or empty.
fn append_rows(path: &Path, seed: u64, rows: &[BenchRecord]) -> Result<()> {
    let fresh = std::fs::metadata(path)
        .map(|m| m.len() == 0)
        .unwrap_or(true);
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("cannot open {}", path.display()))?;
    if fresh {
        write_csv(file, seed, rows)?;
    } else {
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(file);
        for r in rows {
            w.serialize(r)?;
        }
        w.flush()?;
    }
    Ok(())
}

fn cmd_gen(a: GenArgs) -> Result<ExitCode> {
    let k = match (a.family, a.k) {
        (Family::Random, k) => k.unwrap_or(0),
        (_, Some(k)) => k,
        (f, None) => anyhow::bail!("family {f} needs --k"),
    };
    let inst = generate(a.family, a.n, k, a.m, a.seed)?;
    let mut out = output(a.output.as_deref())?;
    inst.graph.write_to(&mut out)?;
    out.flush()?;
    let witnesses = match inst.witnesses {
        WitnessCount::Unknown if k > 0 => count_small(&inst.graph, k),
        w => w,
    };
    eprintln!(
        "generated {} graph: n = {}, m = {}; {k}-path witnesses: {witnesses}",
        a.family,
        inst.graph.n(),
        inst.graph.m()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_decide(a: DecideArgs) -> Result<ExitCode> {
    let setup = a.oracle.setup(BackendKind::Naive)?;
    let graph = read_graph(&a.input)?;
    let (verdict, rec) = harness::run_decide(&graph, a.k, &setup, a.oracle.seed)?;
    println!(
        "answer {}",
        if verdict.answer.is_yes() { "YES" } else { "NO" }
    );
    println!("field_ops {}", rec.field_ops);
    println!("wall_time_ms {:.3}", rec.wall_time_ms);
    if let Some(p) = &a.csv {
        append_rows(p, a.oracle.seed, &[rec])?;
    }
    Ok(if verdict.answer.is_yes() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_extract(a: ExtractArgs) -> Result<ExitCode> {
    let setup = a.oracle.setup(BackendKind::Lookup)?;
    let graph = read_graph(&a.input)?;

    let pre = OracleSetup::new(setup.kind, Some(setup.q), setup.reps.max(PRECHECK_REPS))?;
    let mut pre_ctx = pre.context(a.k, !a.oracle.seed)?;
    if !decide_repeated(&graph, &mut pre_ctx).answer.is_yes() {
        println!("no witness");
        return Ok(ExitCode::from(1));
    }

    let (out, rec) = harness::run_extract(&graph, a.k, a.algo, a.phases, &setup, a.oracle.seed)?;
    anyhow::ensure!(
        a.k == 1 || is_simple_path_edges(&graph, &out.witness.edge_set, a.k),
        "extracted edge set is not a {}-path",
        a.k
    );
    println!("{}", out.witness);
    println!("queries {}", rec.queries);
    println!("field_ops {}", rec.field_ops);
    println!("wall_time_ms {:.3}", rec.wall_time_ms);
    println!("verified {}", rec.verified);
    if let Some(p) = &a.csv {
        append_rows(p, a.oracle.seed, &[rec])?;
    }
    if let Some(p) = &a.trace {
        let mut w = output(Some(p))?;
        writeln!(w, "{TRACE_CSV_HEADER}")?;
        if let Some(t) = &out.vertex_trace {
            t.write_csv("vertex", &mut w)?;
        }
        if let Some(t) = &out.edge_trace {
            t.write_csv("edge", &mut w)?;
        }
        w.flush()?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(a: BenchArgs) -> Result<ExitCode> {
    let setup = a.oracle.setup(BackendKind::Lookup)?;
    let ns = parse_sweep(&a.n).map_err(anyhow::Error::msg)?;
    let ks = parse_sweep(&a.k).map_err(anyhow::Error::msg)?;
    let mut rows = Vec::new();
    for &n in &ns {
        for &k in &ks {
            let inst = generate(a.family, n, k, a.m, a.oracle.seed)?;
            rows.extend(extract_point(
                &inst.graph,
                k,
                a.algo,
                a.phases,
                &setup,
                a.oracle.seed,
            ));
        }
    }
    let mut out = output(a.output.as_deref())?;
    write_csv(&mut out, a.oracle.seed, &rows)?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_fieldtest(a: FieldtestArgs) -> Result<ExitCode> {
    let rows = harness::fieldtest(a.n, a.k, a.seed, a.mul_count)?;
    let mut out = output(a.output.as_deref())?;
    write_csv(&mut out, a.seed, &rows)?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest(a: SelftestArgs) -> ExitCode {
    let quick = a.quick;
    let seed = a.seed;
    let scale = |full: usize, small: usize| if quick { small } else { full };
    type Suite<'a> = Box<dyn Fn() -> checks::CheckResult + 'a>;
    let suites: Vec<(&str, Suite<'_>)> = vec![
        (
            "field-axioms",
            Box::new(move || checks::field_axioms(if quick { 1..=5 } else { 1..=8 })),
        ),
        (
            "backend-equivalence",
            Box::new(move || {
                checks::backend_equivalence(
                    if quick { 7 } else { 8 },
                    scale(100_000, 5_000),
                    scale(1_000_000, 20_000),
                    a.corrupt_table,
                    seed,
                )?;
                checks::pentanomial_reduction(scale(1_000_000, 20_000), seed)
            }),
        ),
        (
            "oracle-soundness",
            Box::new(move || {
                checks::dp_certification(scale(100, 20), seed)?;
                checks::soundness(scale(200, 20), 5, scale(40, 16), 7, seed)?;
                checks::completeness(scale(200, 20), 20, scale(16, 10), 7, seed)
            }),
        ),
        (
            "query-bounds",
            Box::new(move || {
                checks::bisect_bound(scale(100, 32), &[64, 256, 1024, 4096], 8, seed)?;
                checks::las_vegas_bound(scale(200, 20), 1024, 8, 0.25, seed)
            }),
        ),
    ];
    let mut failed = 0;
    for (name, suite) in &suites {
        match suite() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} suites passed",
        suites.len() - failed,
        suites.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
