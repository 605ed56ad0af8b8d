//! `cycleshred`: generate random graphs, decompose them into cycles and
//! edges, verify decompositions and run batch experiments.
//!
//! Exit codes: 0 success, 1 semantic failure (invalid decomposition, failed
//! trials), 2 usage or I/O error.

mod experiment;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cycleshred::graph::{read_edge_list, write_edge_list};
use cycleshred::probe::{probe_properties, ProbeConfig};
use cycleshred::random::gnp;
use cycleshred::verify::verify_decomposition;
use cycleshred::{decompose, Decomposition, Graph, PipelineConfig, Seed};

#[derive(Parser)]
#[command(name = "cycleshred", version, about = "Decompose graphs into few cycles and edges")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample G(n, p) and write it as an edge list.
    Generate(GenerateArgs),
    /// Decompose an edge-list graph; exits 1 if the result fails verification.
    Decompose(DecomposeArgs),
    /// Check a decomposition against a graph; exits 1 if invalid.
    Verify(VerifyArgs),
    /// Decompose many random graphs and tabulate piece counts.
    Experiment(experiment::ExperimentArgs),
    /// Measure structural properties of random graphs.
    Probe(ProbeArgs),
}

#[derive(Args)]
struct SeedArg {
    /// Root seed for all randomness.
    #[arg(long, env = "CYCLESHRED_SEED")]
    seed: Option<u64>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[command(flatten)]
    seed: SeedArg,
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Input edge list.
    #[arg(long = "in")]
    input: PathBuf,
    /// Decomposition JSON (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run report JSON (a one-line summary goes to stderr if omitted).
    #[arg(long)]
    report: Option<PathBuf>,
    /// JSON object overriding pipeline settings.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Edge probability to dispatch on instead of the observed density.
    #[arg(long)]
    p: Option<f64>,
    #[command(flatten)]
    seed: SeedArg,
}

#[derive(Args)]
struct VerifyArgs {
    /// Graph edge list.
    #[arg(long = "in")]
    input: PathBuf,
    /// Decomposition JSON.
    #[arg(long)]
    decomposition: PathBuf,
    /// Verification report JSON (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProbeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[command(flatten)]
    seed: SeedArg,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Per-trial CSV (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Summary JSON.
    #[arg(long)]
    summary: Option<PathBuf>,
}

/// A failure with its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1.
    Semantic(String),
    /// Exit 2.
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Semantic(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

pub fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

pub type CliResult<T = ()> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Generate(a) => generate(a),
        Cmd::Decompose(a) => decompose_cmd(a),
        Cmd::Verify(a) => verify(a),
        Cmd::Experiment(a) => experiment::run(a),
        Cmd::Probe(a) => probe(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Semantic(m) | Failure::Usage(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}

/// A buffered writer to `path`, or stdout.
pub fn sink(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            Box::new(BufWriter::new(f))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn write_json<T: serde::Serialize>(path: Option<&Path>, value: &T) -> CliResult {
    let mut w = sink(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(usage)?;
    writeln!(w).and_then(|_| w.flush()).map_err(usage)
}

fn read_graph(path: &Path) -> CliResult<Graph> {
    let f = File::open(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    read_edge_list(BufReader::new(f)).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub fn load_config(path: Option<&Path>, seed: Option<u64>) -> CliResult<PipelineConfig> {
    let mut cfg = PipelineConfig::default();
    if let Some(p) = path {
        let text = std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
        cfg = cfg
            .with_overrides(&text)
            .map_err(|e| usage(format!("{}: {e}", p.display())))?;
    }
    if let Some(s) = seed {
        cfg.seed = Seed(s);
    }
    Ok(cfg)
}

pub fn set_jobs(jobs: usize) -> CliResult {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .map_err(usage)
}

fn generate(a: GenerateArgs) -> CliResult {
    let g = gnp(a.n, a.p, Seed(a.seed.seed.unwrap_or(0))).map_err(usage)?;
    let mut w = sink(a.out.as_deref())?;
    write_edge_list(&g, &mut w).map_err(usage)?;
    drop(w);
    let line = format!("m={} odd={}", g.m(), g.odd_count());
    if a.out.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
    Ok(())
}

fn decompose_cmd(a: DecomposeArgs) -> CliResult {
    let g = read_graph(&a.input)?;
    let cfg = load_config(a.config.as_deref(), a.seed.seed)?;
    if let Some(p) = a.p {
        if !(0.0..=1.0).contains(&p) {
            return Err(usage(format!("--p {p} is outside [0, 1]")));
        }
    }
    let (d, report) = decompose(&g, a.p, &cfg);
    let mut w = sink(a.out.as_deref())?;
    writeln!(w, "{}", d.to_json()).and_then(|_| w.flush()).map_err(usage)?;
    drop(w);
    match &a.report {
        Some(p) => write_json(Some(p), &report)?,
        None => eprintln!(
            "regime={} n={} m={} odd={} pieces={} lower_bound={} ratio={:.4} verified={}",
            report.regime.as_str(),
            report.n,
            report.m,
            report.odd,
            report.piece_count,
            report.lower_bound,
            report.ratio,
            report.verified
        ),
    }
    if report.verified {
        Ok(())
    } else {
        Err(Failure::Semantic("decomposition failed verification".into()))
    }
}

fn verify(a: VerifyArgs) -> CliResult {
    let g = read_graph(&a.input)?;
    let text =
        std::fs::read_to_string(&a.decomposition).map_err(|e| usage(format!("{}: {e}", a.decomposition.display())))?;
    let d: Decomposition =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", a.decomposition.display())))?;
    let report = verify_decomposition(&g, &d);
    write_json(a.out.as_deref(), &report)?;
    if report.valid {
        Ok(())
    } else {
        Err(Failure::Semantic("decomposition is invalid".into()))
    }
}

fn probe(a: ProbeArgs) -> CliResult {
    set_jobs(a.jobs)?;
    let stats = probe_properties(
        a.n,
        a.p,
        a.trials,
        Seed(a.seed.seed.unwrap_or(0)),
        &ProbeConfig::default(),
    )
    .map_err(usage)?;
    let mut csv = csv::Writer::from_writer(sink(a.out.as_deref())?);
    for t in &stats.trials {
        csv.serialize(t).map_err(usage)?;
    }
    csv.flush().map_err(usage)?;
    if let Some(p) = &a.summary {
        let summary = serde_json::json!({
            "n": stats.n,
            "p": stats.p,
            "seed": stats.seed,
            "trials": stats.trials.len(),
            "summary": stats.summary,
        });
        write_json(Some(p), &summary)?;
    }
    Ok(())
}
