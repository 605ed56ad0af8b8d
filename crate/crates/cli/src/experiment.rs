//! Batch decomposition of random graphs.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Args;
use cycleshred::random::gnp;
use cycleshred::{decompose, PipelineConfig, Provenance, Seed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{load_config, set_jobs, sink, usage, write_json, CliResult, Failure};

#[derive(Args)]
pub struct ExperimentArgs {
    /// JSON experiment spec; the flags below override its fields.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Vertex counts (comma separated); crossed with every --p.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Edge probabilities (comma separated).
    #[arg(long, value_delimiter = ',')]
    p: Vec<f64>,
    /// Trials per (n, p).
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, env = "CYCLESHRED_SEED")]
    seed: Option<u64>,
    /// JSON object overriding pipeline settings.
    #[arg(long)]
    config: Option<PathBuf>,
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

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Case {
    pub n: usize,
    pub p: f64,
    pub trials: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSpec {
    pub cases: Vec<Case>,
    /// Pipeline overrides, as accepted by `--config`.
    pub config: Option<serde_json::Value>,
    pub seed: u64,
    pub csv: Option<PathBuf>,
    pub summary: Option<PathBuf>,
}

impl ExperimentSpec {
    fn validate(&self) -> CliResult {
        for c in &self.cases {
            if c.n == 0 {
                return Err(usage("n must be at least 1"));
            }
            if !(0.0..=1.0).contains(&c.p) {
                return Err(usage(format!("p = {} is outside [0, 1]", c.p)));
            }
        }
        Ok(())
    }
}

pub const HEADER: [&str; 21] = [
    "n",
    "p",
    "trial",
    "seed",
    "regime",
    "m",
    "odd",
    "lower_bound",
    "pieces",
    "cycles",
    "single_edges",
    "ratio",
    "euler_repair",
    "long_cycle",
    "hamilton",
    "matching_closure",
    "peel",
    "leftover_edge",
    "verified",
    "time_ms",
    "error",
];

/// One CSV row. Measurement fields are empty when the trial failed.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Row {
    pub n: usize,
    pub p: f64,
    pub trial: usize,
    pub seed: u64,
    pub regime: Option<&'static str>,
    pub m: Option<usize>,
    pub odd: Option<usize>,
    pub lower_bound: Option<usize>,
    pub pieces: Option<usize>,
    pub cycles: Option<usize>,
    pub single_edges: Option<usize>,
    pub ratio: Option<f64>,
    pub euler_repair: Option<usize>,
    pub long_cycle: Option<usize>,
    pub hamilton: Option<usize>,
    pub matching_closure: Option<usize>,
    pub peel: Option<usize>,
    pub leftover_edge: Option<usize>,
    pub verified: Option<bool>,
    pub time_ms: Option<f64>,
    pub error: Option<String>,
}

impl Row {
    fn failed(&self) -> bool {
        self.error.is_some()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseSummary {
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    pub completed: usize,
    pub failed: usize,
    pub mean_ratio: Option<f64>,
    pub median_ratio: Option<f64>,
    pub min_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
    pub mean_pieces: Option<f64>,
    pub mean_lower_bound: Option<f64>,
    pub mean_time_ms: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentSummary {
    pub seed: u64,
    pub cases: Vec<CaseSummary>,
}

/// Seed of trial `trial` of case `(n, p)`; independent of the other cases
/// in the spec.
pub fn trial_seed(root: u64, n: usize, p: f64, trial: usize) -> Seed {
    Seed(root).derive_str(&format!("{n}:{p}")).derive(trial as u64)
}

fn run_trial(n: usize, p: f64, trial: usize, root: u64, base: &PipelineConfig) -> Row {
    let seed = trial_seed(root, n, p, trial);
    let mut row = Row {
        n,
        p,
        trial,
        seed: seed.0,
        ..Row::default()
    };
    let cfg = PipelineConfig {
        seed: seed.derive_str("pipeline"),
        ..base.clone()
    };
    let start = Instant::now();
    let out = catch_unwind(AssertUnwindSafe(|| {
        let g = gnp(n, p, seed).map_err(|e| e.to_string())?;
        Ok::<_, String>(decompose(&g, Some(p), &cfg).1)
    }));
    row.time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    let r = match out {
        Ok(Ok(r)) => r,
        Ok(Err(e)) => {
            row.error = Some(e);
            return row;
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            row.error = Some(format!("panic: {msg}"));
            return row;
        }
    };
    let by = |p: Provenance| Some(r.pieces_by_provenance.get(p.as_str()).copied().unwrap_or(0));
    row.regime = Some(r.regime.as_str());
    row.m = Some(r.m);
    row.odd = Some(r.odd);
    row.lower_bound = Some(r.lower_bound);
    row.pieces = Some(r.piece_count);
    row.cycles = Some(r.cycles);
    row.single_edges = Some(r.single_edges);
    row.ratio = Some(r.ratio);
    row.euler_repair = by(Provenance::EulerRepair);
    row.long_cycle = by(Provenance::LongCycle);
    row.hamilton = by(Provenance::Hamilton);
    row.matching_closure = by(Provenance::MatchingClosure);
    row.peel = by(Provenance::Peel);
    row.leftover_edge = by(Provenance::LeftoverEdge);
    row.verified = Some(r.verified);
    if !r.verified {
        row.error = Some("decomposition failed verification".into());
    }
    row
}

fn mean(xs: &[f64]) -> Option<f64> {
    (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
}

fn summarize(case: &Case, rows: &[Row]) -> CaseSummary {
    let ok: Vec<&Row> = rows.iter().filter(|r| !r.failed()).collect();
    let mut ratios: Vec<f64> = ok.iter().filter_map(|r| r.ratio).collect();
    ratios.sort_by(f64::total_cmp);
    let median = match ratios.len() {
        0 => None,
        k if k % 2 == 1 => Some(ratios[k / 2]),
        k => Some((ratios[k / 2 - 1] + ratios[k / 2]) / 2.0),
    };
    let col = |f: fn(&Row) -> Option<f64>| mean(&ok.iter().filter_map(|r| f(r)).collect::<Vec<_>>());
    CaseSummary {
        n: case.n,
        p: case.p,
        trials: rows.len(),
        completed: ok.len(),
        failed: rows.len() - ok.len(),
        mean_ratio: mean(&ratios),
        median_ratio: median,
        min_ratio: ratios.first().copied(),
        max_ratio: ratios.last().copied(),
        mean_pieces: col(|r| r.pieces.map(|x| x as f64)),
        mean_lower_bound: col(|r| r.lower_bound.map(|x| x as f64)),
        mean_time_ms: col(|r| r.time_ms),
    }
}

/// Runs every trial of `spec` and writes the CSV and summary. Returns the
/// summary and the number of failed trials.
pub fn execute(spec: &ExperimentSpec) -> CliResult<(ExperimentSummary, usize)> {
    spec.validate()?;
    let mut cfg = PipelineConfig::default();
    if let Some(over) = &spec.config {
        cfg = cfg.with_overrides(&over.to_string()).map_err(usage)?;
    }
    let jobs: Vec<(usize, usize)> = spec
        .cases
        .iter()
        .enumerate()
        .flat_map(|(i, c)| (0..c.trials).map(move |t| (i, t)))
        .collect();
    let rows: Vec<Row> = jobs
        .par_iter()
        .map(|&(i, t)| {
            let c = &spec.cases[i];
            run_trial(c.n, c.p, t, spec.seed, &cfg)
        })
        .collect();

    let mut csv = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(sink(spec.csv.as_deref())?);
    csv.write_record(HEADER).map_err(usage)?;
    for r in &rows {
        csv.serialize(r).map_err(usage)?;
    }
    csv.flush().map_err(usage)?;

    let mut cases = Vec::new();
    let mut at = 0;
    for c in &spec.cases {
        cases.push(summarize(c, &rows[at..at + c.trials]));
        at += c.trials;
    }
    let summary = ExperimentSummary { seed: spec.seed, cases };
    if let Some(p) = &spec.summary {
        write_json(Some(p), &summary)?;
    }
    Ok((summary, rows.iter().filter(|r| r.failed()).count()))
}

fn read_spec(path: &Path) -> CliResult<ExperimentSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub fn run(a: ExperimentArgs) -> CliResult {
    set_jobs(a.jobs)?;
    let mut spec = match &a.spec {
        Some(p) => read_spec(p)?,
        None => ExperimentSpec::default(),
    };
    if !a.n.is_empty() || !a.p.is_empty() {
        if a.n.is_empty() || a.p.is_empty() {
            return Err(usage("--n and --p must be given together"));
        }
        let trials = a.trials.unwrap_or(1);
        spec.cases =
            a.n.iter()
                .flat_map(|&n| a.p.iter().map(move |&p| Case { n, p, trials }))
                .collect();
    } else if let Some(t) = a.trials {
        for c in &mut spec.cases {
            c.trials = t;
        }
    }
    if spec.cases.is_empty() {
        return Err(usage("no cases: give --spec or --n and --p"));
    }
    if let Some(s) = a.seed {
        spec.seed = s;
    }
    if let Some(path) = &a.config {
        // Validate against the pipeline schema before storing.
        load_config(Some(path), None)?;
        let text = std::fs::read_to_string(path).map_err(usage)?;
        spec.config = Some(serde_json::from_str(&text).map_err(usage)?);
    }
    if a.out.is_some() {
        spec.csv = a.out;
    }
    if a.summary.is_some() {
        spec.summary = a.summary;
    }
    let (_, failed) = execute(&spec)?;
    if failed > 0 {
        Err(Failure::Semantic(format!(
            "{failed} trial(s) failed; see the error column"
        )))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_matches_row_fields() {
        let mut w = csv::Writer::from_writer(vec![]);
        w.serialize(Row::default()).unwrap();
        let text = String::from_utf8(w.into_inner().unwrap()).unwrap();
        assert_eq!(text.lines().next().unwrap(), HEADER.join(","));
    }

    #[test]
    fn median_of_even_count() {
        let case = Case {
            n: 1,
            p: 0.0,
            trials: 2,
        };
        let rows = [1.0, 3.0].map(|r| Row {
            ratio: Some(r),
            ..Row::default()
        });
        let s = summarize(&case, &rows);
        assert_eq!(s.median_ratio, Some(2.0));
        assert_eq!(s.completed, 2);
    }
}
