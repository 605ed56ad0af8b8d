//! End-to-end decomposition with regime dispatch.
//!
//! * **sparse**: parity repair, long-cycle stripping, peeling.
//! * **intermediate**: split off a connector graph `G1` and a repair graph
//!   `G2`; repair parity inside `G2`; strip the rest to bounded average
//!   degree; close its matchings into cycles through `G1`.
//! * **dense**: additionally pack Hamilton cycles into a fourth part first.
//!
//! Every strategy ends in the same safety net (repair again if needed, strip,
//! peel, emit anything left as single edges), so the output is a valid
//! decomposition of any input graph; only its size depends on the graph
//! being random.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::connect::{
    build_auxiliary_pairing, close_matching_into_cycles, edge_color_tagged, neighborhood_ratio, sparsify_split,
    ConnectConfig, TaggedEdge, TaggedMatching,
};
use crate::cycles::{ln_n, peel_with_forest, strip_long_cycles, StripConfig, StripStop};
use crate::decomposition::{Decomposition, Provenance};
use crate::euler::{euler_reduction, RepairOptions};
use crate::graph::{Cycle, Edge, Graph, Vertex};
use crate::hamilton::{pack_hamilton_cycles, HamiltonConfig, PackStop};
use crate::random::{split, Seed, SplitSpec};
use crate::verify::{lower_bound, verify_decomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Sparse,
    Intermediate,
    Dense,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Sparse => "sparse",
            Regime::Intermediate => "intermediate",
            Regime::Dense => "dense",
        }
    }
}

impl std::str::FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Regime, String> {
        match s {
            "sparse" => Ok(Regime::Sparse),
            "intermediate" => Ok(Regime::Intermediate),
            "dense" => Ok(Regime::Dense),
            _ => Err(format!("unknown regime {s:?}")),
        }
    }
}

/// Pipeline settings. Every `Option` left as `None` is computed from the
/// graph; JSON overrides may set any subset of fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub seed: Seed,
    /// Force a regime instead of dispatching on density.
    pub regime: Option<Regime>,
    /// Sparse regime upper density bound; default `ln¹⁰n / n`.
    pub sparse_hi: Option<f64>,
    /// Intermediate regime upper density bound; default `n^(-1/6)`.
    pub mid_hi: Option<f64>,
    /// Connector share; default `2 ln⁵n / (np)`.
    pub p1: Option<f64>,
    /// Dense repair share; default `n^(4/5) ln³n / (np)`. In the intermediate
    /// regime the repair share is `ln²n / (np)` instead.
    pub p2: Option<f64>,
    /// Dense remainder share; default `ln²n / (np)`.
    pub p3: Option<f64>,
    /// Connector share of the dense regime's final intermediate stage;
    /// default `2 ln⁵n / (np)`.
    pub p_prime: Option<f64>,
    /// Long cycles are stripped while the average degree exceeds this.
    pub stop_avg_deg: f64,
    /// The safety net strips long cycles down to this average degree before
    /// peeling.
    pub tail_stop_avg_deg: f64,
    pub rotations_per_n: f64,
    pub stall_factor: f64,
    pub stall_max: usize,
    pub min_accept: f64,
    pub max_strip_rounds: Option<usize>,
    pub hamilton_restarts: usize,
    pub hamilton_rotations_per_n: f64,
    pub hamilton_max_attempts: Option<usize>,
    /// Vertices of at least this degree pair up their edges through
    /// themselves before coloring; default `ln²n / 2`.
    pub v0_degree: Option<f64>,
    pub max_path_len: Option<usize>,
    pub connector_retries: usize,
    pub capacity_fraction: f64,
    pub ratio_bound: Option<f64>,
    /// Safety-net parity repairs before leftover edges are emitted as is.
    pub repair_rounds: usize,
    /// Run one augmenting pass after the greedy matching in parity repair.
    pub augment_matching: bool,
}

impl Default for PipelineConfig {
    fn default() -> PipelineConfig {
        let strip = StripConfig::default();
        let ham = HamiltonConfig::default();
        let conn = ConnectConfig::default();
        PipelineConfig {
            seed: Seed(0),
            regime: None,
            sparse_hi: None,
            mid_hi: None,
            p1: None,
            p2: None,
            p3: None,
            p_prime: None,
            stop_avg_deg: 84.0,
            tail_stop_avg_deg: 0.0,
            rotations_per_n: strip.rotations_per_n,
            stall_factor: strip.stall_factor,
            stall_max: strip.stall_max,
            min_accept: strip.min_accept,
            max_strip_rounds: None,
            hamilton_restarts: ham.restarts,
            hamilton_rotations_per_n: ham.rotations_per_n,
            hamilton_max_attempts: None,
            v0_degree: None,
            max_path_len: conn.max_path_len,
            connector_retries: conn.retries,
            capacity_fraction: conn.capacity_fraction,
            ratio_bound: conn.ratio_bound,
            repair_rounds: 2,
            augment_matching: false,
        }
    }
}

impl PipelineConfig {
    /// Applies a JSON object of overrides on top of `self`.
    pub fn with_overrides(&self, json: &str) -> crate::Result<PipelineConfig> {
        let mut base = serde_json::to_value(self)?;
        let over: serde_json::Value = serde_json::from_str(json)?;
        let serde_json::Value::Object(over) = over else {
            return Err(crate::Error::InvalidArgument(
                "config overrides must be a JSON object".into(),
            ));
        };
        let obj = base.as_object_mut().expect("config serializes to an object");
        for (k, v) in over {
            obj.insert(k, v);
        }
        Ok(serde_json::from_value(base)?)
    }
}

/// Thresholds and split probabilities resolved for one graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub n: usize,
    /// Density the parameters were computed from (hint or observed).
    pub p: f64,
    pub sparse_hi: f64,
    pub mid_hi: f64,
    /// Dense split `(p1, p2, p3)`, clamped in order so the sum is at most 1.
    pub dense_split: [f64; 3],
    /// Intermediate split `(p1, ln²n/(np))`, clamped in order.
    pub intermediate_split: [f64; 2],
    /// Split of the dense regime's final intermediate stage.
    pub inner_split: [f64; 2],
    pub v0_degree: f64,
}

/// `x / np`, or 1 when `np` is 0.
fn over_np(x: f64, np: f64) -> f64 {
    if np > 0.0 {
        x / np
    } else {
        1.0
    }
}

fn clamp_in_order<const K: usize>(raw: [f64; K]) -> [f64; K] {
    let mut out = [0.0; K];
    let mut left = 1.0;
    for (o, r) in out.iter_mut().zip(raw) {
        *o = if r.is_nan() { 0.0 } else { r.clamp(0.0, left) };
        left -= *o;
    }
    out
}

impl Parameters {
    pub fn new(n: usize, p: f64, cfg: &PipelineConfig) -> Parameters {
        let l = ln_n(n);
        let nf = n.max(1) as f64;
        let np = nf * p;
        let p1 = cfg.p1.unwrap_or_else(|| over_np(2.0 * l.powi(5), np));
        let p2 = cfg.p2.unwrap_or_else(|| over_np(nf.powf(0.8) * l.powi(3), np));
        let p3 = cfg.p3.unwrap_or_else(|| over_np(l * l, np));
        let p_mid = cfg.p2.unwrap_or_else(|| over_np(l * l, np));
        let p_prime = cfg.p_prime.unwrap_or_else(|| over_np(2.0 * l.powi(5), np));
        Parameters {
            n,
            p,
            sparse_hi: cfg.sparse_hi.unwrap_or_else(|| l.powi(10) / nf),
            mid_hi: cfg.mid_hi.unwrap_or_else(|| nf.powf(-1.0 / 6.0)),
            dense_split: clamp_in_order([p1, p2, p3]),
            intermediate_split: clamp_in_order([p1, p_mid]),
            inner_split: clamp_in_order([p_prime, p_mid]),
            v0_degree: cfg.v0_degree.unwrap_or(l * l / 2.0),
        }
    }

    /// Dense above `mid_hi`; otherwise sparse up to `sparse_hi`; otherwise
    /// intermediate. The dense test comes first because at small `n` the
    /// polylog sparse bound exceeds 1.
    pub fn regime(&self) -> Regime {
        if self.p > self.mid_hi {
            Regime::Dense
        } else if self.p <= self.sparse_hi {
            Regime::Sparse
        } else {
            Regime::Intermediate
        }
    }
}

/// Accounting for one decomposition stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageReport {
    pub name: String,
    /// Undecomposed edges before and after the stage.
    pub edges_before: usize,
    pub edges_after: usize,
    pub pieces: usize,
}

impl StageReport {
    pub fn skipped(&self) -> bool {
        self.edges_before == self.edges_after
    }
}

/// Wall-clock time; never affects equality, so reports of identical runs
/// compare equal.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WallTime(pub f64);

impl PartialEq for WallTime {
    fn eq(&self, _: &WallTime) -> bool {
        true
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub regime: Regime,
    pub n: usize,
    pub m: usize,
    pub odd: usize,
    pub lower_bound: usize,
    pub piece_count: usize,
    pub cycles: usize,
    pub single_edges: usize,
    /// Piece counts per provenance label (all labels present).
    pub pieces_by_provenance: BTreeMap<String, usize>,
    /// `piece_count / lower_bound` (1 when both are 0).
    pub ratio: f64,
    /// Single edges emitted by parity repairs, over all rounds.
    pub e0_edges: usize,
    pub parameters: Parameters,
    pub hamilton_target: usize,
    pub hamilton_achieved: usize,
    pub hamilton_stop: Option<PackStop>,
    pub matchings: usize,
    pub connector_pairs: usize,
    pub connector_failures: usize,
    /// Matching edges returned to the pool because their closure failed.
    pub closure_failed_edges: usize,
    pub max_neighborhood_ratio: f64,
    pub strip_rounds: usize,
    pub strip_budget_hits: usize,
    pub safety_repairs: usize,
    pub stages: Vec<StageReport>,
    pub seed: Seed,
    pub verified: bool,
    pub wall_time_ms: WallTime,
}

struct Run<'c> {
    cfg: &'c PipelineConfig,
    params: Parameters,
    dec: Decomposition,
    report: RunReport,
    remaining: usize,
}

impl<'c> Run<'c> {
    fn new(g: &Graph, regime: Regime, params: Parameters, cfg: &'c PipelineConfig) -> Run<'c> {
        let report = RunReport {
            regime,
            n: g.n(),
            m: g.m(),
            odd: g.odd_count(),
            lower_bound: lower_bound(g),
            piece_count: 0,
            cycles: 0,
            single_edges: 0,
            pieces_by_provenance: BTreeMap::new(),
            ratio: 0.0,
            e0_edges: 0,
            parameters: params.clone(),
            hamilton_target: 0,
            hamilton_achieved: 0,
            hamilton_stop: None,
            matchings: 0,
            connector_pairs: 0,
            connector_failures: 0,
            closure_failed_edges: 0,
            max_neighborhood_ratio: 0.0,
            strip_rounds: 0,
            strip_budget_hits: 0,
            safety_repairs: 0,
            stages: Vec::new(),
            seed: cfg.seed,
            verified: false,
            wall_time_ms: WallTime(0.0),
        };
        Run {
            cfg,
            params,
            dec: Decomposition::new(g.n()),
            report,
            remaining: g.m(),
        }
    }

    fn seed(&self, label: &str) -> Seed {
        self.cfg.seed.derive_str(label)
    }

    fn cycle(&mut self, c: Cycle, prov: Provenance) {
        self.remaining -= c.len();
        self.dec.push_cycle(c, prov);
    }

    fn edge(&mut self, e: Edge, prov: Provenance) {
        self.remaining -= 1;
        self.dec.push_edge(e, prov);
    }

    /// Runs `f` and records how many edges and pieces it accounted for.
    fn stage<T>(&mut self, name: &str, f: impl FnOnce(&mut Self) -> T) -> T {
        let edges_before = self.remaining;
        let pieces_before = self.dec.piece_count();
        let out = f(self);
        self.report.stages.push(StageReport {
            name: name.to_string(),
            edges_before,
            edges_after: self.remaining,
            pieces: self.dec.piece_count() - pieces_before,
        });
        out
    }

    fn strip_config(&self, label: &str) -> StripConfig {
        StripConfig {
            rotations_per_n: self.cfg.rotations_per_n,
            stall_factor: self.cfg.stall_factor,
            stall_max: self.cfg.stall_max,
            core_factor: 0.5,
            min_accept: self.cfg.min_accept,
            max_rounds: self.cfg.max_strip_rounds,
            seed: self.seed(label),
        }
    }

    fn connect_config(&self) -> ConnectConfig {
        ConnectConfig {
            max_path_len: self.cfg.max_path_len,
            retries: self.cfg.connector_retries,
            capacity_fraction: self.cfg.capacity_fraction,
            ratio_bound: self.cfg.ratio_bound,
            seed: self.seed("connect"),
        }
    }

    fn repair_options(&self, label: &str) -> RepairOptions {
        RepairOptions {
            pairing_seed: self.seed(label),
            augment: self.cfg.augment_matching,
        }
    }

    /// Default-target parity repair of the whole pool.
    fn repair(&mut self, pool: Graph, label: &str) -> Graph {
        let rep = euler_reduction(&pool, None, &self.repair_options(label)).expect("the odd set has even size");
        let rest = rep.apply(&pool).expect("repair edges lie in the graph");
        for c in rep.small_component_cycles {
            self.cycle(c, Provenance::Peel);
        }
        self.report.e0_edges += rep.e0.len();
        for &e in rep.e0.iter() {
            self.edge(e, Provenance::EulerRepair);
        }
        rest
    }

    /// Repair inside `part` for the odd set `target` of the whole pool.
    fn repair_within(&mut self, part: Graph, target: &[Vertex], label: &str) -> Graph {
        let rep = euler_reduction(&part, Some(target), &self.repair_options(label)).expect("odd sets have even size");
        let rest = rep.apply(&part).expect("repair edges lie in the graph");
        self.report.e0_edges += rep.e0.len();
        for &e in rep.e0.iter() {
            self.edge(e, Provenance::EulerRepair);
        }
        rest
    }

    fn strip(&mut self, pool: Graph, stop: f64, label: &str) -> Graph {
        let r = strip_long_cycles(&pool, stop, &self.strip_config(label));
        self.report.strip_rounds += r.rounds;
        if r.stop == StripStop::Budget {
            self.report.strip_budget_hits += 1;
        }
        for c in r.cycles {
            self.cycle(c, Provenance::LongCycle);
        }
        r.remainder
    }

    /// Closes the matchings of `h` into cycles through `gc`. Returns the
    /// edges of `h` left undecomposed; used connector edges leave `gc`.
    fn close(&mut self, h: Graph, gc: &mut Graph) -> Graph {
        let n = h.n();
        let mut leftover = Graph::new(n);
        if h.m() == 0 {
            return leftover;
        }
        let in_v0: Vec<bool> = (0..n as Vertex)
            .map(|v| h.deg(v) as f64 >= self.params.v0_degree)
            .collect();
        let v0: Vec<Vertex> = (0..n as Vertex).filter(|&v| in_v0[v as usize]).collect();
        let mut tagged = Vec::new();
        for e in h.edge_list() {
            match (in_v0[e.u() as usize], in_v0[e.v() as usize]) {
                (false, false) => tagged.push(TaggedEdge::plain(e)),
                (true, true) => {
                    leftover.add_edge(e.u(), e.v());
                }
                _ => {}
            }
        }
        let (aux, unpaired) = build_auxiliary_pairing(&h, &v0);
        tagged.extend(aux);
        for e in unpaired {
            leftover.add_edge(e.u(), e.v());
        }

        let classes = edge_color_tagged(n, &tagged);
        self.report.matchings += classes.len();
        let conn = self.connect_config();
        let beta = conn.ratio_bound_for(n);
        for (ci, class) in classes.iter().enumerate() {
            let k = class.len().div_ceil(conn.capacity(gc)).max(1);
            let seed = self.seed("sparsify").derive(ci as u64);
            let parts = sparsify_split(gc, class, k, seed);
            *gc = Graph::new(n);
            for (pi, mut part) in parts.into_iter().enumerate() {
                self.report.max_neighborhood_ratio = self.report.max_neighborhood_ratio.max(part.ratio);
                for (bi, batch) in halve_until_sparse(&part.graph, part.matching, beta)
                    .into_iter()
                    .enumerate()
                {
                    let cfg = ConnectConfig {
                        seed: seed.derive(((pi as u64) << 32) | bi as u64),
                        ..conn.clone()
                    };
                    let r = close_matching_into_cycles(&mut part.graph, &batch, &cfg);
                    self.report.connector_pairs += r.pairs_requested;
                    self.report.connector_failures += r.pairs_failed;
                    self.report.closure_failed_edges += r.failed.len();
                    for c in r.cycles {
                        self.cycle(c, Provenance::MatchingClosure);
                    }
                    for t in r.failed {
                        for e in t.expanded() {
                            leftover.add_edge(e.u(), e.v());
                        }
                    }
                }
                gc.absorb(&part.graph);
            }
        }
        leftover
    }

    /// Split into connector / repair / rest, repair inside the repair part,
    /// strip the rest to bounded degree and close it through the connectors.
    /// Returns the undecomposed pool.
    fn intermediate(&mut self, pool: Graph, probs: [f64; 2], label: &str) -> Graph {
        let spec = SplitSpec::new(probs.to_vec()).expect("clamped split probabilities");
        let target = pool.odd_vertices();
        let mut parts = split(&pool, &spec, self.seed(label)).into_iter();
        let (mut gc, repair_part, rest) = (parts.next().unwrap(), parts.next().unwrap(), parts.next().unwrap());
        let mut h = self.stage(&format!("{label}-repair"), |run| {
            run.repair_within(repair_part, &target, &format!("{label}-repair"))
        });
        h.absorb(&rest);
        let h = self.stage(&format!("{label}-long-cycles"), |run| {
            let stop = run.cfg.stop_avg_deg;
            run.strip(h, stop, &format!("{label}-strip"))
        });
        let leftover = self.stage(&format!("{label}-closure"), |run| run.close(h, &mut gc));
        gc.absorb(&leftover);
        gc
    }

    fn sparse(&mut self, g: &Graph) -> Graph {
        let pool = self.stage("euler-repair", |run| run.repair(g.clone(), "repair"));
        self.stage("long-cycles", |run| {
            let stop = run.cfg.stop_avg_deg;
            run.strip(pool, stop, "strip")
        })
    }

    fn dense(&mut self, g: &Graph) -> Graph {
        let spec = SplitSpec::new(self.params.dense_split.to_vec()).expect("clamped split probabilities");
        let target = g.odd_vertices();
        let mut parts = split(g, &spec, self.seed("dense-split")).into_iter();
        let g1 = parts.next().unwrap();
        let mut g2 = parts.next().unwrap();
        let g3 = parts.next().unwrap();
        let g4 = parts.next().unwrap();

        let g3 = self.stage("dense-repair", |run| run.repair_within(g3, &target, "dense-repair"));

        let n = g.n();
        let p4 = 1.0 - self.params.dense_split.iter().sum::<f64>();
        let expected = n as f64 * self.params.p * p4;
        let degree = expected.min(g4.min_degree() as f64);
        let ham_target = ((degree - (n as f64).powf(0.6)) / 2.0).floor().max(0.0) as usize;
        self.report.hamilton_target = ham_target;
        let mut h0 = self.stage("hamilton", |run| {
            let cfg = HamiltonConfig {
                restarts: run.cfg.hamilton_restarts,
                rotations_per_n: run.cfg.hamilton_rotations_per_n,
                max_attempts: run.cfg.hamilton_max_attempts,
                seed: run.seed("hamilton"),
            };
            let r = pack_hamilton_cycles(&g4, ham_target, &cfg);
            run.report.hamilton_achieved = r.cycles.len();
            run.report.hamilton_stop = Some(r.stop);
            for c in r.cycles {
                run.cycle(c, Provenance::Hamilton);
            }
            r.remainder
        });
        h0.absorb(&g3);
        let h0 = self.stage("dense-long-cycles", |run| {
            let stop = run.cfg.stop_avg_deg;
            run.strip(h0, stop, "dense-strip")
        });
        let leftover = self.stage("dense-closure", |run| run.close(h0, &mut g2));
        let mut pool = g1;
        pool.absorb(&g2);
        pool.absorb(&leftover);
        let inner = self.params.inner_split;
        self.intermediate(pool, inner, "inner")
    }

    /// Safety net: repair parity if needed (bounded rounds), strip the tail,
    /// peel, and emit any forest left as single edges.
    fn finish(&mut self, mut pool: Graph) {
        let mut round = 0;
        while !pool.is_euler() && round < self.cfg.repair_rounds {
            let label = format!("safety-repair-{round}");
            pool = self.stage(&label, |run| run.repair(pool, &label));
            round += 1;
        }
        self.report.safety_repairs = round;
        let pool = self.stage("tail-cycles", |run| {
            let stop = run.cfg.tail_stop_avg_deg;
            run.strip(pool, stop, "tail-strip")
        });
        self.stage("peel", |run| {
            let (cycles, forest) = peel_with_forest(&pool);
            for c in cycles {
                run.cycle(c, Provenance::Peel);
            }
            for e in forest {
                run.edge(e, Provenance::LeftoverEdge);
            }
        });
        debug_assert_eq!(self.remaining, 0);
    }
}

/// Halves a batch while its neighborhood ratio in `g` exceeds `beta`.
fn halve_until_sparse(g: &Graph, m: TaggedMatching, beta: f64) -> Vec<TaggedMatching> {
    let mut out = Vec::new();
    let mut todo = vec![m];
    while let Some(b) = todo.pop() {
        if b.len() >= 2 && neighborhood_ratio(g, &b.endpoints()) > beta {
            let mut first = b.edges;
            let second = first.split_off(first.len() / 2);
            todo.push(TaggedMatching::new(second));
            todo.push(TaggedMatching::new(first));
        } else if !b.is_empty() {
            out.push(b);
        }
    }
    out
}

fn run(g: &Graph, regime: Option<Regime>, p: f64, cfg: &PipelineConfig) -> (Decomposition, RunReport) {
    let start = Instant::now();
    let params = Parameters::new(g.n(), p, cfg);
    let regime = regime.or(cfg.regime).unwrap_or_else(|| params.regime());
    let mut run = Run::new(g, regime, params, cfg);
    let pool = match regime {
        Regime::Sparse => run.sparse(g),
        Regime::Intermediate => {
            let probs = run.params.intermediate_split;
            run.intermediate(g.clone(), probs, "intermediate")
        }
        Regime::Dense => run.dense(g),
    };
    run.finish(pool);

    let Run { dec, mut report, .. } = run;
    let check = verify_decomposition(g, &dec);
    report.verified = check.valid;
    report.piece_count = dec.piece_count();
    report.cycles = dec.cycles.len();
    report.single_edges = dec.single_edges.len();
    report.pieces_by_provenance = dec
        .counts_by_provenance()
        .into_iter()
        .map(|(k, v)| (k.as_str().to_string(), v))
        .collect();
    report.ratio = if report.lower_bound == 0 {
        if report.piece_count == 0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        report.piece_count as f64 / report.lower_bound as f64
    };
    report.wall_time_ms = WallTime(start.elapsed().as_secs_f64() * 1e3);
    (dec, report)
}

/// Parity repair, long-cycle stripping, peeling.
pub fn decompose_sparse(g: &Graph, cfg: &PipelineConfig) -> (Decomposition, RunReport) {
    run(g, Some(Regime::Sparse), g.density(), cfg)
}

/// Connector/repair split, bounded-degree stripping and matching closure.
pub fn decompose_intermediate(g: &Graph, cfg: &PipelineConfig) -> (Decomposition, RunReport) {
    run(g, Some(Regime::Intermediate), g.density(), cfg)
}

/// Four-way split with Hamilton packing, then the intermediate machinery.
pub fn decompose_dense(g: &Graph, cfg: &PipelineConfig) -> (Decomposition, RunReport) {
    run(g, Some(Regime::Dense), g.density(), cfg)
}

/// Decomposes any graph, dispatching on `p_hint` if given and otherwise on
/// the observed density `2m / (n(n-1))`. `cfg.regime` overrides both. The
/// result is checked by the independent verifier (`RunReport::verified`).
pub fn decompose(g: &Graph, p_hint: Option<f64>, cfg: &PipelineConfig) -> (Decomposition, RunReport) {
    run(g, None, p_hint.unwrap_or_else(|| g.density()), cfg)
}
