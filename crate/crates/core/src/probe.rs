//! Monte-Carlo measurements of structural properties of G(n, p).
//!
//! Quantities that are intractable to compute exactly (densest small set,
//! independence number, diameter) are heuristic estimates; the per-trial
//! record says which parts are exact.

use std::collections::{BTreeMap, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::cycles::ln_n;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::random::{gnp, Seed};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeConfig {
    /// Work cap (roughly vertex visits) for each exact enumeration.
    pub exact_budget: f64,
    /// Largest vertex set examined for density.
    pub max_set_size: usize,
    /// Random restarts of the densest-set local search.
    pub local_search_starts: usize,
    /// Cycles of at most this length are counted; default
    /// `max(3, ⌈ln ln n⌉)`.
    pub short_cycle_len: Option<usize>,
}

impl Default for ProbeConfig {
    fn default() -> ProbeConfig {
        ProbeConfig {
            exact_budget: 2e7,
            max_set_size: 6,
            local_search_starts: 200,
            short_cycle_len: None,
        }
    }
}

/// Measurements of one sampled graph. Field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeTrial {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub p: f64,
    pub m: usize,
    pub odd: usize,
    pub odd_fraction: f64,
    pub giant_fraction: f64,
    pub short_cycle_len: usize,
    /// Number of cycles of length at most `short_cycle_len`; empty when the
    /// exact count would exceed the work budget.
    pub short_cycles: Option<u64>,
    /// Largest `e(S) / |S|` found over sets of 2 to `max_set_size` vertices.
    pub max_set_density: f64,
    /// Sets up to this size were enumerated exhaustively (0: none); larger
    /// ones only by local search, so `max_set_density` may be an underestimate.
    pub set_density_exact_up_to: usize,
    /// Largest number of odd-degree neighbors of a vertex.
    pub max_odd_neighbors: usize,
    pub mean_odd_neighbors: f64,
    /// Size of a greedy (minimum-degree-first) independent set: a lower bound.
    pub independence_estimate: usize,
    /// Double-sweep BFS eccentricity in the largest component: a lower bound.
    pub diameter_estimate: usize,
}

/// Distribution summary of one measured quantity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub stddev: f64,
    pub min: f64,
    pub q05: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub q95: f64,
    pub max: f64,
}

impl Summary {
    /// Sample summary; quantiles by linear interpolation. `None` if empty.
    pub fn of(values: &[f64]) -> Option<Summary> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let k = v.len();
        let mean = v.iter().sum::<f64>() / k as f64;
        let var = if k > 1 {
            v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1) as f64
        } else {
            0.0
        };
        let q = |f: f64| {
            let pos = f * (k - 1) as f64;
            let lo = pos.floor() as usize;
            let hi = pos.ceil() as usize;
            v[lo] + (v[hi] - v[lo]) * (pos - lo as f64)
        };
        Some(Summary {
            count: k,
            mean,
            stddev: var.sqrt(),
            min: v[0],
            q05: q(0.05),
            q25: q(0.25),
            median: q(0.5),
            q75: q(0.75),
            q95: q(0.95),
            max: v[k - 1],
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeStats {
    pub n: usize,
    pub p: f64,
    pub seed: Seed,
    pub trials: Vec<ProbeTrial>,
    /// Summary per numeric column, keyed by column name.
    pub summary: BTreeMap<String, Summary>,
}

/// Samples `trials` graphs G(n, p) (in parallel; trial `i` uses seed
/// `seed.derive(i)`) and measures each.
pub fn probe_properties(n: usize, p: f64, trials: usize, seed: Seed, cfg: &ProbeConfig) -> Result<ProbeStats> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    // Validate p once so the workers cannot fail.
    gnp(1, p, seed)?;
    let rows: Vec<ProbeTrial> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = seed.derive(i as u64);
            let g = gnp(n, p, s).expect("validated parameters");
            measure(&g, i, s, p, cfg)
        })
        .collect();

    type Column = (&'static str, fn(&ProbeTrial) -> Option<f64>);
    let columns: [Column; 11] = [
        ("m", |t| Some(t.m as f64)),
        ("odd", |t| Some(t.odd as f64)),
        ("odd_fraction", |t| Some(t.odd_fraction)),
        ("giant_fraction", |t| Some(t.giant_fraction)),
        ("short_cycles", |t| t.short_cycles.map(|c| c as f64)),
        ("max_set_density", |t| Some(t.max_set_density)),
        ("max_odd_neighbors", |t| Some(t.max_odd_neighbors as f64)),
        ("mean_odd_neighbors", |t| Some(t.mean_odd_neighbors)),
        ("independence_estimate", |t| Some(t.independence_estimate as f64)),
        ("diameter_estimate", |t| Some(t.diameter_estimate as f64)),
        ("set_density_exact_up_to", |t| Some(t.set_density_exact_up_to as f64)),
    ];
    let mut summary = BTreeMap::new();
    for (name, get) in columns {
        let vals: Vec<f64> = rows.iter().filter_map(get).collect();
        if let Some(s) = Summary::of(&vals) {
            summary.insert(name.to_string(), s);
        }
    }
    Ok(ProbeStats {
        n,
        p,
        seed,
        trials: rows,
        summary,
    })
}

/// All measurements of one graph.
pub fn measure(g: &Graph, trial: usize, seed: Seed, p: f64, cfg: &ProbeConfig) -> ProbeTrial {
    let n = g.n();
    let odd = g.odd_count();
    let giant = g.connected_components().first().map_or(0, Vec::len);
    let short_len = cfg
        .short_cycle_len
        .unwrap_or_else(|| (ln_n(n).ln().ceil() as usize).max(3));
    let (max_set_density, exact_up_to) = densest_small_set(g, cfg, seed);
    let is_odd: Vec<bool> = (0..n as Vertex).map(|v| g.deg(v) % 2 == 1).collect();
    let odd_nbrs: Vec<usize> = (0..n as Vertex)
        .map(|v| g.neighbors(v).filter(|&w| is_odd[w as usize]).count())
        .collect();
    ProbeTrial {
        trial,
        seed: seed.0,
        n,
        p,
        m: g.m(),
        odd,
        odd_fraction: odd as f64 / n.max(1) as f64,
        giant_fraction: giant as f64 / n.max(1) as f64,
        short_cycle_len: short_len,
        short_cycles: count_cycles_up_to(g, short_len, cfg.exact_budget),
        max_set_density,
        set_density_exact_up_to: exact_up_to,
        max_odd_neighbors: odd_nbrs.iter().copied().max().unwrap_or(0),
        mean_odd_neighbors: odd_nbrs.iter().sum::<usize>() as f64 / n.max(1) as f64,
        independence_estimate: greedy_independent_set(g),
        diameter_estimate: double_sweep_diameter(g),
    }
}

/// Exact number of simple cycles of length `3..=len`, or `None` if the
/// estimated work `n · Δ^(len-1)` exceeds `budget`.
pub fn count_cycles_up_to(g: &Graph, len: usize, budget: f64) -> Option<u64> {
    let n = g.n();
    let work = n as f64 * (g.max_degree() as f64).powi(len.saturating_sub(1) as i32);
    if work > budget {
        return None;
    }
    // Each cycle is counted from its smallest vertex, once per direction.
    let mut on_path = vec![false; n];
    let mut total = 0u64;
    for s in 0..n as Vertex {
        on_path[s as usize] = true;
        total += cycles_from(g, s, s, 1, len, &mut on_path);
        on_path[s as usize] = false;
    }
    Some(total / 2)
}

fn cycles_from(g: &Graph, s: Vertex, x: Vertex, depth: usize, len: usize, on_path: &mut [bool]) -> u64 {
    if depth >= len {
        return u64::from(depth == len && depth >= 3 && g.has_edge(x, s));
    }
    let mut count = 0;
    for y in g.neighbors(x) {
        if y == s && depth >= 3 {
            count += 1;
        } else if y > s && !on_path[y as usize] {
            on_path[y as usize] = true;
            count += cycles_from(g, s, y, depth + 1, len, on_path);
            on_path[y as usize] = false;
        }
    }
    count
}

/// Densest vertex set of size 2..=max_set_size: exhaustive over connected
/// sets (a densest set of each size can be taken connected, up to adding
/// isolated vertices which only lowers density) while within budget, then a
/// greedy local search. Returns the density and the exhaustive size limit.
fn densest_small_set(g: &Graph, cfg: &ProbeConfig, seed: Seed) -> (f64, usize) {
    let n = g.n();
    let delta = g.max_degree() as f64;
    let mut exact = 0;
    for s in 2..=cfg.max_set_size {
        if n as f64 * delta.powi(s as i32 - 1) <= cfg.exact_budget {
            exact = s;
        }
    }
    let mut best = 0.0f64;
    if exact >= 2 {
        best = best.max(exhaustive_density(g, exact));
    }
    if exact < cfg.max_set_size && g.m() > 0 {
        let mut rng = seed.derive_str("densest").rng();
        for _ in 0..cfg.local_search_starts {
            let v = rng.gen_range(0..n) as Vertex;
            best = best.max(grow_dense(g, v, cfg.max_set_size, &mut rng));
        }
    }
    (best, exact)
}

/// Max `e(S)/|S|` over connected sets with `2 <= |S| <= k`, enumerated from
/// their smallest vertex. `seen` marks the set and every vertex already
/// offered as an extension, so each connected set is produced at most once
/// per ordering and none is missed.
fn exhaustive_density(g: &Graph, k: usize) -> f64 {
    struct Walk<'a> {
        g: &'a Graph,
        k: usize,
        seen: Vec<bool>,
        set: Vec<Vertex>,
        best: f64,
    }
    impl Walk<'_> {
        fn rec(&mut self, frontier: &[Vertex], edges: usize) {
            for (i, &w) in frontier.iter().enumerate() {
                let add = self.set.iter().filter(|&&x| self.g.has_edge(w, x)).count();
                let size = self.set.len() + 1;
                self.best = self.best.max((edges + add) as f64 / size as f64);
                if size == self.k {
                    continue;
                }
                let mut next: Vec<Vertex> = frontier[i + 1..].to_vec();
                let base = next.len();
                for x in self.g.neighbors(w) {
                    if x > self.set[0] && !self.seen[x as usize] {
                        self.seen[x as usize] = true;
                        next.push(x);
                    }
                }
                self.set.push(w);
                self.rec(&next, edges + add);
                self.set.pop();
                for &x in &next[base..] {
                    self.seen[x as usize] = false;
                }
            }
        }
    }
    let mut walk = Walk {
        g,
        k,
        seen: vec![false; g.n()],
        set: Vec::with_capacity(k),
        best: 0.0,
    };
    for v in 0..g.n() as Vertex {
        let frontier: Vec<Vertex> = g.neighbors(v).filter(|&w| w > v).collect();
        walk.seen[v as usize] = true;
        for &w in &frontier {
            walk.seen[w as usize] = true;
        }
        walk.set.push(v);
        walk.rec(&frontier, 0);
        walk.set.pop();
        walk.seen[v as usize] = false;
        for &w in &frontier {
            walk.seen[w as usize] = false;
        }
    }
    walk.best
}

/// Greedily grows a set from `v`, adding the outside vertex with most edges
/// into the set (random tie-break), and returns the best density seen.
fn grow_dense(g: &Graph, v: Vertex, k: usize, rng: &mut rand_chacha::ChaCha8Rng) -> f64 {
    let mut set = vec![v];
    let mut into: FxHashMap<Vertex, usize> = FxHashMap::default();
    let mut edges = 0usize;
    let mut best = 0.0f64;
    while set.len() < k {
        let x = *set.last().unwrap();
        into.remove(&x);
        for y in g.neighbors(x) {
            if !set.contains(&y) {
                *into.entry(y).or_default() += 1;
            }
        }
        let Some(top) = into.values().copied().max() else {
            break;
        };
        let mut ties: Vec<Vertex> = into.iter().filter(|&(_, &c)| c == top).map(|(&w, _)| w).collect();
        ties.sort_unstable();
        let w = *ties.choose(rng).unwrap();
        set.push(w);
        edges += top;
        best = best.max(edges as f64 / set.len() as f64);
    }
    best
}

/// Minimum-degree-first greedy independent set size.
pub fn greedy_independent_set(g: &Graph) -> usize {
    let n = g.n();
    let mut order: Vec<Vertex> = (0..n as Vertex).collect();
    order.sort_by_key(|&v| (g.deg(v), v));
    let mut blocked = vec![false; n];
    let mut size = 0;
    for v in order {
        if !blocked[v as usize] {
            size += 1;
            blocked[v as usize] = true;
            for w in g.neighbors(v) {
                blocked[w as usize] = true;
            }
        }
    }
    size
}

fn bfs_far(g: &Graph, s: Vertex) -> (Vertex, usize) {
    let mut dist = vec![usize::MAX; g.n()];
    let mut q = VecDeque::from([s]);
    dist[s as usize] = 0;
    let mut far = (s, 0);
    while let Some(x) = q.pop_front() {
        let d = dist[x as usize];
        if d > far.1 {
            far = (x, d);
        }
        for y in g.neighbors(x) {
            if dist[y as usize] == usize::MAX {
                dist[y as usize] = d + 1;
                q.push_back(y);
            }
        }
    }
    far
}

/// Two BFS sweeps from a vertex of the largest component.
pub fn double_sweep_diameter(g: &Graph) -> usize {
    let Some(comp) = g.connected_components().into_iter().next() else {
        return 0;
    };
    let (a, _) = bfs_far(g, comp[0]);
    bfs_far(g, a).1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_parity() {
        let cfg = ProbeConfig::default();
        let s = probe_properties(9, 1.0, 3, Seed(1), &cfg).unwrap();
        assert_eq!(s.trials.len(), 3);
        assert!(s.trials.iter().all(|t| t.odd_fraction == 0.0));
        let s = probe_properties(10, 1.0, 3, Seed(1), &cfg).unwrap();
        assert!(s.trials.iter().all(|t| t.odd_fraction == 1.0));
        assert!(probe_properties(10, 0.5, 0, Seed(1), &cfg).is_err());
        assert!(probe_properties(10, 1.5, 1, Seed(1), &cfg).is_err());
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(count_cycles_up_to(&Graph::complete(4), 3, 1e9), Some(4));
        // K4: 4 triangles and 3 four-cycles.
        assert_eq!(count_cycles_up_to(&Graph::complete(4), 4, 1e9), Some(7));
        assert_eq!(count_cycles_up_to(&Graph::cycle(5), 4, 1e9), Some(0));
        assert_eq!(count_cycles_up_to(&Graph::cycle(5), 5, 1e9), Some(1));
        assert_eq!(count_cycles_up_to(&Graph::complete(30), 6, 10.0), None);
        assert_eq!(count_cycles_up_to(&Graph::complete(6), 0, 1e9), Some(0));
        assert_eq!(count_cycles_up_to(&Graph::complete(6), 2, 1e9), Some(0));
    }

    #[test]
    fn densest_set_of_clique_plus_path() {
        let g = Graph::complete(5).disjoint_union(&Graph::path(10));
        let cfg = ProbeConfig::default();
        let (d, exact) = densest_small_set(&g, &cfg, Seed(0));
        assert_eq!(exact, 6);
        assert_eq!(d, 2.0);
        assert_eq!(exhaustive_density(&Graph::path(4), 3), 2.0 / 3.0);
    }

    #[test]
    fn heuristics_on_known_graphs() {
        assert_eq!(greedy_independent_set(&Graph::star(5)), 5);
        assert_eq!(greedy_independent_set(&Graph::complete(6)), 1);
        assert_eq!(double_sweep_diameter(&Graph::path(7)), 6);
        assert_eq!(double_sweep_diameter(&Graph::cycle(8)), 4);
        assert_eq!(double_sweep_diameter(&Graph::new(0)), 0);
    }

    #[test]
    fn summary_quantiles() {
        let s = Summary::of(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!(s.median, 3.0);
        assert_eq!(s.min, 1.0);
        assert_eq!(s.max, 5.0);
        assert_eq!(s.q25, 2.0);
        assert!((s.stddev - 2.5f64.sqrt()).abs() < 1e-12);
        assert!(Summary::of(&[]).is_none());
    }
}
