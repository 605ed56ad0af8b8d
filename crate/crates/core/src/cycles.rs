//! Cycle extraction: k-cores, long-cycle stripping by rotation-extension,
//! expansion witnesses, and peeling an Euler graph into cycles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Cycle, Edge, Graph, Vertex};
use crate::posa::{Limits, Posa};
use crate::random::Seed;

/// Natural log of `n`, with `n` clamped to at least 3 so that polylog
/// formulas stay positive on tiny graphs.
pub fn ln_n(n: usize) -> f64 {
    (n.max(3) as f64).ln()
}

/// Vertices surviving repeated removal of vertices of degree `< k`.
pub fn core_mask(g: &Graph, k: usize) -> Vec<bool> {
    let n = g.n();
    let mut deg = g.degrees();
    let mut alive = vec![true; n];
    if k == 0 {
        return alive;
    }
    let mut stack: Vec<Vertex> = (0..n as Vertex).filter(|&v| deg[v as usize] < k).collect();
    for &v in &stack {
        alive[v as usize] = false;
    }
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            let w = w as usize;
            if alive[w] {
                deg[w] -= 1;
                if deg[w] < k {
                    alive[w] = false;
                    stack.push(w as Vertex);
                }
            }
        }
    }
    alive
}

/// The `k`-core: the maximal subgraph of minimum degree at least `k`, on the
/// same vertex set (vertices outside the core become isolated). May be empty.
pub fn k_core(g: &Graph, k: usize) -> Graph {
    let alive = core_mask(g, k);
    Graph::from_edge_iter(
        g.n(),
        g.edges().filter(|e| alive[e.u() as usize] && alive[e.v() as usize]),
    )
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripConfig {
    /// Rotation budget per search, as a multiple of the searched vertex count.
    pub rotations_per_n: f64,
    /// A search stops after `stall_factor · size / d` rotations without
    /// closing a longer cycle (`size` the searched vertex count, `d` the
    /// average degree), capped by `stall_max`. Dense graphs give long cycles
    /// straight away; sparse ones need the rotations.
    pub stall_factor: f64,
    pub stall_max: usize,
    /// The search runs in the `⌈core_factor · d⌉`-core.
    pub core_factor: f64,
    /// Cycles shorter than `min_accept * d` at extraction are still taken
    /// (the longest found), but counted in [`StripResult::below_accept`].
    pub min_accept: f64,
    /// Hard cap on extracted cycles; `None` means no cap.
    pub max_rounds: Option<usize>,
    pub seed: Seed,
}

impl Default for StripConfig {
    fn default() -> StripConfig {
        StripConfig {
            rotations_per_n: 50.0,
            stall_factor: 16.0,
            stall_max: 4000,
            core_factor: 0.5,
            min_accept: 1.0,
            max_rounds: None,
            seed: Seed(0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StripStop {
    /// Average degree reached the stop threshold.
    Reached,
    /// No cycle left to extract.
    NoCycle,
    /// `max_rounds` exhausted with the average degree still above the threshold.
    Budget,
}

#[derive(Clone, Debug)]
pub struct StripResult {
    pub cycles: Vec<Cycle>,
    pub remainder: Graph,
    /// Average degree of the working graph when each cycle was extracted.
    pub extraction_degrees: Vec<f64>,
    pub rounds: usize,
    pub below_accept: usize,
    /// Rotations over all searches.
    pub rotations: usize,
    pub stop: StripStop,
}

impl StripResult {
    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Cycle::len).collect()
    }
}

/// Highest-degree vertex among `alive` ones, ties to the lowest id.
fn best_start(g: &Graph, alive: &[bool]) -> Option<Vertex> {
    (0..g.n() as Vertex)
        .filter(|&v| alive[v as usize] && g.deg(v) > 0)
        .max_by(|&a, &b| g.deg(a).cmp(&g.deg(b)).then(b.cmp(&a)))
}

/// Repeatedly removes long cycles while the average degree exceeds
/// `stop_avg_deg`. Each round searches the `⌈d/2⌉`-core (by default; see
/// [`StripConfig::core_factor`]) of the current graph
/// for a cycle of length `⌈d·ln²n⌉` (capped at the core size) and removes the
/// longest cycle the search closed.
pub fn strip_long_cycles(h: &Graph, stop_avg_deg: f64, cfg: &StripConfig) -> StripResult {
    let n = h.n();
    let log2 = ln_n(n).powi(2);
    let mut work = h.clone();
    let mut rng = cfg.seed.derive_str("strip").rng();
    let mut cycles = Vec::new();
    let mut degrees = Vec::new();
    let mut below_accept = 0;
    let mut rotations = 0;

    let stop = loop {
        let d = work.average_degree();
        if d <= stop_avg_deg || work.m() == 0 {
            break StripStop::Reached;
        }
        if cfg.max_rounds.is_some_and(|r| cycles.len() >= r) {
            break StripStop::Budget;
        }
        let k = (cfg.core_factor * d).ceil() as usize;
        let mut alive = core_mask(&work, k);
        let mut size = alive.iter().filter(|&&a| a).count();
        if size < 3 {
            alive = vec![true; n];
            size = work.active_vertex_count();
        }
        let target = ((d * log2).ceil() as usize).clamp(3, size.max(3));
        let limits = Limits {
            target,
            budget: (cfg.rotations_per_n * size as f64).ceil() as usize,
            stall: ((cfg.stall_factor * size as f64 / d.max(1.0)).ceil() as usize).clamp(1, cfg.stall_max.max(1)),
        };
        let Some(start) = best_start(&work, &alive) else {
            break StripStop::NoCycle;
        };
        let out = Posa::new(&work, Some(&alive)).search(start, limits, &mut rng);
        rotations += out.rotations;
        let found = match out.cycle {
            Some(c) => Some(c),
            // The core can be a forest only when k <= 1; fall back to any cycle.
            None => find_any_cycle(&work),
        };
        let Some(c) = found else {
            break StripStop::NoCycle;
        };
        if (c.len() as f64) < cfg.min_accept * d {
            below_accept += 1;
        }
        let cycle = Cycle::new(c);
        work.remove_cycle(&cycle);
        cycles.push(cycle);
        degrees.push(d);
    };

    StripResult {
        rounds: cycles.len(),
        cycles,
        remainder: work,
        extraction_degrees: degrees,
        below_accept,
        rotations,
        stop,
    }
}

/// Any cycle of `g`, found by DFS; `None` if `g` is a forest.
pub(crate) fn find_any_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    let n = g.n();
    let mut parent = vec![u32::MAX; n];
    let mut depth = vec![u32::MAX; n];
    let mut stack: Vec<(Vertex, Vec<Vertex>, usize)> = Vec::new();
    for s in 0..n as Vertex {
        if depth[s as usize] != u32::MAX || g.deg(s) == 0 {
            continue;
        }
        depth[s as usize] = 0;
        stack.push((s, g.neighbors(s).collect(), 0));
        while let Some((x, ns, i)) = stack.last_mut() {
            let x = *x;
            if *i == ns.len() {
                stack.pop();
                continue;
            }
            let y = ns[*i];
            *i += 1;
            if y == parent[x as usize] {
                continue;
            }
            if depth[y as usize] == u32::MAX {
                depth[y as usize] = depth[x as usize] + 1;
                parent[y as usize] = x;
                let ys = g.neighbors(y).collect();
                stack.push((y, ys, 0));
            } else if depth[y as usize] < depth[x as usize] {
                // Back edge to an ancestor.
                let mut cyc = vec![x];
                let mut cur = x;
                while cur != y {
                    cur = parent[cur as usize];
                    cyc.push(cur);
                }
                return Some(cyc);
            }
        }
    }
    None
}

/// Searches for a cycle of length at least `target` by rotation-extension,
/// starting from the highest-degree vertex of each of the (up to three)
/// largest components. Returns the longest cycle found, even if shorter than
/// `target`; `None` only if no cycle was closed.
pub fn find_long_cycle(g: &Graph, target: usize, cfg: &StripConfig) -> Option<Cycle> {
    let target = target.max(3);
    let mut rng = cfg.seed.derive_str("long-cycle").rng();
    let mut best: Option<Vec<Vertex>> = None;
    for comp in g.connected_components().into_iter().take(3) {
        if comp.len() < 3 {
            break;
        }
        let start = *comp
            .iter()
            .max_by(|&&a, &&b| g.deg(a).cmp(&g.deg(b)).then(b.cmp(&a)))
            .unwrap();
        let size = comp.len();
        let limits = Limits {
            target,
            budget: (cfg.rotations_per_n * size as f64).ceil() as usize,
            stall: (cfg.rotations_per_n * size as f64).ceil() as usize,
        };
        let out = Posa::new(g, None).search(start, limits, &mut rng);
        if let Some(c) = out.cycle {
            if best.as_ref().is_none_or(|b| c.len() > b.len()) {
                best = Some(c);
            }
        }
        if best.as_ref().is_some_and(|b| b.len() >= target) {
            break;
        }
    }
    best.map(Cycle::new)
}

/// External neighborhood `N(T) \ T`.
pub fn external_neighborhood(g: &Graph, t: &[Vertex]) -> Vec<Vertex> {
    let mut in_t = rustc_hash::FxHashSet::default();
    in_t.extend(t.iter().copied());
    let mut out: Vec<Vertex> = t
        .iter()
        .flat_map(|&x| g.neighbors(x))
        .filter(|y| !in_t.contains(y))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn is_witness(g: &Graph, t: &[Vertex], bound: usize) -> bool {
    !t.is_empty() && t.len() <= bound && external_neighborhood(g, t).len() <= 2 * t.len()
}

/// Largest number of subsets the exhaustive fallback of
/// [`expansion_witness`] will enumerate.
const EXHAUSTIVE_SUBSET_CAP: u128 = 2_000_000;

/// Looks for a cycle of length at least `3t`; if none is found, returns a set
/// `T` with `|T| <= t` and `|N(T)| <= 2|T|`.
///
/// Candidates are tried in order: endpoint sets reachable by rotations of the
/// maximal paths the search stalled on, then single vertices of degree at
/// most 2, then (when the count of subsets of size `<= t` is small) every such
/// subset. Every returned set is verified by direct count. `None` means a
/// long cycle was found, or no verified witness exists among the candidates.
pub fn expansion_witness(g: &Graph, t: usize, cfg: &StripConfig) -> Option<Vec<Vertex>> {
    assert!(t >= 1, "t must be positive");
    let n = g.n();
    if n == 0 {
        return None;
    }
    let target = 3 * t;
    let mut rng = cfg.seed.derive_str("witness").rng();
    let mut stalled_paths = Vec::new();
    // Small graphs: try every start; otherwise the highest-degree vertices.
    let mut starts: Vec<Vertex> = (0..n as Vertex).filter(|&v| g.deg(v) > 0).collect();
    starts.sort_by(|&a, &b| g.deg(b).cmp(&g.deg(a)).then(a.cmp(&b)));
    starts.truncate(if n <= 64 { n } else { 8 });
    for &s in &starts {
        let limits = Limits {
            target,
            budget: (cfg.rotations_per_n * n as f64).ceil() as usize,
            stall: (cfg.rotations_per_n * n as f64).ceil() as usize,
        };
        let out = Posa::new(g, None).search(s, limits, &mut rng);
        if out.cycle.as_ref().is_some_and(|c| c.len() >= target) {
            return None;
        }
        stalled_paths.push(out.path);
    }

    for path in &stalled_paths {
        let ends = rotation_endpoints(g, path, 4 * t + 8);
        if is_witness(g, &ends, t) {
            let mut ends = ends;
            ends.sort_unstable();
            return Some(ends);
        }
        for &x in &ends {
            if is_witness(g, &[x], t) {
                return Some(vec![x]);
            }
        }
    }
    if let Some(v) = (0..n as Vertex).find(|&v| g.deg(v) <= 2) {
        return Some(vec![v]);
    }
    exhaustive_witness(g, t)
}

/// Endpoints of paths obtainable from `path` by rotations that keep
/// `path[0]` fixed, explored breadth-first up to `limit` endpoints.
fn rotation_endpoints(g: &Graph, path: &[Vertex], limit: usize) -> Vec<Vertex> {
    if path.len() < 2 {
        return path.to_vec();
    }
    let mut seen = rustc_hash::FxHashSet::default();
    let mut queue = std::collections::VecDeque::new();
    seen.insert(*path.last().unwrap());
    queue.push_back(path.to_vec());
    let mut ends = vec![*path.last().unwrap()];
    while let Some(p) = queue.pop_front() {
        if ends.len() >= limit {
            break;
        }
        let len = p.len();
        let end = p[len - 1];
        let pos: rustc_hash::FxHashMap<Vertex, usize> = p.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        for w in g.neighbors(end) {
            let Some(&j) = pos.get(&w) else { continue };
            if j + 2 >= len {
                continue;
            }
            let new_end = p[j + 1];
            if seen.insert(new_end) {
                let mut q = p.clone();
                q[j + 1..].reverse();
                ends.push(new_end);
                queue.push_back(q);
                if ends.len() >= limit {
                    break;
                }
            }
        }
    }
    ends
}

fn binomial(n: usize, k: usize) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

fn exhaustive_witness(g: &Graph, t: usize) -> Option<Vec<Vertex>> {
    let n = g.n();
    let total: u128 = (1..=t.min(n)).map(|k| binomial(n, k)).sum();
    if total > EXHAUSTIVE_SUBSET_CAP {
        return None;
    }
    for k in 1..=t.min(n) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let set: Vec<Vertex> = idx.iter().map(|&i| i as Vertex).collect();
            if is_witness(g, &set, t) {
                return Some(set);
            }
            // Next k-combination in lexicographic order.
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    None
}

/// Splits `g` into edge-disjoint cycles plus a forest by walking until a
/// vertex repeats and popping the closed cycle. A walk that gets stuck at a
/// vertex with no unused edges backs off, and the edge it came along becomes
/// a forest edge. On an Euler graph the forest is empty.
pub fn peel_with_forest(g: &Graph) -> (Vec<Cycle>, Vec<Edge>) {
    let n = g.n();
    let mut work = g.clone();
    let mut pos = vec![u32::MAX; n];
    let mut path: Vec<Vertex> = Vec::new();
    let mut cycles = Vec::new();
    let mut forest = Vec::new();
    for s in 0..n as Vertex {
        if work.deg(s) == 0 {
            continue;
        }
        path.clear();
        path.push(s);
        pos[s as usize] = 0;
        while let Some(&cur) = path.last() {
            let next = work.neighbors(cur).next();
            match next {
                Some(w) => {
                    work.remove_edge(cur, w);
                    let p = pos[w as usize];
                    if p != u32::MAX {
                        let cyc: Vec<Vertex> = path[p as usize..].to_vec();
                        for &x in &cyc[1..] {
                            pos[x as usize] = u32::MAX;
                        }
                        path.truncate(p as usize + 1);
                        let mut cyc = cyc;
                        cyc.push(cur);
                        cyc.pop();
                        cycles.push(Cycle::new(cyc));
                    } else {
                        pos[w as usize] = path.len() as u32;
                        path.push(w);
                    }
                }
                None => {
                    path.pop();
                    pos[cur as usize] = u32::MAX;
                    if let Some(&prev) = path.last() {
                        forest.push(Edge::new(prev, cur));
                    }
                }
            }
        }
    }
    (cycles, forest)
}

/// Partitions the edges of an Euler graph into simple cycles.
pub fn peel_cycles(h: &Graph) -> Result<Vec<Cycle>> {
    if let Some(v) = (0..h.n() as Vertex).find(|&v| h.deg(v) % 2 == 1) {
        return Err(Error::NotEuler {
            vertex: v,
            degree: h.deg(v),
        });
    }
    let (cycles, forest) = peel_with_forest(h);
    assert!(forest.is_empty(), "walk stalled away from its start on an Euler graph");
    Ok(cycles)
}

/// Number of cycles of length at most `threshold`.
pub fn count_short_cycles(cycles: &[Cycle], threshold: usize) -> usize {
    cycles.iter().filter(|c| c.len() <= threshold).count()
}

/// Edge-density threshold for a vertex set of size `s` in an `n`-vertex
/// graph: `max(s / (12 ln²n), 7)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparsenessParams {
    pub set_size: usize,
    pub n: usize,
}

impl SparsenessParams {
    pub const LOG_DIVISOR: f64 = 12.0;
    pub const FLOOR: f64 = 7.0;

    pub fn ratio(&self) -> f64 {
        (self.set_size as f64 / (Self::LOG_DIVISOR * ln_n(self.n).powi(2))).max(Self::FLOOR)
    }
}

/// Largest vertex count [`is_sufficiently_sparse`] accepts.
pub const SPARSENESS_BRUTE_FORCE_MAX_N: usize = 14;

/// Checks by enumerating all vertex subsets that every set `S` spans fewer
/// than `r|S|` edges. `None` for graphs above the brute-force size.
pub fn is_sufficiently_sparse(g: &Graph) -> Option<bool> {
    let n = g.n();
    if n > SPARSENESS_BRUTE_FORCE_MAX_N {
        return None;
    }
    let masks: Vec<u32> = (0..n as Vertex)
        .map(|v| g.neighbors(v).fold(0u32, |acc, w| acc | (1 << w)))
        .collect();
    for set in 1u32..(1u32 << n) {
        let size = set.count_ones() as usize;
        let spanned: u32 = (0..n)
            .filter(|&v| set & (1 << v) != 0)
            .map(|v| (masks[v] & set).count_ones())
            .sum::<u32>()
            / 2;
        let r = SparsenessParams { set_size: size, n }.ratio();
        if f64::from(spanned) >= r * size as f64 {
            return Some(false);
        }
    }
    Some(true)
}
