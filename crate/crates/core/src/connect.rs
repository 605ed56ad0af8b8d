//! Closing matchings into cycles through a reserved connector graph.
//!
//! A bounded-degree graph is split into matchings; the edges of one matching
//! are chained `a1 b1 ~ a2 b2 ~ ... ~ ak bk ~ a1`, where each `~` is a short
//! path in the connector graph that avoids every other vertex of the chain.
//!
//! Edges may carry a *center*: a tagged edge `ww'` with center `v` stands for
//! the path `w v w'` of the underlying graph. Centers let the edges at a
//! high-degree vertex be paired up and treated as edges between its
//! neighbors. Within one cycle every center appears at most once.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cycles::ln_n;
use crate::error::{Error, Result};
use crate::graph::{Cycle, Edge, EdgeSet, Graph, Vertex};
use crate::random::{uniform_index, Seed};

/// An edge between its endpoints, or a length-2 path through `center`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TaggedEdge {
    pub edge: Edge,
    pub center: Option<Vertex>,
}

impl TaggedEdge {
    pub fn plain(edge: Edge) -> TaggedEdge {
        TaggedEdge { edge, center: None }
    }

    pub fn through(a: Vertex, center: Vertex, b: Vertex) -> TaggedEdge {
        TaggedEdge {
            edge: Edge::new(a, b),
            center: Some(center),
        }
    }

    /// The underlying edges: one, or the two edges through the center.
    pub fn expanded(&self) -> Vec<Edge> {
        match self.center {
            None => vec![self.edge],
            Some(c) => vec![Edge::new(self.edge.u(), c), Edge::new(c, self.edge.v())],
        }
    }

    /// The vertex walk from `from` to the other endpoint.
    fn walk_from(&self, from: Vertex) -> Vec<Vertex> {
        let to = self.edge.other(from);
        match self.center {
            None => vec![from, to],
            Some(c) => vec![from, c, to],
        }
    }
}

/// A set of tagged edges with pairwise disjoint endpoints. Centers may repeat.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedMatching {
    pub edges: Vec<TaggedEdge>,
}

impl TaggedMatching {
    pub fn new(edges: Vec<TaggedEdge>) -> TaggedMatching {
        TaggedMatching { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Endpoints of all edges, ascending.
    pub fn endpoints(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self.edges.iter().flat_map(|t| [t.edge.u(), t.edge.v()]).collect();
        v.sort_unstable();
        v
    }

    /// Whether endpoints are pairwise disjoint and no center is an endpoint.
    pub fn is_matching(&self) -> bool {
        let ends = self.endpoints();
        if ends.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        self.edges
            .iter()
            .filter_map(|t| t.center)
            .all(|c| ends.binary_search(&c).is_err())
    }

    pub fn expanded_edges(&self) -> Vec<Edge> {
        self.edges.iter().flat_map(TaggedEdge::expanded).collect()
    }
}

/// Greedy first-available-color edge coloring of `h` (at most `2Δ - 1`
/// classes), scanning edges in sorted order.
pub fn edge_color(h: &Graph) -> Vec<TaggedMatching> {
    let edges: Vec<TaggedEdge> = h.edge_list().into_iter().map(TaggedEdge::plain).collect();
    edge_color_tagged(h.n(), &edges)
}

/// Greedy coloring of tagged edges by their endpoints, in input order.
/// Parallel tagged edges (same endpoints, different centers) get distinct
/// colors. Centers are ignored here; see [`split_avoiding_duplicates`].
pub fn edge_color_tagged(n: usize, edges: &[TaggedEdge]) -> Vec<TaggedMatching> {
    // used[v] is a bitset of the colors present at v.
    let mut used: Vec<Vec<u64>> = vec![Vec::new(); n];
    let mut classes: Vec<TaggedMatching> = Vec::new();
    for &t in edges {
        let (a, b) = t.edge.endpoints();
        let (ua, ub) = (&used[a as usize], &used[b as usize]);
        let words = ua.len().max(ub.len());
        let mut color = words * 64;
        for w in 0..words {
            let taken = ua.get(w).copied().unwrap_or(0) | ub.get(w).copied().unwrap_or(0);
            if taken != u64::MAX {
                color = w * 64 + (!taken).trailing_zeros() as usize;
                break;
            }
        }
        for x in [a, b] {
            let bits = &mut used[x as usize];
            if bits.len() <= color / 64 {
                bits.resize(color / 64 + 1, 0);
            }
            bits[color / 64] |= 1 << (color % 64);
        }
        if classes.len() <= color {
            classes.resize_with(color + 1, TaggedMatching::default);
        }
        classes[color].edges.push(t);
    }
    classes
}

/// `max_v |N(v) ∩ S| / |N(v)|` over non-isolated vertices; 0 if there are none.
pub fn neighborhood_ratio(g: &Graph, s: &[Vertex]) -> f64 {
    let mut in_s = vec![false; g.n()];
    for &x in s {
        in_s[x as usize] = true;
    }
    (0..g.n() as Vertex)
        .filter(|&v| g.deg(v) > 0)
        .map(|v| g.neighbors(v).filter(|&w| in_s[w as usize]).count() as f64 / g.deg(v) as f64)
        .fold(0.0, f64::max)
}

/// One part of a [`sparsify_split`].
#[derive(Clone, Debug)]
pub struct SparsePart {
    pub graph: Graph,
    pub matching: TaggedMatching,
    /// `neighborhood_ratio(graph, endpoints(matching))`.
    pub ratio: f64,
}

/// Splits both the connector graph and the matching into `k` parts, each
/// edge independently and uniformly.
pub fn sparsify_split(gc: &Graph, m: &TaggedMatching, k: usize, seed: Seed) -> Vec<SparsePart> {
    assert!(k >= 1, "need at least one part");
    let graph_seed = seed.derive_str("sparsify-graph");
    let match_seed = seed.derive_str("sparsify-matching");
    let mut graphs = vec![Graph::new(gc.n()); k];
    for e in gc.edge_list() {
        graphs[uniform_index(graph_seed, e, k)].add_edge(e.u(), e.v());
    }
    let mut matchings = vec![TaggedMatching::default(); k];
    for t in &m.edges {
        let key = t.center.map_or(t.edge, |c| Edge::new(t.edge.u(), c));
        matchings[uniform_index(match_seed, key, k)].edges.push(*t);
    }
    graphs
        .into_iter()
        .zip(matchings)
        .map(|(graph, matching)| {
            let ratio = neighborhood_ratio(&graph, &matching.endpoints());
            SparsePart { graph, matching, ratio }
        })
        .collect()
}

/// Disjoint ordered pairs to be joined by vertex-disjoint paths.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRequest {
    pairs: Vec<(Vertex, Vertex)>,
}

impl PairRequest {
    /// Fails if a pair repeats a vertex or two pairs share one.
    pub fn new(pairs: Vec<(Vertex, Vertex)>) -> Result<PairRequest> {
        let mut all: Vec<Vertex> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        all.sort_unstable();
        if let Some(w) = all.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidPairRequest(format!("vertex {} appears twice", w[0])));
        }
        Ok(PairRequest { pairs })
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConnectConfig {
    /// Longest allowed connector path, in edges. `None` means
    /// `⌈4 ln n / ln(np)⌉` with `np` the average degree of the connector graph.
    pub max_path_len: Option<usize>,
    /// Extra attempts, each with a reshuffled order that puts the pairs the
    /// previous attempt failed on first.
    pub retries: usize,
    /// Batches hold at most `capacity_fraction · n ln(np) / ln n` pairs.
    pub capacity_fraction: f64,
    /// A batch whose neighborhood ratio exceeds this is halved. `None` means
    /// `4 / sqrt(ln n)`.
    pub ratio_bound: Option<f64>,
    pub seed: Seed,
}

impl Default for ConnectConfig {
    fn default() -> ConnectConfig {
        ConnectConfig {
            max_path_len: None,
            retries: 3,
            capacity_fraction: 0.125,
            ratio_bound: None,
            seed: Seed(0),
        }
    }
}

impl ConnectConfig {
    pub fn path_len_cap(&self, gc: &Graph) -> usize {
        if let Some(l) = self.max_path_len {
            return l.max(1);
        }
        let np = gc.average_degree();
        if np <= 1.0 + 1e-9 {
            return gc.n().max(1);
        }
        // Below e the log is tiny; keep the cap meaningful.
        let cap = 4.0 * ln_n(gc.n()) / np.max(std::f64::consts::E).ln();
        (cap.ceil() as usize).clamp(1, gc.n().max(1))
    }

    pub fn ratio_bound_for(&self, n: usize) -> f64 {
        self.ratio_bound.unwrap_or_else(|| 4.0 / ln_n(n).sqrt())
    }

    /// Largest batch size, at least 1.
    pub fn capacity(&self, gc: &Graph) -> usize {
        let n = gc.n().max(3) as f64;
        let np = gc.average_degree().max(std::f64::consts::E);
        ((self.capacity_fraction * n * np.ln() / n.ln()).floor() as usize).max(1)
    }
}

/// Result of [`connect_pairs`]: `paths[i]` joins `pairs[i]`, from `a` to `b`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Connection {
    pub paths: Vec<Option<Vec<Vertex>>>,
    pub attempts: usize,
}

impl Connection {
    pub fn served(&self) -> usize {
        self.paths.iter().filter(|p| p.is_some()).count()
    }

    pub fn unserved(&self) -> Vec<usize> {
        (0..self.paths.len()).filter(|&i| self.paths[i].is_none()).collect()
    }
}

/// Bounded BFS over vertices that are neither blocked nor already used.
struct Router {
    stamp: Vec<u32>,
    epoch: u32,
    parent: Vec<Vertex>,
    dist: Vec<u32>,
    queue: VecDeque<Vertex>,
}

impl Router {
    fn new(n: usize) -> Router {
        Router {
            stamp: vec![0; n],
            epoch: 0,
            parent: vec![0; n],
            dist: vec![0; n],
            queue: VecDeque::new(),
        }
    }

    /// Shortest `a`-`b` path of at most `cap` edges whose interior avoids
    /// every vertex `x` with `blocked[x]`.
    fn route(&mut self, g: &Graph, a: Vertex, b: Vertex, cap: usize, blocked: &[bool]) -> Option<Vec<Vertex>> {
        self.epoch += 1;
        let epoch = self.epoch;
        self.queue.clear();
        self.stamp[a as usize] = epoch;
        self.dist[a as usize] = 0;
        self.queue.push_back(a);
        let mut found = false;
        'bfs: while let Some(x) = self.queue.pop_front() {
            let d = self.dist[x as usize];
            if d as usize >= cap {
                continue;
            }
            for y in g.neighbors(x) {
                if self.stamp[y as usize] == epoch {
                    continue;
                }
                if y == b {
                    self.parent[y as usize] = x;
                    found = true;
                    break 'bfs;
                }
                if blocked[y as usize] {
                    continue;
                }
                self.stamp[y as usize] = epoch;
                self.parent[y as usize] = x;
                self.dist[y as usize] = d + 1;
                self.queue.push_back(y);
            }
        }
        if !found {
            return None;
        }
        let mut path = vec![b];
        let mut cur = b;
        while cur != a {
            cur = self.parent[cur as usize];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }
}

/// Joins each requested pair by a path in `gc`. Paths are internally
/// vertex-disjoint, their interiors avoid every requested vertex and every
/// vertex in `forbidden`, and each has at most `cfg.path_len_cap(gc)` edges.
/// Unserved pairs are a normal outcome.
pub fn connect_pairs(gc: &Graph, req: &PairRequest, forbidden: &[Vertex], cfg: &ConnectConfig) -> Connection {
    let k = req.len();
    if k == 0 {
        return Connection::default();
    }
    let cap = cfg.path_len_cap(gc);
    let mut rng = cfg.seed.derive_str("connect").rng();
    let mut router = Router::new(gc.n());
    let mut base_blocked = vec![false; gc.n()];
    for &(a, b) in req.pairs() {
        base_blocked[a as usize] = true;
        base_blocked[b as usize] = true;
    }
    for &x in forbidden {
        base_blocked[x as usize] = true;
    }

    let mut order: Vec<usize> = (0..k).collect();
    order.shuffle(&mut rng);
    let mut best = Connection {
        paths: vec![None; k],
        attempts: 0,
    };
    let mut best_served = 0;
    for attempt in 0..=cfg.retries {
        let mut blocked = base_blocked.clone();
        let mut paths: Vec<Option<Vec<Vertex>>> = vec![None; k];
        for &i in &order {
            let (a, b) = req.pairs()[i];
            if let Some(p) = router.route(gc, a, b, cap, &blocked) {
                for &x in &p[1..p.len() - 1] {
                    blocked[x as usize] = true;
                }
                paths[i] = Some(p);
            }
        }
        let served = paths.iter().filter(|p| p.is_some()).count();
        if attempt == 0 || served > best_served {
            best_served = served;
            best.paths = paths;
        }
        best.attempts = attempt + 1;
        if best_served == k {
            break;
        }
        // Failed pairs first, each part in a fresh random order.
        let (mut failed, mut rest): (Vec<usize>, Vec<usize>) = order.iter().partition(|&&i| best.paths[i].is_none());
        failed.shuffle(&mut rng);
        rest.shuffle(&mut rng);
        failed.extend(rest);
        order = failed;
    }
    best
}

/// Output of [`close_matching_into_cycles`].
#[derive(Clone, Debug, Default)]
pub struct ClosureResult {
    pub cycles: Vec<Cycle>,
    /// Connector edges on the returned cycles (removed from the connector graph).
    pub connector_edges: EdgeSet,
    /// Matching edges that ended on no cycle.
    pub failed: Vec<TaggedEdge>,
    /// Matching edges that ended on a cycle.
    pub served: usize,
    pub groups: usize,
    /// Connector pairs requested / not served, over all attempts.
    pub pairs_requested: usize,
    pub pairs_failed: usize,
}

/// Chains each closure group of `m` into a cycle through connector paths in
/// `gc`, removing the connector edges it uses from `gc`. Groups come from
/// [`split_avoiding_duplicates`] (unlimited size), so no cycle repeats a center.
///
/// When a connector fails, the matching edge after it is demoted to `failed`
/// and the shortened chain is retried, for up to `cfg.retries` rounds; a group
/// still failing after that is demoted entirely.
pub fn close_matching_into_cycles(gc: &mut Graph, m: &TaggedMatching, cfg: &ConnectConfig) -> ClosureResult {
    let mut out = ClosureResult::default();
    if m.is_empty() {
        return out;
    }
    let groups = split_avoiding_duplicates(m, usize::MAX);
    out.groups = groups.len();
    let mut rng = cfg.seed.derive_str("closure").rng();
    for (gi, group) in groups.into_iter().enumerate() {
        let mut chain: Vec<(TaggedEdge, bool)> = group.edges.into_iter().map(|t| (t, rng.gen())).collect();
        chain.shuffle(&mut rng);
        let mut closed = false;
        for round in 0..=cfg.retries {
            if chain.is_empty() {
                closed = true;
                break;
            }
            // Edge i runs a_i -> b_i; connectors join b_i to a_{i+1}.
            let ends: Vec<(Vertex, Vertex)> = chain
                .iter()
                .map(|&(t, flip)| {
                    if flip {
                        (t.edge.v(), t.edge.u())
                    } else {
                        t.edge.endpoints()
                    }
                })
                .collect();
            let k = chain.len();
            let pairs: Vec<(Vertex, Vertex)> = (0..k).map(|i| (ends[i].1, ends[(i + 1) % k].0)).collect();
            let centers: Vec<Vertex> = chain.iter().filter_map(|(t, _)| t.center).collect();
            let req = PairRequest::new(pairs).expect("matching endpoints are disjoint");
            let sub = ConnectConfig {
                seed: cfg.seed.derive((gi as u64) << 8 | round as u64),
                ..cfg.clone()
            };
            let conn = connect_pairs(gc, &req, &centers, &sub);
            out.pairs_requested += k;
            let mut failed = conn.unserved();
            // A lone plain edge must not be closed by a parallel connector edge.
            if k == 1 && chain[0].0.center.is_none() && conn.paths[0].as_ref().is_some_and(|p| p.len() == 2) {
                failed = vec![0];
            }
            out.pairs_failed += failed.len();
            if failed.is_empty() {
                let mut walk: Vec<Vertex> = Vec::new();
                for i in 0..k {
                    let (t, _) = chain[i];
                    walk.extend(t.walk_from(ends[i].0));
                    let p = conn.paths[i].as_ref().unwrap();
                    walk.extend(&p[1..p.len() - 1]);
                    for w in p.windows(2) {
                        out.connector_edges.insert(Edge::new(w[0], w[1]));
                        gc.remove_edge(w[0], w[1]);
                    }
                }
                out.served += k;
                out.cycles.push(Cycle::new(walk));
                closed = true;
                break;
            }
            // Demote the edge after each failed connector, highest index first.
            let mut drop: Vec<usize> = failed.iter().map(|&i| (i + 1) % k).collect();
            drop.sort_unstable();
            drop.dedup();
            for &i in drop.iter().rev() {
                out.failed.push(chain.remove(i).0);
            }
            chain.shuffle(&mut rng);
        }
        if !closed {
            out.failed.extend(chain.into_iter().map(|(t, _)| t));
        }
    }
    out
}

/// For each `v` in `v0`, pairs up its neighbors outside `v0` (in ascending
/// order) into tagged edges with center `v`. With an odd count the last
/// neighbor's edge to `v` is left over. Edges inside `v0` are not touched.
pub fn build_auxiliary_pairing(h0: &Graph, v0: &[Vertex]) -> (Vec<TaggedEdge>, Vec<Edge>) {
    let mut in_v0 = vec![false; h0.n()];
    for &v in v0 {
        in_v0[v as usize] = true;
    }
    let mut centers = v0.to_vec();
    centers.sort_unstable();
    centers.dedup();
    let mut tagged = Vec::new();
    let mut leftover = Vec::new();
    for v in centers {
        let outside: Vec<Vertex> = h0
            .sorted_neighbors(v)
            .into_iter()
            .filter(|&w| !in_v0[w as usize])
            .collect();
        for pair in outside.chunks(2) {
            match *pair {
                [a, b] => tagged.push(TaggedEdge::through(a, v, b)),
                [a] => leftover.push(Edge::new(a, v)),
                _ => unreachable!(),
            }
        }
    }
    (tagged, leftover)
}

/// Splits `m` into groups with pairwise distinct centers by greedy first fit
/// in input order. Edges without a center go to the first group with room.
/// `group_cap` bounds the group size (`usize::MAX` for no bound).
pub fn split_avoiding_duplicates(m: &TaggedMatching, group_cap: usize) -> Vec<TaggedMatching> {
    let group_cap = group_cap.max(1);
    let mut groups: Vec<TaggedMatching> = Vec::new();
    let mut centers: Vec<rustc_hash::FxHashSet<Vertex>> = Vec::new();
    for &t in &m.edges {
        let slot = (0..groups.len())
            .find(|&i| groups[i].len() < group_cap && t.center.is_none_or(|c| !centers[i].contains(&c)));
        let i = slot.unwrap_or_else(|| {
            groups.push(TaggedMatching::default());
            centers.push(Default::default());
            groups.len() - 1
        });
        groups[i].edges.push(t);
        if let Some(c) = t.center {
            centers[i].insert(c);
        }
    }
    groups
}
