//! Parity repair: a small edge set `E0` whose odd-degree vertices are a
//! prescribed set `S`, so that removing `E0` from a graph whose odd set is
//! `S` leaves an Euler graph.
//!
//! `E0` is the mod-2 union of a greedy matching inside `S`, shortest paths
//! joining the vertices the matching left uncovered, and (in the default
//! mode) the forest edges of every component other than the largest.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::cycles::peel_with_forest;
use crate::error::{Error, Result};
use crate::graph::{Cycle, Edge, EdgeSet, Graph, Vertex};
use crate::random::Seed;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairStats {
    /// `|S|`.
    pub target_size: usize,
    pub matching_edges: usize,
    /// `|S'|`, target vertices left uncovered by the greedy matching.
    pub unmatched: usize,
    pub paths: usize,
    /// Sum of path lengths, counted with multiplicity.
    pub path_edges: usize,
    pub max_path_len: usize,
    pub tree_edges: usize,
    pub small_component_cycles: usize,
    /// Target vertices that could not be paired inside their component.
    pub residue: usize,
    pub e0_edges: usize,
}

#[derive(Clone, Debug, Default)]
pub struct EulerRepair {
    /// The mod-2 union of all parts.
    pub e0: EdgeSet,
    pub matching_part: EdgeSet,
    pub path_part: Vec<Vec<Vertex>>,
    pub tree_part: EdgeSet,
    /// Cycles peeled out of non-tree small components before their forest
    /// edges entered `tree_part`. They must be removed along with `e0`.
    pub small_component_cycles: Vec<Cycle>,
    /// The requested target set `S`, ascending.
    pub target: Vec<Vertex>,
    /// Vertices of `S` whose parity could not be fixed (no partner reachable).
    pub residue: Vec<Vertex>,
    pub stats: RepairStats,
}

impl EulerRepair {
    /// `g` minus the small-component cycles and `e0`.
    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        let mut h = g.clone();
        for c in &self.small_component_cycles {
            h.remove_cycle(c);
        }
        h.remove_edge_set(&self.e0)?;
        Ok(h)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairOptions {
    pub pairing_seed: Seed,
    /// One pass of length-3 augmenting paths after the greedy matching.
    pub augment: bool,
}

/// Greedy matching inside `s`: vertices are scanned in ascending order and
/// each unmatched one is matched to its lowest-id unmatched neighbor in `s`.
///
/// Returns the matching and the unmatched remainder `S'`, which is an
/// independent set of `g`.
pub fn greedy_odd_matching(g: &Graph, s: &[Vertex]) -> (EdgeSet, Vec<Vertex>) {
    let mut in_s = vec![false; g.n()];
    for &x in s {
        in_s[x as usize] = true;
    }
    let mut order: Vec<Vertex> = s.to_vec();
    order.sort_unstable();
    order.dedup();
    let mut matched = vec![false; g.n()];
    let mut m = EdgeSet::new();
    for &u in &order {
        if matched[u as usize] {
            continue;
        }
        let partner = g
            .neighbors(u)
            .filter(|&w| in_s[w as usize] && !matched[w as usize])
            .min();
        if let Some(w) = partner {
            matched[u as usize] = true;
            matched[w as usize] = true;
            m.insert(Edge::new(u, w));
        }
    }
    let rest = order.into_iter().filter(|&u| !matched[u as usize]).collect();
    (m, rest)
}

/// One pass of augmentation along paths `u - a = b - w` where `ab` is matched
/// and `u`, `w` are unmatched target vertices. Each success grows the matching
/// by one edge.
fn augment_once(g: &Graph, m: &mut EdgeSet, unmatched: &mut Vec<Vertex>) {
    let n = g.n();
    let mut partner = vec![u32::MAX; n];
    for e in m.iter() {
        partner[e.u() as usize] = e.v();
        partner[e.v() as usize] = e.u();
    }
    let mut free = vec![false; n];
    for &u in unmatched.iter() {
        free[u as usize] = true;
    }
    for &u in unmatched.iter() {
        if !free[u as usize] {
            continue;
        }
        let mut found = None;
        'search: for a in g.sorted_neighbors(u) {
            let b = partner[a as usize];
            if b == u32::MAX {
                continue;
            }
            for w in g.sorted_neighbors(b) {
                if w != u && free[w as usize] {
                    found = Some((a, b, w));
                    break 'search;
                }
            }
        }
        if let Some((a, b, w)) = found {
            m.remove(&Edge::new(a, b));
            m.insert(Edge::new(u, a));
            m.insert(Edge::new(b, w));
            partner[u as usize] = a;
            partner[a as usize] = u;
            partner[b as usize] = w;
            partner[w as usize] = b;
            free[u as usize] = false;
            free[w as usize] = false;
        }
    }
    unmatched.retain(|&u| free[u as usize]);
}

/// Reusable breadth-first search that breaks ties toward the lowest neighbor id.
pub(crate) struct Bfs {
    parent: Vec<Vertex>,
    stamp: Vec<u32>,
    epoch: u32,
    queue: VecDeque<Vertex>,
}

impl Bfs {
    pub(crate) fn new(n: usize) -> Bfs {
        Bfs {
            parent: vec![0; n],
            stamp: vec![0; n],
            epoch: 0,
            queue: VecDeque::new(),
        }
    }

    /// Shortest `a`-`b` path as a vertex sequence from `a` to `b`.
    pub(crate) fn shortest_path(&mut self, g: &Graph, a: Vertex, b: Vertex) -> Option<Vec<Vertex>> {
        self.epoch += 1;
        let epoch = self.epoch;
        self.queue.clear();
        self.stamp[a as usize] = epoch;
        self.queue.push_back(a);
        let mut scratch = Vec::new();
        'bfs: while let Some(x) = self.queue.pop_front() {
            scratch.clear();
            scratch.extend(g.neighbors(x));
            scratch.sort_unstable();
            for &y in &scratch {
                if self.stamp[y as usize] != epoch {
                    self.stamp[y as usize] = epoch;
                    self.parent[y as usize] = x;
                    if y == b {
                        break 'bfs;
                    }
                    self.queue.push_back(y);
                }
            }
        }
        if a != b && self.stamp[b as usize] != epoch {
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

/// Outcome of [`pair_via_paths`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pairing {
    /// One shortest path per formed pair, from the first to the second vertex.
    pub paths: Vec<Vec<Vertex>>,
    /// Vertices left without a partner in their component.
    pub residue: Vec<Vertex>,
}

/// Pairs up `s_prime` in a random order (within connected components) and
/// joins each pair by a BFS shortest path in `g`. Paths may share edges.
pub fn pair_via_paths(g: &Graph, s_prime: &[Vertex], pairing_seed: Seed) -> Pairing {
    if s_prime.is_empty() {
        return Pairing::default();
    }
    let mut order = s_prime.to_vec();
    order.sort_unstable();
    order.dedup();
    order.shuffle(&mut pairing_seed.derive_str("pairing").rng());

    let (label, count) = g.component_labels();
    let mut buckets: Vec<Vec<Vertex>> = vec![Vec::new(); count];
    let mut first_seen: Vec<u32> = Vec::new();
    for &x in &order {
        let l = label[x as usize];
        if buckets[l as usize].is_empty() {
            first_seen.push(l);
        }
        buckets[l as usize].push(x);
    }

    let mut bfs = Bfs::new(g.n());
    let mut out = Pairing::default();
    for l in first_seen {
        let bucket = &buckets[l as usize];
        for pair in bucket.chunks(2) {
            match *pair {
                [a, b] => {
                    let p = bfs
                        .shortest_path(g, a, b)
                        .expect("vertices in one component are connected");
                    out.paths.push(p);
                }
                [a] => out.residue.push(a),
                _ => unreachable!(),
            }
        }
    }
    out.residue.sort_unstable();
    out
}

/// All edges outside the largest connected component.
pub fn small_component_edges(g: &Graph) -> EdgeSet {
    let (label, _) = g.component_labels();
    let giant = giant_label(&label);
    g.edges().filter(|e| label[e.u() as usize] != giant).collect()
}

/// Label of the largest component (ties toward the component with the smallest vertex).
fn giant_label(label: &[u32]) -> u32 {
    let count = label.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
    let mut sizes = vec![0usize; count];
    for &l in label {
        sizes[l as usize] += 1;
    }
    let mut best = 0u32;
    for (l, &sz) in sizes.iter().enumerate() {
        if sz > sizes[best as usize] {
            best = l as u32;
        }
    }
    best
}

/// Builds `E0` for the target set `s`, or for the odd vertices of `g` when
/// `s` is `None`.
///
/// With an explicit `s` the whole graph is used for matching and paths, and
/// target vertices that have no partner in their component are reported in
/// `residue`. In the default mode components other than the largest are
/// handled by peeling their cycles and putting their remaining forest into
/// `E0`, which always succeeds: `apply(g)` is then Euler.
pub fn euler_reduction(g: &Graph, s: Option<&[Vertex]>, opts: &RepairOptions) -> Result<EulerRepair> {
    let mut repair = EulerRepair::default();
    let matching_target: Vec<Vertex> = match s {
        Some(s) => {
            for &x in s {
                g.check_vertex(x)?;
            }
            let mut t = s.to_vec();
            t.sort_unstable();
            t.dedup();
            if t.len() % 2 == 1 {
                return Err(Error::OddTargetSet(t.len()));
            }
            repair.target = t.clone();
            t
        }
        None => {
            repair.target = g.odd_vertices();
            let (label, _) = g.component_labels();
            let giant = giant_label(&label);
            let mut small = Graph::new(g.n());
            for e in g.edges().filter(|e| label[e.u() as usize] != giant) {
                small.add_edge(e.u(), e.v());
            }
            if small.m() > 0 {
                let (cycles, forest) = peel_with_forest(&small);
                repair.small_component_cycles = cycles;
                repair.tree_part = forest.into_iter().collect();
            }
            repair
                .target
                .iter()
                .copied()
                .filter(|&v| label[v as usize] == giant)
                .collect()
        }
    };

    let (mut matching, mut unmatched) = greedy_odd_matching(g, &matching_target);
    if opts.augment {
        augment_once(g, &mut matching, &mut unmatched);
    }
    let pairing = pair_via_paths(g, &unmatched, opts.pairing_seed);

    let mut e0 = repair.tree_part.clone();
    for e in matching.iter() {
        e0.toggle(*e);
    }
    for p in &pairing.paths {
        for w in p.windows(2) {
            e0.toggle(Edge::new(w[0], w[1]));
        }
    }

    repair.stats = RepairStats {
        target_size: repair.target.len(),
        matching_edges: matching.len(),
        unmatched: unmatched.len(),
        paths: pairing.paths.len(),
        path_edges: pairing.paths.iter().map(|p| p.len() - 1).sum(),
        max_path_len: pairing.paths.iter().map(|p| p.len() - 1).max().unwrap_or(0),
        tree_edges: repair.tree_part.len(),
        small_component_cycles: repair.small_component_cycles.len(),
        residue: pairing.residue.len(),
        e0_edges: e0.len(),
    };
    repair.e0 = e0;
    repair.matching_part = matching;
    repair.path_part = pairing.paths;
    repair.residue = pairing.residue;
    Ok(repair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::gnp;

    fn opts() -> RepairOptions {
        RepairOptions::default()
    }

    #[test]
    fn greedy_matching_examples() {
        let (m, rest) = greedy_odd_matching(&Graph::complete(4), &[]);
        assert!(m.is_empty() && rest.is_empty());

        let (m, rest) = greedy_odd_matching(&Graph::complete(4), &[0, 1, 2, 3]);
        assert_eq!(m.len(), 2);
        assert!(rest.is_empty());

        // Star center 0: vertex 0 takes leaf 1, leaves 2..4 stay unmatched.
        let star = Graph::star(4);
        let (m, rest) = greedy_odd_matching(&star, &[0, 1, 2, 3, 4]);
        assert_eq!(m.iter().copied().collect::<Vec<_>>(), vec![Edge::new(0, 1)]);
        assert_eq!(rest, vec![2, 3, 4]);
    }

    #[test]
    fn unmatched_set_is_independent() {
        for seed in 0..10 {
            let g = gnp(200, 0.03, Seed(seed)).unwrap();
            let s = g.odd_vertices();
            let (_, rest) = greedy_odd_matching(&g, &s);
            for (i, &a) in rest.iter().enumerate() {
                for &b in &rest[i + 1..] {
                    assert!(!g.has_edge(a, b));
                }
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let p = pair_via_paths(&Graph::path(3), &[], Seed(0));
        assert!(p.paths.is_empty());
        let p = pair_via_paths(&Graph::path(3), &[0, 2], Seed(0));
        assert_eq!(p.paths.len(), 1);
        let path = &p.paths[0];
        assert!(path == &vec![0, 1, 2] || path == &vec![2, 1, 0]);
        let p = pair_via_paths(&Graph::cycle(6), &[0, 3], Seed(5));
        assert_eq!(p.paths[0].len() - 1, 3);
        assert!(p.residue.is_empty());
    }

    #[test]
    fn pairing_reports_cross_component_residue() {
        let g = Graph::path(2).disjoint_union(&Graph::path(2));
        let p = pair_via_paths(&g, &[0, 2], Seed(1));
        assert!(p.paths.is_empty());
        assert_eq!(p.residue, vec![0, 2]);
    }

    #[test]
    fn small_component_examples() {
        assert!(small_component_edges(&Graph::complete(5)).is_empty());
        let g = Graph::complete(5).disjoint_union(&Graph::path(3));
        assert_eq!(small_component_edges(&g).len(), 2);
        let g = Graph::complete(5)
            .disjoint_union(&Graph::complete(2))
            .disjoint_union(&Graph::complete(2));
        let small = small_component_edges(&g);
        assert_eq!(
            small.iter().copied().collect::<Vec<_>>(),
            vec![Edge::new(5, 6), Edge::new(7, 8)]
        );
    }

    #[test]
    fn reduction_examples() {
        let r = euler_reduction(&Graph::cycle(7), None, &opts()).unwrap();
        assert!(r.e0.is_empty());

        let r = euler_reduction(&Graph::path(3), None, &opts()).unwrap();
        assert_eq!(r.e0, Graph::path(3).edge_set());
        assert_eq!(r.apply(&Graph::path(3)).unwrap().m(), 0);

        let k4 = Graph::complete(4);
        let r = euler_reduction(&k4, None, &opts()).unwrap();
        assert_eq!(r.e0.len(), 2);
        let rest = r.apply(&k4).unwrap();
        assert!(rest.is_euler());
        assert_eq!(rest.m(), 4);
    }

    #[test]
    fn reduction_rejects_odd_target() {
        let err = euler_reduction(&Graph::complete(4), Some(&[0, 1, 2]), &opts()).unwrap_err();
        assert!(matches!(err, Error::OddTargetSet(3)));
        assert!(euler_reduction(&Graph::complete(4), Some(&[0, 9]), &opts()).is_err());
    }

    #[test]
    fn flexible_target_parity() {
        let g = gnp(300, 0.05, Seed(3)).unwrap();
        let target: Vec<Vertex> = (0..40).collect();
        let r = euler_reduction(&g, Some(&target), &opts()).unwrap();
        assert!(r.residue.is_empty());
        assert_eq!(r.e0.odd_vertices(), target);
    }

    #[test]
    fn default_parity_with_cyclic_small_components() {
        // K5 is the giant; K4 and a triangle with a tail are small and cyclic.
        let tail = Graph::from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let g = Graph::complete(6)
            .disjoint_union(&Graph::complete(4))
            .disjoint_union(&tail);
        let r = euler_reduction(&g, None, &opts()).unwrap();
        assert!(!r.small_component_cycles.is_empty());
        let rest = r.apply(&g).unwrap();
        assert!(rest.is_euler());
        assert_eq!(r.e0.odd_vertices(), g.odd_vertices());
    }

    #[test]
    fn augmentation_never_hurts() {
        for seed in 0..5 {
            let g = gnp(400, 0.01, Seed(seed)).unwrap();
            let plain = euler_reduction(&g, None, &opts()).unwrap();
            let aug = euler_reduction(
                &g,
                None,
                &RepairOptions {
                    augment: true,
                    ..opts()
                },
            )
            .unwrap();
            assert!(aug.stats.unmatched <= plain.stats.unmatched);
            assert!(aug.apply(&g).unwrap().is_euler());
        }
    }
}
