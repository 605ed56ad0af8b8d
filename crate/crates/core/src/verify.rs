//! Independent checking of decompositions, and the counting lower bound.
//!
//! The verifier rebuilds its own edge table from the raw edge list and uses
//! nothing from the decomposition machinery.

use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::decomposition::Decomposition;
use crate::graph::{Edge, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadCycle {
    /// Index into the decomposition's cycle list.
    pub index: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub piece_count: usize,
    /// Distinct graph edges covered by some piece.
    pub covered_edges: usize,
    /// Graph edges covered more than once (each listed once).
    pub duplicate_edges: Vec<Edge>,
    /// Graph edges covered by no piece.
    pub missing_edges: Vec<Edge>,
    /// Single-edge pieces that are not edges of the graph.
    pub foreign_edges: Vec<Edge>,
    pub bad_cycles: Vec<BadCycle>,
    /// Set when the decomposition is for a different vertex count.
    pub vertex_count_mismatch: Option<(usize, usize)>,
}

fn key(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Checks that `d` partitions `E(g)` into simple cycles of `g` and single
/// edges of `g`. Defects are reported, never thrown.
pub fn verify_decomposition(g: &Graph, d: &Decomposition) -> VerifyReport {
    let mut report = VerifyReport {
        piece_count: d.cycles.len() + d.single_edges.len(),
        ..VerifyReport::default()
    };
    if d.n != g.n() {
        report.vertex_count_mismatch = Some((g.n(), d.n));
    }
    // Edge -> times covered.
    let edges = g.edge_list();
    let mut cover: FxHashMap<(Vertex, Vertex), u32> = FxHashMap::default();
    cover.reserve(edges.len());
    cover.extend(edges.iter().map(|e| (key(e.u(), e.v()), 0)));
    let n = g.n() as u64;

    for (index, c) in d.cycles.iter().enumerate() {
        let vs = c.vertices();
        let mut reasons = Vec::new();
        if vs.len() < 3 {
            reasons.push(format!("length {} < 3", vs.len()));
        }
        let mut seen = FxHashSet::default();
        for &v in vs {
            if u64::from(v) >= n {
                reasons.push(format!("vertex {v} out of range"));
            } else if !seen.insert(v) {
                reasons.push(format!("vertex {v} repeated"));
            }
        }
        let len = vs.len();
        let mut steps = Vec::with_capacity(len);
        for i in 0..len {
            let (a, b) = (vs[i], vs[(i + 1) % len]);
            if a == b {
                continue;
            }
            let k = key(a, b);
            if cover.contains_key(&k) {
                steps.push(k);
            } else {
                reasons.push(format!("{a}-{b} is not an edge"));
            }
        }
        if reasons.is_empty() {
            for k in steps {
                *cover.get_mut(&k).unwrap() += 1;
            }
        } else {
            report.bad_cycles.push(BadCycle {
                index,
                reason: reasons.join("; "),
            });
        }
    }
    for e in &d.single_edges {
        match cover.get_mut(&key(e.u(), e.v())) {
            Some(c) => *c += 1,
            None => report.foreign_edges.push(*e),
        }
    }

    for e in edges {
        match cover[&key(e.u(), e.v())] {
            0 => report.missing_edges.push(e),
            1 => report.covered_edges += 1,
            _ => {
                report.covered_edges += 1;
                report.duplicate_edges.push(e);
            }
        }
    }
    report.valid = report.duplicate_edges.is_empty()
        && report.missing_edges.is_empty()
        && report.foreign_edges.is_empty()
        && report.bad_cycles.is_empty()
        && report.vertex_count_mismatch.is_none()
        && report.covered_edges == g.m();
    report
}

/// `odd/2 + max(0, ⌈(m - odd/2) / n⌉)`: every odd vertex needs its own
/// single-edge piece, and a cycle covers at most `n` edges.
pub fn lower_bound(g: &Graph) -> usize {
    let half_odd = g.odd_count() / 2;
    let rest = g.m().saturating_sub(half_odd);
    if g.n() == 0 {
        return half_odd;
    }
    half_odd + rest.div_ceil(g.n())
}
