//! Simple undirected graphs with dense vertex ids, canonical edges and
//! mod-2 edge-set algebra.
//!
//! Adjacency is stored as one insertion-ordered hash set per vertex, which
//! gives O(deg) neighbor iteration, O(1) edge-presence queries and O(1)
//! edge deletion (swap-remove). Iteration order depends only on the
//! sequence of mutations, so every algorithm built on top is deterministic.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::io::{BufRead, Write};

use indexmap::IndexSet;
use rustc_hash::FxBuildHasher;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;

type Neighbors = IndexSet<Vertex, FxBuildHasher>;

/// An undirected edge stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    /// Canonicalizes `(a, b)`. Panics on a self-loop; use [`Edge::try_new`]
    /// for untrusted input.
    pub fn new(a: Vertex, b: Vertex) -> Edge {
        assert_ne!(a, b, "self-loop at vertex {a}");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn try_new(a: Vertex, b: Vertex) -> Result<Edge> {
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        Ok(Edge::new(a, b))
    }

    #[inline]
    pub fn u(&self) -> Vertex {
        self.u
    }

    #[inline]
    pub fn v(&self) -> Vertex {
        self.v
    }

    #[inline]
    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    /// The endpoint that is not `x`.
    #[inline]
    pub fn other(&self, x: Vertex) -> Vertex {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    /// Packs the edge into a single integer key, ordered like the edge itself.
    #[inline]
    pub fn key(&self) -> u64 {
        (u64::from(self.u) << 32) | u64::from(self.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.u)?;
        t.serialize_element(&self.v)?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Edge, D::Error> {
        struct EdgeVisitor;

        impl<'de> Visitor<'de> for EdgeVisitor {
            type Value = Edge;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a pair [u, v] of distinct vertex ids")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Edge, A::Error> {
                let a: Vertex = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let b: Vertex = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Edge::try_new(a, b).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_tuple(2, EdgeVisitor)
    }
}

/// A set of canonical edges with mod-2 union.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    edges: BTreeSet<Edge>,
}

impl EdgeSet {
    pub fn new() -> EdgeSet {
        EdgeSet::default()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    /// Returns `true` if the edge was newly inserted.
    pub fn insert(&mut self, e: Edge) -> bool {
        self.edges.insert(e)
    }

    pub fn remove(&mut self, e: &Edge) -> bool {
        self.edges.remove(e)
    }

    /// Adds `e` with multiplicity one modulo 2: inserts it if absent, removes it if present.
    pub fn toggle(&mut self, e: Edge) {
        if !self.edges.remove(&e) {
            self.edges.insert(e);
        }
    }

    /// Edges in ascending canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter()
    }

    pub fn symmetric_difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet {
            edges: self.edges.symmetric_difference(&other.edges).copied().collect(),
        }
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.edges.is_subset(&other.edges)
    }

    /// Vertices incident to an odd number of edges in the set, ascending.
    pub fn odd_vertices(&self) -> Vec<Vertex> {
        let mut odd = BTreeSet::new();
        for e in &self.edges {
            for x in [e.u, e.v] {
                if !odd.remove(&x) {
                    odd.insert(x);
                }
            }
        }
        odd.into_iter().collect()
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> EdgeSet {
        EdgeSet {
            edges: iter.into_iter().collect(),
        }
    }
}

impl Extend<Edge> for EdgeSet {
    fn extend<I: IntoIterator<Item = Edge>>(&mut self, iter: I) {
        self.edges.extend(iter)
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a Edge;
    type IntoIter = std::collections::btree_set::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.edges.iter()
    }
}

/// Symmetric difference of two edge sets.
pub fn symmetric_difference(a: &EdgeSet, b: &EdgeSet) -> EdgeSet {
    a.symmetric_difference(b)
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    adj: Vec<Neighbors>,
    m: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Graph) -> bool {
        self.n() == other.n() && self.m == other.m && self.edge_list() == other.edge_list()
    }
}

impl Eq for Graph {}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Graph {
        assert!(n <= Vertex::MAX as usize, "vertex count {n} exceeds id range");
        Graph {
            adj: vec![Neighbors::default(); n],
            m: 0,
        }
    }

    /// Builds a graph, rejecting self-loops, duplicates and out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (a, b) in edges {
            g.check_vertex(a)?;
            g.check_vertex(b)?;
            let e = Edge::try_new(a, b)?;
            if !g.add_edge(e.u, e.v) {
                return Err(Error::DuplicateEdge(e.u, e.v));
            }
        }
        Ok(g)
    }

    /// Builds a graph from canonical edges known to be valid and distinct.
    pub fn from_edge_iter<I: IntoIterator<Item = Edge>>(n: usize, edges: I) -> Graph {
        let mut g = Graph::new(n);
        for e in edges {
            g.add_edge(e.u, e.v);
        }
        g
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n as Vertex {
            g.adj[u as usize].reserve(n.saturating_sub(1));
            for v in u + 1..n as Vertex {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let mut g = Graph::new(n);
        for i in 0..n {
            g.add_edge(i as Vertex, ((i + 1) % n) as Vertex);
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.add_edge((i - 1) as Vertex, i as Vertex);
        }
        g
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        let mut g = Graph::new(leaves + 1);
        for i in 1..=leaves {
            g.add_edge(0, i as Vertex);
        }
        g
    }

    /// The `d`-dimensional hypercube.
    pub fn hypercube(d: u32) -> Graph {
        let n = 1usize << d;
        let mut g = Graph::new(n);
        for x in 0..n {
            for bit in 0..d {
                let y = x ^ (1 << bit);
                if x < y {
                    g.add_edge(x as Vertex, y as Vertex);
                }
            }
        }
        g
    }

    /// Disjoint union, relabeling `other` to start after `self`'s vertices.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.n() as Vertex;
        let mut g = Graph::new(self.n() + other.n());
        for e in self.edges() {
            g.add_edge(e.u, e.v);
        }
        for e in other.edges() {
            g.add_edge(e.u + offset, e.v + offset);
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: u64::from(v),
                n: self.n(),
            })
        }
    }

    /// Degree of `v`, or an input error if `v` is out of range.
    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v as usize].len())
    }

    /// Degree of `v`; panics if `v` is out of range.
    #[inline]
    pub fn deg(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(IndexSet::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(IndexSet::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(IndexSet::len).min().unwrap_or(0)
    }

    /// `2m / n`, zero for the empty vertex set.
    pub fn average_degree(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            2.0 * self.m as f64 / self.n() as f64
        }
    }

    /// `m / C(n, 2)`.
    pub fn density(&self) -> f64 {
        let n = self.n() as f64;
        if self.n() < 2 {
            0.0
        } else {
            2.0 * self.m as f64 / (n * (n - 1.0))
        }
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> impl ExactSizeIterator<Item = Vertex> + '_ {
        self.adj[v as usize].iter().copied()
    }

    /// The `i`-th neighbor of `v` in adjacency order (`i < deg(v)`).
    #[inline]
    pub fn neighbor_at(&self, v: Vertex, i: usize) -> Vertex {
        *self.adj[v as usize].get_index(i).expect("neighbor index in range")
    }

    /// Neighbors of `v` in ascending id order.
    pub fn sorted_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut ns: Vec<Vertex> = self.neighbors(v).collect();
        ns.sort_unstable();
        ns
    }

    #[inline]
    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        (a as usize) < self.n() && self.adj[a as usize].contains(&b)
    }

    #[inline]
    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    /// Returns `false` if the edge was already present. Panics on a self-loop
    /// or out-of-range endpoint.
    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> bool {
        assert_ne!(a, b, "self-loop at vertex {a}");
        if !self.adj[a as usize].insert(b) {
            return false;
        }
        self.adj[b as usize].insert(a);
        self.m += 1;
        true
    }

    /// Returns `false` if the edge was absent.
    pub fn remove_edge(&mut self, a: Vertex, b: Vertex) -> bool {
        if (a as usize) >= self.n() || !self.adj[a as usize].swap_remove(&b) {
            return false;
        }
        self.adj[b as usize].swap_remove(&a);
        self.m -= 1;
        true
    }

    /// Removes every edge of `edges`, failing without mutation if any is absent.
    pub fn remove_edge_set(&mut self, edges: &EdgeSet) -> Result<()> {
        if let Some(e) = edges.iter().find(|e| !self.contains_edge(e)) {
            return Err(Error::MissingEdge(e.u, e.v));
        }
        for e in edges {
            self.remove_edge(e.u, e.v);
        }
        Ok(())
    }

    /// Removes the edges of a closed vertex sequence. Panics if an edge is missing.
    pub fn remove_cycle(&mut self, cycle: &Cycle) {
        for e in cycle.edges() {
            let removed = self.remove_edge(e.u, e.v);
            assert!(removed, "cycle edge {e} not present");
        }
    }

    /// Adds every edge of `other` (same vertex count) not already present.
    pub fn absorb(&mut self, other: &Graph) {
        assert_eq!(self.n(), other.n());
        for e in other.edges() {
            self.add_edge(e.u, e.v);
        }
    }

    /// Edges in adjacency order, each reported once with its canonical orientation.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| {
            let u = u as Vertex;
            ns.iter().filter(move |&&v| u < v).map(move |&v| Edge { u, v })
        })
    }

    /// Edges sorted lexicographically.
    pub fn edge_list(&self) -> Vec<Edge> {
        let mut es: Vec<Edge> = self.edges().collect();
        es.sort_unstable();
        es
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }

    /// Vertices of odd degree, ascending.
    pub fn odd_vertices(&self) -> Vec<Vertex> {
        (0..self.n() as Vertex).filter(|&v| self.deg(v) % 2 == 1).collect()
    }

    pub fn odd_count(&self) -> usize {
        self.adj.iter().filter(|ns| ns.len() % 2 == 1).count()
    }

    /// Every vertex has even degree; connectivity is not required.
    pub fn is_euler(&self) -> bool {
        self.adj.iter().all(|ns| ns.len() % 2 == 0)
    }

    /// Graph with `edges` removed; errors if some edge is absent.
    pub fn remove_edges(&self, edges: &EdgeSet) -> Result<Graph> {
        let mut g = self.clone();
        g.remove_edge_set(edges)?;
        Ok(g)
    }

    /// Component label per vertex and the number of components. Labels are
    /// assigned in order of each component's smallest vertex.
    pub fn component_labels(&self) -> (Vec<u32>, usize) {
        let n = self.n();
        let mut label = vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        let mut count = 0u32;
        for s in 0..n {
            if label[s] != u32::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s as Vertex);
            while let Some(x) = queue.pop_front() {
                for y in self.neighbors(x) {
                    if label[y as usize] == u32::MAX {
                        label[y as usize] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (label, count as usize)
    }

    /// Maximal connected vertex sets, largest first (ties by smallest vertex).
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let (label, count) = self.component_labels();
        let mut comps = vec![Vec::new(); count];
        for (v, &l) in label.iter().enumerate() {
            comps[l as usize].push(v as Vertex);
        }
        comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        comps
    }

    /// Number of non-isolated vertices.
    pub fn active_vertex_count(&self) -> usize {
        self.adj.iter().filter(|ns| !ns.is_empty()).count()
    }
}

/// Degree of `v` in `g`.
pub fn degree(g: &Graph, v: Vertex) -> Result<usize> {
    g.degree(v)
}

/// Vertices of odd degree in `g`, ascending.
pub fn odd_vertices(g: &Graph) -> Vec<Vertex> {
    g.odd_vertices()
}

/// `g` minus `edges`; errors if `edges` is not a subset of `E(g)`.
pub fn remove_edges(g: &Graph, edges: &EdgeSet) -> Result<Graph> {
    g.remove_edges(edges)
}

pub fn connected_components(g: &Graph) -> Vec<Vec<Vertex>> {
    g.connected_components()
}

pub fn is_euler(g: &Graph) -> bool {
    g.is_euler()
}

/// A simple cycle given by its cyclic vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cycle(Vec<Vertex>);

impl Cycle {
    /// Wraps a vertex sequence. Length must be at least 3; simplicity and
    /// adjacency are checked against a host with [`Cycle::validate_in`].
    pub fn new(vertices: Vec<Vertex>) -> Cycle {
        assert!(
            vertices.len() >= 3,
            "cycle needs at least 3 vertices, got {}",
            vertices.len()
        );
        Cycle(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `len()` edges `v_i v_{i+1}`, cyclically.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let k = self.0.len();
        (0..k).map(move |i| Edge::new(self.0[i], self.0[(i + 1) % k]))
    }

    /// Checks length, vertex distinctness and that every edge is in `g`.
    pub fn validate_in(&self, g: &Graph) -> std::result::Result<(), String> {
        if self.0.len() < 3 {
            return Err(format!("length {} < 3", self.0.len()));
        }
        let mut seen = rustc_hash::FxHashSet::default();
        for &x in &self.0 {
            if (x as usize) >= g.n() {
                return Err(format!("vertex {x} out of range"));
            }
            if !seen.insert(x) {
                return Err(format!("vertex {x} repeated"));
            }
        }
        for e in self.edges() {
            if !g.contains_edge(&e) {
                return Err(format!("edge {e} not in graph"));
            }
        }
        Ok(())
    }
}

/// Parses the edge-list text format: a header `n m` followed by `m` lines
/// `u v`. Blank lines are ignored; edges may come in any order or orientation.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut lines = reader
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty()));

    let parse_pair = |line: usize, s: &str| -> Result<(u64, u64)> {
        let mut it = s.split_whitespace();
        let mut next = || -> Result<u64> {
            let tok = it.next().ok_or_else(|| Error::Parse {
                line,
                msg: "expected two integers".into(),
            })?;
            tok.parse::<u64>().map_err(|e| Error::Parse {
                line,
                msg: format!("bad integer {tok:?}: {e}"),
            })
        };
        let a = next()?;
        let b = next()?;
        if it.next().is_some() {
            return Err(Error::Parse {
                line,
                msg: "trailing tokens".into(),
            });
        }
        Ok((a, b))
    };

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let (n, m) = parse_pair(hline, &header?)?;
    if n > u64::from(Vertex::MAX) {
        return Err(Error::Parse {
            line: hline,
            msg: format!("vertex count {n} too large"),
        });
    }
    let mut g = Graph::new(n as usize);
    let mut read = 0u64;
    for (line, text) in lines {
        let (a, b) = parse_pair(line, &text?)?;
        for x in [a, b] {
            if x >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    n: n as usize,
                });
            }
        }
        let e = Edge::try_new(a as Vertex, b as Vertex)?;
        if !g.add_edge(e.u, e.v) {
            return Err(Error::DuplicateEdge(e.u, e.v));
        }
        read += 1;
    }
    if read != m {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header declares {m} edges, found {read}"),
        });
    }
    Ok(g)
}

/// Writes the canonical edge-list format, edges sorted lexicographically.
pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> Result<()> {
    writeln!(w, "{} {}", g.n(), g.m())?;
    for e in g.edge_list() {
        writeln!(w, "{} {}", e.u, e.v)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn es(pairs: &[(Vertex, Vertex)]) -> EdgeSet {
        pairs.iter().map(|&(a, b)| Edge::new(a, b)).collect()
    }

    #[test]
    fn degree_examples() {
        let k3 = Graph::complete(3);
        assert!((0..3).all(|v| k3.degree(v).unwrap() == 2));
        let empty = Graph::new(5);
        assert!((0..5).all(|v| empty.degree(v).unwrap() == 0));
        assert_eq!(Graph::star(4).degree(0).unwrap(), 4);
        assert!(matches!(k3.degree(3), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn odd_vertex_examples() {
        assert_eq!(Graph::complete(4).odd_vertices(), vec![0, 1, 2, 3]);
        assert!(Graph::cycle(5).odd_vertices().is_empty());
        assert_eq!(Graph::path(3).odd_vertices(), vec![0, 2]);
    }

    #[test]
    fn symmetric_difference_examples() {
        let x = es(&[(0, 1), (2, 3)]);
        assert_eq!(symmetric_difference(&EdgeSet::new(), &x), x);
        assert!(symmetric_difference(&x, &x).is_empty());
        let a = es(&[(0, 1), (1, 2)]);
        let b = es(&[(1, 2), (2, 3)]);
        assert_eq!(symmetric_difference(&a, &b), es(&[(0, 1), (2, 3)]));
    }

    #[test]
    fn remove_edges_examples() {
        let k4 = Graph::complete(4);
        assert_eq!(k4.remove_edges(&EdgeSet::new()).unwrap(), k4);
        assert_eq!(k4.remove_edges(&k4.edge_set()).unwrap().m(), 0);
        // K4 minus {01, 23} leaves 02, 03, 12, 13: the 4-cycle 0-2-1-3.
        let c4 = k4.remove_edges(&es(&[(0, 1), (2, 3)])).unwrap();
        assert_eq!(
            c4.edge_list(),
            es(&[(0, 2), (0, 3), (1, 2), (1, 3)])
                .iter()
                .copied()
                .collect::<Vec<_>>()
        );
        assert!(c4.is_euler());
        let err = Graph::path(3).remove_edges(&es(&[(0, 2)])).unwrap_err();
        assert!(matches!(err, Error::MissingEdge(0, 2)));
    }

    #[test]
    fn components_examples() {
        assert_eq!(Graph::cycle(6).connected_components().len(), 1);
        let sizes: Vec<usize> = Graph::new(3).connected_components().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 1, 1]);
        let g = Graph::complete(2).disjoint_union(&Graph::complete(3));
        let sizes: Vec<usize> = g.connected_components().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![3, 2]);
    }

    #[test]
    fn euler_examples() {
        assert!(Graph::cycle(6).is_euler());
        assert!(Graph::cycle(3).disjoint_union(&Graph::cycle(3)).is_euler());
        assert!(!Graph::path(2).is_euler());
    }

    #[test]
    fn edge_list_roundtrip_is_canonical() {
        let text = "4 3\n3 1\n0 2\n\n1 0\n";
        let g = read_edge_list(text.as_bytes()).unwrap();
        let mut out = Vec::new();
        write_edge_list(&g, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "4 3\n0 1\n0 2\n1 3\n");
    }

    #[test]
    fn edge_list_rejects_bad_input() {
        assert!(read_edge_list("3 1\n0 0\n".as_bytes()).is_err());
        assert!(read_edge_list("3 2\n0 1\n1 0\n".as_bytes()).is_err());
        assert!(read_edge_list("3 1\n0 3\n".as_bytes()).is_err());
        assert!(read_edge_list("3 2\n0 1\n".as_bytes()).is_err());
        assert!(read_edge_list("".as_bytes()).is_err());
        assert!(read_edge_list("3 1\n0 x\n".as_bytes()).is_err());
    }

    #[test]
    fn edge_serde_is_pair() {
        let e = Edge::new(5, 2);
        assert_eq!(serde_json::to_string(&e).unwrap(), "[2,5]");
        let back: Edge = serde_json::from_str("[5,2]").unwrap();
        assert_eq!(back, e);
        assert!(serde_json::from_str::<Edge>("[1,1]").is_err());
    }

    #[test]
    fn cycle_validation() {
        let g = Graph::complete(4);
        assert!(Cycle::new(vec![0, 1, 2]).validate_in(&g).is_ok());
        assert!(Cycle::new(vec![0, 1, 0]).validate_in(&g).is_err());
        assert!(Cycle::new(vec![0, 1, 2]).validate_in(&Graph::path(3)).is_err());
    }
}
