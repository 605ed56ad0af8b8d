//! Rotation-extension search for long paths and cycles.
//!
//! A path is grown greedily at both ends. When the end vertex has no
//! neighbor off the path, every path-neighbor `P[i]` of the end closes the
//! cycle `P[i..]`; the longest such closure seen so far is kept. The end is
//! then rotated: for a path-neighbor `P[j]`, the suffix after `j` is reversed
//! so that `P[j+1]` becomes the new end, which may be extendable again.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex};

const NONE: u32 = u32::MAX;

/// Random neighbor probes per extension step before a full neighbor scan
/// (high-degree vertices only).
const SAMPLE_PROBES: usize = 32;

/// Result of one search.
#[derive(Clone, Debug)]
pub(crate) struct SearchOutcome {
    /// Longest closed cycle seen, as a vertex sequence.
    pub cycle: Option<Vec<Vertex>>,
    /// The path at the moment the search stopped.
    pub path: Vec<Vertex>,
    pub rotations: usize,
}

/// Limits for a search.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Limits {
    /// Stop as soon as a cycle this long is closed.
    pub target: usize,
    /// Total rotations allowed.
    pub budget: usize,
    /// Stop after this many consecutive rotations without a longer closure
    /// (only once some cycle has been found).
    pub stall: usize,
}

pub(crate) struct Posa<'g> {
    g: &'g Graph,
    alive: Option<&'g [bool]>,
    path: Vec<Vertex>,
    pos: Vec<u32>,
    scratch: Vec<u32>,
    off: Vec<Vertex>,
}

impl<'g> Posa<'g> {
    /// Search restricted to vertices with `alive[v]` (all vertices if `None`).
    pub(crate) fn new(g: &'g Graph, alive: Option<&'g [bool]>) -> Posa<'g> {
        Posa {
            g,
            alive,
            path: Vec::new(),
            pos: vec![NONE; g.n()],
            scratch: Vec::new(),
            off: Vec::new(),
        }
    }

    #[inline]
    fn is_alive(&self, v: Vertex) -> bool {
        self.alive.is_none_or(|a| a[v as usize])
    }

    fn reset(&mut self) {
        for &v in &self.path {
            self.pos[v as usize] = NONE;
        }
        self.path.clear();
    }

    fn push(&mut self, v: Vertex) {
        self.pos[v as usize] = self.path.len() as u32;
        self.path.push(v);
    }

    /// Extends at the end while some alive neighbor is off the path.
    ///
    /// A few random neighbors are probed before falling back to a full scan,
    /// so growing a path through a dense graph costs far less than its degree
    /// sum.
    fn extend(&mut self, rng: &mut ChaCha8Rng) {
        'grow: loop {
            let end = *self.path.last().expect("non-empty path");
            let deg = self.g.deg(end);
            if deg == 0 {
                return;
            }
            let probes = if deg > 2 * SAMPLE_PROBES { SAMPLE_PROBES } else { 0 };
            for _ in 0..probes {
                let w = self.g.neighbor_at(end, rng.gen_range(0..deg));
                if self.pos[w as usize] == NONE && self.is_alive(w) {
                    self.push(w);
                    continue 'grow;
                }
            }
            self.off.clear();
            for w in self.g.neighbors(end) {
                if self.pos[w as usize] == NONE && self.is_alive(w) {
                    self.off.push(w);
                }
            }
            if self.off.is_empty() {
                return;
            }
            let w = self.off[rng.gen_range(0..self.off.len())];
            self.push(w);
        }
    }

    fn reverse_from(&mut self, from: usize) {
        self.path[from..].reverse();
        for i in from..self.path.len() {
            self.pos[self.path[i] as usize] = i as u32;
        }
    }

    /// Runs one search from `start`.
    pub(crate) fn search(&mut self, start: Vertex, limits: Limits, rng: &mut ChaCha8Rng) -> SearchOutcome {
        self.reset();
        self.push(start);
        self.extend(rng);
        self.reverse_from(0);
        self.extend(rng);

        let mut best: Option<Vec<Vertex>> = None;
        let mut best_len = 0usize;
        let mut rotations = 0usize;
        let mut since_improvement = 0usize;
        let mut flipped = false;

        loop {
            let len = self.path.len();
            let end = self.path[len - 1];
            // Path-neighbors of the end, excluding its predecessor.
            self.scratch.clear();
            let mut min_idx = NONE;
            for w in self.g.neighbors(end) {
                let i = self.pos[w as usize];
                if i != NONE && (i as usize) + 2 < len {
                    self.scratch.push(i);
                    min_idx = min_idx.min(i);
                }
            }
            if min_idx != NONE {
                let cyc_len = len - min_idx as usize;
                if cyc_len > best_len {
                    best_len = cyc_len;
                    best = Some(self.path[min_idx as usize..].to_vec());
                    since_improvement = 0;
                    if best_len >= limits.target {
                        break;
                    }
                }
            }
            if rotations >= limits.budget || (best.is_some() && since_improvement >= limits.stall) {
                break;
            }
            if self.scratch.is_empty() {
                // The end only touches its predecessor; try the other end once.
                if flipped {
                    break;
                }
                flipped = true;
                self.reverse_from(0);
                continue;
            }
            let j = self.scratch[rng.gen_range(0..self.scratch.len())] as usize;
            self.reverse_from(j + 1);
            rotations += 1;
            since_improvement += 1;
            let before = self.path.len();
            self.extend(rng);
            if self.path.len() > before {
                flipped = false;
            }
        }

        SearchOutcome {
            cycle: best,
            path: self.path.clone(),
            rotations,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Cycle;
    use crate::random::Seed;

    #[test]
    fn finds_hamilton_cycle_of_cycle_graph() {
        let g = Graph::cycle(10);
        let mut posa = Posa::new(&g, None);
        let out = posa.search(
            3,
            Limits {
                target: 10,
                budget: 1000,
                stall: 1000,
            },
            &mut Seed(1).rng(),
        );
        let c = out.cycle.expect("cycle");
        assert_eq!(c.len(), 10);
        Cycle::new(c).validate_in(&g).unwrap();
    }

    #[test]
    fn tree_has_no_cycle() {
        let g = Graph::star(6);
        let mut posa = Posa::new(&g, None);
        let out = posa.search(
            0,
            Limits {
                target: 3,
                budget: 100,
                stall: 100,
            },
            &mut Seed(1).rng(),
        );
        assert!(out.cycle.is_none());
    }

    #[test]
    fn respects_alive_mask() {
        let g = Graph::complete(6);
        let alive = [true, true, true, false, false, false];
        let mut posa = Posa::new(&g, Some(&alive));
        let out = posa.search(
            0,
            Limits {
                target: 6,
                budget: 50,
                stall: 50,
            },
            &mut Seed(2).rng(),
        );
        let c = out.cycle.unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.iter().all(|&v| v < 3));
    }
}
