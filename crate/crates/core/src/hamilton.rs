//! Packing edge-disjoint Hamilton cycles by repeated rotation-extension search.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{Cycle, Graph, Vertex};
use crate::posa::{Limits, Posa};
use crate::random::Seed;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HamiltonConfig {
    /// Independent searches per cycle before giving up.
    pub restarts: usize,
    /// Rotation budget per search, as a multiple of `n`.
    pub rotations_per_n: f64,
    /// Total searches allowed in one pack; `None` means unlimited.
    pub max_attempts: Option<usize>,
    pub seed: Seed,
}

impl Default for HamiltonConfig {
    fn default() -> HamiltonConfig {
        HamiltonConfig {
            restarts: 5,
            rotations_per_n: 100.0,
            max_attempts: None,
            seed: Seed(0),
        }
    }
}

/// Searches for a Hamilton cycle. `None` means the budget ran out; it does
/// not certify that none exists.
pub fn find_hamilton_cycle(g: &Graph, cfg: &HamiltonConfig) -> Option<Cycle> {
    search(g, cfg, cfg.restarts).0
}

/// Returns the cycle and the number of searches run.
fn search(g: &Graph, cfg: &HamiltonConfig, restarts: usize) -> (Option<Cycle>, usize) {
    let n = g.n();
    if n < 3 || g.min_degree() < 2 {
        return (None, 0);
    }
    let mut rng = cfg.seed.derive_str("hamilton").rng();
    let limits = Limits {
        target: n,
        budget: (cfg.rotations_per_n * n as f64).ceil() as usize,
        stall: usize::MAX,
    };
    let mut posa = Posa::new(g, None);
    for attempt in 0..restarts.max(1) {
        let start = rng.gen_range(0..n) as Vertex;
        let out = posa.search(start, limits, &mut rng);
        if let Some(c) = out.cycle.filter(|c| c.len() == n) {
            return (Some(Cycle::new(c)), attempt + 1);
        }
    }
    (None, restarts.max(1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PackStop {
    TargetReached,
    SearchFailed,
    Budget,
}

#[derive(Clone, Debug)]
pub struct PackResult {
    pub cycles: Vec<Cycle>,
    pub remainder: Graph,
    /// Searches run, over all cycles.
    pub attempts: usize,
    pub stop: PackStop,
}

/// Removes up to `target` edge-disjoint Hamilton cycles from `g`, one at a
/// time, stopping at the first cycle that cannot be found.
pub fn pack_hamilton_cycles(g: &Graph, target: usize, cfg: &HamiltonConfig) -> PackResult {
    let mut remainder = g.clone();
    let mut cycles = Vec::new();
    let mut attempts = 0;
    let stop = loop {
        if cycles.len() >= target {
            break PackStop::TargetReached;
        }
        let left = cfg.max_attempts.map_or(usize::MAX, |m| m.saturating_sub(attempts));
        if left == 0 {
            break PackStop::Budget;
        }
        let sub = HamiltonConfig {
            seed: cfg.seed.derive(cycles.len() as u64),
            ..cfg.clone()
        };
        let (found, used) = search(&remainder, &sub, cfg.restarts.min(left));
        attempts += used;
        match found {
            Some(c) => {
                remainder.remove_cycle(&c);
                cycles.push(c);
            }
            None if used < cfg.restarts && left < cfg.restarts => break PackStop::Budget,
            None => break PackStop::SearchFailed,
        }
    };
    PackResult {
        cycles,
        remainder,
        attempts,
        stop,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::gnp;

    fn is_hamilton(c: &Cycle, g: &Graph) -> bool {
        c.len() == g.n() && c.validate_in(g).is_ok()
    }

    #[test]
    fn small_examples() {
        let cfg = HamiltonConfig::default();
        let c5 = Graph::cycle(5);
        assert!(is_hamilton(&find_hamilton_cycle(&c5, &cfg).unwrap(), &c5));
        let k4 = Graph::complete(4);
        assert!(is_hamilton(&find_hamilton_cycle(&k4, &cfg).unwrap(), &k4));
        assert!(find_hamilton_cycle(&Graph::path(5), &cfg).is_none());
    }

    #[test]
    fn random_graph_is_hamiltonian() {
        let g = gnp(500, 0.1, Seed(3)).unwrap();
        let c = find_hamilton_cycle(&g, &HamiltonConfig::default()).unwrap();
        assert!(is_hamilton(&c, &g));
    }

    #[test]
    fn pack_examples() {
        let cfg = HamiltonConfig::default();
        let g = gnp(50, 0.5, Seed(1)).unwrap();
        let r = pack_hamilton_cycles(&g, 0, &cfg);
        assert!(r.cycles.is_empty());
        assert_eq!(r.remainder, g);
        assert_eq!(r.stop, PackStop::TargetReached);

        let k5 = Graph::complete(5);
        let r = pack_hamilton_cycles(&k5, 2, &cfg);
        assert_eq!(r.cycles.len(), 2);
        assert_eq!(r.remainder.m(), 0);
    }

    #[test]
    fn pack_remainder_degrees() {
        let g = gnp(120, 0.5, Seed(5)).unwrap();
        let target = g.min_degree() / 2;
        let r = pack_hamilton_cycles(&g, target, &HamiltonConfig::default());
        let k = r.cycles.len();
        assert!(k > 0);
        for v in 0..g.n() as Vertex {
            assert_eq!(r.remainder.deg(v), g.deg(v) - 2 * k);
        }
        let mut replay = g.clone();
        for c in &r.cycles {
            assert!(is_hamilton(c, &replay));
            replay.remove_cycle(c);
        }
        assert_eq!(replay, r.remainder);
    }

    #[test]
    fn pack_respects_attempt_budget() {
        let cfg = HamiltonConfig {
            max_attempts: Some(0),
            ..HamiltonConfig::default()
        };
        let r = pack_hamilton_cycles(&Graph::complete(7), 3, &cfg);
        assert_eq!(r.stop, PackStop::Budget);
        assert!(r.cycles.is_empty());
    }
}
