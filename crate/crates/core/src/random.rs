//! Seeded G(n, p) generation and independent random edge splitting.
//!
//! Two generators are used, both fixed so that output is bit-identical across
//! platforms:
//!
//! * sequential streams (skip lengths in [`gnp`], shuffles, search choices)
//!   come from ChaCha8, keyed by the seed and a per-purpose stream id;
//! * per-edge decisions (which part of a split an edge lands in) are a pure
//!   function of `(seed, edge)` through a SplitMix64 hash, so a split does not
//!   depend on the order in which edges are visited.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

/// Root of all randomness in a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    /// An independent child seed for the purpose identified by `tag`.
    pub fn derive(self, tag: u64) -> Seed {
        Seed(splitmix64(self.0 ^ splitmix64(tag.wrapping_add(0x5EED))))
    }

    /// Child seed keyed by a label, e.g. a pipeline stage name.
    pub fn derive_str(self, label: &str) -> Seed {
        // FNV-1a
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in label.bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        self.derive(h)
    }

    /// A sequential generator for this seed.
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Uniform value in `[0, 1)` determined by `(self, key)` alone.
    #[inline]
    pub fn unit(self, key: u64) -> f64 {
        to_unit(splitmix64(splitmix64(self.0) ^ splitmix64(key)))
    }
}

impl From<u64> for Seed {
    fn from(x: u64) -> Seed {
        Seed(x)
    }
}

#[inline]
pub(crate) fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[inline]
fn to_unit(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// Samples G(n, p): every pair present independently with probability `p`.
///
/// Uses geometric skipping over the pairs `(w, v)`, `w < v`, enumerated by
/// `v` then `w`, so the expected running time is O(n + m).
pub fn gnp(n: usize, p: f64, seed: Seed) -> Result<Graph> {
    check_probability(p)?;
    if n == 0 {
        return Err(Error::InvalidArgument("gnp needs n >= 1".into()));
    }
    if p == 0.0 {
        return Ok(Graph::new(n));
    }
    if p == 1.0 {
        return Ok(Graph::complete(n));
    }
    let mut rng = seed.derive_str("gnp").rng();
    let mut g = Graph::new(n);
    let log_q = (1.0 - p).ln();
    let mut v: usize = 1;
    let mut w: i64 = -1;
    while v < n {
        let r: f64 = 1.0 - rng.gen::<f64>();
        let skip = (r.ln() / log_q).floor();
        // A skip past every remaining pair ends the enumeration.
        if skip >= (n * n) as f64 {
            break;
        }
        w += 1 + skip as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            g.add_edge(w as Vertex, v as Vertex);
        }
    }
    Ok(g)
}

/// Probabilities `p_1..p_k` for the first `k` parts of a split; the residual
/// mass goes to part `k + 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    probs: Vec<f64>,
}

impl SplitSpec {
    pub const SUM_SLACK: f64 = 1e-12;

    pub fn new(probs: Vec<f64>) -> Result<SplitSpec> {
        for &p in &probs {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidSplitSpec(format!("probability {p} outside [0, 1]")));
            }
        }
        let sum: f64 = probs.iter().sum();
        if sum > 1.0 + Self::SUM_SLACK {
            return Err(Error::InvalidSplitSpec(format!("probabilities sum to {sum} > 1")));
        }
        Ok(SplitSpec { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Number of output parts (`k + 1`).
    pub fn parts(&self) -> usize {
        self.probs.len() + 1
    }

    /// Part index for a uniform draw `u` in `[0, 1)`.
    fn bucket(&self, u: f64) -> usize {
        let mut acc = 0.0;
        for (i, &p) in self.probs.iter().enumerate() {
            acc += p;
            if u < acc {
                return i;
            }
        }
        self.probs.len()
    }
}

/// Splits `E(g)` into `spec.parts()` edge-disjoint graphs on the same vertex
/// set. Each edge's part depends only on `(seed, edge)`.
pub fn split(g: &Graph, spec: &SplitSpec, seed: Seed) -> Vec<Graph> {
    let mut parts = vec![Graph::new(g.n()); spec.parts()];
    // Every draw lands in one part: copy instead of rehashing each edge.
    let sure = spec.probs.iter().position(|&p| p >= 1.0).unwrap_or(spec.probs.len());
    if spec.probs[..sure].iter().all(|&p| p == 0.0) && (sure < spec.probs.len() || spec.probs.iter().all(|&p| p == 0.0))
    {
        parts[sure] = g.clone();
        return parts;
    }
    let key_seed = seed.derive_str("split");
    for e in g.edge_list() {
        let i = spec.bucket(key_seed.unit(e.key()));
        parts[i].add_edge(e.u(), e.v());
    }
    parts
}

/// Splits `E(g)` into `k >= 1` parts uniformly at random.
pub fn split_uniform(g: &Graph, k: usize, seed: Seed) -> Vec<Graph> {
    assert!(k >= 1);
    let key_seed = seed.derive_str("split-uniform");
    let mut parts = vec![Graph::new(g.n()); k];
    for e in g.edge_list() {
        parts[uniform_index(key_seed, e, k)].add_edge(e.u(), e.v());
    }
    parts
}

/// Uniform index in `0..k` keyed by an edge.
pub(crate) fn uniform_index(seed: Seed, e: Edge, k: usize) -> usize {
    ((seed.unit(e.key()) * k as f64) as usize).min(k - 1)
}

/// Probability that a Bin(n, p) variable is odd: `(1 - (1 - 2p)^n) / 2`.
pub fn odd_parity_probability(n: u64, p: f64) -> f64 {
    let base = 1.0 - 2.0 * p;
    let pow = if n <= i32::MAX as u64 {
        base.powi(n as i32)
    } else {
        base.powf(n as f64)
    };
    (1.0 - pow) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gnp_extremes() {
        assert_eq!(gnp(50, 0.0, Seed(1)).unwrap().m(), 0);
        assert_eq!(gnp(50, 1.0, Seed(1)).unwrap().m(), 50 * 49 / 2);
        assert!(gnp(5, 1.5, Seed(1)).is_err());
        assert!(gnp(5, -0.1, Seed(1)).is_err());
        assert_eq!(gnp(1, 0.5, Seed(1)).unwrap().m(), 0);
    }

    #[test]
    fn gnp_edge_count_is_binomial() {
        let n = 10_000usize;
        let p = 0.01;
        let g = gnp(n, p, Seed(42)).unwrap();
        let pairs = (n * (n - 1) / 2) as f64;
        let mean = pairs * p;
        let sd = (pairs * p * (1.0 - p)).sqrt();
        assert!((g.m() as f64 - mean).abs() <= 4.0 * sd, "m = {}", g.m());
    }

    #[test]
    fn gnp_is_deterministic() {
        let a = gnp(300, 0.05, Seed(9)).unwrap();
        let b = gnp(300, 0.05, Seed(9)).unwrap();
        let c = gnp(300, 0.05, Seed(10)).unwrap();
        assert_eq!(a.edge_list(), b.edge_list());
        assert_ne!(a.edge_list(), c.edge_list());
    }

    #[test]
    fn split_extremes() {
        let g = Graph::complete(20);
        let parts = split(&g, &SplitSpec::new(vec![1.0]).unwrap(), Seed(3));
        assert_eq!(parts[0], g);
        assert_eq!(parts[1].m(), 0);
        let parts = split(&g, &SplitSpec::new(vec![0.0]).unwrap(), Seed(3));
        assert_eq!(parts[0].m(), 0);
        assert_eq!(parts[1], g);
    }

    #[test]
    fn split_half_of_k1000() {
        let g = Graph::complete(1000);
        let parts = split(&g, &SplitSpec::new(vec![0.5]).unwrap(), Seed(77));
        let total = g.m() as f64;
        let sd = (total * 0.25).sqrt();
        assert!((parts[0].m() as f64 - total / 2.0).abs() <= 4.0 * sd);
        assert_eq!(parts[0].m() + parts[1].m(), g.m());
    }

    #[test]
    fn split_spec_validation() {
        assert!(SplitSpec::new(vec![0.6, 0.5]).is_err());
        assert!(SplitSpec::new(vec![-0.1]).is_err());
        assert!(SplitSpec::new(vec![0.5, 0.5 + 1e-13]).is_ok());
    }

    #[test]
    fn parity_examples() {
        for n in 1..20 {
            assert_eq!(odd_parity_probability(n, 0.5), 0.5);
        }
        assert!((odd_parity_probability(1, 0.3) - 0.3).abs() < 1e-15);
        // 3 * 0.1 * 0.9^2 + 0.1^3
        assert!((odd_parity_probability(3, 0.1) - 0.244).abs() < 1e-12);
        assert_eq!(odd_parity_probability(0, 0.3), 0.0);
    }

    #[test]
    fn derived_seeds_differ() {
        let s = Seed(5);
        assert_ne!(s.derive(1), s.derive(2));
        assert_ne!(s.derive_str("a"), s.derive_str("b"));
        assert_eq!(s.derive_str("a"), s.derive_str("a"));
    }
}
