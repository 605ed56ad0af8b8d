//! The output of a decomposition run: cycles and single edges, each tagged
//! with the stage that produced it.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Cycle, Edge};

/// Which stage produced a piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    EulerRepair,
    LongCycle,
    Hamilton,
    MatchingClosure,
    Peel,
    LeftoverEdge,
}

impl Provenance {
    pub const ALL: [Provenance; 6] = [
        Provenance::EulerRepair,
        Provenance::LongCycle,
        Provenance::Hamilton,
        Provenance::MatchingClosure,
        Provenance::Peel,
        Provenance::LeftoverEdge,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::EulerRepair => "euler-repair",
            Provenance::LongCycle => "long-cycle",
            Provenance::Hamilton => "hamilton",
            Provenance::MatchingClosure => "matching-closure",
            Provenance::Peel => "peel",
            Provenance::LeftoverEdge => "leftover-edge",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Cycles and single edges partitioning (a subset of) a host graph's edges.
///
/// Serialized as `{"n", "cycles", "edges", "provenance"}` where `provenance`
/// lists one label per piece: all cycles first, then all single edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition {
    pub n: usize,
    pub cycles: Vec<Cycle>,
    pub single_edges: Vec<Edge>,
    pub cycle_provenance: Vec<Provenance>,
    pub edge_provenance: Vec<Provenance>,
}

impl Decomposition {
    pub fn new(n: usize) -> Decomposition {
        Decomposition {
            n,
            ..Decomposition::default()
        }
    }

    pub fn push_cycle(&mut self, cycle: Cycle, provenance: Provenance) {
        self.cycles.push(cycle);
        self.cycle_provenance.push(provenance);
    }

    pub fn push_edge(&mut self, edge: Edge, provenance: Provenance) {
        self.single_edges.push(edge);
        self.edge_provenance.push(provenance);
    }

    pub fn piece_count(&self) -> usize {
        self.cycles.len() + self.single_edges.len()
    }

    /// Total number of graph edges covered by the pieces.
    pub fn covered_edges(&self) -> usize {
        self.cycles.iter().map(Cycle::len).sum::<usize>() + self.single_edges.len()
    }

    /// Piece counts per provenance label; every label is present.
    pub fn counts_by_provenance(&self) -> BTreeMap<Provenance, usize> {
        let mut counts: BTreeMap<Provenance, usize> = Provenance::ALL.iter().map(|&p| (p, 0)).collect();
        for p in self.cycle_provenance.iter().chain(&self.edge_provenance) {
            *counts.entry(*p).or_default() += 1;
        }
        counts
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decomposition serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct DecompositionRepr {
    n: usize,
    cycles: Vec<Cycle>,
    edges: Vec<Edge>,
    #[serde(default)]
    provenance: Vec<Provenance>,
}

impl Serialize for Decomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr = DecompositionRepr {
            n: self.n,
            cycles: self.cycles.clone(),
            edges: self.single_edges.clone(),
            provenance: self
                .cycle_provenance
                .iter()
                .chain(&self.edge_provenance)
                .copied()
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Decomposition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Decomposition, D::Error> {
        use serde::de::Error;

        let repr = DecompositionRepr::deserialize(d)?;
        if let Some(c) = repr.cycles.iter().find(|c| c.len() < 3) {
            return Err(D::Error::custom(format!(
                "cycle {:?} has fewer than 3 vertices",
                c.vertices()
            )));
        }
        let pieces = repr.cycles.len() + repr.edges.len();
        let (cycle_provenance, edge_provenance) = if repr.provenance.is_empty() {
            (
                vec![Provenance::Peel; repr.cycles.len()],
                vec![Provenance::LeftoverEdge; repr.edges.len()],
            )
        } else if repr.provenance.len() == pieces {
            let mut p = repr.provenance;
            let tail = p.split_off(repr.cycles.len());
            (p, tail)
        } else {
            return Err(D::Error::custom(format!(
                "provenance has {} labels for {pieces} pieces",
                repr.provenance.len()
            )));
        };
        Ok(Decomposition {
            n: repr.n,
            cycles: repr.cycles,
            single_edges: repr.edges,
            cycle_provenance,
            edge_provenance,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_schema_is_pinned() {
        let mut d = Decomposition::new(4);
        d.push_cycle(Cycle::new(vec![0, 1, 2]), Provenance::Peel);
        d.push_edge(Edge::new(3, 2), Provenance::EulerRepair);
        let json = d.to_json();
        assert_eq!(
            json,
            r#"{"n":4,"cycles":[[0,1,2]],"edges":[[2,3]],"provenance":["peel","euler-repair"]}"#
        );
        let back: Decomposition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        assert_eq!(d.piece_count(), 2);
        assert_eq!(d.covered_edges(), 4);
    }

    #[test]
    fn rejects_short_cycles_and_bad_provenance() {
        assert!(serde_json::from_str::<Decomposition>(r#"{"n":3,"cycles":[[0,1]],"edges":[]}"#).is_err());
        assert!(serde_json::from_str::<Decomposition>(
            r#"{"n":3,"cycles":[],"edges":[[0,1]],"provenance":["peel","peel"]}"#
        )
        .is_err());
        let d: Decomposition = serde_json::from_str(r#"{"n":3,"cycles":[[0,1,2]],"edges":[]}"#).unwrap();
        assert_eq!(d.cycle_provenance, vec![Provenance::Peel]);
    }
}
