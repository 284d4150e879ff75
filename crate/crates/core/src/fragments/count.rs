use serde::{Deserialize, Serialize};

use super::atlas::{atlas, GRAPHLET_COUNT, ORBIT_COUNT};
use crate::passmap::Passmap;
use crate::PlayerId;

/// Unweighted simple digraph over node indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    matrix: Vec<bool>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            matrix: vec![false; n * n],
        }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(n);
        for (a, b) in arcs {
            g.set(a, b, true);
        }
        g
    }

    /// Arc pattern of a passmap, ignoring weights.
    pub fn from_passmap(g: &Passmap) -> Self {
        Self::from_arcs(g.node_count(), g.arc_indices().map(|(arc, _)| arc))
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn has(&self, a: usize, b: usize) -> bool {
        self.matrix[a * self.n + b]
    }

    /// Self-loops are ignored.
    pub fn set(&mut self, a: usize, b: usize, present: bool) {
        if a != b {
            self.matrix[a * self.n + b] = present;
        }
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| (0..self.n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.has(a, b))
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.matrix.iter().filter(|&&x| x).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.has(v, u)).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.has(u, v)).count()
    }

    fn linked(&self, a: usize, b: usize) -> bool {
        self.has(a, b) || self.has(b, a)
    }
}

/// Induced occurrences of each atlas graphlet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MotifCounts(pub Vec<u64>);

impl Default for MotifCounts {
    fn default() -> Self {
        Self(vec![0; GRAPHLET_COUNT])
    }
}

impl MotifCounts {
    pub fn as_f64(&self) -> Vec<f64> {
        self.0.iter().map(|&c| c as f64).collect()
    }
}

/// Per-node occurrences of each atlas orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCounts {
    pub nodes: Vec<PlayerId>,
    /// One 33-entry row per node.
    pub counts: Vec<Vec<u64>>,
}

impl OrbitCounts {
    pub fn totals(&self) -> Vec<u64> {
        let mut out = vec![0; ORBIT_COUNT];
        for row in &self.counts {
            for (o, c) in out.iter_mut().zip(row) {
                *o += c;
            }
        }
        out
    }

    pub fn of(&self, id: &PlayerId) -> Option<&[u64]> {
        let i = self.nodes.iter().position(|n| n == id)?;
        Some(&self.counts[i])
    }
}

fn tally(g: &Digraph, mut orbits: Option<&mut Vec<Vec<u64>>>) -> MotifCounts {
    let atlas = atlas();
    let n = g.node_count();
    let mut motifs = MotifCounts::default();
    for a in 0..n {
        for b in a + 1..n {
            let code = u8::from(g.has(a, b)) | u8::from(g.has(b, a)) << 1;
            if let Some(c) = atlas.classify_dyad(code) {
                motifs.0[c.graphlet] += 1;
                if let Some(o) = orbits.as_deref_mut() {
                    o[a][c.orbits[0]] += 1;
                    o[b][c.orbits[1]] += 1;
                }
            }
            for c3 in b + 1..n {
                let links = [g.linked(a, b), g.linked(a, c3), g.linked(b, c3)];
                if links.iter().filter(|&&l| l).count() < 2 {
                    continue;
                }
                let nodes = [a, b, c3];
                let code = super::atlas::TRIAD_PAIRS
                    .iter()
                    .enumerate()
                    .filter(|(_, &(x, y))| g.has(nodes[x], nodes[y]))
                    .fold(0u8, |code, (bit, _)| code | 1 << bit);
                let c = atlas
                    .classify_triad(code)
                    .expect("two linked pairs make a connected triad");
                motifs.0[c.graphlet] += 1;
                if let Some(o) = orbits.as_deref_mut() {
                    for (pos, &v) in nodes.iter().enumerate() {
                        o[v][c.orbits[pos]] += 1;
                    }
                }
            }
        }
    }
    motifs
}

/// Induced graphlet counts over all connected pairs and weakly connected triples.
pub fn count_motifs(g: &Digraph) -> MotifCounts {
    tally(g, None)
}

pub fn count_digraph(g: &Digraph) -> (MotifCounts, Vec<Vec<u64>>) {
    let mut orbits = vec![vec![0; ORBIT_COUNT]; g.node_count()];
    let motifs = tally(g, Some(&mut orbits));
    (motifs, orbits)
}

/// Motif counts and per-player orbit counts of a passmap's arc pattern.
pub fn count_motifs_and_orbits(g: &Passmap) -> (MotifCounts, OrbitCounts) {
    let (motifs, counts) = count_digraph(&Digraph::from_passmap(g));
    let nodes = g.nodes().iter().map(|n| n.id.clone()).collect();
    (motifs, OrbitCounts { nodes, counts })
}

/// Players on the pitch, the fixed divisor of orbit profiles.
pub const OPP_DIVISOR: f64 = 11.0;

/// Orbit occurrences per player: orbit totals over all players divided by 11.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OppProfile(pub Vec<f64>);

pub fn opp_profile(orbits: &OrbitCounts) -> OppProfile {
    OppProfile(
        orbits
            .totals()
            .into_iter()
            .map(|t| t as f64 / OPP_DIVISOR)
            .collect(),
    )
}
