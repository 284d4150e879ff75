//! Community structure of pruned passmaps.
//!
//! Detection runs on the undirected support of a pruned passmap, with the
//! weights of `a -> b` and `b -> a` summed. Partitions are compared against
//! the playing lines of a formation with normalised mutual information.

mod clique;
mod formation;
mod leiden;
mod nmi;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::passmap::Passmap;
use crate::PlayerId;

pub use clique::{clique_percolation, CliqueCover};
pub use formation::{
    parse_formation, position_community_profile, read_formation_file, write_formation,
    CommunityProfile, FormationEntry, FormationGroundTruth, LineCounts,
};
pub use leiden::{leiden, leiden_with, LeidenConfig};
pub use nmi::nmi;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Method {
    Leiden,
    CliquePercolation,
    PlayingLines,
}

impl Method {
    pub fn slug(self) -> &'static str {
        match self {
            Method::Leiden => "leiden",
            Method::CliquePercolation => "clique_percolation",
            Method::PlayingLines => "playing_lines",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

/// Every node assigned to exactly one community; indices are contiguous from 0
/// and numbered by first appearance in node order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub method: Method,
    pub nodes: Vec<PlayerId>,
    pub membership: Vec<usize>,
}

impl Partition {
    /// Relabels arbitrary community labels into contiguous first-appearance order.
    pub fn from_labels(method: Method, nodes: Vec<PlayerId>, labels: &[usize]) -> Self {
        assert_eq!(nodes.len(), labels.len());
        let mut remap: BTreeMap<usize, usize> = BTreeMap::new();
        let membership = labels
            .iter()
            .map(|&l| {
                let next = remap.len();
                *remap.entry(l).or_insert(next)
            })
            .collect();
        Self {
            method,
            nodes,
            membership,
        }
    }

    pub fn empty(method: Method) -> Self {
        Self {
            method,
            nodes: Vec::new(),
            membership: Vec::new(),
        }
    }

    pub fn community_count(&self) -> usize {
        self.membership.iter().max().map_or(0, |&m| m + 1)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn community_of(&self, id: &PlayerId) -> Option<usize> {
        self.nodes
            .iter()
            .position(|n| n == id)
            .map(|i| self.membership[i])
    }

    pub fn communities(&self) -> Vec<Vec<PlayerId>> {
        let mut out = vec![Vec::new(); self.community_count()];
        for (node, &c) in self.nodes.iter().zip(&self.membership) {
            out[c].push(node.clone());
        }
        out
    }

    /// Same partition restricted to `keep` (in this partition's order), relabelled.
    pub fn restrict(&self, keep: impl Fn(&PlayerId) -> bool) -> Partition {
        let (nodes, labels): (Vec<_>, Vec<_>) = self
            .nodes
            .iter()
            .zip(&self.membership)
            .filter(|(n, _)| keep(n))
            .map(|(n, &m)| (n.clone(), m))
            .unzip();
        Partition::from_labels(self.method, nodes, &labels)
    }
}

/// Symmetrised weighted graph used by the detection algorithms.
#[derive(Debug, Clone, PartialEq)]
pub struct UndirectedGraph {
    /// Neighbour lists `(j, w_ij + w_ji)`, sorted by `j`, no self-loops.
    pub adj: Vec<Vec<(usize, f64)>>,
}

impl UndirectedGraph {
    pub fn from_passmap(g: &Passmap) -> Self {
        let n = g.node_count();
        let mut w: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for ((a, b), weight) in g.arc_indices() {
            let key = (a.min(b), a.max(b));
            *w.entry(key).or_insert(0.0) += f64::from(weight);
        }
        let mut adj = vec![Vec::new(); n];
        for (&(a, b), &weight) in &w {
            adj[a].push((b, weight));
            adj[b].push((a, weight));
        }
        for list in &mut adj {
            list.sort_by_key(|&(j, _)| j);
        }
        Self { adj }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn weight(&self, a: usize, b: usize) -> f64 {
        self.adj[a]
            .binary_search_by_key(&b, |&(j, _)| j)
            .map_or(0.0, |i| self.adj[a][i].1)
    }

    pub fn strength(&self, v: usize) -> f64 {
        self.adj[v].iter().map(|&(_, w)| w).sum()
    }
}

/// Newman modularity with resolution `gamma` on the symmetrised graph.
pub fn modularity(g: &UndirectedGraph, membership: &[usize], gamma: f64) -> f64 {
    let n = g.node_count();
    let two_m: f64 = (0..n).map(|v| g.strength(v)).sum();
    if two_m == 0.0 {
        return 0.0;
    }
    let k = membership.iter().max().map_or(0, |&m| m + 1);
    let mut internal = vec![0.0; k];
    let mut total = vec![0.0; k];
    for v in 0..n {
        total[membership[v]] += g.strength(v);
        for &(u, w) in &g.adj[v] {
            if membership[u] == membership[v] {
                internal[membership[v]] += w;
            }
        }
    }
    internal
        .iter()
        .zip(&total)
        .map(|(&i, &t)| i / two_m - gamma * (t / two_m) * (t / two_m))
        .sum()
}
