//! k-clique percolation on the undirected support of a passmap.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Method, Partition, UndirectedGraph};
use crate::error::{Error, Result};
use crate::passmap::Passmap;
use crate::PlayerId;

/// Overlapping k-clique communities, as node indices of the source graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CliqueCover {
    pub k: usize,
    pub nodes: Vec<PlayerId>,
    /// Sorted member lists, ordered by their smallest member.
    pub communities: Vec<Vec<usize>>,
    /// Sum of undirected weights inside each community.
    pub internal_weight: Vec<f64>,
}

impl CliqueCover {
    pub fn covered(&self) -> BTreeSet<usize> {
        self.communities.iter().flatten().copied().collect()
    }

    /// One community per node: a node in several communities joins the one with
    /// the largest internal weight (lowest index on ties); uncovered nodes are
    /// singletons.
    pub fn flatten(&self) -> Partition {
        let n = self.nodes.len();
        let mut label: Vec<Option<usize>> = vec![None; n];
        for (c, members) in self.communities.iter().enumerate() {
            for &v in members {
                let better = match label[v] {
                    None => true,
                    Some(prev) => self.internal_weight[c] > self.internal_weight[prev],
                };
                if better {
                    label[v] = Some(c);
                }
            }
        }
        let offset = self.communities.len();
        let labels: Vec<usize> = label
            .iter()
            .enumerate()
            .map(|(v, l)| l.unwrap_or(offset + v))
            .collect();
        Partition::from_labels(Method::CliquePercolation, self.nodes.clone(), &labels)
    }
}

fn bron_kerbosch(
    adj: &[BTreeSet<usize>],
    r: &mut Vec<usize>,
    mut p: BTreeSet<usize>,
    mut x: BTreeSet<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            let mut clique = r.clone();
            clique.sort_unstable();
            out.push(clique);
        }
        return;
    }
    let pivot = *p
        .union(&x)
        .max_by_key(|&&u| (p.intersection(&adj[u]).count(), std::cmp::Reverse(u)))
        .expect("p is non-empty");
    let candidates: Vec<usize> = p.difference(&adj[pivot]).copied().collect();
    for v in candidates {
        r.push(v);
        let p_next = p.intersection(&adj[v]).copied().collect();
        let x_next = x.intersection(&adj[v]).copied().collect();
        bron_kerbosch(adj, r, p_next, x_next, out);
        r.pop();
        p.remove(&v);
        x.insert(v);
    }
}

/// All maximal cliques of the undirected support, each sorted, in lexicographic order.
pub(crate) fn maximal_cliques(g: &UndirectedGraph) -> Vec<Vec<usize>> {
    let adj: Vec<BTreeSet<usize>> = g
        .adj
        .iter()
        .map(|list| list.iter().map(|&(j, _)| j).collect())
        .collect();
    let mut out = Vec::new();
    bron_kerbosch(
        &adj,
        &mut Vec::new(),
        (0..g.node_count()).collect(),
        BTreeSet::new(),
        &mut out,
    );
    out.sort();
    out
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// k-clique communities: unions of k-cliques chained through shared `k - 1` nodes.
///
/// Two k-cliques are adjacent exactly when the maximal cliques containing them
/// share at least `k - 1` nodes, so percolation runs over maximal cliques of
/// size at least `k`.
pub fn clique_percolation(g: &Passmap, k: usize) -> Result<CliqueCover> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "clique size must be at least 2, got {k}"
        )));
    }
    let u = UndirectedGraph::from_passmap(g);
    let cliques: Vec<Vec<usize>> = maximal_cliques(&u)
        .into_iter()
        .filter(|c| c.len() >= k)
        .collect();

    let mut parent: Vec<usize> = (0..cliques.len()).collect();
    for i in 0..cliques.len() {
        for j in i + 1..cliques.len() {
            let shared = cliques[i]
                .iter()
                .filter(|v| cliques[j].binary_search(v).is_ok())
                .count();
            if shared + 1 >= k {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }

    let mut groups: std::collections::BTreeMap<usize, BTreeSet<usize>> = Default::default();
    for (i, clique) in cliques.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().extend(clique);
    }
    let mut communities: Vec<Vec<usize>> = groups
        .into_values()
        .map(|s| s.into_iter().collect())
        .collect();
    communities.sort();

    let internal_weight = communities
        .iter()
        .map(|members| {
            let mut total = 0.0;
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    total += u.weight(a, b);
                }
            }
            total
        })
        .collect();

    Ok(CliqueCover {
        k,
        nodes: g.nodes().iter().map(|n| n.id.clone()).collect(),
        communities,
        internal_weight,
    })
}
