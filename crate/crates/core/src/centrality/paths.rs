use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::passmap::Passmap;

/// Outgoing `(target, length)` lists with length `w_max / w`.
pub fn arc_lengths(g: &Passmap) -> Vec<Vec<(usize, f64)>> {
    let w_max = g.arc_indices().map(|(_, w)| w).max().unwrap_or(1);
    g.out_adjacency()
        .into_iter()
        .map(|out| {
            out.into_iter()
                .map(|(t, w)| (t, f64::from(w_max) / f64::from(w)))
                .collect()
        })
        .collect()
}

/// Dijkstra output with shortest-path counts and predecessor lists.
#[derive(Debug, Clone)]
pub struct ShortestPaths {
    pub dist: Vec<f64>,
    pub sigma: Vec<f64>,
    pub preds: Vec<Vec<usize>>,
    /// Reachable nodes in non-decreasing distance order, source first.
    pub order: Vec<usize>,
}

#[derive(PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

/// Relative tolerance under which two path lengths count as equal.
const TIE_TOLERANCE: f64 = 1e-9;

fn same_length(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

/// Single-source shortest paths counting every tied path.
///
/// All lengths are at least 1, so a node's predecessors are settled before it.
pub fn single_source(lengths: &[Vec<(usize, f64)>], source: usize) -> ShortestPaths {
    let n = lengths.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut sigma = vec![0.0; n];
    let mut preds = vec![Vec::new(); n];
    let mut settled = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut heap = BinaryHeap::new();

    dist[source] = 0.0;
    sigma[source] = 1.0;
    heap.push(Entry(0.0, source));

    while let Some(Entry(d, v)) = heap.pop() {
        if settled[v] || d > dist[v] {
            continue;
        }
        settled[v] = true;
        order.push(v);
        for &(w, len) in &lengths[v] {
            if settled[w] {
                continue;
            }
            let alt = dist[v] + len;
            if dist[w].is_infinite() || (alt < dist[w] && !same_length(alt, dist[w])) {
                dist[w] = alt;
                sigma[w] = sigma[v];
                preds[w].clear();
                preds[w].push(v);
                heap.push(Entry(alt, w));
            } else if same_length(alt, dist[w]) {
                sigma[w] += sigma[v];
                preds[w].push(v);
            }
        }
    }
    ShortestPaths {
        dist,
        sigma,
        preds,
        order,
    }
}
