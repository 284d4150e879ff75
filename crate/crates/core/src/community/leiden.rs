//! Leiden modularity optimisation with a seeded random order.
//!
//! Each round runs fast local moving, refines every community into
//! well-connected sub-communities, aggregates on the refinement and seeds the
//! aggregate with the unrefined partition. Rounds stop once every community
//! is a single aggregate node. A final full sweep of single-node moves on the
//! original graph leaves every node in its best community.

use std::collections::{BTreeMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Method, Partition, UndirectedGraph};
use crate::error::{Error, Result};
use crate::passmap::Passmap;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeidenConfig {
    pub resolution: f64,
    pub seed: u64,
    /// Randomness of the refinement merge choice, in modularity units.
    pub theta: f64,
    pub max_rounds: usize,
}

impl Default for LeidenConfig {
    fn default() -> Self {
        Self {
            resolution: 1.0,
            seed: 0,
            theta: 0.01,
            max_rounds: 64,
        }
    }
}

/// Gains closer than this are treated as ties.
const GAIN_EPS: f64 = 1e-10;

/// Weighted graph whose nodes may stand for whole communities.
#[derive(Debug, Clone)]
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    strength: Vec<f64>,
    two_m: f64,
}

impl Level {
    fn from_graph(g: &UndirectedGraph) -> Self {
        let strength: Vec<f64> = (0..g.node_count()).map(|v| g.strength(v)).collect();
        Self {
            adj: g.adj.clone(),
            two_m: strength.iter().sum(),
            strength,
        }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    /// Merges nodes sharing a label into one node each; labels must be contiguous.
    fn aggregate(&self, labels: &[usize]) -> Level {
        let k = labels.iter().max().map_or(0, |&m| m + 1);
        let mut edges: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); k];
        let mut strength = vec![0.0; k];
        for v in 0..self.len() {
            strength[labels[v]] += self.strength[v];
            for &(u, w) in &self.adj[v] {
                if labels[u] != labels[v] {
                    *edges[labels[v]].entry(labels[u]).or_insert(0.0) += w;
                }
            }
        }
        Level {
            adj: edges.into_iter().map(|m| m.into_iter().collect()).collect(),
            strength,
            two_m: self.two_m,
        }
    }
}

fn contiguous(labels: &[usize]) -> Vec<usize> {
    let mut remap = BTreeMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = remap.len();
            *remap.entry(l).or_insert(next)
        })
        .collect()
}

/// Queue-driven local moving. Returns whether any node changed community.
fn move_nodes(level: &Level, membership: &mut [usize], gamma: f64, rng: &mut ChaCha8Rng) -> bool {
    let n = level.len();
    let mut comm_strength = vec![0.0; n];
    let mut comm_size = vec![0usize; n];
    for v in 0..n {
        comm_strength[membership[v]] += level.strength[v];
        comm_size[membership[v]] += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut queue: VecDeque<usize> = order.into();
    let mut queued = vec![true; n];
    let mut changed = false;

    while let Some(v) = queue.pop_front() {
        queued[v] = false;
        let k_v = level.strength[v];
        let own = membership[v];
        let mut links: BTreeMap<usize, f64> = BTreeMap::new();
        for &(u, w) in &level.adj[v] {
            *links.entry(membership[u]).or_insert(0.0) += w;
        }
        comm_strength[own] -= k_v;
        comm_size[own] -= 1;

        let gain = |c: usize, k_vc: f64| k_vc - gamma * k_v * comm_strength[c] / level.two_m;
        let mut best = own;
        let mut best_gain = gain(own, links.get(&own).copied().unwrap_or(0.0));
        for (&c, &k_vc) in &links {
            let g = gain(c, k_vc);
            if g > best_gain + GAIN_EPS {
                best = c;
                best_gain = g;
            }
        }
        if best_gain < -GAIN_EPS {
            if let Some(empty) = (0..n).find(|&c| comm_size[c] == 0) {
                best = empty;
            }
        }

        comm_strength[best] += k_v;
        comm_size[best] += 1;
        membership[v] = best;
        if best != own {
            changed = true;
            for &(u, _) in &level.adj[v] {
                if membership[u] != best && !queued[u] {
                    queued[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    changed
}

/// Splits each community of `membership` into well-connected sub-communities.
fn refine(
    level: &Level,
    membership: &[usize],
    gamma: f64,
    theta: f64,
    rng: &mut ChaCha8Rng,
) -> Vec<usize> {
    let n = level.len();
    let m = level.two_m / 2.0;
    let mut refined: Vec<usize> = (0..n).collect();
    let mut r_strength = level.strength.clone();
    let mut r_size = vec![1usize; n];

    let mut communities: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        communities.entry(membership[v]).or_default().push(v);
    }

    for members in communities.values() {
        let comm_total: f64 = members.iter().map(|&v| level.strength[v]).sum();
        // Weight from each node (and later each sub-community) to the rest of its community.
        let inside = |v: usize| -> f64 {
            level.adj[v]
                .iter()
                .filter(|&&(u, _)| membership[u] == membership[v])
                .map(|&(_, w)| w)
                .sum()
        };
        let mut external: BTreeMap<usize, f64> = members.iter().map(|&v| (v, inside(v))).collect();

        let mut order = members.clone();
        order.shuffle(rng);
        for v in order {
            if r_size[refined[v]] != 1 {
                continue;
            }
            let k_v = level.strength[v];
            let ext_v = external[&refined[v]];
            if ext_v < gamma * k_v * (comm_total - k_v) / level.two_m {
                continue;
            }

            let mut links: BTreeMap<usize, f64> = BTreeMap::new();
            for &(u, w) in &level.adj[v] {
                if membership[u] == membership[v] && u != v {
                    *links.entry(refined[u]).or_insert(0.0) += w;
                }
            }
            let own = refined[v];
            r_strength[own] -= k_v;

            // Staying alone has zero gain.
            let mut candidates: Vec<(usize, f64)> = vec![(own, 0.0)];
            for (&t, &k_vt) in &links {
                let k_t = r_strength[t];
                let well_connected =
                    external[&t] >= gamma * k_t * (comm_total - k_t) / level.two_m;
                if !well_connected {
                    continue;
                }
                let gain = (k_vt - gamma * k_v * k_t / level.two_m) / m;
                if gain >= 0.0 {
                    candidates.push((t, gain));
                }
            }
            let top = candidates.iter().map(|&(_, g)| g).fold(f64::MIN, f64::max);
            let weights: Vec<f64> = candidates
                .iter()
                .map(|&(_, g)| ((g - top) / theta).exp())
                .collect();
            let total: f64 = weights.iter().sum();
            let mut pick = rng.gen::<f64>() * total;
            let mut target = candidates[candidates.len() - 1].0;
            for (&(t, _), &w) in candidates.iter().zip(&weights) {
                if pick < w {
                    target = t;
                    break;
                }
                pick -= w;
            }

            r_strength[target] += k_v;
            if target != own {
                let k_vt = links.get(&target).copied().unwrap_or(0.0);
                let merged = external[&target] + ext_v - 2.0 * k_vt;
                external.insert(target, merged);
                r_size[own] -= 1;
                r_size[target] += 1;
                refined[v] = target;
            }
        }
    }
    refined
}

/// Full sweeps of single-node moves (including into a fresh community) on the
/// original graph until no move raises modularity.
fn polish(g: &UndirectedGraph, membership: &mut [usize], gamma: f64) -> bool {
    let level = Level::from_graph(g);
    let n = level.len();
    if level.two_m == 0.0 {
        return false;
    }
    let mut comm_strength = vec![0.0; n];
    let mut comm_size = vec![0usize; n];
    for v in 0..n {
        comm_strength[membership[v]] += level.strength[v];
        comm_size[membership[v]] += 1;
    }
    let mut any = false;
    loop {
        let mut moved = false;
        for v in 0..n {
            let k_v = level.strength[v];
            let own = membership[v];
            let mut links: BTreeMap<usize, f64> = BTreeMap::new();
            for &(u, w) in &level.adj[v] {
                *links.entry(membership[u]).or_insert(0.0) += w;
            }
            comm_strength[own] -= k_v;
            comm_size[own] -= 1;
            let gain = |c: usize| {
                links.get(&c).copied().unwrap_or(0.0)
                    - gamma * k_v * comm_strength[c] / level.two_m
            };
            let mut best = own;
            let mut best_gain = gain(own);
            for c in (0..n).filter(|&c| comm_size[c] > 0) {
                let gc = gain(c);
                if gc > best_gain + GAIN_EPS {
                    best = c;
                    best_gain = gc;
                }
            }
            if best_gain < -GAIN_EPS && comm_size[own] > 0 {
                if let Some(empty) = (0..n).find(|&c| comm_size[c] == 0) {
                    best = empty;
                }
            }
            comm_strength[best] += k_v;
            comm_size[best] += 1;
            if best != own {
                membership[v] = best;
                moved = true;
                any = true;
            }
        }
        if !moved {
            return any;
        }
    }
}

fn leiden_round(
    g: &UndirectedGraph,
    initial: &[usize],
    config: &LeidenConfig,
    rng: &mut ChaCha8Rng,
) -> Vec<usize> {
    let mut level = Level::from_graph(g);
    let mut membership = contiguous(initial);
    let mut node_of: Vec<usize> = (0..g.node_count()).collect();

    for _ in 0..config.max_rounds {
        move_nodes(&level, &mut membership, config.resolution, rng);
        let communities = contiguous(&membership);
        if communities.iter().max().map_or(0, |&m| m + 1) == level.len() {
            break;
        }
        let mut refined = contiguous(&refine(
            &level,
            &membership,
            config.resolution,
            config.theta,
            rng,
        ));
        if refined.iter().max().map_or(0, |&m| m + 1) == level.len() {
            // Refinement merged nothing; aggregate on the communities themselves.
            refined = communities.clone();
        }
        let next = level.aggregate(&refined);
        let mut next_membership = vec![0; next.len()];
        for v in 0..level.len() {
            next_membership[refined[v]] = communities[v];
        }
        for slot in &mut node_of {
            *slot = refined[*slot];
        }
        level = next;
        membership = next_membership;
    }
    node_of.iter().map(|&a| membership[a]).collect()
}

/// Runs Leiden on the symmetrised graph. Isolated nodes stay singletons.
pub fn leiden_with(g: &Passmap, config: &LeidenConfig) -> Result<Partition> {
    if !(config.resolution > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "resolution must be positive, got {}",
            config.resolution
        )));
    }
    let nodes: Vec<_> = g.nodes().iter().map(|n| n.id.clone()).collect();
    if nodes.is_empty() {
        return Ok(Partition::empty(Method::Leiden));
    }
    let u = UndirectedGraph::from_passmap(g);
    let mut membership: Vec<usize> = (0..nodes.len()).collect();
    if u.adj.iter().any(|a| !a.is_empty()) {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        for _ in 0..config.max_rounds {
            membership = leiden_round(&u, &membership, config, &mut rng);
            if !polish(&u, &mut membership, config.resolution) {
                break;
            }
        }
    }
    Ok(Partition::from_labels(Method::Leiden, nodes, &membership))
}

pub fn leiden(g: &Passmap, resolution: f64, seed: u64) -> Result<Partition> {
    leiden_with(
        g,
        &LeidenConfig {
            resolution,
            seed,
            ..LeidenConfig::default()
        },
    )
}
