//! Independent reference implementations shared by the integration tests.
//!
//! Nothing here calls into the crate's algorithms; only plain data types
//! (passmaps, partitions, atlas tables) cross the boundary.

#![allow(dead_code)]

pub mod checks;

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use passnet::community::Partition;
use passnet::fragments::{Graphlet, GraphletAtlas};
use passnet::passmap::Passmap;
use passnet::PlayerId;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/open-data")
}

pub fn fixture_events(id: &str) -> PathBuf {
    fixtures().join("events").join(format!("{id}.json"))
}

pub const FIXTURE_MATCHES: [&str; 3] = ["15946", "15986", "3788741"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Weighted arc list on nodes `0..n`.
#[derive(Debug, Clone)]
pub struct WeightedDigraph {
    pub n: usize,
    pub arcs: BTreeMap<(usize, usize), u32>,
}

impl WeightedDigraph {
    pub fn random(rng: &mut impl Rng, n: usize, p: f64, max_weight: u32) -> Self {
        let mut arcs = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && rng.gen_bool(p) {
                    arcs.insert((a, b), rng.gen_range(1..=max_weight));
                }
            }
        }
        Self { n, arcs }
    }

    pub fn has(&self, a: usize, b: usize) -> bool {
        self.arcs.contains_key(&(a, b))
    }

    /// Passmap with node `i` named `p{i}` and nodes inserted in index order.
    pub fn to_passmap(&self) -> Passmap {
        let mut g = Passmap::new("t".into(), "oracle");
        for i in 0..self.n {
            g.add_node(player(i));
        }
        for (&(a, b), &w) in &self.arcs {
            g.add_arc(player(a), player(b), w);
        }
        g
    }
}

pub fn player(i: usize) -> PlayerId {
    PlayerId::from(format!("p{i}").as_str())
}

// ---------------------------------------------------------------------------
// Shortest paths by exhaustive simple-path enumeration, in exact arithmetic.

fn rational_lengths(g: &WeightedDigraph) -> BTreeMap<(usize, usize), BigRational> {
    let w_max = g.arcs.values().copied().max().unwrap_or(1);
    g.arcs
        .iter()
        .map(|(&k, &w)| (k, BigRational::new(BigInt::from(w_max), BigInt::from(w))))
        .collect()
}

fn simple_paths(
    g: &WeightedDigraph,
    lengths: &BTreeMap<(usize, usize), BigRational>,
    s: usize,
    t: usize,
) -> Vec<(BigRational, Vec<usize>)> {
    fn walk(
        g: &WeightedDigraph,
        lengths: &BTreeMap<(usize, usize), BigRational>,
        path: &mut Vec<usize>,
        len: BigRational,
        t: usize,
        out: &mut Vec<(BigRational, Vec<usize>)>,
    ) {
        let v = *path.last().unwrap();
        if v == t {
            out.push((len, path.clone()));
            return;
        }
        for u in 0..g.n {
            if let Some(l) = lengths.get(&(v, u)) {
                if !path.contains(&u) {
                    path.push(u);
                    walk(g, lengths, path, &len + l, t, out);
                    path.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    walk(g, lengths, &mut vec![s], BigRational::zero(), t, &mut out);
    out
}

/// Unnormalised betweenness: for every ordered pair, the share of shortest
/// paths passing through each interior node.
pub fn brute_betweenness_raw(g: &WeightedDigraph) -> Vec<BigRational> {
    let lengths = rational_lengths(g);
    let mut bc = vec![BigRational::zero(); g.n];
    for s in 0..g.n {
        for t in 0..g.n {
            if s == t {
                continue;
            }
            let paths = simple_paths(g, &lengths, s, t);
            let Some(best) = paths.iter().map(|(l, _)| l).min().cloned() else {
                continue;
            };
            let shortest: Vec<_> = paths.iter().filter(|(l, _)| *l == best).collect();
            let total = BigInt::from(shortest.len());
            for v in 0..g.n {
                if v == s || v == t {
                    continue;
                }
                let through = shortest.iter().filter(|(_, p)| p.contains(&v)).count();
                bc[v] += BigRational::new(BigInt::from(through), total.clone());
            }
        }
    }
    bc
}

pub fn brute_betweenness(g: &WeightedDigraph) -> Vec<f64> {
    let raw = brute_betweenness_raw(g);
    raw.iter()
        .map(|b| {
            if g.n < 3 {
                0.0
            } else {
                let norm = BigInt::from((g.n - 1) * (g.n - 2));
                (b / BigRational::from_integer(norm)).to_f64().unwrap()
            }
        })
        .collect()
}

/// Harmonic closeness over `n - 1`.
pub fn brute_closeness(g: &WeightedDigraph) -> Vec<f64> {
    let lengths = rational_lengths(g);
    (0..g.n)
        .map(|s| {
            if g.n < 2 {
                return 0.0;
            }
            let mut sum = BigRational::zero();
            for t in 0..g.n {
                if t == s {
                    continue;
                }
                if let Some(d) = simple_paths(g, &lengths, s, t).into_iter().map(|(l, _)| l).min() {
                    sum += d.recip();
                }
            }
            (sum / BigRational::from_integer(BigInt::from(g.n - 1))).to_f64().unwrap()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Directed graphlets by brute-force isomorphism.

pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

pub type ArcSet = BTreeSet<(usize, usize)>;

fn relabel(arcs: &ArcSet, perm: &[usize]) -> ArcSet {
    arcs.iter().map(|&(a, b)| (perm[a], perm[b])).collect()
}

pub fn weakly_connected(k: usize, arcs: &ArcSet) -> bool {
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in arcs {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Every weakly connected labelled digraph on `k` nodes.
pub fn connected_labelled(k: usize) -> Vec<ArcSet> {
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|a| (0..k).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &p)| p)
                .collect::<ArcSet>()
        })
        .filter(|arcs| weakly_connected(k, arcs))
        .collect()
}

pub fn isomorphic(k: usize, x: &ArcSet, y: &ArcSet) -> bool {
    x.len() == y.len() && permutations(k).iter().any(|p| &relabel(x, p) == y)
}

/// Partition of `0..k` into automorphism orbits.
pub fn automorphism_orbits(k: usize, arcs: &ArcSet) -> Vec<BTreeSet<usize>> {
    let autos: Vec<_> = permutations(k)
        .into_iter()
        .filter(|p| &relabel(arcs, p) == arcs)
        .collect();
    let mut orbits: Vec<BTreeSet<usize>> = Vec::new();
    for v in 0..k {
        if orbits.iter().any(|o| o.contains(&v)) {
            continue;
        }
        orbits.push(autos.iter().map(|p| p[v]).collect());
    }
    orbits
}

/// Isomorphism classes of connected digraphs on 2 and 3 nodes, each with its orbit count.
pub fn brute_force_classes() -> Vec<(usize, ArcSet, usize)> {
    let mut classes: Vec<(usize, ArcSet, usize)> = Vec::new();
    for k in [2, 3] {
        for arcs in connected_labelled(k) {
            if !classes.iter().any(|(kk, rep, _)| *kk == k && isomorphic(k, rep, &arcs)) {
                let orbits = automorphism_orbits(k, &arcs).len();
                classes.push((k, arcs, orbits));
            }
        }
    }
    classes
}

fn graphlet_arcs(g: &Graphlet) -> ArcSet {
    g.arcs.iter().copied().collect()
}

/// Graphlet of an induced subgraph and the orbit of each of its nodes, found
/// by trying every relabelling against every atlas representative.
pub fn classify_by_permutation(
    atlas: &GraphletAtlas,
    k: usize,
    arcs: &ArcSet,
) -> Option<(usize, Vec<usize>)> {
    for g in atlas.graphlets.iter().filter(|g| g.nodes == k) {
        let target = graphlet_arcs(g);
        if target.len() != arcs.len() {
            continue;
        }
        for p in permutations(k) {
            if relabel(arcs, &p) == target {
                let orbits = (0..k).map(|v| g.position_orbits[p[v]]).collect();
                return Some((g.index, orbits));
            }
        }
    }
    None
}

/// Motif counts and per-node orbit counts by enumerating every node subset of size 2 and 3.
pub fn brute_force_counts(
    atlas: &GraphletAtlas,
    n: usize,
    has: impl Fn(usize, usize) -> bool,
) -> (Vec<u64>, Vec<Vec<u64>>) {
    let mut motifs = vec![0u64; atlas.graphlets.len()];
    let mut orbits = vec![vec![0u64; atlas.orbit_count()]; n];
    let mut visit = |nodes: &[usize]| {
        let k = nodes.len();
        let mut arcs = ArcSet::new();
        for x in 0..k {
            for y in 0..k {
                if x != y && has(nodes[x], nodes[y]) {
                    arcs.insert((x, y));
                }
            }
        }
        if !weakly_connected(k, &arcs) {
            return;
        }
        let (graphlet, orbit) =
            classify_by_permutation(atlas, k, &arcs).expect("connected subgraph matches a graphlet");
        motifs[graphlet] += 1;
        for (pos, &v) in nodes.iter().enumerate() {
            orbits[v][orbit[pos]] += 1;
        }
    };
    for a in 0..n {
        for b in a + 1..n {
            visit(&[a, b]);
            for c in b + 1..n {
                visit(&[a, b, c]);
            }
        }
    }
    (motifs, orbits)
}

// ---------------------------------------------------------------------------
// Normalised mutual information from an explicit contingency table.

pub fn contingency_nmi(x: &[usize], y: &[usize]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    if x.is_empty() {
        return 1.0;
    }
    let rows: BTreeSet<usize> = x.iter().copied().collect();
    let cols: BTreeSet<usize> = y.iter().copied().collect();
    let rows: Vec<usize> = rows.into_iter().collect();
    let cols: Vec<usize> = cols.into_iter().collect();
    let mut table = vec![vec![0.0f64; cols.len()]; rows.len()];
    for (a, b) in x.iter().zip(y) {
        let i = rows.iter().position(|r| r == a).unwrap();
        let j = cols.iter().position(|c| c == b).unwrap();
        table[i][j] += 1.0;
    }
    let row_sums: Vec<f64> = table.iter().map(|r| r.iter().sum()).collect();
    let col_sums: Vec<f64> = (0..cols.len()).map(|j| table.iter().map(|r| r[j]).sum()).collect();
    let entropy = |sums: &[f64]| -> f64 {
        sums.iter()
            .filter(|&&s| s > 0.0)
            .map(|&s| -(s / n) * (s / n).ln())
            .sum()
    };
    let hx = entropy(&row_sums);
    let hy = entropy(&col_sums);
    if hx == 0.0 && hy == 0.0 {
        return 1.0;
    }
    if hx == 0.0 || hy == 0.0 {
        return 0.0;
    }
    let mut mi = 0.0;
    for i in 0..rows.len() {
        for j in 0..cols.len() {
            let nij = table[i][j];
            if nij > 0.0 {
                mi += nij / n * (n * nij / (row_sums[i] * col_sums[j])).ln();
            }
        }
    }
    2.0 * mi / (hx + hy)
}

/// Labels of `p` in the order of `ids`.
pub fn labels_in(p: &Partition, ids: &[PlayerId]) -> Vec<usize> {
    ids.iter().map(|id| p.community_of(id).unwrap()).collect()
}

// ---------------------------------------------------------------------------
// Whole directory trees as (relative path, bytes), for determinism checks.

pub fn tree(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    fn walk(root: &Path, dir: &Path, out: &mut BTreeMap<PathBuf, Vec<u8>>) {
        let mut entries: Vec<_> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
        entries.sort();
        for p in entries {
            if p.is_dir() {
                walk(root, &p, out);
            } else {
                out.insert(p.strip_prefix(root).unwrap().to_path_buf(), std::fs::read(&p).unwrap());
            }
        }
    }
    let mut out = BTreeMap::new();
    if root.is_dir() {
        walk(root, root, &mut out);
    }
    out
}
