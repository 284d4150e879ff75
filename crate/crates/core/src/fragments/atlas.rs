//! The 15 weakly connected directed graphlets on two and three nodes.
//!
//! A labelled graphlet is stored as a bit code over its ordered node pairs.
//! Each graphlet is represented by the labelling with the smallest code, the
//! atlas is sorted by (node count, arc count, code), and orbits are numbered
//! in atlas order and then by the smallest canonical position they contain.

use std::ops::Range;
use std::sync::OnceLock;

pub const GRAPHLET_COUNT: usize = 15;
pub const ORBIT_COUNT: usize = 33;

/// Ordered node pairs of a dyad, by bit position.
pub const DYAD_PAIRS: [(usize, usize); 2] = [(0, 1), (1, 0)];
/// Ordered node pairs of a triad, by bit position.
pub const TRIAD_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];

const PERMS2: [[usize; 3]; 2] = [[0, 1, 2], [1, 0, 2]];
const PERMS3: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

type Shape = (&'static str, &'static [(usize, usize)]);

const NAMED_SHAPES: [Shape; GRAPHLET_COUNT] = [
    ("arc", &[(0, 1)]),
    ("mutual_arc", &[(0, 1), (1, 0)]),
    ("out_star", &[(0, 1), (0, 2)]),
    ("in_star", &[(1, 0), (2, 0)]),
    ("path", &[(0, 1), (1, 2)]),
    ("mutual_out", &[(0, 1), (1, 0), (1, 2)]),
    ("mutual_in", &[(0, 1), (1, 0), (2, 1)]),
    ("feed_forward", &[(0, 1), (1, 2), (0, 2)]),
    ("cycle", &[(0, 1), (1, 2), (2, 0)]),
    ("pivot", &[(0, 1), (1, 0), (1, 2), (2, 1)]),
    ("mutual_out_star", &[(0, 1), (1, 0), (2, 0), (2, 1)]),
    ("mutual_in_star", &[(0, 1), (1, 0), (0, 2), (1, 2)]),
    ("mutual_cycle", &[(0, 1), (1, 0), (1, 2), (2, 0)]),
    ("near_complete", &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2)]),
    (
        "complete",
        &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)],
    ),
];

fn pairs(nodes: usize) -> &'static [(usize, usize)] {
    if nodes == 2 {
        &DYAD_PAIRS
    } else {
        &TRIAD_PAIRS
    }
}

fn perms(nodes: usize) -> &'static [[usize; 3]] {
    if nodes == 2 {
        &PERMS2
    } else {
        &PERMS3
    }
}

/// Bit code of an arc list on `nodes` labelled nodes.
pub fn encode(nodes: usize, arcs: &[(usize, usize)]) -> u8 {
    let p = pairs(nodes);
    arcs.iter().fold(0, |code, arc| {
        let bit = p.iter().position(|q| q == arc).expect("arc within graphlet");
        code | 1 << bit
    })
}

pub fn decode(nodes: usize, code: u8) -> Vec<(usize, usize)> {
    pairs(nodes)
        .iter()
        .enumerate()
        .filter(|&(bit, _)| code & (1 << bit) != 0)
        .map(|(_, &arc)| arc)
        .collect()
}

/// Code of the graph obtained by relabelling node `v` as `perm[v]`.
fn permute(nodes: usize, code: u8, perm: &[usize; 3]) -> u8 {
    let arcs: Vec<_> = decode(nodes, code)
        .into_iter()
        .map(|(a, b)| (perm[a], perm[b]))
        .collect();
    encode(nodes, &arcs)
}

fn weakly_connected(nodes: usize, code: u8) -> bool {
    let mut reached = 1u8;
    for _ in 0..nodes {
        for (a, b) in decode(nodes, code) {
            if reached & (1 << a) != 0 || reached & (1 << b) != 0 {
                reached |= 1 << a | 1 << b;
            }
        }
    }
    reached.count_ones() as usize == nodes
}

/// Smallest code over all relabellings, with a permutation reaching it.
fn canonical(nodes: usize, code: u8) -> (u8, [usize; 3]) {
    perms(nodes)
        .iter()
        .map(|p| (permute(nodes, code, p), *p))
        .min()
        .expect("at least the identity")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graphlet {
    pub index: usize,
    pub name: &'static str,
    pub nodes: usize,
    /// Canonical code; see [`TRIAD_PAIRS`] and [`DYAD_PAIRS`] for the bit layout.
    pub code: u8,
    pub arcs: Vec<(usize, usize)>,
    /// Global orbit of each canonical node position.
    pub position_orbits: Vec<usize>,
    pub orbits: Range<usize>,
}

/// Graphlet and orbit of every position of one labelled subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub graphlet: usize,
    pub orbits: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphletAtlas {
    pub graphlets: Vec<Graphlet>,
    dyads: [Option<Classification>; 4],
    triads: [Option<Classification>; 64],
}

impl GraphletAtlas {
    pub fn orbit_count(&self) -> usize {
        self.graphlets.last().map_or(0, |g| g.orbits.end)
    }

    pub fn by_name(&self, name: &str) -> Option<&Graphlet> {
        self.graphlets.iter().find(|g| g.name == name)
    }

    /// Graphlet owning a global orbit index.
    pub fn graphlet_of_orbit(&self, orbit: usize) -> Option<&Graphlet> {
        self.graphlets.iter().find(|g| g.orbits.contains(&orbit))
    }

    /// Classifies a labelled dyad code; `None` when the pair is not connected.
    pub fn classify_dyad(&self, code: u8) -> Option<Classification> {
        self.dyads[usize::from(code & 0b11)]
    }

    /// Classifies a labelled triad code; `None` when not weakly connected.
    pub fn classify_triad(&self, code: u8) -> Option<Classification> {
        self.triads[usize::from(code & 0b11_1111)]
    }
}

/// Enumerates every labelled dyad and triad and groups them by isomorphism.
pub fn build_atlas() -> GraphletAtlas {
    let mut reps: Vec<(usize, u32, u8)> = Vec::new();
    for nodes in [2usize, 3] {
        for code in 0..(1u8 << pairs(nodes).len()) {
            if !weakly_connected(nodes, code) {
                continue;
            }
            let (canon, _) = canonical(nodes, code);
            if !reps.contains(&(nodes, canon.count_ones(), canon)) {
                reps.push((nodes, canon.count_ones(), canon));
            }
        }
    }
    reps.sort();

    let mut graphlets = Vec::with_capacity(reps.len());
    let mut next_orbit = 0;
    for (index, &(nodes, _, code)) in reps.iter().enumerate() {
        let automorphisms: Vec<&[usize; 3]> = perms(nodes)
            .iter()
            .filter(|p| permute(nodes, code, p) == code)
            .collect();
        let mut position_orbits = vec![usize::MAX; nodes];
        let start = next_orbit;
        for pos in 0..nodes {
            if position_orbits[pos] != usize::MAX {
                continue;
            }
            for p in &automorphisms {
                position_orbits[p[pos]] = next_orbit;
            }
            next_orbit += 1;
        }
        let name = NAMED_SHAPES
            .iter()
            .find(|(_, arcs)| {
                let n = if arcs.iter().any(|&(a, b)| a.max(b) == 2) { 3 } else { 2 };
                n == nodes && canonical(n, encode(n, arcs)).0 == code
            })
            .map_or("unnamed", |(name, _)| name);
        graphlets.push(Graphlet {
            index,
            name,
            nodes,
            code,
            arcs: decode(nodes, code),
            position_orbits,
            orbits: start..next_orbit,
        });
    }

    let table = |nodes: usize, code: u8| -> Option<Classification> {
        if !weakly_connected(nodes, code) {
            return None;
        }
        let (canon, perm) = canonical(nodes, code);
        let g = graphlets
            .iter()
            .find(|g| g.nodes == nodes && g.code == canon)
            .expect("every connected code has a representative");
        let mut orbits = [usize::MAX; 3];
        for v in 0..nodes {
            orbits[v] = g.position_orbits[perm[v]];
        }
        Some(Classification {
            graphlet: g.index,
            orbits,
        })
    };
    let dyads = std::array::from_fn(|c| table(2, c as u8));
    let triads = std::array::from_fn(|c| table(3, c as u8));

    GraphletAtlas {
        graphlets,
        dyads,
        triads,
    }
}

/// Shared atlas, built on first use.
pub fn atlas() -> &'static GraphletAtlas {
    static ATLAS: OnceLock<GraphletAtlas> = OnceLock::new();
    ATLAS.get_or_init(build_atlas)
}
