//! Betweenness, harmonic closeness and shot-flow centrality on passmaps.
//!
//! Shortest paths treat frequent passes as short: an arc of weight `w` has
//! length `w_max / w`, where `w_max` is the heaviest arc of the graph. The
//! rescaling by `w_max` makes every score invariant to multiplying all
//! weights by a constant and keeps harmonic closeness inside `[0, 1]`.

mod paths;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::events::{KeyEventKind, MatchEventStream, TeamRole};
use crate::passmap::{augment_with_shots, AugmentedPassmap, KeyEventSplit, Passmap};
use crate::stats::population_std;
use crate::{PlayerId, TeamId};

pub use paths::{arc_lengths, single_source};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Measure {
    Betweenness,
    Closeness,
    Flow,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::Betweenness, Measure::Closeness, Measure::Flow];

    pub fn slug(self) -> &'static str {
        match self {
            Measure::Betweenness => "betweenness",
            Measure::Closeness => "closeness",
            Measure::Flow => "flow",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Measure::ALL
            .into_iter()
            .find(|m| m.slug() == s)
            .ok_or_else(|| format!("unknown centrality measure `{s}`"))
    }
}

/// Per-player scores in node order. Synthetic shot nodes are never included.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityVector {
    pub measure: Measure,
    pub normalized: bool,
    pub scores: Vec<(PlayerId, f64)>,
}

impl CentralityVector {
    pub fn get(&self, id: &PlayerId) -> Option<f64> {
        self.scores.iter().find(|(p, _)| p == id).map(|&(_, s)| s)
    }

    pub fn values(&self) -> Vec<f64> {
        self.scores.iter().map(|&(_, s)| s).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

/// Brandes accumulation over every source; raw pair-dependency sums per node.
pub(crate) fn raw_betweenness(g: &Passmap) -> Vec<f64> {
    let n = g.node_count();
    let lengths = arc_lengths(g);
    let mut bc = vec![0.0; n];
    for s in 0..n {
        let sp = single_source(&lengths, s);
        let mut delta = vec![0.0; n];
        for &w in sp.order.iter().rev() {
            for &v in &sp.preds[w] {
                delta[v] += sp.sigma[v] / sp.sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                bc[w] += delta[w];
            }
        }
    }
    bc
}

fn betweenness_norm(n: usize) -> Option<f64> {
    (n >= 3).then(|| ((n - 1) * (n - 2)) as f64)
}

/// Shortest-path betweenness, normalised by `(n-1)(n-2)`; all zeros for `n < 3`.
pub fn betweenness(g: &Passmap) -> CentralityVector {
    let n = g.node_count();
    let raw = raw_betweenness(g);
    let scores = g
        .nodes()
        .iter()
        .zip(raw)
        .map(|(node, b)| {
            let s = betweenness_norm(n).map_or(0.0, |d| b / d);
            (node.id.clone(), s)
        })
        .collect();
    CentralityVector {
        measure: Measure::Betweenness,
        normalized: true,
        scores,
    }
}

/// Harmonic closeness: `sum 1/d(v, u)` over reachable `u`, divided by `n - 1`.
pub fn closeness(g: &Passmap) -> CentralityVector {
    let n = g.node_count();
    let lengths = arc_lengths(g);
    let scores = (0..n)
        .map(|v| {
            let score = if n < 2 {
                0.0
            } else {
                let sp = single_source(&lengths, v);
                let sum: f64 = sp
                    .order
                    .iter()
                    .filter(|&&u| u != v)
                    .map(|&u| 1.0 / sp.dist[u])
                    .sum();
                sum / (n - 1) as f64
            };
            (g.node(v).id.clone(), score)
        })
        .collect();
    CentralityVector {
        measure: Measure::Closeness,
        normalized: true,
        scores,
    }
}

/// Raw betweenness of the player nodes of a shot-augmented graph.
pub fn flow_centrality_raw(aug: &AugmentedPassmap) -> CentralityVector {
    let raw = raw_betweenness(&aug.graph);
    CentralityVector {
        measure: Measure::Flow,
        normalized: false,
        scores: aug
            .player_indices()
            .map(|i| (aug.graph.node(i).id.clone(), raw[i]))
            .collect(),
    }
}

/// Betweenness on the shot-augmented graph (normalised by its full node
/// count), reported for players only.
pub fn flow_centrality(aug: &AugmentedPassmap) -> CentralityVector {
    let n = aug.graph.node_count();
    let mut v = flow_centrality_raw(aug);
    for (_, s) in &mut v.scores {
        *s = betweenness_norm(n).map_or(0.0, |d| *s / d);
    }
    v.normalized = true;
    v
}

/// Raw (unnormalised) betweenness, for comparisons across graphs of different sizes.
pub fn betweenness_raw(g: &Passmap) -> CentralityVector {
    CentralityVector {
        measure: Measure::Betweenness,
        normalized: false,
        scores: g
            .nodes()
            .iter()
            .zip(raw_betweenness(g))
            .map(|(n, b)| (n.id.clone(), b))
            .collect(),
    }
}

/// Change in population standard deviation of player scores across a split.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StdDelta {
    pub std_before: f64,
    pub std_after: f64,
    /// `std_after - std_before`; positive means more spread after the event.
    pub delta: f64,
    /// `delta / std_before`, absent when `std_before` is zero.
    pub relative_delta: Option<f64>,
}

/// `None` when either side has no players.
pub fn delta_std(before: &CentralityVector, after: &CentralityVector) -> Option<StdDelta> {
    let std_before = population_std(&before.values())?;
    let std_after = population_std(&after.values())?;
    let delta = std_after - std_before;
    Some(StdDelta {
        std_before,
        std_after,
        delta,
        relative_delta: (std_before > 0.0).then(|| delta / std_before),
    })
}

/// One row of the centrality results table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaStd {
    pub match_id: String,
    pub team_id: TeamId,
    pub event_kind: KeyEventKind,
    pub team_role: TeamRole,
    pub measure: Measure,
    /// `None` marks a split with an empty side.
    pub change: Option<StdDelta>,
}

/// Scores of `measure` for both sides of a split.
pub fn split_scores(
    stream: &MatchEventStream,
    split: &KeyEventSplit,
    measure: Measure,
) -> (CentralityVector, CentralityVector) {
    let score = |g: &Passmap, window| match measure {
        Measure::Betweenness => betweenness(g),
        Measure::Closeness => closeness(g),
        Measure::Flow => flow_centrality(&augment_with_shots(g, stream, &split.team_id, window)),
    };
    (
        score(&split.before, &split.before_window),
        score(&split.after, &split.after_window),
    )
}

/// Std deltas of all three measures for one team's split.
pub fn split_deltas(stream: &MatchEventStream, split: &KeyEventSplit) -> Vec<DeltaStd> {
    Measure::ALL
        .into_iter()
        .map(|measure| {
            let (before, after) = split_scores(stream, split, measure);
            DeltaStd {
                match_id: stream.match_id.clone(),
                team_id: split.team_id.clone(),
                event_kind: split.event.kind,
                team_role: split.role,
                measure,
                change: delta_std(&before, &after),
            }
        })
        .collect()
}
