//! Directed weighted pass networks.
//!
//! A [`Passmap`] has one node per player and one arc per ordered
//! (passer, recipient) pair, weighted by the number of completed passes.
//! Node order is insertion order, which is also the Pajek vertex order.

mod pajek;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::events::{
    shots, successful_passes, KeyEvent, MatchEventStream, PassRecord, TeamRole, Window,
};
use crate::{PlayerId, TeamId};

pub use pajek::{
    export_pajek, import_pajek, read_pajek, read_sidecar, write_pajek, write_sidecar,
    NetworkMetadata, NodeMetadata,
};

/// Playing line a player is lined up in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PositionLine {
    GK,
    DEF,
    MID,
    ATT,
}

impl PositionLine {
    pub const ALL: [PositionLine; 4] = [
        PositionLine::GK,
        PositionLine::DEF,
        PositionLine::MID,
        PositionLine::ATT,
    ];

    /// Maps a StatsBomb position name ("Left Center Back", "Center Forward", ...) to its line.
    pub fn from_position_name(name: &str) -> Option<Self> {
        let n = name.to_ascii_lowercase();
        if n.contains("goalkeeper") {
            Some(PositionLine::GK)
        } else if n.contains("back") {
            Some(PositionLine::DEF)
        } else if n.contains("midfield") {
            Some(PositionLine::MID)
        } else if n.contains("wing") || n.contains("forward") || n.contains("striker") {
            Some(PositionLine::ATT)
        } else {
            None
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PositionLine::GK => "GK",
            PositionLine::DEF => "DEF",
            PositionLine::MID => "MID",
            PositionLine::ATT => "ATT",
        }
    }
}

impl fmt::Display for PositionLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PositionLine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "GK" => Ok(PositionLine::GK),
            "DEF" => Ok(PositionLine::DEF),
            "MID" => Ok(PositionLine::MID),
            "ATT" => Ok(PositionLine::ATT),
            other => Err(format!("unknown playing line `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: PlayerId,
    pub name: Option<String>,
    pub line: Option<PositionLine>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Passmap {
    pub team_id: TeamId,
    /// Free-form window description, e.g. `first_goal/before`.
    pub label: String,
    nodes: Vec<Node>,
    index: HashMap<PlayerId, usize>,
    arcs: BTreeMap<(usize, usize), u32>,
}

impl Passmap {
    pub fn new(team_id: TeamId, label: impl Into<String>) -> Self {
        Self {
            team_id,
            label: label.into(),
            ..Self::default()
        }
    }

    /// Adds a node if absent and returns its index.
    pub fn add_node(&mut self, id: PlayerId) -> usize {
        if let Some(&i) = self.index.get(&id) {
            return i;
        }
        let i = self.nodes.len();
        self.index.insert(id.clone(), i);
        self.nodes.push(Node {
            id,
            name: None,
            line: None,
        });
        i
    }

    /// Adds `weight` to the arc `from -> to`, creating nodes as needed.
    /// Self-arcs and zero weights are ignored.
    pub fn add_arc(&mut self, from: PlayerId, to: PlayerId, weight: u32) {
        if from == to || weight == 0 {
            return;
        }
        let a = self.add_node(from);
        let b = self.add_node(to);
        *self.arcs.entry((a, b)).or_insert(0) += weight;
    }

    pub(crate) fn add_arc_by_index(&mut self, a: usize, b: usize, weight: u32) {
        if a != b && weight > 0 {
            *self.arcs.entry((a, b)).or_insert(0) += weight;
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    pub fn node_mut(&mut self, id: &PlayerId) -> Option<&mut Node> {
        let i = *self.index.get(id)?;
        Some(&mut self.nodes[i])
    }

    pub fn index_of(&self, id: &PlayerId) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Arcs by node index, sorted by `(from, to)`.
    pub fn arc_indices(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.arcs.iter().map(|(&k, &w)| (k, w))
    }

    pub fn arcs(&self) -> impl Iterator<Item = (&PlayerId, &PlayerId, u32)> + '_ {
        self.arcs
            .iter()
            .map(|(&(a, b), &w)| (&self.nodes[a].id, &self.nodes[b].id, w))
    }

    pub fn weight(&self, from: &PlayerId, to: &PlayerId) -> u32 {
        match (self.index.get(from), self.index.get(to)) {
            (Some(&a), Some(&b)) => self.arcs.get(&(a, b)).copied().unwrap_or(0),
            _ => 0,
        }
    }

    pub fn total_weight(&self) -> u64 {
        self.arcs.values().map(|&w| u64::from(w)).sum()
    }

    /// Outgoing `(target, weight)` lists per node index.
    pub fn out_adjacency(&self) -> Vec<Vec<(usize, u32)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for (&(a, b), &w) in &self.arcs {
            adj[a].push((b, w));
        }
        adj
    }

    /// Weights keyed by player ids, for comparisons across graphs with different node orders.
    pub fn weight_map(&self) -> BTreeMap<(PlayerId, PlayerId), u32> {
        self.arcs()
            .map(|(a, b, w)| ((a.clone(), b.clone()), w))
            .collect()
    }

    /// Fills node names and lines from lookups; existing values are kept.
    pub fn annotate(
        &mut self,
        names: &BTreeMap<PlayerId, String>,
        lines: &BTreeMap<PlayerId, PositionLine>,
    ) {
        for node in &mut self.nodes {
            if node.name.is_none() {
                node.name = names.get(&node.id).cloned();
            }
            if node.line.is_none() {
                node.line = lines.get(&node.id).copied();
            }
        }
    }

    /// Same graph with every arc weight replaced by `f(weight)`; zero drops the arc.
    pub fn map_weights(&self, f: impl Fn(u32) -> u32) -> Passmap {
        let mut g = self.clone();
        g.arcs = self
            .arcs
            .iter()
            .filter_map(|(&k, &w)| {
                let w = f(w);
                (w > 0).then_some((k, w))
            })
            .collect();
        g
    }
}

/// Counts repeated (passer, recipient) pairs into arc weights.
pub fn build_passmap(team_id: TeamId, label: impl Into<String>, passes: &[PassRecord]) -> Passmap {
    let mut g = Passmap::new(team_id, label);
    for p in passes {
        g.add_arc(p.passer.clone(), p.recipient.clone(), 1);
    }
    g
}

/// One team's passmaps on either side of a key event.
#[derive(Debug, Clone, PartialEq)]
pub struct KeyEventSplit {
    pub team_id: TeamId,
    pub event: KeyEvent,
    pub role: TeamRole,
    pub before: Passmap,
    pub after: Passmap,
    pub before_window: Window,
    pub after_window: Window,
}

/// Windows on either side of `event`; the `after` window is empty when the
/// event never happened.
pub fn split_windows(event: &KeyEvent) -> (Window, Window) {
    match event.split_point() {
        Some(t) => (Window::before(t), Window::after(t)),
        None => {
            let whole = Window::whole_match();
            (whole, Window::new(whole.end, whole.end))
        }
    }
}

/// Splits a team's completed passes at the key event.
///
/// Passes strictly before the event time go `before`; passes at or after it
/// go `after`. If the event never happened the whole match is `before`.
pub fn split_on_event(stream: &MatchEventStream, team: &TeamId, event: &KeyEvent) -> KeyEventSplit {
    let (before_window, after_window) = split_windows(event);
    let label = |side: &str| format!("{}/{}", event.kind.slug(), side);
    let before = build_passmap(
        team.clone(),
        label("before"),
        &successful_passes(stream, team, &before_window).passes,
    );
    let after = build_passmap(
        team.clone(),
        label("after"),
        &successful_passes(stream, team, &after_window).passes,
    );
    KeyEventSplit {
        team_id: team.clone(),
        event: event.clone(),
        role: event.role_of(team),
        before,
        after,
        before_window,
        after_window,
    }
}

/// Median of the arc weights; the mean of the middle pair for even counts.
pub fn median_weight(g: &Passmap) -> Option<f64> {
    let mut w: Vec<u32> = g.arcs.values().copied().collect();
    if w.is_empty() {
        return None;
    }
    w.sort_unstable();
    let n = w.len();
    Some(if n % 2 == 1 {
        f64::from(w[n / 2])
    } else {
        (f64::from(w[n / 2 - 1]) + f64::from(w[n / 2])) / 2.0
    })
}

/// Removes every arc whose weight is at most the median weight. Nodes stay,
/// possibly isolated. An arc-less graph is returned unchanged.
pub fn prune_median(g: &Passmap) -> Passmap {
    let Some(median) = median_weight(g) else {
        return g.clone();
    };
    g.map_weights(|w| if f64::from(w) > median { w } else { 0 })
}

pub const SHOT_ON_ID: &str = "SHOT_ON";
pub const SHOT_OFF_ID: &str = "SHOT_OFF";

/// A passmap with two sink nodes receiving arcs from shooters.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedPassmap {
    pub graph: Passmap,
    pub shot_on: usize,
    pub shot_off: usize,
}

impl AugmentedPassmap {
    pub fn is_synthetic(&self, i: usize) -> bool {
        i == self.shot_on || i == self.shot_off
    }

    /// Node indices of real players.
    pub fn player_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.graph.node_count()).filter(|&i| !self.is_synthetic(i))
    }
}

/// Adds `SHOT_ON` / `SHOT_OFF` sinks with shooter arcs weighted by shot counts.
///
/// Goals and saved shots are on target; everything else is off target.
pub fn augment_with_shots(
    g: &Passmap,
    stream: &MatchEventStream,
    team: &TeamId,
    window: &Window,
) -> AugmentedPassmap {
    let mut graph = g.clone();
    let shot_on = graph.add_node(PlayerId::from(SHOT_ON_ID));
    let shot_off = graph.add_node(PlayerId::from(SHOT_OFF_ID));
    for shot in shots(stream, team, window) {
        let shooter = graph.add_node(shot.shooter);
        let sink = if shot.outcome.on_target() { shot_on } else { shot_off };
        graph.add_arc_by_index(shooter, sink, 1);
    }
    AugmentedPassmap {
        graph,
        shot_on,
        shot_off,
    }
}
