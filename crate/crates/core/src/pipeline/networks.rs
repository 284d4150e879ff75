use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{tables_dir, write_csv, write_log, CorpusManifest, MatchEntry, Skip};
use crate::community::{parse_formation, FormationGroundTruth};
use crate::error::{Error, Result};
use crate::events::{
    detect_key_events, parse_match_file, successful_passes, EventKind, KeyEvent, KeyEventKind,
    MatchEventStream, Window,
};
use crate::passmap::{
    augment_with_shots, build_passmap, export_pajek, split_on_event, write_sidecar,
    KeyEventSplit, NetworkMetadata, NodeMetadata, Passmap, PositionLine,
};
use crate::{PlayerId, TeamId};

/// A parsed match with its key events and per-team playing lines.
#[derive(Debug, Clone)]
pub struct LoadedMatch {
    pub entry: MatchEntry,
    pub stream: MatchEventStream,
    pub key_events: [KeyEvent; 3],
    pub formations: BTreeMap<TeamId, FormationGroundTruth>,
    /// Lines came from a formation file rather than the starting lineups.
    pub formation_supplied: bool,
}

fn team_players(stream: &MatchEventStream, team: &TeamId) -> BTreeSet<PlayerId> {
    let mut players: BTreeSet<PlayerId> = stream
        .events
        .iter()
        .filter(|e| e.team_id.as_ref() == Some(team))
        .filter_map(|e| e.player_id.clone())
        .collect();
    if let Some(l) = stream.lineup(team) {
        players.extend(l.players.iter().map(|p| p.player_id.clone()));
    }
    players
}

pub fn load_match(entry: &MatchEntry) -> Result<LoadedMatch> {
    let mut stream = parse_match_file(&entry.events)?;
    stream.match_id = entry.match_id.clone();
    let key_events = detect_key_events(&stream);
    let teams: Vec<TeamId> = stream.teams().cloned().collect();

    let mut formations = BTreeMap::new();
    if let Some(path) = &entry.formation {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let all = parse_formation(TeamId::default(), &text)?;
        for team in &teams {
            let players = team_players(&stream, team);
            let entries = all
                .entries
                .iter()
                .filter(|e| players.contains(&e.player_id))
                .cloned()
                .collect();
            formations.insert(team.clone(), FormationGroundTruth::new(team.clone(), entries)?);
        }
    } else {
        for team in &teams {
            if let Some(lineup) = stream.lineup(team) {
                formations.insert(team.clone(), FormationGroundTruth::from_lineup(lineup));
            }
        }
    }
    Ok(LoadedMatch {
        entry: entry.clone(),
        stream,
        key_events,
        formations,
        formation_supplied: entry.formation.is_some(),
    })
}

impl LoadedMatch {
    pub fn match_id(&self) -> &str {
        &self.entry.match_id
    }

    pub fn teams(&self) -> Vec<TeamId> {
        self.stream.teams().cloned().collect()
    }

    fn lines(&self, team: &TeamId) -> BTreeMap<PlayerId, PositionLine> {
        self.formations
            .get(team)
            .map(|gt| {
                gt.entries
                    .iter()
                    .map(|e| (e.player_id.clone(), e.line))
                    .collect()
            })
            .unwrap_or_default()
    }

    /// Names and lines on every node; supplied formation players join every
    /// network whose window is non-empty.
    fn finish(&self, g: &mut Passmap, window: &Window) {
        if self.formation_supplied && !window.is_empty() {
            if let Some(gt) = self.formations.get(&g.team_id) {
                for e in &gt.entries {
                    g.add_node(e.player_id.clone());
                }
            }
        }
        let lines = self.lines(&g.team_id);
        g.annotate(&self.stream.player_names, &lines);
    }

    /// The three before/after splits of one team.
    pub fn splits(&self, team: &TeamId) -> Vec<KeyEventSplit> {
        self.key_events
            .iter()
            .map(|event| {
                let mut split = split_on_event(&self.stream, team, event);
                self.finish(&mut split.before, &split.before_window);
                self.finish(&mut split.after, &split.after_window);
                split
            })
            .collect()
    }

    /// Whole-match passmap of one team, labelled `whole`.
    pub fn whole(&self, team: &TeamId) -> Passmap {
        let window = Window::whole_match();
        let mut g = build_passmap(
            team.clone(),
            "whole",
            &successful_passes(&self.stream, team, &window).passes,
        );
        self.finish(&mut g, &window);
        g
    }
}

pub fn network_dir(out: &Path, match_id: &str, team: &TeamId, event: KeyEventKind) -> PathBuf {
    out.join("networks")
        .join(match_id)
        .join(team.as_str())
        .join(event.slug())
}

fn metadata(
    m: &LoadedMatch,
    split: &KeyEventSplit,
    side: &str,
    window: &Window,
    g: &Passmap,
    variant: &str,
) -> NetworkMetadata {
    NetworkMetadata {
        match_id: m.match_id().to_string(),
        team_id: split.team_id.clone(),
        team_name: m.stream.team_names.get(&split.team_id).cloned(),
        label: g.label.clone(),
        split: split.event.kind,
        side: side.to_string(),
        event_occurred: split.event.occurred(),
        event_time: split.event.time,
        team_role: split.role,
        window_start: window.start,
        window_end: window.end,
        variant: variant.to_string(),
        node_count: g.node_count(),
        arc_count: g.arc_count(),
        total_weight: g.total_weight(),
        nodes: g
            .nodes()
            .iter()
            .map(|n| NodeMetadata {
                id: n.id.clone(),
                name: n.name.clone(),
                line: n.line,
            })
            .collect(),
    }
}

/// Writes the player and flow networks of both teams; returns the player-network paths.
pub fn write_match_networks(m: &LoadedMatch, out: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for team in m.teams() {
        for split in m.splits(&team) {
            let dir = network_dir(out, m.match_id(), &team, split.event.kind);
            std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
            for (side, g, window) in [
                ("before", &split.before, &split.before_window),
                ("after", &split.after, &split.after_window),
            ] {
                let net = dir.join(format!("{side}.net"));
                export_pajek(g, &net)?;
                write_sidecar(&metadata(m, &split, side, window, g, "players"), net.with_extension("json"))?;
                written.push(net);

                let flow = augment_with_shots(g, &m.stream, &team, window).graph;
                let flow_net = dir.join(format!("{side}.flow.net"));
                export_pajek(&flow, &flow_net)?;
                write_sidecar(
                    &metadata(m, &split, side, window, &flow, "flow"),
                    flow_net.with_extension("json"),
                )?;
            }
        }
    }
    Ok(written)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkRun {
    pub matches: usize,
    pub written: Vec<PathBuf>,
    pub skipped: Vec<Skip>,
    pub log: PathBuf,
}

/// Writes every match's networks under `out/networks`. A match that fails to
/// load is logged and skipped.
pub fn run_networks(manifest: &CorpusManifest, out: &Path) -> Result<NetworkRun> {
    let entries = manifest.sorted();
    let results: Vec<(String, Result<Vec<PathBuf>>)> = entries
        .par_iter()
        .map(|e| {
            let r = load_match(e).and_then(|m| write_match_networks(&m, out));
            (e.match_id.clone(), r)
        })
        .collect();

    let mut written = Vec::new();
    let mut skipped = Vec::new();
    let mut log = vec![format!("matches {}", entries.len())];
    for (match_id, r) in results {
        match r {
            Ok(paths) => {
                log.push(format!("match {match_id}: {} player networks", paths.len()));
                written.extend(paths);
            }
            Err(e) => {
                log::warn!("skipping match {match_id}: {e}");
                log.push(format!("skip {match_id}: {e}"));
                skipped.push(Skip {
                    match_id,
                    reason: e.to_string(),
                });
            }
        }
    }
    log.push(format!("player networks {}", written.len()));
    let log = write_log(out, "networks", &log)?;
    Ok(NetworkRun {
        matches: entries.len(),
        written,
        skipped,
        log,
    })
}

/// Per-match summary written by `ingest`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IngestRow {
    pub match_id: String,
    pub home_team_id: Option<String>,
    pub home_team: Option<String>,
    pub away_team_id: Option<String>,
    pub away_team: Option<String>,
    pub events: usize,
    pub passes: usize,
    pub shots: usize,
    pub half_time: Option<String>,
    pub first_goal: Option<String>,
    pub first_goal_team_id: Option<String>,
    pub first_dismissal: Option<String>,
    pub first_dismissal_team_id: Option<String>,
}

const INGEST_HEADER: [&str; 13] = [
    "match_id",
    "home_team_id",
    "home_team",
    "away_team_id",
    "away_team",
    "events",
    "passes",
    "shots",
    "half_time",
    "first_goal",
    "first_goal_team_id",
    "first_dismissal",
    "first_dismissal_team_id",
];

fn ingest_row(m: &LoadedMatch) -> IngestRow {
    let s = &m.stream;
    let name = |t: &Option<TeamId>| t.as_ref().and_then(|t| s.team_names.get(t).cloned());
    let [half, goal, red] = &m.key_events;
    IngestRow {
        match_id: m.match_id().to_string(),
        home_team_id: s.home_team_id.as_ref().map(|t| t.to_string()),
        home_team: name(&s.home_team_id),
        away_team_id: s.away_team_id.as_ref().map(|t| t.to_string()),
        away_team: name(&s.away_team_id),
        events: s.events.len(),
        passes: s.count_kind(EventKind::Pass),
        shots: s.count_kind(EventKind::Shot),
        half_time: half.time.map(|t| t.to_string()),
        first_goal: goal.time.map(|t| t.to_string()),
        first_goal_team_id: goal.acting_team_id.as_ref().map(|t| t.to_string()),
        first_dismissal: red.time.map(|t| t.to_string()),
        first_dismissal_team_id: red.acting_team_id.as_ref().map(|t| t.to_string()),
    }
}

/// Parses every match and, with `out`, writes `tables/ingest.csv` and `logs/ingest.log`.
pub fn ingest(manifest: &CorpusManifest, out: Option<&Path>) -> Result<(Vec<IngestRow>, Vec<Skip>)> {
    let results: Vec<(String, Result<IngestRow>)> = manifest
        .sorted()
        .par_iter()
        .map(|e| (e.match_id.clone(), load_match(e).map(|m| ingest_row(&m))))
        .collect();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    let mut log = Vec::new();
    for (match_id, r) in results {
        match r {
            Ok(row) => {
                log.push(format!("match {match_id}: {} events", row.events));
                rows.push(row);
            }
            Err(e) => {
                log::warn!("skipping match {match_id}: {e}");
                log.push(format!("skip {match_id}: {e}"));
                skipped.push(Skip {
                    match_id,
                    reason: e.to_string(),
                });
            }
        }
    }
    if let Some(out) = out {
        write_csv(&tables_dir(out).join("ingest.csv"), &rows, &INGEST_HEADER)?;
        write_log(out, "ingest", &log)?;
    }
    Ok((rows, skipped))
}
