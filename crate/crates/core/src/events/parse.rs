use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use super::{
    Card, EventKind, LineupEntry, MatchEventStream, PassDetail, PassOutcome, RawEvent,
    ShotOutcome, StartingLineup,
};
use crate::error::{Error, Result};
use crate::{PlayerId, TeamId};

/// Provider ids arrive as JSON numbers; strings are accepted too.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum JsonId {
    Num(u64),
    Text(String),
}

#[derive(Debug, Deserialize)]
struct Ref {
    id: JsonId,
    name: Option<String>,
}

#[derive(Debug, Deserialize)]
struct Named {
    name: String,
}

#[derive(Debug, Deserialize)]
struct JsonPass {
    recipient: Option<Ref>,
    outcome: Option<Named>,
}

#[derive(Debug, Deserialize)]
struct JsonShot {
    outcome: Option<Named>,
}

#[derive(Debug, Deserialize)]
struct JsonCarded {
    card: Option<Named>,
}

#[derive(Debug, Deserialize)]
struct JsonLineupSlot {
    player: Ref,
    position: Option<Named>,
}

#[derive(Debug, Deserialize)]
struct JsonTactics {
    formation: Option<Value>,
    #[serde(default)]
    lineup: Vec<JsonLineupSlot>,
}

#[derive(Debug, Deserialize)]
struct JsonEvent {
    id: Option<String>,
    period: Option<u8>,
    timestamp: Option<String>,
    minute: Option<u32>,
    second: Option<u32>,
    #[serde(rename = "type")]
    kind: Option<Named>,
    team: Option<Ref>,
    player: Option<Ref>,
    possession: Option<u32>,
    possession_team: Option<Ref>,
    pass: Option<JsonPass>,
    shot: Option<JsonShot>,
    foul_committed: Option<JsonCarded>,
    bad_behaviour: Option<JsonCarded>,
    tactics: Option<JsonTactics>,
}

fn event_kind(name: &str) -> EventKind {
    match name {
        "Pass" => EventKind::Pass,
        "Shot" => EventKind::Shot,
        "Foul Committed" => EventKind::FoulCommitted,
        "Bad Behaviour" => EventKind::BadBehaviour,
        "Own Goal Against" => EventKind::OwnGoalAgainst,
        "Half Start" => EventKind::HalfStart,
        "Half End" => EventKind::HalfEnd,
        _ => EventKind::Other,
    }
}

fn pass_outcome(outcome: Option<&Named>) -> PassOutcome {
    // A missing outcome marks a completed pass.
    match outcome.map(|n| n.name.as_str()) {
        None => PassOutcome::Complete,
        Some("Incomplete") => PassOutcome::Incomplete,
        Some("Out") => PassOutcome::Out,
        Some("Pass Offside") | Some("Offside") => PassOutcome::Offside,
        Some(_) => PassOutcome::Unknown,
    }
}

fn shot_outcome(outcome: Option<&Named>) -> ShotOutcome {
    match outcome.map(|n| n.name.as_str()) {
        Some("Goal") => ShotOutcome::Goal,
        Some("Saved") | Some("Saved To Post") | Some("Saved to Post") => {
            ShotOutcome::OnTargetSaved
        }
        Some("Off T") | Some("Wayward") | Some("Post") | Some("Saved Off Target")
        | Some("Saved Off T") => ShotOutcome::OffTarget,
        Some("Blocked") => ShotOutcome::Blocked,
        _ => ShotOutcome::Other,
    }
}

fn card(carded: Option<&JsonCarded>) -> Option<Card> {
    match carded?.card.as_ref()?.name.as_str() {
        "Yellow Card" => Some(Card::Yellow),
        "Second Yellow" => Some(Card::SecondYellow),
        "Red Card" => Some(Card::Red),
        _ => None,
    }
}

/// Parses `HH:MM:SS.fff` into seconds.
fn parse_timestamp(ts: &str) -> Option<f64> {
    let mut parts = ts.split(':');
    let h: f64 = parts.next()?.trim().parse().ok()?;
    let m: f64 = parts.next()?.trim().parse().ok()?;
    let s: f64 = parts.next()?.trim().parse().ok()?;
    if parts.next().is_some() || !(h >= 0.0 && m >= 0.0 && s >= 0.0) {
        return None;
    }
    Some(h * 3600.0 + m * 60.0 + s)
}

/// Match minute at which each period starts.
fn period_start_minute(period: u8) -> u32 {
    match period {
        0 | 1 => 0,
        2 => 45,
        3 => 90,
        4 => 105,
        _ => 120,
    }
}

/// Seconds since the period started: the provider `timestamp` when present,
/// otherwise the match minute and second shifted by the period's start.
fn period_clock(ev: &JsonEvent, period: u8) -> Option<f64> {
    if let Some(ts) = ev.timestamp.as_deref().and_then(parse_timestamp) {
        return Some(ts);
    }
    let (minute, second) = (ev.minute?, ev.second?);
    let total = minute * 60 + second;
    Some(total.saturating_sub(period_start_minute(period) * 60) as f64)
}

fn byte_offset(bytes: &[u8], line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let line_start = bytes
        .split_inclusive(|&b| b == b'\n')
        .take(line - 1)
        .map(<[u8]>::len)
        .sum::<usize>();
    (line_start + column.saturating_sub(1)).min(bytes.len())
}

/// Parses a StatsBomb event file (a JSON array of event objects).
///
/// Event kinds outside the handled set become [`EventKind::Other`]. The
/// returned stream is stably sorted by `(period, clock)`. The match id is left
/// empty; [`parse_match_file`] fills it from the file name.
pub fn parse_match(bytes: &[u8]) -> Result<MatchEventStream> {
    let values: Vec<Value> = serde_json::from_slice(bytes).map_err(|e| Error::MalformedEvents {
        offset: byte_offset(bytes, e.line(), e.column()),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;

    let mut events = Vec::with_capacity(values.len());
    let mut player_names = BTreeMap::new();
    let mut team_names = BTreeMap::new();
    let mut lineups = Vec::new();
    let mut team_order: Vec<TeamId> = Vec::new();
    let mut last_time = (1u8, 0.0f64);

    for (index, value) in values.into_iter().enumerate() {
        let raw: JsonEvent = serde_json::from_value(value).map_err(|e| Error::InvalidEvent {
            index,
            event_id: String::new(),
            message: e.to_string(),
        })?;
        let event_id = raw.id.clone().unwrap_or_default();
        let invalid = |message: &str| Error::InvalidEvent {
            index,
            event_id: event_id.clone(),
            message: message.to_owned(),
        };

        let kind = raw
            .kind
            .as_ref()
            .map(|k| event_kind(&k.name))
            .unwrap_or(EventKind::Other);
        let is_other = kind == EventKind::Other;

        let period = match raw.period {
            Some(p) => p,
            None if is_other => last_time.0,
            None => return Err(invalid("missing `period`")),
        };
        let clock = match period_clock(&raw, period) {
            Some(c) => c,
            None if is_other => last_time.1,
            None => return Err(invalid("missing `timestamp` or `minute`/`second`")),
        };
        last_time = (period, clock);

        let team_id = raw.team.as_ref().map(|t| TeamId::new(clone_id(&t.id)));
        if team_id.is_none() && !is_other {
            return Err(invalid("missing `team`"));
        }
        if let (Some(id), Some(team)) = (&team_id, &raw.team) {
            if let Some(name) = &team.name {
                team_names.entry(id.clone()).or_insert_with(|| name.clone());
            }
        }

        let player_id = raw.player.as_ref().map(|p| PlayerId::new(clone_id(&p.id)));
        if let (Some(id), Some(p)) = (&player_id, &raw.player) {
            if let Some(name) = &p.name {
                player_names.entry(id.clone()).or_insert_with(|| name.clone());
            }
        }

        let pass = match (kind, &raw.pass) {
            (EventKind::Pass, None) => return Err(invalid("pass event without `pass` object")),
            (_, Some(p)) => Some(PassDetail {
                recipient_id: p.recipient.as_ref().map(|r| PlayerId::new(clone_id(&r.id))),
                outcome: pass_outcome(p.outcome.as_ref()),
            }),
            _ => None,
        };
        if let Some(JsonPass {
            recipient: Some(r), ..
        }) = &raw.pass
        {
            if let Some(name) = &r.name {
                player_names
                    .entry(PlayerId::new(clone_id(&r.id)))
                    .or_insert_with(|| name.clone());
            }
        }

        let shot = match (kind, &raw.shot) {
            (EventKind::Shot, None) => return Err(invalid("shot event without `shot` object")),
            (_, Some(s)) => Some(shot_outcome(s.outcome.as_ref())),
            _ => None,
        };

        let card = card(raw.foul_committed.as_ref()).or_else(|| card(raw.bad_behaviour.as_ref()));

        if let Some(team) = &team_id {
            if raw.kind.as_ref().is_some_and(|k| k.name == "Starting XI") {
                if let Some(tactics) = &raw.tactics {
                    lineups.push(starting_lineup(team.clone(), tactics));
                }
            }
            if !is_other && !team_order.contains(team) {
                team_order.push(team.clone());
            }
        }

        events.push(RawEvent {
            event_id,
            file_index: index,
            period,
            clock,
            kind,
            team_id,
            player_id,
            possession_index: raw.possession,
            possession_team_id: raw.possession_team.as_ref().map(|t| TeamId::new(clone_id(&t.id))),
            pass,
            shot,
            card,
        });
    }

    // Stable: equal times keep file order.
    events.sort_by(|a, b| a.time().cmp(&b.time()));

    // Lineups are listed home team first; otherwise fall back to first appearance.
    let mut teams: Vec<TeamId> = lineups.iter().map(|l| l.team_id.clone()).collect();
    let any_team = events.iter().filter_map(|e| e.team_id.clone());
    for t in team_order.into_iter().chain(any_team) {
        if !teams.contains(&t) {
            teams.push(t);
        }
    }

    Ok(MatchEventStream {
        match_id: String::new(),
        home_team_id: teams.first().cloned(),
        away_team_id: teams.get(1).cloned(),
        events,
        player_names,
        team_names,
        lineups,
    })
}

fn clone_id(id: &JsonId) -> String {
    match id {
        JsonId::Num(n) => n.to_string(),
        JsonId::Text(s) => s.clone(),
    }
}

fn starting_lineup(team_id: TeamId, tactics: &JsonTactics) -> StartingLineup {
    let formation = tactics.formation.as_ref().map(|f| match f {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    });
    let players = tactics
        .lineup
        .iter()
        .map(|slot| LineupEntry {
            player_id: PlayerId::new(clone_id(&slot.player.id)),
            name: slot.player.name.clone(),
            position: slot.position.as_ref().map(|p| p.name.clone()),
        })
        .collect();
    StartingLineup {
        team_id,
        formation,
        players,
    }
}

/// Reads and parses an event file; the match id becomes the file stem.
pub fn parse_match_file(path: impl AsRef<Path>) -> Result<MatchEventStream> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let mut stream = parse_match(&bytes)?;
    stream.match_id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(stream)
}
