use serde::{Deserialize, Serialize};

use super::{MatchEventStream, MatchTime, Window, SHOOTOUT_PERIOD};
use crate::TeamId;

/// An uninterrupted run of events sharing one possession index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PossessionStint {
    pub team_id: TeamId,
    pub possession_index: u32,
    pub start: MatchTime,
    pub end: MatchTime,
}

impl PossessionStint {
    pub fn duration(&self) -> f64 {
        (self.end.clock - self.start.clock).max(0.0)
    }

    /// Duration of the part of the stint inside `window`.
    pub fn duration_within(&self, window: &Window) -> f64 {
        let lo = self.start.max(window.start);
        let hi = self.end.min(window.end);
        if lo >= hi {
            return 0.0;
        }
        // Both clipped ends lie inside the stint, hence inside its single period.
        hi.clock - lo.clock
    }
}

/// Groups consecutive events with the same possession index (and period) into stints.
///
/// Events without possession data and shootout events are skipped.
pub fn possession_stints(stream: &MatchEventStream) -> Vec<PossessionStint> {
    let mut stints: Vec<PossessionStint> = Vec::new();
    let mut current: Option<(u32, u8)> = None;
    for e in &stream.events {
        let (Some(idx), Some(team)) = (e.possession_index, e.possession_team_id.as_ref()) else {
            continue;
        };
        if e.period >= SHOOTOUT_PERIOD {
            continue;
        }
        let key = (idx, e.period);
        match stints.last_mut() {
            Some(last) if current == Some(key) && &last.team_id == team => {
                if e.time() > last.end {
                    last.end = e.time();
                }
            }
            _ => stints.push(PossessionStint {
                team_id: team.clone(),
                possession_index: idx,
                start: e.time(),
                end: e.time(),
            }),
        }
        current = Some(key);
    }
    stints
}

/// Seconds `team` held the ball inside `window`, summed over its stints.
///
/// Stints crossing a window edge are cut at the edge. Returns 0 for an empty
/// window or a team that never had the ball.
pub fn possession_time(stream: &MatchEventStream, team: &TeamId, window: &Window) -> f64 {
    if window.is_empty() {
        return 0.0;
    }
    possession_stints(stream)
        .iter()
        .filter(|s| &s.team_id == team)
        .map(|s| s.duration_within(window))
        .sum()
}
