//! Network intensity: completed passes per second of possession.

use serde::{Deserialize, Serialize};

use crate::events::{possession_time, KeyEventKind, MatchEventStream, TeamRole, Window};
use crate::passmap::{KeyEventSplit, Passmap};
use crate::TeamId;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntensityRecord {
    pub team_id: TeamId,
    pub label: String,
    /// Possession seconds in the window.
    pub possession: f64,
    pub total_weight: u64,
    /// `None` when the team never had the ball in the window.
    pub intensity: Option<f64>,
}

/// `total_weight / possession`; a window without possession has no intensity,
/// even when it holds passes.
pub fn intensity(g: &Passmap, possession: f64) -> IntensityRecord {
    let total_weight = g.total_weight();
    IntensityRecord {
        team_id: g.team_id.clone(),
        label: g.label.clone(),
        possession,
        total_weight,
        intensity: (possession > 0.0).then(|| total_weight as f64 / possession),
    }
}

pub fn window_intensity(stream: &MatchEventStream, g: &Passmap, window: &Window) -> IntensityRecord {
    intensity(g, possession_time(stream, &g.team_id, window))
}

/// Intensity before and after a key event for one team.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntensitySplit {
    pub match_id: String,
    pub team_id: TeamId,
    pub event_kind: KeyEventKind,
    pub team_role: TeamRole,
    pub before: IntensityRecord,
    pub after: IntensityRecord,
}

impl IntensitySplit {
    /// `after - before`, when both sides are defined.
    pub fn delta(&self) -> Option<f64> {
        Some(self.after.intensity? - self.before.intensity?)
    }
}

pub fn split_intensity(stream: &MatchEventStream, split: &KeyEventSplit) -> IntensitySplit {
    IntensitySplit {
        match_id: stream.match_id.clone(),
        team_id: split.team_id.clone(),
        event_kind: split.event.kind,
        team_role: split.role,
        before: window_intensity(stream, &split.before, &split.before_window),
        after: window_intensity(stream, &split.after, &split.after_window),
    }
}
