use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{EventKind, MatchEventStream, MatchTime, ShotOutcome, SHOOTOUT_PERIOD};
use crate::TeamId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum KeyEventKind {
    HalfTime,
    FirstGoal,
    FirstDismissal,
}

impl KeyEventKind {
    pub const ALL: [KeyEventKind; 3] = [
        KeyEventKind::HalfTime,
        KeyEventKind::FirstGoal,
        KeyEventKind::FirstDismissal,
    ];

    /// Directory and CSV name.
    pub fn slug(self) -> &'static str {
        match self {
            KeyEventKind::HalfTime => "half_time",
            KeyEventKind::FirstGoal => "first_goal",
            KeyEventKind::FirstDismissal => "first_dismissal",
        }
    }
}

impl fmt::Display for KeyEventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for KeyEventKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        KeyEventKind::ALL
            .into_iter()
            .find(|k| k.slug() == s)
            .ok_or_else(|| format!("unknown key event `{s}`"))
    }
}

/// How a team relates to a key event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TeamRole {
    /// Scored the first goal, or had the first player sent off.
    Acting,
    Opposing,
    /// Half time, or an event that never happened.
    Neutral,
}

impl TeamRole {
    pub fn slug(self) -> &'static str {
        match self {
            TeamRole::Acting => "acting",
            TeamRole::Opposing => "opposing",
            TeamRole::Neutral => "neutral",
        }
    }
}

impl fmt::Display for TeamRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for TeamRole {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "acting" => Ok(TeamRole::Acting),
            "opposing" => Ok(TeamRole::Opposing),
            "neutral" => Ok(TeamRole::Neutral),
            _ => Err(format!("unknown team role `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyEvent {
    pub kind: KeyEventKind,
    /// When it happened; `None` if it never did.
    pub time: Option<MatchTime>,
    /// Team that scored or whose player was dismissed.
    pub acting_team_id: Option<TeamId>,
}

impl KeyEvent {
    pub fn occurred(&self) -> bool {
        self.time.is_some()
    }

    /// First instant that belongs to the `after` window.
    ///
    /// Half time splits at the start of period 2 so the whole first half,
    /// stoppage time included, stays `before`.
    pub fn split_point(&self) -> Option<MatchTime> {
        match self.kind {
            KeyEventKind::HalfTime => Some(MatchTime::new(2, 0.0)),
            _ => self.time,
        }
    }

    pub fn role_of(&self, team: &TeamId) -> TeamRole {
        match &self.acting_team_id {
            Some(acting) if acting == team => TeamRole::Acting,
            Some(_) => TeamRole::Opposing,
            None => TeamRole::Neutral,
        }
    }
}

/// Half time, first goal and first dismissal, in that order.
///
/// Own goals count for the benefiting team. Dismissals are red cards or second
/// yellows from fouls or bad behaviour. Shootout events are ignored. Equal
/// timestamps resolve in file order.
pub fn detect_key_events(stream: &MatchEventStream) -> [KeyEvent; 3] {
    let mut first_half_end: Option<f64> = None;
    let mut last_first_half: Option<f64> = None;
    let mut goal: Option<KeyEvent> = None;
    let mut dismissal: Option<KeyEvent> = None;

    for e in stream.events.iter().filter(|e| e.period < SHOOTOUT_PERIOD) {
        if e.period == 1 {
            last_first_half = Some(last_first_half.map_or(e.clock, |c: f64| c.max(e.clock)));
            if e.kind == EventKind::HalfEnd && first_half_end.is_none() {
                first_half_end = Some(e.clock);
            }
        }
        if goal.is_none() {
            let scorer = match (e.kind, e.shot) {
                (EventKind::Shot, Some(ShotOutcome::Goal)) => e.team_id.clone(),
                (EventKind::OwnGoalAgainst, _) => e
                    .team_id
                    .as_ref()
                    .and_then(|t| stream.opponent_of(t))
                    .cloned(),
                _ => None,
            };
            if e.kind == EventKind::OwnGoalAgainst || scorer.is_some() {
                goal = Some(KeyEvent {
                    kind: KeyEventKind::FirstGoal,
                    time: Some(e.time()),
                    acting_team_id: scorer,
                });
            }
        }
        if dismissal.is_none()
            && matches!(e.kind, EventKind::FoulCommitted | EventKind::BadBehaviour)
            && e.card.is_some_and(|c| c.dismisses())
        {
            dismissal = Some(KeyEvent {
                kind: KeyEventKind::FirstDismissal,
                time: Some(e.time()),
                acting_team_id: e.team_id.clone(),
            });
        }
    }

    let half_time = KeyEvent {
        kind: KeyEventKind::HalfTime,
        time: Some(MatchTime::new(
            1,
            first_half_end.or(last_first_half).unwrap_or(0.0),
        )),
        acting_team_id: None,
    };
    let absent = |kind| KeyEvent {
        kind,
        time: None,
        acting_team_id: None,
    };
    [
        half_time,
        goal.unwrap_or_else(|| absent(KeyEventKind::FirstGoal)),
        dismissal.unwrap_or_else(|| absent(KeyEventKind::FirstDismissal)),
    ]
}
