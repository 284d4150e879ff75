//! Typed match event streams.
//!
//! [`parse_match`] reads a StatsBomb open-data event file. The remaining
//! functions are pure queries over the parsed [`MatchEventStream`]: key event
//! detection, possession time inside a window and the selection of completed
//! passes and shots that feed the passmaps.
//!
//! Time is a [`MatchTime`]: the period plus seconds since that period started.
//! Penalty shootouts (period 5) never fall inside a [`Window`].

mod key_events;
mod parse;
mod possession;
mod selection;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{PlayerId, TeamId};

pub use key_events::{detect_key_events, KeyEvent, KeyEventKind, TeamRole};
pub use parse::{parse_match, parse_match_file};
pub use possession::{possession_stints, possession_time, PossessionStint};
pub use selection::{shots, successful_passes, PassRecord, PassSelection, ShotRecord};

/// Period number of the penalty shootout.
pub const SHOOTOUT_PERIOD: u8 = 5;

/// A point in match time: period and seconds since the period started.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MatchTime {
    pub period: u8,
    pub clock: f64,
}

impl MatchTime {
    pub const fn new(period: u8, clock: f64) -> Self {
        Self { period, clock }
    }

    /// Kick-off of the first half.
    pub const KICK_OFF: MatchTime = MatchTime::new(1, 0.0);

    /// Start of the penalty shootout; everything from here on is outside every window.
    pub const SHOOTOUT: MatchTime = MatchTime::new(SHOOTOUT_PERIOD, 0.0);
}

impl PartialEq for MatchTime {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for MatchTime {}

impl PartialOrd for MatchTime {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MatchTime {
    fn cmp(&self, other: &Self) -> Ordering {
        self.period
            .cmp(&other.period)
            .then_with(|| self.clock.total_cmp(&other.clock))
    }
}

impl fmt::Display for MatchTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{} {:.3}s", self.period, self.clock)
    }
}

/// Half-open time interval `[start, end)`; shootout events are always outside.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub start: MatchTime,
    pub end: MatchTime,
}

impl Window {
    pub fn new(start: MatchTime, end: MatchTime) -> Self {
        Self { start, end }
    }

    /// Regulation time plus extra time.
    pub fn whole_match() -> Self {
        Self::new(MatchTime::KICK_OFF, MatchTime::SHOOTOUT)
    }

    pub fn before(t: MatchTime) -> Self {
        Self::new(MatchTime::KICK_OFF, t)
    }

    pub fn after(t: MatchTime) -> Self {
        Self::new(t, MatchTime::SHOOTOUT)
    }

    pub fn is_empty(&self) -> bool {
        self.start >= self.end
    }

    pub fn contains(&self, t: MatchTime) -> bool {
        t.period < SHOOTOUT_PERIOD && self.start <= t && t < self.end
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EventKind {
    Pass,
    Shot,
    FoulCommitted,
    BadBehaviour,
    OwnGoalAgainst,
    HalfStart,
    HalfEnd,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PassOutcome {
    Complete,
    Incomplete,
    Out,
    Offside,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PassDetail {
    pub recipient_id: Option<PlayerId>,
    pub outcome: PassOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShotOutcome {
    Goal,
    OnTargetSaved,
    OffTarget,
    Blocked,
    Other,
}

impl ShotOutcome {
    pub fn on_target(self) -> bool {
        matches!(self, ShotOutcome::Goal | ShotOutcome::OnTargetSaved)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Card {
    Yellow,
    SecondYellow,
    Red,
}

impl Card {
    /// Whether the card removes the player from the pitch.
    pub fn dismisses(self) -> bool {
        matches!(self, Card::SecondYellow | Card::Red)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawEvent {
    pub event_id: String,
    /// Position in the provider file.
    pub file_index: usize,
    pub period: u8,
    pub clock: f64,
    pub kind: EventKind,
    pub team_id: Option<TeamId>,
    pub player_id: Option<PlayerId>,
    pub possession_index: Option<u32>,
    pub possession_team_id: Option<TeamId>,
    pub pass: Option<PassDetail>,
    pub shot: Option<ShotOutcome>,
    pub card: Option<Card>,
}

impl RawEvent {
    pub fn time(&self) -> MatchTime {
        MatchTime::new(self.period, self.clock)
    }
}

/// One player of a starting eleven, as listed by the provider.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineupEntry {
    pub player_id: PlayerId,
    pub name: Option<String>,
    pub position: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StartingLineup {
    pub team_id: TeamId,
    pub formation: Option<String>,
    pub players: Vec<LineupEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchEventStream {
    pub match_id: String,
    pub home_team_id: Option<TeamId>,
    pub away_team_id: Option<TeamId>,
    /// Ordered by `(period, clock)`, ties kept in file order.
    pub events: Vec<RawEvent>,
    pub player_names: BTreeMap<PlayerId, String>,
    pub team_names: BTreeMap<TeamId, String>,
    pub lineups: Vec<StartingLineup>,
}

impl MatchEventStream {
    pub fn teams(&self) -> impl Iterator<Item = &TeamId> {
        self.home_team_id.iter().chain(self.away_team_id.iter())
    }

    /// The other team of the match, if both are known.
    pub fn opponent_of(&self, team: &TeamId) -> Option<&TeamId> {
        match (&self.home_team_id, &self.away_team_id) {
            (Some(h), Some(a)) if h == team => Some(a),
            (Some(h), Some(a)) if a == team => Some(h),
            _ => None,
        }
    }

    pub fn lineup(&self, team: &TeamId) -> Option<&StartingLineup> {
        self.lineups.iter().find(|l| &l.team_id == team)
    }

    /// Sum over periods 1-4 of the span between the first and last event clock.
    pub fn played_time(&self) -> f64 {
        let mut spans: BTreeMap<u8, (f64, f64)> = BTreeMap::new();
        for e in self.events.iter().filter(|e| e.period < SHOOTOUT_PERIOD) {
            let span = spans.entry(e.period).or_insert((e.clock, e.clock));
            span.0 = span.0.min(e.clock);
            span.1 = span.1.max(e.clock);
        }
        spans.values().map(|(lo, hi)| hi - lo).sum()
    }

    pub fn count_kind(&self, kind: EventKind) -> usize {
        self.events.iter().filter(|e| e.kind == kind).count()
    }
}
