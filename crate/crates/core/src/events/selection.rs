use serde::{Deserialize, Serialize};

use super::{EventKind, MatchEventStream, MatchTime, PassOutcome, ShotOutcome, Window};
use crate::{PlayerId, TeamId};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PassRecord {
    pub passer: PlayerId,
    pub recipient: PlayerId,
    pub time: MatchTime,
}

/// Completed passes plus a tally of those that could not become arcs.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PassSelection {
    pub passes: Vec<PassRecord>,
    /// Complete passes with no recorded recipient or passer.
    pub missing_endpoint: usize,
    /// Complete passes whose passer and recipient coincide.
    pub self_passes: usize,
}

/// Completed passes by `team` inside `window`, in stream order.
pub fn successful_passes(stream: &MatchEventStream, team: &TeamId, window: &Window) -> PassSelection {
    let mut out = PassSelection::default();
    for e in &stream.events {
        if e.kind != EventKind::Pass || e.team_id.as_ref() != Some(team) || !window.contains(e.time()) {
            continue;
        }
        let Some(pass) = &e.pass else { continue };
        if pass.outcome != PassOutcome::Complete {
            continue;
        }
        match (&e.player_id, &pass.recipient_id) {
            (Some(p), Some(r)) if p == r => out.self_passes += 1,
            (Some(p), Some(r)) => out.passes.push(PassRecord {
                passer: p.clone(),
                recipient: r.clone(),
                time: e.time(),
            }),
            _ => out.missing_endpoint += 1,
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShotRecord {
    pub shooter: PlayerId,
    pub outcome: ShotOutcome,
    pub time: MatchTime,
}

/// Shots by `team` inside `window` that name a shooter.
pub fn shots(stream: &MatchEventStream, team: &TeamId, window: &Window) -> Vec<ShotRecord> {
    stream
        .events
        .iter()
        .filter(|e| e.kind == EventKind::Shot && e.team_id.as_ref() == Some(team))
        .filter(|e| window.contains(e.time()))
        .filter_map(|e| {
            Some(ShotRecord {
                shooter: e.player_id.clone()?,
                outcome: e.shot?,
                time: e.time(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::events::parse_match;

    fn pass(id: u32, clock: u32, team: u32, from: u32, to: Option<u32>, outcome: Option<&str>) -> String {
        let recipient = to.map(|t| format!(r#""recipient":{{"id":{t}}}"#)).unwrap_or_default();
        let outcome = outcome
            .map(|o| format!(r#""outcome":{{"name":"{o}"}}"#))
            .unwrap_or_default();
        let sep = if !recipient.is_empty() && !outcome.is_empty() { "," } else { "" };
        format!(
            r#"{{"id":"p{id}","period":1,"minute":0,"second":{clock},"type":{{"name":"Pass"}},
               "team":{{"id":{team}}},"player":{{"id":{from}}},"pass":{{{recipient}{sep}{outcome}}}}}"#
        )
    }

    fn stream(events: &[String]) -> MatchEventStream {
        parse_match(format!("[{}]", events.join(",")).as_bytes()).unwrap()
    }

    #[test]
    fn keeps_complete_passes_of_the_team() {
        let s = stream(&[
            pass(1, 1, 1, 10, Some(11), None),
            pass(2, 2, 1, 11, Some(12), None),
            pass(3, 3, 1, 12, Some(10), None),
            pass(4, 4, 1, 10, Some(11), Some("Incomplete")),
            pass(5, 5, 1, 10, None, Some("Out")),
            pass(6, 6, 2, 20, Some(21), None),
        ]);
        let sel = successful_passes(&s, &TeamId::from("1"), &Window::whole_match());
        assert_eq!(sel.passes.len(), 3);
        assert!(sel.passes.iter().all(|p| p.passer != p.recipient));
        assert_eq!(sel.missing_endpoint, 0);
    }

    #[test]
    fn complete_pass_without_recipient_is_tallied() {
        let s = stream(&[pass(1, 1, 1, 10, None, None), pass(2, 2, 1, 10, Some(10), None)]);
        let sel = successful_passes(&s, &TeamId::from("1"), &Window::whole_match());
        assert!(sel.passes.is_empty());
        assert_eq!(sel.missing_endpoint, 1);
        assert_eq!(sel.self_passes, 1);
    }

    #[test]
    fn window_before_first_event_is_empty() {
        let s = stream(&[pass(1, 10, 1, 10, Some(11), None)]);
        let w = Window::before(MatchTime::new(1, 5.0));
        assert!(successful_passes(&s, &TeamId::from("1"), &w).passes.is_empty());
    }
}
