//! Formation ground truth and the composition of detected communities.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{nmi, Method, Partition};
use crate::error::{Error, Result};
use crate::events::StartingLineup;
use crate::passmap::PositionLine;
use crate::{PlayerId, TeamId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormationEntry {
    pub player_id: PlayerId,
    pub name: String,
    pub line: PositionLine,
}

/// Starters of one team grouped by playing line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormationGroundTruth {
    pub team_id: TeamId,
    pub entries: Vec<FormationEntry>,
}

impl FormationGroundTruth {
    /// Fails when a player is listed twice.
    pub fn new(team_id: TeamId, entries: Vec<FormationEntry>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (i, e) in entries.iter().enumerate() {
            if !seen.insert(&e.player_id) {
                return Err(Error::Formation {
                    line: i + 1,
                    message: format!("player {} listed twice", e.player_id),
                });
            }
        }
        Ok(Self { team_id, entries })
    }

    /// Ground truth from a starting lineup; players whose position has no line are skipped.
    pub fn from_lineup(lineup: &StartingLineup) -> Self {
        let entries = lineup
            .players
            .iter()
            .filter_map(|p| {
                let line = PositionLine::from_position_name(p.position.as_deref()?)?;
                Some(FormationEntry {
                    player_id: p.player_id.clone(),
                    name: p.name.clone().unwrap_or_else(|| p.player_id.to_string()),
                    line,
                })
            })
            .collect();
        Self {
            team_id: lineup.team_id.clone(),
            entries,
        }
    }

    pub fn line_of(&self, id: &PlayerId) -> Option<PositionLine> {
        self.entries
            .iter()
            .find(|e| &e.player_id == id)
            .map(|e| e.line)
    }

    pub fn players_in(&self, line: PositionLine) -> Vec<PlayerId> {
        self.entries
            .iter()
            .filter(|e| e.line == line)
            .map(|e| e.player_id.clone())
            .collect()
    }

    /// Keeps the nodes this ground truth can label, optionally dropping the goalkeeper.
    pub fn comparable(&self, id: &PlayerId, include_gk: bool) -> bool {
        match self.line_of(id) {
            Some(PositionLine::GK) => include_gk,
            Some(_) => true,
            None => false,
        }
    }

    /// Partition of `nodes` into playing lines, over the nodes [`Self::comparable`] keeps.
    pub fn playing_lines_partition(&self, nodes: &[PlayerId], include_gk: bool) -> Partition {
        let (kept, labels): (Vec<_>, Vec<_>) = nodes
            .iter()
            .filter(|id| self.comparable(id, include_gk))
            .map(|id| (id.clone(), self.line_of(id).expect("comparable") as usize))
            .unzip();
        Partition::from_labels(Method::PlayingLines, kept, &labels)
    }

    /// NMI between `detected` and the playing lines over the players both cover.
    /// `None` when no player is comparable.
    pub fn lines_nmi(&self, detected: &Partition, include_gk: bool) -> Result<Option<f64>> {
        let restricted = detected.restrict(|id| self.comparable(id, include_gk));
        if restricted.is_empty() {
            return Ok(None);
        }
        let lines = self.playing_lines_partition(&restricted.nodes, include_gk);
        nmi(&restricted, &lines).map(Some)
    }
}

/// Parses `player_id,display_name,line` rows. A leading `player_id,...` header is skipped.
pub fn parse_formation(team_id: TeamId, text: &str) -> Result<FormationGroundTruth> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut entries = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != 3 {
            return Err(Error::Formation {
                line,
                message: format!("expected 3 fields, found {}", record.len()),
            });
        }
        if entries.is_empty() && record[0].eq_ignore_ascii_case("player_id") {
            continue;
        }
        let position: PositionLine = record[2].parse().map_err(|message| Error::Formation {
            line,
            message,
        })?;
        if record[0].is_empty() {
            return Err(Error::Formation {
                line,
                message: "empty player id".into(),
            });
        }
        entries.push((
            line,
            FormationEntry {
                player_id: record[0].into(),
                name: record[1].to_string(),
                line: position,
            },
        ));
    }
    let mut seen = BTreeSet::new();
    for (line, e) in &entries {
        if !seen.insert(e.player_id.clone()) {
            return Err(Error::Formation {
                line: *line,
                message: format!("player {} listed twice", e.player_id),
            });
        }
    }
    Ok(FormationGroundTruth {
        team_id,
        entries: entries.into_iter().map(|(_, e)| e).collect(),
    })
}

pub fn read_formation_file(team_id: TeamId, path: &Path) -> Result<FormationGroundTruth> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_formation(team_id, &text)
}

pub fn write_formation(gt: &FormationGroundTruth) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["player_id", "display_name", "line"])?;
    for e in &gt.entries {
        writer.write_record([e.player_id.as_str(), &e.name, e.line.as_str()])?;
    }
    let bytes = writer.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Member-slot counts per playing line.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineCounts {
    pub gk: usize,
    pub def: usize,
    pub mid: usize,
    pub att: usize,
    pub unknown: usize,
}

impl LineCounts {
    pub fn add(&mut self, line: Option<PositionLine>) {
        match line {
            Some(PositionLine::GK) => self.gk += 1,
            Some(PositionLine::DEF) => self.def += 1,
            Some(PositionLine::MID) => self.mid += 1,
            Some(PositionLine::ATT) => self.att += 1,
            None => self.unknown += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.gk + self.def + self.mid + self.att + self.unknown
    }

    /// Fractions in the order GK, DEF, MID, ATT, unknown.
    pub fn proportions(&self) -> [f64; 5] {
        let t = self.total().max(1) as f64;
        [self.gk, self.def, self.mid, self.att, self.unknown].map(|c| c as f64 / t)
    }
}

/// Playing-line composition of communities, keyed by community size.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CommunityProfile {
    pub rows: BTreeMap<usize, LineCounts>,
    /// Players found in a partition but in no ground truth.
    pub unknown_players: Vec<PlayerId>,
}

impl CommunityProfile {
    pub fn proportion(&self, size: usize, line: PositionLine) -> Option<f64> {
        let p = self.rows.get(&size)?.proportions();
        Some(p[line as usize])
    }

    /// Community size at which `line` makes up the largest share of slots.
    pub fn peak_size(&self, line: PositionLine) -> Option<usize> {
        self.rows
            .keys()
            .copied()
            .max_by(|&a, &b| {
                let pa = self.proportion(a, line).unwrap_or(0.0);
                let pb = self.proportion(b, line).unwrap_or(0.0);
                pa.total_cmp(&pb).then(b.cmp(&a))
            })
    }
}

pub fn position_community_profile(
    items: &[(&Partition, &FormationGroundTruth)],
) -> CommunityProfile {
    let mut profile = CommunityProfile::default();
    let mut unknown = BTreeSet::new();
    for (partition, gt) in items {
        for members in partition.communities() {
            let row = profile.rows.entry(members.len()).or_default();
            for id in &members {
                let line = gt.line_of(id);
                if line.is_none() {
                    unknown.insert(id.clone());
                }
                row.add(line);
            }
        }
    }
    profile.unknown_players = unknown.into_iter().collect();
    profile
}
