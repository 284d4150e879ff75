use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::analysis::read_profiles;
use super::{read_csv, tables_dir, write_csv, write_text, CentralityRow, CommunityRow, IntensityRow};
use crate::error::Result;
use crate::fragments::atlas;
use crate::stats;

/// Distribution of one delta over the corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaSummary {
    pub event_kind: String,
    /// `acting`, `opposing`, `neutral`, or `all`.
    pub team_role: String,
    pub measure: String,
    pub count: usize,
    pub not_applicable: usize,
    pub mean: Option<f64>,
    pub median: Option<f64>,
    pub q1: Option<f64>,
    pub q3: Option<f64>,
}

const DELTA_HEADER: [&str; 9] = [
    "event_kind",
    "team_role",
    "measure",
    "count",
    "not_applicable",
    "mean",
    "median",
    "q1",
    "q3",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotifSummary {
    pub motif: usize,
    pub name: String,
    /// Whole-match networks with a significance profile.
    pub networks: usize,
    pub median_z: Option<f64>,
    pub mean_z: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunitySummary {
    pub method: String,
    pub networks: usize,
    pub mean_communities: Option<f64>,
    pub mean_nmi_lines: Option<f64>,
    pub mean_nmi_lines_no_gk: Option<f64>,
    /// Share of networks where the method's modularity is at least that of the playing lines.
    pub beats_lines: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub matches: usize,
    pub deltas: Vec<DeltaSummary>,
    pub motifs: Vec<MotifSummary>,
    pub communities: Vec<CommunitySummary>,
}

impl AggregateReport {
    pub fn delta(&self, event_kind: &str, team_role: &str, measure: &str) -> Option<&DeltaSummary> {
        self.deltas
            .iter()
            .find(|d| d.event_kind == event_kind && d.team_role == team_role && d.measure == measure)
    }
}

fn summarise(key: &(String, String, String), values: &[Option<f64>]) -> DeltaSummary {
    let mut xs: Vec<f64> = values.iter().flatten().copied().collect();
    xs.sort_by(f64::total_cmp);
    DeltaSummary {
        event_kind: key.0.clone(),
        team_role: key.1.clone(),
        measure: key.2.clone(),
        count: xs.len(),
        not_applicable: values.len() - xs.len(),
        mean: stats::mean(&xs),
        median: stats::median(&xs),
        q1: stats::quantile(&xs, 0.25),
        q3: stats::quantile(&xs, 0.75),
    }
}

fn sorted_mean(mut xs: Vec<f64>) -> Option<f64> {
    xs.sort_by(f64::total_cmp);
    stats::mean(&xs)
}

fn read_if_exists<T: serde::de::DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    if path.is_file() {
        read_csv(path)
    } else {
        Ok(Vec::new())
    }
}

/// Summarises the tables under `out/tables`. Missing tables count as empty.
pub fn aggregate(out: &Path) -> Result<AggregateReport> {
    let dir = tables_dir(out);
    let centrality: Vec<CentralityRow> = read_if_exists(&dir.join("centrality.csv"))?;
    let intensity: Vec<IntensityRow> = read_if_exists(&dir.join("intensity.csv"))?;
    let communities: Vec<CommunityRow> = read_if_exists(&dir.join("communities.csv"))?;
    let zscores = if dir.join("zscores.csv").is_file() {
        read_profiles(&dir.join("zscores.csv"), "z")?
    } else {
        Vec::new()
    };

    let mut matches = BTreeSet::new();
    let mut groups: BTreeMap<(String, String, String), Vec<Option<f64>>> = BTreeMap::new();
    let mut push = |event: &str, role: &str, measure: &str, v: Option<f64>| {
        for r in [role, "all"] {
            groups
                .entry((event.to_string(), r.to_string(), measure.to_string()))
                .or_default()
                .push(v);
        }
    };
    for r in &centrality {
        matches.insert(r.match_id.clone());
        push(&r.event_kind, &r.team_role, &r.measure, r.delta);
    }
    for r in &intensity {
        matches.insert(r.match_id.clone());
        push(&r.event_kind, &r.team_role, &r.measure, r.delta);
    }
    let deltas = groups.iter().map(|(k, v)| summarise(k, v)).collect();

    let whole: Vec<_> = zscores.iter().filter(|r| r.window == "whole").collect();
    let motifs = atlas()
        .graphlets
        .iter()
        .map(|g| {
            let mut zs: Vec<f64> = whole.iter().map(|r| r.values[g.index]).collect();
            zs.sort_by(f64::total_cmp);
            MotifSummary {
                motif: g.index,
                name: g.name.to_string(),
                networks: zs.len(),
                median_z: stats::median(&zs),
                mean_z: stats::mean(&zs),
            }
        })
        .collect();

    let mut by_method: BTreeMap<&str, Vec<&CommunityRow>> = BTreeMap::new();
    for r in &communities {
        matches.insert(r.match_id.clone());
        by_method.entry(&r.method).or_default().push(r);
    }
    let communities = by_method
        .into_iter()
        .map(|(method, rows)| {
            let with_lines: Vec<_> = rows.iter().filter_map(|r| Some((r.modularity, r.lines_modularity?))).collect();
            CommunitySummary {
                method: method.to_string(),
                networks: rows.len(),
                mean_communities: sorted_mean(rows.iter().map(|r| r.community_count as f64).collect()),
                mean_nmi_lines: sorted_mean(rows.iter().filter_map(|r| r.nmi_lines).collect()),
                mean_nmi_lines_no_gk: sorted_mean(rows.iter().filter_map(|r| r.nmi_lines_no_gk).collect()),
                beats_lines: (!with_lines.is_empty()).then(|| {
                    with_lines.iter().filter(|(m, l)| m >= l).count() as f64 / with_lines.len() as f64
                }),
            }
        })
        .collect();

    Ok(AggregateReport {
        matches: matches.len(),
        deltas,
        motifs,
        communities,
    })
}

/// Writes `report.json` and `report.csv` under `out`.
pub fn run_aggregate(out: &Path) -> Result<AggregateReport> {
    let report = aggregate(out)?;
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    write_text(&out.join("report.json"), &json)?;
    write_csv(&out.join("report.csv"), &report.deltas, &DELTA_HEADER)?;
    Ok(report)
}
