use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    network_seed, tables_dir, write_csv, write_log, write_text, CorpusManifest, LoadedMatch,
    Settings, Skip,
};
use crate::centrality::split_deltas;
use crate::community::{
    clique_percolation, leiden, modularity, position_community_profile, CommunityProfile,
    FormationGroundTruth, Method, Partition, UndirectedGraph,
};
use crate::error::{Error, Result};
use crate::fragments::{
    configuration_ensemble_with, count_motifs_and_orbits, opp_profile, significance_profile,
    EnsembleConfig, GRAPHLET_COUNT, ORBIT_COUNT,
};
use crate::intensity::split_intensity;
use crate::passmap::{prune_median, Passmap, PositionLine};
use crate::TeamId;

use super::networks::load_match;

/// One row of `centrality.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityRow {
    pub match_id: String,
    pub team_id: String,
    pub event_kind: String,
    pub measure: String,
    pub std_before: Option<f64>,
    pub std_after: Option<f64>,
    pub delta: Option<f64>,
    pub relative_delta: Option<f64>,
    pub team_role: String,
}

pub(crate) const CENTRALITY_HEADER: [&str; 9] = [
    "match_id",
    "team_id",
    "event_kind",
    "measure",
    "std_before",
    "std_after",
    "delta",
    "relative_delta",
    "team_role",
];

/// One row of `intensity.csv`; `before`/`after` are passes per second of possession.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntensityRow {
    pub match_id: String,
    pub team_id: String,
    pub event_kind: String,
    pub measure: String,
    pub before: Option<f64>,
    pub after: Option<f64>,
    pub delta: Option<f64>,
    pub relative_delta: Option<f64>,
    pub team_role: String,
    pub possession_before: f64,
    pub possession_after: f64,
    pub weight_before: u64,
    pub weight_after: u64,
}

pub(crate) const INTENSITY_HEADER: [&str; 13] = [
    "match_id",
    "team_id",
    "event_kind",
    "measure",
    "before",
    "after",
    "delta",
    "relative_delta",
    "team_role",
    "possession_before",
    "possession_after",
    "weight_before",
    "weight_after",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionRow {
    pub match_id: String,
    pub team_id: String,
    pub window: String,
    pub method: String,
    pub player_id: String,
    pub community: usize,
}

const PARTITION_HEADER: [&str; 6] = ["match_id", "team_id", "window", "method", "player_id", "community"];

/// Community summary of one pruned network and method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityRow {
    pub match_id: String,
    pub team_id: String,
    pub window: String,
    pub method: String,
    pub nodes: usize,
    pub arcs: usize,
    pub community_count: usize,
    pub modularity: f64,
    /// Modularity of the playing-lines partition on the same graph.
    pub lines_modularity: Option<f64>,
    pub nmi_lines: Option<f64>,
    pub nmi_lines_no_gk: Option<f64>,
}

const COMMUNITY_HEADER: [&str; 11] = [
    "match_id",
    "team_id",
    "window",
    "method",
    "nodes",
    "arcs",
    "community_count",
    "modularity",
    "lines_modularity",
    "nmi_lines",
    "nmi_lines_no_gk",
];

/// One network's vector-valued result (motif counts, z-scores, profiles).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub match_id: String,
    pub team_id: String,
    pub window: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignificanceRow {
    pub match_id: String,
    pub team_id: String,
    pub window: String,
    pub z: Vec<f64>,
    pub sp: Vec<f64>,
    pub capped: Vec<bool>,
    pub frozen: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AnalysisOutput {
    pub centrality: Vec<CentralityRow>,
    pub intensity: Vec<IntensityRow>,
    pub partitions: Vec<PartitionRow>,
    pub communities: Vec<CommunityRow>,
    pub motifs: Vec<ProfileRow>,
    pub opp: Vec<ProfileRow>,
    pub significance: Vec<SignificanceRow>,
    /// Composition of whole-match communities, per detection method.
    pub profiles: BTreeMap<String, CommunityProfile>,
    pub skipped: Vec<Skip>,
    pub files: Vec<PathBuf>,
}

#[derive(Default)]
struct MatchResult {
    out: AnalysisOutput,
    whole_partitions: Vec<(Partition, FormationGroundTruth)>,
    notes: Vec<String>,
}

fn opt_f64(x: Option<f64>) -> Option<f64> {
    x.filter(|v| v.is_finite())
}

/// Every passmap analysed for one team: the whole match, then each split side.
fn windows(m: &LoadedMatch, team: &TeamId) -> Vec<Passmap> {
    let mut v = vec![m.whole(team)];
    for split in m.splits(team) {
        v.push(split.before);
        v.push(split.after);
    }
    v
}

fn lines_labels(g: &Passmap, gt: &FormationGroundTruth) -> Vec<usize> {
    g.nodes()
        .iter()
        .enumerate()
        .map(|(i, n)| match gt.line_of(&n.id) {
            Some(line) => line as usize,
            None => PositionLine::ALL.len() + i,
        })
        .collect()
}

fn communities(
    m: &LoadedMatch,
    g: &Passmap,
    settings: &Settings,
    res: &mut MatchResult,
) -> Result<()> {
    if g.node_count() == 0 {
        return Ok(());
    }
    let pruned = prune_median(g);
    let seed = network_seed(settings.seed, &[m.match_id(), g.team_id.as_str(), &g.label, "leiden"]);
    let detected = [
        leiden(&pruned, settings.resolution, seed)?,
        clique_percolation(&pruned, settings.clique_k)?.flatten(),
    ];
    let u = UndirectedGraph::from_passmap(&pruned);
    let gt = m.formations.get(&g.team_id);
    let lines_modularity = gt.map(|gt| modularity(&u, &lines_labels(&pruned, gt), settings.resolution));
    for p in detected {
        for (player, &c) in p.nodes.iter().zip(&p.membership) {
            res.out.partitions.push(PartitionRow {
                match_id: m.match_id().to_string(),
                team_id: g.team_id.to_string(),
                window: g.label.clone(),
                method: p.method.slug().to_string(),
                player_id: player.to_string(),
                community: c,
            });
        }
        let (nmi_lines, nmi_lines_no_gk) = match gt {
            Some(gt) => (gt.lines_nmi(&p, true)?, gt.lines_nmi(&p, false)?),
            None => (None, None),
        };
        res.out.communities.push(CommunityRow {
            match_id: m.match_id().to_string(),
            team_id: g.team_id.to_string(),
            window: g.label.clone(),
            method: p.method.slug().to_string(),
            nodes: pruned.node_count(),
            arcs: pruned.arc_count(),
            community_count: p.community_count(),
            modularity: modularity(&u, &p.membership, settings.resolution),
            lines_modularity,
            nmi_lines,
            nmi_lines_no_gk,
        });
        if g.label == "whole" {
            if let Some(gt) = gt {
                res.whole_partitions.push((p, gt.clone()));
            }
        }
    }
    Ok(())
}

fn fragments(m: &LoadedMatch, g: &Passmap, settings: &Settings, res: &mut MatchResult) -> Result<()> {
    if g.node_count() == 0 {
        return Ok(());
    }
    let pruned = prune_median(g);
    let (counts, orbits) = count_motifs_and_orbits(&pruned);
    let row = |values: Vec<f64>| ProfileRow {
        match_id: m.match_id().to_string(),
        team_id: g.team_id.to_string(),
        window: g.label.clone(),
        values,
    };
    res.out.motifs.push(row(counts.as_f64()));
    res.out.opp.push(row(opp_profile(&orbits).0));
    if pruned.arc_count() == 0 {
        res.notes.push(format!(
            "note {} {} {}: no arcs after pruning, no significance profile",
            m.match_id(),
            g.team_id,
            g.label
        ));
        return Ok(());
    }
    let config = EnsembleConfig {
        size: settings.ensemble_size,
        master_seed: network_seed(settings.seed, &[m.match_id(), g.team_id.as_str(), &g.label, "ensemble"]),
        ..EnsembleConfig::default()
    };
    let ensemble = configuration_ensemble_with(&pruned, &config)?;
    let sp = significance_profile(&counts.as_f64(), &ensemble, settings.z_cap);
    res.out.significance.push(SignificanceRow {
        match_id: m.match_id().to_string(),
        team_id: g.team_id.to_string(),
        window: g.label.clone(),
        z: sp.z,
        sp: sp.sp,
        capped: sp.capped,
        frozen: ensemble.frozen,
    });
    Ok(())
}

fn analyse_match(m: &LoadedMatch, settings: &Settings, with_fragments: bool) -> Result<MatchResult> {
    let mut res = MatchResult::default();
    let role = |r: crate::events::TeamRole| r.slug().to_string();
    for team in m.teams() {
        for split in m.splits(&team) {
            if settings.analyses.centrality {
                for d in split_deltas(&m.stream, &split) {
                    res.out.centrality.push(CentralityRow {
                        match_id: d.match_id,
                        team_id: d.team_id.to_string(),
                        event_kind: d.event_kind.slug().to_string(),
                        measure: d.measure.slug().to_string(),
                        std_before: d.change.map(|c| c.std_before),
                        std_after: d.change.map(|c| c.std_after),
                        delta: d.change.map(|c| c.delta),
                        relative_delta: d.change.and_then(|c| opt_f64(c.relative_delta)),
                        team_role: role(d.team_role),
                    });
                }
            }
            if settings.analyses.intensity {
                let s = split_intensity(&m.stream, &split);
                let delta = s.delta();
                if s.before.intensity.is_none() || s.after.intensity.is_none() {
                    res.notes.push(format!(
                        "note {} {} {}: no possession on one side, intensity delta excluded",
                        m.match_id(),
                        team,
                        split.event.kind
                    ));
                }
                res.out.intensity.push(IntensityRow {
                    match_id: s.match_id.clone(),
                    team_id: team.to_string(),
                    event_kind: s.event_kind.slug().to_string(),
                    measure: "intensity".into(),
                    before: s.before.intensity,
                    after: s.after.intensity,
                    delta,
                    relative_delta: delta.zip(s.before.intensity).and_then(|(d, b)| (b > 0.0).then(|| d / b)),
                    team_role: role(s.team_role),
                    possession_before: s.before.possession,
                    possession_after: s.after.possession,
                    weight_before: s.before.total_weight,
                    weight_after: s.after.total_weight,
                });
            }
        }
        if settings.analyses.communities || (with_fragments && settings.analyses.fragments) {
            for g in windows(m, &team) {
                if settings.analyses.communities {
                    communities(m, &g, settings, &mut res)?;
                }
                if with_fragments && settings.analyses.fragments {
                    fragments(m, &g, settings, &mut res)?;
                }
            }
        }
    }
    Ok(res)
}

fn profile_header(prefix: &str, n: usize, extra: &[&str]) -> Vec<String> {
    ["match_id", "team_id", "window"]
        .iter()
        .map(|s| s.to_string())
        .chain(extra.iter().map(|s| s.to_string()))
        .chain((0..n).map(|i| format!("{prefix}_{i}")))
        .collect()
}

fn write_profiles(path: &Path, prefix: &str, n: usize, rows: &[ProfileRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(profile_header(prefix, n, &[]))?;
    for r in rows {
        let mut rec = vec![r.match_id.clone(), r.team_id.clone(), r.window.clone()];
        rec.extend(r.values.iter().map(|v| v.to_string()));
        w.write_record(&rec)?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    write_text(path, &String::from_utf8(bytes).expect("utf-8"))
}

fn write_zscores(path: &Path, rows: &[SignificanceRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(profile_header("z", GRAPHLET_COUNT, &["frozen", "capped"]))?;
    for r in rows {
        let capped: Vec<String> = r
            .capped
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(i, _)| i.to_string())
            .collect();
        let mut rec = vec![
            r.match_id.clone(),
            r.team_id.clone(),
            r.window.clone(),
            r.frozen.to_string(),
            capped.join(";"),
        ];
        rec.extend(r.z.iter().map(|v| v.to_string()));
        w.write_record(&rec)?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    write_text(path, &String::from_utf8(bytes).expect("utf-8"))
}

/// Reads a table written by [`write_profiles`], or `z` values from `zscores.csv`.
pub(crate) fn read_profiles(path: &Path, prefix: &str) -> Result<Vec<ProfileRow>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::Reader::from_reader(std::io::BufReader::new(file));
    let headers = reader.headers()?.clone();
    let columns: Vec<usize> = headers
        .iter()
        .enumerate()
        .filter(|(_, h)| h.strip_prefix(prefix).is_some_and(|rest| rest.starts_with('_')))
        .map(|(i, _)| i)
        .collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let values = columns
            .iter()
            .map(|&i| {
                record[i]
                    .parse::<f64>()
                    .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
            })
            .collect::<Result<_>>()?;
        rows.push(ProfileRow {
            match_id: record[0].to_string(),
            team_id: record[1].to_string(),
            window: record[2].to_string(),
            values,
        });
    }
    Ok(rows)
}

fn write_profile_table(path: &Path, profiles: &BTreeMap<String, CommunityProfile>) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["method", "size", "slots", "gk", "def", "mid", "att", "unknown"])?;
    for (method, profile) in profiles {
        for (size, counts) in &profile.rows {
            let mut rec = vec![method.clone(), size.to_string(), counts.total().to_string()];
            rec.extend(counts.proportions().iter().map(|p| p.to_string()));
            w.write_record(&rec)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    write_text(path, &String::from_utf8(bytes).expect("utf-8"))
}

/// Runs the requested analyses on every match and writes `tables/*.csv`.
///
/// Fragment analyses cover only the first `settings.fragments_sample` matches
/// by id. A match that fails is logged and skipped.
pub fn run_analysis(manifest: &CorpusManifest, settings: &Settings, out: &Path) -> Result<AnalysisOutput> {
    let entries = manifest.sorted();
    let sample = settings.fragments_sample.unwrap_or(entries.len());
    let results: Vec<(String, Result<MatchResult>)> = entries
        .par_iter()
        .enumerate()
        .map(|(i, e)| {
            let r = load_match(e).and_then(|m| analyse_match(&m, settings, i < sample));
            (e.match_id.clone(), r)
        })
        .collect();

    let mut output = AnalysisOutput::default();
    let mut whole: Vec<(Partition, FormationGroundTruth)> = Vec::new();
    let mut log = vec![
        format!("matches {}", entries.len()),
        format!("seed {}", settings.seed),
        format!("ensemble_size {}", settings.ensemble_size),
        format!("resolution {}", settings.resolution),
        format!("clique_k {}", settings.clique_k),
        format!("z_cap {}", settings.z_cap),
        format!("fragments_sample {}", sample.min(entries.len())),
    ];
    for (match_id, r) in results {
        match r {
            Ok(res) => {
                log.push(format!("match {match_id}: ok"));
                log.extend(res.notes);
                let o = res.out;
                output.centrality.extend(o.centrality);
                output.intensity.extend(o.intensity);
                output.partitions.extend(o.partitions);
                output.communities.extend(o.communities);
                output.motifs.extend(o.motifs);
                output.opp.extend(o.opp);
                output.significance.extend(o.significance);
                whole.extend(res.whole_partitions);
            }
            Err(e) => {
                log::warn!("skipping match {match_id}: {e}");
                log.push(format!("skip {match_id}: {e}"));
                output.skipped.push(Skip {
                    match_id,
                    reason: e.to_string(),
                });
            }
        }
    }
    for method in [Method::Leiden, Method::CliquePercolation] {
        let items: Vec<(&Partition, &FormationGroundTruth)> = whole
            .iter()
            .filter(|(p, _)| p.method == method)
            .map(|(p, gt)| (p, gt))
            .collect();
        if !items.is_empty() {
            output
                .profiles
                .insert(method.slug().to_string(), position_community_profile(&items));
        }
    }

    let dir = tables_dir(out);
    let a = settings.analyses;
    let mut files = Vec::new();
    let mut file = |name: &str| {
        let p = dir.join(name);
        files.push(p.clone());
        p
    };
    if a.centrality {
        write_csv(&file("centrality.csv"), &output.centrality, &CENTRALITY_HEADER)?;
    }
    if a.intensity {
        write_csv(&file("intensity.csv"), &output.intensity, &INTENSITY_HEADER)?;
    }
    if a.communities {
        write_csv(&file("partitions.csv"), &output.partitions, &PARTITION_HEADER)?;
        write_csv(&file("communities.csv"), &output.communities, &COMMUNITY_HEADER)?;
        write_profile_table(&file("community_profile.csv"), &output.profiles)?;
    }
    if a.fragments {
        write_profiles(&file("motifs.csv"), "n", GRAPHLET_COUNT, &output.motifs)?;
        write_profiles(&file("opp.csv"), "opp", ORBIT_COUNT, &output.opp)?;
        let sp: Vec<ProfileRow> = output
            .significance
            .iter()
            .map(|r| ProfileRow {
                match_id: r.match_id.clone(),
                team_id: r.team_id.clone(),
                window: r.window.clone(),
                values: r.sp.clone(),
            })
            .collect();
        write_profiles(&file("significance.csv"), "sp", GRAPHLET_COUNT, &sp)?;
        write_zscores(&file("zscores.csv"), &output.significance)?;
    }
    files.push(write_log(out, "analyze", &log)?);
    output.files = files;
    Ok(output)
}
