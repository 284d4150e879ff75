//! Corpus runs: networks, per-network analyses, aggregation and plots.
//!
//! Every stage processes matches sorted by id and fans out across matches
//! with rayon. Outputs are plain files under one output root:
//!
//! ```text
//! networks/<match_id>/<team_id>/<event>/{before,after}.net   (+ .json sidecars)
//! networks/<match_id>/<team_id>/<event>/{before,after}.flow.net
//! tables/*.csv
//! report.json, report.csv
//! plots/**/*.svg
//! logs/<stage>.log
//! ```

mod aggregate;
mod analysis;
mod manifest;
mod networks;
mod plot;

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use aggregate::{
    aggregate, run_aggregate, AggregateReport, CommunitySummary, DeltaSummary, MotifSummary,
};
pub use analysis::{
    run_analysis, AnalysisOutput, CentralityRow, CommunityRow, IntensityRow, PartitionRow,
    ProfileRow, SignificanceRow,
};
pub use manifest::{CorpusManifest, ManifestSettings, MatchEntry, DATA_ROOT_ENV};
pub use networks::{
    ingest, load_match, network_dir, run_networks, write_match_networks, IngestRow, LoadedMatch,
    NetworkRun,
};
pub use plot::{histogram_svg, profile_svg, run_plots, Series};

/// Analyses `run_analysis` can be asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analyses {
    pub centrality: bool,
    pub intensity: bool,
    pub communities: bool,
    pub fragments: bool,
}

impl Default for Analyses {
    fn default() -> Self {
        Self {
            centrality: true,
            intensity: true,
            communities: true,
            fragments: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub seed: u64,
    pub ensemble_size: usize,
    pub resolution: f64,
    pub clique_k: usize,
    pub z_cap: f64,
    /// Fragment analyses run on the first `n` matches by id; `None` runs all.
    pub fragments_sample: Option<usize>,
    pub analyses: Analyses,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            seed: 0,
            ensemble_size: 100,
            resolution: 1.0,
            clique_k: 3,
            z_cap: crate::fragments::DEFAULT_Z_CAP,
            fragments_sample: Some(32),
            analyses: Analyses::default(),
        }
    }
}

impl Settings {
    /// Fills unset command-line values from the manifest.
    pub fn with_manifest(mut self, m: &ManifestSettings) -> Self {
        if let Some(s) = m.seed {
            self.seed = s;
        }
        if let Some(e) = m.ensemble_size {
            self.ensemble_size = e;
        }
        if let Some(r) = m.resolution {
            self.resolution = r;
        }
        if m.fragments_sample.is_some() {
            self.fragments_sample = m.fragments_sample;
        }
        self
    }
}

/// Seed of one network: FNV-1a over its identifying parts, mixed with the run seed.
pub fn network_seed(run_seed: u64, parts: &[&str]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    for byte in run_seed
        .to_le_bytes()
        .into_iter()
        .chain(parts.iter().flat_map(|p| p.bytes().chain([0xff])))
    {
        h ^= u64::from(byte);
        h = h.wrapping_mul(PRIME);
    }
    h
}

/// A match that a stage could not process, with the reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skip {
    pub match_id: String,
    pub reason: String,
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub(crate) fn write_csv<T: Serialize>(path: &Path, rows: &[T], header: &[&str]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    write_text(path, &String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub(crate) fn read_csv<T: serde::de::DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::Reader::from_reader(std::io::BufReader::new(file));
    reader
        .deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}

/// `<out>/logs/<stage>.log`.
pub(crate) fn write_log(out: &Path, stage: &str, lines: &[String]) -> Result<PathBuf> {
    let path = out.join("logs").join(format!("{stage}.log"));
    let mut text = lines.join("\n");
    text.push('\n');
    write_text(&path, &text)?;
    Ok(path)
}

pub(crate) fn tables_dir(out: &Path) -> PathBuf {
    out.join("tables")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn network_seeds_are_stable_and_distinct() {
        let a = network_seed(1, &["15946", "217", "first_goal/before"]);
        assert_eq!(a, network_seed(1, &["15946", "217", "first_goal/before"]));
        assert_ne!(a, network_seed(2, &["15946", "217", "first_goal/before"]));
        assert_ne!(a, network_seed(1, &["15946", "217", "first_goal/after"]));
        assert_ne!(network_seed(0, &["ab", "c"]), network_seed(0, &["a", "bc"]));
    }
}
