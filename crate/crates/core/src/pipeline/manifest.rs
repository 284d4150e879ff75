use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable naming the data root used to resolve relative paths.
pub const DATA_ROOT_ENV: &str = "PASSNET_DATA_ROOT";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchEntry {
    pub match_id: String,
    pub events: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formation: Option<PathBuf>,
}

/// Settings a JSON manifest may carry; command-line flags take precedence.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ManifestSettings {
    pub seed: Option<u64>,
    pub ensemble_size: Option<usize>,
    pub resolution: Option<f64>,
    pub output: Option<PathBuf>,
    pub fragments_sample: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub matches: Vec<MatchEntry>,
    #[serde(flatten)]
    pub settings: ManifestSettings,
}

#[derive(Deserialize)]
struct CsvRow {
    match_id: String,
    events: PathBuf,
    #[serde(default)]
    formation: Option<PathBuf>,
}

impl CorpusManifest {
    pub fn new(matches: Vec<MatchEntry>) -> Self {
        Self {
            matches,
            settings: ManifestSettings::default(),
        }
    }

    /// Loads a `.json` manifest, a CSV manifest with a `match_id,events[,formation]`
    /// header, or a directory of event files (one match per `*.json`, named by stem).
    ///
    /// Relative paths resolve against the manifest's directory, then against `data_root`.
    pub fn load(path: &Path, data_root: Option<&Path>) -> Result<Self> {
        let mut manifest = if path.is_dir() {
            Self::scan_events_dir(path)?
        } else {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
                serde_json::from_str(&text)?
            } else {
                Self::parse_csv(&text)?
            }
        };
        let base = path.parent().unwrap_or(Path::new("."));
        for m in &mut manifest.matches {
            m.events = resolve(&m.events, base, data_root);
            if let Some(f) = &m.formation {
                m.formation = Some(resolve(f, base, data_root));
            }
        }
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(text.as_bytes());
        let mut matches = Vec::new();
        for row in reader.deserialize() {
            let row: CsvRow = row?;
            matches.push(MatchEntry {
                match_id: row.match_id,
                events: row.events,
                formation: row.formation.filter(|p| !p.as_os_str().is_empty()),
            });
        }
        Ok(Self::new(matches))
    }

    /// One entry per `*.json` file in `dir`, sorted by file name.
    pub fn scan_events_dir(dir: &Path) -> Result<Self> {
        let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| Error::io(dir, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|e| e == "json"))
            .collect();
        files.sort();
        let matches = files
            .into_iter()
            .map(|events| MatchEntry {
                match_id: events
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default(),
                events,
                formation: None,
            })
            .collect();
        Ok(Self::new(matches))
    }

    /// Match ids are unique and every referenced file exists.
    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for m in &self.matches {
            if m.match_id.is_empty() {
                return Err(Error::Manifest("empty match id".into()));
            }
            if !seen.insert(&m.match_id) {
                return Err(Error::Manifest(format!("duplicate match id {}", m.match_id)));
            }
            for path in std::iter::once(&m.events).chain(&m.formation) {
                if !path.is_file() {
                    return Err(Error::Manifest(format!(
                        "match {}: {} does not exist",
                        m.match_id,
                        path.display()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Entries sorted by match id, the processing order of every stage.
    pub fn sorted(&self) -> Vec<MatchEntry> {
        let mut v = self.matches.clone();
        v.sort_by(|a, b| a.match_id.cmp(&b.match_id));
        v
    }
}

fn resolve(p: &Path, base: &Path, data_root: Option<&Path>) -> PathBuf {
    if p.is_absolute() {
        return p.to_path_buf();
    }
    let local = base.join(p);
    match data_root {
        Some(root) if !local.exists() => root.join(p),
        _ => local,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_with_optional_formation() {
        let m = CorpusManifest::parse_csv("match_id,events,formation\n1,a.json,\n2,b.json,f.csv\n").unwrap();
        assert_eq!(m.matches.len(), 2);
        assert_eq!(m.matches[0].formation, None);
        assert_eq!(m.matches[1].formation, Some(PathBuf::from("f.csv")));
        let m = CorpusManifest::parse_csv("match_id,events\n1,a.json\n").unwrap();
        assert_eq!(m.matches[0].events, PathBuf::from("a.json"));
    }

    #[test]
    fn json_settings_are_optional() {
        let m: CorpusManifest =
            serde_json::from_str(r#"{"matches":[{"match_id":"1","events":"a.json"}],"seed":5}"#).unwrap();
        assert_eq!(m.settings.seed, Some(5));
        assert_eq!(m.settings.resolution, None);
    }

    #[test]
    fn validation() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("a.json");
        std::fs::write(&file, "[]").unwrap();
        let entry = |id: &str, p: &Path| MatchEntry {
            match_id: id.into(),
            events: p.to_path_buf(),
            formation: None,
        };
        assert!(CorpusManifest::new(vec![entry("1", &file)]).validate().is_ok());
        assert!(CorpusManifest::new(vec![entry("1", &file), entry("1", &file)])
            .validate()
            .is_err());
        assert!(CorpusManifest::new(vec![entry("1", &dir.path().join("x.json"))])
            .validate()
            .is_err());
    }

    #[test]
    fn relative_paths_fall_back_to_the_data_root() {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().join("root");
        std::fs::create_dir_all(root.join("events")).unwrap();
        std::fs::write(root.join("events/7.json"), "[]").unwrap();
        let manifest = dir.path().join("m.csv");
        std::fs::write(&manifest, "match_id,events\n7,events/7.json\n").unwrap();
        assert!(CorpusManifest::load(&manifest, None).is_err());
        let m = CorpusManifest::load(&manifest, Some(&root)).unwrap();
        assert_eq!(m.matches[0].events, root.join("events/7.json"));
    }
}
