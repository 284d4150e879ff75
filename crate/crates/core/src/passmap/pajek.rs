//! Pajek `.net` files and their JSON metadata sidecars.
//!
//! ```text
//! *Vertices 2
//! 1 "A"
//! 2 "B"
//! *Arcs
//! 1 2 3
//! ```
//!
//! Vertices are numbered from 1 in node order. Arc lines are sorted by
//! `(source, target)`. Labels escape `"` and `\` with a backslash.

use std::fmt::Write as _;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{Passmap, PositionLine};
use crate::error::{Error, Result};
use crate::events::{KeyEventKind, MatchTime, TeamRole};
use crate::{PlayerId, TeamId};

fn quote(label: &str) -> String {
    let mut s = String::with_capacity(label.len() + 2);
    s.push('"');
    for c in label.chars() {
        if c == '"' || c == '\\' {
            s.push('\\');
        }
        s.push(c);
    }
    s.push('"');
    s
}

/// Renders `g` as Pajek text.
pub fn write_pajek(g: &Passmap) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "*Vertices {}", g.node_count());
    for (i, node) in g.nodes().iter().enumerate() {
        let _ = writeln!(out, "{} {}", i + 1, quote(node.id.as_str()));
    }
    out.push_str("*Arcs\n");
    for ((a, b), w) in g.arc_indices() {
        let _ = writeln!(out, "{} {} {}", a + 1, b + 1, w);
    }
    out
}

pub fn export_pajek(g: &Passmap, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, write_pajek(g)).map_err(|e| Error::io(path, e))
}

/// Splits a vertex line into its number and label.
fn parse_vertex(line: &str, lineno: usize) -> Result<(usize, String)> {
    let err = |message: String| Error::Pajek {
        line: lineno,
        message,
    };
    let line = line.trim_start();
    let (num, rest) = line
        .split_once(char::is_whitespace)
        .ok_or_else(|| err(format!("expected `<id> \"<label>\"`, got `{line}`")))?;
    let id: usize = num
        .parse()
        .map_err(|_| err(format!("bad vertex number `{num}`")))?;
    let rest = rest.trim_start();
    let label = if let Some(body) = rest.strip_prefix('"') {
        let mut label = String::new();
        let mut chars = body.chars();
        loop {
            match chars.next() {
                Some('\\') => match chars.next() {
                    Some(c) => label.push(c),
                    None => return Err(err("dangling escape in label".into())),
                },
                Some('"') => break,
                Some(c) => label.push(c),
                None => return Err(err("unterminated label".into())),
            }
        }
        label
    } else {
        rest.split_whitespace()
            .next()
            .ok_or_else(|| err("missing vertex label".into()))?
            .to_owned()
    };
    Ok((id, label))
}

/// Parses Pajek text produced by [`write_pajek`] (or any `*Vertices`/`*Arcs` file
/// with integer weights).
pub fn read_pajek(text: &str) -> Result<Passmap> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('%'));

    let (lineno, header) = lines.next().ok_or(Error::Pajek {
        line: 1,
        message: "empty file".into(),
    })?;
    let mut header_parts = header.split_whitespace();
    let keyword = header_parts.next().unwrap_or_default();
    if !keyword.eq_ignore_ascii_case("*vertices") {
        return Err(Error::Pajek {
            line: lineno,
            message: format!("expected `*Vertices`, got `{header}`"),
        });
    }
    let n: usize = header_parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or(Error::Pajek {
            line: lineno,
            message: "missing vertex count".into(),
        })?;

    let mut labels: Vec<Option<String>> = vec![None; n];
    let mut arcs_seen = false;
    let mut g = Passmap::default();
    let mut arc_lines = Vec::new();

    for (lineno, line) in lines {
        let trimmed = line.trim();
        if trimmed.starts_with('*') {
            if trimmed.eq_ignore_ascii_case("*arcs") {
                arcs_seen = true;
                continue;
            }
            return Err(Error::Pajek {
                line: lineno,
                message: format!("unsupported section `{trimmed}`"),
            });
        }
        if arcs_seen {
            arc_lines.push((lineno, trimmed));
            continue;
        }
        let (id, label) = parse_vertex(line, lineno)?;
        if id == 0 || id > n {
            return Err(Error::Pajek {
                line: lineno,
                message: format!("vertex {id} outside 1..={n}"),
            });
        }
        if labels[id - 1].replace(label).is_some() {
            return Err(Error::Pajek {
                line: lineno,
                message: format!("vertex {id} listed twice"),
            });
        }
    }

    for (i, label) in labels.into_iter().enumerate() {
        let label = label.unwrap_or_else(|| (i + 1).to_string());
        let id = PlayerId::new(label);
        if g.index_of(&id).is_some() {
            return Err(Error::Pajek {
                line: lineno,
                message: format!("duplicate vertex label `{id}`"),
            });
        }
        g.add_node(id);
    }

    for (lineno, line) in arc_lines {
        let err = |message: String| Error::Pajek {
            line: lineno,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(err(format!("expected `src dst weight`, got `{line}`")));
        }
        let parse_vertex_ref = |s: &str| -> Result<usize> {
            let v: usize = s.parse().map_err(|_| err(format!("bad vertex `{s}`")))?;
            if v == 0 || v > n {
                return Err(err(format!("vertex {v} outside 1..={n}")));
            }
            Ok(v - 1)
        };
        let a = parse_vertex_ref(fields[0])?;
        let b = parse_vertex_ref(fields[1])?;
        let w: u32 = match fields.get(2) {
            Some(s) => s
                .parse()
                .ok()
                .filter(|&w| w > 0)
                .ok_or_else(|| err(format!("weight `{s}` is not a positive integer")))?,
            None => 1,
        };
        if a == b {
            return Err(err("self-arc".into()));
        }
        g.add_arc_by_index(a, b, w);
    }
    Ok(g)
}

/// Reads a `.net` file; when a sidecar sits next to it, team, label and node
/// metadata are restored from it.
pub fn import_pajek(path: impl AsRef<Path>) -> Result<Passmap> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut g = read_pajek(&text)?;
    let sidecar = sidecar_path(path);
    if sidecar.exists() {
        let meta = read_sidecar(&sidecar)?;
        g.team_id = meta.team_id.clone();
        g.label = meta.label.clone();
        for n in &meta.nodes {
            if let Some(node) = g.node_mut(&n.id) {
                node.name = n.name.clone();
                node.line = n.line;
            }
        }
    }
    Ok(g)
}

/// Metadata for one persisted network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkMetadata {
    pub match_id: String,
    pub team_id: TeamId,
    pub team_name: Option<String>,
    pub label: String,
    pub split: KeyEventKind,
    /// `before` or `after`.
    pub side: String,
    pub event_occurred: bool,
    pub event_time: Option<MatchTime>,
    pub team_role: TeamRole,
    pub window_start: MatchTime,
    pub window_end: MatchTime,
    /// `players`, or `flow` for shot-augmented graphs.
    pub variant: String,
    pub node_count: usize,
    pub arc_count: usize,
    pub total_weight: u64,
    pub nodes: Vec<NodeMetadata>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeMetadata {
    pub id: PlayerId,
    pub name: Option<String>,
    pub line: Option<PositionLine>,
}

/// `before.net` -> `before.json`, `before.flow.net` -> `before.flow.json`.
pub(crate) fn sidecar_path(net: &Path) -> PathBuf {
    net.with_extension("json")
}

pub fn write_sidecar(meta: &NetworkMetadata, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut text = serde_json::to_string_pretty(meta)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_sidecar(path: impl AsRef<Path>) -> Result<NetworkMetadata> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_reader(BufReader::new(file))?)
}
