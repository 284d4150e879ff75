//! Self-contained SVG profile plots and delta histograms.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::analysis::read_profiles;
use super::{read_csv, tables_dir, write_text, CentralityRow, IntensityRow, ProfileRow};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub values: Vec<f64>,
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 360.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 40.0;
const COLOURS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"11\">\n\
         <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    )
}

/// Frame, horizontal grid and y labels for `[lo, hi]`; returns the y mapping.
fn frame(svg: &mut String, lo: f64, hi: f64) -> impl Fn(f64) -> f64 {
    let plot_h = HEIGHT - TOP - BOTTOM;
    let span = if hi > lo { hi - lo } else { 1.0 };
    let y = move |v: f64| TOP + plot_h * (1.0 - (v - lo) / span);
    for k in 0..=4 {
        let v = lo + span * f64::from(k) / 4.0;
        let _ = writeln!(
            svg,
            "<line x1=\"{LEFT}\" y1=\"{0:.2}\" x2=\"{1}\" y2=\"{0:.2}\" stroke=\"#dddddd\"/>\n\
             <text x=\"{2}\" y=\"{3:.2}\" text-anchor=\"end\">{4:.3}</text>",
            y(v),
            WIDTH - RIGHT,
            LEFT - 6.0,
            y(v) + 4.0,
            v
        );
    }
    let _ = writeln!(
        svg,
        "<rect x=\"{LEFT}\" y=\"{TOP}\" width=\"{}\" height=\"{plot_h}\" fill=\"none\" stroke=\"black\"/>",
        WIDTH - LEFT - RIGHT
    );
    y
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((0.0f64, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if hi > lo {
        (lo, hi)
    } else {
        (lo, lo + 1.0)
    }
}

/// Line plot with x = component index; `range` fixes the y axis.
pub fn profile_svg(title: &str, series: &[Series], range: Option<(f64, f64)>) -> String {
    let n = series.iter().map(|s| s.values.len()).max().unwrap_or(0);
    let (lo, hi) = range.unwrap_or_else(|| bounds(series.iter().flat_map(|s| s.values.iter().copied())));
    let mut svg = header(title);
    let y = frame(&mut svg, lo, hi);
    let plot_w = WIDTH - LEFT - RIGHT;
    let x = |i: usize| LEFT + plot_w * (i as f64 + 0.5) / n.max(1) as f64;
    for i in 0..n {
        let _ = writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{}\" text-anchor=\"middle\">{i}</text>",
            x(i),
            HEIGHT - BOTTOM + 14.0
        );
    }
    for (k, s) in series.iter().enumerate() {
        let colour = COLOURS[k % COLOURS.len()];
        let points: Vec<String> = s
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| format!("{:.2},{:.2}", x(i), y(v.clamp(lo, hi))))
            .collect();
        let _ = writeln!(
            svg,
            "<polyline fill=\"none\" stroke=\"{colour}\" stroke-width=\"1.5\" points=\"{}\"/>",
            points.join(" ")
        );
        for p in &points {
            let (px, py) = p.split_once(',').expect("x,y");
            let _ = writeln!(svg, "<circle cx=\"{px}\" cy=\"{py}\" r=\"2.5\" fill=\"{colour}\"/>");
        }
        let ly = TOP + 14.0 + 14.0 * k as f64;
        let _ = writeln!(
            svg,
            "<rect x=\"{0}\" y=\"{1:.2}\" width=\"10\" height=\"10\" fill=\"{colour}\"/>\n\
             <text x=\"{2}\" y=\"{3:.2}\">{4}</text>",
            WIDTH - RIGHT - 110.0,
            ly - 9.0,
            WIDTH - RIGHT - 95.0,
            ly,
            escape(&s.label)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// Histogram of `values` with `bins` equal-width bins.
pub fn histogram_svg(title: &str, values: &[f64], bins: usize) -> String {
    let bins = bins.max(1);
    let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
    let (lo, hi) = match (
        finite.iter().copied().reduce(f64::min),
        finite.iter().copied().reduce(f64::max),
    ) {
        (Some(lo), Some(hi)) if hi > lo => (lo, hi),
        (Some(v), _) => (v - 0.5, v + 0.5),
        _ => (0.0, 1.0),
    };
    let mut counts = vec![0usize; bins];
    for v in &finite {
        let b = (((v - lo) / (hi - lo)) * bins as f64).floor() as usize;
        counts[b.min(bins - 1)] += 1;
    }
    let top = counts.iter().copied().max().unwrap_or(0).max(1) as f64;
    let mut svg = header(title);
    let y = frame(&mut svg, 0.0, top);
    let plot_w = WIDTH - LEFT - RIGHT;
    let bw = plot_w / bins as f64;
    for (i, &c) in counts.iter().enumerate() {
        let _ = writeln!(
            svg,
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{}\" stroke=\"white\"/>",
            LEFT + bw * i as f64,
            y(c as f64),
            bw,
            y(0.0) - y(c as f64),
            COLOURS[0]
        );
    }
    for (x, v) in [(LEFT, lo), (WIDTH - RIGHT, hi)] {
        let _ = writeln!(
            svg,
            "<text x=\"{x}\" y=\"{}\" text-anchor=\"middle\">{v:.3}</text>",
            HEIGHT - BOTTOM + 14.0
        );
    }
    if lo < 0.0 && hi > 0.0 {
        let zx = LEFT + plot_w * (-lo / (hi - lo));
        let _ = writeln!(
            svg,
            "<line x1=\"{zx:.2}\" y1=\"{TOP}\" x2=\"{zx:.2}\" y2=\"{}\" stroke=\"black\" stroke-dasharray=\"4 3\"/>",
            HEIGHT - BOTTOM
        );
    }
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">n = {}</text>",
        WIDTH - RIGHT - 6.0,
        TOP + 14.0,
        finite.len()
    );
    svg.push_str("</svg>\n");
    svg
}

fn safe(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

/// Before/after overlays per (match, team, event), plus whole-match plots.
fn overlays(
    rows: &[ProfileRow],
    dir: &Path,
    what: &str,
    range: Option<(f64, f64)>,
    files: &mut Vec<PathBuf>,
) -> Result<()> {
    let mut groups: BTreeMap<(String, String, String), Vec<Series>> = BTreeMap::new();
    for r in rows {
        let (event, side) = r.window.split_once('/').unwrap_or((&r.window, &r.window));
        groups
            .entry((r.match_id.clone(), r.team_id.clone(), event.to_string()))
            .or_default()
            .push(Series {
                label: side.to_string(),
                values: r.values.clone(),
            });
    }
    for ((m, t, event), series) in groups {
        let path = dir.join(format!("{}_{}_{}.svg", safe(&m), safe(&t), safe(&event)));
        let title = format!("{what}: match {m}, team {t}, {event}");
        write_text(&path, &profile_svg(&title, &series, range))?;
        files.push(path);
    }
    Ok(())
}

/// Renders plots from the tables under `out/tables` into `out/plots`.
pub fn run_plots(out: &Path) -> Result<Vec<PathBuf>> {
    let tables = tables_dir(out);
    let plots = out.join("plots");
    let mut files = Vec::new();

    let opp = tables.join("opp.csv");
    if opp.is_file() {
        overlays(&read_profiles(&opp, "opp")?, &plots.join("opp"), "Orbit occurrences per player", None, &mut files)?;
    }
    let sp = tables.join("significance.csv");
    if sp.is_file() {
        overlays(
            &read_profiles(&sp, "sp")?,
            &plots.join("significance"),
            "Motif significance profile",
            Some((-1.0, 1.0)),
            &mut files,
        )?;
    }

    let mut deltas: BTreeMap<(String, String), Vec<f64>> = BTreeMap::new();
    let centrality = tables.join("centrality.csv");
    if centrality.is_file() {
        for r in read_csv::<CentralityRow>(&centrality)? {
            if let Some(d) = r.delta {
                deltas.entry((r.event_kind, r.measure)).or_default().push(d);
            }
        }
    }
    let intensity = tables.join("intensity.csv");
    if intensity.is_file() {
        for r in read_csv::<IntensityRow>(&intensity)? {
            if let Some(d) = r.delta {
                deltas.entry((r.event_kind, r.measure)).or_default().push(d);
            }
        }
    }
    for ((event, measure), values) in deltas {
        let path = plots.join("deltas").join(format!("{}_{}.svg", safe(&event), safe(&measure)));
        let title = format!("{measure} delta, {event} (after - before)");
        write_text(&path, &histogram_svg(&title, &values, 20))?;
        files.push(path);
    }
    Ok(files)
}
