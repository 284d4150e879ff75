//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p passnet --test acceptance -- --nocapture`.
//!
//! Criteria 8 and 9 need the StatsBomb open-data release. Point
//! `PASSNET_DATA_ROOT` at its `data/` directory (the one holding `events/`,
//! `lineups/` and `matches/`). Without it they report FAIL with the reason,
//! plus the same statistics computed on the bundled fixtures for reference.
//! Their outcome is reported but does not fail the test run; every other
//! criterion must pass.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use common::checks::{
    check_centrality, check_counts, check_fixtures_against_oracle, check_profile_algebra,
    check_round_trips, same_graph,
};
use common::{brute_force_classes, fixture_events, rng, tree, FIXTURE_MATCHES};
use passnet::centrality::{betweenness, delta_std};
use passnet::events::{detect_key_events, parse_match_file, KeyEventKind};
use passnet::fragments::{build_atlas, GRAPHLET_COUNT, ORBIT_COUNT};
use passnet::passmap::{import_pajek, split_on_event, write_pajek, Passmap};
use passnet::pipeline::{
    aggregate, run_aggregate, run_analysis, run_networks, run_plots, AggregateReport,
    CorpusManifest, MatchEntry, Settings, DATA_ROOT_ENV,
};
use passnet::TeamId;
use rand::Rng;

type Check = Result<String, String>;

struct Criterion {
    id: u8,
    name: &'static str,
    data_dependent: bool,
    budget: Option<Duration>,
    run: fn() -> Check,
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Runs a check that signals failure by panicking, e.g. through `assert!`.
fn guarded(f: impl FnOnce()) -> Result<(), String> {
    catch_unwind(AssertUnwindSafe(f)).map_err(|e| {
        e.downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into())
    })
}

fn data_root() -> Option<PathBuf> {
    std::env::var_os(DATA_ROOT_ENV)
        .map(PathBuf::from)
        .filter(|p| p.join("events").is_dir())
}

fn fixture_manifest() -> CorpusManifest {
    CorpusManifest::new(
        FIXTURE_MATCHES
            .iter()
            .map(|id| MatchEntry {
                match_id: id.to_string(),
                events: fixture_events(id),
                formation: None,
            })
            .collect(),
    )
}

fn c1_atlas() -> Check {
    let classes = brute_force_classes();
    let orbits: usize = classes.iter().map(|c| c.2).sum();
    ensure(classes.len() == 15 && orbits == 33, format!("brute force: {} classes, {orbits} orbits", classes.len()))?;
    let a = build_atlas();
    ensure(
        a.graphlets.len() == GRAPHLET_COUNT && a.orbit_count() == ORBIT_COUNT,
        format!("atlas: {} graphlets, {} orbits", a.graphlets.len(), a.orbit_count()),
    )?;
    Ok(format!("{} graphlets, {} orbits; brute force agrees", a.graphlets.len(), a.orbit_count()))
}

fn c2_orbits() -> Check {
    guarded(|| check_counts(200, 0xacce_0002))?;
    Ok("200 random digraphs: counts equal the permutation oracle; orbit sums equal size x count".into())
}

fn c3_profile_algebra() -> Check {
    let mut r = rng(0xacce_0003);
    guarded(|| {
        for _ in 0..1000 {
            let counts: Vec<f64> = (0..GRAPHLET_COUNT).map(|_| f64::from(r.gen_range(0u32..300))).collect();
            let mean: Vec<f64> = (0..GRAPHLET_COUNT).map(|_| r.gen_range(0.0..300.0)).collect();
            let std: Vec<f64> = (0..GRAPHLET_COUNT)
                .map(|_| if r.gen_bool(0.2) { 0.0 } else { r.gen_range(0.01..30.0) })
                .collect();
            check_profile_algebra(&counts, &mean, &std);
        }
    })?;
    Ok("1000 profiles: sum of SP^2 = 1 within 1e-12; counts at the mean give Z = 0".into())
}

fn c4_centrality() -> Check {
    guarded(|| check_centrality(100, 0xacce_0004))?;
    Ok("100 random weighted digraphs: betweenness, closeness, flow within 1e-9".into())
}

fn c5_intensity() -> Check {
    use passnet::intensity::intensity;
    let mut g = Passmap::new("t".into(), "");
    g.add_arc("a".into(), "b".into(), 6);
    g.add_arc("b".into(), "a".into(), 3);
    g.add_arc("b".into(), "c".into(), 3);
    ensure(intensity(&g, 40.0).intensity == Some(0.3), "12 passes over 40 s")?;
    ensure(intensity(&g, 0.0).intensity.is_none(), "no possession")?;
    ensure(intensity(&Passmap::default(), 10.0).intensity == Some(0.0), "empty graph")?;
    guarded(check_fixtures_against_oracle)?;
    Ok("toy cases exact; 3 fixture matches equal the raw-event script within 1e-9".into())
}

fn c6_pajek() -> Check {
    guarded(|| check_round_trips(50, 0xacce_0006))?;
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/golden/sample.net");
    let text = std::fs::read_to_string(&golden).map_err(|e| e.to_string())?;
    let g = import_pajek(&golden).map_err(|e| e.to_string())?;
    ensure(write_pajek(&g) == text, "golden file not reproduced byte for byte")?;
    ensure(same_graph(&g, &passnet::passmap::read_pajek(&text).unwrap()), "re-read differs")?;
    Ok("50 random graphs round-trip; golden file byte-equal".into())
}

fn c7_network_count() -> Check {
    let out = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = run_networks(&fixture_manifest(), out.path()).map_err(|e| e.to_string())?;
    for id in FIXTURE_MATCHES {
        let n = run
            .written
            .iter()
            .filter(|p| p.strip_prefix(out.path().join("networks").join(id)).is_ok())
            .count();
        ensure(n == 12, format!("match {id}: {n} player networks"))?;
    }
    ensure(run.written.len() == 12 * FIXTURE_MATCHES.len(), "total")?;
    Ok(format!(
        "{} matches -> {} player networks (12 each); 789 matches -> {}",
        FIXTURE_MATCHES.len(),
        run.written.len(),
        12 * 789
    ))
}

/// Event file of Real Madrid vs Barcelona, La Liga 2017/18, found through the match listings.
fn find_clasico(root: &Path) -> Option<PathBuf> {
    let matches = root.join("matches");
    for comp in std::fs::read_dir(&matches).ok()?.flatten() {
        for season in std::fs::read_dir(comp.path()).ok()?.flatten() {
            let Ok(text) = std::fs::read_to_string(season.path()) else { continue };
            let Ok(serde_json::Value::Array(list)) = serde_json::from_str(&text) else { continue };
            for m in list {
                let home = m["home_team"]["home_team_name"].as_str();
                let away = m["away_team"]["away_team_name"].as_str();
                let season_name = m["season"]["season_name"].as_str();
                if home == Some("Real Madrid") && away == Some("Barcelona") && season_name == Some("2017/2018") {
                    let id = m["match_id"].as_u64()?;
                    return Some(root.join("events").join(format!("{id}.json")));
                }
            }
        }
    }
    None
}

/// Relative change of Barcelona's betweenness std across half time.
fn half_time_change(events: &Path, team: &str) -> Result<f64, String> {
    let stream = parse_match_file(events).map_err(|e| e.to_string())?;
    let [half, ..] = detect_key_events(&stream);
    let split = split_on_event(&stream, &TeamId::from(team), &half);
    let d = delta_std(&betweenness(&split.before), &betweenness(&split.after)).ok_or("empty half")?;
    d.relative_delta.ok_or_else(|| "zero first-half spread".into())
}

fn c8_clasico() -> Check {
    let reference = FIXTURE_MATCHES
        .iter()
        .filter_map(|id| {
            let stream = parse_match_file(fixture_events(id)).ok()?;
            let team = stream.home_team_id.clone()?;
            Some(format!("{id}: {:+.1}%", 100.0 * half_time_change(&fixture_events(id), team.as_str()).ok()?))
        })
        .collect::<Vec<_>>()
        .join(", ");
    let Some(root) = data_root() else {
        return Err(format!(
            "open data not available (set {DATA_ROOT_ENV}); fixture home teams for reference: {reference}"
        ));
    };
    let events = find_clasico(&root).ok_or("2017/18 Real Madrid-Barcelona not in the match listings")?;
    let rel = half_time_change(&events, "217")?;
    ensure(
        (0.30..=0.70).contains(&rel),
        format!("second-half betweenness std changed by {:+.1}% (want +30% to +70%)", 100.0 * rel),
    )?;
    Ok(format!("second-half betweenness std {:+.1}%", 100.0 * rel))
}

fn directional(report: &AggregateReport) -> (Vec<String>, Vec<String>) {
    let mut ok = Vec::new();
    let mut bad = Vec::new();
    let mut record = |pass: bool, msg: String| if pass { ok.push(msg) } else { bad.push(msg) };

    let strong: Vec<_> = report.motifs.iter().filter(|m| m.median_z.is_some_and(|z| z > 3.0)).collect();
    let names: Vec<String> = strong
        .iter()
        .map(|m| format!("{} {:.2}", m.name, m.median_z.unwrap()))
        .collect();
    record(strong.len() >= 4, format!("(a) {} motifs with median z > 3 [{}]", strong.len(), names.join(", ")));

    let mean = |e: &str, role: &str, m: &str| report.delta(e, role, m).and_then(|d| d.mean);
    let goal = mean("first_goal", "all", "intensity");
    record(goal.is_some_and(|v| v < 0.0), format!("(b) first goal intensity delta {goal:?}"));

    let acting = mean("first_dismissal", "acting", "betweenness");
    let opposing = mean("first_dismissal", "opposing", "betweenness");
    record(
        acting.is_some_and(|v| v > 0.0) && opposing.is_some_and(|v| v > 0.0),
        format!("(c) dismissal betweenness delta acting {acting:?}, opposing {opposing:?}"),
    );

    for e in [KeyEventKind::HalfTime, KeyEventKind::FirstGoal, KeyEventKind::FirstDismissal] {
        let c = mean(e.slug(), "all", "closeness");
        let b = mean(e.slug(), "all", "betweenness");
        let pass = matches!((c, b), (Some(c), Some(b)) if c.abs() < 0.25 * b.abs());
        record(pass, format!("(d) {}: closeness {c:?} vs betweenness {b:?}", e.slug()));
    }
    (ok, bad)
}

fn corpus_report(manifest: &CorpusManifest, out: &Path) -> Result<AggregateReport, String> {
    let settings = Settings {
        seed: 1,
        ensemble_size: 100,
        fragments_sample: Some(manifest.matches.len()),
        ..Settings::default()
    };
    run_analysis(manifest, &settings, out).map_err(|e| e.to_string())?;
    run_aggregate(out).map_err(|e| e.to_string())
}

fn c9_directional() -> Check {
    const SUBSAMPLE: usize = 32;
    let out = tempfile::tempdir().map_err(|e| e.to_string())?;
    let Some(root) = data_root() else {
        let report = corpus_report(&fixture_manifest(), out.path())?;
        let (ok, bad) = directional(&report);
        return Err(format!(
            "open data not available (set {DATA_ROOT_ENV}); on the {} fixtures: holds {}; fails {}",
            FIXTURE_MATCHES.len(),
            ok.join("; "),
            bad.join("; ")
        ));
    };
    let all = CorpusManifest::load(&root.join("events"), Some(&root)).map_err(|e| e.to_string())?;
    let mut manifest = CorpusManifest::new(all.sorted().into_iter().take(SUBSAMPLE).collect());
    manifest.settings = all.settings;
    ensure(manifest.matches.len() >= SUBSAMPLE, format!("only {} matches found", manifest.matches.len()))?;
    let report = corpus_report(&manifest, out.path())?;
    let (ok, bad) = directional(&report);
    if bad.is_empty() {
        Ok(format!("{} matches: {}", report.matches, ok.join("; ")))
    } else {
        Err(format!("{} matches: fails {}; holds {}", report.matches, bad.join("; "), ok.join("; ")))
    }
}

fn c10_determinism() -> Check {
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    let settings = Settings {
        seed: 2024,
        ..Settings::default()
    };
    for out in [a.path(), b.path()] {
        run_networks(&fixture_manifest(), out).map_err(|e| e.to_string())?;
        run_analysis(&fixture_manifest(), &settings, out).map_err(|e| e.to_string())?;
        run_aggregate(out).map_err(|e| e.to_string())?;
        run_plots(out).map_err(|e| e.to_string())?;
    }
    let (ta, tb) = (tree(a.path()), tree(b.path()));
    ensure(ta.keys().eq(tb.keys()), "different file sets")?;
    if let Some((path, _)) = ta.iter().find(|(p, bytes)| tb[*p] != **bytes) {
        return Err(format!("{} differs", path.display()));
    }
    ensure(aggregate(a.path()).ok() == aggregate(b.path()).ok(), "reports differ")?;
    Ok(format!("{} files byte-identical across two runs", ta.len()))
}

const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, name: "atlas cardinality", data_dependent: false, budget: Some(Duration::from_secs(1)), run: c1_atlas },
    Criterion { id: 2, name: "orbit/motif consistency", data_dependent: false, budget: Some(Duration::from_secs(60)), run: c2_orbits },
    Criterion { id: 3, name: "significance profile algebra", data_dependent: false, budget: None, run: c3_profile_algebra },
    Criterion { id: 4, name: "centrality oracles", data_dependent: false, budget: None, run: c4_centrality },
    Criterion { id: 5, name: "intensity formula", data_dependent: false, budget: None, run: c5_intensity },
    Criterion { id: 6, name: "Pajek round-trip", data_dependent: false, budget: None, run: c6_pajek },
    Criterion { id: 7, name: "network count", data_dependent: false, budget: None, run: c7_network_count },
    Criterion { id: 8, name: "half-time betweenness spread, 2017/18 Clasico", data_dependent: true, budget: None, run: c8_clasico },
    Criterion { id: 9, name: "directional corpus checks", data_dependent: true, budget: None, run: c9_directional },
    Criterion { id: 10, name: "determinism", data_dependent: false, budget: None, run: c10_determinism },
];

#[test]
fn acceptance_criteria() {
    let mut required_failures = Vec::new();
    for c in &CRITERIA {
        let start = Instant::now();
        let mut result = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(budget)) = (&result, c.budget) {
            if elapsed > budget {
                result = Err(format!("took {elapsed:.2?}, budget {budget:?}"));
            }
        }
        let (status, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {:>2} {status}: {} ({elapsed:.2?}) - {detail}", c.id, c.name);
        if result.is_err() && !c.data_dependent {
            required_failures.push(c.id);
        }
    }
    assert!(required_failures.is_empty(), "failed criteria: {required_failures:?}");
}
