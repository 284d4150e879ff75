//! Criterion-level checks shared by the module tests and the acceptance suite.
//! Each panics with a description on the first mismatch.

use std::collections::BTreeMap;

use passnet::centrality::{betweenness, closeness, flow_centrality, CentralityVector};
use passnet::events::{detect_key_events, parse_match_file, shots, successful_passes, Window};
use passnet::fragments::{atlas, count_digraph, significance_profile, Digraph, EnsembleStats};
use passnet::intensity::{split_intensity, window_intensity};
use passnet::passmap::{
    build_passmap, read_pajek, split_on_event, write_pajek, AugmentedPassmap, Passmap, SHOT_OFF_ID,
    SHOT_ON_ID,
};
use passnet::{PlayerId, TeamId};
use rand::Rng;
use serde_json::Value;

use super::{
    brute_betweenness, brute_closeness, brute_force_counts, fixture_events, player, rng,
    WeightedDigraph, FIXTURE_MATCHES,
};

const TOL: f64 = 1e-9;

pub fn assert_close(got: &CentralityVector, want: &[f64], ctx: &str) {
    assert_eq!(got.scores.len(), want.len(), "{ctx}");
    for ((id, g), w) in got.scores.iter().zip(want) {
        assert!((g - w).abs() <= TOL, "{ctx}: {id} got {g}, oracle {w}");
    }
}

/// Random graph plus two sinks receiving shot arcs from random players.
fn with_shots(rng: &mut impl Rng, g: &WeightedDigraph) -> (WeightedDigraph, AugmentedPassmap) {
    let mut aug = g.clone();
    aug.n = g.n + 2;
    for p in 0..g.n {
        for sink in [g.n, g.n + 1] {
            if rng.gen_bool(0.3) {
                aug.arcs.insert((p, sink), rng.gen_range(1..=3));
            }
        }
    }
    let mut pm = g.to_passmap();
    let shot_on = pm.add_node(PlayerId::from(SHOT_ON_ID));
    let shot_off = pm.add_node(PlayerId::from(SHOT_OFF_ID));
    for (&(a, b), &w) in aug.arcs.iter().filter(|((_, b), _)| *b >= g.n) {
        let sink = if b == g.n { SHOT_ON_ID } else { SHOT_OFF_ID };
        pm.add_arc(player(a), PlayerId::from(sink), w);
    }
    (
        aug,
        AugmentedPassmap {
            graph: pm,
            shot_on,
            shot_off,
        },
    )
}

/// Runs all three measures against the path-enumeration oracle on `count` random graphs.
pub fn check_centrality(count: usize, seed: u64) {
    let mut r = rng(seed);
    for case in 0..count {
        let n = r.gen_range(1..=6);
        let p = r.gen_range(0.15..0.8);
        let g = WeightedDigraph::random(&mut r, n, p, 5);
        let pm = g.to_passmap();
        assert_close(&betweenness(&pm), &brute_betweenness(&g), &format!("betweenness case {case}"));
        assert_close(&closeness(&pm), &brute_closeness(&g), &format!("closeness case {case}"));

        let (aug, augmented) = with_shots(&mut r, &g);
        let flow = flow_centrality(&augmented);
        assert_close(&flow, &brute_betweenness(&aug)[..g.n], &format!("flow case {case}"));
        assert!(flow.scores.iter().all(|(id, _)| id.as_str() != SHOT_ON_ID && id.as_str() != SHOT_OFF_ID));
    }
}

/// Counts on random digraphs equal the permutation oracle, and every motif
/// contributes exactly `size` orbit occurrences.
pub fn check_counts(cases: usize, seed: u64) {
    let a = atlas();
    let mut r = rng(seed);
    for case in 0..cases {
        let n = r.gen_range(1..=9);
        let p = r.gen_range(0.05..0.75);
        let g = WeightedDigraph::random(&mut r, n, p, 1);
        let d = Digraph::from_arcs(n, g.arcs.keys().copied());
        let (motifs, orbits) = count_digraph(&d);
        let (want_motifs, want_orbits) = brute_force_counts(a, n, |x, y| g.has(x, y));
        assert_eq!(motifs.0, want_motifs, "case {case}");
        assert_eq!(orbits, want_orbits, "case {case}");
        for gl in &a.graphlets {
            let occurrences: u64 = orbits.iter().map(|row| row[gl.orbits.clone()].iter().sum::<u64>()).sum();
            assert_eq!(occurrences, gl.nodes as u64 * motifs.0[gl.index], "case {case} {}", gl.name);
        }
    }
}

pub fn stats(mean: Vec<f64>, std: Vec<f64>) -> EnsembleStats {
    EnsembleStats {
        size: 100,
        master_seed: 0,
        mean,
        std,
        frozen: false,
    }
}

/// Checks the unit-length and zero-vector properties of significance profiles.
pub fn check_profile_algebra(counts: &[f64], mean: &[f64], std: &[f64]) {
    let sp = significance_profile(counts, &stats(mean.to_vec(), std.to_vec()), 10.0);
    let norm: f64 = sp.sp.iter().map(|v| v * v).sum();
    if sp.z.iter().any(|&z| z != 0.0) {
        assert!((norm - 1.0).abs() <= 1e-12, "sum of squares {norm}");
    } else {
        assert_eq!(norm, 0.0);
    }
    let at_mean = significance_profile(mean, &stats(mean.to_vec(), std.to_vec()), 10.0);
    assert!(at_mean.z.iter().all(|&z| z == 0.0));
    assert!(at_mean.sp.iter().all(|&s| s == 0.0));
}

pub fn same_graph(a: &Passmap, b: &Passmap) -> bool {
    let ids = |g: &Passmap| g.nodes().iter().map(|n| n.id.clone()).collect::<Vec<_>>();
    ids(a) == ids(b) && a.weight_map() == b.weight_map()
}

/// Export then import on `count` random graphs with awkward labels.
pub fn check_round_trips(count: usize, seed: u64) {
    let mut r = rng(seed);
    let alphabet: Vec<char> = "ab \"\\é%*1".chars().collect();
    for case in 0..count {
        let n = r.gen_range(0..12);
        let density = r.gen_range(0.0..0.7);
        let g = WeightedDigraph::random(&mut r, n, density, 60);
        let mut pm = Passmap::new("t".into(), "");
        let labels: Vec<PlayerId> = (0..n)
            .map(|i| {
                let len = r.gen_range(0..6);
                let s: String = (0..len).map(|_| alphabet[r.gen_range(0..alphabet.len())]).collect();
                PlayerId::from(format!("{i}{s}").as_str())
            })
            .collect();
        for l in &labels {
            pm.add_node(l.clone());
        }
        for (&(a, b), &w) in &g.arcs {
            pm.add_arc(labels[a].clone(), labels[b].clone(), w);
        }
        let text = write_pajek(&pm);
        let back = read_pajek(&text).unwrap();
        assert!(same_graph(&pm, &back), "case {case}:\n{text}");
        assert_eq!(write_pajek(&back), text, "case {case}");
    }
}

fn expected() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/oracles/raw_event_expected.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn close(a: Option<f64>, b: &Value, ctx: &str) {
    match (a, b.as_f64()) {
        (None, None) => {}
        (Some(x), Some(y)) => assert!((x - y).abs() <= TOL, "{ctx}: {x} vs {y}"),
        other => panic!("{ctx}: {other:?}"),
    }
}

/// Compares every fixture against the frozen raw-event aggregation.
pub fn check_fixtures_against_oracle() {
    let expected = expected();
    for id in FIXTURE_MATCHES {
        let stream = parse_match_file(fixture_events(id)).unwrap();
        let want = &expected[id];
        let [half, goal, red] = detect_key_events(&stream);

        close(half.time.map(|t| t.clock), &want["key_events"]["half_time_clock"], id);
        for (ev, key) in [(&goal, "first_goal"), (&red, "first_dismissal")] {
            let w = &want["key_events"][key];
            if w.is_null() {
                assert!(!ev.occurred(), "{id} {key}");
                continue;
            }
            let t = ev.time.unwrap();
            assert_eq!(u64::from(t.period), w["period"].as_u64().unwrap(), "{id} {key}");
            close(Some(t.clock), &w["clock"], key);
            assert_eq!(ev.acting_team_id.as_ref().unwrap().as_str(), w["team"].as_str().unwrap());
        }

        let teams: Vec<TeamId> = stream.teams().cloned().collect();
        assert_eq!(teams.len(), want["teams"].as_object().unwrap().len());
        for team in &teams {
            let wt = &want["teams"][team.as_str()];
            let whole = Window::whole_match();
            let g = build_passmap(team.clone(), "whole", &successful_passes(&stream, team, &whole).passes);
            let tally: BTreeMap<String, u64> = g
                .arcs()
                .map(|(a, b, w)| (format!("{a}->{b}"), u64::from(w)))
                .collect();
            let want_tally: BTreeMap<String, u64> = wt["passes"]
                .as_object()
                .unwrap()
                .iter()
                .map(|(k, v)| (k.clone(), v.as_u64().unwrap()))
                .collect();
            assert_eq!(tally, want_tally, "{id} {team}");

            let rec = window_intensity(&stream, &g, &whole);
            assert_eq!(rec.total_weight, wt["whole"]["passes"].as_u64().unwrap());
            close(Some(rec.possession), &wt["whole"]["possession"], "possession");
            close(rec.intensity, &wt["whole"]["intensity"], "intensity");

            let shot_list = shots(&stream, team, &whole);
            let on = shot_list.iter().filter(|s| s.outcome.on_target()).count() as u64;
            assert_eq!(on, wt["shots"]["on_target"].as_u64().unwrap(), "{id} {team}");
            assert_eq!(shot_list.len() as u64 - on, wt["shots"]["off_target"].as_u64().unwrap());

            for ev in [&half, &goal, &red] {
                let key = ev.kind.slug();
                let ws = &wt["splits"][key];
                if ws.is_null() {
                    assert!(!ev.occurred());
                    continue;
                }
                let s = split_intensity(&stream, &split_on_event(&stream, team, ev));
                for (side, rec) in [("before", &s.before), ("after", &s.after)] {
                    let ctx = format!("{id} {team} {key} {side}");
                    assert_eq!(rec.total_weight, ws[side]["passes"].as_u64().unwrap(), "{ctx}");
                    close(Some(rec.possession), &ws[side]["possession"], &ctx);
                    close(rec.intensity, &ws[side]["intensity"], &ctx);
                }
            }
        }
    }
}
