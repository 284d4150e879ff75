mod common;

use common::checks::{check_round_trips, same_graph};
use common::{fixture_events, FIXTURE_MATCHES};
use passnet::events::{detect_key_events, parse_match_file, successful_passes, Window};
use passnet::passmap::{
    build_passmap, import_pajek, median_weight, prune_median, read_pajek, split_on_event,
    write_pajek, Passmap,
};
use passnet::PlayerId;
use proptest::prelude::*;

fn golden_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/golden/sample.net")
}

fn sample() -> Passmap {
    let mut g = Passmap::new("217".into(), "sample");
    g.add_arc("5503".into(), "Jordi \"Alba\"".into(), 7);
    g.add_arc("5503".into(), "C:\\back".into(), 1);
    g.add_arc("Jordi \"Alba\"".into(), "5503".into(), 12);
    g.add_arc("C:\\back".into(), "Jordi \"Alba\"".into(), 4);
    g.add_node("bench".into());
    g
}

#[test]
fn sample_network_matches_golden_file() {
    let golden = std::fs::read_to_string(golden_path()).unwrap();
    assert_eq!(write_pajek(&sample()), golden);
    let back = import_pajek(golden_path()).unwrap();
    assert_eq!(back.weight_map(), sample().weight_map());
    assert_eq!(write_pajek(&back), golden);
}

#[test]
fn export_import_is_identity_on_random_graphs() {
    check_round_trips(50, 0xba1e);
}

proptest! {
    #[test]
    fn any_label_survives(label in "\\PC{1,12}", w in 1u32..1000) {
        let mut g = Passmap::new("t".into(), "");
        g.add_arc(PlayerId::from(label.as_str()), "x".into(), w);
        let back = read_pajek(&write_pajek(&g)).unwrap();
        prop_assert!(same_graph(&g, &back));
    }

    #[test]
    fn pruning_keeps_exactly_the_above_median_arcs(weights in prop::collection::vec(1u32..20, 1..30)) {
        let mut g = Passmap::new("t".into(), "");
        for (i, &w) in weights.iter().enumerate() {
            g.add_arc(PlayerId::from(format!("a{i}").as_str()), "hub".into(), w);
        }
        let median = median_weight(&g).unwrap();
        let pruned = prune_median(&g);
        prop_assert_eq!(pruned.node_count(), g.node_count());
        let kept = weights.iter().filter(|&&w| f64::from(w) > median).count();
        prop_assert_eq!(pruned.arc_count(), kept);
    }
}

#[test]
fn malformed_pajek_reports_the_line() {
    let err = read_pajek("*Vertices 2\n1 \"a\"\n2 \"b\"\n*Arcs\n1 3 2\n").unwrap_err();
    assert!(err.to_string().contains("line 5"), "{err}");
    assert!(read_pajek("").is_err());
}

#[test]
fn splits_conserve_passes() {
    for id in FIXTURE_MATCHES {
        let stream = parse_match_file(fixture_events(id)).unwrap();
        for team in stream.teams().cloned().collect::<Vec<_>>() {
            let whole = build_passmap(
                team.clone(),
                "whole",
                &successful_passes(&stream, &team, &Window::whole_match()).passes,
            );
            for ev in detect_key_events(&stream) {
                let s = split_on_event(&stream, &team, &ev);
                assert_eq!(
                    s.before.total_weight() + s.after.total_weight(),
                    whole.total_weight(),
                    "{id} {team} {:?}",
                    ev.kind
                );
                for ((a, b), w) in whole.weight_map() {
                    assert_eq!(s.before.weight(&a, &b) + s.after.weight(&a, &b), w);
                }
                if !ev.occurred() {
                    assert!(s.after.is_empty());
                }
            }
        }
    }
}
