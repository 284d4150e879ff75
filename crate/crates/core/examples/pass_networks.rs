//! Build before/after passmaps for every key event and export them as Pajek files.
//!
//! ```text
//! cargo run --example pass_networks -- [EVENTS.json] [OUT_DIR]
//! ```

use std::path::PathBuf;

use passnet::events::{detect_key_events, parse_match_file};
use passnet::passmap::{export_pajek, median_weight, prune_median, split_on_event};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args_os().skip(1).map(PathBuf::from);
    let events = args.next().unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/open-data/events/15986.json")
    });
    let out = args.next().unwrap_or_else(|| std::env::temp_dir().join("passnet-example-networks"));
    std::fs::create_dir_all(&out)?;

    let stream = parse_match_file(&events)?;
    for team in stream.teams() {
        for ev in detect_key_events(&stream) {
            let split = split_on_event(&stream, team, &ev);
            for g in [&split.before, &split.after] {
                let pruned = prune_median(g);
                println!(
                    "{team} {:<24} {:>2} players {:>3} arcs {:>4} passes, median weight {:?}, {} arcs above it",
                    g.label,
                    g.node_count(),
                    g.arc_count(),
                    g.total_weight(),
                    median_weight(g),
                    pruned.arc_count()
                );
                let file = out.join(format!("{team}_{}.net", g.label.replace('/', "_")));
                export_pajek(g, &file)?;
            }
        }
    }
    println!("Pajek files in {}", out.display());
    Ok(())
}
