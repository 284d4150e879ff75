//! Betweenness, closeness and flow centrality spread before and after each key event.
//!
//! ```text
//! cargo run --example centrality_deltas -- [EVENTS.json]
//! ```

use std::path::PathBuf;

use passnet::centrality::{betweenness, split_deltas};
use passnet::events::{detect_key_events, parse_match_file};
use passnet::passmap::split_on_event;

fn main() -> passnet::Result<()> {
    let events = std::env::args_os().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/open-data/events/15986.json")
    });
    let stream = parse_match_file(&events)?;
    let key_events = detect_key_events(&stream);

    println!("{:<8} {:<16} {:<9} {:<12} {:>9} {:>9} {:>9}", "team", "event", "role", "measure", "before", "after", "delta");
    for team in stream.teams() {
        for ev in &key_events {
            let split = split_on_event(&stream, team, ev);
            for d in split_deltas(&stream, &split) {
                match d.change {
                    Some(c) => println!(
                        "{:<8} {:<16} {:<9} {:<12} {:>9.4} {:>9.4} {:>+9.4}",
                        team.as_str(),
                        ev.kind.slug(),
                        d.team_role.slug(),
                        d.measure.slug(),
                        c.std_before,
                        c.std_after,
                        c.delta
                    ),
                    None => println!("{:<8} {:<16} {:<9} {:<12} (no after window)", team.as_str(), ev.kind.slug(), d.team_role.slug(), d.measure.slug()),
                }
            }
        }
    }

    // The most central players of the first half, home side.
    if let Some(home) = &stream.home_team_id {
        let split = split_on_event(&stream, home, &key_events[0]);
        let mut scores = betweenness(&split.before).scores;
        scores.sort_by(|a, b| b.1.total_cmp(&a.1));
        println!("\nfirst-half betweenness, {home}:");
        for (id, s) in scores.iter().take(5) {
            let name = stream.player_names.get(id).map_or(id.as_str(), String::as_str);
            println!("  {name:<32} {s:.4}");
        }
    }
    Ok(())
}
