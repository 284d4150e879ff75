//! Parse an event file and print its key events, possession and pass totals.
//!
//! ```text
//! cargo run --example parse_match -- [EVENTS.json]
//! ```

use std::path::PathBuf;

use passnet::events::{detect_key_events, parse_match_file, possession_time, successful_passes, Window};

fn events_path() -> PathBuf {
    std::env::args_os().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/open-data/events/15986.json")
    })
}

fn main() -> passnet::Result<()> {
    let stream = parse_match_file(events_path())?;
    let name = |t: &passnet::TeamId| stream.team_names.get(t).cloned().unwrap_or_else(|| t.to_string());
    println!("match {}: {} events, {:.0} s played", stream.match_id, stream.events.len(), stream.played_time());

    for ev in detect_key_events(&stream) {
        match (ev.time, &ev.acting_team_id) {
            (Some(t), Some(team)) => println!("  {:<16} {t}  by {}", ev.kind.slug(), name(team)),
            (Some(t), None) => println!("  {:<16} {t}", ev.kind.slug()),
            (None, _) => println!("  {:<16} did not happen", ev.kind.slug()),
        }
    }

    let whole = Window::whole_match();
    for team in stream.teams() {
        let sel = successful_passes(&stream, team, &whole);
        println!(
            "{:<20} {:>4} completed passes ({} without recipient, {} to self), {:>6.1} s possession",
            name(team),
            sel.passes.len(),
            sel.missing_endpoint,
            sel.self_passes,
            possession_time(&stream, team, &whole)
        );
    }
    Ok(())
}
