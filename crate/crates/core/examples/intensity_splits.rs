//! Passes per second of possession on either side of each key event.
//!
//! ```text
//! cargo run --example intensity_splits -- [EVENTS.json]
//! ```

use std::path::PathBuf;

use passnet::events::{detect_key_events, parse_match_file};
use passnet::intensity::split_intensity;
use passnet::passmap::split_on_event;

fn main() -> passnet::Result<()> {
    let events = std::env::args_os().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/open-data/events/15986.json")
    });
    let stream = parse_match_file(&events)?;
    let fmt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x:.4}"));
    for team in stream.teams() {
        for ev in detect_key_events(&stream) {
            let s = split_intensity(&stream, &split_on_event(&stream, team, &ev));
            println!(
                "{:<6} {:<16} {:<9} before {:>4} passes / {:>7.1} s = {:>7}   after {:>4} / {:>7.1} s = {:>7}   delta {}",
                team.as_str(),
                ev.kind.slug(),
                s.team_role.slug(),
                s.before.total_weight,
                s.before.possession,
                fmt(s.before.intensity),
                s.after.total_weight,
                s.after.possession,
                fmt(s.after.intensity),
                fmt(s.delta())
            );
        }
    }
    Ok(())
}
