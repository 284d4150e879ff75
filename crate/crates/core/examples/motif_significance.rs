//! Graphlet counts, orbit profiles and motif significance against degree-preserving random graphs.
//!
//! ```text
//! cargo run --release --example motif_significance -- [EVENTS.json] [ENSEMBLE_SIZE]
//! ```

use std::path::PathBuf;

use passnet::events::{parse_match_file, successful_passes, Window};
use passnet::fragments::{
    atlas, configuration_ensemble, count_motifs_and_orbits, opp_profile, significance_profile,
    DEFAULT_Z_CAP,
};
use passnet::passmap::{build_passmap, prune_median};

fn main() -> passnet::Result<()> {
    let mut args = std::env::args().skip(1);
    let events = args.next().map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/open-data/events/15986.json")
    });
    let size: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);
    let stream = parse_match_file(&events)?;
    let home = stream.home_team_id.clone().expect("two teams");

    let g = prune_median(&build_passmap(home.clone(), "whole", &successful_passes(&stream, &home, &Window::whole_match()).passes));
    let (motifs, orbits) = count_motifs_and_orbits(&g);
    let ensemble = configuration_ensemble(&g, size, 1)?;
    let sp = significance_profile(&motifs.as_f64(), &ensemble, DEFAULT_Z_CAP);

    println!("team {home}, pruned whole-match network: {} players, {} arcs", g.node_count(), g.arc_count());
    println!("{:>2} {:<16} {:>6} {:>9} {:>8} {:>8} {:>7}", "#", "graphlet", "count", "null mean", "null sd", "z", "SP");
    for gl in &atlas().graphlets {
        let i = gl.index;
        println!(
            "{i:>2} {:<16} {:>6} {:>9.2} {:>8.2} {:>8.2} {:>7.3}{}",
            gl.name,
            motifs.0[i],
            ensemble.mean[i],
            ensemble.std[i],
            sp.z[i],
            sp.sp[i],
            if sp.capped[i] { "  (capped)" } else { "" }
        );
    }

    let opp = opp_profile(&orbits);
    println!("\norbit occurrences per player:");
    for gl in &atlas().graphlets {
        let values: Vec<String> = gl.orbits.clone().map(|o| format!("o{o}={:.2}", opp.0[o])).collect();
        println!("  {:<16} {}", gl.name, values.join(" "));
    }
    Ok(())
}
