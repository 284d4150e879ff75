//! Leiden and clique-percolation communities compared with the playing lines.
//!
//! ```text
//! cargo run --example community_detection -- [EVENTS.json] [RESOLUTION]
//! ```

use std::path::PathBuf;

use passnet::community::{
    clique_percolation, leiden, modularity, FormationGroundTruth, Partition, UndirectedGraph,
};
use passnet::events::{parse_match_file, successful_passes, Window};
use passnet::passmap::{build_passmap, prune_median, Passmap};

fn show(label: &str, g: &Passmap, p: &Partition, gt: Option<&FormationGroundTruth>, names: &dyn Fn(&passnet::PlayerId) -> String) {
    let u = UndirectedGraph::from_passmap(g);
    // Players outside the partition (e.g. substitutes without a line) count as singletons.
    let offset = p.community_count();
    let membership: Vec<usize> = g
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, n)| p.community_of(&n.id).unwrap_or(offset + i))
        .collect();
    let nmi = gt.and_then(|gt| gt.lines_nmi(p, true).ok().flatten());
    println!("  {label}: {} communities, modularity {:.3}, NMI with lines {:?}", p.community_count(), modularity(&u, &membership, 1.0), nmi.map(|v| (v * 1000.0).round() / 1000.0));
    for (i, members) in p.communities().iter().enumerate() {
        let list: Vec<String> = members
            .iter()
            .map(|m| {
                let line = gt.and_then(|gt| gt.line_of(m)).map_or("?", |l| l.as_str());
                format!("{} ({line})", names(m))
            })
            .collect();
        println!("    {i}: {}", list.join(", "));
    }
}

fn main() -> passnet::Result<()> {
    let mut args = std::env::args().skip(1);
    let events = args.next().map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/open-data/events/15986.json")
    });
    let resolution: f64 = args.next().and_then(|r| r.parse().ok()).unwrap_or(1.0);
    let stream = parse_match_file(&events)?;
    let names = |id: &passnet::PlayerId| stream.player_names.get(id).cloned().unwrap_or_else(|| id.to_string());

    for team in stream.teams() {
        let g = build_passmap(team.clone(), "whole", &successful_passes(&stream, team, &Window::whole_match()).passes);
        let pruned = prune_median(&g);
        let gt = stream.lineup(team).map(FormationGroundTruth::from_lineup);
        println!("team {team}: {} players, {} arcs after pruning", pruned.node_count(), pruned.arc_count());
        show("leiden", &pruned, &leiden(&pruned, resolution, 7)?, gt.as_ref(), &names);
        let cover = clique_percolation(&pruned, 3)?;
        show("clique percolation (k = 3)", &pruned, &cover.flatten(), gt.as_ref(), &names);
        if let Some(gt) = &gt {
            let ids: Vec<_> = pruned.nodes().iter().map(|n| n.id.clone()).collect();
            show("playing lines", &pruned, &gt.playing_lines_partition(&ids, true), Some(gt), &names);
        }
    }
    Ok(())
}
