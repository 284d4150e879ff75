//! End-to-end corpus run: networks, analyses, aggregate report and plots.
//!
//! ```text
//! cargo run --release --example corpus_pipeline -- [MANIFEST_OR_EVENTS_DIR] [OUT_DIR]
//! ```
//!
//! Without arguments it processes the bundled fixture matches.

use std::path::PathBuf;

use passnet::pipeline::{
    run_aggregate, run_analysis, run_networks, run_plots, CorpusManifest, Settings,
};

fn main() -> passnet::Result<()> {
    let mut args = std::env::args_os().skip(1).map(PathBuf::from);
    let source = args.next().unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/open-data/events")
    });
    let out = args.next().unwrap_or_else(|| std::env::temp_dir().join("passnet-example-corpus"));

    let manifest = CorpusManifest::load(&source, None)?;
    let settings = Settings {
        seed: 7,
        ..Settings::default()
    }
    .with_manifest(&manifest.settings);

    let networks = run_networks(&manifest, &out)?;
    println!("{} player networks from {} matches", networks.written.len(), networks.matches);
    let analysis = run_analysis(&manifest, &settings, &out)?;
    for skip in networks.skipped.iter().chain(&analysis.skipped) {
        println!("skipped {}: {}", skip.match_id, skip.reason);
    }
    let report = run_aggregate(&out)?;
    for d in report.deltas.iter().filter(|d| d.team_role == "all") {
        println!(
            "{:<16} {:<12} n = {:>3}  mean delta {:>+9.4}",
            d.event_kind,
            d.measure,
            d.count,
            d.mean.unwrap_or(f64::NAN)
        );
    }
    for m in &report.motifs {
        if let Some(z) = m.median_z {
            println!("motif {:<16} median z {z:>+7.2}", m.name);
        }
    }
    let plots = run_plots(&out)?;
    println!("{} plots; everything under {}", plots.len(), out.display());
    Ok(())
}
