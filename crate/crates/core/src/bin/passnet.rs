use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use passnet::pipeline::{
    ingest, run_aggregate, run_analysis, run_networks, run_plots, Analyses, CorpusManifest,
    Settings, DATA_ROOT_ENV,
};
use passnet::{Error, Result};

#[derive(Parser)]
#[command(name = "passnet", version, about = "Football pass networks around key match events")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Corpus {
    /// Manifest (`.json`, or CSV with `match_id,events[,formation]`) or a directory of event files.
    #[arg(long = "matches", value_name = "MANIFEST")]
    matches: Option<PathBuf>,
    /// Data root: resolves relative manifest paths; `<root>/events` is the default corpus.
    #[arg(long, env = DATA_ROOT_ENV)]
    data_root: Option<PathBuf>,
    /// Output root.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Corpus {
    fn load(&self) -> Result<CorpusManifest> {
        let root = self.data_root.as_deref();
        match (&self.matches, root) {
            (Some(m), _) => CorpusManifest::load(m, root),
            (None, Some(r)) => {
                let events = r.join("events");
                CorpusManifest::load(if events.is_dir() { &events } else { r }, Some(r))
            }
            (None, None) => Err(Error::InvalidArgument(format!(
                "pass --matches or set {DATA_ROOT_ENV}"
            ))),
        }
    }

    fn out(&self, manifest: &CorpusManifest) -> PathBuf {
        self.out
            .clone()
            .or_else(|| manifest.settings.output.clone())
            .unwrap_or_else(|| PathBuf::from("passnet-out"))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse every match and write a summary table.
    Ingest(Corpus),
    /// Write before/after Pajek networks for every match, team and key event.
    Networks(Corpus),
    /// Run the analyses and write result tables.
    Analyze {
        #[command(flatten)]
        corpus: Corpus,
        /// Run seed for Leiden and the random-graph ensembles [default: 0].
        #[arg(long)]
        seed: Option<u64>,
        /// Random graphs per network for motif z-scores [default: 100].
        #[arg(long)]
        ensemble_size: Option<usize>,
        /// Leiden modularity resolution [default: 1.0].
        #[arg(long)]
        resolution: Option<f64>,
        /// Clique size for clique percolation.
        #[arg(long, default_value_t = 3)]
        clique_k: usize,
        /// Matches (by id order) that get fragment analyses; 0 means all.
        #[arg(long)]
        fragments_sample: Option<usize>,
        /// Comma-separated subset of centrality,intensity,communities,fragments.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Summarise result tables into report.json and report.csv.
    Aggregate {
        #[arg(long)]
        out: PathBuf,
    },
    /// Render SVG plots from result tables.
    Plot {
        #[arg(long)]
        out: PathBuf,
    },
}

fn analyses(only: &[String]) -> Result<Analyses> {
    if only.is_empty() {
        return Ok(Analyses::default());
    }
    let mut a = Analyses {
        centrality: false,
        intensity: false,
        communities: false,
        fragments: false,
    };
    for name in only {
        match name.trim() {
            "centrality" => a.centrality = true,
            "intensity" => a.intensity = true,
            "communities" => a.communities = true,
            "fragments" => a.fragments = true,
            other => return Err(Error::InvalidArgument(format!("unknown analysis `{other}`"))),
        }
    }
    Ok(a)
}

fn report_skips(skips: &[passnet::pipeline::Skip]) {
    for s in skips {
        eprintln!("skipped {}: {}", s.match_id, s.reason);
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Ingest(corpus) => {
            let manifest = corpus.load()?;
            let out = corpus.out(&manifest);
            let (rows, skipped) = ingest(&manifest, Some(&out))?;
            report_skips(&skipped);
            println!("ingested {} matches into {}", rows.len(), out.display());
        }
        Command::Networks(corpus) => {
            let manifest = corpus.load()?;
            let out = corpus.out(&manifest);
            let run = run_networks(&manifest, &out)?;
            report_skips(&run.skipped);
            println!(
                "wrote {} player networks for {} matches under {}",
                run.written.len(),
                run.matches - run.skipped.len(),
                out.join("networks").display()
            );
        }
        Command::Analyze {
            corpus,
            seed,
            ensemble_size,
            resolution,
            clique_k,
            fragments_sample,
            only,
        } => {
            let manifest = corpus.load()?;
            let out = corpus.out(&manifest);
            let mut settings = Settings::default().with_manifest(&manifest.settings);
            if let Some(s) = seed {
                settings.seed = s;
            }
            if let Some(e) = ensemble_size {
                settings.ensemble_size = e;
            }
            if let Some(r) = resolution {
                settings.resolution = r;
            }
            if let Some(n) = fragments_sample {
                settings.fragments_sample = (n > 0).then_some(n);
            }
            settings.clique_k = clique_k;
            settings.analyses = analyses(&only)?;
            let output = run_analysis(&manifest, &settings, &out)?;
            report_skips(&output.skipped);
            for f in &output.files {
                println!("{}", f.display());
            }
        }
        Command::Aggregate { out } => {
            let report = run_aggregate(&out)?;
            println!(
                "aggregated {} matches into {}",
                report.matches,
                Path::new(&out).join("report.json").display()
            );
        }
        Command::Plot { out } => {
            let files = run_plots(&out)?;
            println!("wrote {} plots under {}", files.len(), out.join("plots").display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
