use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rbl::presets::Preset;
use rbl::validation::run_all_suites;
use rbl::{monte_carlo, report, ScenarioConfig};

#[derive(Parser)]
#[command(
    name = "rbl",
    version,
    about = "Recency-based spectrum sensing simulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte Carlo experiment and write CSV.
    Run(RunArgs),
    /// Run the analysis property suites.
    Validate,
    /// List the built-in scenarios.
    Presets {
        /// Print one JSON object mapping each preset name to its scenario.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    preset: Option<Preset>,
    /// Scenario JSON file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated policy labels or names to keep.
    #[arg(long, value_delimiter = ',')]
    policies: Option<Vec<String>>,
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    horizon: Option<u64>,
    /// Master seed; RBL_SEED takes precedence when set.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; 0 uses every core. Output does not depend on it.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Append mean per-band sensing counts as `mean_m_k` columns.
    #[arg(long)]
    band_counts: bool,
}

fn run(args: RunArgs) -> rbl::Result<()> {
    let mut scenario = match (&args.preset, &args.config) {
        (Some(p), _) => p.expand(),
        (None, Some(path)) => ScenarioConfig::load(path)?,
        (None, None) => unreachable!("clap requires one source"),
    };
    if let Some(wanted) = &args.policies {
        scenario.restrict_policies(wanted)?;
    }
    if let Some(runs) = args.runs {
        scenario.runs = runs;
    }
    if let Some(h) = args.horizon {
        scenario.set_horizon(h);
    }
    let env_seed = match std::env::var("RBL_SEED") {
        Ok(s) => Some(s.trim().parse::<u64>().map_err(|_| {
            rbl::Error::Config(format!("RBL_SEED must be an unsigned integer, got `{s}`"))
        })?),
        Err(_) => None,
    };
    if let Some(seed) = env_seed.or(args.seed) {
        scenario.master_seed = seed;
    }
    scenario.validate()?;
    let series = monte_carlo(&scenario, args.workers)?;
    match &args.out {
        Some(path) => report::save_csv(&series, args.band_counts, path)?,
        None => report::write_csv(&series, args.band_counts, std::io::stdout().lock())?,
    }
    Ok(())
}

fn presets_json() -> String {
    let map: serde_json::Map<String, serde_json::Value> = Preset::ALL
        .iter()
        .map(|p| {
            let value = serde_json::to_value(p.expand()).expect("presets serialize");
            (p.name().to_string(), value)
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&map).expect("presets serialize");
    text.push('\n');
    text
}

fn presets_table() -> String {
    let mut out = String::new();
    for p in Preset::ALL {
        let s = p.expand();
        let labels: Vec<String> = s.policies.iter().map(|p| p.label()).collect();
        let mus: Vec<String> = s
            .stationary_means()
            .expect("presets are valid")
            .iter()
            .map(|m| format!("{m:.4}"))
            .collect();
        let _ = writeln!(out, "{p}: {}", p.description());
        let _ = writeln!(
            out,
            "  horizon {}  runs {}  seed {}",
            s.horizon, s.runs, s.master_seed
        );
        let _ = writeln!(out, "  means    [{}]", mus.join(", "));
        let _ = writeln!(out, "  policies {}", labels.join(", "));
    }
    out
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run(args) => match run(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::FAILURE
            }
        },
        Command::Validate => {
            let results = run_all_suites();
            let mut text = String::new();
            for r in &results {
                let tag = if r.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(text, "{tag}  {:<18} {}", r.name, r.detail);
            }
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if results.iter().all(|r| r.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Command::Presets { json } => {
            let text = if json {
                presets_json()
            } else {
                presets_table()
            };
            // A closed pipe (e.g. `| head`) is not an error for a listing.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
    }
}
