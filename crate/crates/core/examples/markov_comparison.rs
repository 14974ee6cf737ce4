//! Regenerative recency policy against the baselines on Gilbert-Elliot bands.
//!
//! `cargo run --release --example markov_comparison -- [fig11|fig12] [runs]`

use rbl::{monte_carlo, Preset};

fn main() -> rbl::Result<()> {
    let mut args = std::env::args().skip(1);
    let preset: Preset = args.next().as_deref().unwrap_or("fig11").parse()?;
    let runs = args.next().map_or(100, |s| s.parse().expect("runs"));
    let mut scenario = preset.expand();
    scenario.runs = runs;

    let mus = scenario.stationary_means()?;
    println!(
        "stationary means: {:?}",
        mus.iter()
            .map(|m| (m * 1e3).round() / 1e3)
            .collect::<Vec<_>>()
    );
    let series = monte_carlo(&scenario, 0)?;
    println!(
        "{:<18} {:>8} {:>8} {:>8} {:>8}",
        "policy", "2^9", "2^12", "2^15", "/ln n"
    );
    for p in &series.policies {
        let at = |n: u64| p.at(n).map_or(f64::NAN, |s| s.mean_subopt);
        let last = p.at(1 << 15).expect("checkpoint");
        println!(
            "{:<18} {:>8.1} {:>8.1} {:>8.1} {:>8.2}",
            p.label,
            at(1 << 9),
            at(1 << 12),
            last.mean_subopt,
            last.mean_subopt_over_ln_n
        );
    }
    Ok(())
}
