//! Recency index against KL-UCB, DSEE and RCA on five Bernoulli bands.
//!
//! `cargo run --release --example bernoulli_comparison -- [runs]`

use rbl::analysis::{lai_robbins_constants, Pmf};
use rbl::{monte_carlo, Preset};

fn main() -> rbl::Result<()> {
    let runs = std::env::args()
        .nth(1)
        .map_or(200, |s| s.parse().expect("runs"));
    let mut scenario = Preset::Fig8.expand();
    scenario.runs = runs;
    let series = monte_carlo(&scenario, 0)?;

    let horizon = scenario.horizon;
    println!("{} runs, n = {horizon}", runs);
    println!(
        "{:<14} {:>12} {:>10} {:>12}",
        "policy", "E[subopt]", "sd", "E[regret]"
    );
    for p in &series.policies {
        let s = p.at(horizon).expect("horizon is a checkpoint");
        println!(
            "{:<14} {:>12.1} {:>10.1} {:>12.2}",
            p.label, s.mean_subopt, s.std_subopt, s.mean_regret
        );
    }

    // Asymptotic lower bound on suboptimal sensings per unit of ln n.
    let dists: Vec<Pmf> = scenario
        .stationary_means()?
        .into_iter()
        .map(Pmf::bernoulli)
        .collect();
    let total: f64 = lai_robbins_constants(&dists)?.into_iter().flatten().sum();
    println!(
        "lower bound sum_k 1/kl(mu_k, mu*) = {total:.2}, times ln n = {:.1}",
        total * (horizon as f64).ln()
    );
    Ok(())
}
