//! Growth rate of the suboptimal band's sensing count against `ln n` for two
//! uniform bands with gap 1/2. The rate should approach `2 / gap^2 = 8`.
//!
//! `cargo run --release --example fig7_slope -- [runs] [horizon]`

use rbl::{monte_carlo, slope_estimate, Preset};

fn main() -> rbl::Result<()> {
    let mut args = std::env::args().skip(1);
    let runs = args.next().map_or(200, |s| s.parse().expect("runs"));
    let horizon = args.next().map_or(100_000, |s| s.parse().expect("horizon"));

    let mut scenario = Preset::Fig7.expand();
    scenario.runs = runs;
    scenario.set_horizon(horizon);
    let series = monte_carlo(&scenario, 0)?;
    let recency = &series.policies[0];

    println!("{:>8} {:>10} {:>10}", "n", "E[m_1]", "E[m_1]/ln n");
    for p in &recency.points {
        println!(
            "{:>8} {:>10.2} {:>10.3}",
            p.n,
            p.mean_counts[0],
            p.mean_counts[0] / (p.n as f64).ln()
        );
    }
    let fit = slope_estimate(recency, 0, None)?;
    println!(
        "slope over [{}, {}]: {:.3} (theory 8), r^2 {:.4}",
        fit.window.0, fit.window.1, fit.slope, fit.r_squared
    );
    Ok(())
}
