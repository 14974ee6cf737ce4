//! Sensing instants of the worse band when rewards are deterministic.
//!
//! With rewards 0.25 and 0.75 and `c = 2`, the worse band is revisited only
//! once `n / tau` exceeds `e^{0.125}`, so its sensing slots grow
//! geometrically and their count grows like `ln n`.

use rbl::harness::run_episode_selections;
use rbl::{BandSpec, PolicyKind, ScenarioConfig};

fn main() -> rbl::Result<()> {
    let horizon = 1_000_000;
    let scenario = ScenarioConfig {
        bands: vec![
            BandSpec::IidUniform { lo: 0.25, hi: 0.25 },
            BandSpec::IidUniform { lo: 0.75, hi: 0.75 },
        ],
        horizon,
        policies: vec![PolicyKind::Recency { c: 2.0 }.into()],
        runs: 1,
        master_seed: 0,
        checkpoints: None,
    };
    let (_, picks) = run_episode_selections(&scenario, &scenario.policies[0], 0)?;
    let z: Vec<u64> = picks
        .iter()
        .enumerate()
        .filter(|(_, b)| **b == 0)
        .map(|(i, _)| i as u64 + 1)
        .collect();

    let floor = 0.125f64.exp();
    let min_ratio = z
        .windows(2)
        .skip(1)
        .map(|w| w[1] as f64 / w[0] as f64)
        .fold(f64::INFINITY, f64::min);
    println!("worse band sensed {} times in {horizon} slots", z.len());
    println!("first slots: {:?}", &z[..12]);
    println!("last slots:  {:?}", &z[z.len() - 4..]);
    println!("min z_(j+1)/z_j after startup = {min_ratio:.5} >= e^0.125 = {floor:.5}");
    println!("8 ln n = {:.1}", 8.0 * (horizon as f64).ln());
    Ok(())
}
