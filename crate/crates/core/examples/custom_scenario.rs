//! Builds a scenario in code, round-trips it through JSON and writes CSV.
//!
//! `cargo run --release --example custom_scenario -- [out.csv]`

use rbl::policies::{MeanSource, Schedule};
use rbl::{monte_carlo, report, BandSpec, PolicyKind, PolicySpec, ScenarioConfig};

fn main() -> rbl::Result<()> {
    let scenario = ScenarioConfig {
        bands: vec![
            BandSpec::Bernoulli { p: 0.45 },
            BandSpec::IidDiscrete {
                support: vec![0.0, 0.5, 1.0],
                probs: vec![0.2, 0.4, 0.4],
            },
            BandSpec::IidUniform { lo: 0.2, hi: 0.9 },
        ],
        horizon: 1 << 12,
        policies: vec![
            PolicyKind::Recency { c: 2.0 }.into(),
            PolicyKind::Ucb1 {}.into(),
            PolicySpec::labelled(
                PolicyKind::Dsee {
                    d: Schedule::Constant(4.0),
                    mean_source: MeanSource::All,
                },
                "dsee_fixed",
            ),
        ],
        runs: 50,
        master_seed: 2024,
        checkpoints: Some(vec![256, 1024, 4096]),
    };
    let json = scenario.to_json()?;
    assert_eq!(ScenarioConfig::from_json(&json)?, scenario);
    println!("{json}");

    let series = monte_carlo(&scenario, 0)?;
    match std::env::args().nth(1) {
        Some(path) => report::save_csv(&series, true, &path)?,
        None => print!("{}", report::to_csv_string(&series, true)?),
    }
    Ok(())
}
