//! Two discrete bands whose means differ by under 0.01.
//!
//! `cargo run --release --example near_tie -- [runs]`

use rbl::analysis::{kl_divergence, lai_robbins_constants, Pmf};
use rbl::{monte_carlo, BandSpec, Preset};

fn main() -> rbl::Result<()> {
    let runs = std::env::args()
        .nth(1)
        .map_or(100, |s| s.parse().expect("runs"));
    let mut scenario = Preset::Fig9.expand();
    scenario.runs = runs;

    let dists: Vec<Pmf> = scenario
        .bands
        .iter()
        .map(|b| match b {
            BandSpec::IidDiscrete { support, probs } => Pmf::new(support.clone(), probs.clone()),
            _ => unreachable!("near-tie preset is discrete"),
        })
        .collect::<Result<_, _>>()?;
    let mus: Vec<f64> = dists.iter().map(Pmf::mean).collect();
    println!(
        "means {:.5} {:.5}, gap {:.5}",
        mus[0],
        mus[1],
        mus[1] - mus[0]
    );
    // Band 1 puts mass outside band 2's support, so KL(p1 || p2) is
    // infinite and the distribution-dependent lower-bound constant is 0.
    println!("KL(p1 || p2) = {}", kl_divergence(&dists[0], &dists[1])?);
    println!(
        "lower-bound constant = {:?}",
        lai_robbins_constants(&dists)?[0]
    );

    let series = monte_carlo(&scenario, 0)?;
    for p in &series.policies {
        let s = p.at(scenario.horizon).expect("checkpoint");
        println!(
            "{:<14} E[subopt] {:>9.1}  /ln n {:>7.2}",
            p.label, s.mean_subopt, s.mean_subopt_over_ln_n
        );
    }
    Ok(())
}
