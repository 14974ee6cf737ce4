//! Regenerative-cycle mechanics of the Markov policy.
//!
//! First replays a scripted two-band trace slot by slot, printing where
//! cycles close and indices are recomputed. Then checks on a simulated
//! Gilbert-Elliot band that the mean idle-to-idle cycle length is `1/pi_idle`.

use rbl::analysis::cycle_stats;
use rbl::env::{stationary_occupancy, IDLE};
use rbl::policies::{BonusFn, RecencyRegen};
use rbl::validation::markov_trace;
use rbl::{BandSpec, Decision, Policy};

fn main() -> rbl::Result<()> {
    let scripts: [&[u32]; 2] = [&[1, 1, 1, 0, 0, 1], &[0, 0, 0, 1, 1, 0]];
    let mut cursor = [0usize; 2];
    let mut policy = RecencyRegen::new(2, BonusFn::BERNOULLI)?;
    println!("slot band state decision");
    for n in 1..=12 {
        let band = policy.select(n);
        let s = scripts[band][cursor[band]];
        cursor[band] += 1;
        let d = policy.step(Some(s), if s == IDLE { 1.0 } else { 0.0 }, n)?;
        let note = match d {
            Decision::Continue => String::new(),
            Decision::Reselected(k) if k == band => "cycle closed, stay".into(),
            Decision::Reselected(k) => format!("cycle closed, hop to band {}", k + 1),
        };
        println!("{n:>4} {:>4} {s:>5} {note}", band + 1);
    }

    let band = BandSpec::GilbertElliot {
        p01: 0.08,
        p10: 0.01,
        r_idle: 1.0,
        r_occ: 0.0,
    };
    let (idle, _) = stationary_occupancy(0.08, 0.01)?;
    let stats = cycle_stats(&markov_trace(&band, 1_000_000, 1), IDLE)?;
    println!(
        "\n{} cycles, mean length {:.3}, 1/pi_idle = {:.3}",
        stats.count,
        stats.mean_length,
        1.0 / idle
    );
    Ok(())
}
