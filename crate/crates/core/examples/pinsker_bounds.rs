//! Pinsker-type bounds behind the bonus constants: `Delta^2 / 2 <= KL` for
//! distributions on [0, 1] and the sharper `2 Delta^2 <= kl` for Bernoulli.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rbl::analysis::{pinsker_check_bernoulli, pinsker_check_general};
use rbl::validation::{random_pmf_pair, unit_grid};

fn main() {
    let grid = unit_grid(101);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut tightest = f64::INFINITY;
    for _ in 0..10_000 {
        let (p, q) = random_pmf_pair(&mut rng, &grid);
        let c = pinsker_check_general(&p, &q).expect("same support");
        assert!(c.holds);
        if c.delta > 0.0 {
            tightest = tightest.min(c.kl / (0.5 * c.delta * c.delta));
        }
    }
    println!("general: min KL / (Delta^2 / 2) over 10^4 random pairs = {tightest:.3}");

    let mut tightest = (f64::INFINITY, 0.0, 0.0);
    for i in 1..=99 {
        for j in 1..=99 {
            let (px, py) = (i as f64 / 100.0, j as f64 / 100.0);
            let c = pinsker_check_bernoulli(px, py).expect("interior");
            assert!(c.holds);
            if i != j && c.kl / (2.0 * c.delta * c.delta) < tightest.0 {
                tightest = (c.kl / (2.0 * c.delta * c.delta), px, py);
            }
        }
    }
    println!(
        "bernoulli: min kl / (2 Delta^2) on the 99x99 grid = {:.5} at ({}, {})",
        tightest.0, tightest.1, tightest.2
    );
}
