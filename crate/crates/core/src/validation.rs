//! Property suites behind the `validate` command.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{cycle_stats, pinsker_check_bernoulli, pinsker_check_general, Pmf};
use crate::env::{stationary_occupancy, BandSpec, EnvState, IDLE};
use crate::policies::{kl_bernoulli, klucb_index, BonusFn};
use crate::presets::Preset;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl SuiteResult {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Self {
            name,
            passed,
            detail,
        }
    }
}

fn normalized(mut w: Vec<f64>, grid: &[f64]) -> Pmf {
    if w.iter().all(|x| *x == 0.0) {
        w[0] = 1.0;
    }
    let total: f64 = w.iter().sum();
    Pmf {
        support: grid.to_vec(),
        probs: w.into_iter().map(|x| x / total).collect(),
    }
}

/// Random PMF on `grid`; roughly 30% of the points get zero mass.
pub fn random_pmf<R: Rng>(rng: &mut R, grid: &[f64]) -> Pmf {
    let w = grid
        .iter()
        .map(|_| {
            if rng.gen::<f64>() < 0.3 {
                0.0
            } else {
                rng.gen::<f64>()
            }
        })
        .collect();
    normalized(w, grid)
}

/// Random pair `(p, q)` on `grid` with `q` zero only where `p` is, so that
/// `KL(p || q)` is finite. Half the pairs are near neighbours,
/// `q = (1 - eps) p + eps r`, where the bound is closest to tight.
pub fn random_pmf_pair<R: Rng>(rng: &mut R, grid: &[f64]) -> (Pmf, Pmf) {
    let p = random_pmf(rng, grid);
    let q = if rng.gen::<bool>() {
        let r = random_pmf(rng, grid);
        let eps = rng.gen::<f64>().powi(3);
        let w = p
            .probs
            .iter()
            .zip(&r.probs)
            .map(|(a, b)| {
                (1.0 - eps) * a + eps * b + if *a > 0.0 { f64::MIN_POSITIVE } else { 0.0 }
            })
            .collect();
        normalized(w, grid)
    } else {
        let w = p
            .probs
            .iter()
            .map(|&pi| {
                if pi == 0.0 && rng.gen::<f64>() < 0.5 {
                    0.0
                } else {
                    rng.gen::<f64>().max(f64::MIN_POSITIVE)
                }
            })
            .collect();
        normalized(w, grid)
    };
    (p, q)
}

pub fn unit_grid(points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| i as f64 / (points - 1) as f64)
        .collect()
}

/// `1/2 Delta^2 <= KL` over `pairs` random PMF pairs on the 101-point grid.
pub fn pinsker_general_suite(pairs: usize, seed: u64) -> SuiteResult {
    let grid = unit_grid(101);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut infinite = 0;
    for _ in 0..pairs {
        let (p, q) = random_pmf_pair(&mut rng, &grid);
        match pinsker_check_general(&p, &q) {
            Ok(c) if c.holds => {
                if c.kl.is_infinite() {
                    infinite += 1;
                }
            }
            _ => violations += 1,
        }
    }
    SuiteResult::new(
        "pinsker_general",
        violations == 0 && infinite == 0,
        format!(
            "{violations} violations in {pairs} random pmf pairs ({infinite} with infinite KL)"
        ),
    )
}

/// `2 Delta^2 <= kl` on the 99 x 99 grid, and `2 Delta^2 >= Delta^2 / 2`.
pub fn pinsker_bernoulli_suite() -> SuiteResult {
    let mut violations = 0;
    let mut looser = 0;
    for i in 1..=99 {
        for j in 1..=99 {
            let c = pinsker_check_bernoulli(i as f64 / 100.0, j as f64 / 100.0)
                .expect("interior grid point");
            if !c.holds {
                violations += 1;
            }
            if 2.0 * c.delta * c.delta < 0.5 * c.delta * c.delta {
                looser += 1;
            }
        }
    }
    SuiteResult::new(
        "pinsker_bernoulli",
        violations == 0 && looser == 0,
        format!("{violations} violations, {looser} looser than general bound, on 9801 grid pairs"),
    )
}

pub fn bonus_shape_suite() -> SuiteResult {
    let mut bad = Vec::new();
    for c in [0.5, 2.0] {
        let g = BonusFn::new(c).expect("positive coefficient");
        if g.value(1.0) != 0.0 {
            bad.push(format!("c={c}: g(1) != 0"));
        }
        let h = 0.01;
        for i in 101..=10_000 {
            let x = i as f64 * h;
            if g.value(x + h) <= g.value(x) {
                bad.push(format!("c={c}: not increasing at {x}"));
                break;
            }
            if g.value(x + h) - 2.0 * g.value(x) + g.value(x - h) > 0.0 {
                bad.push(format!("c={c}: convex at {x}"));
                break;
            }
        }
        for i in 0..=300 {
            let y = i as f64 * 0.01;
            let back = g.value(g.inverse(y).expect("nonnegative"));
            if (back - y).abs() > 1e-12 {
                bad.push(format!("c={c}: g(g^-1({y})) = {back}"));
                break;
            }
        }
    }
    SuiteResult::new(
        "bonus_shape",
        bad.is_empty(),
        if bad.is_empty() {
            "g(1)=0, increasing, concave on [1.01, 100], inverse round-trips on [0, 3]".into()
        } else {
            bad.join("; ")
        },
    )
}

/// `1 / ln g^{-1}(Delta)` against `2 / Delta^2` for the `c = 2` bonus.
pub fn slope_constant_suite() -> SuiteResult {
    let g = BonusFn::GENERAL;
    let worst = (1..=100)
        .map(|i| {
            let d = i as f64 * 0.01;
            let closed = 2.0 / (d * d);
            ((g.log_rate(d).expect("gap >= 0") - closed) / closed).abs()
        })
        .fold(0.0, f64::max);
    SuiteResult::new(
        "slope_constant",
        worst <= 1e-9,
        format!("max relative gap {worst:.2e} over 100 gaps"),
    )
}

/// Bisection against a full scan of the 1e-6 grid on random triples.
pub fn klucb_oracle_suite(triples: usize, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..triples {
        let mean = (rng.gen::<f64>() * 1e4).round() / 1e4;
        let count = rng.gen_range(1..=10_000u64);
        let n = rng.gen_range(count.max(2)..=1_000_000u64);
        let q = klucb_index(mean, count, n, 0.0);
        worst = worst.max((q - klucb_grid_oracle(mean, count, n)).abs());
    }
    SuiteResult::new(
        "klucb_oracle",
        worst <= 2e-6,
        format!("max |bisection - grid| = {worst:.2e} over {triples} triples"),
    )
}

/// Largest point of `{mean + i * 1e-6}` within `[mean, 1]` meeting the
/// KL-UCB constraint, by exhaustive scan.
pub fn klucb_grid_oracle(mean: f64, count: u64, n: u64) -> f64 {
    let budget = (n as f64).ln();
    let steps = ((1.0 - mean) / 1e-6).floor() as u64;
    let mut best = mean;
    for i in 0..=steps {
        let q = mean + i as f64 * 1e-6;
        if count as f64 * kl_bernoulli(mean, q) <= budget {
            best = q;
        }
    }
    best
}

/// Idle-state trace of a Gilbert-Elliot band over `slots` slots.
pub fn markov_trace(band: &BandSpec, slots: usize, seed: u64) -> Vec<u32> {
    let mut env = EnvState::new(vec![band.clone()]).expect("valid band");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    env.init_states(&mut rng);
    (0..slots)
        .map(|_| {
            env.advance(&mut rng);
            env.markov_state(0).expect("markov band")
        })
        .collect()
}

/// Idle-anchored cycle length times `pi_idle` for each band of the slowly
/// varying ten-band preset, compared within three standard errors of 1.
pub fn cycle_law_suite(slots: usize, seed: u64) -> SuiteResult {
    let bands = Preset::Fig11.expand().bands;
    let mut bad = Vec::new();
    let mut worst = 0.0f64;
    for (k, band) in bands.iter().enumerate() {
        let BandSpec::GilbertElliot { p01, p10, .. } = *band else {
            continue;
        };
        let (idle, _) = stationary_occupancy(p01, p10).expect("ergodic");
        let trace = markov_trace(band, slots, seed.wrapping_add(k as u64));
        let Ok(stats) = cycle_stats(&trace, IDLE) else {
            bad.push(format!("band {}: no cycle", k + 1));
            continue;
        };
        // Exact cycle-length variance of the two-state chain: the cycle is
        // 1 slot with prob 1 - p01, else 1 + Geometric(p10).
        let mean = 1.0 / idle;
        let second = (1.0 - p01) + p01 * (1.0 + 2.0 / p10 + (2.0 - p10) / (p10 * p10));
        let se = ((second - mean * mean) / stats.count as f64).sqrt() * idle;
        let product = stats.mean_length * idle;
        worst = worst.max((product - 1.0).abs() / se);
        if (product - 1.0).abs() > 3.0 * se {
            bad.push(format!("band {}: {product:.4} (se {se:.4})", k + 1));
        }
    }
    SuiteResult::new(
        "cycle_law",
        bad.is_empty(),
        if bad.is_empty() {
            format!("all bands within {worst:.2} standard errors")
        } else {
            bad.join("; ")
        },
    )
}

/// Every suite, sized to finish in a few seconds.
pub fn run_all_suites() -> Vec<SuiteResult> {
    vec![
        pinsker_general_suite(10_000, 0x5EED_0003),
        pinsker_bernoulli_suite(),
        bonus_shape_suite(),
        slope_constant_suite(),
        klucb_oracle_suite(20, 0x5EED_0004),
        cycle_law_suite(100_000, 0x5EED_0005),
    ]
}
