//! Seeded Monte Carlo runner.
//!
//! Run seeds come from a stateless SplitMix64-based mix of
//! `(master_seed, policy_index, run_index)`, see [`run_seed`]. Every run owns
//! its environment, policy and RNG, so runs can execute in any order on any
//! number of workers; aggregation folds them back in run-index order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::env::{EnvState, Observation};
use crate::error::{Error, Result};
use crate::scenario::{PolicySpec, ScenarioConfig};

/// SplitMix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of run `run` of policy `policy`:
/// `splitmix64(splitmix64(master ^ splitmix64(policy)) ^ run)`.
pub fn run_seed(master: u64, policy: usize, run: usize) -> u64 {
    splitmix64(splitmix64(master ^ splitmix64(policy as u64)) ^ run as u64)
}

/// Weak regret `sum_k (mu* - mu_k) M_k` over bands below the best mean.
pub fn weak_regret(counts: &[u64], mus: &[f64]) -> Result<f64> {
    if mus.is_empty() {
        return Err(Error::Config("weak regret of an empty band list".into()));
    }
    if counts.len() != mus.len() {
        return Err(Error::Config(format!(
            "{} counts for {} bands",
            counts.len(),
            mus.len()
        )));
    }
    let best = mus.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(counts
        .iter()
        .zip(mus)
        .filter(|(_, mu)| **mu != best)
        .map(|(m, mu)| (best - mu) * *m as f64)
        .sum())
}

/// Metrics of one run at each checkpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub checkpoints: Vec<u64>,
    /// `counts[i][k]`: sensings of band `k` up to checkpoint `i`.
    pub counts: Vec<Vec<u64>>,
    /// Sensings of bands below the best stationary mean.
    pub suboptimal: Vec<u64>,
    /// Weak regret accumulated slot by slot.
    pub regret: Vec<f64>,
}

/// Simulates one episode, calling `on_slot(n, band, obs)` after each slot.
pub fn run_episode_with<F>(
    scenario: &ScenarioConfig,
    policy: &PolicySpec,
    seed: u64,
    mut on_slot: F,
) -> Result<RunTrace>
where
    F: FnMut(u64, usize, &Observation),
{
    policy.kind.check_bands(&scenario.bands)?;
    let mus = scenario.stationary_means()?;
    let best = mus.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let gaps: Vec<f64> = mus.iter().map(|mu| best - mu).collect();

    let mut env = EnvState::new(scenario.bands.clone())?;
    let mut agent = policy.kind.build(env.len())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    env.init_states(&mut rng);

    let checkpoints = scenario.checkpoints();
    let mut trace = RunTrace {
        checkpoints: checkpoints.clone(),
        counts: Vec::with_capacity(checkpoints.len()),
        suboptimal: Vec::with_capacity(checkpoints.len()),
        regret: Vec::with_capacity(checkpoints.len()),
    };
    let mut counts = vec![0u64; env.len()];
    let mut suboptimal = 0u64;
    let mut regret = 0.0;
    let mut next = checkpoints.iter().copied().peekable();

    for n in 1..=scenario.horizon {
        env.advance(&mut rng);
        let band = agent.select(n);
        let obs = env.observe(band, &mut rng)?;
        agent.update(band, obs, n)?;
        counts[band] += 1;
        if gaps[band] > 0.0 {
            suboptimal += 1;
            regret += gaps[band];
        }
        on_slot(n, band, &obs);
        if next.peek() == Some(&n) {
            next.next();
            trace.counts.push(counts.clone());
            trace.suboptimal.push(suboptimal);
            trace.regret.push(regret);
        }
    }
    Ok(trace)
}

pub fn run_episode(scenario: &ScenarioConfig, policy: &PolicySpec, seed: u64) -> Result<RunTrace> {
    run_episode_with(scenario, policy, seed, |_, _, _| {})
}

/// Band selected at every slot of one episode, alongside its trace.
pub fn run_episode_selections(
    scenario: &ScenarioConfig,
    policy: &PolicySpec,
    seed: u64,
) -> Result<(RunTrace, Vec<u32>)> {
    let mut picks = Vec::with_capacity(scenario.horizon as usize);
    let trace = run_episode_with(scenario, policy, seed, |_, band, _| picks.push(band as u32))?;
    Ok((trace, picks))
}

/// Summary statistics across runs at one checkpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckpointStats {
    pub n: u64,
    pub mean_subopt: f64,
    pub std_subopt: f64,
    pub min_subopt: u64,
    pub max_subopt: u64,
    pub mean_subopt_over_ln_n: f64,
    pub std_subopt_over_ln_n: f64,
    pub mean_regret: f64,
    pub std_regret: f64,
    /// Mean sensing count of each band.
    pub mean_counts: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolicySeries {
    pub label: String,
    pub points: Vec<CheckpointStats>,
}

impl PolicySeries {
    pub fn at(&self, n: u64) -> Option<&CheckpointStats> {
        self.points.iter().find(|p| p.n == n)
    }
}

/// Monte Carlo averages per policy and checkpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSeries {
    pub runs: usize,
    pub policies: Vec<PolicySeries>,
}

impl MetricSeries {
    pub fn policy(&self, label: &str) -> Option<&PolicySeries> {
        self.policies.iter().find(|p| p.label == label)
    }
}

/// Mean and sample standard deviation, summed in slice order.
fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Folds the traces of one policy (in run order) into per-checkpoint stats.
pub fn aggregate(label: &str, traces: &[RunTrace]) -> PolicySeries {
    let first = &traces[0];
    let bands = first.counts.first().map_or(0, Vec::len);
    let points = first
        .checkpoints
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let sub: Vec<f64> = traces.iter().map(|t| t.suboptimal[i] as f64).collect();
            let ln_n = (n as f64).ln();
            let sub_ln: Vec<f64> = sub.iter().map(|s| s / ln_n).collect();
            let reg: Vec<f64> = traces.iter().map(|t| t.regret[i]).collect();
            let (mean_subopt, std_subopt) = mean_std(&sub);
            let (mean_subopt_over_ln_n, std_subopt_over_ln_n) = mean_std(&sub_ln);
            let (mean_regret, std_regret) = mean_std(&reg);
            let mean_counts = (0..bands)
                .map(|k| {
                    let c: Vec<f64> = traces.iter().map(|t| t.counts[i][k] as f64).collect();
                    mean_std(&c).0
                })
                .collect();
            CheckpointStats {
                n,
                mean_subopt,
                std_subopt,
                min_subopt: traces.iter().map(|t| t.suboptimal[i]).min().unwrap_or(0),
                max_subopt: traces.iter().map(|t| t.suboptimal[i]).max().unwrap_or(0),
                mean_subopt_over_ln_n,
                std_subopt_over_ln_n,
                mean_regret,
                std_regret,
                mean_counts,
            }
        })
        .collect();
    PolicySeries {
        label: label.to_string(),
        points,
    }
}

/// All run traces, grouped per policy in scenario order, each in run order.
/// `workers = 0` uses every available core.
pub fn run_all(scenario: &ScenarioConfig, workers: usize) -> Result<Vec<Vec<RunTrace>>> {
    scenario.validate()?;
    let workers = match workers {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        w => w,
    };
    let jobs: Vec<(usize, usize)> = (0..scenario.policies.len())
        .flat_map(|p| (0..scenario.runs).map(move |r| (p, r)))
        .collect();
    let job = |&(p, r): &(usize, usize)| {
        run_episode(
            scenario,
            &scenario.policies[p],
            run_seed(scenario.master_seed, p, r),
        )
    };
    let flat: Vec<RunTrace> = if workers <= 1 {
        jobs.iter().map(job).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        pool.install(|| jobs.par_iter().map(job).collect::<Result<_>>())?
    };
    let mut grouped = Vec::with_capacity(scenario.policies.len());
    let mut rest = flat.into_iter();
    for _ in 0..scenario.policies.len() {
        grouped.push(rest.by_ref().take(scenario.runs).collect());
    }
    Ok(grouped)
}

/// Runs every policy `runs` times and averages the traces.
pub fn monte_carlo(scenario: &ScenarioConfig, workers: usize) -> Result<MetricSeries> {
    let grouped = run_all(scenario, workers)?;
    Ok(MetricSeries {
        runs: scenario.runs,
        policies: scenario
            .policies
            .iter()
            .zip(&grouped)
            .map(|(spec, traces)| aggregate(&spec.label(), traces))
            .collect(),
    })
}
