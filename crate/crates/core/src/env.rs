//! Restless frequency-band environment.
//!
//! Each band is either i.i.d. (fresh draw on every observation) or a
//! two-state Gilbert-Elliot chain whose hidden state moves every slot,
//! whether or not anyone senses it.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Idle channel state of a Gilbert-Elliot band.
pub const IDLE: u32 = 0;
/// Occupied channel state of a Gilbert-Elliot band.
pub const OCCUPIED: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BandError {
    #[error("uniform band needs 0 <= lo <= hi <= 1, got lo={lo}, hi={hi}")]
    UniformRange { lo: f64, hi: f64 },
    #[error("discrete band: {0}")]
    Discrete(String),
    #[error("bernoulli band needs p in [0, 1], got {0}")]
    BernoulliP(f64),
    #[error("gilbert-elliot band is not ergodic: p01={p01}, p10={p10} must both lie in (0, 1)")]
    NotErgodic { p01: f64, p10: f64 },
    #[error("gilbert-elliot rewards must lie in [0, 1], got r_idle={r_idle}, r_occ={r_occ}")]
    MarkovReward { r_idle: f64, r_occ: f64 },
    #[error("band index {index} out of range for {bands} bands")]
    OutOfRange { index: usize, bands: usize },
    #[error("environment has no bands")]
    Empty,
}

/// Reward process of a single frequency band.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BandSpec {
    IidUniform {
        lo: f64,
        hi: f64,
    },
    IidDiscrete {
        support: Vec<f64>,
        probs: Vec<f64>,
    },
    Bernoulli {
        p: f64,
    },
    GilbertElliot {
        p01: f64,
        p10: f64,
        r_idle: f64,
        r_occ: f64,
    },
}

fn unit(x: f64) -> bool {
    (0.0..=1.0).contains(&x)
}

impl BandSpec {
    pub fn validate(&self) -> Result<(), BandError> {
        match *self {
            BandSpec::IidUniform { lo, hi } => {
                if !(unit(lo) && unit(hi) && lo <= hi) {
                    return Err(BandError::UniformRange { lo, hi });
                }
            }
            BandSpec::IidDiscrete {
                ref support,
                ref probs,
            } => {
                if support.is_empty() {
                    return Err(BandError::Discrete("empty support".into()));
                }
                if support.len() != probs.len() {
                    return Err(BandError::Discrete(format!(
                        "support has {} points but probs has {}",
                        support.len(),
                        probs.len()
                    )));
                }
                if let Some(x) = support.iter().find(|x| !unit(**x)) {
                    return Err(BandError::Discrete(format!(
                        "support value {x} outside [0, 1]"
                    )));
                }
                if let Some(p) = probs.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
                    return Err(BandError::Discrete(format!(
                        "negative or non-finite probability {p}"
                    )));
                }
                let total: f64 = probs.iter().sum();
                if (total - 1.0).abs() > 1e-12 {
                    return Err(BandError::Discrete(format!(
                        "probabilities sum to {total}, not 1"
                    )));
                }
            }
            BandSpec::Bernoulli { p } => {
                if !unit(p) {
                    return Err(BandError::BernoulliP(p));
                }
            }
            BandSpec::GilbertElliot {
                p01,
                p10,
                r_idle,
                r_occ,
            } => {
                let open = |x: f64| x > 0.0 && x < 1.0;
                if !(open(p01) && open(p10)) {
                    return Err(BandError::NotErgodic { p01, p10 });
                }
                if !(unit(r_idle) && unit(r_occ)) {
                    return Err(BandError::MarkovReward { r_idle, r_occ });
                }
            }
        }
        Ok(())
    }

    pub fn is_markov(&self) -> bool {
        matches!(self, BandSpec::GilbertElliot { .. })
    }

    /// Number of distinguishable observation states, `None` for a
    /// continuous reward distribution.
    pub fn state_count(&self) -> Option<usize> {
        match self {
            BandSpec::IidUniform { .. } => None,
            BandSpec::IidDiscrete { support, .. } => Some(support.len()),
            BandSpec::Bernoulli { .. } | BandSpec::GilbertElliot { .. } => Some(2),
        }
    }

    /// Stationary mean reward of the band.
    pub fn stationary_mean(&self) -> Result<f64, BandError> {
        self.validate()?;
        Ok(match *self {
            BandSpec::IidUniform { lo, hi } => 0.5 * (lo + hi),
            BandSpec::IidDiscrete {
                ref support,
                ref probs,
            } => support.iter().zip(probs).map(|(x, p)| x * p).sum(),
            BandSpec::Bernoulli { p } => p,
            BandSpec::GilbertElliot {
                p01,
                p10,
                r_idle,
                r_occ,
            } => {
                let (idle, occ) = stationary_occupancy(p01, p10)?;
                r_idle * idle + r_occ * occ
            }
        })
    }
}

/// Stationary distribution `(pi_idle, pi_occupied)` of the two-state chain
/// with idle->occupied probability `p01` and occupied->idle probability `p10`.
pub fn stationary_occupancy(p01: f64, p10: f64) -> Result<(f64, f64), BandError> {
    if !(p01 > 0.0 && p01 < 1.0 && p10 > 0.0 && p10 < 1.0) {
        return Err(BandError::NotErgodic { p01, p10 });
    }
    let idle = p10 / (p01 + p10);
    Ok((idle, 1.0 - idle))
}

/// Result of sensing one band for one slot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observation {
    pub reward: f64,
    /// Discrete observed state: the chain state for Gilbert-Elliot bands,
    /// `0` (reward 1) / `1` (reward 0) for Bernoulli bands, the support
    /// index for discrete bands. `None` for continuous rewards.
    pub state: Option<u32>,
}

/// Inverse-CDF sampler over a finite PMF.
#[derive(Debug, Clone)]
struct DiscreteSampler {
    support: Vec<f64>,
    cumulative: Vec<f64>,
}

impl DiscreteSampler {
    fn new(support: &[f64], probs: &[f64]) -> Self {
        let mut acc = 0.0;
        let mut cumulative: Vec<f64> = probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        // Absorb rounding in the last bucket that carries mass.
        if let Some(last) = probs.iter().rposition(|p| *p > 0.0) {
            cumulative[last..].fill(f64::INFINITY);
        }
        Self {
            support: support.to_vec(),
            cumulative,
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.gen();
        self.cumulative.partition_point(|c| *c <= u)
    }
}

#[derive(Debug, Clone)]
enum BandProcess {
    Uniform {
        lo: f64,
        hi: f64,
    },
    Discrete(DiscreteSampler),
    Bernoulli {
        p: f64,
    },
    Markov {
        p01: f64,
        p10: f64,
        rewards: [f64; 2],
        state: u32,
    },
}

/// Simulated environment owned by one run.
#[derive(Debug, Clone)]
pub struct EnvState {
    bands: Vec<BandSpec>,
    processes: Vec<BandProcess>,
    slot: u64,
}

impl EnvState {
    /// Builds the environment. Markov bands start in the idle state until
    /// [`EnvState::init_states`] is called.
    pub fn new(bands: Vec<BandSpec>) -> Result<Self, BandError> {
        if bands.is_empty() {
            return Err(BandError::Empty);
        }
        let mut processes = Vec::with_capacity(bands.len());
        for band in &bands {
            band.validate()?;
            processes.push(match *band {
                BandSpec::IidUniform { lo, hi } => BandProcess::Uniform { lo, hi },
                BandSpec::IidDiscrete {
                    ref support,
                    ref probs,
                } => BandProcess::Discrete(DiscreteSampler::new(support, probs)),
                BandSpec::Bernoulli { p } => BandProcess::Bernoulli { p },
                BandSpec::GilbertElliot {
                    p01,
                    p10,
                    r_idle,
                    r_occ,
                } => BandProcess::Markov {
                    p01,
                    p10,
                    rewards: [r_idle, r_occ],
                    state: IDLE,
                },
            });
        }
        Ok(Self {
            bands,
            processes,
            slot: 0,
        })
    }

    pub fn bands(&self) -> &[BandSpec] {
        &self.bands
    }

    pub fn len(&self) -> usize {
        self.bands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bands.is_empty()
    }

    pub fn slot(&self) -> u64 {
        self.slot
    }

    /// Hidden state of band `band` if it is a Markov band.
    pub fn markov_state(&self, band: usize) -> Option<u32> {
        match self.processes.get(band)? {
            BandProcess::Markov { state, .. } => Some(*state),
            _ => None,
        }
    }

    /// Draws every Markov band's state from its stationary distribution.
    pub fn init_states<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        for process in &mut self.processes {
            if let BandProcess::Markov {
                p01, p10, state, ..
            } = process
            {
                let idle = *p10 / (*p01 + *p10);
                *state = if rng.gen::<f64>() < idle {
                    IDLE
                } else {
                    OCCUPIED
                };
            }
        }
    }

    /// One slot of time: every Markov band transitions, sensed or not.
    pub fn advance<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        for process in &mut self.processes {
            if let BandProcess::Markov {
                p01, p10, state, ..
            } = process
            {
                let u: f64 = rng.gen();
                *state = match *state {
                    IDLE if u < *p01 => OCCUPIED,
                    OCCUPIED if u < *p10 => IDLE,
                    s => s,
                };
            }
        }
        self.slot += 1;
    }

    /// Senses `band` in the current slot.
    pub fn observe<R: Rng + ?Sized>(
        &mut self,
        band: usize,
        rng: &mut R,
    ) -> Result<Observation, BandError> {
        let bands = self.processes.len();
        let process = self
            .processes
            .get(band)
            .ok_or(BandError::OutOfRange { index: band, bands })?;
        let obs = match process {
            BandProcess::Uniform { lo, hi } => Observation {
                reward: lo + (hi - lo) * rng.gen::<f64>(),
                state: None,
            },
            BandProcess::Discrete(sampler) => {
                let i = sampler.sample(rng);
                Observation {
                    reward: sampler.support[i],
                    state: Some(i as u32),
                }
            }
            BandProcess::Bernoulli { p } => {
                let idle = rng.gen::<f64>() < *p;
                Observation {
                    reward: if idle { 1.0 } else { 0.0 },
                    state: Some(if idle { IDLE } else { OCCUPIED }),
                }
            }
            BandProcess::Markov { rewards, state, .. } => Observation {
                reward: rewards[*state as usize],
                state: Some(*state),
            },
        };
        debug_assert!((0.0..=1.0).contains(&obs.reward));
        Ok(obs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ge(p01: f64, p10: f64) -> BandSpec {
        BandSpec::GilbertElliot {
            p01,
            p10,
            r_idle: 1.0,
            r_occ: 0.0,
        }
    }

    /// Stationary vector of a 2x2 chain by repeated multiplication.
    fn power_iteration(p01: f64, p10: f64) -> (f64, f64) {
        let (mut a, mut b) = (1.0, 0.0);
        for _ in 0..100_000 {
            let na = a * (1.0 - p01) + b * p10;
            let nb = a * p01 + b * (1.0 - p10);
            a = na;
            b = nb;
        }
        (a, b)
    }

    #[test]
    fn occupancy_matches_power_iteration() {
        assert_eq!(stationary_occupancy(0.5, 0.5).unwrap(), (0.5, 0.5));
        for &(p01, p10) in &[(0.08, 0.01), (0.01, 0.05), (0.3, 0.7), (0.94, 0.95)] {
            let (idle, occ) = stationary_occupancy(p01, p10).unwrap();
            let (oi, oo) = power_iteration(p01, p10);
            assert!((idle - oi).abs() < 1e-9, "{p01} {p10}: {idle} vs {oi}");
            assert!((occ - oo).abs() < 1e-9);
            assert!((idle + occ - 1.0).abs() < 1e-15);
        }
        let (idle, _) = stationary_occupancy(0.08, 0.01).unwrap();
        assert!((idle - 1.0 / 9.0).abs() < 1e-12);
        let (idle, _) = stationary_occupancy(0.01, 0.05).unwrap();
        assert!((idle - 5.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_chains_rejected() {
        assert!(stationary_occupancy(0.0, 0.5).is_err());
        assert!(stationary_occupancy(0.5, 1.0).is_err());
        assert!(EnvState::new(vec![ge(0.0, 0.5)]).is_err());
    }

    #[test]
    fn stationary_means() {
        assert_eq!(
            BandSpec::Bernoulli { p: 0.7 }.stationary_mean().unwrap(),
            0.7
        );
        assert_eq!(
            BandSpec::IidUniform { lo: 0.0, hi: 0.5 }
                .stationary_mean()
                .unwrap(),
            0.25
        );
        let mu = ge(0.08, 0.02).stationary_mean().unwrap();
        let (oracle, _) = power_iteration(0.08, 0.02);
        assert!((mu - 0.2).abs() < 1e-12);
        assert!((mu - oracle).abs() < 1e-9);
    }

    #[test]
    fn band_validation() {
        assert!(BandSpec::IidUniform { lo: 0.6, hi: 0.5 }
            .validate()
            .is_err());
        assert!(BandSpec::IidUniform { lo: 0.5, hi: 0.5 }.validate().is_ok());
        assert!(BandSpec::Bernoulli { p: 1.2 }.validate().is_err());
        let bad_sum = BandSpec::IidDiscrete {
            support: vec![0.0, 1.0],
            probs: vec![0.5, 0.5 + 1e-9],
        };
        assert!(bad_sum.validate().is_err());
        let bad_support = BandSpec::IidDiscrete {
            support: vec![0.0, 1.5],
            probs: vec![0.5, 0.5],
        };
        assert!(bad_support.validate().is_err());
        let bad_reward = BandSpec::GilbertElliot {
            p01: 0.5,
            p10: 0.5,
            r_idle: 1.1,
            r_occ: 0.0,
        };
        assert!(bad_reward.validate().is_err());
    }

    #[test]
    fn advance_counts_slots() {
        let mut env = EnvState::new(vec![ge(0.5, 0.5)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..7 {
            env.advance(&mut rng);
        }
        assert_eq!(env.slot(), 7);
        env.advance(&mut rng);
        assert_eq!(env.slot(), 8);
    }

    #[test]
    fn markov_state_only_for_markov_bands() {
        let env = EnvState::new(vec![ge(0.5, 0.5), BandSpec::Bernoulli { p: 0.3 }]).unwrap();
        assert!(env.markov_state(0).is_some());
        assert!(env.markov_state(1).is_none());
    }

    #[test]
    fn symmetric_chain_occupancy() {
        let mut env = EnvState::new(vec![ge(0.5, 0.5)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        env.init_states(&mut rng);
        let t = 100_000;
        let mut idle = 0usize;
        for _ in 0..t {
            env.advance(&mut rng);
            if env.markov_state(0) == Some(IDLE) {
                idle += 1;
            }
        }
        let freq = idle as f64 / t as f64;
        assert!((freq - 0.5).abs() < 0.01, "{freq}");
    }

    #[test]
    fn init_states_follow_stationary_law() {
        let mut env = EnvState::new(vec![ge(0.08, 0.01)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let trials = 100_000;
        let mut idle = 0usize;
        for _ in 0..trials {
            env.init_states(&mut rng);
            if env.markov_state(0) == Some(IDLE) {
                idle += 1;
            }
        }
        let freq = idle as f64 / trials as f64;
        let sigma = (freq * (1.0 - freq) / trials as f64).sqrt();
        assert!((freq - 1.0 / 9.0).abs() < 3.0 * sigma + 1e-12, "{freq}");
    }

    #[test]
    fn observe_rewards() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut env = EnvState::new(vec![
            ge(0.5, 0.5),
            BandSpec::Bernoulli { p: 1.0 },
            BandSpec::IidUniform { lo: 0.5, hi: 1.0 },
        ])
        .unwrap();
        // Freshly built Markov bands sit in the idle state.
        let obs = env.observe(0, &mut rng).unwrap();
        assert_eq!(
            obs,
            Observation {
                reward: 1.0,
                state: Some(IDLE)
            }
        );
        for _ in 0..100 {
            assert_eq!(env.observe(1, &mut rng).unwrap().reward, 1.0);
        }
        let n = 10_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let r = env.observe(2, &mut rng).unwrap().reward;
            assert!((0.5..=1.0).contains(&r));
            sum += r;
        }
        assert!((sum / n as f64 - 0.75).abs() < 0.01);
        assert_eq!(
            env.observe(3, &mut rng),
            Err(BandError::OutOfRange { index: 3, bands: 3 })
        );
    }

    #[test]
    fn discrete_sampler_frequencies() {
        let spec = BandSpec::IidDiscrete {
            support: vec![0.0, 0.5, 1.0],
            probs: vec![0.2, 0.3, 0.5],
        };
        let mut env = EnvState::new(vec![spec]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut hits = [0usize; 3];
        let n = 100_000;
        for _ in 0..n {
            let obs = env.observe(0, &mut rng).unwrap();
            hits[obs.state.unwrap() as usize] += 1;
        }
        for (h, p) in hits.iter().zip([0.2, 0.3, 0.5]) {
            assert!((*h as f64 / n as f64 - p).abs() < 0.01);
        }
    }

    #[test]
    fn trajectories_are_seed_deterministic() {
        let bands = vec![ge(0.1, 0.2), ge(0.9, 0.95)];
        let run = |seed| {
            let mut env = EnvState::new(bands.clone()).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            env.init_states(&mut rng);
            (0..1000)
                .map(|_| {
                    env.advance(&mut rng);
                    (env.markov_state(0).unwrap(), env.markov_state(1).unwrap())
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(run(9), run(9));
        assert_ne!(run(9), run(10));
    }

    #[test]
    fn time_average_matches_stationary_mean() {
        let spec = ge(0.08, 0.02);
        let mu = spec.stationary_mean().unwrap();
        let mut env = EnvState::new(vec![spec]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        env.init_states(&mut rng);
        let t = 100_000;
        let mut sum = 0.0;
        for _ in 0..t {
            env.advance(&mut rng);
            sum += env.observe(0, &mut rng).unwrap().reward;
        }
        assert!((sum / t as f64 - mu).abs() < 0.01);
    }
}
