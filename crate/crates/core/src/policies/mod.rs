//! Sensing policies behind one select/update contract.
//!
//! Every slot the harness asks [`Policy::select`] for a band, senses it, and
//! feeds the observation back through [`Policy::update`]. Ties between equal
//! indices always go to the lowest band index.

mod bonus;
mod dsee;
mod klucb;
mod rca;
mod recency;
mod regen;
mod ucb1;

pub use bonus::BonusFn;
pub use dsee::{Dsee, MeanSource};
pub use klucb::{kl_bernoulli, klucb_index, KlUcb, KLUCB_TOLERANCE};
pub use rca::Rca;
pub use recency::RecencyIid;
pub use regen::RecencyRegen;
pub use ucb1::Ucb1;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::env::Observation;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolicyError {
    #[error("invalid policy parameter: {0}")]
    InvalidParam(String),
    #[error("reward {0} outside [0, 1]")]
    RewardRange(f64),
    #[error("observed state {0:?} is not a valid two-state observation")]
    BadState(Option<u32>),
    #[error("band {band} updated but band {expected} was selected")]
    WrongBand { band: usize, expected: usize },
    #[error("policy needs at least one band")]
    NoBands,
}

/// Outcome of feeding one observation to a regenerative policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    /// Mid-cycle: keep sensing the current band.
    Continue,
    /// A cycle just closed and the policy picked this band for the next slot
    /// (possibly the same band).
    Reselected(usize),
}

/// Growth schedule for a baseline's tuning parameter: a constant or `ln t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Schedule {
    Constant(f64),
    Named(ScheduleName),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleName {
    Ln,
}

impl Schedule {
    pub const LN: Schedule = Schedule::Named(ScheduleName::Ln);

    pub fn at(&self, t: f64) -> f64 {
        match self {
            Schedule::Constant(v) => *v,
            Schedule::Named(ScheduleName::Ln) => t.max(1.0).ln(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Schedule::Constant(v) => format!("{v}"),
            Schedule::Named(ScheduleName::Ln) => "ln".to_string(),
        }
    }

    pub(crate) fn check(&self, what: &str) -> Result<(), PolicyError> {
        match self {
            Schedule::Constant(v) if !(v.is_finite() && *v > 0.0) => Err(
                PolicyError::InvalidParam(format!("{what} must be positive, got {v}")),
            ),
            _ => Ok(()),
        }
    }
}

/// Uniform contract shared by every sensing policy.
pub trait Policy: Send {
    /// Band to sense at slot `n` (1-based).
    fn select(&mut self, n: u64) -> usize;

    /// Feeds back what sensing `band` at slot `n` produced.
    fn update(&mut self, band: usize, obs: Observation, n: u64) -> Result<(), PolicyError>;
}

pub(crate) fn check_reward(reward: f64) -> Result<(), PolicyError> {
    if (0.0..=1.0).contains(&reward) {
        Ok(())
    } else {
        Err(PolicyError::RewardRange(reward))
    }
}

/// Index of the largest score, lowest index on ties.
pub fn argmax<I: IntoIterator<Item = f64>>(scores: I) -> usize {
    let mut best = 0;
    let mut best_score = f64::NEG_INFINITY;
    for (k, s) in scores.into_iter().enumerate() {
        if s > best_score {
            best = k;
            best_score = s;
        }
    }
    best
}

/// Running reward sums and sample counts per band.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMeans {
    sums: Vec<f64>,
    counts: Vec<u64>,
}

impl SampleMeans {
    pub fn new(bands: usize) -> Self {
        Self {
            sums: vec![0.0; bands],
            counts: vec![0; bands],
        }
    }

    pub fn push(&mut self, band: usize, reward: f64) {
        self.sums[band] += reward;
        self.counts[band] += 1;
    }

    /// Adds `count` observations summing to `sum` in one go.
    pub fn push_batch(&mut self, band: usize, sum: f64, count: u64) {
        self.sums[band] += sum;
        self.counts[band] += count;
    }

    pub fn mean(&self, band: usize) -> f64 {
        match self.counts[band] {
            0 => 0.0,
            m => self.sums[band] / m as f64,
        }
    }

    pub fn count(&self, band: usize) -> u64 {
        self.counts[band]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}
