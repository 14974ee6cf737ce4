use super::{argmax, check_reward, Policy, PolicyError, SampleMeans};
use crate::env::Observation;

/// UCB1: `mean_k + sqrt(2 ln n / M_k)` after one startup sensing per band.
#[derive(Debug, Clone)]
pub struct Ucb1 {
    means: SampleMeans,
}

impl Ucb1 {
    pub fn new(bands: usize) -> Result<Self, PolicyError> {
        if bands == 0 {
            return Err(PolicyError::NoBands);
        }
        Ok(Self {
            means: SampleMeans::new(bands),
        })
    }

    pub fn means(&self) -> &SampleMeans {
        &self.means
    }

    pub fn with_means(means: SampleMeans) -> Self {
        Self { means }
    }

    pub fn select_band(&self, n: u64) -> usize {
        if let Some(k) = self.means.counts().iter().position(|m| *m == 0) {
            return k;
        }
        let log_n = (n as f64).ln();
        argmax(
            (0..self.means.len())
                .map(|k| self.means.mean(k) + (2.0 * log_n / self.means.count(k) as f64).sqrt()),
        )
    }
}

impl Policy for Ucb1 {
    fn select(&mut self, n: u64) -> usize {
        self.select_band(n)
    }

    fn update(&mut self, band: usize, obs: Observation, _n: u64) -> Result<(), PolicyError> {
        check_reward(obs.reward)?;
        self.means.push(band, obs.reward);
        Ok(())
    }
}
