use super::{argmax, check_reward, BonusFn, Policy, PolicyError, SampleMeans};
use crate::env::Observation;

/// Recency index policy for i.i.d. rewards.
///
/// After sensing every band once (in index order) it picks, every slot,
/// the band maximizing `mean_k + g(n / tau_k)` where `tau_k` is the last
/// slot at which band `k` was sensed.
#[derive(Debug, Clone)]
pub struct RecencyIid {
    bonus: BonusFn,
    means: SampleMeans,
    last_sensed: Vec<u64>,
    init_cursor: usize,
    pending: Option<usize>,
}

impl RecencyIid {
    pub fn new(bands: usize, bonus: BonusFn) -> Result<Self, PolicyError> {
        if bands == 0 {
            return Err(PolicyError::NoBands);
        }
        Ok(Self {
            bonus,
            means: SampleMeans::new(bands),
            last_sensed: vec![0; bands],
            init_cursor: 0,
            pending: None,
        })
    }

    pub fn bonus(&self) -> BonusFn {
        self.bonus
    }

    pub fn means(&self) -> &SampleMeans {
        &self.means
    }

    pub fn last_sensed(&self) -> &[u64] {
        &self.last_sensed
    }

    pub fn in_startup(&self) -> bool {
        self.init_cursor < self.means.len()
    }

    /// `I_k(n)` for every band; only meaningful once startup is over.
    pub fn indices(&self, n: u64) -> Vec<f64> {
        (0..self.means.len()).map(|k| self.index(k, n)).collect()
    }

    #[inline]
    fn index(&self, k: usize, n: u64) -> f64 {
        self.means.mean(k) + self.bonus.recency(n, self.last_sensed[k])
    }

    pub fn select_band(&self, n: u64) -> usize {
        if self.in_startup() {
            return self.init_cursor;
        }
        argmax((0..self.means.len()).map(|k| self.index(k, n)))
    }

    pub fn record(&mut self, band: usize, reward: f64, n: u64) -> Result<(), PolicyError> {
        check_reward(reward)?;
        self.means.push(band, reward);
        self.last_sensed[band] = n;
        if self.in_startup() && band == self.init_cursor {
            self.init_cursor += 1;
        }
        Ok(())
    }
}

impl Policy for RecencyIid {
    fn select(&mut self, n: u64) -> usize {
        let band = self.select_band(n);
        self.pending = Some(band);
        band
    }

    fn update(&mut self, band: usize, obs: Observation, n: u64) -> Result<(), PolicyError> {
        if let Some(expected) = self.pending.take() {
            if expected != band {
                return Err(PolicyError::WrongBand { band, expected });
            }
        }
        self.record(band, obs.reward, n)
    }
}
