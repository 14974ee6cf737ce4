use super::{argmax, check_reward, BonusFn, Decision, Policy, PolicyError, SampleMeans};
use crate::env::Observation;

/// Recency index policy for two-state Markov (Gilbert-Elliot) rewards.
///
/// A band, once chosen, is sensed until its observed state returns to the
/// state seen at the first sensing of the visit, i.e. for one full
/// regenerative cycle. Indices `mean_k + g(n / tau_k)` are recomputed only
/// when a cycle closes. Staying on the same band lets the closing
/// observation open the next cycle; hopping away collects its reward but
/// leaves it out of the sample mean.
///
/// Startup senses one full cycle on every band in index order.
#[derive(Debug, Clone)]
pub struct RecencyRegen {
    bonus: BonusFn,
    means: SampleMeans,
    last_sensed: Vec<u64>,
    sensed: Vec<u64>,
    init_cursor: usize,
    current: usize,
    anchor: Option<u32>,
    excluded: Option<(usize, f64)>,
}

impl RecencyRegen {
    pub fn new(bands: usize, bonus: BonusFn) -> Result<Self, PolicyError> {
        if bands == 0 {
            return Err(PolicyError::NoBands);
        }
        Ok(Self {
            bonus,
            means: SampleMeans::new(bands),
            last_sensed: vec![0; bands],
            sensed: vec![0; bands],
            init_cursor: 0,
            current: 0,
            anchor: None,
            excluded: None,
        })
    }

    pub fn current_band(&self) -> usize {
        self.current
    }

    pub fn cycle_open(&self) -> bool {
        self.anchor.is_some()
    }

    pub fn anchor_state(&self) -> Option<u32> {
        self.anchor
    }

    pub fn in_startup(&self) -> bool {
        self.init_cursor < self.means.len()
    }

    /// Rewards entering the sample means.
    pub fn means(&self) -> &SampleMeans {
        &self.means
    }

    /// Every sensing, including held-back cycle-closing observations.
    pub fn sensed(&self) -> &[u64] {
        &self.sensed
    }

    pub fn last_sensed(&self) -> &[u64] {
        &self.last_sensed
    }

    /// Most recent cycle-closing observation withheld from a sample mean,
    /// as `(band, reward)`.
    pub fn last_excluded(&self) -> Option<(usize, f64)> {
        self.excluded
    }

    fn hop(&mut self, to: usize, reward: f64) -> Decision {
        self.excluded = Some((self.current, reward));
        self.anchor = None;
        self.current = to;
        Decision::Reselected(to)
    }

    /// Processes the observation made on the current band at slot `n`.
    pub fn step(
        &mut self,
        state: Option<u32>,
        reward: f64,
        n: u64,
    ) -> Result<Decision, PolicyError> {
        let state = match state {
            Some(s @ 0..=1) => s,
            other => return Err(PolicyError::BadState(other)),
        };
        check_reward(reward)?;
        let band = self.current;
        self.last_sensed[band] = n;
        self.sensed[band] += 1;

        let anchor = match self.anchor {
            None => {
                self.anchor = Some(state);
                self.means.push(band, reward);
                return Ok(Decision::Continue);
            }
            Some(a) => a,
        };
        if state != anchor {
            self.means.push(band, reward);
            return Ok(Decision::Continue);
        }

        // Cycle closed.
        if self.in_startup() {
            self.init_cursor += 1;
            if self.in_startup() {
                return Ok(self.hop(self.init_cursor, reward));
            }
        }
        let best = argmax(
            (0..self.means.len())
                .map(|k| self.means.mean(k) + self.bonus.recency(n, self.last_sensed[k])),
        );
        if best == band {
            self.means.push(band, reward);
            Ok(Decision::Reselected(band))
        } else {
            Ok(self.hop(best, reward))
        }
    }
}

impl Policy for RecencyRegen {
    fn select(&mut self, _n: u64) -> usize {
        self.current
    }

    fn update(&mut self, band: usize, obs: Observation, n: u64) -> Result<(), PolicyError> {
        if band != self.current {
            return Err(PolicyError::WrongBand {
                band,
                expected: self.current,
            });
        }
        self.step(obs.state, obs.reward, n).map(|_| ())
    }
}
