use super::{argmax, check_reward, Decision, Policy, PolicyError, SampleMeans, Schedule};
use crate::env::Observation;

/// Regenerative cycle algorithm (RCA).
///
/// Each band's regenerative state is the first state ever observed on it.
/// A visit first waits for that state (observations discarded), then plays
/// whole cycles from it back to it. Only in-cycle observations enter the
/// sample means, and the index `mean_k + sqrt(L(t) ln t / M_k)` uses the
/// in-cycle clock `t` (total slots inside completed cycles).
#[derive(Debug, Clone)]
pub struct Rca {
    l: Schedule,
    means: SampleMeans,
    anchors: Vec<Option<u32>>,
    current: usize,
    in_cycle: bool,
    cycle_sum: f64,
    cycle_len: u64,
    cycle_clock: u64,
    init_cursor: usize,
    discarded: u64,
}

impl Rca {
    pub fn new(bands: usize, l: Schedule) -> Result<Self, PolicyError> {
        if bands == 0 {
            return Err(PolicyError::NoBands);
        }
        l.check("RCA parameter L")?;
        Ok(Self {
            l,
            means: SampleMeans::new(bands),
            anchors: vec![None; bands],
            current: 0,
            in_cycle: false,
            cycle_sum: 0.0,
            cycle_len: 0,
            cycle_clock: 0,
            init_cursor: 0,
            discarded: 0,
        })
    }

    pub fn current_band(&self) -> usize {
        self.current
    }

    /// In-cycle sample means; counts are the per-band in-cycle sample sizes.
    pub fn means(&self) -> &SampleMeans {
        &self.means
    }

    pub fn anchor(&self, band: usize) -> Option<u32> {
        self.anchors[band]
    }

    /// Slots spent inside completed cycles across all bands.
    pub fn cycle_clock(&self) -> u64 {
        self.cycle_clock
    }

    /// Observations thrown away while waiting for a regenerative state.
    pub fn discarded(&self) -> u64 {
        self.discarded
    }

    fn index(&self, k: usize) -> f64 {
        let t = self.cycle_clock as f64;
        let explore = self.l.at(t) * t.ln() / self.means.count(k) as f64;
        self.means.mean(k) + explore.max(0.0).sqrt()
    }

    pub fn step(
        &mut self,
        state: Option<u32>,
        reward: f64,
        _n: u64,
    ) -> Result<Decision, PolicyError> {
        let state = state.ok_or(PolicyError::BadState(None))?;
        check_reward(reward)?;
        let band = self.current;
        let anchor = *self.anchors[band].get_or_insert(state);

        if !self.in_cycle {
            self.discarded += 1;
            self.in_cycle = state == anchor;
            return Ok(Decision::Continue);
        }
        self.cycle_sum += reward;
        self.cycle_len += 1;
        if state != anchor {
            return Ok(Decision::Continue);
        }

        self.means.push_batch(band, self.cycle_sum, self.cycle_len);
        self.cycle_clock += self.cycle_len;
        self.cycle_sum = 0.0;
        self.cycle_len = 0;

        let next = if self.init_cursor + 1 < self.means.len() {
            self.init_cursor += 1;
            self.init_cursor
        } else {
            self.init_cursor = self.means.len();
            argmax((0..self.means.len()).map(|k| self.index(k)))
        };
        if next != band {
            self.in_cycle = false;
            self.current = next;
        }
        Ok(Decision::Reselected(next))
    }
}

impl Policy for Rca {
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
