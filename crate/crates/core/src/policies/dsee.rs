use serde::{Deserialize, Serialize};

use super::{argmax, check_reward, Policy, PolicyError, SampleMeans, Schedule};
use crate::env::Observation;

/// Which observations feed DSEE's exploitation means.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeanSource {
    #[default]
    ExploreOnly,
    All,
}

/// Deterministic sequencing of exploration and exploitation (DSEE).
///
/// Explores round-robin whenever some band has fewer than `D(n)` exploration
/// sensings; otherwise exploits the band with the best sample mean.
#[derive(Debug, Clone)]
pub struct Dsee {
    d: Schedule,
    source: MeanSource,
    explore: SampleMeans,
    all: SampleMeans,
    cursor: usize,
    exploring: bool,
    exploration_slots: u64,
}

impl Dsee {
    pub fn new(bands: usize, d: Schedule, source: MeanSource) -> Result<Self, PolicyError> {
        if bands == 0 {
            return Err(PolicyError::NoBands);
        }
        d.check("DSEE parameter D")?;
        Ok(Self {
            d,
            source,
            explore: SampleMeans::new(bands),
            all: SampleMeans::new(bands),
            cursor: 0,
            exploring: false,
            exploration_slots: 0,
        })
    }

    pub fn exploration_counts(&self) -> &[u64] {
        self.explore.counts()
    }

    pub fn exploration_slots(&self) -> u64 {
        self.exploration_slots
    }

    /// Sample means the exploitation step ranks.
    pub fn means(&self) -> &SampleMeans {
        match self.source {
            MeanSource::ExploreOnly => &self.explore,
            MeanSource::All => &self.all,
        }
    }
}

impl Policy for Dsee {
    fn select(&mut self, n: u64) -> usize {
        let counts = self.explore.counts();
        if let Some(k) = counts.iter().position(|m| *m == 0) {
            self.exploring = true;
            return k;
        }
        let min = counts.iter().copied().min().unwrap_or(0);
        if (min as f64) < self.d.at(n as f64) {
            self.exploring = true;
            let k = self.cursor;
            self.cursor = (self.cursor + 1) % counts.len();
            return k;
        }
        self.exploring = false;
        let means = self.means();
        argmax((0..means.len()).map(|k| means.mean(k)))
    }

    fn update(&mut self, band: usize, obs: Observation, _n: u64) -> Result<(), PolicyError> {
        check_reward(obs.reward)?;
        if self.exploring {
            self.explore.push(band, obs.reward);
            self.exploration_slots += 1;
        }
        self.all.push(band, obs.reward);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn feed(p: &mut Dsee, n: u64, rewards: &[f64]) -> usize {
        let k = p.select(n);
        p.update(
            k,
            Observation {
                reward: rewards[k],
                state: None,
            },
            n,
        )
        .unwrap();
        k
    }

    #[test]
    fn unexplored_bands_go_first() {
        let mut p = Dsee::new(3, Schedule::LN, MeanSource::ExploreOnly).unwrap();
        let order: Vec<usize> = (1..=3).map(|n| feed(&mut p, n, &[0.1, 0.2, 0.3])).collect();
        assert_eq!(order, vec![0, 1, 2]);
    }

    #[test]
    fn exploits_once_threshold_met() {
        let mut p = Dsee::new(2, Schedule::LN, MeanSource::ExploreOnly).unwrap();
        let mut n = 1;
        while p.exploration_counts().iter().any(|m| *m < 5) {
            feed(&mut p, n, &[0.2, 0.8]);
            n += 1;
        }
        assert_eq!(p.exploration_counts(), &[5, 5]);
        // ln(100) < 5: exploit the better band.
        assert_eq!(p.select(100), 1);
        assert!(!p.exploring);
    }

    #[test]
    fn exploration_fraction_is_small() {
        let mut p = Dsee::new(5, Schedule::LN, MeanSource::ExploreOnly).unwrap();
        let horizon = 1u64 << 15;
        for n in 1..=horizon {
            feed(&mut p, n, &[0.1, 0.7, 0.5, 0.6, 0.8]);
        }
        let frac = p.exploration_slots() as f64 / horizon as f64;
        let approx = 5.0 * (horizon as f64).ln() / horizon as f64;
        assert!(frac < 0.01, "{frac}");
        assert!((frac - approx).abs() < 0.5 * approx, "{frac} vs {approx}");
    }

    #[test]
    fn mean_sources_differ() {
        let mut p = Dsee::new(2, Schedule::Constant(1.0), MeanSource::All).unwrap();
        for n in 1..=10 {
            feed(&mut p, n, &[0.2, 0.8]);
        }
        assert_eq!(p.means().total(), 10);
        assert_eq!(p.explore.total(), 2);
    }
}
