use super::{argmax, check_reward, Policy, PolicyError, SampleMeans};
use crate::env::Observation;

/// Absolute tolerance of the KL-UCB bisection.
pub const KLUCB_TOLERANCE: f64 = 1e-6;

/// `x ln(x / y)` with the `0 ln 0 = 0` convention.
fn xlogx_over(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * (x / y).ln()
    }
}

/// Bernoulli Kullback-Leibler divergence `d(p || q)`.
///
/// Infinite when `q` sits on the boundary and `p` differs from it.
pub fn kl_bernoulli(p: f64, q: f64) -> f64 {
    if p == q {
        return 0.0;
    }
    if q <= 0.0 || q >= 1.0 {
        return f64::INFINITY;
    }
    (xlogx_over(p, q) + xlogx_over(1.0 - p, 1.0 - q)).max(0.0)
}

/// Per-sample divergence budget `(ln n + c ln ln n) / count`.
fn klucb_budget(count: u64, n: u64, c_loglog: f64) -> f64 {
    let log_n = (n as f64).ln();
    let extra = if c_loglog != 0.0 && log_n > 1.0 {
        c_loglog * log_n.ln()
    } else {
        0.0
    };
    (log_n + extra) / count as f64
}

/// Largest `q in [mean, 1]` with `count * d(mean || q) <= ln n + c ln ln n`.
///
/// The returned point always satisfies the constraint and lies within
/// [`KLUCB_TOLERANCE`] below the exact root.
pub fn klucb_index(mean: f64, count: u64, n: u64, c_loglog: f64) -> f64 {
    debug_assert!(count >= 1);
    index_with_budget(mean, klucb_budget(count, n, c_loglog))
}

fn index_with_budget(mean: f64, budget: f64) -> f64 {
    if budget <= 0.0 {
        return mean;
    }
    // Pinsker: d(p || q) >= 2 (q - p)^2 caps the search interval.
    let mut hi = (mean + (budget / 2.0).sqrt()).min(1.0);
    if kl_bernoulli(mean, hi) <= budget {
        return hi;
    }
    let mut lo = mean;
    while hi - lo > KLUCB_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if kl_bernoulli(mean, mid) <= budget {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// KL-UCB with the Bernoulli divergence.
#[derive(Debug, Clone)]
pub struct KlUcb {
    means: SampleMeans,
    c_loglog: f64,
}

impl KlUcb {
    pub fn new(bands: usize, c_loglog: f64) -> Result<Self, PolicyError> {
        if bands == 0 {
            return Err(PolicyError::NoBands);
        }
        if !(c_loglog.is_finite() && c_loglog >= 0.0) {
            return Err(PolicyError::InvalidParam(format!(
                "c_loglog must be nonnegative, got {c_loglog}"
            )));
        }
        Ok(Self {
            means: SampleMeans::new(bands),
            c_loglog,
        })
    }

    pub fn means(&self) -> &SampleMeans {
        &self.means
    }

    pub fn select_band(&self, n: u64) -> usize {
        if let Some(k) = self.means.counts().iter().position(|m| *m == 0) {
            return k;
        }
        let bands = self.means.len();
        let budget = |k: usize| klucb_budget(self.means.count(k), n, self.c_loglog);
        // Bisect the empirically best band first. Any band whose constraint
        // already fails at that index has a strictly smaller index, since
        // d(mean || .) increases on [mean, 1] and returned points are
        // feasible; such bands cannot win the argmax and are not bisected.
        let lead = argmax((0..bands).map(|k| self.means.mean(k)));
        let lead_index = index_with_budget(self.means.mean(lead), budget(lead));
        argmax((0..bands).map(|k| {
            let mean = self.means.mean(k);
            let b = budget(k);
            if k == lead {
                lead_index
            } else if mean < lead_index && kl_bernoulli(mean, lead_index) > b {
                f64::NEG_INFINITY
            } else {
                index_with_budget(mean, b)
            }
        }))
    }

    /// Index of every band, each computed by bisection.
    pub fn indices(&self, n: u64) -> Vec<f64> {
        (0..self.means.len())
            .map(|k| klucb_index(self.means.mean(k), self.means.count(k), n, self.c_loglog))
            .collect()
    }
}

impl Policy for KlUcb {
    fn select(&mut self, n: u64) -> usize {
        self.select_band(n)
    }

    fn update(&mut self, band: usize, obs: Observation, _n: u64) -> Result<(), PolicyError> {
        check_reward(obs.reward)?;
        self.means.push(band, obs.reward);
        Ok(())
    }
}
