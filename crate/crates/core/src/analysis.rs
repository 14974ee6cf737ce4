//! Numeric checks of the theory behind the recency policies: slope fits of
//! sensing counts against `ln n`, Pinsker-type bounds, regenerative cycle
//! lengths and the Lai-Robbins constants.

use thiserror::Error;

use crate::harness::PolicySeries;
use crate::policies::kl_bernoulli;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("slope fit needs at least 3 checkpoints, window has {0}")]
    ShortWindow(usize),
    #[error("band {band} not present ({bands} bands)")]
    NoSuchBand { band: usize, bands: usize },
    #[error("distributions are defined on different supports")]
    SupportMismatch,
    #[error("invalid pmf: {0}")]
    BadPmf(String),
    #[error("probabilities must lie strictly inside (0, 1), got {0}")]
    Boundary(f64),
    #[error("trace has no completed regenerative cycle")]
    NoCycle,
}

/// Least-squares line of mean sensing count against `ln n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeEstimate {
    pub slope: f64,
    pub intercept: f64,
    /// First and last checkpoint of the fit.
    pub window: (u64, u64),
    pub r_squared: f64,
}

/// Ordinary least squares of `ys` on `xs`.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64), AnalysisError> {
    if xs.len() < 3 {
        return Err(AnalysisError::ShortWindow(xs.len()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0)
    };
    Ok((slope, intercept, r2))
}

/// Slope of `band`'s mean sensing count against `ln n` over the checkpoints
/// in `window` (inclusive); defaults to the upper half of the checkpoints.
pub fn slope_estimate(
    series: &PolicySeries,
    band: usize,
    window: Option<(u64, u64)>,
) -> Result<SlopeEstimate, AnalysisError> {
    let bands = series.points.first().map_or(0, |p| p.mean_counts.len());
    if band >= bands {
        return Err(AnalysisError::NoSuchBand { band, bands });
    }
    let points: Vec<_> = match window {
        Some((lo, hi)) => series
            .points
            .iter()
            .filter(|p| p.n >= lo && p.n <= hi)
            .collect(),
        None => {
            let half = series.points.len() / 2;
            series.points[half..].iter().collect()
        }
    };
    let xs: Vec<f64> = points.iter().map(|p| (p.n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.mean_counts[band]).collect();
    let (slope, intercept, r_squared) = fit_line(&xs, &ys)?;
    Ok(SlopeEstimate {
        slope,
        intercept,
        window: (points[0].n, points[points.len() - 1].n),
        r_squared,
    })
}

/// Outcome of one Pinsker-type inequality check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PinskerCheck {
    /// Absolute difference of the means.
    pub delta: f64,
    pub kl: f64,
    pub holds: bool,
}

/// A probability mass function on a finite support in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    pub support: Vec<f64>,
    pub probs: Vec<f64>,
}

impl Pmf {
    pub fn new(support: Vec<f64>, probs: Vec<f64>) -> Result<Self, AnalysisError> {
        if support.len() != probs.len() || support.is_empty() {
            return Err(AnalysisError::BadPmf(
                "support and probabilities differ in length".into(),
            ));
        }
        if probs.iter().any(|p| p.is_nan() || *p < 0.0) {
            return Err(AnalysisError::BadPmf("negative probability".into()));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(AnalysisError::BadPmf(format!("mass {total} != 1")));
        }
        Ok(Self { support, probs })
    }

    pub fn bernoulli(p: f64) -> Self {
        Self {
            support: vec![0.0, 1.0],
            probs: vec![1.0 - p, p],
        }
    }

    pub fn mean(&self) -> f64 {
        self.support
            .iter()
            .zip(&self.probs)
            .map(|(x, p)| x * p)
            .sum()
    }
}

/// `KL(p || q)`; points with `p = 0` contribute nothing, points with
/// `p > 0 = q` make it infinite.
pub fn kl_divergence(p: &Pmf, q: &Pmf) -> Result<f64, AnalysisError> {
    if p.support != q.support {
        return Err(AnalysisError::SupportMismatch);
    }
    let mut kl = 0.0;
    for (&a, &b) in p.probs.iter().zip(&q.probs) {
        if a == 0.0 {
            continue;
        }
        if b == 0.0 {
            return Ok(f64::INFINITY);
        }
        kl += a * (a / b).ln();
    }
    Ok(kl.max(0.0))
}

/// Absolute slack in the Pinsker checks, covering rounding in the mean and
/// divergence sums when `p` and `q` agree to the last few bits.
pub const PINSKER_SLACK: f64 = 1e-12;

/// `Delta^2 / 2 <= KL(p || q)` for distributions on `[0, 1]`.
pub fn pinsker_check_general(p: &Pmf, q: &Pmf) -> Result<PinskerCheck, AnalysisError> {
    let kl = kl_divergence(p, q)?;
    let delta = (p.mean() - q.mean()).abs();
    Ok(PinskerCheck {
        delta,
        kl,
        holds: 0.5 * delta * delta <= kl + PINSKER_SLACK,
    })
}

/// `2 Delta^2 <= d(p_x || p_y)` for Bernoulli distributions.
pub fn pinsker_check_bernoulli(px: f64, py: f64) -> Result<PinskerCheck, AnalysisError> {
    for p in [px, py] {
        if !(p > 0.0 && p < 1.0) {
            return Err(AnalysisError::Boundary(p));
        }
    }
    let kl = kl_bernoulli(px, py);
    let delta = (px - py).abs();
    Ok(PinskerCheck {
        delta,
        kl,
        holds: 2.0 * delta * delta <= kl + PINSKER_SLACK,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleStats {
    pub mean_length: f64,
    pub count: usize,
}

/// Mean length of the complete cycles between successive visits to
/// `anchor` in a state trace.
pub fn cycle_stats(states: &[u32], anchor: u32) -> Result<CycleStats, AnalysisError> {
    let mut visits = states
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == anchor)
        .map(|(i, _)| i);
    let first = visits.next().ok_or(AnalysisError::NoCycle)?;
    let (last, count) = visits.fold((first, 0usize), |(_, c), i| (i, c + 1));
    if count == 0 {
        return Err(AnalysisError::NoCycle);
    }
    Ok(CycleStats {
        mean_length: (last - first) as f64 / count as f64,
        count,
    })
}

/// `1 / KL(theta_k || theta*)` per band, `None` for the best band(s) and for
/// bands whose divergence from the best is zero.
pub fn lai_robbins_constants(dists: &[Pmf]) -> Result<Vec<Option<f64>>, AnalysisError> {
    let means: Vec<f64> = dists.iter().map(Pmf::mean).collect();
    let best = means.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let star = means.iter().position(|m| *m == best).unwrap_or(0);
    dists
        .iter()
        .zip(&means)
        .map(|(d, m)| {
            if *m >= best {
                return Ok(None);
            }
            let kl = kl_divergence(d, &dists[star])?;
            Ok(if kl > 0.0 { Some(1.0 / kl) } else { None })
        })
        .collect()
}
