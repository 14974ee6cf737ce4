//! Recency-based index policies for spectrum sensing modelled as a
//! restless multi-armed bandit, with KL-UCB, DSEE and RCA baselines and a
//! seeded, parallel Monte Carlo harness.
//!
//! ```
//! use rbl::{monte_carlo, Preset};
//!
//! let mut scenario = Preset::Fig8.expand();
//! scenario.runs = 4;
//! scenario.set_horizon(1 << 10);
//! let series = monte_carlo(&scenario, 2).unwrap();
//! let recency = series.policy("recency_c0.5").unwrap();
//! assert_eq!(recency.points.last().unwrap().n, 1 << 10);
//! ```

pub mod analysis;
pub mod env;
pub mod error;
pub mod harness;
pub mod policies;
pub mod presets;
pub mod report;
pub mod scenario;
pub mod validation;

pub use analysis::{slope_estimate, SlopeEstimate};
pub use env::{BandSpec, EnvState, Observation};
pub use error::{Error, Result};
pub use harness::{
    monte_carlo, run_episode, run_seed, CheckpointStats, MetricSeries, PolicySeries, RunTrace,
};
pub use policies::{Decision, Policy};
pub use presets::{expand_preset, Preset};
pub use scenario::{PolicyKind, PolicySpec, ScenarioConfig};
