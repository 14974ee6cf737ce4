//! Built-in scenarios.

use std::fmt;
use std::str::FromStr;

use serde::Deserialize;

use crate::env::BandSpec;
use crate::error::Error;
use crate::policies::{MeanSource, Schedule};
use crate::scenario::{PolicyKind, PolicySpec, ScenarioConfig};

pub const DEFAULT_HORIZON: u64 = 1 << 15;
pub const DEFAULT_RUNS: usize = 1000;
pub const DEFAULT_SEED: u64 = 42;

const NEAR_TIE_PMFS: &str = include_str!("../data/near_tie_pmfs.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Two uniform bands, `[0, 1/2]` against `[1/2, 1]`.
    Fig7,
    /// Five Bernoulli bands.
    Fig8,
    /// Two discrete bands with nearly equal means on a 101-point grid.
    Fig9,
    /// Ten slowly varying Gilbert-Elliot bands.
    Fig11,
    /// Five rapidly varying Gilbert-Elliot bands.
    Fig12,
}

impl Preset {
    pub const ALL: [Preset; 5] = [Self::Fig7, Self::Fig8, Self::Fig9, Self::Fig11, Self::Fig12];

    pub fn name(self) -> &'static str {
        match self {
            Self::Fig7 => "fig7",
            Self::Fig8 => "fig8",
            Self::Fig9 => "fig9",
            Self::Fig11 => "fig11",
            Self::Fig12 => "fig12",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Self::Fig7 => "two i.i.d. uniform bands, gap 1/2",
            Self::Fig8 => "five Bernoulli bands",
            Self::Fig9 => "two discrete bands with a near tie",
            Self::Fig11 => "ten slowly varying Gilbert-Elliot bands",
            Self::Fig12 => "five rapidly varying Gilbert-Elliot bands",
        }
    }

    /// Labels of the policies proposed for this scenario (the recency
    /// family), as opposed to the baselines.
    pub fn proposed_labels(self) -> Vec<String> {
        self.expand()
            .policies
            .iter()
            .filter(|p| p.kind.is_recency())
            .map(PolicySpec::label)
            .collect()
    }

    pub fn expand(self) -> ScenarioConfig {
        let (bands, policies) = match self {
            Self::Fig7 => (
                vec![
                    BandSpec::IidUniform { lo: 0.0, hi: 0.5 },
                    BandSpec::IidUniform { lo: 0.5, hi: 1.0 },
                ],
                vec![PolicyKind::Recency { c: 2.0 }],
            ),
            Self::Fig8 => (
                [0.1, 0.7, 0.5, 0.6, 0.8]
                    .into_iter()
                    .map(|p| BandSpec::Bernoulli { p })
                    .collect(),
                with_baselines(PolicyKind::Recency { c: 0.5 }),
            ),
            Self::Fig9 => {
                let mut policies = vec![PolicyKind::Recency { c: 2.0 }];
                policies.extend(with_baselines(PolicyKind::Recency { c: 0.5 }));
                (near_tie_bands(), policies)
            }
            Self::Fig11 => (
                gilbert_elliot(
                    &[0.01, 0.01, 0.02, 0.02, 0.03, 0.03, 0.04, 0.04, 0.05, 0.05],
                    &[0.08, 0.07, 0.08, 0.07, 0.08, 0.07, 0.02, 0.01, 0.02, 0.01],
                ),
                with_baselines(PolicyKind::RecencyRegen { c: 2.0 }),
            ),
            Self::Fig12 => (
                gilbert_elliot(
                    &[0.95, 0.97, 0.94, 0.91, 0.96],
                    &[0.94, 0.93, 0.91, 0.97, 0.91],
                ),
                with_baselines(PolicyKind::RecencyRegen { c: 2.0 }),
            ),
        };
        ScenarioConfig {
            bands,
            horizon: DEFAULT_HORIZON,
            policies: policies.into_iter().map(PolicySpec::new).collect(),
            runs: DEFAULT_RUNS,
            master_seed: DEFAULT_SEED,
            checkpoints: None,
        }
    }
}

/// `proposed` followed by KL-UCB, DSEE and RCA with `L = ln n` and `L = 1`.
fn with_baselines(proposed: PolicyKind) -> Vec<PolicyKind> {
    vec![
        proposed,
        PolicyKind::Klucb { c_loglog: 0.0 },
        PolicyKind::Dsee {
            d: Schedule::LN,
            mean_source: MeanSource::ExploreOnly,
        },
        PolicyKind::Rca { l: Schedule::LN },
        PolicyKind::Rca {
            l: Schedule::Constant(1.0),
        },
    ]
}

fn gilbert_elliot(p10: &[f64], p01: &[f64]) -> Vec<BandSpec> {
    p10.iter()
        .zip(p01)
        .map(|(&p10, &p01)| BandSpec::GilbertElliot {
            p01,
            p10,
            r_idle: 1.0,
            r_occ: 0.0,
        })
        .collect()
}

#[derive(Deserialize)]
struct NearTieFile {
    support: Vec<f64>,
    bands: Vec<NearTieBand>,
}

#[derive(Deserialize)]
struct NearTieBand {
    probs: Vec<f64>,
}

fn near_tie_bands() -> Vec<BandSpec> {
    let file: NearTieFile =
        serde_json::from_str(NEAR_TIE_PMFS).expect("bundled pmf file is valid json");
    file.bands
        .into_iter()
        .map(|b| BandSpec::IidDiscrete {
            support: file.support.clone(),
            probs: b.probs,
        })
        .collect()
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

pub fn expand_preset(name: &str) -> Result<ScenarioConfig, Error> {
    Ok(name.parse::<Preset>()?.expand())
}
