//! Scenario configuration and its JSON form.
//!
//! ```json
//! {
//!   "bands": [{"type": "bernoulli", "p": 0.3}, {"type": "gilbert_elliot",
//!              "p01": 0.08, "p10": 0.01, "r_idle": 1.0, "r_occ": 0.0}],
//!   "horizon": 32768,
//!   "runs": 1000,
//!   "master_seed": 42,
//!   "policies": [{"name": "recency", "params": {"c": 2.0}},
//!                {"name": "rca", "params": {"L": "ln"}, "label": "rca_Lln"}],
//!   "checkpoints": [128, 256]
//! }
//! ```
//!
//! `checkpoints` may be omitted, in which case every power of two from
//! 2^7 up to the horizon is used, plus the horizon itself.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::env::BandSpec;
use crate::error::{Error, Result};
use crate::policies::{
    BonusFn, Dsee, KlUcb, MeanSource, Policy, Rca, RecencyIid, RecencyRegen, Schedule, Ucb1,
};

fn default_c() -> f64 {
    2.0
}

fn default_ln() -> Schedule {
    Schedule::LN
}

/// Policy family and its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "params", rename_all = "snake_case")]
pub enum PolicyKind {
    Recency {
        #[serde(default = "default_c")]
        c: f64,
    },
    RecencyRegen {
        #[serde(default = "default_c")]
        c: f64,
    },
    Ucb1 {},
    Klucb {
        #[serde(default)]
        c_loglog: f64,
    },
    Dsee {
        #[serde(rename = "D", default = "default_ln")]
        d: Schedule,
        #[serde(default)]
        mean_source: MeanSource,
    },
    Rca {
        #[serde(rename = "L", default = "default_ln")]
        l: Schedule,
    },
}

impl PolicyKind {
    pub const NAMES: [&'static str; 6] =
        ["recency", "recency_regen", "ucb1", "klucb", "dsee", "rca"];

    /// Policy with default parameters from its JSON name.
    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "recency" => PolicyKind::Recency { c: 2.0 },
            "recency_regen" => PolicyKind::RecencyRegen { c: 2.0 },
            "ucb1" => PolicyKind::Ucb1 {},
            "klucb" => PolicyKind::Klucb { c_loglog: 0.0 },
            "dsee" => PolicyKind::Dsee {
                d: Schedule::LN,
                mean_source: MeanSource::ExploreOnly,
            },
            "rca" => PolicyKind::Rca { l: Schedule::LN },
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            PolicyKind::Recency { .. } => "recency",
            PolicyKind::RecencyRegen { .. } => "recency_regen",
            PolicyKind::Ucb1 {} => "ucb1",
            PolicyKind::Klucb { .. } => "klucb",
            PolicyKind::Dsee { .. } => "dsee",
            PolicyKind::Rca { .. } => "rca",
        }
    }

    /// Label used in reports when none is configured, e.g. `recency_c0.5`.
    pub fn default_label(&self) -> String {
        match self {
            PolicyKind::Recency { c } => format!("recency_c{c}"),
            PolicyKind::RecencyRegen { c } => format!("recency_regen_c{c}"),
            PolicyKind::Ucb1 {} => "ucb1".into(),
            PolicyKind::Klucb { c_loglog } if *c_loglog == 0.0 => "klucb".into(),
            PolicyKind::Klucb { c_loglog } => format!("klucb_c{c_loglog}"),
            PolicyKind::Dsee { d, mean_source } => {
                let suffix = match mean_source {
                    MeanSource::ExploreOnly => "",
                    MeanSource::All => "_all",
                };
                format!("dsee_D{}{suffix}", d.label())
            }
            PolicyKind::Rca { l } => format!("rca_L{}", l.label()),
        }
    }

    /// True when the policy runs on the recency-based index.
    pub fn is_recency(&self) -> bool {
        matches!(
            self,
            PolicyKind::Recency { .. } | PolicyKind::RecencyRegen { .. }
        )
    }

    /// Checks that the policy can run on `bands`.
    pub fn check_bands(&self, bands: &[BandSpec]) -> Result<()> {
        let label = self.default_label();
        match self {
            PolicyKind::RecencyRegen { .. } => {
                if let Some((k, _)) = bands
                    .iter()
                    .enumerate()
                    .find(|(_, b)| b.state_count() != Some(2))
                {
                    return Err(Error::Config(format!(
                        "{label} needs two-state bands, band {} is not",
                        k + 1
                    )));
                }
            }
            PolicyKind::Rca { .. } => {
                if let Some((k, _)) = bands
                    .iter()
                    .enumerate()
                    .find(|(_, b)| b.state_count().is_none())
                {
                    return Err(Error::Config(format!(
                        "{label} needs finitely many observable states, band {} is continuous",
                        k + 1
                    )));
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn build(&self, bands: usize) -> Result<Box<dyn Policy>> {
        Ok(match *self {
            PolicyKind::Recency { c } => Box::new(RecencyIid::new(bands, BonusFn::new(c)?)?),
            PolicyKind::RecencyRegen { c } => Box::new(RecencyRegen::new(bands, BonusFn::new(c)?)?),
            PolicyKind::Ucb1 {} => Box::new(Ucb1::new(bands)?),
            PolicyKind::Klucb { c_loglog } => Box::new(KlUcb::new(bands, c_loglog)?),
            PolicyKind::Dsee { d, mean_source } => Box::new(Dsee::new(bands, d, mean_source)?),
            PolicyKind::Rca { l } => Box::new(Rca::new(bands, l)?),
        })
    }
}

/// One entry of the scenario's `policies` array. `params` may be omitted,
/// in which case every parameter takes its default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPolicySpec")]
pub struct PolicySpec {
    #[serde(flatten)]
    pub kind: PolicyKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl PolicySpec {
    pub fn new(kind: PolicyKind) -> Self {
        Self { kind, label: None }
    }

    pub fn labelled(kind: PolicyKind, label: impl Into<String>) -> Self {
        Self {
            kind,
            label: Some(label.into()),
        }
    }

    pub fn label(&self) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| self.kind.default_label())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolicySpec {
    name: String,
    #[serde(default)]
    params: Option<serde_json::Value>,
    #[serde(default)]
    label: Option<String>,
}

impl TryFrom<RawPolicySpec> for PolicySpec {
    type Error = serde_json::Error;

    fn try_from(raw: RawPolicySpec) -> Result<Self, Self::Error> {
        let params = raw
            .params
            .unwrap_or_else(|| serde_json::Value::Object(Default::default()));
        let kind = serde_json::from_value(serde_json::json!({"name": raw.name, "params": params}))?;
        Ok(Self {
            kind,
            label: raw.label,
        })
    }
}

impl From<PolicyKind> for PolicySpec {
    fn from(kind: PolicyKind) -> Self {
        Self::new(kind)
    }
}

/// A complete experiment description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub bands: Vec<BandSpec>,
    pub horizon: u64,
    pub policies: Vec<PolicySpec>,
    pub runs: usize,
    pub master_seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checkpoints: Option<Vec<u64>>,
}

/// Powers of two from 2^7 up to `horizon`, plus `horizon` itself.
pub fn default_checkpoints(horizon: u64) -> Vec<u64> {
    let mut points: Vec<u64> = (7..64)
        .map(|e| 1u64 << e)
        .take_while(|p| *p <= horizon)
        .collect();
    if points.last() != Some(&horizon) && horizon > 0 {
        points.push(horizon);
    }
    points
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn checkpoints(&self) -> Vec<u64> {
        match &self.checkpoints {
            Some(points) => points.clone(),
            None => default_checkpoints(self.horizon),
        }
    }

    /// Changes the horizon, dropping explicit checkpoints beyond it.
    pub fn set_horizon(&mut self, horizon: u64) {
        self.horizon = horizon;
        if let Some(points) = &mut self.checkpoints {
            points.retain(|p| *p <= horizon);
            if points.is_empty() {
                self.checkpoints = None;
            }
        }
    }

    /// Stationary mean reward of each band.
    pub fn stationary_means(&self) -> Result<Vec<f64>> {
        self.bands
            .iter()
            .map(|b| b.stationary_mean().map_err(Error::from))
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.bands.is_empty() {
            return Err(Error::Config("no bands".into()));
        }
        for (k, band) in self.bands.iter().enumerate() {
            band.validate()
                .map_err(|e| Error::Config(format!("band {}: {e}", k + 1)))?;
        }
        if self.horizon < self.bands.len() as u64 {
            return Err(Error::Config(format!(
                "horizon {} shorter than the {} startup slots",
                self.horizon,
                self.bands.len()
            )));
        }
        if self.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        let points = self.checkpoints();
        if points.is_empty() {
            return Err(Error::Config("no checkpoints".into()));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config(
                "checkpoints must be strictly increasing".into(),
            ));
        }
        if points[0] < 1 || *points.last().unwrap() > self.horizon {
            return Err(Error::Config(format!(
                "checkpoints must lie in [1, {}]",
                self.horizon
            )));
        }
        if self.policies.is_empty() {
            return Err(Error::Config("no policies".into()));
        }
        let mut labels = Vec::new();
        for spec in &self.policies {
            spec.kind.check_bands(&self.bands)?;
            spec.kind.build(self.bands.len())?;
            let label = spec.label();
            if labels.contains(&label) {
                return Err(Error::Config(format!("duplicate policy label `{label}`")));
            }
            labels.push(label);
        }
        Ok(())
    }

    /// Keeps only policies whose label or name is listed; names with no
    /// configured match are added with default parameters.
    pub fn restrict_policies(&mut self, wanted: &[String]) -> Result<()> {
        let mut kept = Vec::new();
        for w in wanted {
            let matches: Vec<PolicySpec> = self
                .policies
                .iter()
                .filter(|p| p.label() == *w || p.kind.name() == w)
                .cloned()
                .collect();
            if matches.is_empty() {
                let kind = PolicyKind::from_name(w)
                    .ok_or_else(|| Error::Config(format!("unknown policy `{w}`")))?;
                kept.push(PolicySpec::new(kind));
            } else {
                kept.extend(matches);
            }
        }
        let mut seen = Vec::new();
        kept.retain(|p| {
            let l = p.label();
            let fresh = !seen.contains(&l);
            seen.push(l);
            fresh
        });
        self.policies = kept;
        Ok(())
    }
}
