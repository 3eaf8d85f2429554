//! CMOS performance-per-watt and power drawn for a TOPS workload.

use serde::{Deserialize, Serialize};

use crate::error::{non_negative, positive, ModelError, Result};
use crate::ran_power::BbuPower;
use crate::workload::{BbuTask, BbuWorkload};

/// Leakage as a fraction of dynamic power, applied uniformly to every task.
pub const DEFAULT_LEAKAGE: f64 = 0.30;

/// How a Vdd-scaled efficiency is stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EfficiencyMode {
    /// Full precision.
    Exact,
    /// Rounded to two significant figures (0.075625 -> 0.076).
    #[default]
    AsPrinted,
}

impl EfficiencyMode {
    pub fn apply(self, efficiency: f64) -> f64 {
        match self {
            EfficiencyMode::Exact => efficiency,
            EfficiencyMode::AsPrinted => round_significant(efficiency, 2),
        }
    }
}

pub(crate) fn round_significant(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(digits - 1 - magnitude);
    (x * scale).round() / scale
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CmosProfile {
    pub node_label: String,
    /// Core supply voltage in volts.
    pub vdd: f64,
    /// TOPS per watt.
    pub efficiency: f64,
    #[serde(default = "default_leakage")]
    pub leakage_fraction: f64,
}

fn default_leakage() -> f64 {
    DEFAULT_LEAKAGE
}

impl CmosProfile {
    pub fn new(node_label: impl Into<String>, vdd: f64, efficiency: f64) -> Result<Self> {
        let profile = CmosProfile {
            node_label: node_label.into(),
            vdd,
            efficiency,
            leakage_fraction: DEFAULT_LEAKAGE,
        };
        profile.validate()?;
        Ok(profile)
    }

    /// 65 nm at 1.1 V and 0.04 TOPS/W; all other nodes scale from it.
    pub fn anchor_65nm() -> Self {
        CmosProfile {
            node_label: "65nm".into(),
            vdd: 1.1,
            efficiency: 0.04,
            leakage_fraction: DEFAULT_LEAKAGE,
        }
    }

    pub fn node_14nm(mode: EfficiencyMode) -> Self {
        Self::anchor_65nm()
            .scaled("14nm", 0.8, mode)
            .expect("positive vdd")
    }

    pub fn node_1_5nm(mode: EfficiencyMode) -> Self {
        Self::anchor_65nm()
            .scaled("1.5nm", 0.4, mode)
            .expect("positive vdd")
    }

    /// Built-in profile by label: `65nm`, `14nm` or `1.5nm`.
    pub fn builtin(label: &str, mode: EfficiencyMode) -> Option<Self> {
        match label {
            "65nm" => Some(Self::anchor_65nm()),
            "14nm" => Some(Self::node_14nm(mode)),
            "1.5nm" => Some(Self::node_1_5nm(mode)),
            _ => None,
        }
    }

    pub const BUILTIN_LABELS: [&'static str; 3] = ["65nm", "14nm", "1.5nm"];

    /// A new node at `vdd`, deriving its efficiency from this one.
    pub fn scaled(&self, label: impl Into<String>, vdd: f64, mode: EfficiencyMode) -> Result<Self> {
        let efficiency = mode.apply(efficiency_from_vdd(self, vdd)?);
        Ok(CmosProfile {
            node_label: label.into(),
            vdd,
            efficiency,
            leakage_fraction: self.leakage_fraction,
        })
    }

    pub fn with_leakage(self, leakage_fraction: f64) -> Self {
        CmosProfile {
            leakage_fraction,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        positive("vdd", self.vdd)?;
        positive("efficiency", self.efficiency)?;
        if !(0.0..1.0).contains(&self.leakage_fraction) {
            return Err(ModelError::range(
                "leakage_fraction",
                "in [0, 1)",
                self.leakage_fraction,
            ));
        }
        Ok(())
    }
}

/// Efficiency grows with the inverse square of the supply voltage.
pub fn efficiency_from_vdd(base: &CmosProfile, vdd_target: f64) -> Result<f64> {
    positive("vdd_target", vdd_target)?;
    Ok(base.efficiency * (base.vdd / vdd_target).powi(2))
}

/// Watts drawn by `tops` of work, dynamic plus leakage.
pub fn cmos_power(tops: f64, profile: &CmosProfile) -> Result<f64> {
    non_negative("tops", tops)?;
    profile.validate()?;
    Ok(tops / profile.efficiency * (1.0 + profile.leakage_fraction))
}

/// Per-task CMOS power for the tasks in `tasks`; other tasks draw nothing.
pub fn bbu_power(workload: &BbuWorkload, profile: &CmosProfile, tasks: &[BbuTask]) -> Result<BbuPower> {
    profile.validate()?;
    let dynamic = workload
        .tops_per_task
        .restrict(tasks)
        .map(|_, tops| tops / profile.efficiency);
    Ok(BbuPower {
        leakage: dynamic.sum() * profile.leakage_fraction,
        per_task: dynamic,
        refrigeration: 0.0,
    })
}
