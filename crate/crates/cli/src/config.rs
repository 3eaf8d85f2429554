//! Run configuration: a versioned TOML file, every section optional.

use std::path::Path;

use serde::Deserialize;

use qaran_core::cmos::{CmosProfile, EfficiencyMode};
use qaran_core::economics::{CostAssumptions, CrossoverSearch, PlantConstants, Topology};
use qaran_core::qa_hardware::QaProfile;
use qaran_core::timeline::{default_milestones, GrowthTrend, MilestoneScenario, QubitRoadmap};
use qaran_core::workload::CellScenario;

use crate::table::Format;

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "QARAN_CONFIG";

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(String),
    #[error("{field}: {reason}")]
    Invalid { field: String, reason: String },
}

impl ConfigError {
    pub fn invalid(field: impl Into<String>, reason: impl ToString) -> Self {
        ConfigError::Invalid {
            field: field.into(),
            reason: reason.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedScenario {
    pub name: String,
    pub scenario: CellScenario,
}

/// Scenario as written in the file; omitted fields take macro-cell defaults.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    #[serde(alias = "label")]
    name: String,
    bandwidth_mhz: f64,
    antennas: u32,
    modulation_bits: Option<u32>,
    coding_rate: Option<f64>,
    duty_time: Option<f64>,
    duty_freq: Option<f64>,
}

impl RawScenario {
    fn into_named(self) -> NamedScenario {
        let base = CellScenario::macro_cell(self.bandwidth_mhz, self.antennas);
        NamedScenario {
            name: self.name,
            scenario: CellScenario {
                modulation_bits: self.modulation_bits.unwrap_or(base.modulation_bits),
                coding_rate: self.coding_rate.unwrap_or(base.coding_rate),
                duty_time: self.duty_time.unwrap_or(base.duty_time),
                duty_freq: self.duty_freq.unwrap_or(base.duty_freq),
                ..base
            },
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CmosEntry {
    /// "65nm", "14nm" or "1.5nm".
    pub builtin: Option<String>,
    pub mode: Option<EfficiencyMode>,
    pub node_label: Option<String>,
    /// Efficiency is scaled from the 65 nm anchor unless given.
    pub vdd: Option<f64>,
    pub efficiency: Option<f64>,
    pub leakage_fraction: Option<f64>,
}

impl CmosEntry {
    fn resolve(&self, field: &str) -> Result<CmosProfile, ConfigError> {
        let mode = self.mode.unwrap_or_default();
        let mut p = match (&self.builtin, self.vdd) {
            (Some(name), _) => CmosProfile::builtin(name, mode).ok_or_else(|| {
                ConfigError::invalid(
                    format!("{field}.builtin"),
                    format!("unknown node '{name}' (expected one of {:?})", CmosProfile::BUILTIN_LABELS),
                )
            })?,
            (None, Some(vdd)) => {
                let label = self.node_label.clone().unwrap_or_else(|| format!("{vdd}V"));
                CmosProfile::anchor_65nm()
                    .scaled(label, vdd, mode)
                    .map_err(|e| ConfigError::invalid(format!("{field}.vdd"), e))?
            }
            (None, None) => return Err(ConfigError::invalid(field, "needs `builtin` or `vdd`")),
        };
        if let (Some(_), Some(vdd)) = (&self.builtin, self.vdd) {
            p = CmosProfile::anchor_65nm()
                .scaled(p.node_label.clone(), vdd, mode)
                .map_err(|e| ConfigError::invalid(format!("{field}.vdd"), e))?
                .with_leakage(p.leakage_fraction);
        }
        if let Some(label) = &self.node_label {
            p.node_label = label.clone();
        }
        if let Some(e) = self.efficiency {
            p.efficiency = e;
        }
        if let Some(l) = self.leakage_fraction {
            p.leakage_fraction = l;
        }
        p.validate().map_err(|e| ConfigError::invalid(field, e))?;
        Ok(p)
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxes {
    #[serde(default)]
    pub bandwidth_mhz: Vec<f64>,
    #[serde(default)]
    pub antennas: Vec<u32>,
    #[serde(default)]
    pub samples: Vec<u32>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputSection {
    format: Option<Format>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct TimelineSection {
    /// `[[year, qubits], ..]`
    history: Option<Vec<(i32, u64)>>,
    best: Option<GrowthTrend>,
    worst: Option<GrowthTrend>,
    milestones: Option<Vec<RawScenario>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    schema_version: u32,
    samples: Option<u32>,
    horizons_years: Option<Vec<u32>>,
    #[serde(rename = "scenario")]
    scenarios: Option<Vec<RawScenario>>,
    cmos: Option<Vec<CmosEntry>>,
    qa: Option<toml::Table>,
    #[serde(default)]
    topology: Topology,
    #[serde(default)]
    costs: CostAssumptions,
    #[serde(default)]
    plant: PlantConstants,
    #[serde(default)]
    crossover: CrossoverSearch,
    #[serde(default)]
    timeline: TimelineSection,
    #[serde(default)]
    sweep: SweepAxes,
    #[serde(default)]
    output: OutputSection,
}

/// Fully resolved configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scenarios: Vec<NamedScenario>,
    pub cmos: Vec<CmosProfile>,
    pub qa: QaProfile,
    /// Anneal-readout samples per problem.
    pub samples: u32,
    pub horizons_years: Vec<u32>,
    pub topology: Topology,
    pub costs: CostAssumptions,
    pub plant: PlantConstants,
    pub crossover: CrossoverSearch,
    pub roadmap: QubitRoadmap,
    pub milestones: Vec<MilestoneScenario>,
    pub sweep: SweepAxes,
    pub format: Option<Format>,
}

fn default_scenarios() -> Vec<NamedScenario> {
    vec![NamedScenario {
        name: "5g-400mhz-64ant".into(),
        scenario: CellScenario::macro_cell(400.0, 64),
    }]
}

fn default_cmos() -> Vec<CmosProfile> {
    vec![
        CmosProfile::node_14nm(EfficiencyMode::AsPrinted),
        CmosProfile::node_1_5nm(EfficiencyMode::AsPrinted),
    ]
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scenarios: default_scenarios(),
            cmos: default_cmos(),
            qa: QaProfile::projected(),
            samples: 20,
            horizons_years: vec![1, 2, 5, 10],
            topology: Topology::Bs,
            costs: CostAssumptions::default(),
            plant: PlantConstants::default(),
            crossover: CrossoverSearch::default(),
            roadmap: QubitRoadmap::default(),
            milestones: default_milestones(),
            sweep: SweepAxes::default(),
            format: None,
        }
    }
}

fn resolve_qa(table: Option<toml::Table>) -> Result<QaProfile, ConfigError> {
    let mut table = table.unwrap_or_default();
    let name = match table.remove("profile") {
        None => "projected".to_string(),
        Some(toml::Value::String(s)) => s,
        Some(other) => return Err(ConfigError::invalid("qa.profile", format!("expected a string, got {other}"))),
    };
    let base = QaProfile::builtin(&name).ok_or_else(|| {
        ConfigError::invalid(
            "qa.profile",
            format!("unknown profile '{name}' (expected one of {:?})", QaProfile::BUILTIN_NAMES),
        )
    })?;
    let mut merged = toml::Table::try_from(&base).map_err(|e| ConfigError::invalid("qa", e))?;
    merged.extend(table);
    let qa: QaProfile = toml::Value::Table(merged)
        .try_into()
        .map_err(|e: toml::de::Error| ConfigError::invalid("qa", e.message()))?;
    qa.validate().map_err(|e| ConfigError::invalid("qa", e))?;
    Ok(qa)
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string().trim_end().to_string()))?;
        if raw.schema_version != SCHEMA_VERSION {
            return Err(ConfigError::invalid(
                "schema_version",
                format!("unsupported version {} (this build reads {SCHEMA_VERSION})", raw.schema_version),
            ));
        }

        let scenarios = raw
            .scenarios
            .map(|v| v.into_iter().map(RawScenario::into_named).collect())
            .unwrap_or_else(default_scenarios);
        if scenarios.is_empty() {
            return Err(ConfigError::invalid("scenario", "at least one scenario is required"));
        }
        for (i, s) in scenarios.iter().enumerate() {
            s.scenario
                .validate()
                .map_err(|e| ConfigError::invalid(format!("scenario[{i}] ({})", s.name), e))?;
        }

        let cmos = match raw.cmos {
            None => default_cmos(),
            Some(entries) if entries.is_empty() => {
                return Err(ConfigError::invalid("cmos", "at least one CMOS profile is required"))
            }
            Some(entries) => entries
                .iter()
                .enumerate()
                .map(|(i, e)| e.resolve(&format!("cmos[{i}]")))
                .collect::<Result<_, _>>()?,
        };

        let horizons_years = raw.horizons_years.unwrap_or_else(|| vec![1, 2, 5, 10]);
        if horizons_years.is_empty() {
            return Err(ConfigError::invalid("horizons_years", "must not be empty"));
        }

        let defaults = RunConfig::default();
        let cfg = RunConfig {
            scenarios,
            cmos,
            qa: resolve_qa(raw.qa)?,
            samples: raw.samples.unwrap_or(defaults.samples),
            horizons_years,
            topology: raw.topology,
            costs: raw.costs,
            plant: raw.plant,
            crossover: raw.crossover,
            roadmap: QubitRoadmap {
                history: raw.timeline.history.unwrap_or(defaults.roadmap.history),
                best: raw.timeline.best.unwrap_or(defaults.roadmap.best),
                worst: raw.timeline.worst.unwrap_or(defaults.roadmap.worst),
            },
            milestones: match raw.timeline.milestones {
                None => defaults.milestones,
                Some(v) if v.is_empty() => {
                    return Err(ConfigError::invalid("timeline.milestones", "must not be empty"))
                }
                Some(v) => v
                    .into_iter()
                    .map(|r| {
                        let n = r.into_named();
                        MilestoneScenario::new(n.name, n.scenario)
                    })
                    .collect(),
            },
            sweep: raw.sweep,
            format: raw.output.format,
        };
        cfg.check_constants()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml_str(&text).map_err(|e| match e {
            ConfigError::Parse(msg) => ConfigError::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    fn check_constants(&self) -> Result<(), ConfigError> {
        fn inv(field: &'static str) -> impl Fn(qaran_core::ModelError) -> ConfigError {
            move |e| ConfigError::invalid(field, e)
        }
        self.costs.validate().map_err(inv("costs"))?;
        self.plant.losses.validate().map_err(inv("plant.losses"))?;
        self.plant.radio.validate().map_err(inv("plant.radio"))?;
        self.roadmap.best.validate().map_err(inv("timeline.best"))?;
        self.roadmap.worst.validate().map_err(inv("timeline.worst"))?;
        self.crossover.grid.points().map_err(inv("crossover.grid"))?;
        if let Topology::Cran { base_stations, link } = &self.topology {
            if *base_stations == 0 {
                return Err(ConfigError::invalid("topology.base_stations", "must be >= 1"));
            }
            link.validate().map_err(inv("topology.link"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file_gets_defaults() {
        let c = RunConfig::from_toml_str("schema_version = 1\n").unwrap();
        assert_eq!(c.scenarios.len(), 1);
        assert_eq!(c.cmos.len(), 2);
        assert_eq!(c.qa, QaProfile::projected());
        assert_eq!(c.samples, 20);
    }

    #[test]
    fn scenario_defaults_fill_in() {
        let c = RunConfig::from_toml_str(
            "schema_version = 1\n[[scenario]]\nname = \"x\"\nbandwidth_mhz = 100\nantennas = 8\n",
        )
        .unwrap();
        let s = c.scenarios[0].scenario;
        assert_eq!(s, CellScenario::macro_cell(100.0, 8));
    }

    #[test]
    fn qa_overrides_merge_onto_builtin() {
        let c = RunConfig::from_toml_str(
            "schema_version = 1\n[qa]\nprofile = \"current\"\nrefrigeration_kw = 30\n",
        )
        .unwrap();
        assert_eq!(c.qa.refrigeration_kw, 30.0);
        assert_eq!(c.qa.readout_delay_us, 1000.0);
        let e = RunConfig::from_toml_str("schema_version = 1\n[qa]\nrefrigeration_kwh = 30\n").unwrap_err();
        assert!(e.to_string().contains("refrigeration_kwh"), "{e}");
    }

    #[test]
    fn cmos_entries() {
        let c = RunConfig::from_toml_str(
            "schema_version = 1\n[[cmos]]\nbuiltin = \"14nm\"\nmode = \"exact\"\n[[cmos]]\nvdd = 0.55\nnode_label = \"3nm\"\n",
        )
        .unwrap();
        assert_eq!(c.cmos[0].efficiency, 0.075625);
        assert_eq!(c.cmos[1].node_label, "3nm");
        assert!(RunConfig::from_toml_str("schema_version = 1\n[[cmos]]\nbuiltin = \"7nm\"\n").is_err());
    }

    #[test]
    fn errors_name_the_problem() {
        let e = RunConfig::from_toml_str("schema_version = 1\nsamples = \"many\"\n").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        let e = RunConfig::from_toml_str("schema_version = 9\n").unwrap_err();
        assert!(e.to_string().contains("schema_version"));
        let e = RunConfig::from_toml_str(
            "schema_version = 1\n[[scenario]]\nname = \"bad\"\nbandwidth_mhz = 100\nantennas = 0\n",
        )
        .unwrap_err();
        assert!(e.to_string().contains("scenario[0]"), "{e}");
        assert!(RunConfig::from_toml_str("schema_version = 1\nscenario = []\n").is_err());
    }

    #[test]
    fn cran_topology() {
        let c = RunConfig::from_toml_str(
            "schema_version = 1\n[topology]\nkind = \"cran\"\nbase_stations = 3\n[topology.link]\ncapacity_bps = 100e9\nload_bps = 100e9\np_max_w = 7400\n",
        )
        .unwrap();
        assert_eq!(c.topology.base_stations(), 3);
    }
}
