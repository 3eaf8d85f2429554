//! Qubit-count growth and when a requirement becomes available.

use serde::{Deserialize, Serialize};

use crate::cmos::CmosProfile;
use crate::economics::{crossover_bandwidth, CrossoverSearch};
use crate::error::{positive, ModelError, Result};
use crate::qa_hardware::QaProfile;
use crate::qubit_budget::{total_budget, BudgetOptions};
use crate::workload::CellScenario;

/// Exponential growth: `anchor_qubits * factor^((year - anchor_year) / period_years)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthTrend {
    pub anchor_year: i32,
    pub anchor_qubits: u64,
    pub factor: f64,
    pub period_years: f64,
}

impl GrowthTrend {
    /// Trend through two points, anchored at the later one.
    pub fn through(earlier: (i32, u64), later: (i32, u64)) -> Self {
        GrowthTrend {
            anchor_year: later.0,
            anchor_qubits: later.1,
            factor: later.1 as f64 / earlier.1 as f64,
            period_years: (later.0 - earlier.0) as f64,
        }
    }

    /// 2017 -> 2020 growth (x2.654 per 3 years), from 5436 qubits in 2020.
    pub fn best_case() -> Self {
        Self::through((2017, 2048), (2020, 5436))
    }

    /// 2020 -> 2023 growth (x1.369 per 3 years), from 7440 qubits in 2023.
    pub fn worst_case() -> Self {
        Self::through((2020, 5436), (2023, 7440))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.factor > 1.0 && self.factor.is_finite()) {
            return Err(ModelError::range("factor", "> 1", self.factor));
        }
        if self.anchor_qubits == 0 {
            return Err(ModelError::range("anchor_qubits", ">= 1", 0.0));
        }
        positive("period_years", self.period_years)?;
        Ok(())
    }

    pub fn qubits_at_fractional(&self, year: f64) -> f64 {
        let periods = (year - self.anchor_year as f64) / self.period_years;
        self.anchor_qubits as f64 * self.factor.powf(periods)
    }

    pub fn qubits_at(&self, year: i32) -> Result<u64> {
        self.validate()?;
        if year < self.anchor_year {
            return Err(ModelError::BeforeAnchor {
                year,
                anchor: self.anchor_year,
            });
        }
        Ok(self.qubits_at_fractional(year as f64).floor() as u64)
    }

    /// Fractional year at which the trend reaches `qubits`.
    pub fn year_reaching(&self, qubits: f64) -> f64 {
        let periods = (qubits / self.anchor_qubits as f64).ln() / self.factor.ln();
        self.anchor_year as f64 + periods * self.period_years
    }

    /// Smallest integer year, not before the anchor, with `qubits_at >= required`.
    pub fn year_available(&self, required: u64) -> Result<i32> {
        self.validate()?;
        if required == 0 {
            return Err(ModelError::range("required_qubits", ">= 1", 0.0));
        }
        let guess = self.year_reaching(required as f64).ceil() as i32 - 1;
        let mut year = guess.max(self.anchor_year);
        while self.qubits_at(year)? < required {
            year += 1;
        }
        Ok(year)
    }
}

/// Shipped device sizes plus the two bounding trends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QubitRoadmap {
    /// (year, qubits), reported as-is.
    pub history: Vec<(i32, u64)>,
    pub best: GrowthTrend,
    pub worst: GrowthTrend,
}

impl Default for QubitRoadmap {
    fn default() -> Self {
        QubitRoadmap {
            history: vec![
                (2011, 128),
                (2013, 512),
                (2015, 1152),
                (2017, 2048),
                (2020, 5436),
                (2023, 7440),
            ],
            best: GrowthTrend::best_case(),
            worst: GrowthTrend::worst_case(),
        }
    }
}

impl QubitRoadmap {
    /// First year a shipped device already had `required` qubits.
    pub fn shipped_by(&self, required: u64) -> Option<i32> {
        self.history
            .iter()
            .filter(|(_, q)| *q >= required)
            .map(|(y, _)| *y)
            .min()
    }

    fn year_on(&self, trend: &GrowthTrend, required: u64) -> Result<i32> {
        let projected = trend.year_available(required)?;
        Ok(self.shipped_by(required).map_or(projected, |y| y.min(projected)))
    }

    /// (best, worst) availability years.
    pub fn years_available(&self, required: u64) -> Result<(i32, i32)> {
        Ok((
            self.year_on(&self.best, required)?,
            self.year_on(&self.worst, required)?,
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MilestoneScenario {
    pub label: String,
    #[serde(flatten)]
    pub scenario: CellScenario,
}

impl MilestoneScenario {
    pub fn new(label: impl Into<String>, scenario: CellScenario) -> Self {
        MilestoneScenario {
            label: label.into(),
            scenario,
        }
    }
}

/// Points A-F: lowest power-advantaged bandwidth per antenna count at each
/// node (A-E), and the smallest practical deployment (F).
pub fn default_milestones() -> Vec<MilestoneScenario> {
    [
        ("F", 10.0, 32),
        ("A", 20.0, 256),
        ("B", 50.0, 128),
        ("D", 60.0, 256),
        ("C", 160.0, 64),
        ("E", 190.0, 128),
    ]
    .into_iter()
    .map(|(label, bw, na)| MilestoneScenario::new(label, CellScenario::macro_cell(bw, na)))
    .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeStatus {
    pub node_label: String,
    pub crossover_mhz: Option<f64>,
    /// Bandwidth at or above the crossover.
    pub power_advantage: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimelineProjection {
    pub milestone_label: String,
    pub scenario: CellScenario,
    pub required_qubits: u64,
    pub year_best: i32,
    pub year_worst: i32,
    pub nodes: Vec<NodeStatus>,
}

pub struct MilestoneInputs<'a> {
    pub nodes: &'a [CmosProfile],
    pub qa: &'a QaProfile,
    pub samples: u32,
    pub budget: &'a BudgetOptions,
    pub search: &'a CrossoverSearch,
    pub roadmap: &'a QubitRoadmap,
}

pub fn milestones(grid: &[MilestoneScenario], inputs: &MilestoneInputs<'_>) -> Result<Vec<TimelineProjection>> {
    if grid.is_empty() {
        return Err(ModelError::Empty("milestone grid"));
    }
    grid.iter()
        .map(|m| {
            let budget = total_budget(&m.scenario, inputs.qa, inputs.samples, inputs.budget)?;
            let (year_best, year_worst) = inputs.roadmap.years_available(budget.total.max(1))?;
            let nodes = inputs
                .nodes
                .iter()
                .map(|node| {
                    let crossover = crossover_bandwidth(m.scenario.antennas, node, inputs.qa, inputs.search)?;
                    Ok(NodeStatus {
                        node_label: node.node_label.clone(),
                        crossover_mhz: crossover,
                        power_advantage: crossover.is_some_and(|c| m.scenario.bandwidth_mhz >= c),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(TimelineProjection {
                milestone_label: m.label.clone(),
                scenario: m.scenario,
                required_qubits: budget.total,
                year_best,
                year_worst,
                nodes,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmos::EfficiencyMode;

    #[test]
    fn trend_points() {
        let best = GrowthTrend::best_case();
        assert_eq!(best.qubits_at(2020).unwrap(), 5436);
        let q = best.qubits_at(2023).unwrap();
        assert!((q as f64 - 14.4e3).abs() / 14.4e3 < 0.01, "{q}");
        let worst = GrowthTrend::worst_case();
        let q = worst.qubits_at(2026).unwrap();
        assert!((q as f64 - 10.2e3).abs() / 10.2e3 < 0.01, "{q}");
        assert!(matches!(best.qubits_at(2019), Err(ModelError::BeforeAnchor { .. })));
    }

    #[test]
    fn availability_years() {
        let best = GrowthTrend::best_case();
        assert!((best.year_available(39_000).unwrap() - 2026).abs() <= 1);
        assert_eq!(best.year_available(618_000).unwrap(), 2035);
        assert_eq!(best.year_available(1_850_000).unwrap(), 2038);
        assert_eq!(best.year_available(1).unwrap(), 2020);
    }

    #[test]
    fn neighbour_check() {
        let best = GrowthTrend::best_case();
        for y in 2020..2060 {
            let q = best.qubits_at(y).unwrap();
            assert!(best.year_available(q).unwrap() <= y);
            assert!(best.year_available(q + 1).unwrap() > y);
        }
    }

    #[test]
    fn roadmap_uses_history() {
        let r = QubitRoadmap::default();
        assert_eq!(r.shipped_by(1000), Some(2015));
        assert_eq!(r.years_available(1000).unwrap(), (2015, 2015));
        assert_eq!(r.shipped_by(10_000), None);
        let (b, w) = r.years_available(618_000).unwrap();
        assert!(b <= w);
    }

    #[test]
    fn default_milestone_years() {
        let nodes = [
            CmosProfile::node_14nm(EfficiencyMode::AsPrinted),
            CmosProfile::node_1_5nm(EfficiencyMode::AsPrinted),
        ];
        let inputs = MilestoneInputs {
            nodes: &nodes,
            qa: &QaProfile::projected(),
            samples: 20,
            budget: &BudgetOptions::default(),
            search: &CrossoverSearch::default(),
            roadmap: &QubitRoadmap::default(),
        };
        let out = milestones(&default_milestones(), &inputs).unwrap();
        let f = &out[0];
        assert_eq!(f.milestone_label, "F");
        assert!(f.nodes.iter().all(|n| !n.power_advantage));
        assert!((f.year_best - 2026).abs() <= 1);
        let a = &out[1];
        assert!(a.nodes[0].power_advantage && !a.nodes[1].power_advantage);
        assert!((a.year_best - 2035).abs() <= 1);
        let d = &out[3];
        assert!(d.nodes[1].power_advantage);
        assert!((d.year_best - 2038).abs() <= 1);
        assert!(milestones(&[], &inputs).is_err());
    }
}
