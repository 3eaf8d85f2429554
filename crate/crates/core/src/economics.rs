//! CMOS vs QA at equal spectral efficiency, and what the difference is worth.

use serde::{Deserialize, Serialize};

use crate::cmos::{bbu_power, cmos_power, CmosProfile};
use crate::error::{positive, ModelError, Result};
use crate::qa_hardware::{refrigerator_qubit_capacity, DeviceGeometry, QaProfile};
use crate::qubit_budget::{total_budget, BudgetOptions, QubitBudget};
use crate::ran_power::{
    bs_power, cran_power, BbuPower, FronthaulLink, PowerBreakdown, PowerSystemLosses,
    RadioConstants, RrhSite,
};
use crate::workload::{workload, BbuTask, BbuWorkload, CellScenario};

/// Pounds per metric kiloton.
pub const LB_PER_KT: f64 = 2_204_622.6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CostAssumptions {
    /// USD per kWh.
    pub electricity_price: f64,
    pub co2_lb_per_kwh: f64,
    pub hours_per_year: f64,
}

impl Default for CostAssumptions {
    fn default() -> Self {
        CostAssumptions {
            electricity_price: 0.143,
            co2_lb_per_kwh: 0.92,
            hours_per_year: 8760.0,
        }
    }
}

impl CostAssumptions {
    pub fn validate(&self) -> Result<()> {
        positive("electricity_price", self.electricity_price)?;
        positive("co2_lb_per_kwh", self.co2_lb_per_kwh)?;
        positive("hours_per_year", self.hours_per_year)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostRow {
    pub years: u32,
    /// USD.
    pub opex_savings: f64,
    /// Metric kilotons CO2e.
    pub co2_savings_kt: f64,
    /// Largest QA CapEx that still pays off within `years`, USD.
    pub breakeven_capex: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostReport {
    /// CMOS minus QA, watts.
    pub delta_power_w: f64,
    pub rows: Vec<CostRow>,
}

pub fn cost_report(delta_power_w: f64, horizons: &[u32], assumptions: &CostAssumptions) -> Result<CostReport> {
    if horizons.is_empty() {
        return Err(ModelError::Empty("horizons"));
    }
    if !delta_power_w.is_finite() {
        return Err(ModelError::range("delta_power_w", "finite", delta_power_w));
    }
    assumptions.validate()?;
    let rows = horizons
        .iter()
        .map(|&years| {
            let kwh = delta_power_w / 1e3 * assumptions.hours_per_year * years as f64;
            let opex = kwh * assumptions.electricity_price;
            CostRow {
                years,
                opex_savings: opex,
                co2_savings_kt: kwh * assumptions.co2_lb_per_kwh / LB_PER_KT,
                breakeven_capex: opex,
            }
        })
        .collect();
    Ok(CostReport { delta_power_w, rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Topology {
    #[default]
    Bs,
    /// `base_stations` identical sites sharing one baseband pool; each
    /// site keeps its FFT and connects over `link`.
    Cran {
        base_stations: u32,
        #[serde(default = "fiber_100g")]
        link: FronthaulLink,
    },
}

fn fiber_100g() -> FronthaulLink {
    FronthaulLink::fiber_at_capacity(100e9)
}

impl Topology {
    pub fn cran(base_stations: u32) -> Self {
        Topology::Cran {
            base_stations,
            link: fiber_100g(),
        }
    }

    pub fn base_stations(&self) -> u32 {
        match self {
            Topology::Bs => 1,
            Topology::Cran { base_stations, .. } => *base_stations,
        }
    }
}


/// Constants shared by every comparison.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlantConstants {
    pub radio: RadioConstants,
    pub losses: PowerSystemLosses,
    pub geometry: DeviceGeometry,
    pub budget: BudgetOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub cmos: PowerBreakdown,
    pub qa: PowerBreakdown,
    /// Budget of one base station.
    pub qubits: QubitBudget,
    /// Qubits the QA side needs across all base stations.
    pub required_qubits: u64,
    pub refrigerator_capacity: u64,
    pub capacity_exceeded: bool,
}

impl Comparison {
    /// CMOS minus QA, watts.
    pub fn delta_w(&self) -> f64 {
        self.cmos.total - self.qa.total
    }

    pub fn qa_advantage(&self) -> bool {
        self.delta_w() > 0.0
    }
}

/// QA BBU: refrigeration plus control and transfer tasks on CMOS.
fn qa_bbu(load: &BbuWorkload, cmos: &CmosProfile, qa: &QaProfile) -> Result<BbuPower> {
    Ok(BbuPower {
        refrigeration: qa.refrigeration_w(),
        ..bbu_power(load, cmos, &BbuTask::CONTROL_TRANSFER)?
    })
}

fn scaled(bbu: &BbuPower, n: u32) -> BbuPower {
    let k = n as f64;
    BbuPower {
        per_task: bbu.per_task.map(|_, w| w * k),
        leakage: bbu.leakage * k,
        refrigeration: bbu.refrigeration * k,
    }
}

pub fn compare(
    scenario: &CellScenario,
    cmos: &CmosProfile,
    qa: &QaProfile,
    samples: u32,
    topology: &Topology,
    plant: &PlantConstants,
) -> Result<Comparison> {
    qa.validate()?;
    let load = workload(scenario)?;
    let qubits = total_budget(scenario, qa, samples, &plant.budget)?;
    let capacity = refrigerator_qubit_capacity(&plant.geometry)?.qubits;

    let (cmos_side, qa_side, required) = match *topology {
        Topology::Bs => {
            let c = bs_power(&bbu_power(&load, cmos, &BbuTask::ALL)?, scenario.antennas, &plant.radio, &plant.losses)?;
            let q = bs_power(&qa_bbu(&load, cmos, qa)?, scenario.antennas, &plant.radio, &plant.losses)?;
            (c, q, qubits.total)
        }
        Topology::Cran { base_stations, link } => {
            if base_stations == 0 {
                return Err(ModelError::range("base_stations", ">= 1", 0.0));
            }
            let pooled: Vec<BbuTask> = BbuTask::ALL.into_iter().filter(|t| *t != BbuTask::Fft).collect();
            let fft = bbu_power(&load, cmos, &[BbuTask::Fft])?;
            let site = RrhSite::radio_head(fft, scenario.antennas, &plant.radio, plant.losses, link);
            let sites = vec![site; base_stations as usize];

            let cmos_pool = scaled(&bbu_power(&load, cmos, &pooled)?, base_stations);
            let qa_pool = BbuPower {
                refrigeration: qa.refrigeration_w(),
                ..scaled(&bbu_power(&load, cmos, &BbuTask::CONTROL_TRANSFER)?, base_stations)
            };
            let c = cran_power(&cmos_pool, &plant.losses, &sites)?;
            let q = cran_power(&qa_pool, &plant.losses, &sites)?;
            (c, q, qubits.total * base_stations as u64)
        }
    };

    Ok(Comparison {
        cmos: cmos_side,
        qa: qa_side,
        qubits,
        required_qubits: required,
        refrigerator_capacity: capacity,
        capacity_exceeded: required > capacity,
    })
}

/// Evenly spaced bandwidths `start, start + step, ..` up to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandwidthGrid {
    pub start_mhz: f64,
    pub stop_mhz: f64,
    pub step_mhz: f64,
}

impl Default for BandwidthGrid {
    fn default() -> Self {
        BandwidthGrid {
            start_mhz: 10.0,
            stop_mhz: 1000.0,
            step_mhz: 10.0,
        }
    }
}

impl BandwidthGrid {
    pub fn points(&self) -> Result<Vec<f64>> {
        positive("start_mhz", self.start_mhz)?;
        positive("step_mhz", self.step_mhz)?;
        if self.stop_mhz.is_nan() || self.stop_mhz < self.start_mhz {
            return Err(ModelError::range("stop_mhz", ">= start_mhz", self.stop_mhz));
        }
        let n = ((self.stop_mhz - self.start_mhz) / self.step_mhz + 1e-9).floor() as usize;
        Ok((0..=n).map(|i| self.start_mhz + i as f64 * self.step_mhz).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CrossoverSearch {
    pub grid: BandwidthGrid,
    /// Fixed parameters of the scanned scenarios; bandwidth and antennas are replaced.
    pub template: CellScenario,
}

impl Default for CrossoverSearch {
    fn default() -> Self {
        CrossoverSearch {
            grid: BandwidthGrid::default(),
            template: CellScenario::REFERENCE,
        }
    }
}

/// BBU watts of CMOS and of QA for one scenario, without the power system.
pub fn bbu_pair(scenario: &CellScenario, cmos: &CmosProfile, qa: &QaProfile) -> Result<(f64, f64)> {
    let load = workload(scenario)?;
    let c = cmos_power(load.total_tops, cmos)?;
    let q = qa_bbu(&load, cmos, qa)?.total();
    Ok((c, q))
}

/// Lowest grid bandwidth where the QA BBU draws less than the CMOS BBU.
pub fn crossover_bandwidth(
    antennas: u32,
    cmos: &CmosProfile,
    qa: &QaProfile,
    search: &CrossoverSearch,
) -> Result<Option<f64>> {
    if antennas == 0 {
        return Err(ModelError::range("antennas", ">= 1", 0.0));
    }
    qa.validate()?;
    for bw in search.grid.points()? {
        let s = search.template.with_bandwidth(bw).with_antennas(antennas);
        let (c, q) = bbu_pair(&s, cmos, qa)?;
        if q < c {
            return Ok(Some(bw));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmos::EfficiencyMode;
    use approx::assert_relative_eq;

    fn n14() -> CmosProfile {
        CmosProfile::node_14nm(EfficiencyMode::AsPrinted)
    }

    #[test]
    fn cost_rows() {
        let r = cost_report(41e3, &[1, 10], &CostAssumptions::default()).unwrap();
        assert_relative_eq!(r.rows[0].opex_savings, 41.0 * 8760.0 * 0.143, max_relative = 1e-12);
        assert_relative_eq!(r.rows[1].opex_savings, 10.0 * r.rows[0].opex_savings, max_relative = 1e-12);
        assert!((r.rows[0].co2_savings_kt - 0.15).abs() / 0.15 < 0.01);
        assert_eq!(r.rows[0].breakeven_capex, r.rows[0].opex_savings);
        let zero = cost_report(0.0, &[1, 2, 5], &CostAssumptions::default()).unwrap();
        assert!(zero.rows.iter().all(|r| r.opex_savings == 0.0 && r.co2_savings_kt == 0.0));
        assert!(cost_report(1.0, &[], &CostAssumptions::default()).is_err());
    }

    #[test]
    fn bs_comparison_400_64() {
        let c = compare(
            &CellScenario::macro_cell(400.0, 64),
            &n14(),
            &QaProfile::projected(),
            20,
            &Topology::Bs,
            &PlantConstants::default(),
        )
        .unwrap();
        assert!((c.cmos.total - 89.9e3).abs() / 89.9e3 < 0.15);
        assert!((c.qa.total - 49e3).abs() / 49e3 < 0.15);
        assert!(c.qa_advantage());
        assert!(!c.capacity_exceeded);
    }

    #[test]
    fn qa_loses_at_50_mhz() {
        let c = compare(
            &CellScenario::macro_cell(50.0, 64),
            &n14(),
            &QaProfile::projected(),
            20,
            &Topology::Bs,
            &PlantConstants::default(),
        )
        .unwrap();
        assert!(!c.qa_advantage());
    }

    #[test]
    fn cran_three_sites() {
        let c = compare(
            &CellScenario::macro_cell(400.0, 64),
            &n14(),
            &QaProfile::projected(),
            20,
            &Topology::cran(3),
            &PlantConstants::default(),
        )
        .unwrap();
        assert!((c.cmos.total - 290e3).abs() / 290e3 < 0.15, "{}", c.cmos.total);
        assert!((c.qa.total - 131e3).abs() / 131e3 < 0.15, "{}", c.qa.total);
        assert_relative_eq!(c.cmos.fronthaul, 3.0 * 7400.0, max_relative = 1e-12);
        assert_eq!(c.required_qubits, 3 * c.qubits.total);
    }

    #[test]
    fn crossover_points() {
        let qa = QaProfile::projected();
        let s = CrossoverSearch::default();
        let n15 = CmosProfile::node_1_5nm(EfficiencyMode::AsPrinted);
        assert_eq!(crossover_bandwidth(256, &n14(), &qa, &s).unwrap(), Some(20.0));
        assert_eq!(crossover_bandwidth(128, &n14(), &qa, &s).unwrap(), Some(50.0));
        assert_eq!(crossover_bandwidth(64, &n14(), &qa, &s).unwrap(), Some(160.0));
        assert_eq!(crossover_bandwidth(256, &n15, &qa, &s).unwrap(), Some(60.0));
        assert_eq!(crossover_bandwidth(128, &n15, &qa, &s).unwrap(), Some(190.0));
        assert_eq!(crossover_bandwidth(1, &n14(), &qa, &s).unwrap(), None);
    }

    #[test]
    fn grid_points() {
        let g = BandwidthGrid::default().points().unwrap();
        assert_eq!(g.len(), 100);
        assert_eq!(g[0], 10.0);
        assert_eq!(*g.last().unwrap(), 1000.0);
        let bad = BandwidthGrid {
            stop_mhz: 5.0,
            ..Default::default()
        };
        assert!(bad.points().is_err());
    }
}
