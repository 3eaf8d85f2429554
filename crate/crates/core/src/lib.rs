//! Power, qubit-budget and cost models for running cellular baseband
//! processing on quantum annealers next to conventional CMOS silicon.
//!
//! The crate is organised bottom-up:
//!
//! - [`workload`]: per-task TOPS targets for a radio configuration.
//! - [`cmos`]: performance-per-watt scaling and CMOS power from TOPS.
//! - [`ran_power`]: base-station and C-RAN power aggregation.
//! - [`qa_hardware`]: annealer timing, programming energy, readout and
//!   refrigerator capacity.
//! - [`qubit_budget`]: TOPS to problems-per-second to qubits.
//! - [`economics`]: CMOS-vs-QA comparison, OpEx/CO2 savings and crossover search.
//! - [`timeline`]: qubit-count growth trends and availability years.
//!
//! Every model is a pure function of its inputs.

pub mod cmos;
pub mod economics;
mod error;
pub mod published;
pub mod qa_hardware;
pub mod qubit_budget;
pub mod ran_power;
pub mod timeline;
pub mod workload;

pub use error::{ModelError, Result};

pub use cmos::{CmosProfile, EfficiencyMode};
pub use economics::{Comparison, CostAssumptions, CostReport, Topology};
pub use qa_hardware::{DeviceGeometry, QaProfile, ReadoutScheme};
pub use qubit_budget::{BudgetOptions, QubitBudget, TaskProblemModel};
pub use ran_power::{BbuPower, FronthaulLink, PowerBreakdown, PowerSystemLosses, RadioConstants};
pub use timeline::{GrowthTrend, QubitRoadmap, TimelineProjection};
pub use workload::{BbuTask, BbuWorkload, CellScenario, TaskMap};
