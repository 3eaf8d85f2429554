//! Baseband workload targets.
//!
//! Each baseband task has a known TOPS demand at a fixed reference radio
//! configuration (20 MHz, 64-QAM, rate 1, one antenna, full duty cycles).
//! Other configurations scale that demand by a per-task power law in the
//! ratio of each parameter to its reference value:
//!
//! ```text
//! TOPS(task) = TOPS_ref(task) * Π_k (X_k / X_ref,k) ^ s_k(task)
//! ```
//!
//! with `X = (bandwidth, modulation bits, coding rate, antennas, dt, df)`.

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{positive, ModelError, Result};

/// One radio configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellScenario {
    pub bandwidth_mhz: f64,
    #[serde(default = "default_modulation_bits")]
    pub modulation_bits: u32,
    #[serde(default = "default_coding_rate")]
    pub coding_rate: f64,
    pub antennas: u32,
    #[serde(default = "full_duty")]
    pub duty_time: f64,
    #[serde(default = "full_duty")]
    pub duty_freq: f64,
}

fn default_modulation_bits() -> u32 {
    6
}

fn default_coding_rate() -> f64 {
    0.5
}

fn full_duty() -> f64 {
    1.0
}

/// Bits per symbol accepted for `modulation_bits` (BPSK .. 256-QAM).
pub const MODULATION_BITS: [u32; 5] = [1, 2, 4, 6, 8];

impl CellScenario {
    /// The point every workload is scaled from.
    pub const REFERENCE: CellScenario = CellScenario {
        bandwidth_mhz: 20.0,
        modulation_bits: 6,
        coding_rate: 1.0,
        antennas: 1,
        duty_time: 1.0,
        duty_freq: 1.0,
    };

    /// A macro-cell at 64-QAM, rate 1/2 and full duty cycles.
    pub fn macro_cell(bandwidth_mhz: f64, antennas: u32) -> Self {
        CellScenario {
            bandwidth_mhz,
            modulation_bits: 6,
            coding_rate: 0.5,
            antennas,
            duty_time: 1.0,
            duty_freq: 1.0,
        }
    }

    pub fn with_bandwidth(self, bandwidth_mhz: f64) -> Self {
        CellScenario {
            bandwidth_mhz,
            ..self
        }
    }

    pub fn with_antennas(self, antennas: u32) -> Self {
        CellScenario { antennas, ..self }
    }

    pub fn with_coding_rate(self, coding_rate: f64) -> Self {
        CellScenario {
            coding_rate,
            ..self
        }
    }

    pub fn with_modulation_bits(self, modulation_bits: u32) -> Self {
        CellScenario {
            modulation_bits,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        positive("bandwidth_mhz", self.bandwidth_mhz)?;
        if !MODULATION_BITS.contains(&self.modulation_bits) {
            return Err(ModelError::range(
                "modulation_bits",
                "one of 1, 2, 4, 6, 8",
                self.modulation_bits as f64,
            ));
        }
        unit_fraction("coding_rate", self.coding_rate)?;
        if self.antennas == 0 {
            return Err(ModelError::range("antennas", ">= 1", 0.0));
        }
        unit_fraction("duty_time", self.duty_time)?;
        unit_fraction("duty_freq", self.duty_freq)?;
        Ok(())
    }

    /// Parameter vector in exponent order.
    fn parameters(&self) -> [f64; 6] {
        [
            self.bandwidth_mhz,
            self.modulation_bits as f64,
            self.coding_rate,
            self.antennas as f64,
            self.duty_time,
            self.duty_freq,
        ]
    }
}

fn unit_fraction(field: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value <= 1.0 {
        Ok(value)
    } else {
        Err(ModelError::range(field, "in (0, 1]", value))
    }
}

/// Baseband processing tasks, in reporting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BbuTask {
    Dpd,
    Filter,
    Fft,
    FdLin,
    FdNl,
    Fec,
    Cpri,
    Pcp,
}

impl BbuTask {
    pub const ALL: [BbuTask; 8] = [
        BbuTask::Dpd,
        BbuTask::Filter,
        BbuTask::Fft,
        BbuTask::FdLin,
        BbuTask::FdNl,
        BbuTask::Fec,
        BbuTask::Cpri,
        BbuTask::Pcp,
    ];

    /// Tasks a quantum annealer takes over; CPRI and PCP stay on silicon.
    pub const BASEBAND: [BbuTask; 6] = [
        BbuTask::Dpd,
        BbuTask::Filter,
        BbuTask::Fft,
        BbuTask::FdLin,
        BbuTask::FdNl,
        BbuTask::Fec,
    ];

    /// Control (PCP) and transfer (CPRI) systems.
    pub const CONTROL_TRANSFER: [BbuTask; 2] = [BbuTask::Cpri, BbuTask::Pcp];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            BbuTask::Dpd => "DPD",
            BbuTask::Filter => "Filter",
            BbuTask::Fft => "FFT",
            BbuTask::FdLin => "FDlin",
            BbuTask::FdNl => "FDnl",
            BbuTask::Fec => "FEC",
            BbuTask::Cpri => "CPRI",
            BbuTask::Pcp => "PCP",
        }
    }

    /// TOPS at [`CellScenario::REFERENCE`].
    pub fn reference_tops(self) -> f64 {
        match self {
            BbuTask::Dpd => 0.160,
            BbuTask::Filter => 0.400,
            BbuTask::Fft => 0.160,
            BbuTask::FdLin => 0.090,
            BbuTask::FdNl => 0.030,
            BbuTask::Fec => 0.140,
            BbuTask::Cpri => 0.720,
            BbuTask::Pcp => 0.400,
        }
    }

    pub fn exponents(self) -> ScalingExponents {
        let s = match self {
            BbuTask::Dpd | BbuTask::Filter | BbuTask::Fft => [1, 0, 0, 1, 1, 0],
            BbuTask::FdLin => [1, 0, 0, 1, 1, 1],
            BbuTask::FdNl => [1, 0, 0, 2, 1, 1],
            BbuTask::Fec | BbuTask::Cpri => [1, 1, 1, 1, 1, 1],
            BbuTask::Pcp => [0, 0, 0, 1, 0, 0],
        };
        ScalingExponents(s)
    }
}

impl fmt::Display for BbuTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BbuTask {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        BbuTask::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown BBU task `{s}`"))
    }
}

impl Serialize for BbuTask {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Exponents for (bandwidth, modulation, coding rate, antennas, dt, df).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScalingExponents(pub [u8; 6]);

/// A value per [`BbuTask`], stored densely in reporting order.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TaskMap<T>([T; 8]);

impl<T: Copy> TaskMap<T> {
    pub fn from_fn(mut f: impl FnMut(BbuTask) -> T) -> Self {
        TaskMap(BbuTask::ALL.map(&mut f))
    }

    pub fn iter(&self) -> impl Iterator<Item = (BbuTask, T)> + '_ {
        BbuTask::ALL.into_iter().map(move |t| (t, self.0[t.index()]))
    }

    pub fn map<U: Copy>(&self, mut f: impl FnMut(BbuTask, T) -> U) -> TaskMap<U> {
        TaskMap::from_fn(|t| f(t, self.0[t.index()]))
    }
}

impl TaskMap<f64> {
    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn sum_of(&self, tasks: &[BbuTask]) -> f64 {
        tasks.iter().map(|&t| self[t]).sum()
    }

    /// Keeps `tasks`, zeroes the rest.
    pub fn restrict(&self, tasks: &[BbuTask]) -> Self {
        self.map(|t, v| if tasks.contains(&t) { v } else { 0.0 })
    }
}

impl<T> Index<BbuTask> for TaskMap<T> {
    type Output = T;

    fn index(&self, task: BbuTask) -> &T {
        &self.0[task.index()]
    }
}

impl<T> IndexMut<BbuTask> for TaskMap<T> {
    fn index_mut(&mut self, task: BbuTask) -> &mut T {
        &mut self.0[task.index()]
    }
}

impl<T: Serialize> Serialize for TaskMap<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(8))?;
        for task in BbuTask::ALL {
            map.serialize_entry(task.name(), &self.0[task.index()])?;
        }
        map.end()
    }
}

/// Per-task TOPS demand of one scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BbuWorkload {
    pub tops_per_task: TaskMap<f64>,
    pub total_tops: f64,
}

impl BbuWorkload {
    fn from_tasks(tops_per_task: TaskMap<f64>) -> Self {
        BbuWorkload {
            total_tops: tops_per_task.sum(),
            tops_per_task,
        }
    }

    pub fn tops(&self, task: BbuTask) -> f64 {
        self.tops_per_task[task]
    }

    /// Share of the total carried by `tasks`.
    pub fn share_of(&self, tasks: &[BbuTask]) -> f64 {
        if self.total_tops == 0.0 {
            return 0.0;
        }
        self.tops_per_task.sum_of(tasks) / self.total_tops
    }
}

pub fn reference_workload() -> BbuWorkload {
    BbuWorkload::from_tasks(TaskMap::from_fn(BbuTask::reference_tops))
}

/// TOPS demand of `task` at `scenario`.
pub fn scale_task(task: BbuTask, scenario: &CellScenario) -> Result<f64> {
    scenario.validate()?;
    Ok(scale_unchecked(task, scenario))
}

fn scale_unchecked(task: BbuTask, scenario: &CellScenario) -> f64 {
    let target = scenario.parameters();
    let reference = CellScenario::REFERENCE.parameters();
    let ScalingExponents(exponents) = task.exponents();
    target
        .iter()
        .zip(reference)
        .zip(exponents)
        .fold(task.reference_tops(), |acc, ((&x, x_ref), s)| {
            acc * (x / x_ref).powi(s as i32)
        })
}

pub fn workload(scenario: &CellScenario) -> Result<BbuWorkload> {
    scenario.validate()?;
    Ok(BbuWorkload::from_tasks(TaskMap::from_fn(|t| {
        scale_unchecked(t, scenario)
    })))
}
