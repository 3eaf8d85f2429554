//! Qubit requirements from TOPS targets.
//!
//! A task's TOPS divided by the classical operations one problem costs
//! gives problems per second (PPS). Qubits held busy at any instant are
//! `PPS * qubits_per_problem * runtime`. Only FDnl (MIMO detection) and
//! FEC (LDPC decoding) are modelled directly; the rest of the baseband is
//! covered by scaling the sum up by the share those two tasks represent.

use serde::{Deserialize, Serialize};

use crate::error::{non_negative, positive, ModelError, Result};
use crate::qa_hardware::{qmi_runtime_with, QaProfile};
use crate::workload::{workload, BbuTask, CellScenario, TaskMap};

/// FDnl + FEC share of the baseband load used for the headline projection.
pub const DEFAULT_COVERED_FRACTION: f64 = 0.75;

/// Operations for one 64x64 MIMO detection problem.
pub const FDNL_OPS_AT_64: f64 = 80e6;

/// Operations for one 20-iteration 5G LDPC decode.
pub const FEC_HEADLINE_OPS: f64 = 150e6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TaskProblemModel {
    pub ops_per_problem: f64,
    pub qubits_per_problem: f64,
    pub runtime_per_problem_us: f64,
}

impl TaskProblemModel {
    pub fn validate(&self) -> Result<()> {
        positive("ops_per_problem", self.ops_per_problem)?;
        positive("qubits_per_problem", self.qubits_per_problem)?;
        positive("runtime_per_problem_us", self.runtime_per_problem_us)?;
        Ok(())
    }
}

/// MIMO detection of `users` streams at `bits_per_symbol` bits each.
pub fn fdnl_problem_model(
    users: u32,
    bits_per_symbol: u32,
    samples: u32,
    profile: &QaProfile,
) -> Result<TaskProblemModel> {
    fdnl_problem_model_with(users, bits_per_symbol, samples, profile.programming_us, profile)
}

fn fdnl_problem_model_with(
    users: u32,
    bits_per_symbol: u32,
    samples: u32,
    programming_us: f64,
    profile: &QaProfile,
) -> Result<TaskProblemModel> {
    if users == 0 {
        return Err(ModelError::range("users", ">= 1", 0.0));
    }
    if bits_per_symbol == 0 {
        return Err(ModelError::range("bits_per_symbol", ">= 1", 0.0));
    }
    let z = users as f64;
    Ok(TaskProblemModel {
        ops_per_problem: FDNL_OPS_AT_64 * (z / 64.0).powi(2),
        qubits_per_problem: bits_per_symbol as f64 * z,
        runtime_per_problem_us: qmi_runtime_with(programming_us, profile, samples),
    })
}

/// LDPC parity-check matrix shape: `m` checks, `n` variables, average
/// row weight `w_r` and column weight `w_c`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LdpcCode {
    pub name: String,
    pub m: u32,
    pub n: u32,
    pub w_r: f64,
    pub w_c: f64,
}

impl LdpcCode {
    pub fn nr_bg1() -> Self {
        LdpcCode {
            name: "5G-BG1".into(),
            m: 4224,
            n: 8448,
            w_r: 8.64,
            w_c: 20.0,
        }
    }

    pub fn builtin(name: &str) -> Option<Self> {
        (name == "5G-BG1").then(Self::nr_bg1)
    }

    /// Variables plus auxiliary qubits for each check's parity constraint.
    pub fn qubits(&self) -> Result<u64> {
        let t = ldpc_aux_depth(self.w_r)?;
        Ok(self.n as u64 + self.m as u64 * t as u64)
    }

    pub fn ops_per_iteration(&self) -> Result<f64> {
        ldpc_ops_per_iteration(self.m, self.n, self.w_r, self.w_c)
    }
}

impl Default for LdpcCode {
    fn default() -> Self {
        Self::nr_bg1()
    }
}

/// Belief-propagation cost of one decoding iteration.
pub fn ldpc_ops_per_iteration(m: u32, n: u32, w_r: f64, w_c: f64) -> Result<f64> {
    if m == 0 || n == 0 {
        return Err(ModelError::range("ldpc m, n", ">= 1", 0.0));
    }
    positive("w_r", w_r)?;
    positive("w_c", w_c)?;
    let (m, n) = (m as f64, n as f64);
    Ok(n + 3.0 * w_r * w_r * m - w_r * m + 2.0 * w_c * w_c * n + 4.0 * w_c * n)
}

/// Smallest `t >= 0` with `2^(t+1) - 2 >= w_r - (w_r mod 2)`.
pub fn ldpc_aux_depth(w_r: f64) -> Result<u32> {
    positive("w_r", w_r)?;
    let even = w_r - w_r.rem_euclid(2.0);
    let mut t = 0u32;
    while 2f64.powi(t as i32 + 1) - 2.0 < even {
        t += 1;
    }
    Ok(t)
}

/// Classical operation count assumed for one FEC problem.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum FecOpsConvention {
    /// 150M operations per 20-iteration decode.
    #[default]
    Headline,
    /// `ldpc_ops_per_iteration * iterations`.
    Analytic { iterations: u32 },
}

/// Fraction of the baseband load the FDnl + FEC budget stands for.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum CoveredFraction {
    /// Fixed 0.75.
    #[default]
    PaperMode,
    /// (FDnl + FEC TOPS) / total TOPS of the scenario.
    FromWorkload,
    Fixed { value: f64 },
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BudgetOptions {
    pub covered_fraction: CoveredFraction,
    pub fec_ops: FecOpsConvention,
    pub ldpc: LdpcCode,
    /// Programming time for FDnl problems, µs; the profile's if unset.
    pub fdnl_programming_us: Option<f64>,
    /// Programming time for FEC problems, µs; the profile's if unset.
    pub fec_programming_us: Option<f64>,
}

impl BudgetOptions {
    pub fn fec_model(&self, samples: u32, profile: &QaProfile) -> Result<TaskProblemModel> {
        let ops = match self.fec_ops {
            FecOpsConvention::Headline => FEC_HEADLINE_OPS,
            FecOpsConvention::Analytic { iterations } => {
                if iterations == 0 {
                    return Err(ModelError::range("iterations", ">= 1", 0.0));
                }
                self.ldpc.ops_per_iteration()? * iterations as f64
            }
        };
        let programming = self.fec_programming_us.unwrap_or(profile.programming_us);
        Ok(TaskProblemModel {
            ops_per_problem: ops,
            qubits_per_problem: self.ldpc.qubits()? as f64,
            runtime_per_problem_us: qmi_runtime_with(programming, profile, samples),
        })
    }

    pub fn fdnl_model(
        &self,
        scenario: &CellScenario,
        samples: u32,
        profile: &QaProfile,
    ) -> Result<TaskProblemModel> {
        let programming = self.fdnl_programming_us.unwrap_or(profile.programming_us);
        fdnl_problem_model_with(
            scenario.antennas,
            scenario.modulation_bits,
            samples,
            programming,
            profile,
        )
    }
}

/// Qubits kept busy by `tops` of one task.
pub fn task_qubits(tops: f64, model: &TaskProblemModel) -> Result<u64> {
    non_negative("tops", tops)?;
    model.validate()?;
    Ok(task_qubits_exact(tops, model).ceil() as u64)
}

/// [`task_qubits`] before the ceiling.
pub fn task_qubits_exact(tops: f64, model: &TaskProblemModel) -> f64 {
    let pps = tops * 1e12 / model.ops_per_problem;
    pps * model.qubits_per_problem * model.runtime_per_problem_us * 1e-6
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QubitBudget {
    /// Non-zero for FDnl and FEC only.
    pub per_task: TaskMap<u64>,
    pub covered_fraction: f64,
    pub total: u64,
}

impl QubitBudget {
    pub fn modelled_sum(&self) -> u64 {
        self.per_task.iter().map(|(_, q)| q).sum()
    }
}

/// Tasks whose qubit counts are modelled directly.
pub const MODELLED_TASKS: [BbuTask; 2] = [BbuTask::FdNl, BbuTask::Fec];

pub fn total_budget(
    scenario: &CellScenario,
    profile: &QaProfile,
    samples: u32,
    options: &BudgetOptions,
) -> Result<QubitBudget> {
    profile.validate()?;
    let load = workload(scenario)?;
    let fdnl = task_qubits(load.tops(BbuTask::FdNl), &options.fdnl_model(scenario, samples, profile)?)?;
    let fec = task_qubits(load.tops(BbuTask::Fec), &options.fec_model(samples, profile)?)?;

    let covered_fraction = match options.covered_fraction {
        CoveredFraction::PaperMode => DEFAULT_COVERED_FRACTION,
        CoveredFraction::FromWorkload => load.share_of(&MODELLED_TASKS),
        CoveredFraction::Fixed { value } => value,
    };
    if !(covered_fraction > 0.0 && covered_fraction <= 1.0) {
        return Err(ModelError::range("covered_fraction", "in (0, 1]", covered_fraction));
    }

    let mut per_task = TaskMap::from_fn(|_| 0u64);
    per_task[BbuTask::FdNl] = fdnl;
    per_task[BbuTask::Fec] = fec;
    let sum = fdnl + fec;
    let total = if covered_fraction == 1.0 {
        sum
    } else {
        (sum as f64 / covered_fraction).ceil() as u64
    };
    Ok(QubitBudget {
        per_task,
        covered_fraction,
        total,
    })
}
