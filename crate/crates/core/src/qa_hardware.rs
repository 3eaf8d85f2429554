//! Quantum annealer device model.
//!
//! Covers the latency of one quantum machine instruction (QMI), the heat
//! dissipated by Φ-DAC programming and the thermalization it forces,
//! readout parallelism, and how many qubits fit in one refrigerator.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{non_negative, positive, ModelError, Result};

/// Magnetic flux quantum h/2e in webers.
pub const FLUX_QUANTUM_WB: f64 = 2.067833848e-15;

/// SFQ pulses moved per Φ-DAC in a worst-case reprogram (-16 .. +16).
pub const SFQ_PER_DAC: f64 = 32.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QaProfile {
    /// Coefficient programming plus thermalization and reset.
    pub programming_us: f64,
    pub anneal_us: f64,
    pub readout_us: f64,
    pub readout_delay_us: f64,
    pub refrigeration_kw: f64,
    /// Cooling power available at the QPU stage.
    pub cooling_power_w: f64,
    /// Φ-DAC junction critical current in amperes.
    pub dac_critical_current_a: f64,
    pub couplers_per_qubit: u32,
    pub dacs_per_qubit: u32,
    pub dacs_per_coupler: u32,
    pub bit_precision: u32,
    /// Dissipation per SFQ in units of `I_c * Φ0` (two storage loops, factor 2 each).
    pub sfq_energy_factor: f64,
}

impl Default for QaProfile {
    fn default() -> Self {
        QaProfile::projected()
    }
}

impl QaProfile {
    /// Large-scale device with GHz control lines: 42 + 3·Ns µs per QMI.
    pub fn projected() -> Self {
        QaProfile {
            programming_us: 42.0,
            anneal_us: 1.0,
            readout_us: 1.0,
            readout_delay_us: 1.0,
            refrigeration_kw: 25.0,
            cooling_power_w: 30e-6,
            dac_critical_current_a: 55e-6,
            couplers_per_qubit: 15,
            dacs_per_qubit: 6,
            dacs_per_coupler: 1,
            bit_precision: 5,
            sfq_energy_factor: 4.0,
        }
    }

    /// Today's devices: 4-40 µs programming, 25-150 µs readout and the
    /// conservative 1 ms default readout delay.
    pub fn current() -> Self {
        QaProfile {
            programming_us: 22.0,
            readout_us: 87.5,
            readout_delay_us: 1000.0,
            ..QaProfile::projected()
        }
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "projected" => Some(Self::projected()),
            "current" => Some(Self::current()),
            _ => None,
        }
    }

    pub const BUILTIN_NAMES: [&'static str; 2] = ["projected", "current"];

    /// Per-sample time: anneal + readout + readout delay.
    pub fn sample_us(&self) -> f64 {
        self.anneal_us + self.readout_us + self.readout_delay_us
    }

    pub fn refrigeration_w(&self) -> f64 {
        self.refrigeration_kw * 1e3
    }

    pub fn validate(&self) -> Result<()> {
        positive("programming_us", self.programming_us)?;
        positive("anneal_us", self.anneal_us)?;
        positive("readout_us", self.readout_us)?;
        positive("readout_delay_us", self.readout_delay_us)?;
        positive("refrigeration_kw", self.refrigeration_kw)?;
        positive("cooling_power_w", self.cooling_power_w)?;
        positive("dac_critical_current_a", self.dac_critical_current_a)?;
        positive("sfq_energy_factor", self.sfq_energy_factor)?;
        for (field, v) in [
            ("couplers_per_qubit", self.couplers_per_qubit),
            ("dacs_per_qubit", self.dacs_per_qubit),
            ("dacs_per_coupler", self.dacs_per_coupler),
            ("bit_precision", self.bit_precision),
        ] {
            if v == 0 {
                return Err(ModelError::range(field, ">= 1", 0.0));
            }
        }
        Ok(())
    }
}

/// Microseconds to program a QMI and draw `samples` from it.
pub fn qmi_runtime(profile: &QaProfile, samples: u32) -> f64 {
    qmi_runtime_with(profile.programming_us, profile, samples)
}

/// As [`qmi_runtime`] with a task-specific programming time.
pub fn qmi_runtime_with(programming_us: f64, profile: &QaProfile, samples: u32) -> f64 {
    programming_us + samples as f64 * profile.sample_us()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProgrammingEnergy {
    pub dacs: u64,
    pub joules: f64,
    pub thermalization_s: f64,
}

/// Worst-case on-chip dissipation of reprogramming every qubit and coupler.
pub fn programming_energy(
    profile: &QaProfile,
    n_qubits: u64,
    n_couplers: u64,
    critical_current_a: f64,
) -> Result<ProgrammingEnergy> {
    positive("critical_current_a", critical_current_a)?;
    positive("cooling_power_w", profile.cooling_power_w)?;
    let dacs = profile.dacs_per_qubit as u64 * n_qubits + profile.dacs_per_coupler as u64 * n_couplers;
    let joules =
        dacs as f64 * SFQ_PER_DAC * profile.sfq_energy_factor * critical_current_a * FLUX_QUANTUM_WB;
    Ok(ProgrammingEnergy {
        dacs,
        joules,
        thermalization_s: joules / profile.cooling_power_w,
    })
}

/// Couplers of a device with `n_qubits` at the profile's connectivity.
pub fn couplers_for(profile: &QaProfile, n_qubits: u64) -> u64 {
    n_qubits * profile.couplers_per_qubit as u64
}

/// Worst-case coefficient data for one programming cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProgrammingData {
    pub bits: u64,
    pub bytes: f64,
}

impl ProgrammingData {
    /// Control-line bandwidth factor needed to program `self` in the time
    /// `baseline` takes today.
    pub fn bandwidth_scale_over(&self, baseline: &ProgrammingData) -> f64 {
        self.bits as f64 / baseline.bits as f64
    }
}

pub fn programming_data(profile: &QaProfile, n_qubits: u64, n_couplers: u64) -> ProgrammingData {
    let bits = profile.bit_precision as u64 * (n_qubits + n_couplers);
    ProgrammingData {
        bits,
        bytes: bits as f64 / 8.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum ReadoutScheme {
    /// One qubit at a time per flux bias line, `sqrt(N/2)` lines.
    TimeDivision,
    /// Microresonators of quality factor `quality_factor` sharing a 4 GHz band.
    FrequencyMultiplex { quality_factor: f64 },
}

/// Qubits read out simultaneously.
pub fn readout_parallelism(n_qubits: u64, scheme: ReadoutScheme) -> Result<u64> {
    if n_qubits == 0 {
        return Err(ModelError::range("n_qubits", ">= 1", 0.0));
    }
    match scheme {
        // floor(sqrt(n/2)) == isqrt(floor(n/2)) for integer results
        ReadoutScheme::TimeDivision => Ok((n_qubits / 2).isqrt()),
        ReadoutScheme::FrequencyMultiplex { quality_factor } => {
            if !(quality_factor >= 1.0 && quality_factor.is_finite()) {
                return Err(ModelError::range("quality_factor", ">= 1", quality_factor));
            }
            let channels = (4.0 * quality_factor / 6.0).floor() as u64;
            Ok(n_qubits.min(channels))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeviceGeometry {
    /// Radius of the refrigerator's experimental space, mm.
    pub wafer_radius_mm: f64,
    /// Edge of one square die, mm.
    pub die_edge_mm: f64,
    pub qubits_per_die: u32,
}

impl Default for DeviceGeometry {
    fn default() -> Self {
        DeviceGeometry {
            wafer_radius_mm: 250.0,
            die_edge_mm: 0.335,
            qubits_per_die: 8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RefrigeratorCapacity {
    pub dies: u64,
    pub qubits: u64,
}

/// Whole square dies on a round wafer: `π R²/L² - 1.16 π R/L`, floored at 0.
pub fn usable_dies(geom: &DeviceGeometry) -> Result<u64> {
    positive("die_edge_mm", geom.die_edge_mm)?;
    non_negative("wafer_radius_mm", geom.wafer_radius_mm)?;
    if geom.die_edge_mm >= geom.wafer_radius_mm {
        return Err(ModelError::range(
            "die_edge_mm",
            "< wafer_radius_mm",
            geom.die_edge_mm,
        ));
    }
    let ratio = geom.wafer_radius_mm / geom.die_edge_mm;
    let dies = PI * ratio * ratio - 1.16 * PI * ratio;
    Ok(dies.max(0.0).floor() as u64)
}

pub fn refrigerator_qubit_capacity(geom: &DeviceGeometry) -> Result<RefrigeratorCapacity> {
    let dies = usable_dies(geom)?;
    Ok(RefrigeratorCapacity {
        dies,
        qubits: dies * geom.qubits_per_die as u64,
    })
}
