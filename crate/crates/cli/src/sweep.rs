//! `--sweep axis=values` parsing and grid expansion.

use std::str::FromStr;

use qaran_core::workload::CellScenario;

use crate::config::RunConfig;
use crate::report::Warning;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Bandwidth,
    Antennas,
    Samples,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    pub values: Vec<f64>,
}

impl FromStr for SweepSpec {
    type Err = String;

    /// `bandwidth=50,100,200` or `antennas=32:256:32` (inclusive range).
    fn from_str(s: &str) -> Result<Self, String> {
        let (axis, values) = s
            .split_once('=')
            .ok_or_else(|| format!("expected axis=values, got '{s}'"))?;
        let axis = match axis.trim() {
            "bandwidth" | "bandwidth_mhz" | "bw" => Axis::Bandwidth,
            "antennas" | "na" => Axis::Antennas,
            "samples" | "ns" => Axis::Samples,
            other => return Err(format!("unknown sweep axis '{other}' (bandwidth, antennas, samples)")),
        };
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("'{t}' is not a number"))
        };
        let values = if let [start, stop, step] = values.split(':').collect::<Vec<_>>()[..] {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if step <= 0.0 || stop < start {
                return Err(format!("bad range {values}: need start <= stop and step > 0"));
            }
            let n = ((stop - start) / step + 1e-9).floor() as usize;
            if n > 100_000 {
                return Err(format!("range {values} has more than 100000 points"));
            }
            (0..=n).map(|i| start + i as f64 * step).collect()
        } else {
            values.split(',').map(num).collect::<Result<Vec<_>, _>>()?
        };
        if values.is_empty() {
            return Err(format!("no values for axis in '{s}'"));
        }
        if axis != Axis::Bandwidth && values.iter().any(|v| v.fract() != 0.0 || *v < 0.0 || *v > u32::MAX as f64) {
            return Err(format!("'{s}': counts must be non-negative integers"));
        }
        Ok(SweepSpec { axis, values })
    }
}

/// Command-line sweeps replace the config's axis of the same name.
pub fn apply(cfg: &mut RunConfig, specs: &[SweepSpec]) {
    for spec in specs {
        match spec.axis {
            Axis::Bandwidth => cfg.sweep.bandwidth_mhz = spec.values.clone(),
            Axis::Antennas => cfg.sweep.antennas = spec.values.iter().map(|v| *v as u32).collect(),
            Axis::Samples => cfg.sweep.samples = spec.values.iter().map(|v| *v as u32).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub name: String,
    pub scenario: CellScenario,
    pub samples: u32,
}

/// Scenarios x bandwidths x antennas (x samples). Invalid points are
/// dropped with an `out-of-range` warning.
pub fn grid(cfg: &RunConfig, with_samples: bool) -> (Vec<GridPoint>, Vec<Warning>) {
    let sw = &cfg.sweep;
    let mut points = Vec::new();
    let mut warnings = Vec::new();
    let samples: Vec<u32> = if with_samples && !sw.samples.is_empty() {
        sw.samples.clone()
    } else {
        vec![cfg.samples]
    };
    for named in &cfg.scenarios {
        let bws: Vec<Option<f64>> = if sw.bandwidth_mhz.is_empty() {
            vec![None]
        } else {
            sw.bandwidth_mhz.iter().copied().map(Some).collect()
        };
        let nas: Vec<Option<u32>> = if sw.antennas.is_empty() {
            vec![None]
        } else {
            sw.antennas.iter().copied().map(Some).collect()
        };
        for bw in &bws {
            for na in &nas {
                let mut s = named.scenario;
                let mut name = named.name.clone();
                if let Some(bw) = bw {
                    s = s.with_bandwidth(*bw);
                    name += &format!("/bw={bw}");
                }
                if let Some(na) = na {
                    s = s.with_antennas(*na);
                    name += &format!("/na={na}");
                }
                if let Err(e) = s.validate() {
                    warnings.push(Warning::new("out-of-range", &name, e.to_string()));
                    continue;
                }
                for &ns in &samples {
                    let name = if with_samples && !sw.samples.is_empty() {
                        format!("{name}/ns={ns}")
                    } else {
                        name.clone()
                    };
                    points.push(GridPoint {
                        name,
                        scenario: s,
                        samples: ns,
                    });
                }
            }
        }
    }
    (points, warnings)
}
