//! Reference figures as printed, for regression tests and `--paper-table` output.

/// A printed number and how many significant figures or decimals it carries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Printed {
    pub value: f64,
    pub precision: Precision,
    /// Printed with a leading "≈".
    pub approx: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Precision {
    Decimals(u32),
    Significant(u32),
    /// Relative tolerance instead of a digit count.
    Relative(f64),
}

impl Printed {
    pub const fn dec(value: f64, decimals: u32) -> Self {
        Printed {
            value,
            precision: Precision::Decimals(decimals),
            approx: false,
        }
    }

    pub const fn sig(value: f64, digits: u32) -> Self {
        Printed {
            value,
            precision: Precision::Significant(digits),
            approx: false,
        }
    }

    pub const fn within(value: f64, relative: f64) -> Self {
        Printed {
            value,
            precision: Precision::Relative(relative),
            approx: false,
        }
    }

    pub const fn approx(self) -> Self {
        Printed {
            approx: true,
            ..self
        }
    }

    /// `x` rounded the way this figure was printed.
    pub fn round_like(&self, x: f64) -> f64 {
        match self.precision {
            Precision::Decimals(d) => {
                let scale = 10f64.powi(d as i32);
                (x * scale).round() / scale
            }
            Precision::Significant(d) => crate::cmos::round_significant(x, d as i32),
            Precision::Relative(_) => x,
        }
    }

    /// True when `x` prints identically (or lies within a relative band).
    pub fn matches(&self, x: f64) -> bool {
        if let Precision::Relative(rel) = self.precision {
            return (x - self.value).abs() <= rel * self.value.abs() * (1.0 + 1e-12);
        }
        let a = self.round_like(x);
        let b = self.round_like(self.value);
        (a - b).abs() <= 1e-9 * b.abs().max(1.0)
    }
}

pub mod targets {
    /// (label, bandwidth MHz, antennas) per column.
    pub const COLUMNS: [(&str, f64, u32); 10] = [
        ("Reference", 20.0, 1),
        ("4G 20MHz NA=2", 20.0, 2),
        ("4G 20MHz NA=4", 20.0, 4),
        ("4G 20MHz NA=8", 20.0, 8),
        ("5G 200MHz NA=32", 200.0, 32),
        ("5G 200MHz NA=64", 200.0, 64),
        ("5G 200MHz NA=128", 200.0, 128),
        ("5G 400MHz NA=32", 400.0, 32),
        ("5G 400MHz NA=64", 400.0, 64),
        ("5G 400MHz NA=128", 400.0, 128),
    ];

    /// Decimals printed per column.
    pub const DECIMALS: [u32; 10] = [3, 3, 3, 3, 1, 1, 1, 1, 1, 1];

    /// Rows in task order DPD, Filter, FFT, FDlin, FDnl, FEC, CPRI, PCP.
    pub const CELLS: [[f64; 10]; 8] = [
        [0.160, 0.320, 0.640, 1.280, 51.2, 102.4, 204.8, 102.4, 204.8, 409.6],
        [0.400, 0.800, 1.600, 3.200, 128.0, 256.0, 512.0, 256.0, 512.0, 1024.0],
        [0.160, 0.320, 0.640, 1.280, 51.2, 102.4, 204.8, 102.4, 204.8, 409.6],
        [0.090, 0.180, 0.360, 0.720, 28.8, 57.6, 115.2, 57.6, 115.2, 230.4],
        [0.030, 0.120, 0.480, 1.920, 307.2, 1228.8, 4915.2, 614.4, 2457.6, 9830.4],
        [0.140, 0.140, 0.280, 0.560, 22.4, 44.8, 89.6, 44.8, 89.6, 179.2],
        [0.720, 0.720, 1.440, 2.880, 115.2, 230.4, 460.8, 230.4, 460.8, 921.6],
        [0.400, 0.800, 1.600, 3.200, 12.8, 25.6, 51.2, 12.8, 25.6, 51.2],
    ];

    pub const TOTALS: [f64; 10] = [
        2.100, 3.400, 7.040, 15.040, 716.8, 2048.0, 6533.6, 1420.8, 4070.4, 13056.0,
    ];

    /// Totals that differ from the sum of their own printed column
    /// (200 MHz / 128 antennas sums to 6,553.6).
    pub const TOTAL_INCONSISTENT: [bool; 10] = [
        false, false, false, false, false, false, true, false, false, false,
    ];
}

pub mod energy {
    use super::Printed;

    /// Φ-DAC critical currents of the two columns, amperes.
    pub const CURRENTS_A: [f64; 2] = [55e-6, 1e-6];

    pub struct Row {
        pub qubits: u64,
        pub couplers: u64,
        pub dacs: u64,
        /// (energy J, thermalization s) per current.
        pub cells: [(Printed, Printed); 2],
    }

    const fn p(v: f64, sig: u32) -> Printed {
        Printed::sig(v, sig).approx()
    }

    const fn t(v: f64, sig: u32) -> Printed {
        Printed::sig(v, sig)
    }

    pub const ROWS: [Row; 4] = [
        Row {
            qubits: 512,
            couplers: 1472,
            dacs: 4544,
            cells: [(p(66e-15, 2), t(2.2e-9, 2)), (p(1e-15, 1), t(33e-12, 2))],
        },
        Row {
            qubits: 2048,
            couplers: 6016,
            dacs: 18_304,
            cells: [(p(266e-15, 3), t(8.9e-9, 2)), (p(5e-15, 1), t(167e-12, 3))],
        },
        Row {
            qubits: 5436,
            couplers: 37_440,
            dacs: 70_056,
            cells: [(p(1e-12, 1), t(33e-9, 2)), (p(18e-15, 2), t(600e-12, 1))],
        },
        Row {
            qubits: 10_000_000,
            couplers: 75_000_000,
            dacs: 135_000_000,
            cells: [(p(2e-9, 1), t(66e-6, 2)), (p(36e-12, 2), t(1.2e-6, 2))],
        },
    ];
}

pub mod readout {
    use super::Printed;

    pub const QUALITY_FACTORS: [f64; 2] = [1e3, 1e6];

    pub struct Row {
        pub qubits: u64,
        pub time_division: Printed,
        pub freq_multiplex: [Printed; 2],
    }

    const fn exact(v: f64) -> Printed {
        Printed::dec(v, 0)
    }

    const fn about(v: f64, sig: u32) -> Printed {
        Printed::sig(v, sig).approx()
    }

    pub const ROWS: [Row; 4] = [
        Row {
            qubits: 512,
            time_division: exact(16.0),
            freq_multiplex: [exact(512.0), exact(512.0)],
        },
        Row {
            qubits: 2048,
            time_division: exact(32.0),
            freq_multiplex: [about(666.0, 3), exact(2048.0)],
        },
        Row {
            qubits: 5436,
            time_division: about(52.0, 2),
            freq_multiplex: [about(666.0, 3), exact(5436.0)],
        },
        Row {
            qubits: 10_000_000,
            time_division: about(2200.0, 2),
            freq_multiplex: [about(666.0, 3), Printed::within(666_000.0, 1e-3).approx()],
        },
    ];
}

pub mod qubits_time {
    pub const SAMPLES: [u32; 4] = [1, 20, 50, 100];
    pub const RUNTIME_US: [f64; 4] = [45.0, 102.0, 192.0, 342.0];
    pub const FDNL: [f64; 4] = [530e3, 1.20e6, 2.26e6, 4.03e6];
    pub const FEC: [f64; 4] = [570e3, 1.29e6, 2.43e6, 4.34e6];
    pub const TOTAL: [f64; 4] = [1.60e6, 1.99e6, 6.25e6, 11.16e6];
    /// Totals that agree with their own per-task rows under a 0.75 share.
    pub const TOTAL_CONSISTENT: [bool; 4] = [false, false, true, true];
}

pub mod power {
    /// BS totals with 14 nm CMOS, kW: 4G 20 MHz at 2/4/8 antennas.
    pub const CMOS_4G: [(u32, f64); 3] = [(2, 0.35), (4, 0.71), (8, 1.43)];
    /// BS totals with 14 nm CMOS, kW: 5G 400 MHz.
    pub const CMOS_5G_400: [(u32, f64); 3] = [(32, 34.7), (64, 89.9), (128, 261.3)];
    /// BS totals with QA baseband, kW: 5G 400 MHz.
    pub const QA_5G_400: [(u32, f64); 3] = [(32, 37.0), (64, 49.0), (128, 73.0)];
    /// Three 400 MHz 64-antenna sites, kW.
    pub const CRAN_CMOS_KW: f64 = 290.0;
    pub const CRAN_QA_KW: f64 = 131.0;

    pub struct BenefitRow {
        pub bandwidth_mhz: f64,
        pub qubits_bs: f64,
        pub qubits_cran: f64,
        pub bs_cmos_kw: f64,
        pub bs_qa_kw: f64,
        pub cran_cmos_mw: f64,
        pub cran_qa_mw: f64,
    }

    /// 64 antennas, 14 nm.
    pub const BENEFIT: [BenefitRow; 4] = [
        BenefitRow {
            bandwidth_mhz: 50.0,
            qubits_bs: 386e3,
            qubits_cran: 1.16e6,
            bs_cmos_kw: 19.3,
            bs_qa_kw: 36.0,
            cran_cmos_mw: 0.079,
            cran_qa_mw: 0.081,
        },
        BenefitRow {
            bandwidth_mhz: 100.0,
            qubits_bs: 772e3,
            qubits_cran: 2.32e6,
            bs_cmos_kw: 29.4,
            bs_qa_kw: 37.9,
            cran_cmos_mw: 0.11,
            cran_qa_mw: 0.09,
        },
        BenefitRow {
            bandwidth_mhz: 200.0,
            qubits_bs: 1.54e6,
            qubits_cran: 4.62e6,
            bs_cmos_kw: 49.5,
            bs_qa_kw: 41.6,
            cran_cmos_mw: 0.17,
            cran_qa_mw: 0.10,
        },
        BenefitRow {
            bandwidth_mhz: 400.0,
            qubits_bs: 3.08e6,
            qubits_cran: 9.24e6,
            bs_cmos_kw: 89.9,
            bs_qa_kw: 49.0,
            cran_cmos_mw: 0.29,
            cran_qa_mw: 0.13,
        },
    ];
}

pub mod costsavings {
    pub const YEARS: [u32; 4] = [1, 2, 5, 10];
    pub const COLUMNS: [&str; 3] = ["BS NA=64", "BS NA=128", "C-RAN"];
    /// Power deltas the table is computed from, kW.
    pub const DELTA_KW: [f64; 3] = [41.0, 188.0, 159.0];
    /// USD per column, then per horizon.
    pub const COST: [[f64; 4]; 3] = [
        [50e3, 100e3, 250e3, 500e3],
        [235e3, 471e3, 1.17e6, 2.35e6],
        [200e3, 400e3, 1e6, 2e6],
    ];
    /// Metric kilotons.
    pub const CO2_KT: [[f64; 4]; 3] = [
        [0.15, 0.30, 0.75, 1.50],
        [0.68, 1.37, 3.43, 6.87],
        [0.57, 1.15, 2.87, 5.75],
    ];
}

pub mod hardware {
    pub const EFFICIENCY_14NM: f64 = 0.076;
    pub const EFFICIENCY_1_5NM: f64 = 0.3;
    pub const QMI_SAMPLES: [u32; 4] = [1, 20, 50, 100];
    pub const QMI_RUNTIME_US: [f64; 4] = [45.0, 102.0, 192.0, 342.0];
    pub const USABLE_DIES: f64 = 1.75e6;
    pub const FRIDGE_QUBITS: f64 = 14e6;
}

pub mod timeline {
    /// (required qubits, best-case year).
    pub const AVAILABILITY: [(u64, i32); 3] = [(39_000, 2026), (618_000, 2035), (1_850_000, 2038)];
    /// (label, bandwidth MHz, antennas, node) of the crossover points.
    pub const CROSSOVERS: [(&str, f64, u32, &str); 5] = [
        ("A", 20.0, 256, "14nm"),
        ("B", 50.0, 128, "14nm"),
        ("C", 160.0, 64, "14nm"),
        ("D", 60.0, 256, "1.5nm"),
        ("E", 190.0, 128, "1.5nm"),
    ];
}
