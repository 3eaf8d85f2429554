//! Printed tables reproduced from the models, each checked against an
//! independent re-derivation written here from scratch.

use qaran_core::cmos::{self, CmosProfile, EfficiencyMode};
use qaran_core::economics::{compare, cost_report, CostAssumptions, PlantConstants, Topology};
use qaran_core::published::{self, Printed};
use qaran_core::qa_hardware::{
    programming_energy, qmi_runtime, readout_parallelism, refrigerator_qubit_capacity, DeviceGeometry,
    QaProfile, ReadoutScheme,
};
use qaran_core::qubit_budget::{total_budget, BudgetOptions};
use qaran_core::workload::{workload, BbuTask, CellScenario};

/// TOPS oracle: reference values times the scaling law, spelled out per task.
fn oracle_tops(task: usize, bw: f64, m: f64, r: f64, na: f64) -> f64 {
    let reference = [0.16, 0.4, 0.16, 0.09, 0.03, 0.14, 0.72, 0.4];
    let (b, mm, rr, a) = (bw / 20.0, m / 6.0, r / 1.0, na);
    let factor = match task {
        0..=2 => b * a,
        3 => b * a,
        4 => b * a * a,
        5 | 6 => b * mm * rr * a,
        7 => a,
        _ => unreachable!(),
    };
    reference[task] * factor
}

#[test]
fn targets_table() {
    for (col, &(_, bw, na)) in published::targets::COLUMNS.iter().enumerate() {
        let r = if col == 0 { 1.0 } else { 0.5 };
        let s = CellScenario::macro_cell(bw, na).with_coding_rate(r);
        let w = workload(&s).unwrap();
        let dec = published::targets::DECIMALS[col];
        for (row, task) in BbuTask::ALL.into_iter().enumerate() {
            let printed = Printed::dec(published::targets::CELLS[row][col], dec);
            let got = w.tops(task);
            assert!(printed.matches(got), "{task} col {col}: {got}");
            let oracle = oracle_tops(row, bw, 6.0, r, na as f64);
            assert!((got - oracle).abs() <= 1e-9 * oracle.max(1.0));
        }
        let total = Printed::dec(published::targets::TOTALS[col], dec);
        let column_sum: f64 = published::targets::CELLS.iter().map(|r| r[col]).sum();
        assert!(Printed::dec(column_sum, dec).matches(w.total_tops));
        let inconsistent = published::targets::TOTAL_INCONSISTENT[col];
        assert_eq!(total.matches(w.total_tops), !inconsistent, "total col {col}: {}", w.total_tops);
    }
}

#[test]
fn energy_table_large_current_column() {
    let p = QaProfile::projected();
    let phi0 = 2.0678e-15;
    for row in &published::energy::ROWS {
        let i_c = published::energy::CURRENTS_A[0];
        let e = programming_energy(&p, row.qubits, row.couplers, i_c).unwrap();
        assert_eq!(e.dacs, 6 * row.qubits + row.couplers);
        let oracle = e.dacs as f64 * 32.0 * 4.0 * i_c * phi0;
        assert!((e.joules - oracle).abs() / oracle < 1e-4);
        let (pe, pt) = row.cells[0];
        assert!((e.joules - pe.value).abs() / pe.value <= 0.05, "{} J", e.joules);
        assert!((e.thermalization_s - pt.value).abs() / pt.value <= 0.05);
    }
}

#[test]
fn readout_table() {
    for row in &published::readout::ROWS {
        let td = readout_parallelism(row.qubits, ReadoutScheme::TimeDivision).unwrap();
        assert!(row.time_division.matches(td as f64), "{} td {td}", row.qubits);
        for (q, printed) in published::readout::QUALITY_FACTORS.iter().zip(row.freq_multiplex) {
            let fm = readout_parallelism(row.qubits, ReadoutScheme::FrequencyMultiplex { quality_factor: *q })
                .unwrap();
            assert!(printed.matches(fm as f64), "{} fm {fm}", row.qubits);
        }
    }
}

#[test]
fn capacity_and_runtime() {
    let c = refrigerator_qubit_capacity(&DeviceGeometry::default()).unwrap();
    let dies = std::f64::consts::PI * (250.0f64 / 0.335).powi(2) - 1.16 * std::f64::consts::PI * 250.0 / 0.335;
    assert_eq!(c.dies, dies.floor() as u64);
    assert!((c.dies as f64 / published::hardware::USABLE_DIES - 1.0).abs() <= 0.01);
    assert!((c.qubits as f64 / published::hardware::FRIDGE_QUBITS - 1.0).abs() <= 0.01);
    let p = QaProfile::projected();
    for (ns, t) in published::hardware::QMI_SAMPLES.iter().zip(published::hardware::QMI_RUNTIME_US) {
        assert_eq!(qmi_runtime(&p, *ns), t);
    }
}

#[test]
fn cmos_efficiencies() {
    assert_eq!(
        CmosProfile::node_14nm(EfficiencyMode::AsPrinted).efficiency,
        published::hardware::EFFICIENCY_14NM
    );
    assert_eq!(
        CmosProfile::node_1_5nm(EfficiencyMode::AsPrinted).efficiency,
        published::hardware::EFFICIENCY_1_5NM
    );
}

#[test]
fn qubits_time_table() {
    use published::qubits_time as t;
    let s = CellScenario::macro_cell(400.0, 64);
    let p = QaProfile::projected();
    for i in 0..4 {
        let b = total_budget(&s, &p, t::SAMPLES[i], &BudgetOptions::default()).unwrap();
        let runtime = 42e-6 + 3e-6 * t::SAMPLES[i] as f64;
        let fdnl_oracle = 2457.6e12 / 80e6 * 384.0 * runtime;
        let fec_oracle = 89.6e12 / 150e6 * 21_120.0 * runtime;
        assert_eq!(b.per_task[BbuTask::FdNl], fdnl_oracle.ceil() as u64);
        assert_eq!(b.per_task[BbuTask::Fec], fec_oracle.ceil() as u64);
        assert!((b.per_task[BbuTask::FdNl] as f64 / t::FDNL[i] - 1.0).abs() <= 0.01);
        assert!((b.per_task[BbuTask::Fec] as f64 / t::FEC[i] - 1.0).abs() <= 0.01);
        let consistent = (b.total as f64 / t::TOTAL[i] - 1.0).abs() <= 0.01;
        assert_eq!(consistent, t::TOTAL_CONSISTENT[i], "Ns={}", t::SAMPLES[i]);
    }
}

#[test]
fn bs_power_figures() {
    let n14 = CmosProfile::node_14nm(EfficiencyMode::AsPrinted);
    let qa = QaProfile::projected();
    let plant = PlantConstants::default();
    let loss = 0.91 * 0.93 * 0.94;
    for (na, kw) in published::power::CMOS_4G {
        let s = CellScenario::macro_cell(20.0, na);
        let c = compare(&s, &n14, &qa, 20, &Topology::Bs, &plant).unwrap();
        let oracle = (workload(&s).unwrap().total_tops / 0.076 * 1.3 + na as f64 * 113.4) / loss;
        assert!((c.cmos.total - oracle).abs() / oracle < 1e-9);
        assert!((c.cmos.total / (kw * 1e3) - 1.0).abs() <= 0.15, "{na}: {}", c.cmos.total);
    }
    for ((na, cmos_kw), (_, qa_kw)) in published::power::CMOS_5G_400.into_iter().zip(published::power::QA_5G_400) {
        let s = CellScenario::macro_cell(400.0, na);
        let c = compare(&s, &n14, &qa, 20, &Topology::Bs, &plant).unwrap();
        let w = workload(&s).unwrap();
        let ct = w.tops(BbuTask::Pcp) + w.tops(BbuTask::Cpri);
        let qa_oracle = (ct / 0.076 * 1.3 + na as f64 * 113.4) / loss + 25e3;
        assert!((c.qa.total - qa_oracle).abs() / qa_oracle < 1e-9);
        assert!((c.cmos.total / (cmos_kw * 1e3) - 1.0).abs() <= 0.15, "{na}: {}", c.cmos.total);
        assert!((c.qa.total / (qa_kw * 1e3) - 1.0).abs() <= 0.15, "{na}: {}", c.qa.total);
    }
}

#[test]
fn cran_figures() {
    let n14 = CmosProfile::node_14nm(EfficiencyMode::AsPrinted);
    let c = compare(
        &CellScenario::macro_cell(400.0, 64),
        &n14,
        &QaProfile::projected(),
        20,
        &Topology::cran(3),
        &PlantConstants::default(),
    )
    .unwrap();
    assert!((c.cmos.total / (published::power::CRAN_CMOS_KW * 1e3) - 1.0).abs() <= 0.15);
    assert!((c.qa.total / (published::power::CRAN_QA_KW * 1e3) - 1.0).abs() <= 0.15);
    let fft = cmos::cmos_power(204.8, &n14).unwrap();
    let loss = 0.91 * 0.93 * 0.94;
    let site = (fft + 64.0 * 113.4) / loss + 7400.0;
    let pool = (cmos::cmos_power(4070.4 - 204.8, &n14).unwrap() * 3.0) / loss;
    assert!((c.cmos.total - (pool + 3.0 * site)).abs() / c.cmos.total < 1e-9);
}

#[test]
fn costsavings_table() {
    use published::costsavings as t;
    let a = CostAssumptions::default();
    for (col, delta_kw) in t::DELTA_KW.iter().enumerate() {
        let r = cost_report(delta_kw * 1e3, &t::YEARS, &a).unwrap();
        for (i, row) in r.rows.iter().enumerate() {
            let cost = t::COST[col][i];
            let co2 = t::CO2_KT[col][i];
            assert!((row.opex_savings / cost - 1.0).abs() <= 0.05, "{col}/{}: {}", row.years, row.opex_savings);
            assert!((row.co2_savings_kt / co2 - 1.0).abs() <= 0.05, "{col}/{}: {}", row.years, row.co2_savings_kt);
        }
    }
}

#[test]
fn computed_power_deltas_favour_qa() {
    let n14 = CmosProfile::node_14nm(EfficiencyMode::AsPrinted);
    let qa = QaProfile::projected();
    let plant = PlantConstants::default();
    let d = |na, topo: Topology| {
        compare(&CellScenario::macro_cell(400.0, na), &n14, &qa, 20, &topo, &plant)
            .unwrap()
            .delta_w()
    };
    let bs64 = d(64, Topology::Bs);
    let bs128 = d(128, Topology::Bs);
    let cran = d(64, Topology::cran(3));
    assert!(bs64 > 0.0 && bs128 > bs64 && cran > bs64);
}
