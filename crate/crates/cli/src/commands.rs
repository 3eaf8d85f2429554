//! Per-subcommand tables over the scenario grid.

use rayon::prelude::*;

use qaran_core::economics::{compare, cost_report, Comparison, Topology};
use qaran_core::qubit_budget::total_budget;
use qaran_core::qa_hardware::{qmi_runtime, refrigerator_qubit_capacity};
use qaran_core::ran_power::PowerBreakdown;
use qaran_core::timeline::{milestones, MilestoneInputs, MilestoneScenario};
use qaran_core::workload::{workload, BbuTask};

use crate::config::RunConfig;
use crate::report::{Outcome, Warning};
use crate::sweep::{grid, GridPoint};
use crate::table::{Cell, Table};
use crate::CliError;

fn model_err(subject: &str) -> impl FnOnce(qaran_core::ModelError) -> CliError + '_ {
    move |source| CliError::Model {
        subject: subject.to_string(),
        source,
    }
}

fn points(cfg: &RunConfig, with_samples: bool) -> Result<(Vec<GridPoint>, Vec<Warning>), CliError> {
    let (points, warnings) = grid(cfg, with_samples);
    if points.is_empty() {
        return Err(CliError::NoValidPoints(warnings.len()));
    }
    Ok((points, warnings))
}

fn topology_label(t: &Topology) -> String {
    match t {
        Topology::Bs => "bs".into(),
        Topology::Cran { base_stations, .. } => format!("cran-{base_stations}"),
    }
}

fn capacity_warning(p: &GridPoint, c: &Comparison, topology: &Topology) -> Option<Warning> {
    c.capacity_exceeded.then(|| {
        Warning::new(
            "capacity-exceeded",
            &p.name,
            format!(
                "{} qubits needed ({}) exceed one refrigerator's {}",
                c.required_qubits,
                topology_label(topology),
                c.refrigerator_capacity
            ),
        )
    })
}

pub fn targets(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (points, warnings) = points(cfg, false)?;
    let loads = points
        .par_iter()
        .map(|p| workload(&p.scenario).map_err(model_err(&p.name)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut columns = vec!["task".to_string()];
    columns.extend(points.iter().map(|p| p.name.clone()));
    let mut table = Table {
        title: "BBU workload, TOPS".into(),
        columns,
        rows: Vec::new(),
    };
    for task in BbuTask::ALL {
        let mut row = vec![Cell::text(task.name())];
        row.extend(loads.iter().map(|w| Cell::float(w.tops(task))));
        table.push(row);
    }
    let mut total = vec![Cell::text("Total")];
    total.extend(loads.iter().map(|w| Cell::float(w.total_tops)));
    table.push(total);
    Ok(Outcome { table, warnings })
}

const POWER_TAIL: [&str; 7] = [
    "leakage_w",
    "refrigeration_w",
    "ru_w",
    "pa_w",
    "power_system_w",
    "fronthaul_w",
    "total_w",
];

fn breakdown_cells(b: &PowerBreakdown) -> Vec<Cell> {
    let mut cells: Vec<Cell> = BbuTask::ALL.iter().map(|t| Cell::float(b.bbu.per_task[*t])).collect();
    cells.extend(
        [
            b.bbu.leakage,
            b.bbu.refrigeration,
            b.ru,
            b.pa,
            b.power_system_overhead,
            b.fronthaul,
            b.total,
        ]
        .map(Cell::float),
    );
    cells
}

/// (point, node) comparisons in grid order, nodes innermost.
fn comparisons(cfg: &RunConfig, points: &[GridPoint]) -> Result<Vec<Vec<Comparison>>, CliError> {
    points
        .par_iter()
        .map(|p| {
            cfg.cmos
                .iter()
                .map(|node| {
                    compare(&p.scenario, node, &cfg.qa, p.samples, &cfg.topology, &cfg.plant)
                        .map_err(model_err(&p.name))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect()
}

pub fn power(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (points, mut warnings) = points(cfg, false)?;
    let results = comparisons(cfg, &points)?;
    let mut columns: Vec<String> = ["scenario", "bandwidth_mhz", "antennas", "node", "topology", "side"]
        .map(String::from)
        .to_vec();
    columns.extend(BbuTask::ALL.iter().map(|t| format!("{}_w", t.name())));
    columns.extend(POWER_TAIL.map(String::from));
    let mut table = Table {
        title: "Power breakdown, W".into(),
        columns,
        rows: Vec::new(),
    };
    let topo = topology_label(&cfg.topology);
    for (p, per_node) in points.iter().zip(&results) {
        for (node, c) in cfg.cmos.iter().zip(per_node) {
            for (side, b) in [("cmos", &c.cmos), ("qa", &c.qa)] {
                let mut row = vec![
                    Cell::text(&p.name),
                    Cell::float(p.scenario.bandwidth_mhz),
                    Cell::int(p.scenario.antennas),
                    Cell::text(&node.node_label),
                    Cell::text(&topo),
                    Cell::text(side),
                ];
                row.extend(breakdown_cells(b));
                table.push(row);
            }
        }
        warnings.extend(per_node.first().and_then(|c| capacity_warning(p, c, &cfg.topology)));
    }
    Ok(Outcome { table, warnings })
}

pub fn qubits(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (points, mut warnings) = points(cfg, true)?;
    let capacity = refrigerator_qubit_capacity(&cfg.plant.geometry)
        .map_err(model_err("plant.geometry"))?
        .qubits;
    let budgets = points
        .par_iter()
        .map(|p| total_budget(&p.scenario, &cfg.qa, p.samples, &cfg.plant.budget).map_err(model_err(&p.name)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(
        "Qubit budget",
        &[
            "scenario",
            "bandwidth_mhz",
            "antennas",
            "samples",
            "runtime_us",
            "fdnl_qubits",
            "fec_qubits",
            "covered_fraction",
            "total_qubits",
            "topology",
            "required_qubits",
            "refrigerator_capacity",
            "capacity_exceeded",
        ],
    );
    let n_bs = cfg.topology.base_stations() as u64;
    for (p, b) in points.iter().zip(&budgets) {
        let required = b.total * n_bs;
        let exceeded = required > capacity;
        table.push(vec![
            Cell::text(&p.name),
            Cell::float(p.scenario.bandwidth_mhz),
            Cell::int(p.scenario.antennas),
            Cell::int(p.samples),
            Cell::float(qmi_runtime(&cfg.qa, p.samples)),
            Cell::int(b.per_task[BbuTask::FdNl]),
            Cell::int(b.per_task[BbuTask::Fec]),
            Cell::float(b.covered_fraction),
            Cell::int(b.total),
            Cell::text(topology_label(&cfg.topology)),
            Cell::int(required),
            Cell::int(capacity),
            Cell::bool(exceeded),
        ]);
        if exceeded {
            warnings.push(Warning::new(
                "capacity-exceeded",
                &p.name,
                format!("{required} qubits needed exceed one refrigerator's {capacity}"),
            ));
        }
    }
    Ok(Outcome { table, warnings })
}

pub fn economics(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (points, mut warnings) = points(cfg, false)?;
    let results = comparisons(cfg, &points)?;
    let mut table = Table::new(
        "Operating savings of QA over CMOS",
        &[
            "scenario",
            "bandwidth_mhz",
            "antennas",
            "node",
            "topology",
            "cmos_w",
            "qa_w",
            "delta_w",
            "qa_advantage",
            "years",
            "opex_savings_usd",
            "co2_savings_kt",
            "breakeven_capex_usd",
        ],
    );
    let topo = topology_label(&cfg.topology);
    for (p, per_node) in points.iter().zip(&results) {
        for (node, c) in cfg.cmos.iter().zip(per_node) {
            let report = cost_report(c.delta_w(), &cfg.horizons_years, &cfg.costs).map_err(model_err(&p.name))?;
            for r in &report.rows {
                table.push(vec![
                    Cell::text(&p.name),
                    Cell::float(p.scenario.bandwidth_mhz),
                    Cell::int(p.scenario.antennas),
                    Cell::text(&node.node_label),
                    Cell::text(&topo),
                    Cell::float(c.cmos.total),
                    Cell::float(c.qa.total),
                    Cell::float(c.delta_w()),
                    Cell::bool(c.qa_advantage()),
                    Cell::int(r.years),
                    Cell::float(r.opex_savings),
                    Cell::float(r.co2_savings_kt),
                    Cell::float(r.breakeven_capex),
                ]);
            }
        }
        warnings.extend(per_node.first().and_then(|c| capacity_warning(p, c, &cfg.topology)));
    }
    Ok(Outcome { table, warnings })
}

/// Configured milestones, or the scenario grid when sweep axes are set.
fn milestone_grid(cfg: &RunConfig) -> Result<(Vec<MilestoneScenario>, Vec<Warning>), CliError> {
    let sw = &cfg.sweep;
    if sw.bandwidth_mhz.is_empty() && sw.antennas.is_empty() {
        return Ok((cfg.milestones.clone(), Vec::new()));
    }
    let (points, warnings) = points(cfg, false)?;
    Ok((
        points
            .into_iter()
            .map(|p| MilestoneScenario::new(p.name, p.scenario))
            .collect(),
        warnings,
    ))
}

pub fn timeline(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (grid, warnings) = milestone_grid(cfg)?;
    let inputs = MilestoneInputs {
        nodes: &cfg.cmos,
        qa: &cfg.qa,
        samples: cfg.samples,
        budget: &cfg.plant.budget,
        search: &cfg.crossover,
        roadmap: &cfg.roadmap,
    };
    let projections = grid
        .par_iter()
        .map(|m| milestones(std::slice::from_ref(m), &inputs).map_err(model_err(&m.label)))
        .collect::<Result<Vec<_>, _>>()?;

    let mut columns: Vec<String> = [
        "kind",
        "label",
        "bandwidth_mhz",
        "antennas",
        "qubits",
        "year_best",
        "year_worst",
    ]
    .map(String::from)
    .to_vec();
    for node in &cfg.cmos {
        columns.push(format!("crossover_mhz_{}", node.node_label));
        columns.push(format!("qa_advantage_{}", node.node_label));
    }
    let mut table = Table {
        title: "Qubit availability timeline".into(),
        columns,
        rows: Vec::new(),
    };
    let blanks = 2 * cfg.cmos.len();
    for (year, q) in &cfg.roadmap.history {
        let mut row = vec![
            Cell::text("history"),
            Cell::text(year.to_string()),
            Cell::Empty,
            Cell::Empty,
            Cell::int(*q),
            Cell::int(*year),
            Cell::int(*year),
        ];
        row.extend(std::iter::repeat_n(Cell::Empty, blanks));
        table.push(row);
    }
    for p in projections.iter().flatten() {
        let mut row = vec![
            Cell::text("milestone"),
            Cell::text(&p.milestone_label),
            Cell::float(p.scenario.bandwidth_mhz),
            Cell::int(p.scenario.antennas),
            Cell::int(p.required_qubits),
            Cell::int(p.year_best),
            Cell::int(p.year_worst),
        ];
        for n in &p.nodes {
            row.push(Cell::opt_float(n.crossover_mhz));
            row.push(Cell::bool(n.power_advantage));
        }
        table.push(row);
    }
    Ok(Outcome { table, warnings })
}
