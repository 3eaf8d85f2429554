use std::process::Command;

use qaran_cli::table::{Format, Table};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_qaran"));
    c.env_remove("QARAN_CONFIG");
    c
}

fn run(args: &[&str]) -> (i32, String, String) {
    let o = bin().args(args).output().unwrap();
    (
        o.status.code().unwrap(),
        String::from_utf8(o.stdout).unwrap(),
        String::from_utf8(o.stderr).unwrap(),
    )
}

fn write_config(dir: &tempfile::TempDir, body: &str) -> String {
    let path = dir.path().join("run.toml");
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

#[test]
fn targets_paper_table_layout() {
    let (code, out, _) = run(&["targets", "--paper-table", "targets"]);
    assert_eq!(code, 0);
    let t = Table::read(Format::Csv, &out).unwrap();
    assert_eq!(t.columns.len(), 12);
    assert_eq!(t.rows.len(), 9);
    assert_eq!(t.rows[0][1].as_str(), "0.160");
    assert_eq!(t.rows[4][9].as_str(), "2457.6");
    let note = t.rows[8][11].as_str();
    assert!(note.starts_with("paper-inconsistent"), "{note}");
}

#[test]
fn single_scenario_has_task_rows_and_total() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        &dir,
        "schema_version = 1\n[[scenario]]\nname = \"small\"\nbandwidth_mhz = 20\nantennas = 2\n",
    );
    let (code, out, _) = run(&["--config", &cfg, "targets"]);
    assert_eq!(code, 0);
    let t = Table::read(Format::Csv, &out).unwrap();
    assert_eq!(t.columns, ["task", "small"]);
    let names: Vec<&str> = t.rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(names, ["DPD", "Filter", "FFT", "FDlin", "FDnl", "FEC", "CPRI", "PCP", "Total"]);
}

#[test]
fn json_and_csv_carry_the_same_numbers() {
    for cmd in ["targets", "power", "qubits", "economics", "timeline"] {
        let (_, csv, _) = run(&["--format", "csv", cmd]);
        let (_, json, _) = run(&["--format", "json", cmd]);
        let a = Table::read(Format::Csv, &csv).unwrap();
        let b = Table::read(Format::Json, &json).unwrap();
        assert_eq!(a.columns, b.columns, "{cmd}");
        assert_eq!(a.rows.len(), b.rows.len());
        for (ra, rb) in a.rows.iter().zip(&b.rows) {
            for (ca, cb) in ra.iter().zip(rb) {
                match (ca.as_f64(), cb.as_f64()) {
                    (Some(x), Some(y)) => assert_eq!(x, y, "{cmd}"),
                    // csv is untyped: a numeric-looking label reads back as a number
                    _ => assert_eq!(ca.as_str(), cb.as_str(), "{cmd}"),
                }
            }
        }
    }
}

#[test]
fn emission_is_byte_identical_across_runs() {
    let args = ["--sweep", "bandwidth=20:400:20", "--sweep", "antennas=8,64,128", "economics"];
    let first = run(&args);
    for _ in 0..3 {
        assert_eq!(run(&args), first);
    }
}

#[test]
fn emitted_tables_reparse_to_the_same_bytes() {
    for format in ["csv", "json", "table"] {
        let (_, out, _) = run(&["--format", format, "power"]);
        let f: Format = format.parse().unwrap();
        assert_eq!(Table::read(f, &out).unwrap().render(f), out, "{format}");
    }
}

#[test]
fn config_errors_exit_1_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "schema_version = 1\n[[scenario]]\nname = \"x\"\nbandwidth = 20\nantennas = 2\n");
    let (code, out, err) = run(&["--config", &cfg, "targets"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("line 4"), "{err}");
    assert!(err.contains("bandwidth"), "{err}");

    let (code, _, err) = run(&["--config", "/nonexistent/run.toml", "targets"]);
    assert_eq!(code, 1);
    assert!(err.contains("cannot read"));

    let (code, _, err) = run(&["--paper-table", "energy", "targets"]);
    assert_eq!(code, 1);
    assert!(err.contains("allowed: targets"));
}

#[test]
fn domain_errors_exit_2() {
    let (code, out, err) = run(&["--sweep", "antennas=0", "qubits"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("no valid grid points"));
}

#[test]
fn warnings_exit_3_as_json_lines() {
    let (code, out, err) = run(&["--sweep", "bw=-5,100", "qubits"]);
    assert_eq!(code, 3);
    assert_eq!(out.lines().count(), 2);
    let w: serde_json::Value = serde_json::from_str(err.lines().next().unwrap()).unwrap();
    assert_eq!(w["kind"], "out-of-range");
    assert_eq!(w["level"], "warning");

    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        &dir,
        "schema_version = 1\nsamples = 100\n[topology]\nkind = \"cran\"\nbase_stations = 3\n",
    );
    let (code, out, err) = run(&["--config", &cfg, "qubits"]);
    assert_eq!(code, 3);
    assert!(out.contains("true"));
    assert!(err.contains("capacity-exceeded"));
}

#[test]
fn config_path_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "schema_version = 1\n[output]\nformat = \"json\"\n");
    let o = bin().env("QARAN_CONFIG", &cfg).arg("targets").output().unwrap();
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().trim_start().starts_with('{'));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let (code, out, _) = run(&["--out", path.to_str().unwrap(), "timeline"]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("kind,label,"));
}

#[test]
fn economics_cran_rows_per_horizon() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        &dir,
        "schema_version = 1\n[[cmos]]\nbuiltin = \"14nm\"\n[topology]\nkind = \"cran\"\nbase_stations = 3\n",
    );
    let (code, out, _) = run(&["--config", &cfg, "economics"]);
    assert_eq!(code, 0);
    let t = Table::read(Format::Csv, &out).unwrap();
    let years = t.column("years").unwrap();
    let got: Vec<&str> = t.rows.iter().map(|r| r[years].as_str()).collect();
    assert_eq!(got, ["1", "2", "5", "10"]);
    let topo = t.column("topology").unwrap();
    assert!(t.rows.iter().all(|r| r[topo].as_str() == "cran-3"));
}

#[test]
fn timeline_lists_history_and_milestones() {
    let (_, out, _) = run(&["timeline"]);
    let t = Table::read(Format::Csv, &out).unwrap();
    let kinds: Vec<&str> = t.rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(kinds.iter().filter(|k| **k == "history").count(), 6);
    assert_eq!(kinds.iter().filter(|k| **k == "milestone").count(), 6);
}

#[test]
fn example_config_loads() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/example.toml");
    for cmd in ["targets", "power", "qubits", "economics", "timeline"] {
        let (code, out, err) = run(&["--config", path, cmd]);
        assert_eq!(code, 0, "{cmd}: {err}");
        assert!(!out.is_empty());
    }
    let (_, out, _) = run(&["--config", path, "power"]);
    assert!(out.contains(",3nm,"));
}
