//! End-to-end checks of the command line interface: exit codes, CSV shape
//! and byte-level determinism.

use std::path::PathBuf;
use std::process::Command;

fn sdos() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sdos"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("sdos-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn optimize_reproduces_reference_row() {
    let out = sdos()
        .args([
            "optimize",
            "--test-case",
            "A",
            "--theta",
            "1",
            "--dt",
            "0.01",
            "--h",
            "0.1",
            "--gamma",
            "0.5",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let data = text.lines().nth(2).unwrap();
    let fields: Vec<&str> = data.split(',').collect();
    let alpha_f: f64 = fields[0].parse().unwrap();
    let alpha_p: f64 = fields[1].parse().unwrap();
    assert!(
        (alpha_f - 4.73e7).abs() / 4.73e7 < 0.10,
        "alpha_f = {alpha_f}"
    );
    assert!(
        (alpha_p - 1.05e2).abs() / 1.05e2 < 5e-3,
        "alpha_p = {alpha_p}"
    );
}

#[test]
fn optimize_with_zero_mode_matches_periodic_table() {
    let out = sdos()
        .args([
            "optimize",
            "--test-case",
            "D",
            "--theta",
            "0.5",
            "--dt",
            "0.005",
            "--h",
            "0.0625",
            "--gamma",
            "1",
            "--include-zero",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let fields: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
    let alpha_p: f64 = fields[1].parse().unwrap();
    assert!(
        (alpha_p - 2.98e1).abs() / 2.98e1 < 5e-3,
        "alpha_p = {alpha_p}"
    );
}

#[test]
fn usage_errors_exit_64() {
    let out = sdos().args(["optimize"]).output().unwrap();
    assert_eq!(out.status.code(), Some(64));
    let out = sdos()
        .args(["optimize", "--dt", "0.01", "--h", "0.1", "--nonsense"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(64));
    // Config files with unknown keys are usage errors too.
    let cfg = tmp("bad_key.cfg");
    std::fs::write(&cfg, "no-such-flag = 1\n").unwrap();
    let out = sdos()
        .args([
            "optimize",
            "--config",
            cfg.to_str().unwrap(),
            "--dt",
            "0.01",
            "--h",
            "0.1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn identical_configs_are_byte_identical() {
    let a = tmp("runA.csv");
    let b = tmp("runB.csv");
    for path in [&a, &b] {
        let st = sdos()
            .args([
                "run",
                "--scenario",
                "periodic",
                "--test-case",
                "D",
                "--h",
                "0.1",
                "--dt",
                "0.01",
                "--coupling",
                "stationary",
                "--seed",
                "42",
                "--out",
                path.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(st.success());
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert_eq!(bytes_a, bytes_b);
    let text = String::from_utf8(bytes_a).unwrap();
    assert!(text.starts_with("# sdos run:"), "missing config comment");
    assert!(
        text.lines().any(|l| l.starts_with("sweep,")),
        "missing header"
    );
}

#[test]
fn summary_row_uses_reference_schema() {
    let sum = tmp("summary.csv");
    let st = sdos()
        .args([
            "run",
            "--scenario",
            "manufactured",
            "--test-case",
            "A",
            "--level",
            "1",
            "--dt",
            "0.01",
            "--t-final",
            "0.03",
            "--summary",
            sum.to_str().unwrap(),
            "--out",
            tmp("summary_steps.csv").to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(st.success());
    let text = std::fs::read_to_string(&sum).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    assert_eq!(
        lines.next().unwrap(),
        "test,h,dt,alpha_f,alpha_p,iter_t1,avg_iter_tn"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "A");
    let alpha_p: f64 = row[4].parse().unwrap();
    assert!((alpha_p - 1.05e2).abs() / 1.05e2 < 5e-3);
}

#[test]
fn config_file_drives_a_run() {
    let cfg = tmp("run.cfg");
    std::fs::write(
        &cfg,
        "scenario = periodic\ntest-case = C\nh = 0.1\ndt = 0.01\ncoupling = stationary\n",
    )
    .unwrap();
    let out = sdos()
        .args(["run", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("converged=true"));
}

#[test]
fn sweep_marks_the_theorem_row() {
    let out_path = tmp("sweep.csv");
    let st = sdos()
        .args([
            "sweep-s",
            "--test-case",
            "C",
            "--h",
            "0.125",
            "--dt",
            "0.01",
            "--points",
            "5",
            "--coupling",
            "gmres",
            "--out",
            out_path.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(st.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let star_rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#') && l.ends_with(",1,true"))
        .collect();
    assert_eq!(star_rows.len(), 1, "{text}");
    // 5 grid points + the starred row.
    let data_rows = text.lines().filter(|l| !l.starts_with('#')).count() - 1;
    assert_eq!(data_rows, 6);
}

#[test]
fn single_point_sweep_smallest_grid() {
    let out = sdos()
        .args([
            "sweep-s",
            "--test-case",
            "C",
            "--h",
            "0.125",
            "--dt",
            "0.01",
            "--points",
            "2",
        ])
        .output()
        .unwrap();
    // Fewer than 3 points is rejected as an optimizer-level failure.
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dump_mesh_writes_nodes_and_cells() {
    let path = tmp("mesh.txt");
    let st = sdos()
        .args([
            "dump-mesh",
            "--scenario",
            "manufactured",
            "--h",
            "0.1",
            "--out",
            path.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(st.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("# nodes"));
    assert!(text.contains("fluid"));
    assert!(text.contains("porous"));
}

#[test]
fn lid_run_emits_plot_data() {
    let dir = tmp("plots");
    let csv = tmp("lid.csv");
    let st = sdos()
        .args([
            "run",
            "--scenario",
            "lid",
            "--test-case",
            "D",
            "--level",
            "1",
            "--dt",
            "0.125",
            "--t-final",
            "0.25",
            "--snapshots",
            "0.25",
            "--plot-dir",
            dir.to_str().unwrap(),
            "--out",
            csv.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(st.success());
    for name in [
        "pf_t0p2500.dat",
        "pp_t0p2500.dat",
        "uf_t0p2500.dat",
        "up_t0p2500.dat",
    ] {
        let text = std::fs::read_to_string(dir.join(name)).unwrap();
        assert!(text.lines().count() > 10, "{name} too short");
    }
}
