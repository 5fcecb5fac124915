use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_timetrap")).args(args).output().expect("binary runs")
}

fn config(dir: &TempDir, body: &str) -> String {
    let path = dir.path().join("run.toml");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const TRAP: &str = "mass = 1.0\n[trap]\nkick = 3.0\n";

#[test]
fn design_worked_trap() {
    let dir = TempDir::new().unwrap();
    let out = run(&["design", "--config", &config(&dir, TRAP)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("p,-0.38196601125\n"), "{text}");
    assert!(text.contains("dt_barrier,0.560494827935\n"), "{text}");
    assert!(text.contains("dt_interior,2.9347890201\n"), "{text}");
}

#[test]
fn design_json_to_file_prints_summary() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("design.json");
    let out = run(&["design", "--config", &config(&dir, TRAP), "--format", "json", "--output", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout(&out).is_empty());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&file).unwrap()).unwrap();
    assert_eq!(v["design"]["branch"], "+");
    assert!(v["report"]["trap_identity_deviation"].as_f64().unwrap() < 1e-10);
}

#[test]
fn sub_threshold_design_exits_3() {
    let dir = TempDir::new().unwrap();
    let out = run(&["design", "--config", &config(&dir, "mass = 1.0\n[trap]\nkick = 1.0\n")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("threshold"));
}

#[test]
fn threshold_kick_warns_degenerate() {
    let dir = TempDir::new().unwrap();
    let out = run(&["design", "--config", &config(&dir, "mass = 1.0\n[trap]\nkick = 2.0\n")]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    assert!(stdout(&out).contains("p,-1\n"));
}

#[test]
fn config_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run(&["design"]).status.code(), Some(2));
    assert_eq!(run(&["design", "--config", &config(&dir, "mass = -1.0\n[trap]\nkick = 3.0\n")]).status.code(), Some(2));
    assert_eq!(run(&["design", "--config", &config(&dir, "mass = 1.0\n")]).status.code(), Some(2));
    let grid = "mass = 1.0\nmomentum = { min = 0.0, max = 1.0, count = 3 }\n[trap]\nkick = 3.0\n";
    assert_eq!(run(&["evolve", "--config", &config(&dir, grid)]).status.code(), Some(2));
    assert_eq!(run(&["design", "--config", &config(&dir, "mass = [")]).status.code(), Some(2));
}

#[test]
fn evolve_rows_and_plot() {
    let dir = TempDir::new().unwrap();
    let plot = dir.path().join("trace.svg");
    let out = run(&["evolve", "--config", &config(&dir, TRAP), "--plot", plot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "time,slice_index,kick_q,p_vac,p_electron,p_positron,p_pair,f_abs,g_abs");
    assert_eq!(lines.len(), 6);
    let pair: f64 = lines[3].split(',').nth(6).unwrap().parse().unwrap();
    let vac: f64 = lines[5].split(',').nth(3).unwrap().parse().unwrap();
    assert!((pair - 1.0).abs() < 1e-10 && (vac - 1.0).abs() < 1e-10);
    assert!(std::fs::read_to_string(&plot).unwrap().starts_with("<svg"));
}

#[test]
fn crystal_evolve_has_every_period() {
    let dir = TempDir::new().unwrap();
    let out = run(&["evolve", "--config", &config(&dir, "mass = 1.0\n[trap]\nkick = 3.0\nperiods = 3\n")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1 + 1 + 4 * 3);
}

#[test]
fn sub_threshold_sweep_writes_flagged_rows() {
    let dir = TempDir::new().unwrap();
    let body = "mass = 1.0\nmomentum = { min = -1.0, max = 1.0, count = 3 }\n[trap]\nkick = 1.5\n";
    let out = run(&["sweep", "--config", &config(&dir, body)]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().skip(1).all(|l| l.contains("sub_threshold")), "{text}");
}

#[test]
fn sequential_flag_matches_parallel() {
    let dir = TempDir::new().unwrap();
    let body = "mass = 1.0\nmomentum = { min = -0.5, max = -0.3, count = 64 }\n[trap]\nkick = 3.0\n";
    let cfg = config(&dir, body);
    assert_eq!(run(&["sweep", "--config", &cfg]).stdout, run(&["sweep", "--config", &cfg, "--sequential"]).stdout);
}

#[test]
fn verify_lists_every_suite() {
    let out = run(&["verify", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 11);
    assert!(!text.contains("FAIL"));
}

#[test]
fn shipped_configs_parse() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    for name in ["trap.toml", "crystal.toml", "sweep.toml", "schedule.toml"] {
        let cfg = timetrap_cli::config::RunConfig::load(&root.join(name));
        assert!(cfg.is_ok(), "{name}: {:?}", cfg.err());
    }
}
