//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use timetrap::fockspace::{lift, probabilities, FockOperator, ELECTRON, POSITRON};
use timetrap::su2param::decompose;
use timetrap::suites::{run_all, SuiteResult};
use timetrap::trapdesign::{barrier_matrix, design_trap, momentum_roots, trap_matrix};
use timetrap::{BogoliubovMatrix, Branch, Error, Execution, FockVector, C64};

const SEED: u64 = 0;

struct Line {
    id: u32,
    name: &'static str,
    passed: bool,
    detail: String,
}

fn from_suites(id: u32, name: &'static str, suites: &[SuiteResult], names: &[&str]) -> Line {
    let picked: Vec<&SuiteResult> = suites.iter().filter(|s| names.contains(&s.name)).collect();
    assert_eq!(picked.len(), names.len(), "unknown suite in {names:?}");
    Line {
        id,
        name,
        passed: picked.iter().all(|s| s.passed),
        detail: picked.iter().map(|s| format!("[{s}]")).collect::<Vec<_>>().join(" "),
    }
}

/// Largest amplitude `op` moves out of basis state `k`, ignoring phase.
fn leak(op: &FockOperator, k: usize) -> f64 {
    let out = op.apply(&FockVector::basis(k));
    (1.0 - out.amplitude(k).norm()).abs().max((1.0 - out.norm_sqr()).abs())
}

fn worked_trap() -> Result<f64, Error> {
    let d = design_trap(1.0, 3.0, Branch::Plus, 0, 0)?;
    let barrier = barrier_matrix(&d)?;
    let i = C64::new(0.0, 1.0);
    let zero = C64::new(0.0, 0.0);
    let expected = BogoliubovMatrix::new(zero, i, i, zero);
    let params = decompose(&barrier)?;
    let xi_norm = params.xi_norm();
    let trap = trap_matrix(&d)?;
    let barrier_hat = lift(&barrier)?;
    let trap_hat = lift(&trap)?;
    let inside = probabilities(&barrier_hat.apply(&FockVector::vacuum()))?;
    let after = probabilities(&trap_hat.apply(&FockVector::vacuum()))?;
    let devs = [
        barrier.max_abs_diff(&expected),
        (xi_norm - std::f64::consts::FRAC_PI_2).abs(),
        (params.xi[0] / xi_norm + 1.0).abs(),
        params.xi0.abs(),
        params.xi[1].abs(),
        params.xi[2].abs(),
        trap.distance_from_identity(),
        (inside.pair - 1.0).abs(),
        (after.vacuum - 1.0).abs(),
        leak(&barrier_hat, ELECTRON),
        leak(&barrier_hat, POSITRON),
        leak(&trap_hat, ELECTRON),
        leak(&trap_hat, POSITRON),
    ];
    Ok(devs.into_iter().fold(0.0, |m, d| if d.is_nan() || d > m { d } else { m }))
}

fn criterion_7() -> Line {
    let start = Instant::now();
    let dev = worked_trap();
    let elapsed = start.elapsed();
    let (passed, detail) = match dev {
        Ok(d) => (
            d < 1e-10 && elapsed < Duration::from_secs(1),
            format!("max_deviation={d:.3e} (required < 1e-10) runtime={:.3}ms (required < 1s)", elapsed.as_secs_f64() * 1e3),
        ),
        Err(e) => (false, e.to_string()),
    };
    Line { id: 7, name: "trap end-to-end", passed, detail }
}

fn criterion_8() -> Line {
    let below = matches!(design_trap(1.0, 1.5, Branch::Plus, 0, 0), Err(Error::SubThreshold { .. }))
        && matches!(design_trap(1.0, -1.999, Branch::Plus, 0, 0), Err(Error::SubThreshold { .. }));
    let (degenerate, detail) = match momentum_roots(1.0, 2.0) {
        Ok(r) => (
            r.degenerate && (r.near + 1.0).abs() < 1e-12 && (r.far + 1.0).abs() < 1e-12,
            format!("q=2m roots=({}, {}) degenerate={}", r.near, r.far, r.degenerate),
        ),
        Err(e) => (false, e.to_string()),
    };
    Line {
        id: 8,
        name: "threshold",
        passed: below && degenerate,
        detail: format!("q<2m rejected={below} {detail}"),
    }
}

fn run_cli(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_timetrap")).args(args).output().expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn criterion_11() -> Line {
    let dir = tempfile::tempdir().expect("temp dir");
    let config = dir.path().join("sweep.toml");
    std::fs::write(
        &config,
        "mass = 1.0\nmomentum = { min = -0.6, max = -0.2, count = 401 }\n[trap]\nkick = 3.0\nn_barrier = 1\n",
    )
    .expect("write config");
    let config = config.to_str().expect("utf-8 path");
    let mut files = Vec::new();
    let mut stdouts = Vec::new();
    for run in 0..2 {
        let (verify, code_v) = run_cli(&["verify", "--seed", "7"]);
        let out = dir.path().join(format!("sweep{run}.csv"));
        let (_, code_s) = run_cli(&["sweep", "--config", config, "--output", out.to_str().unwrap()]);
        let (json, code_j) = run_cli(&["sweep", "--config", config, "--format", "json"]);
        stdouts.push((verify, json, [code_v, code_s, code_j]));
        files.push(std::fs::read(out).unwrap_or_default());
    }
    let codes_ok = stdouts.iter().all(|(_, _, c)| c.iter().all(|&c| c == 0));
    let same = stdouts[0] == stdouts[1] && files[0] == files[1] && !files[0].is_empty();
    Line {
        id: 11,
        name: "determinism",
        passed: codes_ok && same,
        detail: format!(
            "verify {} bytes, sweep csv {} bytes, sweep json {} bytes, identical={same}, exit codes ok={codes_ok}",
            stdouts[0].0.len(),
            files[0].len(),
            stdouts[0].1.len()
        ),
    }
}

fn main() -> ExitCode {
    let suites = run_all(SEED, Execution::default());
    let lines = [
        from_suites(1, "bispinor orthonormality", &suites, &["bispinor_orthonormality"]),
        from_suites(2, "dirac residual", &suites, &["dirac_residual"]),
        from_suites(3, "interface closed form", &suites, &["interface_oracle", "interface_zero_kick"]),
        from_suites(4, "unitarity", &suites, &["unitarity"]),
        from_suites(5, "fock operator closed form", &suites, &["fock_closed_form"]),
        from_suites(6, "bogoliubov lift", &suites, &["bogoliubov_lift"]),
        criterion_7(),
        criterion_8(),
        from_suites(9, "time crystal", &suites, &["time_crystal"]),
        from_suites(10, "negative controls", &suites, &["detuning_controls"]),
        criterion_11(),
    ];
    for l in &lines {
        println!("{} criterion {:>2} {:<26} {}", if l.passed { "PASS" } else { "FAIL" }, l.id, l.name, l.detail);
    }
    let failed = lines.iter().filter(|l| !l.passed).count();
    println!("{}/{} criteria passed", lines.len() - failed, lines.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
