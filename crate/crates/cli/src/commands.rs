//! The four subcommands. Each returns the text destined for stdout plus an
//! exit code; tables go to `--output` when given.

use std::fs;
use std::path::PathBuf;

use timetrap::suites::run_all;
use timetrap::trace::{evolve_trace, momentum_grid, sweep as sweep_rows, SweepRow};
use timetrap::trapdesign::{design_trap, time_crystal_schedule, verify_trap};
use timetrap::{Error, Execution, PotentialSchedule, TrapDesign};

use crate::config::{MomentumSpec, RunConfig, Source, TrapSpec};
use crate::error::{CliError, EXIT_SUB_THRESHOLD, EXIT_VERIFY_FAILED};
use crate::format::{design_summary, design_table, evolve_table, sweep_table, verify_table, Format};
use crate::plot::{probability_chart, Series};

/// `design` fails its exit status when any report deviation reaches this.
pub const DESIGN_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub config: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: u64,
    pub plot: Option<PathBuf>,
    pub exec: Execution,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub warnings: Vec<String>,
    pub exit_code: i32,
}

struct Sink {
    output: Option<PathBuf>,
    format: Format,
    plot: Option<PathBuf>,
}

impl Sink {
    fn new(opts: &Options, cfg: Option<&RunConfig>) -> Self {
        let from_cfg = cfg.map(|c| c.output.clone()).unwrap_or_default();
        Sink {
            output: opts.output.clone().or(from_cfg.path),
            format: opts.format.or(from_cfg.format).unwrap_or_default(),
            plot: opts.plot.clone().or(from_cfg.plot),
        }
    }

    /// Writes `table` to the output file, or returns it for stdout.
    fn emit(&self, table: String) -> Result<String, CliError> {
        match &self.output {
            Some(path) => {
                fs::write(path, table)?;
                Ok(String::new())
            }
            None => Ok(table),
        }
    }
}

fn load(opts: &Options) -> Result<RunConfig, CliError> {
    let path = opts.config.as_ref().ok_or_else(|| CliError::Config("--config <path> is required".into()))?;
    RunConfig::load(path)
}

fn build_design(mass: f64, trap: &TrapSpec) -> Result<TrapDesign, Error> {
    design_trap(mass, trap.kick, trap.branch, trap.n_barrier, trap.n_interior)
}

fn trap_schedule(design: &TrapDesign, trap: &TrapSpec) -> Result<PotentialSchedule, Error> {
    if trap.periods > 1 {
        time_crystal_schedule(design, trap.periods)
    } else {
        Ok(design.schedule())
    }
}

fn degenerate_warning(design: &TrapDesign) -> Vec<String> {
    if design.degenerate {
        vec![format!(
            "kick q = {} sits exactly at the threshold 2m: both momentum roots coincide at p = {}",
            design.q, design.p
        )]
    } else {
        Vec::new()
    }
}

pub fn design(opts: &Options) -> Result<Outcome, CliError> {
    let cfg = load(opts)?;
    let Source::Trap(trap) = &cfg.source else {
        return Err(CliError::Config("`design` needs a [trap] table".into()));
    };
    let design = build_design(cfg.mass, trap)?;
    let report = verify_trap(&design)?;
    let sink = Sink::new(opts, Some(&cfg));
    let mut stdout = sink.emit(design_table(&design, &report, sink.format))?;
    if sink.output.is_some() {
        stdout = design_summary(&design, &report);
    }
    let exit_code = if report.max_deviation() < DESIGN_TOL { 0 } else { EXIT_VERIFY_FAILED };
    Ok(Outcome { stdout, warnings: degenerate_warning(&design), exit_code })
}

fn single_momentum(cfg: &RunConfig, fallback: Option<f64>) -> Result<f64, CliError> {
    match cfg.momentum {
        Some(MomentumSpec::Value(p)) => Ok(p),
        Some(MomentumSpec::Grid { .. }) => Err(CliError::Config("`evolve` takes a single momentum, not a grid".into())),
        None => fallback.ok_or_else(|| CliError::Config("missing `momentum`".into())),
    }
}

pub fn evolve(opts: &Options) -> Result<Outcome, CliError> {
    let cfg = load(opts)?;
    let mut warnings = Vec::new();
    let (schedule, p) = match &cfg.source {
        Source::Trap(trap) => {
            let design = build_design(cfg.mass, trap)?;
            warnings = degenerate_warning(&design);
            (trap_schedule(&design, trap)?, single_momentum(&cfg, Some(design.p))?)
        }
        Source::Schedule(s) => (s.clone(), single_momentum(&cfg, None)?),
    };
    let rows = evolve_trace(&schedule, cfg.mass, p, cfg.spin, &cfg.initial, cfg.amplitudes)?;
    let sink = Sink::new(opts, Some(&cfg));
    if let Some(path) = &sink.plot {
        let pick = |f: fn(&timetrap::Probabilities) -> f64| rows.iter().map(|r| (r.time, f(&r.probabilities))).collect();
        let series = [
            Series { label: "P_vac", color: "#1f77b4", points: pick(|p| p.vacuum) },
            Series { label: "P_electron", color: "#2ca02c", points: pick(|p| p.electron) },
            Series { label: "P_positron", color: "#9467bd", points: pick(|p| p.positron) },
            Series { label: "P_pair", color: "#d62728", points: pick(|p| p.pair) },
        ];
        fs::write(path, probability_chart(&format!("Fock probabilities, p = {}", crate::format::fmt_num(p)), "time", &series, true))?;
    }
    let stdout = sink.emit(evolve_table(&rows, sink.format))?;
    Ok(Outcome { stdout, warnings, exit_code: 0 })
}

fn momenta(cfg: &RunConfig, fallback: Option<f64>) -> Result<Vec<f64>, CliError> {
    match cfg.momentum {
        Some(MomentumSpec::Value(p)) => Ok(vec![p]),
        Some(MomentumSpec::Grid { min, max, count }) => Ok(momentum_grid(min, max, count)?),
        None => fallback.map(|p| vec![p]).ok_or_else(|| CliError::Config("missing `momentum`".into())),
    }
}

pub fn sweep(opts: &Options) -> Result<Outcome, CliError> {
    let cfg = load(opts)?;
    let sink = Sink::new(opts, Some(&cfg));
    let mut warnings = Vec::new();
    let mut exit_code = 0;
    let rows = match &cfg.source {
        Source::Trap(trap) => match build_design(cfg.mass, trap) {
            Ok(design) => {
                warnings = degenerate_warning(&design);
                let grid = momenta(&cfg, Some(design.p))?;
                sweep_rows(&trap_schedule(&design, trap)?, cfg.mass, cfg.spin, &grid, opts.exec)?
            }
            Err(e @ Error::SubThreshold { .. }) => {
                let grid = momenta(&cfg, None).map_err(|_| CliError::from(e.clone()))?;
                warnings.push(CliError::from(e).to_string());
                exit_code = EXIT_SUB_THRESHOLD;
                grid.into_iter().map(SweepRow::sub_threshold).collect()
            }
            Err(e) => return Err(e.into()),
        },
        Source::Schedule(s) => sweep_rows(s, cfg.mass, cfg.spin, &momenta(&cfg, None)?, opts.exec)?,
    };
    if let Some(path) = &sink.plot {
        let series = [
            Series { label: "P_vac final", color: "#1f77b4", points: rows.iter().map(|r| (r.p, r.final_vacuum)).collect() },
            Series { label: "P_pair inside", color: "#d62728", points: rows.iter().map(|r| (r.p, r.interior_pair)).collect() },
        ];
        fs::write(path, probability_chart("Momentum sweep", "p", &series, false))?;
    }
    let stdout = sink.emit(sweep_table(&rows, sink.format))?;
    Ok(Outcome { stdout, warnings, exit_code })
}

pub fn verify(opts: &Options) -> Result<Outcome, CliError> {
    let cfg = match &opts.config {
        Some(path) => Some(RunConfig::load(path)?),
        None => None,
    };
    let results = run_all(opts.seed, opts.exec);
    let mut stdout = format!("seed {}\n", opts.seed);
    for r in &results {
        stdout.push_str(&format!("{r}\n"));
    }
    let passed = results.iter().filter(|r| r.passed).count();
    stdout.push_str(&format!("{passed}/{} suites passed\n", results.len()));
    let sink = Sink::new(opts, cfg.as_ref());
    if sink.output.is_some() {
        sink.emit(verify_table(&results, sink.format))?;
    }
    let exit_code = if passed == results.len() { 0 } else { EXIT_VERIFY_FAILED };
    Ok(Outcome { stdout, warnings: Vec::new(), exit_code })
}
