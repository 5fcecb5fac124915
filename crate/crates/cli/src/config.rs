//! TOML run configuration.
//!
//! ```toml
//! mass = 1.0
//! spin = "+"                  # optional, "+" or "-"
//! initial_state = "vacuum"    # vacuum | electron | positron | pair
//! # initial_state = { amplitudes = [[0.6, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.8]] }
//! amplitudes = { f = [1.0, 0.0], g_star = [0.0, 0.0] }   # optional c-number start
//! momentum = -0.38            # or momentum = { min = -0.5, max = -0.3, count = 101 }
//!
//! [trap]                      # either this table ...
//! kick = 3.0
//! branch = "+"
//! n_barrier = 0
//! n_interior = 0
//! periods = 1
//!
//! # [[schedule]]              # ... or an explicit slice list
//! # kick = 0.0
//! # [[schedule]]
//! # duration = 0.56
//! # kick = 3.0
//!
//! [output]                    # optional; command-line flags take precedence
//! path = "trace.csv"
//! format = "csv"
//! plot = "trace.svg"
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;
use timetrap::fockspace::NORMALIZATION_TOL;
use timetrap::{AmplitudePair, Branch, FockVector, PotentialSchedule, Slice, Spin, C64};

use crate::error::CliError;
use crate::format::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum NamedState {
    #[default]
    Vacuum,
    Electron,
    Positron,
    Pair,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum InitialState {
    Named(NamedState),
    Explicit { amplitudes: [[f64; 2]; 4] },
}

impl Default for InitialState {
    fn default() -> Self {
        InitialState::Named(NamedState::Vacuum)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmplitudeSpec {
    pub f: [f64; 2],
    pub g_star: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum MomentumSpec {
    Value(f64),
    Grid { min: f64, max: f64, count: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrapSpec {
    pub kick: f64,
    #[serde(default = "plus")]
    pub branch: Branch,
    #[serde(default)]
    pub n_barrier: u32,
    #[serde(default)]
    pub n_interior: u32,
    #[serde(default = "one")]
    pub periods: u32,
}

fn plus() -> Branch {
    Branch::Plus
}

fn one() -> u32 {
    1
}

fn up() -> Spin {
    Spin::Up
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    mass: f64,
    #[serde(default = "up")]
    spin: Spin,
    #[serde(default)]
    initial_state: InitialState,
    amplitudes: Option<AmplitudeSpec>,
    momentum: Option<MomentumSpec>,
    trap: Option<TrapSpec>,
    schedule: Option<Vec<Slice>>,
    #[serde(default)]
    output: OutputSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Trap(TrapSpec),
    Schedule(PotentialSchedule),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mass: f64,
    pub spin: Spin,
    pub source: Source,
    pub momentum: Option<MomentumSpec>,
    pub initial: FockVector,
    pub amplitudes: AmplitudePair,
    pub output: OutputSpec,
}

fn complex(pair: [f64; 2]) -> C64 {
    C64::new(pair[0], pair[1])
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        Self::validate(raw)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    fn validate(raw: RawConfig) -> Result<Self, CliError> {
        let bad = |msg: String| CliError::Config(msg);
        if !(raw.mass.is_finite() && raw.mass > 0.0) {
            return Err(bad(format!("mass must be finite and > 0, got {}", raw.mass)));
        }
        let source = match (raw.trap, raw.schedule) {
            (Some(t), None) => {
                if !t.kick.is_finite() {
                    return Err(bad("trap.kick must be finite".into()));
                }
                if t.periods == 0 {
                    return Err(bad("trap.periods must be >= 1".into()));
                }
                Source::Trap(t)
            }
            (None, Some(slices)) => Source::Schedule(PotentialSchedule::new(slices).map_err(|e| bad(e.to_string()))?),
            (Some(_), Some(_)) => return Err(bad("give either [trap] or [[schedule]], not both".into())),
            (None, None) => return Err(bad("missing [trap] or [[schedule]]".into())),
        };
        match raw.momentum {
            Some(MomentumSpec::Value(p)) if !p.is_finite() => return Err(bad("momentum must be finite".into())),
            Some(MomentumSpec::Grid { min, max, count }) => {
                if count == 0 {
                    return Err(bad("momentum grid count must be >= 1".into()));
                }
                if !(min.is_finite() && max.is_finite() && min <= max) {
                    return Err(bad(format!("momentum grid needs finite min <= max, got {min}..{max}")));
                }
            }
            _ => {}
        }
        if matches!(source, Source::Schedule(_)) && raw.momentum.is_none() {
            return Err(bad("an explicit schedule needs `momentum`".into()));
        }
        let initial = match raw.initial_state {
            InitialState::Named(NamedState::Vacuum) => FockVector::vacuum(),
            InitialState::Named(NamedState::Electron) => FockVector::electron(),
            InitialState::Named(NamedState::Positron) => FockVector::positron(),
            InitialState::Named(NamedState::Pair) => FockVector::pair(),
            InitialState::Explicit { amplitudes } => {
                let v = FockVector::from_amplitudes(amplitudes.map(complex));
                if (v.norm_sqr() - 1.0).abs() > NORMALIZATION_TOL {
                    return Err(bad(format!("initial_state amplitudes have squared norm {}", v.norm_sqr())));
                }
                v
            }
        };
        let amplitudes = raw
            .amplitudes
            .map_or_else(AmplitudePair::default, |a| AmplitudePair::new(complex(a.f), complex(a.g_star)));
        Ok(RunConfig { mass: raw.mass, spin: raw.spin, source, momentum: raw.momentum, initial, amplitudes, output: raw.output })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRAP: &str = r#"
mass = 1.0
[trap]
kick = 3.0
"#;

    #[test]
    fn minimal_trap_config() {
        let c = RunConfig::from_toml(TRAP).unwrap();
        assert_eq!(c.spin, Spin::Up);
        assert_eq!(c.initial, FockVector::vacuum());
        let Source::Trap(t) = c.source else { panic!() };
        assert_eq!((t.branch, t.n_barrier, t.n_interior, t.periods), (Branch::Plus, 0, 0, 1));
    }

    #[test]
    fn explicit_schedule_and_grid() {
        let text = r#"
mass = 0.5
spin = "-"
initial_state = { amplitudes = [[0.6, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.8]] }
momentum = { min = -1.0, max = 1.0, count = 11 }
[[schedule]]
kick = 0.0
[[schedule]]
duration = 0.4
kick = 2.0
[[schedule]]
kick = 0.0
[output]
format = "json"
"#;
        let c = RunConfig::from_toml(text).unwrap();
        assert_eq!(c.spin, Spin::Down);
        assert_eq!(c.momentum, Some(MomentumSpec::Grid { min: -1.0, max: 1.0, count: 11 }));
        assert_eq!(c.output.format, Some(Format::Json));
        let Source::Schedule(s) = c.source else { panic!() };
        assert_eq!(s.slices().len(), 3);
    }

    #[test]
    fn rejects_bad_configs() {
        let cases = [
            "mass = 1.0",
            "mass = -1.0\n[trap]\nkick = 3.0",
            "mass = 1.0\n[trap]\nkick = 3.0\n[[schedule]]\nkick = 0.0",
            "mass = 1.0\n[[schedule]]\nkick = 0.0",
            "mass = 1.0\nmomentum = { min = 1.0, max = 0.0, count = 3 }\n[trap]\nkick = 3.0",
            "mass = 1.0\nmomentum = { min = 0.0, max = 1.0, count = 0 }\n[trap]\nkick = 3.0",
            "mass = 1.0\ninitial_state = { amplitudes = [[1.0, 0.0], [1.0, 0.0], [0.0, 0.0], [0.0, 0.0]] }\n[trap]\nkick = 3.0",
            "mass = 1.0\nmomentum = 0.1\n[[schedule]]\nkick = 1.0\n[[schedule]]\nkick = 0.0",
            "mass = 1.0\nunknown = 2\n[trap]\nkick = 3.0",
            "mass = 1.0\ninitial_state = \"muon\"\n[trap]\nkick = 3.0",
        ];
        for text in cases {
            assert!(matches!(RunConfig::from_toml(text), Err(CliError::Config(_))), "{text}");
        }
    }
}
