//! Table output: CSV with fixed column order, or JSON.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use timetrap::suites::SuiteResult;
use timetrap::trace::{SweepRow, TraceRow};
use timetrap::{TrapDesign, TrapReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

pub const EVOLVE_COLUMNS: [&str; 9] =
    ["time", "slice_index", "kick_q", "p_vac", "p_electron", "p_positron", "p_pair", "f_abs", "g_abs"];
pub const SWEEP_COLUMNS: [&str; 5] = ["p", "status", "p_vac_final", "p_pair_interior", "barrier_diag_norm"];
pub const VERIFY_COLUMNS: [&str; 6] = ["suite", "status", "samples", "statistic", "comparison", "threshold"];

/// `%.12g`-style rendering: 12 significant digits, trailing zeros dropped.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Rounds to the printed precision so JSON and CSV carry the same values.
fn round(x: f64) -> f64 {
    fmt_num(x).parse().unwrap_or(f64::NAN)
}

fn csv_line(out: &mut String, fields: &[String]) {
    out.push_str(&fields.join(","));
    out.push('\n');
}

fn header(cols: &[&str]) -> String {
    let mut s = cols.join(",");
    s.push('\n');
    s
}

pub fn evolve_table(rows: &[TraceRow], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = header(&EVOLVE_COLUMNS);
            for r in rows {
                let p = &r.probabilities;
                csv_line(
                    &mut out,
                    &[
                        fmt_num(r.time),
                        r.slice_index.to_string(),
                        fmt_num(r.kick),
                        fmt_num(p.vacuum),
                        fmt_num(p.electron),
                        fmt_num(p.positron),
                        fmt_num(p.pair),
                        fmt_num(r.f_abs),
                        fmt_num(r.g_abs),
                    ],
                );
            }
            out
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "time": round(r.time),
                        "slice_index": r.slice_index,
                        "kick_q": round(r.kick),
                        "p_vac": round(r.probabilities.vacuum),
                        "p_electron": round(r.probabilities.electron),
                        "p_positron": round(r.probabilities.positron),
                        "p_pair": round(r.probabilities.pair),
                        "f_abs": round(r.f_abs),
                        "g_abs": round(r.g_abs),
                    })
                })
                .collect();
            json_document(&rows)
        }
    }
}

pub fn sweep_table(rows: &[SweepRow], format: Format) -> String {
    let status = |r: &SweepRow| match r.status {
        timetrap::trace::SweepStatus::Ok => "ok",
        timetrap::trace::SweepStatus::SubThreshold => "sub_threshold",
    };
    match format {
        Format::Csv => {
            let mut out = header(&SWEEP_COLUMNS);
            for r in rows {
                csv_line(
                    &mut out,
                    &[
                        fmt_num(r.p),
                        status(r).into(),
                        fmt_num(r.final_vacuum),
                        fmt_num(r.interior_pair),
                        fmt_num(r.barrier_diagonal_norm),
                    ],
                );
            }
            out
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "p": round(r.p),
                        "status": status(r),
                        "p_vac_final": round(r.final_vacuum),
                        "p_pair_interior": round(r.interior_pair),
                        "barrier_diag_norm": round(r.barrier_diagonal_norm),
                    })
                })
                .collect();
            json_document(&rows)
        }
    }
}

fn design_fields(d: &TrapDesign, r: &TrapReport) -> Vec<(&'static str, String)> {
    vec![
        ("mass", fmt_num(d.mass)),
        ("kick_q", fmt_num(d.q)),
        ("branch", d.branch.to_string()),
        ("n_barrier", d.n_barrier.to_string()),
        ("n_interior", d.n_interior.to_string()),
        ("p", fmt_num(d.p)),
        ("degenerate_root", d.degenerate.to_string()),
        ("energy_inside", fmt_num(d.energy_inside())),
        ("energy_outside", fmt_num(d.energy_outside())),
        ("dt_barrier", fmt_num(d.dt_barrier)),
        ("dt_interior", fmt_num(d.dt_interior)),
        ("barrier_diagonal_norm", fmt_num(r.barrier_diagonal_norm)),
        ("trap_identity_deviation", fmt_num(r.trap_identity_deviation)),
        ("pair_probability_interior", fmt_num(r.pair_probability_interior)),
        ("vacuum_probability_final", fmt_num(r.vacuum_probability_final)),
        ("one_particle_transparency_deviation", fmt_num(r.one_particle_transparency_deviation)),
        ("max_deviation", fmt_num(r.max_deviation())),
    ]
}

pub fn design_table(d: &TrapDesign, r: &TrapReport, format: Format) -> String {
    let fields = design_fields(d, r);
    match format {
        Format::Csv => {
            let mut out = header(&["field", "value"]);
            for (k, v) in fields {
                csv_line(&mut out, &[k.into(), v]);
            }
            out
        }
        Format::Json => {
            let design = serde_json::json!({
                "mass": round(d.mass),
                "kick_q": round(d.q),
                "branch": d.branch,
                "n_barrier": d.n_barrier,
                "n_interior": d.n_interior,
                "p": round(d.p),
                "degenerate_root": d.degenerate,
                "energy_inside": round(d.energy_inside()),
                "energy_outside": round(d.energy_outside()),
                "dt_barrier": round(d.dt_barrier),
                "dt_interior": round(d.dt_interior),
            });
            let report = serde_json::json!({
                "barrier_diagonal_norm": round(r.barrier_diagonal_norm),
                "trap_identity_deviation": round(r.trap_identity_deviation),
                "pair_probability_interior": round(r.pair_probability_interior),
                "vacuum_probability_final": round(r.vacuum_probability_final),
                "one_particle_transparency_deviation": round(r.one_particle_transparency_deviation),
                "max_deviation": round(r.max_deviation()),
            });
            json_document(&serde_json::json!({ "design": design, "report": report }))
        }
    }
}

/// Human-readable `key = value` summary of a design.
pub fn design_summary(d: &TrapDesign, r: &TrapReport) -> String {
    let mut out = String::new();
    for (k, v) in design_fields(d, r) {
        let _ = writeln!(out, "{k:<36} = {v}");
    }
    out
}

pub fn verify_table(results: &[SuiteResult], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = header(&VERIFY_COLUMNS);
            for r in results {
                let cmp = serde_json::to_value(r.comparison).expect("unit enum serializes");
                csv_line(
                    &mut out,
                    &[
                        r.name.into(),
                        if r.passed { "pass" } else { "fail" }.into(),
                        r.samples.to_string(),
                        fmt_num(r.statistic),
                        cmp.as_str().unwrap_or_default().into(),
                        fmt_num(r.threshold),
                    ],
                );
            }
            out
        }
        Format::Json => json_document(&results),
    }
}

fn json_document<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}
