//! CSV output: UTF-8, one header row, LF endings, 12 significant digits.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use super::{ScenarioResult, SweepGrid};
use crate::error::Result;
use crate::metrics::{AveragedSummary, ChargeTrace, CorrelationKind};

const SIG_DIGITS: i32 = 12;
const MAX_DECIMALS: i32 = 24;

/// Plain decimal with 12 significant digits (fewer below `1e-13`).
pub fn format_sig12(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_string();
    }
    // Exponent after rounding to 12 significant digits.
    let sci = format!("{:.*e}", (SIG_DIGITS - 1) as usize, x);
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    let decimals = (SIG_DIGITS - 1 - exp).clamp(0, MAX_DECIMALS) as usize;
    let out = format!("{x:.decimals$}");
    if out.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0".to_string()
    } else {
        out
    }
}

fn trace_header(trace: &ChargeTrace<f64>) -> Vec<&'static str> {
    let mut cols = vec!["t", "ergotropy", "power"];
    if trace.power_interaction.is_some() {
        cols.push("power_interaction");
    }
    cols.push(match trace.correlation_kind {
        CorrelationKind::Concurrence => "entanglement",
        CorrelationKind::AveragePurity => "average_purity",
    });
    cols.push("coherence");
    cols
}

fn trace_row(trace: &ChargeTrace<f64>, k: usize) -> Vec<f64> {
    let mut row = vec![trace.times[k], trace.ergotropy[k], trace.power[k]];
    if let Some(p) = &trace.power_interaction {
        row.push(p[k]);
    }
    row.push(trace.correlation[k]);
    row.push(trace.coherence[k]);
    row
}

fn write_row<W: Write>(w: &mut W, row: &[f64]) -> io::Result<()> {
    let cells: Vec<String> = row.iter().map(|&x| format_sig12(x)).collect();
    writeln!(w, "{}", cells.join(","))
}

fn summary_row(s: &AveragedSummary<f64>) -> [f64; 4] {
    [s.e_fin, s.p_avg, s.q_avg, s.c_avg]
}

fn write_grid<W: Write>(w: &mut W, grid: &SweepGrid) -> io::Result<()> {
    writeln!(w, "delta,j_over_omega,e_fin,p_avg,q_avg,c_avg")?;
    for (i, &d) in grid.delta_axis.iter().enumerate() {
        for (j, &jo) in grid.j_axis.iter().enumerate() {
            let mut row = vec![d, jo];
            row.extend(summary_row(&grid.summary(i, j)));
            write_row(w, &row)?;
        }
    }
    Ok(())
}

pub fn write_csv<W: Write>(result: &ScenarioResult, w: &mut W) -> Result<()> {
    match result {
        ScenarioResult::Trace(trace) => {
            writeln!(w, "{}", trace_header(trace).join(","))?;
            for k in 0..trace.len() {
                write_row(w, &trace_row(trace, k))?;
            }
        }
        ScenarioResult::Traces { key, runs } => {
            if let Some((_, first)) = runs.first() {
                writeln!(w, "{},{}", key.column(), trace_header(first).join(","))?;
            }
            for (value, trace) in runs {
                for k in 0..trace.len() {
                    let mut row = vec![*value];
                    row.extend(trace_row(trace, k));
                    write_row(w, &row)?;
                }
            }
        }
        ScenarioResult::DeltaScan(rows) => {
            writeln!(w, "delta,e_fin,p_avg,q_avg,c_avg")?;
            for (d, s) in rows {
                let mut row = vec![*d];
                row.extend(summary_row(s));
                write_row(w, &row)?;
            }
        }
        ScenarioResult::Grid(grid) => write_grid(w, grid)?,
    }
    Ok(())
}

pub fn emit_csv(result: &ScenarioResult, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_csv(result, &mut w)?;
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig12(1.0), "1.00000000000");
        assert_eq!(format_sig12(0.5), "0.500000000000");
        assert_eq!(format_sig12(-2.0 / 3.0), "-0.666666666667");
        assert_eq!(format_sig12(123456.789), "123456.789000");
        assert_eq!(format_sig12(9.999999999999), "10.0000000000");
        assert_eq!(format_sig12(0.0), "0");
        assert_eq!(format_sig12(-0.0), "0");
        assert_eq!(format_sig12(1.5e-20), "0.000000000000000000015000");
        assert_eq!(format_sig12(std::f64::consts::PI), "3.14159265359");
    }

    #[test]
    fn three_samples_four_lines() {
        let trace = ChargeTrace {
            n_cells: 2,
            times: vec![0.0, 0.5, 1.0],
            ergotropy: vec![0.0, 0.2, 0.7],
            power: vec![0.0, 0.1, 0.0],
            correlation: vec![0.0; 3],
            correlation_kind: CorrelationKind::Concurrence,
            coherence: vec![0.0, 0.9, 0.3],
            power_interaction: None,
        };
        let mut buf = Vec::new();
        write_csv(&ScenarioResult::Trace(trace), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert_eq!(text.lines().next().unwrap(), "t,ergotropy,power,entanglement,coherence");
        assert!(!text.contains('\r'));
        assert!(text.ends_with('\n'));
    }
}
