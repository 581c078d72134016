//! Number formatting and CSV writers. All output uses a period decimal
//! separator regardless of locale.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use curlcurl_core::{build_incidence, build_trace};
use nalgebra::DMatrix;

use crate::error::{CliError, Result};
use crate::fig2::Fig2Grids;
use crate::study::StudyReport;

/// Formats `x` with 12 significant digits, `%.12g` style.
pub fn fmt_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        strip_zeros(format!("{x:.decimals$}"))
    } else {
        let m = strip_zeros(mantissa.to_string());
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn strip_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Truncates (not rounds) `x` to `decimals` places, matching how the
/// reference norm table is printed.
pub fn truncate_decimals(x: f64, decimals: usize) -> String {
    let wide = format!("{x:.*}", decimals + 4);
    let cut = wide.find('.').map_or(wide.len(), |p| p + 1 + decimals);
    wide[..cut].to_string()
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })
}

pub fn table1_csv(report: &StudyReport) -> String {
    let mut s = String::from("N,normF,normE,absdiff\n");
    for r in &report.records {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            r.degree,
            fmt_sig12(r.norm_f),
            fmt_sig12(r.norm_e),
            fmt_sig12((r.norm_f - r.norm_e).abs())
        );
    }
    s
}

pub fn fig3_csv(report: &StudyReport) -> String {
    let mut s = String::from("N,errF,errE\n");
    for r in &report.records {
        let _ = writeln!(s, "{},{},{}", r.degree, fmt_sig12(r.err_f), fmt_sig12(r.err_e));
    }
    s
}

/// One row per `η` grid value, one column per `ξ` grid value.
pub fn grid_csv(grid: &DMatrix<f64>) -> String {
    let mut s = String::new();
    for b in 0..grid.ncols() {
        let row: Vec<String> = (0..grid.nrows()).map(|a| fmt_sig12(grid[(a, b)])).collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

pub fn int_csv<T: std::fmt::Display + nalgebra::Scalar>(m: &DMatrix<T>) -> String {
    let mut s = String::new();
    for r in 0..m.nrows() {
        let row: Vec<String> = m.row(r).iter().map(|v| v.to_string()).collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

/// Text table of norms: 8 truncated decimals, plus the study diagnostics.
pub fn format_table1(report: &StudyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>3}  {:>14}  {:>14}  {:>10}  {:>10}  {:>10}  {:>10}",
        "N", "||F^h||", "||E^h||", "|diff|", "equiv", "errF", "ms"
    );
    for r in &report.records {
        let _ = writeln!(
            s,
            "{:>3}  {:>14}  {:>14}  {:>10.2e}  {:>10.2e}  {:>10.2e}  {:>10.1}",
            r.degree,
            truncate_decimals(r.norm_f, 8),
            truncate_decimals(r.norm_e, 8),
            (r.norm_f - r.norm_e).abs(),
            r.equivalence_residual,
            r.err_f,
            r.wall_time_ms
        );
    }
    let _ = writeln!(
        s,
        "exact  sqrt(8(sinh 2 + sinh^2 1)) = {}",
        truncate_decimals(report.theoretical_norm, 8)
    );
    s
}

pub fn write_study(dir: &Path, report: &StudyReport, table1: bool, fig3: bool) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    if table1 {
        let p = dir.join("table1.csv");
        write_file(&p, &table1_csv(report))?;
        written.push(p);
    }
    if fig3 {
        let p = dir.join("fig3.csv");
        write_file(&p, &fig3_csv(report))?;
        written.push(p);
    }
    Ok(written)
}

pub fn write_fig2(dir: &Path, grids: &Fig2Grids) -> Result<Vec<PathBuf>> {
    let xi = dir.join("fig2_xi.csv");
    let eta = dir.join("fig2_eta.csv");
    write_file(&xi, &grid_csv(&grids.diff_xi))?;
    write_file(&eta, &grid_csv(&grids.diff_eta))?;
    Ok(vec![xi, eta])
}

/// Dumps `E¹⁰` and `T` for every degree up to `max_degree`.
pub fn write_matrices(dir: &Path, max_degree: usize) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for n in 1..=max_degree {
        let e = dir.join(format!("incidence_N{n}.csv"));
        let t = dir.join(format!("trace_N{n}.csv"));
        write_file(&e, &int_csv(&build_incidence(n)?.to_dense()))?;
        write_file(&t, &int_csv(&build_trace(n)?.to_dense()))?;
        written.push(e);
        written.push(t);
    }
    Ok(written)
}
