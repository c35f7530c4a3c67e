//! File output: CSV tables for solutions, error histories and convergence
//! sweeps, plus a self-contained plotting script that turns those tables
//! into figures.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use super::{RunReport, SweepSummary};
use crate::Result;

/// Filesystem-safe version of a label: lowercase alphanumerics and
/// underscores only.
pub fn slug(label: &str) -> String {
    let mut out = String::with_capacity(label.len());
    let mut last_sep = true;
    for ch in label.chars() {
        if ch.is_ascii_alphanumeric() {
            out.push(ch.to_ascii_lowercase());
            last_sep = false;
        } else if !last_sep {
            out.push('_');
            last_sep = true;
        }
    }
    while out.ends_with('_') {
        out.pop();
    }
    if out.is_empty() {
        "run".into()
    } else {
        out
    }
}

fn format_time(t: f64) -> String {
    format!("{t:.6}").replace('.', "p").replace('-', "m")
}

/// Write one solution table per output time (x, u_1..u_ns), a table for
/// the rebuilt physical quantity when present, and an error history when a
/// reference solution was compared. Returns the created paths.
pub fn write_report_csv(dir: &Path, report: &RunReport) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let tag = format!("{}_{}_n{}", slug(&report.label), report.integrator, report.n);
    let ns = report.states.first().map_or(0, |s| s.len());
    let mut written = Vec::new();

    for (ti, &t) in report.times.iter().enumerate() {
        let path = dir.join(format!("solution_{tag}_t{}.csv", format_time(t)));
        let mut file = fs::File::create(&path)?;
        let headers: Vec<String> = (1..=ns).map(|c| format!("u_{c}")).collect();
        writeln!(file, "x,{}", headers.join(","))?;
        for (j, &x) in report.grid.iter().enumerate() {
            let row: Vec<String> = (0..ns)
                .map(|c| format!("{:.12e}", report.states[ti][c][j]))
                .collect();
            writeln!(file, "{x:.12e},{}", row.join(","))?;
        }
        written.push(path);

        if let Some(rec) = report.recovered.get(ti) {
            let path = dir.join(format!("recovered_{tag}_t{}.csv", format_time(t)));
            let mut file = fs::File::create(&path)?;
            writeln!(file, "x,u")?;
            for (j, &x) in report.grid.iter().enumerate() {
                writeln!(file, "{x:.12e},{:.12e}", rec[j])?;
            }
            written.push(path);
        }
    }

    if let Some(errors) = &report.errors {
        let path = dir.join(format!("errors_{tag}.csv"));
        let mut file = fs::File::create(&path)?;
        let mut headers: Vec<String> = (1..=ns).map(|c| format!("err_u_{c}")).collect();
        if report.recovered_errors.is_some() {
            headers.push("err_u".into());
        }
        writeln!(file, "t,{}", headers.join(","))?;
        for (ti, &t) in report.times.iter().enumerate() {
            let mut row: Vec<String> =
                errors[ti].iter().map(|e| format!("{e:.6e}")).collect();
            if let Some(rec) = &report.recovered_errors {
                row.push(format!("{:.6e}", rec[ti]));
            }
            writeln!(file, "{t:.6},{}", row.join(","))?;
        }
        written.push(path);
    }

    Ok(written)
}

/// Write a convergence table: one row per resolution with the final-time
/// error per component (and per rebuilt quantity when compared).
pub fn write_convergence_csv(
    dir: &Path,
    label: &str,
    integrator: &str,
    summary: &SweepSummary,
) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("convergence_{}_{}.csv", slug(label), integrator));
    let mut file = fs::File::create(&path)?;
    let ns = summary.final_errors.first().map_or(0, |e| e.len());
    let mut headers: Vec<String> = (1..=ns).map(|c| format!("err_u_{c}")).collect();
    if summary.recovered.iter().any(|r| r.is_some()) {
        headers.push("err_u".into());
    }
    writeln!(file, "N,{}", headers.join(","))?;
    for (i, &n) in summary.n_values.iter().enumerate() {
        let mut row: Vec<String> = summary.final_errors[i]
            .iter()
            .map(|e| format!("{e:.6e}"))
            .collect();
        if summary.recovered.iter().any(|r| r.is_some()) {
            row.push(match summary.recovered[i] {
                Some(e) => format!("{e:.6e}"),
                None => "nan".into(),
            });
        }
        writeln!(file, "{n},{}", row.join(","))?;
    }
    Ok(path)
}

/// Drop a plotting script next to the CSV output. The script needs only
/// the Python standard library plus matplotlib and figures out what to
/// plot from the filenames.
pub fn write_plot_script(dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join("plot.py");
    fs::write(&path, PLOT_SCRIPT)?;
    Ok(path)
}

const PLOT_SCRIPT: &str = r#"#!/usr/bin/env python3
"""Render every CSV table in this directory to a PNG.

solution_*.csv     columns x, u_1..        -> line plot per component
recovered_*.csv    columns x, u            -> line plot
errors_*.csv       columns t, err_*        -> log-scale error history
convergence_*.csv  columns N, err_*        -> log-scale error vs resolution
"""
import csv
import glob
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))


def read_table(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    cols = [[float(r[i]) for r in body] for i in range(len(header))]
    return header, cols


def save(fig, path):
    out = path[:-4] + ".png"
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)
    print("wrote", os.path.basename(out))


for path in sorted(glob.glob(os.path.join(HERE, "solution_*.csv"))) + sorted(
    glob.glob(os.path.join(HERE, "recovered_*.csv"))
):
    header, cols = read_table(path)
    fig, ax = plt.subplots()
    for name, col in zip(header[1:], cols[1:]):
        ax.plot(cols[0], col, label=name)
    ax.set_xlabel(header[0])
    ax.legend()
    ax.set_title(os.path.basename(path)[:-4])
    save(fig, path)

for path in sorted(glob.glob(os.path.join(HERE, "errors_*.csv"))):
    header, cols = read_table(path)
    fig, ax = plt.subplots()
    for name, col in zip(header[1:], cols[1:]):
        ax.semilogy(cols[0], col, marker="o", label=name)
    ax.set_xlabel("t")
    ax.set_ylabel("L2 error")
    ax.legend()
    ax.set_title(os.path.basename(path)[:-4])
    save(fig, path)

for path in sorted(glob.glob(os.path.join(HERE, "convergence_*.csv"))):
    header, cols = read_table(path)
    fig, ax = plt.subplots()
    for name, col in zip(header[1:], cols[1:]):
        ax.semilogy(cols[0], col, marker="s", label=name)
    ax.set_xlabel("N")
    ax.set_ylabel("final L2 error")
    ax.legend()
    ax.set_title(os.path.basename(path)[:-4])
    save(fig, path)
"#;
