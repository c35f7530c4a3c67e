//! Command-line front end: run a built-in benchmark or a declarative
//! model file, optionally sweep resolutions, and write CSV tables plus a
//! plotting script.
//!
//! Exit codes group failures by kind: 2 for bad input or configuration,
//! 3 for numerical failures (singular boundary map, non-diagonalizable
//! system, unsupported signal type), 4 for filesystem problems.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use pie_spectral::harness::config::{integrator_from_parts, parse, to_run_config};
use pie_spectral::harness::examples::builtin;
use pie_spectral::harness::output::{write_convergence_csv, write_plot_script, write_report_csv};
use pie_spectral::harness::{run, sweep, IntegratorChoice, RunConfig, RunReport};
use pie_spectral::{Error, Result};

#[derive(Parser)]
#[command(
    name = "pie-spectral",
    version,
    about = "Spectral solver for linear one-dimensional evolution equations"
)]
struct Cli {
    /// Built-in benchmark: heat_dn, heat_varvisc, parabolic_forced,
    /// euler_bernoulli, transport, wave
    #[arg(long, value_name = "ID", conflicts_with = "config")]
    example: Option<String>,

    /// TOML model description to run instead of a built-in benchmark
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Truncation order of the spatial expansion
    #[arg(long = "N", value_name = "ORDER")]
    n: Option<usize>,

    /// Comma-separated resolutions for a convergence sweep, e.g. 8,16,24,32
    #[arg(long, value_name = "LIST")]
    sweep: Option<String>,

    /// Time scheme: exact, exact-alt, gauss, bdf3, bdf4
    #[arg(long, value_name = "NAME")]
    integrator: Option<String>,

    /// Step size for the multistep schemes
    #[arg(long)]
    dt: Option<f64>,

    /// Final time (single output time unless --times is given)
    #[arg(long)]
    tfinal: Option<f64>,

    /// Lobatto points per quadrature interval
    #[arg(long)]
    ng: Option<usize>,

    /// Quadrature intervals per output time
    #[arg(long)]
    nint: Option<usize>,

    /// Geometric interval length ratio; below 1 clusters quadrature
    /// intervals near the output time
    #[arg(long)]
    ratio: Option<f64>,

    /// Directory for CSV output
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Also write a plotting script into the output directory
    #[arg(long)]
    plot_script: bool,

    /// Scenario for multi-scenario benchmarks (transport: gaussian or
    /// sine; wave: split, right, sine or characteristic)
    #[arg(long, value_name = "NAME")]
    variant: Option<String>,

    /// Mode index for the beam benchmark
    #[arg(long, value_name = "INDEX")]
    mode: Option<usize>,

    /// Override the advection or wave speed of a benchmark
    #[arg(long)]
    speed: Option<f64>,

    /// Comma-separated output times, strictly increasing
    #[arg(long, value_name = "LIST")]
    times: Option<String>,
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<T>()
                .map_err(|_| Error::InvalidInput(format!("bad {what} entry '{s}'")))
        })
        .collect()
}

fn build_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = if let Some(id) = &cli.example {
        let case = builtin(id, cli.variant.as_deref(), cli.mode, cli.speed)?;
        case.run_config()
    } else if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)?;
        let doc = parse(&text)?;
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "config".into());
        to_run_config(&doc, &label)?
    } else {
        return Err(Error::InvalidInput(
            "choose a problem with --example ID or --config FILE".into(),
        ));
    };

    if let Some(n) = cli.n {
        cfg.n = n;
    }
    if let Some(name) = &cli.integrator {
        cfg.integrator = integrator_from_parts(name, cli.dt, cli.ng, cli.nint, cli.ratio)?;
    } else {
        // Parameter flags refine the current scheme in place.
        match &mut cfg.integrator {
            IntegratorChoice::Gauss(opts) => {
                if let Some(ng) = cli.ng {
                    opts.ng = ng;
                }
                if let Some(nint) = cli.nint {
                    opts.nint = nint;
                }
                if let Some(ratio) = cli.ratio {
                    opts.ratio = ratio;
                }
            }
            IntegratorChoice::Bdf { dt, .. } => {
                if let Some(step) = cli.dt {
                    *dt = step;
                }
            }
            _ => {}
        }
    }
    if let Some(text) = &cli.times {
        cfg.output_times = parse_list::<f64>(text, "output time")?;
    } else if let Some(tfinal) = cli.tfinal {
        cfg.output_times = vec![tfinal];
    }
    Ok(cfg)
}

fn print_report(report: &RunReport) {
    println!(
        "{}  N={}  integrator={}  elapsed={:.1?}",
        report.label, report.n, report.integrator, report.elapsed
    );
    for warning in &report.warnings {
        println!("  warning: {warning}");
    }
    match &report.errors {
        Some(errors) => {
            for (ti, &t) in report.times.iter().enumerate() {
                let mut parts: Vec<String> = errors[ti]
                    .iter()
                    .enumerate()
                    .map(|(c, e)| format!("err[u_{}]={e:.3e}", c + 1))
                    .collect();
                if let Some(rec) = &report.recovered_errors {
                    parts.push(format!("err[u]={:.3e}", rec[ti]));
                }
                println!("  t={t:.6}  {}", parts.join("  "));
            }
        }
        None => {
            println!(
                "  no reference solution; sampled {} state component(s) at {} time(s)",
                report.states.first().map_or(0, |s| s.len()),
                report.times.len()
            );
        }
    }
}

fn real_main(cli: &Cli) -> Result<()> {
    let cfg = build_config(cli)?;

    if let Some(text) = &cli.sweep {
        let n_values = parse_list::<usize>(text, "resolution")?;
        let (reports, summary) = sweep(&cfg, &n_values)?;
        for report in &reports {
            print_report(report);
        }
        println!("convergence (final-time worst error):");
        for (i, &n) in summary.n_values.iter().enumerate() {
            println!("  N={n:<4} error={:.3e}", summary.overall[i]);
        }
        match summary.decay_rate {
            Some(rate) => println!("  fitted decay rate: {rate:.3} per unit N"),
            None => println!("  no pre-plateau stretch to fit a decay rate"),
        }
        if let Some(dir) = &cli.out {
            for report in &reports {
                write_report_csv(dir, report)?;
            }
            let path = write_convergence_csv(dir, &cfg.label, &cfg.integrator.id(), &summary)?;
            println!("wrote {}", path.display());
        }
    } else {
        let report = run(&cfg)?;
        print_report(&report);
        if let Some(dir) = &cli.out {
            let written = write_report_csv(dir, &report)?;
            for path in &written {
                println!("wrote {}", path.display());
            }
        }
    }

    if cli.plot_script {
        let dir = cli.out.as_deref().ok_or_else(|| {
            Error::InvalidInput("--plot-script needs an output directory (--out)".into())
        })?;
        let path = write_plot_script(dir)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidInput(_) | Error::Config(_) => 2,
        Error::SingularBoundaryMap { .. }
        | Error::NotDiagonalizable { .. }
        | Error::NonAnalyticSignal
        | Error::Linalg(_) => 3,
        Error::Io(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match real_main(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
