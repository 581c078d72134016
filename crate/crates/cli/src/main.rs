use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use curlcurl_cli::output::{ensure_dir, format_table1, write_fig2, write_matrices, write_study};
use curlcurl_cli::{emit_fig2, run_self_check, run_study, Emit, Result, SelfCheckOptions, StudyConfig};
use curlcurl_core::MassQuadrature;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MassRule {
    /// GLL quadrature on the nodes (diagonal nodal mass)
    Lobatto,
    /// Exact Gauss integration
    Gauss,
}

impl From<MassRule> for MassQuadrature {
    fn from(r: MassRule) -> Self {
        match r {
            MassRule::Lobatto => MassQuadrature::Lobatto,
            MassRule::Gauss => MassQuadrature::Gauss,
        }
    }
}

/// Mimetic spectral element solver for the curl-curl problem pair on [-1,1]².
#[derive(Debug, Parser)]
#[command(name = "curlcurl", version)]
struct Args {
    /// Highest polynomial degree in the study
    #[arg(long, default_value_t = 9)]
    max_degree: usize,

    /// Points per direction of the comparison grid
    #[arg(long, default_value_t = 30)]
    grid_size: usize,

    /// Extra Gauss points beyond N for boundary data and error norms
    #[arg(long, default_value_t = 15)]
    quadrature_boost: usize,

    /// Output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Outputs to produce
    #[arg(long, value_delimiter = ',', default_value = "table1,fig2,fig3")]
    emit: Vec<Emit>,

    /// Also dump the incidence and trace matrices
    #[arg(long)]
    matrices: bool,

    /// Quadrature used for the mass matrices
    #[arg(long, value_enum, default_value = "lobatto")]
    mass_quadrature: MassRule,

    /// Run the built-in verification instead of the study
    #[arg(long)]
    self_check: bool,
}

fn run(args: Args) -> Result<bool> {
    let mass_quadrature = args.mass_quadrature.into();
    if args.self_check {
        let report = run_self_check(SelfCheckOptions {
            mass_quadrature,
            ..Default::default()
        })?;
        print!("{}", report.summary());
        return Ok(report.passed());
    }

    let mut emit: BTreeSet<Emit> = args.emit.into_iter().collect();
    if args.matrices {
        emit.insert(Emit::Matrices);
    }
    let cfg = StudyConfig {
        max_degree: args.max_degree,
        quadrature_boost: args.quadrature_boost,
        output_dir: args.out,
        emit,
        grid_size: args.grid_size,
        mass_quadrature,
    };
    cfg.validate()?;
    ensure_dir(&cfg.output_dir)?;

    let mut written = Vec::new();
    let table1 = cfg.emit.contains(&Emit::Table1);
    let fig3 = cfg.emit.contains(&Emit::Fig3);
    if table1 || fig3 {
        let report = run_study(&cfg)?;
        print!("{}", format_table1(&report));
        written.extend(write_study(&cfg.output_dir, &report, table1, fig3)?);
    }
    if cfg.emit.contains(&Emit::Fig2) {
        let grids = emit_fig2(&cfg)?;
        println!("max |E^h - curl F^h| on {0}x{0} grid: {1:.3e}", cfg.grid_size, grids.max_abs);
        written.extend(write_fig2(&cfg.output_dir, &grids)?);
    }
    if cfg.emit.contains(&Emit::Matrices) {
        written.extend(write_matrices(&cfg.output_dir, cfg.max_degree)?);
    }
    for p in &written {
        println!("wrote {}", p.display());
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
