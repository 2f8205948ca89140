//! `framedconf`: runs verification campaigns of the exact configuration-space
//! model and prints certificates.
//!
//! Every subcommand prints a report (a table, or JSON with `--format json`)
//! and exits with status 0 iff all checks pass. The environment variable
//! `ENGINE_THREADS` caps the number of worker threads.

mod commands;
mod report;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use commands::SweepBounds;
use report::VerificationReport;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "framedconf", version, about = "Exact verification of the framed configuration space model")]
struct Cli {
    /// Output format of the report.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Include the wall-clock time in the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable table.
    Table,
    /// JSON certificate with a fixed key order.
    Json,
}

#[derive(Args, Clone, Copy)]
struct Sweep {
    /// Genus of the surface.
    #[arg(long, default_value_t = 1)]
    genus: u32,
    /// Maximal number of external vertices.
    #[arg(long, default_value_t = 2)]
    max_ext: u32,
    /// Maximal number of internal vertices.
    #[arg(long, default_value_t = 2)]
    max_internal: usize,
    /// Maximal number of edges.
    #[arg(long, default_value_t = 3)]
    max_edges: usize,
    /// Maximal number of decorations per vertex.
    #[arg(long, default_value_t = 1)]
    max_decos: usize,
}

impl From<Sweep> for SweepBounds {
    fn from(s: Sweep) -> Self {
        SweepBounds {
            genus: s.genus,
            max_ext: s.max_ext,
            max_internal: s.max_internal,
            max_edges: s.max_edges,
            max_decos: s.max_decos,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Continuity of the model forms, dη, dω and the collapse of ω.
    VerifyModel {
        /// Genus of the surface.
        #[arg(long)]
        genus: u32,
    },
    /// Partition function versus Z_triv on small closed graphs.
    Partition {
        /// Genus of the surface.
        #[arg(long)]
        genus: u32,
        /// Maximal number of vertices.
        #[arg(long, default_value_t = 3)]
        max_vertices: usize,
        /// Maximal number of edges.
        #[arg(long, default_value_t = 4)]
        max_edges: usize,
        /// Maximal number of decorations per vertex.
        #[arg(long, default_value_t = 2)]
        max_decos: usize,
    },
    /// Betti numbers of the model of the configuration space.
    Cohomology {
        /// Genus of the surface.
        #[arg(long)]
        genus: u32,
        /// Number of points (at most 3).
        #[arg(long, default_value_t = 1)]
        points: u32,
    },
    /// d² = 0 on the graph complex.
    DSquared {
        #[command(flatten)]
        sweep: Sweep,
    },
    /// The Stokes formula for the images A(Γ) of graphs.
    Stokes {
        #[command(flatten)]
        sweep: Sweep,
    },
    /// F is a chain map.
    Chainmap {
        #[command(flatten)]
        sweep: Sweep,
    },
    /// F is compatible with the coactions.
    Coaction {
        #[command(flatten)]
        sweep: Sweep,
        /// Also decorate external vertices (many more graphs).
        #[arg(long)]
        decorate_external: bool,
    },
    /// Integrates the graphs of a file (one graph per line).
    Integrate {
        /// Path to the graph file.
        graph_file: String,
        /// Print the stratified elements F(Γ) in the dump format instead of
        /// the report (the report then goes to standard error).
        #[arg(long)]
        dump: bool,
    },
    /// The worked example F(Γ_j) and α = 2 Σ_{j≥2} F(Γ_j), end to end.
    #[command(alias = "golden-4-7")]
    Golden {
        /// Genus of the surface (at least 2).
        #[arg(long, default_value_t = 2)]
        genus: u32,
    },
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("ENGINE_THREADS") {
        let n: usize =
            v.trim().parse().with_context(|| format!("ENGINE_THREADS must be a positive integer, got {v:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global()?;
    }
    Ok(())
}

fn render(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Table => report.to_table(),
        Format::Json => report.to_json() + "\n",
    }
}

fn run(cli: Cli) -> Result<bool> {
    configure_threads()?;
    let start = Instant::now();
    let mut dumps = None;
    let mut report = match cli.command {
        Command::VerifyModel { genus } => commands::verify_model(genus)?,
        Command::Partition { genus, max_vertices, max_edges, max_decos } => {
            commands::partition(genus, max_vertices, max_edges, max_decos)?
        }
        Command::Cohomology { genus, points } => commands::cohomology(genus, points)?,
        Command::DSquared { sweep } => commands::d_squared(sweep.into())?,
        Command::Stokes { sweep } => commands::stokes(sweep.into())?,
        Command::Chainmap { sweep } => commands::chainmap(sweep.into())?,
        Command::Coaction { sweep, decorate_external } => commands::coaction_check(sweep.into(), decorate_external)?,
        Command::Integrate { graph_file, dump } => {
            let text = std::fs::read_to_string(&graph_file).with_context(|| format!("reading {graph_file}"))?;
            let (report, d) = commands::integrate(&graph_file, &text)?;
            if dump {
                dumps = Some(d);
            }
            report
        }
        Command::Golden { genus } => commands::golden(genus)?,
    };
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    match dumps {
        Some(d) => {
            print!("{}", d.join("\n"));
            eprint!("{}", render(&report, cli.format));
        }
        None => print!("{}", render(&report, cli.format)),
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
