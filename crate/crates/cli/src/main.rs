use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tgraph_core::files::{parse_family_file, parse_graph_file, write_family_file};
use tgraph_core::fock::{FockBasis, DEFAULT_MAX_DIM};
use tgraph_core::report::{generate_report, render_text, Command, ReportOptions};
use tgraph_core::{Graph, OperatorFamily};

/// Analyze finite discrete topological graphs and their graph algebras.
#[derive(Parser)]
#[command(name = "tgraph", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Vertex classes, condition L and K-groups.
    Analyze(Common),
    /// K0 = coker Δ and K1 = ker Δ.
    Ktheory(Common),
    /// Truncated Fock representation relation suite.
    Fock(Common),
    /// Path spaces up to --depth.
    Paths(Common),
    /// Check a JSON operator family against the Toeplitz and Cuntz-Krieger relations.
    CheckFamily {
        #[command(flatten)]
        common: Common,
        /// Family file (JSON).
        family: PathBuf,
    },
    /// Print the truncated Fock family of a graph as a family file.
    FockFamily(Common),
}

#[derive(Args)]
struct Common {
    /// Graph file.
    graph: PathBuf,
    /// Emit JSON instead of a table.
    #[arg(long)]
    json: bool,
    /// Fock truncation depth.
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// Residual tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Cap on the Fock space dimension.
    #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
    max_dim: usize,
    /// Seed for randomized relation checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Common {
    fn options(&self) -> ReportOptions {
        ReportOptions {
            depth: self.depth,
            tol: self.tol,
            max_dim: self.max_dim,
            seed: self.seed,
            family: None,
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph, String> {
    parse_graph_file(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<bool, String> {
    let (command, common, family) = match cli.command {
        Cmd::Analyze(c) => (Command::Analyze, c, None),
        Cmd::Ktheory(c) => (Command::Ktheory, c, None),
        Cmd::Fock(c) => (Command::Fock, c, None),
        Cmd::Paths(c) => (Command::Paths, c, None),
        Cmd::CheckFamily { common, family } => (Command::CheckFamily, common, Some(family)),
        Cmd::FockFamily(c) => {
            let g = load_graph(&c.graph)?;
            let basis = FockBasis::with_cap(&g, c.depth, c.max_dim).map_err(|e| e.to_string())?;
            let fam = OperatorFamily::from_fock(&basis).map_err(|e| e.to_string())?;
            println!("{}", write_family_file(&fam));
            return Ok(true);
        }
    };
    let g = load_graph(&common.graph)?;
    let mut opts = common.options();
    if let Some(path) = family {
        let fam = parse_family_file(&g, &read(&path)?).map_err(|e| format!("{}: {e}", path.display()))?;
        opts.family = Some(fam);
    }
    let report = generate_report(command, &g, &opts).map_err(|e| e.to_string())?;
    if common.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", render_text(&report));
    }
    Ok(report.relations_pass())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
