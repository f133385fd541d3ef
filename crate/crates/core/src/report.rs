//! Machine-readable reports for the command-line front end.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::fock::{DynIsometryReport, FockBasis, DEFAULT_MAX_DIM};
use crate::graph::Graph;
use crate::ktheory::{k_groups, AbelianGroupPresentation};
use crate::paths::{cycles_without_entrances, PathSpace};
use crate::relations::{run_relation_suite, RelationSuite};
use crate::verify::{verify_ck_family, CheckReport, OperatorFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Ktheory,
    Fock,
    Paths,
    CheckFamily,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Ktheory => "ktheory",
            Command::Fock => "fock",
            Command::Paths => "paths",
            Command::CheckFamily => "check-family",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub depth: usize,
    pub tol: f64,
    pub max_dim: usize,
    pub seed: u64,
    /// Required by `check-family`.
    pub family: Option<OperatorFamily>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            depth: 4,
            tol: 1e-9,
            max_dim: DEFAULT_MAX_DIM,
            seed: 0,
            family: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edge_records: usize,
    /// Edge count with multiplicity, or `"inf"`.
    pub edges: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationSection {
    pub sce: Vec<String>,
    pub fin: Vec<String>,
    pub inf: Vec<String>,
    pub rg: Vec<String>,
    pub sg: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionLSection {
    /// `true` when no loop without entrances exists.
    pub holds: bool,
    /// Loops without entrances as edge ids, `e_1` first.
    pub witness_cycles: Vec<Vec<String>>,
    pub base_points: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct KTheorySection {
    pub k0: AbelianGroupPresentation,
    pub k1: AbelianGroupPresentation,
    pub k0_text: String,
    pub k1_text: String,
    pub delta_rows: Vec<String>,
    pub delta_cols: Vec<String>,
    pub delta: Vec<Vec<serde_json::Value>>,
    pub k1_generators: Vec<Vec<serde_json::Value>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PathLevel {
    pub level: usize,
    pub count: usize,
    pub paths: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PathsSection {
    pub depth: usize,
    pub levels: Vec<PathLevel>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FockSection {
    pub seed: u64,
    #[serde(flatten)]
    pub suite: RelationSuite,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dynamical_isometry: Option<DynIsometryReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub graph: GraphSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition_l: Option<ConditionLSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_theory: Option<KTheorySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paths: Option<PathsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fock: Option<FockSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<CheckReport>,
}

impl Report {
    /// `false` when a relation check failed.
    pub fn relations_pass(&self) -> bool {
        self.fock.as_ref().is_none_or(|f| f.suite.pass && f.dynamical_isometry.as_ref().is_none_or(|d| d.pass))
            && self.family.as_ref().is_none_or(|f| f.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn int_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => v.into(),
        None => x.to_string().into(),
    }
}

fn classification(g: &Graph) -> ClassificationSection {
    let c = g.classify_vertices();
    ClassificationSection {
        sce: g.vertex_names(&c.sce),
        fin: g.vertex_names(&c.fin),
        inf: g.vertex_names(&c.inf),
        rg: g.vertex_names(&c.rg),
        sg: g.vertex_names(&c.sg),
    }
}

fn condition_l(g: &Graph) -> ConditionLSection {
    let loops = cycles_without_entrances(g);
    ConditionLSection {
        holds: loops.is_empty(),
        witness_cycles: loops.iter().map(|l| l.path().edge_ids(g)).collect(),
        base_points: loops.iter().map(|l| g.vertices()[l.base_point()].clone()).collect(),
    }
}

fn k_theory(g: &Graph) -> KTheorySection {
    let k = k_groups(g);
    let rg = g.classify_vertices().rg;
    KTheorySection {
        k0_text: k.k0.to_string(),
        k1_text: k.k1.to_string(),
        delta_rows: g.vertices().to_vec(),
        delta_cols: g.vertex_names(&rg),
        delta: k.delta.to_rows().iter().map(|r| r.iter().map(int_json).collect()).collect(),
        k1_generators: k.k1_generators.iter().map(|r| r.iter().map(int_json).collect()).collect(),
        k0: k.k0,
        k1: k.k1,
    }
}

fn paths(g: &Graph, depth: usize) -> Result<PathsSection> {
    let mut levels = Vec::new();
    for n in 0..=depth {
        let space = PathSpace::new(g, n)?;
        levels.push(PathLevel {
            level: n,
            count: space.len(),
            paths: space.paths().iter().map(|p| p.label(space.graph())).collect(),
        });
    }
    Ok(PathsSection { depth, levels })
}

fn fock(g: &Graph, opts: &ReportOptions) -> Result<FockSection> {
    let basis = FockBasis::with_cap(g, opts.depth, opts.max_dim)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let suite = run_relation_suite(&basis, &mut rng, opts.tol)?;
    let dynamical_isometry = if g.dynamical_map().is_ok() && opts.depth >= 1 {
        Some(basis.dyn_isometry_check(opts.tol)?)
    } else {
        None
    };
    Ok(FockSection {
        seed: opts.seed,
        suite,
        dynamical_isometry,
    })
}

pub fn generate_report(command: Command, g: &Graph, opts: &ReportOptions) -> Result<Report> {
    let mut report = Report {
        command: command.name().to_string(),
        graph: GraphSummary {
            vertices: g.vertex_count(),
            edge_records: g.edges().len(),
            edges: g.edge_count().to_string(),
        },
        classification: None,
        condition_l: None,
        k_theory: None,
        paths: None,
        fock: None,
        family: None,
    };
    match command {
        Command::Analyze => {
            report.classification = Some(classification(g));
            report.condition_l = Some(condition_l(g));
            report.k_theory = Some(k_theory(g));
        }
        Command::Ktheory => report.k_theory = Some(k_theory(g)),
        Command::Paths => report.paths = Some(paths(g, opts.depth)?),
        Command::Fock => report.fock = Some(fock(g, opts)?),
        Command::CheckFamily => {
            let fam = opts
                .family
                .as_ref()
                .ok_or_else(|| crate::error::Error::FamilyFormat("no family supplied".into()))?;
            report.family = Some(verify_ck_family(g, fam, opts.tol)?);
        }
    }
    Ok(report)
}

fn list(xs: &[String]) -> String {
    if xs.is_empty() {
        "-".into()
    } else {
        xs.join(" ")
    }
}

fn status(pass: bool) -> &'static str {
    if pass {
        "ok"
    } else {
        "FAIL"
    }
}

/// Plain-text rendering of a report.
pub fn render_text(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{}: {} vertices, {} edge records ({} edges)",
        r.command, r.graph.vertices, r.graph.edge_records, r.graph.edges
    );
    if let Some(c) = &r.classification {
        let _ = writeln!(s, "\nvertex classes");
        for (name, xs) in [("sce", &c.sce), ("fin", &c.fin), ("inf", &c.inf), ("rg", &c.rg), ("sg", &c.sg)] {
            let _ = writeln!(s, "  {name:<4} {}", list(xs));
        }
    }
    if let Some(c) = &r.condition_l {
        let _ = writeln!(s, "\ncondition L   {}", if c.holds { "holds" } else { "fails" });
        for (cycle, base) in c.witness_cycles.iter().zip(&c.base_points) {
            let _ = writeln!(s, "  loop without entrances at {base}: {}", cycle.join(" "));
        }
    }
    if let Some(k) = &r.k_theory {
        let _ = writeln!(s, "\nK0   {}", k.k0_text);
        let _ = writeln!(s, "K1   {}", k.k1_text);
    }
    if let Some(p) = &r.paths {
        let _ = writeln!(s, "\nlevel  count  paths");
        for l in &p.levels {
            let _ = writeln!(s, "{:>5}  {:>5}  {}", l.level, l.count, list(&l.paths));
        }
    }
    if let Some(f) = &r.fock {
        let _ = writeln!(
            s,
            "\nFock depth {} (dimension {}), tolerance {:e}, seed {}",
            f.suite.depth, f.suite.dim, f.suite.tolerance, f.seed
        );
        for rel in &f.suite.relations {
            let _ = writeln!(s, "  {:<24} {:>12.3e}  {}", rel.name, rel.residual, status(rel.pass));
        }
        if let Some(d) = &f.dynamical_isometry {
            let _ = writeln!(s, "  {:<24} {:>12.3e}  {}", "dyn_isometry", d.isometry_residual, status(d.pass));
            let _ = writeln!(s, "  {:<24} {:>12.3e}  {}", "dyn_covariance", d.covariance_residual, status(d.pass));
        }
    }
    if let Some(f) = &r.family {
        let _ = writeln!(s, "\nfamily check, tolerance {:e}", f.tolerance);
        for rel in &f.relations {
            let _ = writeln!(s, "  {:<24} {:>12.3e}  {}", rel.name, rel.residual, status(rel.pass));
        }
        for v in &f.ck_fullness_by_vertex {
            let _ = writeln!(s, "    fullness at {:<12} {:>12.3e}", v.vertex, v.residual);
        }
        let _ = writeln!(s, "  injective: {}", f.injective);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::files::parse_graph_file;

    #[test]
    fn analyze_single_loop() {
        let g = parse_graph_file("vertex v\nedge e v v").unwrap();
        let r = generate_report(Command::Analyze, &g, &ReportOptions::default()).unwrap();
        let c = r.condition_l.as_ref().unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness_cycles, vec![vec!["e".to_string()]]);
        assert!(r.relations_pass());
    }

    #[test]
    fn ktheory_o3() {
        let g = parse_graph_file("vertex v\nedge a v v\nedge b v v\nedge c v v").unwrap();
        let r = generate_report(Command::Ktheory, &g, &ReportOptions::default()).unwrap();
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["k_theory"]["k0"]["free_rank"], 0);
        assert_eq!(json["k_theory"]["k0"]["invariant_factors"], serde_json::json!([2]));
        assert_eq!(json["k_theory"]["k1"]["free_rank"], 0);
    }

    #[test]
    fn reports_are_deterministic() {
        let g = parse_graph_file("vertex v\nedge e1 v v\nedge e2 v v").unwrap();
        let opts = ReportOptions {
            depth: 3,
            ..ReportOptions::default()
        };
        let a = generate_report(Command::Fock, &g, &opts).unwrap().to_json();
        let b = generate_report(Command::Fock, &g, &opts).unwrap().to_json();
        assert_eq!(a, b);
        assert!(!render_text(&generate_report(Command::Fock, &g, &opts).unwrap()).is_empty());
    }

    #[test]
    fn check_family_needs_a_family() {
        let g = parse_graph_file("vertex v").unwrap();
        assert!(generate_report(Command::CheckFamily, &g, &ReportOptions::default()).is_err());
    }
}
