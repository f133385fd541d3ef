//! Checks user-supplied operator families `({P_v}, {S_e})` against the
//! Toeplitz and Cuntz-Krieger relations of a discrete graph.
//!
//! Edge-wise relations: `P_v` mutually orthogonal projections,
//! `S_e*S_e = P_{d(e)}`, `S_e*S_f = 0` for `e ≠ f`, `P_{r(e)}S_e = S_e`, and
//! for Cuntz-Krieger families `P_v = Σ_{r(e)=v} S_e S_e*` at regular `v`.
//! Residuals are operator norms of `(lhs − rhs)·Q`, where `Q` is the identity
//! unless the family carries a domain compression (truncated Fock families).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::FockBasis;
use crate::graph::Graph;
use crate::hilbert::VertexFunction;
use crate::linalg::{op_norm, CMatrix, ZERO};

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorFamily {
    graph: Graph,
    dim: usize,
    p: Vec<CMatrix>,
    s: Vec<CMatrix>,
    domain: Option<Vec<bool>>,
}

impl OperatorFamily {
    /// Builds a family keyed by vertex id and (expanded) edge id.
    pub fn new(g: &Graph, dim: usize, p: BTreeMap<String, CMatrix>, s: BTreeMap<String, CMatrix>) -> Result<Self> {
        let graph = g.expanded()?;
        let check = |id: &str, m: &CMatrix| -> Result<()> {
            if m.shape() != (dim, dim) {
                return Err(Error::DimensionMismatch(format!(
                    "operator for `{id}` is {}x{}, expected {dim}x{dim}",
                    m.nrows(),
                    m.ncols()
                )));
            }
            Ok(())
        };
        for (id, m) in &p {
            graph.vertex_index(id).ok_or_else(|| Error::UnknownId(id.clone()))?;
            check(id, m)?;
        }
        for (id, m) in &s {
            graph.edge_index(id).ok_or_else(|| Error::UnknownId(id.clone()))?;
            check(id, m)?;
        }
        let mut p = p;
        let mut s = s;
        let ps = graph
            .vertices()
            .iter()
            .map(|v| p.remove(v).ok_or_else(|| Error::MissingOperator(v.clone())))
            .collect::<Result<Vec<_>>>()?;
        let ss = graph
            .edges()
            .iter()
            .map(|e| s.remove(&e.id).ok_or_else(|| Error::MissingOperator(e.id.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(OperatorFamily {
            graph,
            dim,
            p: ps,
            s: ss,
            domain: None,
        })
    }

    pub fn zero(g: &Graph, dim: usize) -> Result<Self> {
        let graph = g.expanded()?;
        Ok(OperatorFamily {
            dim,
            p: vec![CMatrix::zeros(dim, dim); graph.vertex_count()],
            s: vec![CMatrix::zeros(dim, dim); graph.edges().len()],
            graph,
            domain: None,
        })
    }

    /// `P_v = σ⁰(δ_v)`, `S_e = σ¹(δ_e)` on the truncated Fock space, compressed to levels `< N`.
    pub fn from_fock(basis: &FockBasis) -> Result<Self> {
        let graph = basis.graph().clone();
        let nv = graph.vertex_count();
        let p = (0..nv).map(|v| basis.sigma0(&VertexFunction::delta(nv, v)).into_matrix()).collect();
        let s = if basis.depth() == 0 {
            vec![CMatrix::zeros(basis.dim(), basis.dim()); graph.edges().len()]
        } else {
            let m1 = basis.module(1)?;
            (0..m1.dim())
                .map(|i| basis.sigma1(&m1.delta(i)).map(|op| op.into_matrix()))
                .collect::<Result<_>>()?
        };
        let top = basis.depth().saturating_sub(1);
        let domain = basis.paths().iter().map(|p| p.level() <= top).collect();
        Ok(OperatorFamily {
            graph,
            dim: basis.dim(),
            p,
            s,
            domain: Some(domain),
        })
    }

    /// Restricts every relation to the basis coordinates marked `true`.
    pub fn with_domain(mut self, keep: Vec<bool>) -> Result<Self> {
        if keep.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "domain mask has {} entries, expected {}",
                keep.len(),
                self.dim
            )));
        }
        self.domain = Some(keep);
        Ok(self)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> &[CMatrix] {
        &self.p
    }

    pub fn s(&self) -> &[CMatrix] {
        &self.s
    }

    pub fn domain(&self) -> Option<&[bool]> {
        self.domain.as_deref()
    }

    /// Conjugates every operator by `w`: `X ↦ w X w*`. Drops any domain compression.
    pub fn conjugated(&self, w: &CMatrix) -> OperatorFamily {
        let conj = |m: &CMatrix| w * m * w.adjoint();
        OperatorFamily {
            graph: self.graph.clone(),
            dim: self.dim,
            p: self.p.iter().map(conj).collect(),
            s: self.s.iter().map(conj).collect(),
            domain: None,
        }
    }

    /// `Σ_e S_e`.
    pub fn edge_sum(&self) -> CMatrix {
        self.s.iter().fold(CMatrix::zeros(self.dim, self.dim), |acc, m| acc + m)
    }

    fn residual(&self, m: CMatrix) -> f64 {
        let mut m = m;
        if let Some(keep) = &self.domain {
            for (j, k) in keep.iter().enumerate() {
                if !k {
                    m.column_mut(j).fill(ZERO);
                }
            }
        }
        op_norm(&m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexResidual {
    pub vertex: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub tolerance: f64,
    pub relations: Vec<RelationCheck>,
    /// Fullness residual per regular vertex; empty for Toeplitz-only checks.
    pub ck_fullness_by_vertex: Vec<VertexResidual>,
    /// All `P_v` nonzero.
    pub injective: bool,
    pub pass: bool,
}

impl CheckReport {
    pub fn relation(&self, name: &str) -> Option<&RelationCheck> {
        self.relations.iter().find(|r| r.name == name)
    }
}

fn check_graph(g: &Graph, fam: &OperatorFamily) -> Result<()> {
    let x = g.expanded()?;
    if x.vertices() != fam.graph.vertices() || x.edges() != fam.graph.edges() {
        return Err(Error::DimensionMismatch("family was built for a different graph".into()));
    }
    Ok(())
}

fn toeplitz_relations(fam: &OperatorFamily, tol: f64) -> Vec<RelationCheck> {
    let mut projections: f64 = 0.0;
    let mut orthogonal: f64 = 0.0;
    for (v, pv) in fam.p.iter().enumerate() {
        projections = projections.max(fam.residual(pv * pv - pv));
        projections = projections.max(fam.residual(pv.adjoint() - pv));
        for pw in &fam.p[v + 1..] {
            orthogonal = orthogonal.max(fam.residual(pv * pw));
            orthogonal = orthogonal.max(fam.residual(pw * pv));
        }
    }
    let mut isometries: f64 = 0.0;
    let mut ranges: f64 = 0.0;
    let mut range_projections: f64 = 0.0;
    let edges = fam.graph.edges();
    for (i, se) in fam.s.iter().enumerate() {
        let se_adj = se.adjoint();
        isometries = isometries.max(fam.residual(&se_adj * se - &fam.p[edges[i].dom]));
        range_projections = range_projections.max(fam.residual(&fam.p[edges[i].ran] * se - se));
        for (j, sf) in fam.s.iter().enumerate() {
            if i != j {
                ranges = ranges.max(fam.residual(&se_adj * sf));
            }
        }
    }
    [
        ("projections", projections),
        ("orthogonal_projections", orthogonal),
        ("isometries", isometries),
        ("orthogonal_ranges", ranges),
        ("range_projections", range_projections),
    ]
    .into_iter()
    .map(|(name, residual)| RelationCheck {
        name: name.to_string(),
        residual,
        pass: residual <= tol,
    })
    .collect()
}

fn injective(fam: &OperatorFamily, tol: f64) -> bool {
    fam.p.iter().all(|pv| op_norm(pv) > tol)
}

/// Toeplitz relations in operator norm.
pub fn verify_toeplitz_family(g: &Graph, fam: &OperatorFamily, tol: f64) -> Result<CheckReport> {
    check_graph(g, fam)?;
    let relations = toeplitz_relations(fam, tol);
    Ok(CheckReport {
        tolerance: tol,
        pass: relations.iter().all(|r| r.pass),
        relations,
        ck_fullness_by_vertex: Vec::new(),
        injective: injective(fam, tol),
    })
}

/// Toeplitz relations plus `P_v = Σ_{r(e)=v} S_e S_e*` at every regular vertex.
pub fn verify_ck_family(g: &Graph, fam: &OperatorFamily, tol: f64) -> Result<CheckReport> {
    let mut report = verify_toeplitz_family(g, fam, tol)?;
    let classes = fam.graph.classify_vertices();
    let mut worst: f64 = 0.0;
    for &v in &classes.rg {
        let mut sum = CMatrix::zeros(fam.dim, fam.dim);
        for (i, e) in fam.graph.edges().iter().enumerate() {
            if e.ran == v {
                sum += &fam.s[i] * fam.s[i].adjoint();
            }
        }
        let residual = fam.residual(&fam.p[v] - sum);
        worst = worst.max(residual);
        report.ck_fullness_by_vertex.push(VertexResidual {
            vertex: fam.graph.vertices()[v].clone(),
            residual,
        });
    }
    report.relations.push(RelationCheck {
        name: "ck_fullness".into(),
        residual: worst,
        pass: worst <= tol,
    });
    report.pass = report.relations.iter().all(|r| r.pass);
    Ok(report)
}
