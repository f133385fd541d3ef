//! Finite discrete topological graphs and correspondences.
//!
//! A [`Correspondence`] from `E⁰` to `F⁰` is a finite edge list with a domain
//! map into `E⁰` and a range map into `F⁰`. A [`Graph`] is a correspondence
//! from a vertex set to itself. Edge `e` points from `d(e)` to `r(e)`.
//!
//! Vertices and edges are kept sorted by id, so every derived basis (paths,
//! Fock space, the `Δ` matrix) is reproducible from the input alone.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Deref;

use serde::Serialize;

use crate::error::{Error, Result};

/// Number of parallel copies carried by one edge record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(u64),
    /// Countably infinitely many parallel edges.
    Omega,
}

impl Multiplicity {
    pub fn is_finite(self) -> bool {
        matches!(self, Multiplicity::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(n) => Some(n),
            Multiplicity::Omega => None,
        }
    }
}

impl std::ops::Add for Multiplicity {
    type Output = Multiplicity;

    fn add(self, rhs: Multiplicity) -> Multiplicity {
        match (self, rhs) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => Multiplicity::Finite(a + b),
            _ => Multiplicity::Omega,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Omega => f.write_str("inf"),
        }
    }
}

/// An edge record as supplied by a caller, endpoints given by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpec {
    pub id: String,
    pub dom: String,
    pub ran: String,
    pub mult: Multiplicity,
}

impl EdgeSpec {
    pub fn new(id: impl Into<String>, dom: impl Into<String>, ran: impl Into<String>) -> Self {
        EdgeSpec {
            id: id.into(),
            dom: dom.into(),
            ran: ran.into(),
            mult: Multiplicity::Finite(1),
        }
    }

    pub fn with_mult(mut self, mult: Multiplicity) -> Self {
        self.mult = mult;
        self
    }
}

/// An edge record with endpoints resolved to vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub dom: usize,
    pub ran: usize,
    pub mult: Multiplicity,
}

fn check_id(id: &str) -> Result<()> {
    if id.is_empty() || id.chars().any(char::is_whitespace) || id.starts_with('#') {
        return Err(Error::MalformedId(id.to_string()));
    }
    Ok(())
}

fn sorted_vertex_set(ids: impl IntoIterator<Item = String>) -> Result<Vec<String>> {
    let mut out: Vec<String> = ids.into_iter().collect();
    for id in &out {
        check_id(id)?;
    }
    out.sort();
    if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateVertex(w[0].clone()));
    }
    Ok(out)
}

fn lookup(vertices: &[String], id: &str) -> Option<usize> {
    vertices.binary_search_by(|v| v.as_str().cmp(id)).ok()
}

/// A finite correspondence `(E¹, d, r)` from `E⁰` to `F⁰`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    dom_vertices: Vec<String>,
    ran_vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl Correspondence {
    pub fn new(
        dom_vertices: impl IntoIterator<Item = String>,
        ran_vertices: impl IntoIterator<Item = String>,
        edges: impl IntoIterator<Item = EdgeSpec>,
    ) -> Result<Self> {
        let dom_vertices = sorted_vertex_set(dom_vertices)?;
        let ran_vertices = sorted_vertex_set(ran_vertices)?;
        let mut resolved = Vec::new();
        for spec in edges {
            check_id(&spec.id)?;
            if spec.mult == Multiplicity::Finite(0) {
                return Err(Error::ZeroMultiplicity(spec.id));
            }
            let dom = lookup(&dom_vertices, &spec.dom).ok_or_else(|| Error::UndeclaredVertex {
                edge: spec.id.clone(),
                vertex: spec.dom.clone(),
            })?;
            let ran = lookup(&ran_vertices, &spec.ran).ok_or_else(|| Error::UndeclaredVertex {
                edge: spec.id.clone(),
                vertex: spec.ran.clone(),
            })?;
            resolved.push(Edge {
                id: spec.id,
                dom,
                ran,
                mult: spec.mult,
            });
        }
        resolved.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = resolved.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::DuplicateEdge(w[0].id.clone()));
        }
        Ok(Correspondence {
            dom_vertices,
            ran_vertices,
            edges: resolved,
        })
    }

    /// The identity correspondence on a vertex set: one edge `v: v → v` per vertex.
    pub fn identity(vertices: impl IntoIterator<Item = String>) -> Result<Self> {
        let vs = sorted_vertex_set(vertices)?;
        let edges: Vec<EdgeSpec> = vs.iter().map(|v| EdgeSpec::new(v.clone(), v.clone(), v.clone())).collect();
        Correspondence::new(vs.clone(), vs, edges)
    }

    pub fn dom_vertices(&self) -> &[String] {
        &self.dom_vertices
    }

    pub fn ran_vertices(&self) -> &[String] {
        &self.ran_vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.binary_search_by(|e| e.id.as_str().cmp(id)).ok()
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> Multiplicity {
        self.edges.iter().fold(Multiplicity::Finite(0), |acc, e| acc + e.mult)
    }

    pub fn first_infinite_edge(&self) -> Option<&Edge> {
        self.edges.iter().find(|e| !e.mult.is_finite())
    }

    pub fn require_finite(&self) -> Result<()> {
        match self.first_infinite_edge() {
            Some(e) => Err(Error::InfiniteMultiplicity(e.id.clone())),
            None => Ok(()),
        }
    }

    /// `true` when every record carries exactly one edge.
    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|e| e.mult == Multiplicity::Finite(1))
    }

    fn specs(&self) -> Vec<EdgeSpec> {
        self.edges
            .iter()
            .map(|e| EdgeSpec {
                id: e.id.clone(),
                dom: self.dom_vertices[e.dom].clone(),
                ran: self.ran_vertices[e.ran].clone(),
                mult: e.mult,
            })
            .collect()
    }

    /// Replaces every record of multiplicity `k > 1` by `k` records `id#1 … id#k`.
    pub fn expanded(&self) -> Result<Self> {
        self.require_finite()?;
        if self.is_simple() {
            return Ok(self.clone());
        }
        let mut specs = Vec::new();
        for spec in self.specs() {
            match spec.mult {
                Multiplicity::Finite(1) => specs.push(spec),
                Multiplicity::Finite(k) => {
                    for i in 1..=k {
                        specs.push(EdgeSpec::new(format!("{}#{i}", spec.id), spec.dom.clone(), spec.ran.clone()));
                    }
                }
                Multiplicity::Omega => unreachable!(),
            }
        }
        Correspondence::new(self.dom_vertices.clone(), self.ran_vertices.clone(), specs)
    }

    /// Fiber product with `next`: edges `(e′,e)` with `d′(e′) = r(e)`, domain `d(e)`, range `r′(e′)`.
    pub fn compose(&self, next: &Correspondence) -> Result<Correspondence> {
        if self.ran_vertices != next.dom_vertices {
            return Err(Error::VertexSetMismatch);
        }
        self.require_finite()?;
        next.require_finite()?;
        let mut specs = Vec::new();
        for e in &self.edges {
            for e2 in next.edges.iter().filter(|e2| e2.dom == e.ran) {
                let m = e.mult.finite().unwrap() * e2.mult.finite().unwrap();
                specs.push(
                    EdgeSpec::new(
                        format!("({},{})", e2.id, e.id),
                        self.dom_vertices[e.dom].clone(),
                        next.ran_vertices[e2.ran].clone(),
                    )
                    .with_mult(Multiplicity::Finite(m)),
                );
            }
        }
        Correspondence::new(self.dom_vertices.clone(), next.ran_vertices.clone(), specs)
    }
}

/// A finite discrete topological graph `E = (E⁰, E¹, d, r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph(Correspondence);

impl Deref for Graph {
    type Target = Correspondence;

    fn deref(&self) -> &Correspondence {
        &self.0
    }
}

impl Graph {
    /// Builds a graph with canonical (lexicographic) vertex and edge order.
    pub fn new(vertices: impl IntoIterator<Item = String>, edges: impl IntoIterator<Item = EdgeSpec>) -> Result<Self> {
        let vs: Vec<String> = vertices.into_iter().collect();
        Ok(Graph(Correspondence::new(vs.clone(), vs, edges)?))
    }

    pub fn from_correspondence(c: Correspondence) -> Result<Self> {
        if c.dom_vertices != c.ran_vertices {
            return Err(Error::VertexSetMismatch);
        }
        Ok(Graph(c))
    }

    pub fn as_correspondence(&self) -> &Correspondence {
        &self.0
    }

    pub fn vertices(&self) -> &[String] {
        &self.0.dom_vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        lookup(self.vertices(), id)
    }

    pub fn expanded(&self) -> Result<Graph> {
        Ok(Graph(self.0.expanded()?))
    }

    /// `|r⁻¹(v)|` counted with multiplicity, for every vertex.
    pub fn in_degrees(&self) -> Vec<Multiplicity> {
        let mut deg = vec![Multiplicity::Finite(0); self.vertex_count()];
        for e in self.edges() {
            deg[e.ran] = deg[e.ran] + e.mult;
        }
        deg
    }

    /// `|d⁻¹(v)|` counted with multiplicity, for every vertex.
    pub fn out_degrees(&self) -> Vec<Multiplicity> {
        let mut deg = vec![Multiplicity::Finite(0); self.vertex_count()];
        for e in self.edges() {
            deg[e.dom] = deg[e.dom] + e.mult;
        }
        deg
    }

    /// Square matrix whose `(u, v)` entry is the number of edges `u → v`.
    pub fn adjacency_counts(&self) -> Result<Vec<Vec<u64>>> {
        self.require_finite()?;
        let n = self.vertex_count();
        let mut a = vec![vec![0u64; n]; n];
        for e in self.edges() {
            a[e.dom][e.ran] += e.mult.finite().unwrap();
        }
        Ok(a)
    }

    pub fn classify_vertices(&self) -> VertexClassification {
        let mut c = VertexClassification::default();
        for (v, deg) in self.in_degrees().into_iter().enumerate() {
            match deg {
                Multiplicity::Finite(0) => {
                    c.sce.push(v);
                    c.fin.push(v);
                    c.sg.push(v);
                }
                Multiplicity::Finite(_) => {
                    c.fin.push(v);
                    c.rg.push(v);
                }
                Multiplicity::Omega => {
                    c.inf.push(v);
                    c.sg.push(v);
                }
            }
        }
        c
    }

    /// Same vertices and edges with `d` and `r` swapped.
    pub fn opposite(&self) -> Graph {
        let edges = self
            .0
            .edges
            .iter()
            .map(|e| Edge {
                id: e.id.clone(),
                dom: e.ran,
                ran: e.dom,
                mult: e.mult,
            })
            .collect();
        Graph(Correspondence {
            dom_vertices: self.0.dom_vertices.clone(),
            ran_vertices: self.0.ran_vertices.clone(),
            edges,
        })
    }

    /// The graph `E_Σ` of a map `σ` on a finite set: one edge `x → σ(x)` per point, named after the point.
    pub fn from_dynamical_system(points: impl IntoIterator<Item = String>, sigma: &BTreeMap<String, String>) -> Result<Graph> {
        let points: Vec<String> = points.into_iter().collect();
        let declared: BTreeSet<&String> = points.iter().collect();
        let mut edges = Vec::with_capacity(points.len());
        for x in &points {
            let y = sigma.get(x).ok_or_else(|| Error::MapUndefined(x.clone()))?;
            if !declared.contains(y) {
                return Err(Error::MapOutsidePoints {
                    from: x.clone(),
                    to: y.clone(),
                });
            }
            edges.push(EdgeSpec::new(x.clone(), x.clone(), y.clone()));
        }
        Graph::new(points, edges)
    }

    /// Recovers `σ` (as vertex indices) when every vertex emits exactly one simple edge.
    pub fn dynamical_map(&self) -> Result<Vec<usize>> {
        let mut sigma = vec![None; self.vertex_count()];
        for e in self.edges() {
            if e.mult != Multiplicity::Finite(1) {
                return Err(Error::NotDynamicalSystem(format!("edge `{}` has multiplicity {}", e.id, e.mult)));
            }
            if sigma[e.dom].replace(e.ran).is_some() {
                return Err(Error::NotDynamicalSystem(format!(
                    "vertex `{}` emits more than one edge",
                    self.vertices()[e.dom]
                )));
            }
        }
        sigma
            .into_iter()
            .enumerate()
            .map(|(v, s)| s.ok_or_else(|| Error::NotDynamicalSystem(format!("vertex `{}` emits no edge", self.vertices()[v]))))
            .collect()
    }

    pub fn vertex_names(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&v| self.vertices()[v].clone()).collect()
    }

    /// Edge records as id-based specs, in canonical order.
    pub fn edge_specs(&self) -> Vec<EdgeSpec> {
        self.0.specs()
    }
}

/// Vertex classes of a discrete graph; each list holds sorted vertex indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VertexClassification {
    /// Sources: `r⁻¹(v) = ∅`.
    pub sce: Vec<usize>,
    /// Finite receivers.
    pub fin: Vec<usize>,
    /// Infinite receivers (an `ω` edge ends here).
    pub inf: Vec<usize>,
    /// Regular: `r⁻¹(v)` non-empty and finite.
    pub rg: Vec<usize>,
    /// Singular: not regular.
    pub sg: Vec<usize>,
}

impl VertexClassification {
    pub fn is_regular(&self, v: usize) -> bool {
        self.rg.binary_search(&v).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn o2() -> Graph {
        Graph::new(ids(&["v"]), vec![EdgeSpec::new("e1", "v", "v"), EdgeSpec::new("e2", "v", "v")]).unwrap()
    }

    #[test]
    fn build_rejects_bad_input() {
        let dup = Graph::new(ids(&["v", "v"]), vec![]);
        assert_eq!(dup, Err(Error::DuplicateVertex("v".into())));
        let dup_e = Graph::new(ids(&["v"]), vec![EdgeSpec::new("e", "v", "v"), EdgeSpec::new("e", "v", "v")]);
        assert_eq!(dup_e, Err(Error::DuplicateEdge("e".into())));
        let undeclared = Graph::new(ids(&["v"]), vec![EdgeSpec::new("e", "w", "v")]);
        assert!(matches!(undeclared, Err(Error::UndeclaredVertex { .. })));
        let zero = Graph::new(ids(&["v"]), vec![EdgeSpec::new("e", "v", "v").with_mult(Multiplicity::Finite(0))]);
        assert_eq!(zero, Err(Error::ZeroMultiplicity("e".into())));
        assert!(matches!(Graph::new(ids(&["a b"]), vec![]), Err(Error::MalformedId(_))));
    }

    #[test]
    fn canonical_order() {
        let g = Graph::new(ids(&["w", "v"]), vec![EdgeSpec::new("z", "w", "v"), EdgeSpec::new("a", "v", "w")]).unwrap();
        assert_eq!(g.vertices(), &ids(&["v", "w"])[..]);
        assert_eq!(g.edges()[0].id, "a");
        assert_eq!(g.edges()[1].dom, 1);
    }

    #[test]
    fn omega_loop_is_accepted() {
        let g = Graph::new(ids(&["v"]), vec![EdgeSpec::new("e", "v", "v").with_mult(Multiplicity::Omega)]).unwrap();
        assert_eq!(g.edge_count(), Multiplicity::Omega);
        let c = g.classify_vertices();
        assert_eq!(c.inf, vec![0]);
        assert_eq!(c.sg, vec![0]);
        assert!(c.rg.is_empty() && c.fin.is_empty());
        assert_eq!(g.expanded(), Err(Error::InfiniteMultiplicity("e".into())));
    }

    #[test]
    fn classification_examples() {
        let g = Graph::new(ids(&["v", "w"]), vec![EdgeSpec::new("e", "w", "v")]).unwrap();
        let c = g.classify_vertices();
        assert_eq!(c.sce, vec![1]);
        assert_eq!(c.rg, vec![0]);
        assert_eq!(c.sg, vec![1]);
        assert!(c.inf.is_empty());

        let c = o2().classify_vertices();
        assert!(c.sce.is_empty() && c.sg.is_empty());
        assert_eq!(c.rg, vec![0]);
    }

    #[test]
    fn opposite_examples() {
        let g = Graph::new(ids(&["v", "w"]), vec![EdgeSpec::new("e", "w", "v")]).unwrap();
        let op = g.opposite();
        assert_eq!(op.edges()[0].dom, 0);
        assert_eq!(op.edges()[0].ran, 1);
        assert_eq!(op.opposite(), g);
        assert_eq!(o2().opposite(), o2());
    }

    #[test]
    fn dynamical_system_examples() {
        let id: BTreeMap<_, _> = [("x".to_string(), "x".to_string())].into();
        let g = Graph::from_dynamical_system(ids(&["x"]), &id).unwrap();
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.edges()[0].dom, g.edges()[0].ran);

        let swap: BTreeMap<_, _> = [("x".into(), "y".into()), ("y".into(), "x".into())].into();
        let g = Graph::from_dynamical_system(ids(&["x", "y"]), &swap).unwrap();
        assert_eq!(g.dynamical_map().unwrap(), vec![1, 0]);

        let constant: BTreeMap<_, _> = [("x".into(), "x".into()), ("y".into(), "x".into())].into();
        let g = Graph::from_dynamical_system(ids(&["x", "y"]), &constant).unwrap();
        assert_eq!(g.classify_vertices().sce, vec![1]);

        let bad: BTreeMap<_, _> = [("x".into(), "q".into())].into();
        assert!(matches!(
            Graph::from_dynamical_system(ids(&["x"]), &bad),
            Err(Error::MapOutsidePoints { .. })
        ));
    }

    #[test]
    fn expansion_splits_parallel_edges() {
        let g = Graph::new(ids(&["v"]), vec![EdgeSpec::new("e", "v", "v").with_mult(Multiplicity::Finite(3))]).unwrap();
        let x = g.expanded().unwrap();
        assert_eq!(x.edges().len(), 3);
        assert!(x.is_simple());
        assert_eq!(x.in_degrees(), g.in_degrees());
        assert_eq!(x.edges()[2].id, "e#3");
    }

    #[test]
    fn compose_examples() {
        let g = Correspondence::new(ids(&["v", "w"]), ids(&["v", "w"]), vec![EdgeSpec::new("e", "w", "v")]).unwrap();
        let h = Correspondence::new(
            ids(&["v", "w"]),
            ids(&["v", "w"]),
            vec![EdgeSpec::new("f1", "v", "v"), EdgeSpec::new("f2", "v", "v")],
        )
        .unwrap();
        let gh = g.compose(&h).unwrap();
        assert_eq!(gh.edges().len(), 2);
        assert_eq!(gh.edges()[0].id, "(f1,e)");
        assert_eq!(gh.edges()[0].dom, 1);
        assert_eq!(gh.edges()[0].ran, 0);

        let id = Correspondence::identity(ids(&["v", "w"])).unwrap();
        let gi = g.compose(&id).unwrap();
        assert_eq!(gi.edges().len(), 1);
        assert_eq!((gi.edges()[0].dom, gi.edges()[0].ran), (1, 0));

        let other = Correspondence::identity(ids(&["x"])).unwrap();
        assert_eq!(g.compose(&other), Err(Error::VertexSetMismatch));
    }
}
