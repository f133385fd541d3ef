//! Path spaces `Eⁿ`, loops without entrances and topological freeness.
//!
//! A path `(e_n, …, e_1)` is stored in traversal order (`e_1` first), with
//! `d(e_{k+1}) = r(e_k)`. Level-0 paths are bare vertices. Edge indices refer
//! to the expanded graph (one record per edge), see [`Graph::expanded`].

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::Result;
use crate::graph::{Correspondence, EdgeSpec, Graph, Multiplicity};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    edges: Vec<usize>,
    dom: usize,
    ran: usize,
}

impl Path {
    pub fn vertex(v: usize) -> Path {
        Path {
            edges: Vec::new(),
            dom: v,
            ran: v,
        }
    }

    /// Builds a path from edges in traversal order, checking composability.
    pub fn from_edges(g: &Graph, edges: Vec<usize>) -> Option<Path> {
        let first = *edges.first()?;
        let last = *edges.last()?;
        let es = g.edges();
        if edges.iter().any(|&e| e >= es.len()) {
            return None;
        }
        if edges.windows(2).any(|w| es[w[1]].dom != es[w[0]].ran) {
            return None;
        }
        Some(Path {
            dom: es[first].dom,
            ran: es[last].ran,
            edges,
        })
    }

    pub fn level(&self) -> usize {
        self.edges.len()
    }

    /// Edge indices, `e_1` first.
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn ran(&self) -> usize {
        self.ran
    }

    /// `true` when `e_1` reappears among `e_2, …, e_n`.
    pub fn is_returning(&self) -> bool {
        match self.edges.split_first() {
            Some((first, rest)) => rest.contains(first),
            None => false,
        }
    }

    /// `(e_n,…,e_1)` for level ≥ 2, the edge id for level 1, the vertex id for level 0.
    pub fn label(&self, g: &Graph) -> String {
        match self.edges.len() {
            0 => g.vertices()[self.dom].clone(),
            1 => g.edges()[self.edges[0]].id.clone(),
            _ => {
                let mut s = String::from("(");
                for (i, &e) in self.edges.iter().rev().enumerate() {
                    if i > 0 {
                        s.push(',');
                    }
                    let _ = write!(s, "{}", g.edges()[e].id);
                }
                s.push(')');
                s
            }
        }
    }

    /// Edge ids in traversal order.
    pub fn edge_ids(&self, g: &Graph) -> Vec<String> {
        self.edges.iter().map(|&e| g.edges()[e].id.clone()).collect()
    }

    /// The path `(self, other)`: `other` is traversed first. Needs `d(self) = r(other)`.
    pub fn after(&self, other: &Path) -> Option<Path> {
        if self.dom != other.ran {
            return None;
        }
        let mut edges = other.edges.clone();
        edges.extend_from_slice(&self.edges);
        Some(Path {
            edges,
            dom: other.dom,
            ran: self.ran,
        })
    }
}

/// All paths of levels `0..=depth` of a finite graph, level by level in canonical order.
pub(crate) fn levels_up_to(g: &Graph, depth: usize, cap: Option<usize>) -> Result<Vec<Vec<Path>>> {
    debug_assert!(g.is_simple());
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for (i, e) in g.edges().iter().enumerate() {
        out_edges[e.dom].push(i);
    }
    let mut levels = vec![(0..g.vertex_count()).map(Path::vertex).collect::<Vec<_>>()];
    let mut total = g.vertex_count();
    for n in 1..=depth {
        let next: Vec<Path> = if n == 1 {
            g.edges()
                .iter()
                .enumerate()
                .map(|(i, e)| Path {
                    edges: vec![i],
                    dom: e.dom,
                    ran: e.ran,
                })
                .collect()
        } else {
            let mut next = Vec::new();
            for p in &levels[n - 1] {
                for &e in &out_edges[p.ran] {
                    let mut edges = p.edges.clone();
                    edges.push(e);
                    next.push(Path {
                        edges,
                        dom: p.dom,
                        ran: g.edges()[e].ran,
                    });
                }
            }
            next
        };
        total += next.len();
        if let Some(cap) = cap {
            if total > cap {
                return Err(crate::error::Error::DimensionCap { dim: total, cap });
            }
        }
        levels.push(next);
    }
    Ok(levels)
}

/// `Eⁿ` of a graph together with a lookup from edge sequence to position.
#[derive(Debug, Clone)]
pub struct PathSpace {
    graph: Graph,
    level: usize,
    paths: Vec<Path>,
    index: HashMap<Vec<usize>, usize>,
}

impl PathSpace {
    pub fn new(g: &Graph, level: usize) -> Result<PathSpace> {
        let graph = g.expanded()?;
        let paths = levels_up_to(&graph, level, None)?.pop().unwrap();
        Ok(PathSpace::from_parts(graph, level, paths))
    }

    pub(crate) fn from_parts(graph: Graph, level: usize, paths: Vec<Path>) -> PathSpace {
        let index = if level == 0 {
            HashMap::new()
        } else {
            paths.iter().enumerate().map(|(i, p)| (p.edges.clone(), i)).collect()
        };
        PathSpace {
            graph,
            level,
            paths,
            index,
        }
    }

    /// The expanded graph that edge indices refer to.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn position(&self, p: &Path) -> Option<usize> {
        if p.level() != self.level {
            return None;
        }
        if self.level == 0 {
            return (p.dom < self.paths.len()).then_some(p.dom);
        }
        self.index.get(&p.edges).copied()
    }

    /// `Eⁿ` viewed as a correspondence on `E⁰`, edges named by path label.
    pub fn as_correspondence(&self) -> Result<Correspondence> {
        let vs = self.graph.vertices().to_vec();
        let specs: Vec<EdgeSpec> = self
            .paths
            .iter()
            .map(|p| EdgeSpec::new(p.label(&self.graph), vs[p.dom].clone(), vs[p.ran].clone()))
            .collect();
        Correspondence::new(vs.clone(), vs, specs)
    }
}

/// All length-`n` paths in canonical order; edge indices refer to `g.expanded()`.
pub fn path_space(g: &Graph, n: usize) -> Result<Vec<Path>> {
    Ok(PathSpace::new(g, n)?.paths)
}

/// A loop `(e_n, …, e_1)` with `r(e_n) = d(e_1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loop {
    path: Path,
}

impl Loop {
    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn base_point(&self) -> usize {
        self.path.dom
    }
}

/// Simple cycles on which every vertex receives only the cycle edge.
///
/// Follows unique incoming edges backward through the subgraph of vertices of
/// total in-degree one. Each loop is rotated so that `e_1` has the smallest
/// edge index; loops are sorted by `e_1`. Edge indices refer to `g` itself
/// (records of multiplicity > 1 never lie on such a loop).
pub fn cycles_without_entrances(g: &Graph) -> Vec<Loop> {
    let n = g.vertex_count();
    // incoming[v] = the unique incoming edge when in-degree is exactly 1
    let mut incoming: Vec<Option<usize>> = vec![None; n];
    for (v, deg) in g.in_degrees().into_iter().enumerate() {
        if deg == Multiplicity::Finite(1) {
            incoming[v] = g.edges().iter().position(|e| e.ran == v);
        }
    }
    let pred = |v: usize| incoming[v].map(|e| g.edges()[e].dom);

    // 0 = unvisited, 1 = on current trail, 2 = done
    let mut state = vec![0u8; n];
    let mut loops = Vec::new();
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut trail: Vec<usize> = Vec::new();
        let mut v = start;
        loop {
            if state[v] == 1 {
                let pos = trail.iter().position(|&w| w == v).unwrap();
                // trail[pos..] walks backward along incoming edges
                let mut edges: Vec<usize> = trail[pos..].iter().map(|&w| incoming[w].unwrap()).collect();
                edges.reverse();
                let min_at = (0..edges.len()).min_by_key(|&i| edges[i]).unwrap();
                edges.rotate_left(min_at);
                loops.push(Loop {
                    path: Path::from_edges(g, edges).expect("cycle is composable"),
                });
                break;
            }
            if state[v] == 2 {
                break;
            }
            state[v] = 1;
            trail.push(v);
            match pred(v) {
                Some(p) => v = p,
                None => break,
            }
        }
        for w in trail {
            state[w] = 2;
        }
    }
    loops.sort_by_key(|l| l.path.edges[0]);
    loops
}

/// Condition L: no loop without entrances.
pub fn is_topologically_free(g: &Graph) -> bool {
    cycles_without_entrances(g).is_empty()
}

/// Searches for a non-returning path of length `m ≥ n` ending in `targets`.
///
/// The search covers `n ≤ m ≤ n + |E¹| + |E⁰|` and returns the shortest
/// witness, preferring the smallest first edge. `None` means no witness
/// exists within that bound. Edge indices refer to `g.expanded()`.
pub fn find_non_returning_path(g: &Graph, targets: &[usize], n: usize) -> Result<Option<Path>> {
    let x = g.expanded()?;
    let nv = x.vertex_count();
    let ne = x.edges().len();
    let n = n.max(1);
    let bound = n + ne + nv;
    let mut in_target = vec![false; nv];
    for &v in targets {
        if v < nv {
            in_target[v] = true;
        }
    }

    let mut best: Option<(usize, usize, Vec<Vec<bool>>)> = None;
    for f in 0..ne {
        // reach[k][v]: a walk of length k from r(f) to v avoiding f exists
        let mut reach = vec![vec![false; nv]];
        reach[0][x.edges()[f].ran] = true;
        let limit = best.as_ref().map_or(bound, |b| b.0 - 1);
        for k in 0..limit {
            let m = k + 1;
            if m >= n && reach[k].iter().zip(&in_target).any(|(&r, &t)| r && t) {
                best = Some((m, f, reach));
                break;
            }
            let mut next = vec![false; nv];
            for (i, e) in x.edges().iter().enumerate() {
                if i != f && reach[k][e.dom] {
                    next[e.ran] = true;
                }
            }
            if next.iter().all(|b| !b) {
                break;
            }
            reach.push(next);
        }
    }

    let Some((m, f, reach)) = best else {
        return Ok(None);
    };
    let mut end = (0..nv).find(|&v| reach[m - 1][v] && in_target[v]).unwrap();
    let mut tail = Vec::with_capacity(m - 1);
    for k in (1..m).rev() {
        let e = x
            .edges()
            .iter()
            .enumerate()
            .position(|(i, e)| i != f && e.ran == end && reach[k - 1][e.dom])
            .unwrap();
        tail.push(e);
        end = x.edges()[e].dom;
    }
    tail.push(f);
    tail.reverse();
    Ok(Some(Path::from_edges(&x, tail).expect("witness is composable")))
}
