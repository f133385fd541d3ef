//! The Hilbert `C₀(E⁰)`-module `C_d(Eⁿ)` of a finite discrete graph.
//!
//! Elements are complex functions on `Eⁿ`, indexed by the canonical path
//! order. The inner product is vertex-valued:
//! `⟨ξ,η⟩(v) = Σ_{d(p)=v} conj(ξ(p)) η(p)`. Adjointable operators are the
//! matrices that never mix paths with different domains.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{CMatrix, C64, ZERO};
use crate::paths::{Path, PathSpace};

/// An element of `C₀(E⁰)`, indexed by vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexFunction {
    values: Vec<C64>,
}

impl VertexFunction {
    pub fn new(values: Vec<C64>) -> Self {
        VertexFunction { values }
    }

    pub fn constant(n: usize, c: C64) -> Self {
        VertexFunction { values: vec![c; n] }
    }

    /// Characteristic function of one vertex.
    pub fn delta(n: usize, v: usize) -> Self {
        let mut values = vec![ZERO; n];
        values[v] = C64::new(1.0, 0.0);
        VertexFunction { values }
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: usize) -> C64 {
        self.values[v]
    }

    /// Vertices where the function is nonzero.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&v| self.values[v] != ZERO).collect()
    }

    pub fn mul(&self, other: &VertexFunction) -> VertexFunction {
        VertexFunction::new(self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect())
    }

    pub fn conj(&self) -> VertexFunction {
        VertexFunction::new(self.values.iter().map(|z| z.conj()).collect())
    }

    pub fn max_abs_diff(&self, other: &VertexFunction) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// An element of `C_d(Eⁿ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleElement {
    level: usize,
    values: Vec<C64>,
}

impl ModuleElement {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn max_abs_diff(&self, other: &ModuleElement) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// An adjointable operator on `C_d(Eⁿ)` as a dense `|Eⁿ| × |Eⁿ|` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleOperator {
    level: usize,
    matrix: CMatrix,
}

impl ModuleOperator {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn compose(&self, other: &ModuleOperator) -> Result<ModuleOperator> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                expected: self.level,
                found: other.level,
            });
        }
        Ok(ModuleOperator {
            level: self.level,
            matrix: &self.matrix * &other.matrix,
        })
    }
}

/// `C_d(Eⁿ)` for one level `n`.
#[derive(Debug, Clone)]
pub struct HilbertModule {
    space: PathSpace,
}

impl HilbertModule {
    pub fn new(g: &Graph, level: usize) -> Result<Self> {
        Ok(HilbertModule {
            space: PathSpace::new(g, level)?,
        })
    }

    pub(crate) fn from_space(space: PathSpace) -> Self {
        HilbertModule { space }
    }

    pub fn level(&self) -> usize {
        self.space.level()
    }

    pub fn graph(&self) -> &Graph {
        self.space.graph()
    }

    pub fn paths(&self) -> &[Path] {
        self.space.paths()
    }

    pub fn dim(&self) -> usize {
        self.space.len()
    }

    pub fn space(&self) -> &PathSpace {
        &self.space
    }

    pub fn element(&self, values: Vec<C64>) -> Result<ModuleElement> {
        if values.len() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                found: values.len(),
            });
        }
        Ok(ModuleElement {
            level: self.level(),
            values,
        })
    }

    pub fn zero(&self) -> ModuleElement {
        ModuleElement {
            level: self.level(),
            values: vec![ZERO; self.dim()],
        }
    }

    /// `δ_p` for the path at position `i`.
    pub fn delta(&self, i: usize) -> ModuleElement {
        let mut x = self.zero();
        x.values[i] = C64::new(1.0, 0.0);
        x
    }

    fn check(&self, xi: &ModuleElement) -> Result<()> {
        if xi.level != self.level() {
            return Err(Error::LevelMismatch {
                expected: self.level(),
                found: xi.level,
            });
        }
        if xi.values.len() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                found: xi.values.len(),
            });
        }
        Ok(())
    }

    pub fn inner_product(&self, xi: &ModuleElement, eta: &ModuleElement) -> Result<VertexFunction> {
        self.check(xi)?;
        self.check(eta)?;
        let mut out = vec![ZERO; self.graph().vertex_count()];
        for (i, p) in self.paths().iter().enumerate() {
            out[p.dom()] += xi.values[i].conj() * eta.values[i];
        }
        Ok(VertexFunction::new(out))
    }

    /// `sup_v ⟨ξ,ξ⟩(v)^{1/2}`.
    pub fn norm(&self, xi: &ModuleElement) -> Result<f64> {
        let ip = self.inner_product(xi, xi)?;
        Ok(ip.values().iter().map(|z| z.re.max(0.0).sqrt()).fold(0.0, f64::max))
    }

    /// `(ξf)(p) = ξ(p) f(d(p))`.
    pub fn right_action(&self, xi: &ModuleElement, f: &VertexFunction) -> Result<ModuleElement> {
        self.check(xi)?;
        let values = self.paths().iter().zip(&xi.values).map(|(p, x)| x * f.get(p.dom())).collect();
        Ok(ModuleElement {
            level: self.level(),
            values,
        })
    }

    /// Rank-one operator `ζ ↦ ξ⟨η,ζ⟩`; entry `(p,q)` is `ξ(p)·conj(η(q))` when `d(p) = d(q)`.
    pub fn theta(&self, xi: &ModuleElement, eta: &ModuleElement) -> Result<ModuleOperator> {
        self.check(xi)?;
        self.check(eta)?;
        let ps = self.paths();
        let matrix = CMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            if ps[i].dom() == ps[j].dom() {
                xi.values[i] * eta.values[j].conj()
            } else {
                ZERO
            }
        });
        Ok(ModuleOperator {
            level: self.level(),
            matrix,
        })
    }

    /// Left action of `f`: diagonal with entries `f(rⁿ(p))`.
    pub fn pi_r(&self, f: &VertexFunction) -> ModuleOperator {
        let values: Vec<C64> = self.paths().iter().map(|p| f.get(p.ran())).collect();
        ModuleOperator {
            level: self.level(),
            matrix: crate::linalg::diag(&values),
        }
    }

    /// Wraps a matrix, rejecting entries that link paths with different domains.
    pub fn operator(&self, matrix: CMatrix) -> Result<ModuleOperator> {
        if matrix.shape() != (self.dim(), self.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "operator is {}x{}, module has dimension {}",
                matrix.nrows(),
                matrix.ncols(),
                self.dim()
            )));
        }
        let ps = self.paths();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if ps[i].dom() != ps[j].dom() && matrix[(i, j)] != ZERO {
                    return Err(Error::NotModuleOperator);
                }
            }
        }
        Ok(ModuleOperator {
            level: self.level(),
            matrix,
        })
    }

    pub fn apply(&self, x: &ModuleOperator, xi: &ModuleElement) -> Result<ModuleElement> {
        self.check(xi)?;
        if x.level != self.level() {
            return Err(Error::LevelMismatch {
                expected: self.level(),
                found: x.level,
            });
        }
        let v = nalgebra::DVector::from_column_slice(&xi.values);
        let out = &x.matrix * v;
        Ok(ModuleElement {
            level: self.level(),
            values: out.iter().copied().collect(),
        })
    }
}

/// `π_r(f)` on `C_d(Eⁿ)`.
pub fn pi_r(g: &Graph, f: &VertexFunction, level: usize) -> Result<ModuleOperator> {
    Ok(HilbertModule::new(g, level)?.pi_r(f))
}

/// One summand `K_v ≅ M_k` of the compacts on `C_d(E¹)`, `k = |d⁻¹(v)|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub vertex: usize,
    /// Edge indices of the expanded graph with domain `vertex`.
    pub edges: Vec<usize>,
    /// `|d⁻¹(v)|²`.
    pub dim: usize,
}

/// Partition of `E¹` by domain vertex.
pub fn block_structure(g: &Graph) -> Result<Vec<Block>> {
    let x = g.expanded()?;
    let mut blocks: Vec<Block> = (0..x.vertex_count())
        .map(|v| Block {
            vertex: v,
            edges: Vec::new(),
            dim: 0,
        })
        .collect();
    for (i, e) in x.edges().iter().enumerate() {
        blocks[e.dom].edges.push(i);
    }
    for b in &mut blocks {
        b.dim = b.edges.len() * b.edges.len();
    }
    Ok(blocks)
}
