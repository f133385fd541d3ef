//! Seeded generators for graphs and module elements used by property sweeps.

use rand::Rng;

use crate::error::Result;
use crate::graph::{EdgeSpec, Graph, Multiplicity};
use crate::hilbert::{HilbertModule, ModuleElement, VertexFunction};
use crate::linalg::{CMatrix, C64};

#[derive(Debug, Clone, Copy)]
pub struct RandomGraphParams {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_mult: u64,
    /// Probability that an edge record carries `ω` multiplicity.
    pub omega_prob: f64,
}

impl Default for RandomGraphParams {
    fn default() -> Self {
        RandomGraphParams {
            max_vertices: 6,
            max_edges: 12,
            max_mult: 1,
            omega_prob: 0.0,
        }
    }
}

/// A graph on `1..=max_vertices` vertices with `0..=max_edges` records.
///
/// Vertex and edge ids are zero-padded so that the canonical order matches creation order.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, params: &RandomGraphParams) -> Graph {
    let nv = rng.gen_range(1..=params.max_vertices.max(1));
    let ne = rng.gen_range(0..=params.max_edges);
    let vertices: Vec<String> = (0..nv).map(|i| format!("v{i:02}")).collect();
    let edges: Vec<EdgeSpec> = (0..ne)
        .map(|i| {
            let mult = if params.omega_prob > 0.0 && rng.gen_bool(params.omega_prob) {
                Multiplicity::Omega
            } else {
                Multiplicity::Finite(rng.gen_range(1..=params.max_mult.max(1)))
            };
            EdgeSpec::new(
                format!("e{i:02}"),
                vertices[rng.gen_range(0..nv)].clone(),
                vertices[rng.gen_range(0..nv)].clone(),
            )
            .with_mult(mult)
        })
        .collect();
    Graph::new(vertices, edges).expect("generated graph is well formed")
}

/// Real and imaginary parts uniform in `[-1, 1)`.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_element<R: Rng + ?Sized>(rng: &mut R, module: &HilbertModule) -> Result<ModuleElement> {
    module.element((0..module.dim()).map(|_| random_complex(rng)).collect())
}

pub fn random_vertex_function<R: Rng + ?Sized>(rng: &mut R, n: usize) -> VertexFunction {
    VertexFunction::new((0..n).map(|_| random_complex(rng)).collect())
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| random_complex(rng))
}

/// A random unitary from the QR factorisation of a random complex matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    random_matrix(rng, n, n).qr().q()
}
