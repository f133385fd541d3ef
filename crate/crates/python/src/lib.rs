//! Python bindings: `import tgraph`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde::Serialize;
use serde_json::Value;

use tgraph_core::files::{parse_family_file, parse_graph_file, write_family_file, write_graph_file};
use tgraph_core::fock::{FockBasis, DEFAULT_MAX_DIM};
use tgraph_core::report::{generate_report, Command, ReportOptions};
use tgraph_core::{
    cycles_without_entrances, find_non_returning_path, is_topologically_free, path_space, smith_normal_form,
    verify_ck_family, verify_toeplitz_family, EdgeSpec, IntMatrix, Multiplicity, OperatorFamily,
};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any().unbind(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any().unbind(),
            (_, Some(u)) => u.into_pyobject(py)?.into_any().unbind(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any().unbind(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any().unbind(),
        Value::Array(xs) => {
            let list = PyList::empty(py);
            for x in xs {
                list.append(to_py(py, x)?)?;
            }
            list.into_any().unbind()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, x) in map {
                dict.set_item(k, to_py(py, x)?)?;
            }
            dict.into_any().unbind()
        }
    })
}

fn serialized<T: Serialize>(py: Python<'_>, x: &T) -> PyResult<Py<PyAny>> {
    to_py(py, &serde_json::to_value(x).map_err(err)?)
}

fn parse_mult(m: &Bound<'_, PyAny>) -> PyResult<Multiplicity> {
    if let Ok(s) = m.extract::<String>() {
        return match s.as_str() {
            "inf" => Ok(Multiplicity::Omega),
            _ => Err(PyValueError::new_err(format!("bad multiplicity `{s}`"))),
        };
    }
    Ok(Multiplicity::Finite(m.extract::<u64>()?))
}

/// A finite discrete topological graph.
///
/// `Graph(vertices, edges)` where each edge is `(id, dom, ran)` or
/// `(id, dom, ran, mult)` with `mult` a positive int or `"inf"`.
#[pyclass(name = "Graph", module = "tgraph", frozen)]
struct PyGraph {
    inner: tgraph_core::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(vertices: Vec<String>, edges: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let mut specs = Vec::new();
        for e in edges {
            let n = e.len()?;
            if n != 3 && n != 4 {
                return Err(PyValueError::new_err("edges are (id, dom, ran[, mult])"));
            }
            let mut spec = EdgeSpec::new(
                e.get_item(0)?.extract::<String>()?,
                e.get_item(1)?.extract::<String>()?,
                e.get_item(2)?.extract::<String>()?,
            );
            if n == 4 {
                spec = spec.with_mult(parse_mult(&e.get_item(3)?)?);
            }
            specs.push(spec);
        }
        Ok(PyGraph {
            inner: tgraph_core::Graph::new(vertices, specs).map_err(err)?,
        })
    }

    /// Parse the text graph format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: parse_graph_file(text).map_err(err)?,
        })
    }

    /// Graph of a map `sigma` on finitely many points.
    #[staticmethod]
    fn from_dynamical_system(points: Vec<String>, sigma: BTreeMap<String, String>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: tgraph_core::Graph::from_dynamical_system(points, &sigma).map_err(err)?,
        })
    }

    fn to_text(&self) -> String {
        write_graph_file(&self.inner)
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().to_vec()
    }

    /// Edge records as `(id, dom, ran, mult)`.
    #[getter]
    fn edges(&self, py: Python<'_>) -> PyResult<Vec<(String, String, String, Py<PyAny>)>> {
        self.inner
            .edge_specs()
            .into_iter()
            .map(|e| {
                let mult = match e.mult {
                    Multiplicity::Finite(k) => k.into_pyobject(py)?.into_any().unbind(),
                    Multiplicity::Omega => "inf".into_pyobject(py)?.into_any().unbind(),
                };
                Ok((e.id, e.dom, e.ran, mult))
            })
            .collect()
    }

    fn opposite(&self) -> Self {
        PyGraph {
            inner: self.inner.opposite(),
        }
    }

    /// Vertex classes `sce`, `fin`, `inf`, `rg`, `sg` as lists of ids.
    fn classify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let c = self.inner.classify_vertices();
        let dict = PyDict::new(py);
        for (name, idx) in [("sce", &c.sce), ("fin", &c.fin), ("inf", &c.inf), ("rg", &c.rg), ("sg", &c.sg)] {
            dict.set_item(name, self.inner.vertex_names(idx))?;
        }
        Ok(dict.into_any().unbind())
    }

    /// Condition L.
    fn is_topologically_free(&self) -> bool {
        is_topologically_free(&self.inner)
    }

    /// Loops without entrances as edge-id lists, `e_1` first.
    fn loops_without_entrances(&self) -> Vec<Vec<String>> {
        cycles_without_entrances(&self.inner)
            .iter()
            .map(|l| l.path().edge_ids(&self.inner))
            .collect()
    }

    /// Shortest non-returning path of length at least `n` ending in `targets`.
    fn find_non_returning_path(&self, targets: Vec<String>, n: usize) -> PyResult<Option<Vec<String>>> {
        let idx = targets
            .iter()
            .map(|t| {
                self.inner
                    .vertex_index(t)
                    .ok_or_else(|| PyValueError::new_err(format!("unknown vertex `{t}`")))
            })
            .collect::<PyResult<Vec<_>>>()?;
        let x = self.inner.expanded().map_err(err)?;
        Ok(find_non_returning_path(&self.inner, &idx, n)
            .map_err(err)?
            .map(|p| p.edge_ids(&x)))
    }

    /// `|Eⁿ|` for `n = 0..=depth`.
    fn path_counts(&self, depth: usize) -> PyResult<Vec<usize>> {
        (0..=depth).map(|n| Ok(path_space(&self.inner, n).map_err(err)?.len())).collect()
    }

    /// Labels of the paths of level `n` in canonical order.
    fn paths(&self, n: usize) -> PyResult<Vec<String>> {
        let x = self.inner.expanded().map_err(err)?;
        Ok(path_space(&self.inner, n).map_err(err)?.iter().map(|p| p.label(&x)).collect())
    }

    /// `K₀`, `K₁` and the matrix `Δ`.
    fn k_groups(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let r = generate_report(Command::Ktheory, &self.inner, &ReportOptions::default()).map_err(err)?;
        serialized(py, &r.k_theory)
    }

    /// Relation residuals of the truncated Fock representation.
    #[pyo3(signature = (depth = 4, tol = 1e-9, seed = 0, max_dim = DEFAULT_MAX_DIM))]
    fn fock_suite(&self, py: Python<'_>, depth: usize, tol: f64, seed: u64, max_dim: usize) -> PyResult<Py<PyAny>> {
        let opts = ReportOptions {
            depth,
            tol,
            max_dim,
            seed,
            family: None,
        };
        let r = generate_report(Command::Fock, &self.inner, &opts).map_err(err)?;
        serialized(py, &r.fock)
    }

    /// The truncated Fock family, valid on levels below `depth`.
    #[pyo3(signature = (depth, max_dim = DEFAULT_MAX_DIM))]
    fn fock_family(&self, depth: usize, max_dim: usize) -> PyResult<PyFamily> {
        let basis = FockBasis::with_cap(&self.inner, depth, max_dim).map_err(err)?;
        Ok(PyFamily {
            inner: OperatorFamily::from_fock(&basis).map_err(err)?,
        })
    }

    /// Full `analyze` report as a dict.
    fn analyze(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let r = generate_report(Command::Analyze, &self.inner, &ReportOptions::default()).map_err(err)?;
        serialized(py, &r)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({} vertices, {} edges)",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// Operators `P_v`, `S_e` on a finite-dimensional space.
#[pyclass(name = "Family", module = "tgraph", frozen)]
struct PyFamily {
    inner: OperatorFamily,
}

#[pymethods]
impl PyFamily {
    /// Parse a JSON family file for `graph`.
    #[staticmethod]
    fn parse(graph: &PyGraph, text: &str) -> PyResult<Self> {
        Ok(PyFamily {
            inner: parse_family_file(&graph.inner, text).map_err(err)?,
        })
    }

    #[staticmethod]
    fn zero(graph: &PyGraph, dim: usize) -> PyResult<Self> {
        Ok(PyFamily {
            inner: OperatorFamily::zero(&graph.inner, dim).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        write_family_file(&self.inner)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Residuals of the Toeplitz relations, plus fullness when `ck` is true.
    #[pyo3(signature = (graph, tol = 1e-9, ck = true))]
    fn check(&self, py: Python<'_>, graph: &PyGraph, tol: f64, ck: bool) -> PyResult<Py<PyAny>> {
        let r = if ck {
            verify_ck_family(&graph.inner, &self.inner, tol)
        } else {
            verify_toeplitz_family(&graph.inner, &self.inner, tol)
        }
        .map_err(err)?;
        serialized(py, &r)
    }
}

/// Invariant factors of an integer matrix, zeros included.
#[pyfunction]
fn smith_diagonal(rows: Vec<Vec<BigInt>>) -> PyResult<Vec<BigInt>> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("ragged matrix"));
    }
    Ok(smith_normal_form(&IntMatrix::from_rows(&rows)).diagonal())
}

#[pymodule]
pub fn tgraph(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyFamily>()?;
    m.add_function(wrap_pyfunction!(smith_diagonal, m)?)?;
    Ok(())
}
