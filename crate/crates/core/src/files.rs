//! Text graph files and JSON operator-family files.
//!
//! Graph file grammar, one record per line:
//!
//! ```text
//! # comment
//! vertex <id>
//! edge <id> <dom> <ran> [<mult>|inf]
//! ```
//!
//! Family files are JSON: `{"dim": n, "P": {vertex: matrix}, "S": {edge: matrix}}`
//! with matrices as row lists of `[re, im]` pairs. An optional `"domain"` list
//! of basis indices restricts every relation to those coordinates.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeSpec, Graph, Multiplicity};
use crate::linalg::{CMatrix, C64};
use crate::verify::OperatorFamily;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_graph_file(text: &str) -> Result<Graph> {
    let mut vertices: Vec<String> = Vec::new();
    let mut vertex_lines: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<EdgeSpec> = Vec::new();
    let mut edge_lines: HashMap<String, usize> = HashMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens: Vec<&str> = raw.split_whitespace().take_while(|t| !t.starts_with('#')).collect();
        let Some((&keyword, args)) = tokens.split_first() else {
            continue;
        };
        match keyword {
            "vertex" => {
                let [id] = args else {
                    return Err(parse_error(line, "expected `vertex <id>`"));
                };
                if vertex_lines.insert(id.to_string(), line).is_some() {
                    return Err(parse_error(line, format!("duplicate vertex id `{id}`")));
                }
                vertices.push(id.to_string());
            }
            "edge" => {
                let (id, dom, ran, mult) = match args {
                    [id, dom, ran] => (id, dom, ran, Multiplicity::Finite(1)),
                    [id, dom, ran, m] => {
                        let mult = match *m {
                            "inf" => Multiplicity::Omega,
                            m => match m.parse::<u64>() {
                                Ok(0) => return Err(parse_error(line, format!("edge `{id}` has zero multiplicity"))),
                                Ok(k) => Multiplicity::Finite(k),
                                Err(_) => return Err(parse_error(line, format!("bad multiplicity `{m}`"))),
                            },
                        };
                        (id, dom, ran, mult)
                    }
                    _ => return Err(parse_error(line, "expected `edge <id> <dom> <ran> [<mult>|inf]`")),
                };
                if edge_lines.insert(id.to_string(), line).is_some() {
                    return Err(parse_error(line, format!("duplicate edge id `{id}`")));
                }
                edges.push(EdgeSpec::new(*id, *dom, *ran).with_mult(mult));
            }
            other => return Err(parse_error(line, format!("unknown record `{other}`"))),
        }
    }

    Graph::new(vertices, edges).map_err(|e| {
        let line = match &e {
            Error::UndeclaredVertex { edge, .. } | Error::ZeroMultiplicity(edge) => edge_lines.get(edge).copied(),
            Error::MalformedId(id) => vertex_lines.get(id).or_else(|| edge_lines.get(id)).copied(),
            _ => None,
        };
        match line {
            Some(line) => parse_error(line, e.to_string()),
            None => e,
        }
    })
}

/// Canonical text form: vertices, then edges, in canonical order.
pub fn write_graph_file(g: &Graph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        let _ = writeln!(out, "vertex {v}");
    }
    for e in g.edge_specs() {
        match e.mult {
            Multiplicity::Finite(1) => {
                let _ = writeln!(out, "edge {} {} {}", e.id, e.dom, e.ran);
            }
            m => {
                let _ = writeln!(out, "edge {} {} {} {m}", e.id, e.dom, e.ran);
            }
        }
    }
    out
}

type JsonMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Serialize, Deserialize)]
struct FamilyFile {
    dim: usize,
    #[serde(rename = "P")]
    p: BTreeMap<String, JsonMatrix>,
    #[serde(rename = "S")]
    s: BTreeMap<String, JsonMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    domain: Option<Vec<usize>>,
}

fn to_matrix(id: &str, rows: &JsonMatrix, dim: usize) -> Result<CMatrix> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::FamilyFormat(format!("matrix for `{id}` is not {dim}x{dim}")));
    }
    Ok(CMatrix::from_fn(dim, dim, |i, j| C64::new(rows[i][j][0], rows[i][j][1])))
}

fn from_matrix(m: &CMatrix) -> JsonMatrix {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
}

pub fn parse_family_file(g: &Graph, text: &str) -> Result<OperatorFamily> {
    let file: FamilyFile = serde_json::from_str(text).map_err(|e| Error::FamilyFormat(e.to_string()))?;
    let convert = |map: &BTreeMap<String, JsonMatrix>| -> Result<BTreeMap<String, CMatrix>> {
        map.iter().map(|(k, m)| Ok((k.clone(), to_matrix(k, m, file.dim)?))).collect()
    };
    let fam = OperatorFamily::new(g, file.dim, convert(&file.p)?, convert(&file.s)?)?;
    match file.domain {
        None => Ok(fam),
        Some(idx) => {
            let mut keep = vec![false; file.dim];
            for i in idx {
                *keep
                    .get_mut(i)
                    .ok_or_else(|| Error::FamilyFormat(format!("domain index {i} out of range")))? = true;
            }
            fam.with_domain(keep)
        }
    }
}

pub fn write_family_file(fam: &OperatorFamily) -> String {
    let g = fam.graph();
    let file = FamilyFile {
        dim: fam.dim(),
        p: g.vertices().iter().cloned().zip(fam.p().iter().map(from_matrix)).collect(),
        s: g.edges().iter().map(|e| e.id.clone()).zip(fam.s().iter().map(from_matrix)).collect(),
        domain: fam
            .domain()
            .map(|keep| keep.iter().enumerate().filter(|(_, k)| **k).map(|(i, _)| i).collect()),
    };
    serde_json::to_string(&file).expect("family serializes")
}
