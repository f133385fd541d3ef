#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tgraph_core::random::{random_graph, RandomGraphParams};
use tgraph_core::{Correspondence, EdgeSpec, Graph, Multiplicity};

pub fn ids(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One vertex with `n` loops.
pub fn bouquet(n: usize) -> Graph {
    let edges = (0..n).map(|i| EdgeSpec::new(format!("e{i}"), "v", "v"));
    Graph::new(ids(&["v"]), edges).unwrap()
}

/// Vertices `x0 … x{n-1}`, edges `c{k}: x{k} → x{k+1 mod n}`.
pub fn cycle(n: usize) -> Graph {
    let vs: Vec<String> = (0..n).map(|k| format!("x{k}")).collect();
    let edges = (0..n).map(|k| EdgeSpec::new(format!("c{k}"), vs[k].clone(), vs[(k + 1) % n].clone()));
    Graph::new(vs.clone(), edges).unwrap()
}

/// Graph of a permutation given in image form.
pub fn permutation_graph(images: &[usize]) -> Graph {
    let pts: Vec<String> = (0..images.len()).map(|i| format!("p{i}")).collect();
    let sigma: BTreeMap<String, String> = images.iter().enumerate().map(|(i, &j)| (pts[i].clone(), pts[j].clone())).collect();
    Graph::from_dynamical_system(pts.clone(), &sigma).unwrap()
}

pub fn seeded_graph(seed: u64, params: &RandomGraphParams) -> Graph {
    random_graph(&mut rng(seed), params)
}

/// Random graphs built from explicit edge lists, for shrinking.
pub fn graph_strategy(max_vertices: usize, max_edges: usize, max_mult: u64, omega: bool) -> impl Strategy<Value = Graph> {
    (1..=max_vertices).prop_flat_map(move |nv| {
        let mult = if omega {
            prop_oneof![9 => (1..=max_mult).prop_map(Some), 1 => Just(None)].boxed()
        } else {
            (1..=max_mult).prop_map(Some).boxed()
        };
        prop::collection::vec((0..nv, 0..nv, mult), 0..=max_edges).prop_map(move |es| {
            let vs: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
            let edges = es.into_iter().enumerate().map(|(i, (d, r, m))| {
                EdgeSpec::new(format!("e{i:02}"), vs[d].clone(), vs[r].clone())
                    .with_mult(m.map_or(Multiplicity::Omega, Multiplicity::Finite))
            });
            Graph::new(vs.clone(), edges).unwrap()
        })
    })
}

/// `(dom id, ran id, mult)` triples, sorted: a correspondence up to renaming edges.
pub fn shape(c: &Correspondence) -> Vec<(String, String, Multiplicity)> {
    let mut out: Vec<_> = c
        .edges()
        .iter()
        .map(|e| (c.dom_vertices()[e.dom].clone(), c.ran_vertices()[e.ran].clone(), e.mult))
        .collect();
    out.sort_by(|a, b| (&a.0, &a.1, a.2.to_string()).cmp(&(&b.0, &b.1, b.2.to_string())));
    out
}

// ---- oracles ----

/// `A[d][r]` = number of edges `d → r`, read off the edge records.
pub fn adjacency_oracle(g: &Graph) -> Vec<Vec<u128>> {
    let n = g.vertex_count();
    let mut a = vec![vec![0u128; n]; n];
    for e in g.edge_specs() {
        let d = g.vertices().iter().position(|v| *v == e.dom).unwrap();
        let r = g.vertices().iter().position(|v| *v == e.ran).unwrap();
        match e.mult {
            Multiplicity::Finite(k) => a[d][r] += k as u128,
            Multiplicity::Omega => panic!("infinite edge"),
        }
    }
    a
}

/// Sum of the entries of `Aⁿ` (`A⁰ = I`).
pub fn path_count_oracle(g: &Graph, n: usize) -> u128 {
    let a = adjacency_oracle(g);
    let k = a.len();
    let mut p: Vec<Vec<u128>> = (0..k).map(|i| (0..k).map(|j| u128::from(i == j)).collect()).collect();
    for _ in 0..n {
        p = (0..k)
            .map(|i| (0..k).map(|j| (0..k).map(|l| p[i][l] * a[l][j]).sum()).collect())
            .collect();
    }
    p.iter().flatten().sum()
}

/// Enumerates every cycle of length ≤ |E⁰| through distinct vertices and asks
/// whether some vertex on it receives an edge other than the cycle edge.
pub fn has_loop_without_entrance_oracle(g: &Graph) -> bool {
    let specs = g.edge_specs();
    let nv = g.vertex_count();
    let idx = |id: &str| g.vertices().iter().position(|v| v == id).unwrap();
    // in-degree counted with multiplicity; ω as "many"
    let mut received = vec![0u64; nv];
    for e in &specs {
        received[idx(&e.ran)] += match e.mult {
            Multiplicity::Finite(k) => k,
            Multiplicity::Omega => 2,
        };
    }
    let edges: Vec<(usize, usize)> = specs.iter().map(|e| (idx(&e.dom), idx(&e.ran))).collect();

    fn extend(
        start: usize,
        at: usize,
        visited: &mut Vec<usize>,
        edges: &[(usize, usize)],
        received: &[u64],
        limit: usize,
    ) -> bool {
        for &(d, r) in edges {
            if d != at {
                continue;
            }
            if r == start {
                // closed; every vertex on it receives exactly one edge?
                if visited.iter().all(|&v| received[v] == 1) {
                    return true;
                }
                continue;
            }
            if visited.contains(&r) || visited.len() >= limit {
                continue;
            }
            visited.push(r);
            if extend(start, r, visited, edges, received, limit) {
                return true;
            }
            visited.pop();
        }
        false
    }

    (0..nv).any(|s| extend(s, s, &mut vec![s], &edges, &received, nv))
}

/// All walks (as edge index lists, first edge first) of exactly `len` edges in a simple graph.
pub fn walks(g: &Graph, len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..g.edges().len()).map(|i| vec![i]).collect();
    for _ in 1..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                let end = g.edges()[*w.last().unwrap()].ran;
                g.edges()
                    .iter()
                    .enumerate()
                    .filter(move |(_, e)| e.dom == end)
                    .map(move |(i, _)| {
                        let mut w = w.clone();
                        w.push(i);
                        w
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    if len == 0 {
        out.clear();
    }
    out
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    // cofactor expansion; sizes here stay small
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinant divisors: `D_k` = gcd of all k×k minors, `d_k = D_k / D_{k-1}`.
pub fn invariant_factors_oracle(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push((&g / &prev).abs());
        prev = g;
    }
    out
}
