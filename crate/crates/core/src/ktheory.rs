//! K-groups of the graph algebra from the integer matrix `Δ`.
//!
//! `Δ: Z^{E⁰_rg} → Z^{E⁰}` sends `δ_v` to `δ_v − Σ_{e∈r⁻¹(v)} δ_{d(e)}`.
//! `K₀ = coker Δ` and `K₁ = ker Δ`, both read off a Smith normal form
//! computed over arbitrary-precision integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::graph::Graph;

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.cols.max(1)).take(self.rows).map(<[BigInt]>::to_vec).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Panics on incompatible shapes.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.at(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination; `None` if not square.
    pub fn determinant(&self) -> Option<BigInt> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return Some(BigInt::zero());
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Some(sign * a.get(n - 1, n - 1))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += c · row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * c;
            *self.at(dst, j) += v;
        }
    }

    /// col[dst] += c · col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * c;
            *self.at(i, dst) += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

/// `U·M·V = S` with `S` diagonal, `d₁ | d₂ | … | d_r` positive, `U`, `V` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SnfResult {
    /// The nonzero diagonal entries `d₁, …, d_r`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Recomputes `U·M·V`, the diagonal shape, the divisibility chain and `|det U| = |det V| = 1`.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        if self.u.mul(m).mul(&self.v) != self.s {
            return false;
        }
        for i in 0..self.s.rows() {
            for j in 0..self.s.cols() {
                let x = self.s.get(i, j);
                let diagonal_ok = if i == j && i < self.rank { x.is_positive() } else { x.is_zero() };
                if !diagonal_ok {
                    return false;
                }
            }
        }
        let d = self.diagonal();
        if d.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return false;
        }
        let unimodular = |x: &IntMatrix| x.determinant().is_some_and(|det| det.abs().is_one());
        unimodular(&self.u) && unimodular(&self.v)
    }
}

/// Smith normal form with smallest-absolute-value pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut rank = 0;

    for t in 0..rows.min(cols) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = s.get(i, j);
                    if !x.is_zero() && pivot.is_none_or(|(pi, pj)| x.abs() < s.get(pi, pj).abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(s, u, v, rank);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = s.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                let q = s.get(i, t) / &p;
                if !q.is_zero() {
                    s.add_row(i, t, &-&q);
                    u.add_row(i, t, &-&q);
                }
                dirty |= !s.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = s.get(t, j) / &p;
                if !q.is_zero() {
                    s.add_col(j, t, &-&q);
                    v.add_col(j, t, &-&q);
                }
                dirty |= !s.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            // pivot must divide the remaining block
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s.get(i, j).is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    s.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        rank += 1;
    }
    finish(s, u, v, rank)
}

fn finish(s: IntMatrix, u: IntMatrix, v: IntMatrix, rank: usize) -> SnfResult {
    SnfResult { s, u, v, rank }
}

/// `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with `2 ≤ d₁ | d₂ | …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroupPresentation {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl AbelianGroupPresentation {
    pub fn free(rank: usize) -> Self {
        AbelianGroupPresentation {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Factors as `u64` where they fit.
    pub fn factors_u64(&self) -> Option<Vec<u64>> {
        self.invariant_factors.iter().map(ToPrimitive::to_u64).collect()
    }
}

impl fmt::Display for AbelianGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        f.write_str(&parts.join(" + "))
    }
}

impl Serialize for AbelianGroupPresentation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("AbelianGroupPresentation", 2)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        // integers when they fit, decimal strings otherwise
        let factors: Vec<serde_json::Value> = self
            .invariant_factors
            .iter()
            .map(|d| match d.to_u64() {
                Some(x) => serde_json::Value::from(x),
                None => serde_json::Value::from(d.to_string()),
            })
            .collect();
        st.serialize_field("invariant_factors", &factors)?;
        st.end()
    }
}

/// `Δ` with rows indexed by `E⁰` and columns by `E⁰_rg`, both in canonical order.
pub fn delta_matrix(g: &Graph) -> IntMatrix {
    let rg = g.classify_vertices().rg;
    let mut m = IntMatrix::zeros(g.vertex_count(), rg.len());
    for (col, &v) in rg.iter().enumerate() {
        *m.at(v, col) += 1;
        for e in g.edges().iter().filter(|e| e.ran == v) {
            let mult = e.mult.finite().expect("regular vertices receive finitely many edges");
            *m.at(e.dom, col) -= mult;
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KGroups {
    pub k0: AbelianGroupPresentation,
    pub k1: AbelianGroupPresentation,
    /// A basis of `ker Δ ⊆ Z^{E⁰_rg}`.
    pub k1_generators: Vec<Vec<BigInt>>,
    pub delta: IntMatrix,
    pub snf: SnfResult,
}

pub fn k_groups(g: &Graph) -> KGroups {
    let delta = delta_matrix(g);
    let snf = smith_normal_form(&delta);
    let one = BigInt::one();
    let k0 = AbelianGroupPresentation {
        free_rank: delta.rows() - snf.rank,
        invariant_factors: snf.diagonal().into_iter().filter(|d| *d > one).collect(),
    };
    let k1 = AbelianGroupPresentation::free(delta.cols() - snf.rank);
    let k1_generators = (snf.rank..delta.cols()).map(|j| snf.v.column(j)).collect();
    KGroups {
        k0,
        k1,
        k1_generators,
        delta,
        snf,
    }
}
