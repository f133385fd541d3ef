//! Depth-`N` truncated Fock representation.
//!
//! The basis is every path of level `0..=N` in canonical order, grouped by
//! level. Operators are dense complex matrices on that basis. Creation
//! operators send level `N` to zero, so identities involving an adjoint of a
//! creation operator hold only after compressing the domain to the levels
//! that stay inside the truncation ([`FockBasis::compress`]).

use std::collections::HashMap;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Range, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hilbert::{HilbertModule, ModuleElement, ModuleOperator, VertexFunction};
use crate::linalg::{coordinate_projection, max_abs, op_norm, CMatrix, C64, ONE, ZERO};
use crate::paths::{levels_up_to, Path, PathSpace};

/// Default cap on `Σ_{n≤N} |Eⁿ|`.
pub const DEFAULT_MAX_DIM: usize = 20_000;

/// Absolute tolerance for identities that hold exactly in exact arithmetic.
pub const EXACT_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct FockBasis {
    graph: Graph,
    depth: usize,
    paths: Vec<Path>,
    offsets: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
}

impl FockBasis {
    pub fn new(g: &Graph, depth: usize) -> Result<Self> {
        FockBasis::with_cap(g, depth, DEFAULT_MAX_DIM)
    }

    pub fn with_cap(g: &Graph, depth: usize, max_dim: usize) -> Result<Self> {
        let graph = g.expanded()?;
        let levels = levels_up_to(&graph, depth, Some(max_dim))?;
        let mut offsets = Vec::with_capacity(depth + 2);
        let mut paths = Vec::new();
        for level in levels {
            offsets.push(paths.len());
            paths.extend(level);
        }
        offsets.push(paths.len());
        let index = paths
            .iter()
            .enumerate()
            .filter(|(_, p)| p.level() > 0)
            .map(|(i, p)| (p.edges().to_vec(), i))
            .collect();
        Ok(FockBasis {
            graph,
            depth,
            paths,
            offsets,
            index,
        })
    }

    /// The expanded graph that path edge indices refer to.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    /// Basis positions of level `k`.
    pub fn level_range(&self, k: usize) -> Range<usize> {
        self.offsets[k]..self.offsets[k + 1]
    }

    pub fn level_offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn level_of(&self, i: usize) -> usize {
        self.paths[i].level()
    }

    pub fn position(&self, p: &Path) -> Option<usize> {
        if p.level() == 0 {
            (p.dom() < self.graph.vertex_count()).then_some(p.dom())
        } else {
            self.index.get(p.edges()).copied()
        }
    }

    /// `C_d(Eⁿ)` for `n ≤ N`, sharing this basis's path order.
    pub fn module(&self, n: usize) -> Result<HilbertModule> {
        self.check_level(n)?;
        let paths = self.paths[self.level_range(n)].to_vec();
        Ok(HilbertModule::from_space(PathSpace::from_parts(self.graph.clone(), n, paths)))
    }

    fn check_level(&self, n: usize) -> Result<()> {
        if n > self.depth {
            return Err(Error::BadLevels(format!("level {n} exceeds truncation depth {}", self.depth)));
        }
        Ok(())
    }

    fn check_element(&self, xi: &ModuleElement) -> Result<()> {
        self.check_level(xi.level())?;
        let expected = self.level_range(xi.level()).len();
        if xi.values().len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: xi.values().len(),
            });
        }
        Ok(())
    }

    /// Position within level `p.level()`.
    fn local(&self, p: &Path) -> usize {
        self.position(p).expect("path in basis") - self.offsets[p.level()]
    }

    /// Splits a path into its leading `level − m` edges and trailing `m` edges
    /// and returns their positions within their levels.
    fn split(&self, p: &Path, m: usize) -> (usize, usize) {
        let edges = p.edges();
        let cut = m;
        let trailing = if cut == 0 {
            Path::vertex(p.dom())
        } else {
            Path::from_edges(&self.graph, edges[..cut].to_vec()).unwrap()
        };
        let leading = if cut == edges.len() {
            Path::vertex(p.ran())
        } else {
            Path::from_edges(&self.graph, edges[cut..].to_vec()).unwrap()
        };
        (self.local(&leading), self.local(&trailing))
    }

    /// Projection onto levels `0..=k`.
    pub fn projection_up_to(&self, k: usize) -> CMatrix {
        let keep: Vec<bool> = self.paths.iter().map(|p| p.level() <= k).collect();
        coordinate_projection(&keep)
    }

    /// Restricts `a` to the domain levels `0..=k` (columns of higher levels are zeroed).
    pub fn compress(&self, a: &FockOperator, k: usize) -> FockOperator {
        let mut m = a.matrix.clone();
        for (j, p) in self.paths.iter().enumerate() {
            if p.level() > k {
                m.column_mut(j).fill(ZERO);
            }
        }
        FockOperator { matrix: m }
    }

    pub fn identity(&self) -> FockOperator {
        FockOperator {
            matrix: CMatrix::identity(self.dim(), self.dim()),
        }
    }

    pub fn zero(&self) -> FockOperator {
        FockOperator {
            matrix: CMatrix::zeros(self.dim(), self.dim()),
        }
    }

    /// Wraps a matrix of matching dimension.
    pub fn operator(&self, matrix: CMatrix) -> Result<FockOperator> {
        if matrix.shape() != (self.dim(), self.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, Fock basis has dimension {}",
                matrix.nrows(),
                matrix.ncols(),
                self.dim()
            )));
        }
        Ok(FockOperator { matrix })
    }

    /// Left action: `f(rⁿ(p))` on every basis path.
    pub fn sigma0(&self, f: &VertexFunction) -> FockOperator {
        let values: Vec<C64> = self.paths.iter().map(|p| f.get(p.ran())).collect();
        FockOperator {
            matrix: crate::linalg::diag(&values),
        }
    }

    /// Creation by a level-1 element.
    pub fn sigma1(&self, xi: &ModuleElement) -> Result<FockOperator> {
        if xi.level() != 1 {
            return Err(Error::LevelMismatch {
                expected: 1,
                found: xi.level(),
            });
        }
        self.t_n(xi)
    }

    /// `Tⁿ(ξ)`: `δ_p ↦ Σ_{d(q)=r(p)} ξ(q) δ_{(q,p)}`, zero when the result would exceed depth `N`.
    pub fn t_n(&self, xi: &ModuleElement) -> Result<FockOperator> {
        self.check_element(xi)?;
        let n = xi.level();
        let leading = &self.paths[self.level_range(n)];
        let mut by_dom: Vec<Vec<usize>> = vec![Vec::new(); self.graph.vertex_count()];
        for (i, q) in leading.iter().enumerate() {
            by_dom[q.dom()].push(i);
        }
        let mut m = CMatrix::zeros(self.dim(), self.dim());
        for (j, p) in self.paths.iter().enumerate() {
            if p.level() + n > self.depth {
                continue;
            }
            for &i in &by_dom[p.ran()] {
                let target = leading[i].after(p).unwrap();
                m[(self.position(&target).unwrap(), j)] += xi.values()[i];
            }
        }
        Ok(FockOperator { matrix: m })
    }

    /// `Φⁿ(x)`: applies `x` to the leading `n` edges of every path of level ≥ `n`.
    pub fn phi_n(&self, x: &ModuleOperator) -> Result<FockOperator> {
        let n = x.level();
        self.check_level(n)?;
        let width = self.level_range(n).len();
        if x.matrix().shape() != (width, width) {
            return Err(Error::DimensionMismatch(format!("operator on level {n} must be {width}x{width}")));
        }
        let leading = &self.paths[self.level_range(n)];
        let mut m = CMatrix::zeros(self.dim(), self.dim());
        for (j, p) in self.paths.iter().enumerate() {
            if p.level() < n {
                continue;
            }
            let cut = p.level() - n;
            let trailing = if cut == 0 {
                Path::vertex(p.dom())
            } else {
                Path::from_edges(&self.graph, p.edges()[..cut].to_vec()).unwrap()
            };
            let (a, _) = self.split(p, cut);
            for (i, q) in leading.iter().enumerate() {
                let coeff = x.matrix()[(i, a)];
                if coeff == ZERO {
                    continue;
                }
                let target = q.after(&trailing).ok_or(Error::NotModuleOperator)?;
                m[(self.position(&target).unwrap(), j)] += coeff;
            }
        }
        Ok(FockOperator { matrix: m })
    }

    /// `ξ ⊗ η` on `E^{n+m}`: `(ξ⊗η)(e′,e) = ξ(e′)η(e)`.
    pub fn tensor(&self, xi: &ModuleElement, eta: &ModuleElement) -> Result<ModuleElement> {
        self.check_element(xi)?;
        self.check_element(eta)?;
        let (n, m) = (xi.level(), eta.level());
        self.check_level(n + m)?;
        let values = self.paths[self.level_range(n + m)]
            .iter()
            .map(|p| {
                let (a, b) = self.split(p, m);
                xi.values()[a] * eta.values()[b]
            })
            .collect();
        self.module(n + m)?.element(values)
    }

    /// `ζ` with `Tⁿ(ξ)*Tᵐ(η) = T^{m−n}(ζ)`: `ζ(e) = Σ_{d(e′)=r(e)} conj(ξ(e′))·η(e′,e)`.
    pub fn contract(&self, xi: &ModuleElement, eta: &ModuleElement) -> Result<ModuleElement> {
        self.check_element(xi)?;
        self.check_element(eta)?;
        let (n, m) = (xi.level(), eta.level());
        if n >= m {
            return Err(Error::BadLevels(format!("contraction needs n < m, got n = {n}, m = {m}")));
        }
        let k = m - n;
        let leading = &self.paths[self.level_range(n)];
        let values = self.paths[self.level_range(k)]
            .iter()
            .map(|e| {
                leading
                    .iter()
                    .enumerate()
                    .filter(|(_, q)| q.dom() == e.ran())
                    .map(|(i, q)| {
                        let joined = q.after(e).unwrap();
                        xi.values()[i].conj() * eta.values()[self.local(&joined)]
                    })
                    .sum()
            })
            .collect();
        self.module(k)?.element(values)
    }

    /// The defect `σ⁰(f) − Φ¹(π_r(f))` for `f` supported on regular vertices.
    pub fn ck_defect_check(&self, f: &VertexFunction) -> Result<DefectCheck> {
        let classes = self.graph.classify_vertices();
        if let Some(v) = f.support().into_iter().find(|&v| !classes.is_regular(v)) {
            return Err(Error::NotRegularSupport(self.graph.vertices()[v].clone()));
        }
        let defect = if self.depth == 0 {
            self.sigma0(f)
        } else {
            let pi = self.module(1)?.pi_r(f);
            &self.sigma0(f) - &self.phi_n(&pi)?
        };
        // θ_{ξ₀,η₀} with ξ₀ = f, η₀ = indicator of supp f, placed on level 0
        let level0 = self.module(0)?;
        let indicator: Vec<C64> = f.values().iter().map(|z| if *z == ZERO { ZERO } else { ONE }).collect();
        let theta = level0.theta(&level0.element(f.values().to_vec())?, &level0.element(indicator)?)?;
        let mut expected = CMatrix::zeros(self.dim(), self.dim());
        let r0 = self.level_range(0);
        expected.view_mut((r0.start, r0.start), (r0.len(), r0.len())).copy_from(theta.matrix());

        let residual = op_norm(&(&defect.matrix - &expected));
        let higher = self.offsets[1];
        let mut higher_levels_zero = true;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if (i >= higher || j >= higher) && defect.matrix[(i, j)] != ZERO {
                    higher_levels_zero = false;
                }
            }
        }
        Ok(DefectCheck {
            pass: residual <= EXACT_TOL && higher_levels_zero,
            defect,
            expected: FockOperator { matrix: expected },
            residual,
            higher_levels_zero,
        })
    }

    /// `U_z A U_z*` with `U_z = zⁿ` on level `n`.
    pub fn gauge_apply(&self, z: C64, a: &FockOperator) -> Result<FockOperator> {
        if (z.norm() - 1.0).abs() > EXACT_TOL {
            return Err(Error::NotUnitModulus(z.norm()));
        }
        let mut powers = Vec::with_capacity(self.depth + 1);
        let mut acc = ONE;
        for _ in 0..=self.depth {
            powers.push(acc);
            acc *= z;
        }
        let levels: Vec<usize> = self.paths.iter().map(Path::level).collect();
        let m = CMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            a.matrix[(i, j)] * powers[levels[i]] * powers[levels[j]].conj()
        });
        Ok(FockOperator { matrix: m })
    }

    /// Average of the gauge action over the `(2N+1)`-th roots of unity.
    pub fn conditional_expectation(&self, a: &FockOperator) -> FockOperator {
        let count = 2 * self.depth + 1;
        let mut sum = CMatrix::zeros(self.dim(), self.dim());
        for j in 0..count {
            let z = C64::from_polar(1.0, 2.0 * PI * j as f64 / count as f64);
            sum += self.gauge_apply(z, a).expect("root of unity").matrix;
        }
        FockOperator {
            matrix: sum / C64::new(count as f64, 0.0),
        }
    }

    /// Checks `U*U = 1` and `T⁰(f)U = U T⁰(f∘σ)` below the top level for the graph of a map `σ`.
    pub fn dyn_isometry_check(&self, tol: f64) -> Result<DynIsometryReport> {
        let sigma = self.graph.dynamical_map()?;
        if self.depth == 0 {
            return Err(Error::BadLevels("isometry check needs depth ≥ 1".into()));
        }
        let one = self.module(1)?.element(vec![ONE; self.level_range(1).len()])?;
        let u = self.sigma1(&one)?;
        let top = self.depth - 1;
        let isometry = &(&u.adjoint() * &u) - &self.identity();
        let isometry_residual = op_norm(&self.compress(&isometry, top).matrix);
        let nv = self.graph.vertex_count();
        let mut covariance_residual: f64 = 0.0;
        for x in 0..nv {
            let f = VertexFunction::delta(nv, x);
            let f_sigma = VertexFunction::new((0..nv).map(|y| f.get(sigma[y])).collect());
            let lhs = &self.sigma0(&f) * &u;
            let rhs = &u * &self.sigma0(&f_sigma);
            covariance_residual = covariance_residual.max(op_norm(&self.compress(&(&lhs - &rhs), top).matrix));
        }
        Ok(DynIsometryReport {
            isometry_residual,
            covariance_residual,
            tolerance: tol,
            pass: isometry_residual <= tol && covariance_residual <= tol,
        })
    }
}

/// An operator on the truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    matrix: CMatrix,
}

impl FockOperator {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn adjoint(&self) -> FockOperator {
        FockOperator {
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn scale(&self, c: C64) -> FockOperator {
        FockOperator {
            matrix: &self.matrix * c,
        }
    }

    pub fn norm(&self) -> f64 {
        op_norm(&self.matrix)
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.matrix)
    }

    /// Frobenius norm; bounds the operator norm from above.
    pub fn frobenius(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl<'a> Mul<&'a FockOperator> for &'a FockOperator {
    type Output = FockOperator;

    fn mul(self, rhs: &FockOperator) -> FockOperator {
        FockOperator {
            matrix: &self.matrix * &rhs.matrix,
        }
    }
}

impl<'a> Add<&'a FockOperator> for &'a FockOperator {
    type Output = FockOperator;

    fn add(self, rhs: &FockOperator) -> FockOperator {
        FockOperator {
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl<'a> Sub<&'a FockOperator> for &'a FockOperator {
    type Output = FockOperator;

    fn sub(self, rhs: &FockOperator) -> FockOperator {
        FockOperator {
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DefectCheck {
    pub defect: FockOperator,
    /// `θ_{ξ₀,η₀}` embedded on level 0.
    pub expected: FockOperator,
    pub residual: f64,
    pub higher_levels_zero: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DynIsometryReport {
    pub isometry_residual: f64,
    pub covariance_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeSpec;
    use std::collections::BTreeMap;

    fn ids(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn single_loop() -> Graph {
        Graph::new(ids(&["v"]), vec![EdgeSpec::new("e", "v", "v")]).unwrap()
    }

    fn o2() -> Graph {
        Graph::new(ids(&["v"]), vec![EdgeSpec::new("e1", "v", "v"), EdgeSpec::new("e2", "v", "v")]).unwrap()
    }

    fn edge_wv() -> Graph {
        Graph::new(ids(&["v", "w"]), vec![EdgeSpec::new("e", "w", "v")]).unwrap()
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn basis_dimensions() {
        assert_eq!(FockBasis::new(&o2(), 3).unwrap().dim(), 15);
        assert_eq!(FockBasis::new(&single_loop(), 4).unwrap().dim(), 5);
        let b = FockBasis::new(&edge_wv(), 3).unwrap();
        assert_eq!(b.dim(), 3);
        assert_eq!(b.level_offsets(), &[0, 2, 3, 3, 3]);
        assert!(matches!(FockBasis::with_cap(&o2(), 10, 100), Err(Error::DimensionCap { .. })));
    }

    #[test]
    fn sigma0_examples() {
        let b = FockBasis::new(&o2(), 3).unwrap();
        assert_eq!(b.sigma0(&VertexFunction::constant(1, ONE)), b.identity());
        assert_eq!(b.sigma0(&VertexFunction::delta(1, 0)), b.identity());
        let b = FockBasis::new(&edge_wv(), 3).unwrap();
        let s = b.sigma0(&VertexFunction::delta(2, 1));
        let mut want = CMatrix::zeros(3, 3);
        want[(1, 1)] = ONE;
        assert_eq!(s.matrix(), &want);
    }

    #[test]
    fn sigma1_single_loop_is_shift() {
        let b = FockBasis::new(&single_loop(), 2).unwrap();
        let m1 = b.module(1).unwrap();
        let s = b.sigma1(&m1.delta(0)).unwrap();
        let mut shift = CMatrix::zeros(3, 3);
        shift[(1, 0)] = ONE;
        shift[(2, 1)] = ONE;
        assert_eq!(s.matrix(), &shift);
        // the adjoint kills level 0
        assert_eq!(s.adjoint().matrix().column(0).iter().filter(|z| **z != ZERO).count(), 0);
        assert!(b.sigma1(&b.module(2).unwrap().delta(0)).is_err());
    }

    #[test]
    fn t2_of_delta_is_product() {
        let b = FockBasis::new(&o2(), 3).unwrap();
        let m1 = b.module(1).unwrap();
        let m2 = b.module(2).unwrap();
        // (e2,e1): e1 traversed first; canonical level-2 position 1
        assert_eq!(m2.paths()[1].label(b.graph()), "(e2,e1)");
        let lhs = b.t_n(&m2.delta(1)).unwrap();
        let rhs = &b.sigma1(&m1.delta(1)).unwrap() * &b.sigma1(&m1.delta(0)).unwrap();
        assert_eq!(lhs, rhs);
        assert!(b.t_n(&FockBasis::new(&o2(), 4).unwrap().module(4).unwrap().delta(0)).is_err());
    }

    #[test]
    fn phi_definitions() {
        let b = FockBasis::new(&o2(), 3).unwrap();
        let m1 = b.module(1).unwrap();
        let d = m1.delta(0);
        let lhs = b.phi_n(&m1.theta(&d, &d).unwrap()).unwrap();
        let s = b.sigma1(&d).unwrap();
        assert_eq!(lhs, &s * &s.adjoint());

        let f = VertexFunction::new(vec![c(0.5, -2.0)]);
        let m0 = b.module(0).unwrap();
        assert_eq!(b.phi_n(&m0.pi_r(&f)).unwrap(), b.sigma0(&f));
    }

    #[test]
    fn contraction_examples() {
        let b = FockBasis::new(&o2(), 3).unwrap();
        let m1 = b.module(1).unwrap();
        let m2 = b.module(2).unwrap();
        // η = δ_{(e′,e)} with e′ = e2 leading, e = e1 trailing
        let zeta = b.contract(&m1.delta(1), &m2.delta(1)).unwrap();
        assert_eq!(zeta, m1.delta(0));
        let zeta = b.contract(&m1.delta(0), &m2.delta(1)).unwrap();
        assert_eq!(zeta, m1.zero());
        assert!(b.contract(&m2.delta(0), &m1.delta(0)).is_err());
    }

    #[test]
    fn defect_examples() {
        let b = FockBasis::new(&o2(), 3).unwrap();
        let chk = b.ck_defect_check(&VertexFunction::delta(1, 0)).unwrap();
        assert!(chk.pass);
        let mut want = CMatrix::zeros(15, 15);
        want[(0, 0)] = ONE;
        assert_eq!(chk.defect.matrix(), &want);

        let chk = b.ck_defect_check(&VertexFunction::constant(1, ZERO)).unwrap();
        assert!(chk.pass);
        assert_eq!(chk.defect, b.zero());

        let b = FockBasis::new(&edge_wv(), 3).unwrap();
        let chk = b.ck_defect_check(&VertexFunction::delta(2, 0)).unwrap();
        assert!(chk.pass);
        let mut want = CMatrix::zeros(3, 3);
        want[(0, 0)] = ONE;
        assert_eq!(chk.defect.matrix(), &want);
        assert!(matches!(
            b.ck_defect_check(&VertexFunction::delta(2, 1)),
            Err(Error::NotRegularSupport(_))
        ));
    }

    #[test]
    fn gauge_examples() {
        let b = FockBasis::new(&o2(), 3).unwrap();
        let m1 = b.module(1).unwrap();
        let m2 = b.module(2).unwrap();
        let z = C64::from_polar(1.0, 0.7);
        let f = VertexFunction::new(vec![c(1.5, 0.5)]);
        let s0 = b.sigma0(&f);
        assert!((&b.gauge_apply(z, &s0).unwrap() - &s0).max_abs() < EXACT_TOL);
        let s1 = b.sigma1(&m1.element(vec![c(1.0, 2.0), c(-0.5, 0.0)]).unwrap()).unwrap();
        assert!((&b.gauge_apply(z, &s1).unwrap() - &s1.scale(z)).max_abs() < EXACT_TOL);
        let mono = &b.t_n(&m2.delta(3)).unwrap() * &b.sigma1(&m1.delta(0)).unwrap().adjoint();
        let i = c(0.0, 1.0);
        assert!((&b.gauge_apply(i, &mono).unwrap() - &mono.scale(i)).max_abs() < EXACT_TOL);
        assert!(matches!(b.gauge_apply(c(2.0, 0.0), &s0), Err(Error::NotUnitModulus(_))));
    }

    #[test]
    fn expectation_examples() {
        let b = FockBasis::new(&o2(), 3).unwrap();
        let m1 = b.module(1).unwrap();
        let s1 = b.sigma1(&m1.delta(1)).unwrap();
        assert!(b.conditional_expectation(&s1).max_abs() < EXACT_TOL);
        let s0 = b.sigma0(&VertexFunction::new(vec![c(0.3, 0.1)]));
        assert!((&b.conditional_expectation(&s0) - &s0).max_abs() < EXACT_TOL);
    }

    #[test]
    fn dynamical_isometry_examples() {
        let id: BTreeMap<_, _> = [("x".to_string(), "x".to_string())].into();
        let g = Graph::from_dynamical_system(ids(&["x"]), &id).unwrap();
        let b = FockBasis::new(&g, 3).unwrap();
        let u = b.sigma1(&b.module(1).unwrap().delta(0)).unwrap();
        let want = crate::linalg::diag(&[ONE, ONE, ONE, ZERO]);
        assert_eq!((&u.adjoint() * &u).matrix(), &want);
        assert!(b.dyn_isometry_check(EXACT_TOL).unwrap().pass);

        let swap: BTreeMap<_, _> = [("x".into(), "y".into()), ("y".into(), "x".into())].into();
        let g = Graph::from_dynamical_system(ids(&["x", "y"]), &swap).unwrap();
        assert!(FockBasis::new(&g, 3).unwrap().dyn_isometry_check(EXACT_TOL).unwrap().pass);

        let constant: BTreeMap<_, _> = [("x".into(), "x".into()), ("y".into(), "x".into())].into();
        let g = Graph::from_dynamical_system(ids(&["x", "y"]), &constant).unwrap();
        let rep = FockBasis::new(&g, 3).unwrap().dyn_isometry_check(EXACT_TOL).unwrap();
        assert!(rep.covariance_residual <= EXACT_TOL);

        assert!(matches!(
            FockBasis::new(&o2(), 2).unwrap().dyn_isometry_check(EXACT_TOL),
            Err(Error::NotDynamicalSystem(_))
        ));
    }
}
