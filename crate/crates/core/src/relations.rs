//! Randomised relation suite for the truncated Fock representation.
//!
//! Every residual is the Frobenius norm of `lhs − rhs`, which bounds the
//! operator norm from above. Relations involving the adjoint of a creation
//! operator are compressed to the domain levels that stay below depth `N`.

use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::fock::{FockBasis, FockOperator};
use crate::hilbert::{HilbertModule, ModuleOperator, VertexFunction};
use crate::linalg::ZERO;
use crate::random::{random_complex, random_element, random_vertex_function};

#[derive(Debug, Clone, Serialize)]
pub struct RelationResidual {
    pub name: String,
    pub residual: f64,
    pub samples: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationSuite {
    pub depth: usize,
    pub dim: usize,
    pub tolerance: f64,
    pub relations: Vec<RelationResidual>,
    pub pass: bool,
}

#[derive(Default)]
struct Tally {
    entries: Vec<(String, f64, usize)>,
}

impl Tally {
    fn record(&mut self, name: &str, residual: f64) {
        match self.entries.iter_mut().find(|(n, _, _)| n == name) {
            Some(entry) => {
                entry.1 = entry.1.max(residual);
                entry.2 += 1;
            }
            None => self.entries.push((name.to_string(), residual, 1)),
        }
    }

    fn ensure(&mut self, name: &str) {
        if !self.entries.iter().any(|(n, _, _)| n == name) {
            self.entries.push((name.to_string(), 0.0, 0));
        }
    }
}

fn diff(a: &FockOperator, b: &FockOperator) -> f64 {
    (a - b).frobenius()
}

fn random_compact<R: Rng + ?Sized>(rng: &mut R, module: &HilbertModule) -> Result<ModuleOperator> {
    let a = module.theta(&random_element(rng, module)?, &random_element(rng, module)?)?;
    let b = module.theta(&random_element(rng, module)?, &random_element(rng, module)?)?;
    module.operator(a.matrix() + b.matrix())
}

/// Runs every Toeplitz-pair and `Tⁿ`/`Φⁿ` identity once per admissible level combination.
pub fn run_relation_suite<R: Rng + ?Sized>(basis: &FockBasis, rng: &mut R, tol: f64) -> Result<RelationSuite> {
    let depth = basis.depth();
    let nv = basis.graph().vertex_count();
    let modules: Vec<HilbertModule> = (0..=depth).map(|n| basis.module(n)).collect::<Result<_>>()?;
    let mut t = Tally::default();
    for name in [
        "toeplitz_i",
        "toeplitz_ii",
        "tn_i_product",
        "tn_ii_inner_product",
        "tn_iii_left_action",
        "tn_iv_phi_left_action",
        "tn_v_phi_creation",
        "phi_theta",
        "contraction",
        "ck_defect",
        "expectation_monomials",
    ] {
        t.ensure(name);
    }

    if depth >= 1 {
        let m1 = &modules[1];
        let xi = random_element(rng, m1)?;
        let eta = random_element(rng, m1)?;
        let f = random_vertex_function(rng, nv);
        let lhs = &basis.sigma1(&xi)?.adjoint() * &basis.sigma1(&eta)?;
        let rhs = basis.sigma0(&m1.inner_product(&xi, &eta)?);
        t.record("toeplitz_i", basis.compress(&(&lhs - &rhs), depth - 1).frobenius());
        let lhs = &basis.sigma0(&f) * &basis.sigma1(&xi)?;
        let rhs = basis.sigma1(&m1.apply(&m1.pi_r(&f), &xi)?)?;
        t.record("toeplitz_ii", diff(&lhs, &rhs));
    }

    for n in 1..=depth {
        let mn = &modules[n];
        let xi = random_element(rng, mn)?;
        let zeta = random_element(rng, mn)?;
        let f = random_vertex_function(rng, nv);
        let x = random_compact(rng, mn)?;
        let t_xi = basis.t_n(&xi)?;
        let t_zeta = basis.t_n(&zeta)?;

        let lhs = &t_zeta.adjoint() * &t_xi;
        let rhs = basis.sigma0(&mn.inner_product(&zeta, &xi)?);
        t.record("tn_ii_inner_product", basis.compress(&(&lhs - &rhs), depth - n).frobenius());

        let pi = mn.pi_r(&f);
        let lhs = &basis.sigma0(&f) * &t_xi;
        let rhs = basis.t_n(&mn.apply(&pi, &xi)?)?;
        t.record("tn_iii_left_action", diff(&lhs, &rhs));

        let phi_x = basis.phi_n(&x)?;
        let lhs = &basis.sigma0(&f) * &phi_x;
        let rhs = basis.phi_n(&pi.compose(&x)?)?;
        t.record("tn_iv_phi_left_action", diff(&lhs, &rhs));

        let lhs = &phi_x * &t_xi;
        let rhs = basis.t_n(&mn.apply(&x, &xi)?)?;
        t.record("tn_v_phi_creation", diff(&lhs, &rhs));

        let lhs = basis.phi_n(&mn.theta(&xi, &zeta)?)?;
        let rhs = &t_xi * &t_zeta.adjoint();
        t.record("phi_theta", diff(&lhs, &rhs));

        for m in 1..=depth - n {
            let eta = random_element(rng, &modules[m])?;
            let lhs = &t_xi * &basis.t_n(&eta)?;
            let rhs = basis.t_n(&basis.tensor(&xi, &eta)?)?;
            t.record("tn_i_product", diff(&lhs, &rhs));
        }
        for m in n + 1..=depth {
            let eta = random_element(rng, &modules[m])?;
            let lhs = &t_xi.adjoint() * &basis.t_n(&eta)?;
            let rhs = basis.t_n(&basis.contract(&xi, &eta)?)?;
            t.record("contraction", basis.compress(&(&lhs - &rhs), depth - m).frobenius());
        }
    }

    let classes = basis.graph().classify_vertices();
    let mut f = VertexFunction::new(vec![ZERO; nv]);
    if !classes.rg.is_empty() {
        let values = (0..nv)
            .map(|v| if classes.is_regular(v) { random_complex(rng) } else { ZERO })
            .collect();
        f = VertexFunction::new(values);
    }
    let check = basis.ck_defect_check(&f)?;
    t.record("ck_defect", if check.higher_levels_zero { check.residual } else { f64::INFINITY });

    let monomials: Vec<FockOperator> = (0..=depth)
        .map(|n| basis.t_n(&random_element(rng, &modules[n])?))
        .collect::<Result<_>>()?;
    for (n, a) in monomials.iter().enumerate() {
        for (m, b) in monomials.iter().enumerate() {
            let mono = a * &b.adjoint();
            let psi = basis.conditional_expectation(&mono);
            let want = if n == m { mono } else { basis.zero() };
            t.record("expectation_monomials", diff(&psi, &want));
        }
    }

    let relations: Vec<RelationResidual> = t
        .entries
        .into_iter()
        .map(|(name, residual, samples)| RelationResidual {
            pass: residual <= tol,
            name,
            residual,
            samples,
        })
        .collect();
    Ok(RelationSuite {
        depth,
        dim: basis.dim(),
        tolerance: tol,
        pass: relations.iter().all(|r| r.pass),
        relations,
    })
}
