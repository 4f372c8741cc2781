//! Problem description: operator order, right-hand sides, prescribed jet,
//! and homogeneous seed.

use std::collections::BTreeMap;

use crate::error::CoreError;
use crate::expr::{eval, Env, Expr, Var};
use crate::jet::PolyMap;
use crate::C64;

/// The system `∂^μ∂̄^ν u = a(z, u, D¹u, …, D^{m-1}u)` with `∂^i∂̄^j u(0) = c_{i,j}`.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub m: usize,
    pub mu: usize,
    pub nu: usize,
    pub n_components: usize,
    /// Hölder exponent in (0, 1).
    pub alpha: f64,
    /// One expression per component.
    pub rhs: Vec<Expr>,
    /// Prescribed jet at the origin: (i, j) → value per component, i + j ≤ m-1.
    pub initial_jet: BTreeMap<(usize, usize), Vec<C64>>,
    /// Homogeneous degree-m seed ψ with vanishing (μ, ν) coefficient.
    pub psi: PolyMap,
    /// Permits right-hand sides referencing full-order derivatives
    /// (i + j = m). Such systems sit outside the contraction framework;
    /// the flag exists for the non-contraction demonstration and is off by
    /// default.
    pub allow_order_m_rhs: bool,
}

impl ProblemSpec {
    /// Convenience constructor for scalar problems with zero jet and zero seed.
    pub fn scalar(m: usize, mu: usize, nu: usize, alpha: f64, rhs: Expr) -> ProblemSpec {
        ProblemSpec {
            m,
            mu,
            nu,
            n_components: 1,
            alpha,
            rhs: vec![rhs],
            initial_jet: BTreeMap::new(),
            psi: PolyMap::zero(1),
            allow_order_m_rhs: false,
        }
    }

    pub fn with_psi(mut self, psi: PolyMap) -> ProblemSpec {
        self.psi = psi;
        self
    }

    pub fn with_initial_value(mut self, i: usize, j: usize, values: Vec<C64>) -> ProblemSpec {
        self.initial_jet.insert((i, j), values);
        self
    }

    pub fn validate(&self) -> Result<(), CoreError> {
        if self.m < 1 || self.mu + self.nu != self.m {
            return Err(CoreError::InvalidProblem(format!(
                "need mu + nu = m ≥ 1, got mu={} nu={} m={}",
                self.mu, self.nu, self.m
            )));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(CoreError::InvalidProblem(format!(
                "alpha must lie in (0,1), got {}",
                self.alpha
            )));
        }
        if self.n_components == 0 || self.rhs.len() != self.n_components {
            return Err(CoreError::InvalidProblem(format!(
                "need one rhs expression per component: n={}, rhs count={}",
                self.n_components,
                self.rhs.len()
            )));
        }
        let max_order = if self.allow_order_m_rhs {
            self.m
        } else {
            self.m - 1
        };
        for (ci, e) in self.rhs.iter().enumerate() {
            for v in e.free_vars() {
                if let Var::Deriv { comp, dz, dzbar } = v {
                    if comp >= self.n_components {
                        return Err(CoreError::InvalidProblem(format!(
                            "rhs[{ci}] references component {comp}, but n = {}",
                            self.n_components
                        )));
                    }
                    if dz + dzbar > max_order {
                        return Err(CoreError::InvalidProblem(format!(
                            "rhs[{ci}] references derivative d({comp},{dz},{dzbar}) of order {} > {max_order}",
                            dz + dzbar
                        )));
                    }
                }
            }
        }
        for ((i, j), vals) in &self.initial_jet {
            if i + j > self.m - 1 {
                return Err(CoreError::InvalidProblem(format!(
                    "initial jet entry ({i},{j}) has order {} > m-1 = {}",
                    i + j,
                    self.m - 1
                )));
            }
            if vals.len() != self.n_components {
                return Err(CoreError::InvalidProblem(format!(
                    "initial jet entry ({i},{j}) has {} values, expected {}",
                    vals.len(),
                    self.n_components
                )));
            }
        }
        if self.psi.n_components != self.n_components {
            return Err(CoreError::InvalidProblem(
                "psi component count mismatch".into(),
            ));
        }
        if !self.psi.is_homogeneous(self.m) {
            return Err(CoreError::InvalidProblem(format!(
                "psi must be homogeneous of degree m = {}",
                self.m
            )));
        }
        // ψ seeds the fixed-point map but must not alter the equation:
        // ∂^μ∂̄^ν ψ has to vanish, i.e. the z^μ z̄^ν coefficient is zero.
        for comp in 0..self.n_components {
            if self.psi.coeff(self.mu, self.nu, comp) != C64::new(0.0, 0.0) {
                return Err(CoreError::InvalidProblem(format!(
                    "psi component {comp} has a nonzero z^{} z̄^{} coefficient; \
                     the seed must satisfy ∂^μ∂̄^ν ψ = 0",
                    self.mu, self.nu
                )));
            }
        }
        Ok(())
    }

    /// True when every prescribed jet value is zero.
    pub fn has_zero_initial_jet(&self) -> bool {
        self.initial_jet
            .values()
            .all(|v| v.iter().all(|c| *c == C64::new(0.0, 0.0)))
    }

    /// |a(0)| = max over components of the RHS at the origin with zero jet
    /// arguments.
    pub fn rhs_at_zero(&self) -> Result<Vec<C64>, CoreError> {
        let mut env = Env::z_only(C64::new(0.0, 0.0));
        for e in &self.rhs {
            for v in e.free_vars() {
                if let Var::Deriv { comp, dz, dzbar } = v {
                    env.set(comp, dz, dzbar, C64::new(0.0, 0.0));
                }
            }
        }
        let mut out = Vec::with_capacity(self.n_components);
        for e in &self.rhs {
            out.push(eval(e, &env)?);
        }
        Ok(out)
    }

    pub fn rhs_sup_at_zero(&self) -> Result<f64, CoreError> {
        Ok(self
            .rhs_at_zero()?
            .iter()
            .fold(0.0f64, |m, v| m.max(v.norm())))
    }

    /// Derivative orders the RHS actually references (0 for plain `u`).
    pub fn referenced_orders(&self) -> Vec<usize> {
        let mut orders = std::collections::BTreeSet::new();
        for e in &self.rhs {
            for v in e.free_vars() {
                if let Var::Deriv { dz, dzbar, .. } = v {
                    orders.insert(dz + dzbar);
                }
            }
        }
        orders.into_iter().collect()
    }
}
