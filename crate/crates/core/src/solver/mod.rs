//! Fixed-point machinery: the map ω, the jet-corrected map Θ, Picard
//! iteration, contraction probes, constants estimation and the
//! admissible-radius search.

mod constants;

pub use constants::{
    constants_estimate, radius_search, ConstantsEstimate, RadiusCertificate, RadiusSearchOutcome,
    RadiusSearchParams, SamplingParams,
};

use std::collections::BTreeMap;

use crate::error::CoreError;
use crate::expr::{eval, EvalEnv, Expr};
use crate::field::Field;
use crate::holder::{norm_alpha_value, norm_k_value, HolderParams};
use crate::jet::{factorial, pairs_up_to, Jet, PolyMap};
use crate::operators::{compose_t, OperatorWorkspace};
use crate::problem::ProblemSpec;
use crate::C64;

/// Iteration controls for [`picard_solve`].
#[derive(Debug, Clone, Copy)]
pub struct SolveConfig {
    pub max_iter: usize,
    pub tol_abs: f64,
    pub tol_rel: f64,
    /// Iterates whose ‖·‖^{(m)} exceeds this are declared divergent.
    pub divergence_cap: f64,
    pub holder: HolderParams,
}

impl SolveConfig {
    pub fn new(alpha: f64) -> SolveConfig {
        SolveConfig {
            max_iter: 200,
            tol_abs: 1e-8,
            tol_rel: 1e-8,
            divergence_cap: 40.0,
            holder: HolderParams::new(alpha),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Converged,
    Diverged,
    MaxIter,
}

/// Everything the iteration measured on its way to (or away from) the
/// fixed point.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub status: SolveStatus,
    /// Number of Θ applications performed.
    pub iterations: usize,
    pub iterates_kept: usize,
    /// ‖u_{N+1} − u_N‖^{(m)} per iteration.
    pub diff_norms: Vec<f64>,
    /// Successive ratios of `diff_norms`.
    pub contraction_ratios: Vec<f64>,
    /// ‖∂^μ∂̄^ν u_N − a(·, u_N, …)‖ per iteration.
    pub residual_history: Vec<f64>,
    /// Probe estimate of the Lipschitz constant of Θ near the final iterate.
    pub empirical_delta: Option<f64>,
    /// Final ‖u‖^{(m)}.
    pub final_norm: f64,
    /// Achieved jet at the origin, (i,j) → per-component values.
    pub final_jet_at_origin: BTreeMap<(usize, usize), Vec<C64>>,
    /// Failure detail for diverged runs.
    pub failure: Option<String>,
}

/// Environment view of one node of a jet, for RHS evaluation.
pub(crate) struct JetNodeEnv<'a> {
    jet: &'a Jet,
    node: usize,
    z: C64,
}

impl<'a> JetNodeEnv<'a> {
    pub fn new(jet: &'a Jet, node: usize) -> JetNodeEnv<'a> {
        JetNodeEnv {
            jet,
            node,
            z: jet.grid().node(node),
        }
    }
}

impl EvalEnv for JetNodeEnv<'_> {
    fn z(&self) -> C64 {
        self.z
    }

    fn deriv(&self, comp: usize, dz: usize, dzbar: usize) -> Option<C64> {
        if comp >= self.jet.n_components() || dz + dzbar > self.jet.order() {
            return None;
        }
        Some(self.jet.deriv(dz, dzbar).value(comp, self.node))
    }
}

/// Evaluates the right-hand side `a(z, f, D¹f, …)` pointwise from a jet of
/// the argument field.
pub fn eval_rhs(spec: &ProblemSpec, f: &Jet) -> Result<Field, CoreError> {
    let grid = f.grid().clone();
    let mut out = Field::zeros(grid.clone(), spec.n_components);
    for node in 0..grid.num_nodes() {
        let env = JetNodeEnv::new(f, node);
        for (c, e) in spec.rhs.iter().enumerate() {
            out.set(c, node, eval(e, &env)?);
        }
    }
    Ok(out)
}

/// The integral map ω(f) = T^ν T̄^μ a(·, f, D¹f, …, D^{m−1}f), returned with
/// its full order-m jet.
pub fn omega_map(ws: &OperatorWorkspace, spec: &ProblemSpec, f: &Jet) -> Result<Jet, CoreError> {
    if f.order() + 1 < spec.m {
        return Err(CoreError::JetOrder {
            have: f.order(),
            need: spec.m - 1,
        });
    }
    let h = eval_rhs(spec, f)?;
    Ok(compose_t(ws, &Jet::order0(h), spec.mu, spec.nu))
}

/// The jet-corrected map Θ(f) = ω(f) − Σ_{k+l ≤ m−1} ∂^k∂̄^l ω(f)(0)/(k!l!) ζ^k ζ̄^l.
///
/// The output jet at the origin vanishes through order m−1 by construction;
/// all derivatives come from the operator identities, never from numerical
/// differentiation.
pub fn theta_map(ws: &OperatorWorkspace, spec: &ProblemSpec, f: &Jet) -> Result<Jet, CoreError> {
    let omega = omega_map(ws, spec, f)?;
    let center = omega.grid().center_index();
    let mut corr = PolyMap::zero(spec.n_components);
    for (k, l) in pairs_up_to(spec.m - 1) {
        let coeffs: Vec<C64> = (0..spec.n_components)
            .map(|c| omega.deriv(k, l).value(c, center) / (factorial(k) * factorial(l)))
            .collect();
        corr.add_term(k, l, coeffs);
    }
    let corr_jet = corr.to_jet(omega.grid(), spec.m);
    Ok(omega.sub(&corr_jet))
}

/// ‖∂^μ∂̄^ν u − a(·, u, …)‖ in the weighted Hölder norm, using the
/// identity-computed jet of the iterate.
pub fn residual(ws: &OperatorWorkspace, spec: &ProblemSpec, u: &Jet) -> Result<f64, CoreError> {
    let _ = ws;
    if u.order() < spec.m {
        return Err(CoreError::JetOrder {
            have: u.order(),
            need: spec.m,
        });
    }
    let lhs = u.deriv(spec.mu, spec.nu);
    let rhs = eval_rhs(spec, u)?;
    let p = HolderParams::new(spec.alpha);
    Ok(norm_alpha_value(&lhs.sub(&rhs), &p))
}

/// Empirical contraction factor δ̂ = ‖Θ(f)−Θ(g)‖^{(m)} / ‖f−g‖^{(m)}.
pub fn contraction_probe(
    ws: &OperatorWorkspace,
    spec: &ProblemSpec,
    f: &Jet,
    g: &Jet,
    holder: &HolderParams,
) -> Result<f64, CoreError> {
    let denom = norm_k_value(&f.sub(g), spec.m, holder);
    if denom == 0.0 {
        return Err(CoreError::InvalidProblem(
            "contraction probe needs f ≠ g".into(),
        ));
    }
    let tf = theta_map(ws, spec, f)?;
    let tg = theta_map(ws, spec, g)?;
    Ok(norm_k_value(&tf.sub(&tg), spec.m, holder) / denom)
}

/// Default probe pair: ±(γ/2)·z^μ z̄^ν / ‖z^μ z̄^ν‖^{(m)}, maximally
/// separated in the γ-ball.
pub fn default_probe_pair(
    ws: &OperatorWorkspace,
    spec: &ProblemSpec,
    gamma: f64,
    holder: &HolderParams,
) -> (Jet, Jet) {
    let mut p = PolyMap::zero(spec.n_components);
    p.add_term(
        spec.mu,
        spec.nu,
        vec![C64::new(1.0, 0.0); spec.n_components],
    );
    let jet = p.to_jet(ws.grid(), spec.m);
    let norm = norm_k_value(&jet, spec.m, holder);
    let f = jet.scale(C64::new(0.5 * gamma / norm, 0.0));
    let g = f.scale(C64::new(-1.0, 0.0));
    (f, g)
}

/// Picard iteration u₁ = ψ, u_{N+1} = ψ + Θ(u_N) (Banach fixed point).
///
/// Requires a zero prescribed jet; shift the problem first otherwise (see
/// [`shift_initial_values`]). Returns the report and the final iterate with
/// its order-m jet.
pub fn picard_solve(
    ws: &OperatorWorkspace,
    spec: &ProblemSpec,
    cfg: &SolveConfig,
) -> Result<(SolveReport, Jet), CoreError> {
    spec.validate()?;
    if !spec.has_zero_initial_jet() {
        return Err(CoreError::InvalidProblem(
            "picard_solve requires a zero initial jet; apply shift_initial_values first".into(),
        ));
    }
    let psi = spec.psi.to_jet(ws.grid(), spec.m);
    let mut u = psi.clone();
    let mut diff_norms = Vec::new();
    let mut residuals = Vec::new();
    let mut status = SolveStatus::MaxIter;
    let mut failure = None;
    let mut iterations = 0;

    for _ in 0..cfg.max_iter {
        iterations += 1;
        let next = match theta_map(ws, spec, &u) {
            Ok(theta) => psi.add(&theta),
            Err(CoreError::Eval(e)) => {
                status = SolveStatus::Diverged;
                failure = Some(format!("right-hand side evaluation failed: {e}"));
                break;
            }
            Err(e) => return Err(e),
        };
        if !next.is_finite() {
            status = SolveStatus::Diverged;
            failure = Some("iterate contains non-finite values".into());
            break;
        }
        let diff = norm_k_value(&next.sub(&u), spec.m, &cfg.holder);
        let norm = norm_k_value(&next, spec.m, &cfg.holder);
        diff_norms.push(diff);
        match residual(ws, spec, &next) {
            Ok(r) => residuals.push(r),
            Err(_) => residuals.push(f64::NAN),
        }
        u = next;
        if norm > cfg.divergence_cap {
            status = SolveStatus::Diverged;
            failure = Some(format!(
                "‖u‖^{{({})}} = {norm:.3e} exceeded divergence cap",
                spec.m
            ));
            break;
        }
        if diff <= cfg.tol_abs + cfg.tol_rel * norm {
            status = SolveStatus::Converged;
            break;
        }
    }

    let ratios = diff_norms
        .windows(2)
        .map(|w| if w[0] > 0.0 { w[1] / w[0] } else { 0.0 })
        .collect();
    let center = u.grid().center_index();
    let mut final_jet = BTreeMap::new();
    for (i, j) in pairs_up_to(spec.m - 1) {
        let vals = (0..spec.n_components)
            .map(|c| u.deriv(i, j).value(c, center))
            .collect();
        final_jet.insert((i, j), vals);
    }

    let report = SolveReport {
        status,
        iterations,
        iterates_kept: diff_norms.len(),
        diff_norms,
        contraction_ratios: ratios,
        residual_history: residuals,
        empirical_delta: None,
        final_norm: norm_k_value(&u, spec.m, &cfg.holder),
        final_jet_at_origin: final_jet,
        failure,
    };
    Ok((report, u))
}

/// Outcome of [`shift_initial_values`]: the zero-jet problem for ũ and the
/// shift polynomial p with `u = ũ + p`.
#[derive(Debug, Clone)]
pub struct ShiftedProblem {
    pub spec: ProblemSpec,
    pub shift: PolyMap,
}

impl ShiftedProblem {
    /// Recombines a solved ũ into the solution of the original problem.
    pub fn recombine(&self, u_tilde: &Jet) -> Jet {
        let p_jet = self.shift.to_jet(u_tilde.grid(), u_tilde.order());
        u_tilde.add(&p_jet)
    }
}

/// Converts prescribed initial values c_{i,j} into a zero-jet problem by
/// substituting u → ũ + p, p(z) = Σ c_{i,j}/(i!j!) z^i z̄^j, into the
/// right-hand side.
pub fn shift_initial_values(spec: &ProblemSpec) -> Result<ShiftedProblem, CoreError> {
    spec.validate()?;
    let mut p = PolyMap::zero(spec.n_components);
    for ((i, j), vals) in &spec.initial_jet {
        let scaled: Vec<C64> = vals
            .iter()
            .map(|c| c / (factorial(*i) * factorial(*j)))
            .collect();
        p.add_term(*i, *j, scaled);
    }

    let rewrite = |e: &Expr| -> Expr {
        e.substitute(&|v| match v {
            crate::expr::Var::Deriv { comp, dz, dzbar } => {
                let dp = p.derivative(dz, dzbar);
                let shift_expr = dp.to_expr(comp);
                if shift_expr.is_zero() {
                    None
                } else {
                    Some(Expr::add(Expr::var(v), shift_expr))
                }
            }
            crate::expr::Var::Z => None,
        })
    };

    let mut shifted = spec.clone();
    shifted.rhs = spec.rhs.iter().map(rewrite).collect();
    shifted.initial_jet = BTreeMap::new();
    Ok(ShiftedProblem {
        spec: shifted,
        shift: p,
    })
}

#[cfg(test)]
mod tests;
