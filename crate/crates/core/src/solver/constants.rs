//! Contraction-constant estimation and the admissible-radius search.
//!
//! The certificate chain: over the compact set
//! `E(R,γ) = D × Π_p {|η_p| ≤ C·R^{m−p}γ}` (one box per derivative order the
//! right-hand side references), sample
//!
//! ```text
//! A(R,γ)      = sup |∂a/∂η|, |∂a/∂η̄|, |∂a/∂ζ|, |∂a/∂ζ̄|
//! H_α^A(R,γ)  = Hölder seminorm of those derivatives
//! C(R,γ)      = 1 + C Σ_{l<m} (R^{m−l−1}γ)^α
//! δ(R,γ)      = C (Σ_p R^{m−p}) (A + (2R)^α H_α^A C(R,γ))
//! η(R,γ)      = C|a(0)| + C·A·R + C·δ
//! ```
//!
//! A radius is admissible at γ₀ when δ ≤ 3/4 and η ≤ γ₀/2. The generic
//! constant C is a configuration scalar; sampled sups are lower bounds and
//! are inflated by a safety factor before entering δ and η, and the search
//! cross-checks every candidate radius against the empirical contraction
//! probe before accepting it.

use crate::error::CoreError;
use crate::expr::{eval, wirtinger_derive, Env, Expr, Var};
use crate::grid::build_grid;
use crate::holder::HolderParams;
use crate::operators::OperatorWorkspace;
use crate::problem::ProblemSpec;
use crate::C64;

use super::{contraction_probe, default_probe_pair};

#[derive(Debug, Clone, Copy)]
pub struct SamplingParams {
    /// Low-discrepancy samples per box face and for the interior set.
    pub n_samples: usize,
    pub seed: u64,
    /// Inflation applied to sampled sups before they enter δ and η.
    pub safety: f64,
    /// The generic constant C.
    pub generic_c: f64,
}

impl Default for SamplingParams {
    fn default() -> Self {
        SamplingParams {
            n_samples: 4096,
            seed: 7,
            safety: 1.1,
            generic_c: 1.0,
        }
    }
}

/// The estimated constants at one (R, γ).
#[derive(Debug, Clone)]
pub struct ConstantsEstimate {
    /// A(R,γ): sup of first derivatives of the RHS over E(R,γ).
    pub a_sup: f64,
    /// H_α^A(R,γ): sampled Hölder seminorm of those derivatives.
    pub h_alpha_a: f64,
    /// C(R,γ).
    pub c_of_r_gamma: f64,
    /// δ(R,γ): Lipschitz certificate for Θ on the γ-ball.
    pub delta: f64,
    /// η(R,γ): magnitude certificate for Θ on the γ-ball.
    pub eta: f64,
    pub generic_c: f64,
}

fn halton(mut index: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

const PRIMES: [usize; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// One sample point of E(R,γ): z plus a value per referenced variable.
#[derive(Debug, Clone)]
struct ESample {
    z: C64,
    vals: Vec<C64>,
}

struct ESampler {
    vars: Vec<Var>,
    bounds: Vec<f64>,
    radius: f64,
}

impl ESampler {
    /// `face`: None = interior, Some(d) pins coordinate d (0 = z) to its
    /// sphere.
    fn sample(&self, index: usize, face: Option<usize>, seed: u64) -> ESample {
        let shift = seed as usize % 1024;
        let idx = index + 1 + shift;
        let dims = 1 + self.vars.len();
        assert!(
            2 * dims <= PRIMES.len(),
            "too many RHS variables for the sampler"
        );
        let coord = |d: usize, bound: f64| -> C64 {
            let u1 = halton(idx, PRIMES[2 * d]);
            let u2 = halton(idx, PRIMES[2 * d + 1]);
            let r = if face == Some(d) {
                bound
            } else {
                bound * u2.sqrt()
            };
            C64::from_polar(r, std::f64::consts::TAU * u1)
        };
        let z = coord(0, self.radius);
        let vals = self
            .vars
            .iter()
            .enumerate()
            .map(|(k, _)| coord(k + 1, self.bounds[k]))
            .collect();
        ESample { z, vals }
    }

    fn env(&self, s: &ESample) -> Env {
        let mut env = Env::z_only(s.z);
        for (v, val) in self.vars.iter().zip(&s.vals) {
            if let Var::Deriv { comp, dz, dzbar } = v {
                env.set(*comp, *dz, *dzbar, *val);
            }
        }
        env
    }

    /// Max-norm distance in the product space.
    fn dist(&self, a: &ESample, b: &ESample) -> f64 {
        let mut d = (a.z - b.z).norm();
        for (x, y) in a.vals.iter().zip(&b.vals) {
            d = d.max((x - y).norm());
        }
        d
    }
}

fn eval_or_report(e: &Expr, env: &Env, s: &ESample) -> Result<C64, CoreError> {
    eval(e, env).map_err(|err| {
        CoreError::InvalidProblem(format!(
            "RHS derivative evaluation failed at sample z = {:.6}+{:.6}i: {err}",
            s.z.re, s.z.im
        ))
    })
}

/// Samples A(R,γ), H_α^A and evaluates the certificate chain at (R, γ).
pub fn constants_estimate(
    spec: &ProblemSpec,
    radius: f64,
    gamma: f64,
    sampling: &SamplingParams,
) -> Result<ConstantsEstimate, CoreError> {
    spec.validate()?;
    let c = sampling.generic_c;
    let m = spec.m as i32;

    // Referenced jet variables and their E-box radii C·R^{m-p}·γ.
    let mut vars: Vec<Var> = Vec::new();
    for e in &spec.rhs {
        for v in e.free_vars() {
            if matches!(v, Var::Deriv { .. }) && !vars.contains(&v) {
                vars.push(v);
            }
        }
    }
    vars.sort();
    let bounds: Vec<f64> = vars
        .iter()
        .map(|v| c * radius.powi(m - v.order() as i32) * gamma)
        .collect();

    // First Wirtinger derivatives of every component with respect to every
    // slot (z and each referenced variable), both flavors.
    let mut deriv_asts: Vec<Expr> = Vec::new();
    for e in &spec.rhs {
        for conj in [false, true] {
            deriv_asts.push(wirtinger_derive(e, Var::Z, conj));
            for v in &vars {
                deriv_asts.push(wirtinger_derive(e, *v, conj));
            }
        }
    }

    let sampler = ESampler {
        vars: vars.clone(),
        bounds,
        radius,
    };
    let n = sampling.n_samples.max(2);
    let faces: Vec<Option<usize>> = std::iter::once(None)
        .chain((0..=vars.len()).map(Some))
        .collect();

    let mut a_sup = 0.0f64;
    let mut h_alpha = 0.0f64;
    for face in &faces {
        let mut prev: Option<(ESample, Vec<C64>)> = None;
        for t in 0..n {
            let s = sampler.sample(t, *face, sampling.seed);
            let env = sampler.env(&s);
            let mut vals = Vec::with_capacity(deriv_asts.len());
            for ast in &deriv_asts {
                let v = eval_or_report(ast, &env, &s)?;
                a_sup = a_sup.max(v.norm());
                vals.push(v);
            }
            if let Some((ps, pv)) = prev.take() {
                let d = sampler.dist(&ps, &s);
                if d > 1e-12 {
                    let dpow = d.powf(spec.alpha);
                    for (x, y) in vals.iter().zip(&pv) {
                        h_alpha = h_alpha.max((x - y).norm() / dpow);
                    }
                }
                prev = None;
            } else {
                prev = Some((s, vals));
            }
        }
    }

    let c_of_r_gamma = {
        let mut sum = 0.0;
        for l in 0..spec.m {
            sum += (radius.powi(m - 1 - l as i32) * gamma).powf(spec.alpha);
        }
        1.0 + c * sum
    };

    // Order-weighted radius sum over the orders the RHS actually
    // references; an order-m reference (outside the contraction
    // hypothesis) contributes weight R⁰ = 1 and keeps δ from shrinking.
    let r_sum: f64 = spec
        .referenced_orders()
        .iter()
        .map(|p| radius.powi(m - *p as i32))
        .sum();

    let a_inf = sampling.safety * a_sup;
    let h_inf = sampling.safety * h_alpha;
    let delta = c * r_sum * (a_inf + (2.0 * radius).powf(spec.alpha) * h_inf * c_of_r_gamma);
    let a0 = spec.rhs_sup_at_zero()?;
    let eta = c * a0 + c * a_inf * radius + c * delta;

    Ok(ConstantsEstimate {
        a_sup,
        h_alpha_a: h_alpha,
        c_of_r_gamma,
        delta,
        eta,
        generic_c: c,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct RadiusSearchParams {
    pub r_max: f64,
    pub r_min: f64,
    pub sampling: SamplingParams,
    /// Grid used for the empirical probe cross-check.
    pub probe_grid: (usize, usize),
    pub cross_check_probe: bool,
}

impl Default for RadiusSearchParams {
    fn default() -> Self {
        RadiusSearchParams {
            r_max: 1.0,
            r_min: 1e-3,
            sampling: SamplingParams::default(),
            probe_grid: (12, 24),
            cross_check_probe: true,
        }
    }
}

/// An admissible radius with its certificate.
#[derive(Debug, Clone)]
pub struct RadiusCertificate {
    pub r_admissible: f64,
    pub certificate: ConstantsEstimate,
    /// Empirical probe δ̂ at the admissible radius, when cross-checked.
    pub probe_delta: Option<f64>,
    /// Every (R, δ, η) tested on the way down.
    pub tested: Vec<(f64, f64, f64)>,
}

#[derive(Debug, Clone)]
pub enum RadiusSearchOutcome {
    Admissible(RadiusCertificate),
    /// No admissible radius ≥ r_min (non-shrinking constants).
    Failed {
        tested: Vec<(f64, f64, f64)>,
        reason: String,
    },
}

/// Halves R downward from `r_max` until δ(R,γ₀) ≤ 3/4 and η(R,γ₀) ≤ γ₀/2
/// (plus the empirical probe check); returns the first — hence largest —
/// admissible radius tested.
pub fn radius_search(
    spec: &ProblemSpec,
    gamma0: f64,
    params: &RadiusSearchParams,
) -> Result<RadiusSearchOutcome, CoreError> {
    spec.validate()?;
    let a0 = spec.rhs_sup_at_zero()?;
    if gamma0 <= 4.0 * params.sampling.generic_c * a0 {
        return Err(CoreError::InvalidProblem(format!(
            "gamma0 = {gamma0} must exceed 4·C·|a(0)| = {}",
            4.0 * params.sampling.generic_c * a0
        )));
    }

    let holder = HolderParams::new(spec.alpha);
    let mut tested = Vec::new();
    let mut radius = params.r_max;
    while radius >= params.r_min {
        let est = constants_estimate(spec, radius, gamma0, &params.sampling)?;
        tested.push((radius, est.delta, est.eta));
        if est.delta <= 0.75 && est.eta <= gamma0 / 2.0 {
            let probe_delta = if params.cross_check_probe {
                let grid = build_grid(radius, params.probe_grid.0, params.probe_grid.1)?;
                let ws = OperatorWorkspace::new(grid);
                let (f, g) = default_probe_pair(&ws, spec, gamma0, &holder);
                Some(contraction_probe(&ws, spec, &f, &g, &holder)?)
            } else {
                None
            };
            if probe_delta.is_none_or(|d| d <= 0.75) {
                return Ok(RadiusSearchOutcome::Admissible(RadiusCertificate {
                    r_admissible: radius,
                    certificate: est,
                    probe_delta,
                    tested,
                }));
            }
        }
        radius *= 0.5;
    }
    let reason = match tested.last() {
        Some((r, d, e)) => format!(
            "no admissible radius ≥ {:.3e}: at R = {r:.3e} the certificate gives δ = {d:.3e}, η = {e:.3e}",
            params.r_min
        ),
        None => "empty search range".into(),
    };
    Ok(RadiusSearchOutcome::Failed { tested, reason })
}
