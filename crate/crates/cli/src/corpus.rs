//! The validation corpus: named problems with closed-form structure, their
//! solution oracles, and expected convergence behavior.

use anyhow::{bail, Result};
use num_complex::Complex64 as C64;
use pompeiu::expr::parse;
use pompeiu::grid::build_grid;
use pompeiu::holder::{norm_alpha_value, HolderParams};
use pompeiu::jet::Jet;
use pompeiu::operators::OperatorWorkspace;
use pompeiu::solver::{
    contraction_probe, picard_solve, residual, shift_initial_values, SolveReport, SolveStatus,
};
use pompeiu::ProblemSpec;

use crate::config::SolverConfigSer;

/// How a corpus entry is exercised and judged.
pub enum CorpusKind {
    /// Full Picard solve plus a structural oracle on the converged field.
    Solve {
        /// ‖∂̄g‖ for the problem's holomorphy witness g, from the
        /// identity-computed jet of the recombined solution.
        oracle: Option<fn(&Jet, &HolderParams) -> f64>,
        tau_struct: f64,
        tau_res: f64,
    },
    /// Contraction probe only, across several radii.
    Probe {
        radii: &'static [f64],
        /// Minimum acceptable δ̂ (the point is non-contraction).
        threshold: f64,
    },
}

pub struct CorpusProblem {
    pub name: &'static str,
    pub description: &'static str,
    pub build: fn() -> ProblemSpec,
    pub default_radius: f64,
    pub grid: (usize, usize),
    pub gamma0: f64,
    pub kind: CorpusKind,
}

/// ‖∂̄(1/u + z̄)‖ = ‖1 − ∂̄u/u²‖: the solution family of ∂̄u = u² has
/// 1/u + z̄ holomorphic.
fn oracle_reciprocal(u: &Jet, p: &HolderParams) -> f64 {
    let defect = u
        .field()
        .zip_map(u.deriv(0, 1), |uv, du| C64::new(1.0, 0.0) - du / (uv * uv));
    norm_alpha_value(&defect, p)
}

/// ‖∂̄(e^{−u} + z̄)‖ = ‖1 − e^{−u}∂̄u‖ for ∂̄u = e^u.
fn oracle_exp(u: &Jet, p: &HolderParams) -> f64 {
    let defect = u.field().zip_map(u.deriv(0, 1), |uv, du| {
        C64::new(1.0, 0.0) - (-uv).exp() * du
    });
    norm_alpha_value(&defect, p)
}

fn spec_u_squared() -> ProblemSpec {
    ProblemSpec::scalar(1, 0, 1, 0.5, parse("u0^2").unwrap()).with_initial_value(
        0,
        0,
        vec![C64::new(0.5, 0.0)],
    )
}

fn spec_exp_u() -> ProblemSpec {
    ProblemSpec::scalar(1, 0, 1, 0.5, parse("exp(u0)").unwrap())
}

fn spec_liouville() -> ProblemSpec {
    // ∂∂̄u = e^{2u}/4, i.e. Δu = e^{2u}, with u(0) = 0, ∇u(0) = 0.
    ProblemSpec::scalar(2, 1, 1, 0.5, parse("exp(2*u0)/4").unwrap())
        .with_initial_value(0, 0, vec![C64::new(0.0, 0.0)])
        .with_initial_value(1, 0, vec![C64::new(0.0, 0.0)])
        .with_initial_value(0, 1, vec![C64::new(0.0, 0.0)])
}

fn spec_transport_demo() -> ProblemSpec {
    let mut spec = ProblemSpec::scalar(
        1,
        0,
        1,
        0.5,
        parse("1/(1+re(z)) - ((1-re(z))/(1+re(z)))*d(0,1,0)").unwrap(),
    );
    spec.allow_order_m_rhs = true;
    spec
}

pub fn registry() -> Vec<CorpusProblem> {
    vec![
        CorpusProblem {
            name: "dbar-u-squared",
            description: "∂̄u = u², u(0) = 1/2; 1/u + z̄ must be holomorphic",
            build: spec_u_squared,
            default_radius: 0.2,
            grid: (24, 48),
            gamma0: 2.0,
            kind: CorpusKind::Solve {
                oracle: Some(oracle_reciprocal),
                tau_struct: 1e-2,
                tau_res: 1e-3,
            },
        },
        CorpusProblem {
            name: "dbar-exp-u",
            description: "∂̄u = e^u, u(0) = 0; e^{−u} + z̄ must be holomorphic",
            build: spec_exp_u,
            default_radius: 0.2,
            grid: (24, 48),
            gamma0: 6.0,
            kind: CorpusKind::Solve {
                oracle: Some(oracle_exp),
                tau_struct: 1e-2,
                tau_res: 1e-3,
            },
        },
        CorpusProblem {
            name: "liouville-osserman",
            description: "Δu = e^{2u}, u(0) = 0, ∇u(0) = 0; solvable only up to radius 2e^{-u(0)}",
            build: spec_liouville,
            default_radius: 0.2,
            grid: (24, 48),
            gamma0: 2.0,
            kind: CorpusKind::Solve {
                oracle: None,
                tau_struct: f64::INFINITY,
                tau_res: 1e-2,
            },
        },
        CorpusProblem {
            name: "mizohata-demo",
            description: "∂̄u = F/(1+Re z) − ((1−Re z)/(1+Re z))∂u: full-order RHS, no contraction",
            build: spec_transport_demo,
            default_radius: 0.2,
            grid: (16, 32),
            gamma0: 8.0,
            kind: CorpusKind::Probe {
                radii: &[0.05, 0.1, 0.2],
                threshold: 0.9,
            },
        },
    ]
}

pub fn find(name: &str) -> Option<CorpusProblem> {
    registry().into_iter().find(|p| p.name == name)
}

/// Result of driving one corpus entry.
pub struct CorpusRun {
    pub name: String,
    pub radius: f64,
    pub status: &'static str,
    pub pass: bool,
    pub report: Option<SolveReport>,
    pub solution: Option<Jet>,
    pub oracle_defect: Option<f64>,
    pub probe_table: Option<Vec<(f64, f64)>>,
    pub detail: String,
}

/// Solves (or probes) a registered problem at `radius_override` or its
/// default radius and applies its structural checks.
pub fn run_corpus(name: &str, radius_override: Option<f64>) -> Result<CorpusRun> {
    let Some(problem) = find(name) else {
        bail!("unknown corpus problem `{name}`; try `corpus --list`");
    };
    let spec = (problem.build)();
    let radius = radius_override.unwrap_or(problem.default_radius);
    let holder = HolderParams::new(spec.alpha);

    match problem.kind {
        CorpusKind::Probe { radii, threshold } => {
            let radii: Vec<f64> = match radius_override {
                Some(r) => vec![r],
                None => radii.to_vec(),
            };
            let mut table = Vec::new();
            for r in radii {
                let grid = build_grid(r, problem.grid.0, problem.grid.1)?;
                let ws = OperatorWorkspace::new(grid.clone());
                // Pair differing by ε·z so the ∂u slot sees the difference.
                let f = Jet::from_expr(&parse("0.5*z").unwrap(), &grid, spec.m)?;
                let g = f.scale(C64::new(-1.0, 0.0));
                let delta = contraction_probe(&ws, &spec, &f, &g, &holder)?;
                table.push((r, delta));
            }
            let min = table.iter().map(|(_, d)| *d).fold(f64::INFINITY, f64::min);
            let pass = min >= threshold;
            Ok(CorpusRun {
                name: name.to_string(),
                radius,
                status: if pass {
                    "non_contractive"
                } else {
                    "unexpectedly_contractive"
                },
                pass,
                report: None,
                solution: None,
                oracle_defect: None,
                probe_table: Some(table.clone()),
                detail: format!(
                    "min δ̂ = {min:.3} over {table:?}, non-contraction threshold {threshold}"
                ),
            })
        }
        CorpusKind::Solve {
            oracle,
            tau_struct,
            tau_res,
        } => {
            let shifted = shift_initial_values(&spec)?;
            let grid = build_grid(radius, problem.grid.0, problem.grid.1)?;
            let ws = OperatorWorkspace::new(grid);
            let solver_cfg = SolverConfigSer {
                gamma0: problem.gamma0,
                ..Default::default()
            };
            let cfg = solver_cfg.to_solve_config(spec.alpha);
            let (report, u_tilde) = picard_solve(&ws, &shifted.spec, &cfg)?;
            let status = crate::report::status_str(report.status);
            if report.status != SolveStatus::Converged {
                let detail = format!(
                    "did not converge at R = {radius}: {status} after {} iterations{}",
                    report.iterations,
                    report
                        .failure
                        .as_deref()
                        .map(|f| format!(" ({f})"))
                        .unwrap_or_default()
                );
                return Ok(CorpusRun {
                    name: name.to_string(),
                    radius,
                    status,
                    pass: false,
                    report: Some(report),
                    solution: None,
                    oracle_defect: None,
                    probe_table: None,
                    detail,
                });
            }
            let u = shifted.recombine(&u_tilde);
            let res = residual(&ws, &spec, &u)?;
            let defect = oracle.map(|f| f(&u, &holder));
            let pass = res <= tau_res && defect.is_none_or(|d| d <= tau_struct);
            let detail = format!(
                "converged in {} iterations; residual {res:.3e} (τ = {tau_res:.1e}){}",
                report.iterations,
                defect
                    .map(|d| format!(", oracle defect {d:.3e} (τ = {tau_struct:.1e})"))
                    .unwrap_or_default()
            );
            Ok(CorpusRun {
                name: name.to_string(),
                radius,
                status,
                pass,
                report: Some(report),
                solution: Some(u),
                oracle_defect: defect,
                probe_table: None,
                detail,
            })
        }
    }
}

/// Exit-code mapping for corpus runs: 0 pass, 2 numerical failure.
pub fn corpus_exit_code(run: &CorpusRun) -> i32 {
    if run.pass {
        0
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_are_unique_and_findable() {
        let reg = registry();
        assert_eq!(reg.len(), 4);
        for p in &reg {
            assert!(find(p.name).is_some());
            ((p.build)()).validate().unwrap();
        }
        assert!(find("no-such-problem").is_none());
    }
}
