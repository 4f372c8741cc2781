//! Run orchestration for the disk solver: config ingestion, the problem
//! corpus, validation suites, and artifact emission.
//!
//! Exit-code contract: 0 converged/passed, 1 usage or configuration error,
//! 2 numerical failure (divergence, iteration cap, failed check).

pub mod config;
pub mod corpus;
pub mod report;
pub mod validate;

use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use pompeiu::grid::build_grid;
use pompeiu::holder::norm_k_value;
use pompeiu::operators::OperatorWorkspace;
use pompeiu::solver::{
    contraction_probe, default_probe_pair, picard_solve, radius_search, residual,
    shift_initial_values, RadiusSearchOutcome, SolveStatus,
};

use config::{GridConfig, ProblemConfig, RunConfig, SolverConfigSer};
use report::{exit_code, Manifest};

/// Outcome of a CLI operation: process exit code plus the manifest that was
/// (or would be) written.
pub struct RunOutcome {
    pub exit: i32,
    pub manifest: Manifest,
}

fn config_echo(cfg: &RunConfig) -> serde_json::Value {
    serde_json::to_value(cfg).unwrap_or(serde_json::Value::Null)
}

/// Resolves a named or inline problem into a spec plus per-problem grid and
/// solver defaults.
fn resolve_problem(cfg: &RunConfig) -> Result<(pompeiu::ProblemSpec, GridConfig, SolverConfigSer)> {
    match &cfg.problem {
        ProblemConfig::Inline(p) => {
            let spec = p.to_spec()?;
            let grid = cfg
                .grid
                .context("inline problems need an explicit grid section")?;
            Ok((spec, grid, cfg.solver))
        }
        ProblemConfig::Named { name } => {
            let entry =
                corpus::find(name).with_context(|| format!("unknown corpus problem `{name}`"))?;
            let spec = (entry.build)();
            let grid = cfg.grid.unwrap_or(GridConfig {
                radius: entry.default_radius,
                n_r: entry.grid.0,
                n_theta: entry.grid.1,
            });
            let mut solver = cfg.solver;
            solver.gamma0 = entry.gamma0;
            Ok((spec, grid, solver))
        }
    }
}

/// `solve --config`: runs the Picard iteration and writes manifest.json,
/// residuals.csv and field.csv into the configured output directory. The
/// manifest is written even when the run fails.
pub fn run_solve(cfg: &RunConfig) -> Result<RunOutcome> {
    let started = Instant::now();
    let mut manifest = Manifest::new("config_error", config_echo(cfg));
    let out_dir = cfg.output_dir.clone();

    let run = || -> Result<(Manifest, i32)> {
        let (spec, grid_cfg, solver_cfg) = resolve_problem(cfg)?;
        let shifted = shift_initial_values(&spec)?;
        let grid = build_grid(grid_cfg.radius, grid_cfg.n_r, grid_cfg.n_theta)?;
        let ws = OperatorWorkspace::new(grid);
        let solve_cfg = solver_cfg.to_solve_config(spec.alpha);

        let mut manifest = Manifest::new("running", config_echo(cfg));

        if let Some(rs) = &cfg.radius_search {
            let outcome = radius_search(
                &spec,
                solver_cfg.gamma0,
                &rs.to_params(solver_cfg.sampling()),
            )?;
            match outcome {
                RadiusSearchOutcome::Admissible(cert) => {
                    manifest.radius_certificate = Some((&cert).into());
                }
                RadiusSearchOutcome::Failed { tested, reason } => {
                    manifest.radius_certificate = Some(report::RadiusCertificateSer {
                        r_admissible: f64::NAN,
                        delta: f64::NAN,
                        eta: f64::NAN,
                        a_sup: f64::NAN,
                        h_alpha_a: f64::NAN,
                        c_of_r_gamma: f64::NAN,
                        generic_c: solver_cfg.generic_c,
                        probe_delta: None,
                        tested,
                    });
                    manifest.error = Some(reason);
                }
            }
        }

        let (mut solve_report, u_tilde) = picard_solve(&ws, &shifted.spec, &solve_cfg)?;
        if solve_report.status == SolveStatus::Converged {
            let (f, g) =
                default_probe_pair(&ws, &shifted.spec, solver_cfg.gamma0, &solve_cfg.holder);
            solve_report.empirical_delta =
                contraction_probe(&ws, &shifted.spec, &f, &g, &solve_cfg.holder).ok();
        }
        let u = shifted.recombine(&u_tilde);
        manifest.absorb_report(&solve_report);
        // Residual and jet of the recombined solution of the original
        // problem.
        if solve_report.status == SolveStatus::Converged {
            manifest.residual = residual(&ws, &spec, &u).ok();
        }
        manifest.final_jet_at_origin = Some(report::jet_entries_at_origin(&u, spec.m - 1));
        manifest.final_norm = Some(norm_k_value(&u, spec.m, &solve_cfg.holder));

        report::write_residuals(&out_dir, &solve_report)?;
        report::write_field(&out_dir, u.field())?;
        Ok((manifest, exit_code(solve_report.status)))
    };

    let (mut manifest, exit) = match run() {
        Ok(pair) => pair,
        Err(e) => {
            manifest.error = Some(format!("{e:#}"));
            (manifest, 1)
        }
    };
    manifest.elapsed_seconds = started.elapsed().as_secs_f64();
    report::write_manifest(&out_dir, &manifest)?;
    Ok(RunOutcome { exit, manifest })
}

/// `corpus --run`: solves or probes a registered problem and writes its
/// artifacts under `out_dir`.
pub fn run_corpus_cmd(name: &str, radius: Option<f64>, out_dir: &Path) -> Result<RunOutcome> {
    let started = Instant::now();
    let echo = serde_json::json!({ "problem": { "name": name }, "radius": radius });
    let run = corpus::run_corpus(name, radius)?;
    let mut manifest = Manifest::new(run.status, echo);
    if let Some(report) = &run.report {
        manifest.absorb_report(report);
        manifest.status = run.status.to_string();
        report::write_residuals(out_dir, report)?;
    }
    if let Some(u) = &run.solution {
        report::write_field(out_dir, u.field())?;
    }
    manifest.oracle_defect = run.oracle_defect;
    manifest.probe_table = run.probe_table.clone();
    if !run.pass && manifest.error.is_none() {
        manifest.error = Some(run.detail.clone());
    }
    manifest.elapsed_seconds = started.elapsed().as_secs_f64();
    report::write_manifest(out_dir, &manifest)?;
    println!(
        "{}: {} — {}",
        run.name,
        if run.pass { "PASS" } else { "FAIL" },
        run.detail
    );
    Ok(RunOutcome {
        exit: corpus::corpus_exit_code(&run),
        manifest,
    })
}

/// `probe --config`: contraction probe on the configured problem and grid.
pub fn run_probe(cfg: &RunConfig) -> Result<RunOutcome> {
    let started = Instant::now();
    let out_dir = cfg.output_dir.clone();
    let mut manifest = Manifest::new("config_error", config_echo(cfg));
    let run = || -> Result<(Manifest, i32)> {
        let (spec, grid_cfg, solver_cfg) = resolve_problem(cfg)?;
        let shifted = shift_initial_values(&spec)?;
        let grid = build_grid(grid_cfg.radius, grid_cfg.n_r, grid_cfg.n_theta)?;
        let ws = OperatorWorkspace::new(grid);
        let holder = solver_cfg.to_solve_config(spec.alpha).holder;
        let (f, g) = default_probe_pair(&ws, &shifted.spec, solver_cfg.gamma0, &holder);
        let delta = contraction_probe(&ws, &shifted.spec, &f, &g, &holder)?;
        let mut manifest = Manifest::new("probed", config_echo(cfg));
        manifest.probe_table = Some(vec![(grid_cfg.radius, delta)]);
        manifest.empirical_delta = Some(delta);
        println!("δ̂ = {delta:.6} at R = {}", grid_cfg.radius);
        Ok((manifest, 0))
    };
    let (mut m, exit) = match run() {
        Ok(pair) => pair,
        Err(e) => {
            manifest.error = Some(format!("{e:#}"));
            (manifest, 1)
        }
    };
    m.elapsed_seconds = started.elapsed().as_secs_f64();
    report::write_manifest(&out_dir, &m)?;
    Ok(RunOutcome { exit, manifest: m })
}

/// `validate --suite`: runs a measured invariant suite; prints one line per
/// check.
pub fn run_validate(suite: &str, n_r: usize, n_theta: usize) -> Result<i32> {
    let checks = validate::run_suite(suite, n_r, n_theta)?;
    let mut failed = 0;
    for check in &checks {
        println!(
            "{} {} — {}",
            if check.pass { "PASS" } else { "FAIL" },
            check.name,
            check.detail
        );
        if !check.pass {
            failed += 1;
        }
    }
    println!("{}/{} checks passed", checks.len() - failed, checks.len());
    Ok(if failed == 0 { 0 } else { 2 })
}
