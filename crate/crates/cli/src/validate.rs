//! Measured invariant suites behind `validate --suite`: each check
//! recomputes an operator/norm/solver property on a live grid and reports
//! the measured value against its bound.

use anyhow::{bail, Result};
use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pompeiu::expr::{parse, Expr};
use pompeiu::field::Field;
use pompeiu::grid::build_grid;
use pompeiu::holder::{holder_seminorm, norm_alpha_value, norm_k_value, HolderParams};
use pompeiu::jet::{pairs_up_to, Jet, PolyMap};
use pompeiu::operators::oracle::{t_poly, Poly};
use pompeiu::operators::{
    compose_t, op_s, op_s_conj, op_sb, op_t, op_t2, op_tbar, OperatorWorkspace,
};
use pompeiu::solver::{
    contraction_probe, default_probe_pair, picard_solve, residual, shift_initial_values, theta_map,
    SolveStatus,
};
use pompeiu::util::{pairwise_sum, pairwise_sum_c};
use pompeiu::ProblemSpec;

use crate::config::SolverConfigSer;
use crate::corpus;

/// Default Hölder exponent of the validation checks.
pub const ALPHA: f64 = 0.5;
/// Operator test tolerance at the default 48×96 grid.
pub const TAU_OP: f64 = 5e-3;
/// Tolerance of the ²T = T∂ − S_b identity.
pub const TAU_T2: f64 = 1e-2;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    fn upper(name: &str, measured: f64, bound: f64) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            pass: measured <= bound,
            detail: format!("measured {measured:.3e} ≤ {bound:.3e}"),
        }
    }

    fn range(name: &str, measured: f64, target: f64, tol: f64) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            pass: (measured - target).abs() <= tol,
            detail: format!("measured {measured:.3} = {target} ± {tol}"),
        }
    }

    fn lower(name: &str, measured: f64, bound: f64) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            pass: measured >= bound,
            detail: format!("measured {measured:.3e} ≥ {bound:.3e}"),
        }
    }
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn holder() -> HolderParams {
    HolderParams::new(ALPHA)
}

/// Max-node T error for several polynomials evaluated in one pass, one
/// component per polynomial.
fn t_errors_batched(ws: &OperatorWorkspace, cases: &[(&str, Poly)]) -> Vec<f64> {
    let grid = ws.grid();
    let f = Field::from_fn(grid.clone(), cases.len(), |comp, z| cases[comp].1.eval(z));
    let got = op_t(ws, &f);
    cases
        .iter()
        .enumerate()
        .map(|(comp, (_, p))| {
            let exact = t_poly(p, grid.radius());
            (0..grid.num_nodes())
                .map(|i| (got.value(comp, i) - exact.eval(grid.node(i))).norm())
                .fold(0.0f64, f64::max)
        })
        .collect()
}

/// Random degree-≤3 polynomial field ("band-limited") with unit sup scale.
fn random_poly_field(ws: &OperatorWorkspace, rng: &mut ChaCha8Rng) -> Field {
    let coeffs: Vec<C64> = (0..10)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    Field::scalar_from_fn(ws.grid().clone(), move |z| {
        let zb = z.conj();
        coeffs[0]
            + coeffs[1] * z
            + coeffs[2] * zb
            + coeffs[3] * z * z
            + coeffs[4] * z * zb
            + coeffs[5] * zb * zb
            + coeffs[6] * z * z * z
            + coeffs[7] * z * z * zb
            + coeffs[8] * z * zb * zb
            + coeffs[9] * zb * zb * zb
    })
}

/// Operator exactness, identities, bounds and scaling at the given base
/// grid (refinement doubles it).
pub fn operators_suite(n_r: usize, n_theta: usize) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let ws = OperatorWorkspace::new(build_grid(1.0, n_r, n_theta)?);

    // T exactness against the closed forms, batched into one
    // three-component application per grid.
    let cases = [
        ("T(1) = z̄", Poly::monomial(0, 0, c(1.0))),
        ("T(z̄) = z̄²/2", Poly::monomial(0, 1, c(1.0))),
        ("T(z) = zz̄ − R²", Poly::monomial(1, 0, c(1.0))),
    ];
    let base_errors = t_errors_batched(&ws, &cases);
    for ((name, _), err) in cases.iter().zip(&base_errors) {
        out.push(CheckResult::upper(
            &format!("operators.exactness {name}"),
            *err,
            TAU_OP,
        ));
    }

    // Refinement: errors drop at rate ≥ 2^α under grid doubling.
    let ws2 = OperatorWorkspace::new(build_grid(1.0, 2 * n_r, 2 * n_theta)?);
    let fine_errors = t_errors_batched(&ws2, &cases);
    for (((name, _), coarse), fine) in cases.iter().zip(&base_errors).zip(&fine_errors) {
        let floor = 1e-10;
        let (pass, detail) = if *coarse <= floor {
            (
                true,
                format!("coarse error {coarse:.1e} at roundoff floor; rate check skipped"),
            )
        } else {
            let rate = coarse / fine.max(1e-300);
            (
                rate >= 2.0f64.powf(ALPHA),
                format!("rate {rate:.2} ≥ 2^α = {:.2}", 2.0f64.powf(ALPHA)),
            )
        };
        out.push(CheckResult {
            name: format!("operators.refinement {name}"),
            pass,
            detail,
        });
    }

    // Reproducing identity T∂̄f + Sf − f and its ²T companion.
    let family = [(0usize, 1usize), (1, 1), (0, 2), (2, 1)];
    let mut worst1 = 0.0f64;
    let mut worst2 = 0.0f64;
    for (a, b) in family {
        let p = Poly::monomial(a, b, c(1.0));
        let f = p.to_field(ws.grid());
        let err = op_t(&ws, &p.diff(0, 1).to_field(ws.grid()))
            .add(&op_s(&f, ws.grid()))
            .sub(&f)
            .sup();
        worst1 = worst1.max(err);
        let jet = Jet::from_expr(&parse(&format!("z^{a}*conj(z)^{b}")).unwrap(), ws.grid(), 1)?;
        let err2 = op_t2(&ws, &f, Some(&jet))
            .sub(&op_t(&ws, &p.diff(1, 0).to_field(ws.grid())))
            .add(&op_sb(&f, ws.grid()))
            .sup();
        worst2 = worst2.max(err2);
    }
    out.push(CheckResult::upper(
        "operators.identity ‖T∂̄f + Sf − f‖",
        worst1,
        TAU_OP,
    ));
    out.push(CheckResult::upper(
        "operators.identity ‖²Tf − T∂f + S_bf‖",
        worst2,
        TAU_T2,
    ));

    // Conjugate identity T̄∂f = f − S̄f.
    let mut worst3 = 0.0f64;
    for (a, b) in [(1usize, 0usize), (1, 1), (2, 0), (1, 2)] {
        let p = Poly::monomial(a, b, c(1.0));
        let f = p.to_field(ws.grid());
        let err = op_tbar(&ws, &p.diff(1, 0).to_field(ws.grid()))
            .add(&op_s_conj(&f, ws.grid()))
            .sub(&f)
            .sup();
        worst3 = worst3.max(err);
    }
    out.push(CheckResult::upper(
        "operators.identity ‖T̄∂f + S̄f − f‖",
        worst3,
        TAU_OP,
    ));

    // Sup bound over random band-limited fields (on a lighter grid).
    let ws_small = OperatorWorkspace::new(build_grid(1.0, 32, 64)?);
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut worst_excess = f64::NEG_INFINITY;
    for _ in 0..50 {
        let f = random_poly_field(&ws_small, &mut rng);
        let excess = op_t(&ws_small, &f).sup() - 4.0 * f.sup();
        worst_excess = worst_excess.max(excess);
    }
    out.push(CheckResult::upper(
        "operators.sup_bound |Tf| − 4R|f|",
        worst_excess,
        TAU_OP,
    ));

    // Vanishing annulus moments with a smooth inner cutoff.
    let grid = build_grid(1.0, n_r.max(48), n_theta.max(96))?;
    let s = C64::new(0.3, 0.1);
    let rho = 0.4;
    for (m, n) in [(2usize, 0usize), (3, 0), (3, 1)] {
        let mut terms = Vec::new();
        let mut mass = Vec::new();
        for (zeta, w) in grid.nodes().iter().zip(grid.weights()) {
            if *w == 0.0 {
                continue;
            }
            let d = zeta - s;
            let t = d.norm() / rho;
            let cut = if t >= 1.0 {
                1.0
            } else {
                t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)
            };
            if cut == 0.0 {
                continue;
            }
            let v = d.conj().powu(n as u32) / d.powu(m as u32);
            terms.push(v * (w * cut));
            mass.push(v.norm() * w * cut);
        }
        let rel = pairwise_sum_c(&terms).norm() / pairwise_sum(&mass);
        out.push(CheckResult::upper(
            &format!("operators.moment ∫(ζ̄−s̄)^{n}/(ζ−s)^{m} = 0"),
            rel,
            TAU_OP,
        ));
    }

    // Norm-ratio monitors: R-independence of ‖Th‖^{(1)}/‖h‖ and
    // ‖TT̄h‖^{(2)}/‖h‖.
    let hp = holder();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let coeffs: Vec<C64> = (0..6)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let mut ratios1 = Vec::new();
    let mut ratios2 = Vec::new();
    for radius in [0.25, 0.5, 1.0] {
        let w = OperatorWorkspace::new(build_grid(radius, 16, 32)?);
        let h = Field::scalar_from_fn(w.grid().clone(), |z| {
            let zb = z.conj();
            coeffs[0]
                + coeffs[1] * z
                + coeffs[2] * zb
                + coeffs[3] * z * z
                + coeffs[4] * z * zb
                + coeffs[5] * zb * zb
        });
        let h_norm = norm_alpha_value(&h, &hp);
        let tjet = compose_t(&w, &Jet::order0(h.clone()), 0, 1);
        ratios1.push(norm_k_value(&tjet, 1, &hp) / h_norm);
        let w2 = compose_t(&w, &Jet::order0(h), 1, 1);
        ratios2.push(norm_k_value(&w2, 2, &hp) / h_norm);
    }
    for (name, ratios) in [("‖Th‖⁽¹⁾/‖h‖", ratios1), ("‖TT̄h‖⁽²⁾/‖h‖", ratios2)]
    {
        let max = ratios.iter().cloned().fold(0.0f64, f64::max);
        let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        out.push(CheckResult {
            name: format!("operators.norm_ratio {name} bounded in R"),
            pass: max <= 3.0 * min,
            detail: format!("ratios {ratios:?}, spread {:.2} ≤ 3", max / min),
        });
    }

    // Smoothing: sup|²Tf| ~ R^α for genuinely C^α data.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let anchors: Vec<(C64, f64)> = (0..4)
        .map(|_| {
            (
                C64::new(rng.gen_range(-0.15..0.15), rng.gen_range(-0.15..0.15)),
                rng.gen_range(0.5..1.0),
            )
        })
        .collect();
    let mut logs = Vec::new();
    for radius in [0.25, 0.5, 1.0] {
        let w = OperatorWorkspace::new(build_grid(radius, 32, 64)?);
        let anchors = anchors.clone();
        let f = Field::scalar_from_fn(w.grid().clone(), move |z| {
            let mut acc = 0.0;
            for (wq, cq) in &anchors {
                acc += cq * (z - wq).norm().powf(ALPHA);
            }
            C64::new(acc, 0.0)
        });
        logs.push((radius.ln(), op_t2(&w, &f, None).sup().ln()));
    }
    let slope = (logs[2].1 - logs[0].1) / (logs[2].0 - logs[0].0);
    out.push(CheckResult::range(
        "operators.smoothing sup|²Tf| ~ R^α",
        slope,
        ALPHA,
        0.2,
    ));

    Ok(out)
}

/// Norm calibration, algebra inequality and vanishing-order scaling.
pub fn holder_suite() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let hp = holder();

    // ‖z‖ = 3R on full-pair norms.
    for radius in [0.5, 1.0] {
        let grid = build_grid(radius, 16, 32)?;
        let f = Field::scalar_from_fn(grid, |z| z);
        let n = norm_alpha_value(&f, &hp);
        out.push(CheckResult {
            name: format!("holder.norm ‖z‖ = 3R at R = {radius}"),
            pass: (n - 3.0 * radius).abs() <= 0.02 * 3.0 * radius,
            detail: format!("measured {n:.6}, target {} ± 2%", 3.0 * radius),
        });
    }

    // Banach algebra on 100 seeded pairs with exact full-pair norms.
    let grid = build_grid(1.0, 8, 24)?;
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst_ratio = 0.0f64;
    for _ in 0..100 {
        let coeffs: Vec<C64> = (0..12)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let (ca, cb) = coeffs.split_at(6);
        let poly = |cs: &[C64], z: C64| {
            cs[0]
                + cs[1] * z
                + cs[2] * z.conj()
                + cs[3] * z * z
                + cs[4] * z * z.conj()
                + cs[5] * z.conj() * z.conj()
        };
        let (ca, cb) = (ca.to_vec(), cb.to_vec());
        let f = Field::scalar_from_fn(grid.clone(), move |z| poly(&ca, z));
        let g = Field::scalar_from_fn(grid.clone(), move |z| poly(&cb, z));
        let product = f.zip_map(&g, |a, b| a * b);
        let ratio = norm_alpha_value(&product, &hp)
            / (norm_alpha_value(&f, &hp) * norm_alpha_value(&g, &hp));
        worst_ratio = worst_ratio.max(ratio);
    }
    out.push(CheckResult::upper(
        "holder.banach_algebra ‖fg‖/(‖f‖‖g‖)",
        worst_ratio,
        1.0 + 1e-12,
    ));

    // Vanishing-order scaling: ‖f‖/‖f‖^{(m)} ~ R^m.
    for (a, b) in [(1usize, 0usize), (0, 1), (1, 1), (2, 0)] {
        let m = a + b;
        let mut logs = Vec::new();
        for radius in [0.25, 0.5, 1.0] {
            let grid = build_grid(radius, 8, 16)?;
            let f = Field::scalar_from_fn(grid.clone(), move |z| {
                z.powu(a as u32) * z.conj().powu(b as u32)
            });
            let jet = Jet::from_expr(&parse(&format!("z^{a}*conj(z)^{b}")).unwrap(), &grid, m)?;
            let ratio = norm_alpha_value(&f, &hp) / norm_k_value(&jet, m, &hp);
            logs.push((radius.ln(), ratio.ln()));
        }
        let slope = (logs[2].1 - logs[0].1) / (logs[2].0 - logs[0].0);
        out.push(CheckResult::range(
            &format!("holder.scaling ‖z^{a}z̄^{b}‖/‖·‖^{m} ~ R^{m}"),
            slope,
            m as f64,
            0.1,
        ));
    }

    Ok(out)
}

/// Random problem generator for the jet-correction check: m ≤ 2, smooth
/// total RHS (no division or log).
fn random_spec(rng: &mut ChaCha8Rng) -> ProblemSpec {
    let m = rng.gen_range(1..=2usize);
    let mu = rng.gen_range(0..=m);
    let nu = m - mu;
    let lit = |rng: &mut ChaCha8Rng| {
        Expr::lit(C64::new(rng.gen_range(-0.8..0.8), rng.gen_range(-0.8..0.8)))
    };
    // a = c₀ + c₁·u0 + c₂·u0² + c₃·z·u0 + [m=2] c₄·d(0,i,j)-term + c₅·exp(u0).
    let u0 = parse("u0").unwrap();
    let mut a = Expr::add(lit(rng), Expr::mul(lit(rng), u0.clone()));
    a = Expr::add(a, Expr::mul(lit(rng), Expr::pow(u0.clone(), 2)));
    a = Expr::add(
        a,
        Expr::mul(lit(rng), Expr::mul(parse("z").unwrap(), u0.clone())),
    );
    if m == 2 {
        let first = if rng.gen_bool(0.5) {
            "d(0,1,0)"
        } else {
            "d(0,0,1)"
        };
        a = Expr::add(a, Expr::mul(lit(rng), parse(first).unwrap()));
    }
    if rng.gen_bool(0.5) {
        a = Expr::add(
            a,
            Expr::mul(lit(rng), Expr::unary(pompeiu::expr::UnaryOp::Exp, u0)),
        );
    }
    ProblemSpec::scalar(m, mu, nu, ALPHA, a)
}

/// Random argument jet in the unit ball: a degree-≤m polynomial scaled to
/// ‖·‖^{(m)} ≈ γ/2.
fn random_argument(rng: &mut ChaCha8Rng, ws: &OperatorWorkspace, m: usize) -> Jet {
    let mut p = PolyMap::zero(1);
    for (i, j) in pairs_up_to(m) {
        p.add_term(
            i,
            j,
            vec![C64::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3))],
        );
    }
    p.to_jet(ws.grid(), m)
}

/// Fixed-point machinery: jet correction, convergence, contraction
/// behavior, closed forms, multiplicity, the quadratic-vs-radius probe and
/// the non-contraction demo.
/// Worst normalized jet magnitude |∂^k∂̄^l Θ(f)(0)| / ‖Θ(f)‖^{(m)} over
/// `count` random specs (m ≤ 2) and random arguments.
pub fn jet_correction_worst(count: usize) -> Result<f64> {
    let hp = holder();
    let mut rng = ChaCha8Rng::seed_from_u64(424_242);
    let mut worst = 0.0f64;
    for _ in 0..count {
        let spec = random_spec(&mut rng);
        let radius = rng.gen_range(0.15..0.5);
        let ws = OperatorWorkspace::new(build_grid(radius, 16, 32)?);
        let f = random_argument(&mut rng, &ws, spec.m);
        let theta = theta_map(&ws, &spec, &f)?;
        let scale = norm_k_value(&theta, spec.m, &hp);
        let center = theta.grid().center_index();
        for (i, j) in pairs_up_to(spec.m - 1) {
            let v = theta.deriv(i, j).value(0, center).norm();
            worst = worst.max(v / scale.max(1e-300));
        }
    }
    Ok(worst)
}

pub fn solver_suite() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let hp = holder();

    // Θ kills the jet at the origin for random specs and arguments.
    let worst = jet_correction_worst(20)?;
    out.push(CheckResult::upper(
        "solver.jet_correction |∂Θ(f)(0)| / ‖Θ(f)‖",
        worst,
        1e-6,
    ));

    // Corpus convergence, contraction regime and oracles.
    for name in ["dbar-u-squared", "dbar-exp-u"] {
        let run = corpus::run_corpus(name, None)?;
        out.push(CheckResult {
            name: format!("solver.corpus {name}"),
            pass: run.pass,
            detail: run.detail.clone(),
        });
        if let Some(report) = &run.report {
            out.push(CheckResult::upper(
                &format!("solver.corpus {name} iterations"),
                report.iterations as f64,
                30.0,
            ));
            // Contraction ratios once the diff norms decrease monotonically.
            let diffs = &report.diff_norms;
            let mut tail_start = diffs.len().saturating_sub(1);
            while tail_start > 0 && diffs[tail_start - 1] > diffs[tail_start] {
                tail_start -= 1;
            }
            let worst_ratio = report.contraction_ratios[tail_start.max(1) - 1..]
                .iter()
                .cloned()
                .fold(0.0f64, f64::max);
            out.push(CheckResult::upper(
                &format!("solver.contraction {name} monotone ratios"),
                worst_ratio,
                0.85,
            ));
        }
    }

    // Closed-form accuracy of the converged fields.
    {
        let run = corpus::run_corpus("dbar-u-squared", None)?;
        let u = run.solution.as_ref().unwrap();
        let expect = Field::scalar_from_fn(u.grid().clone(), |z| {
            C64::new(1.0, 0.0) / (C64::new(2.0, 0.0) - z.conj())
        });
        out.push(CheckResult::upper(
            "solver.closed_form u = 1/(2−z̄)",
            u.field().sub(&expect).sup(),
            TAU_OP,
        ));
        let run = corpus::run_corpus("dbar-exp-u", None)?;
        let u = run.solution.as_ref().unwrap();
        let expect =
            Field::scalar_from_fn(u.grid().clone(), |z| -(C64::new(1.0, 0.0) - z.conj()).ln());
        out.push(CheckResult::upper(
            "solver.closed_form u = −ln(1−z̄)",
            u.field().sub(&expect).sup(),
            TAU_OP,
        ));
        let run = corpus::run_corpus("liouville-osserman", None)?;
        let u = run.solution.as_ref().unwrap();
        let expect = Field::scalar_from_fn(u.grid().clone(), |z| {
            C64::new(-(1.0 - z.norm_sqr() / 4.0).ln(), 0.0)
        });
        out.push(CheckResult::upper(
            "solver.closed_form u = −ln(1−|z|²/4)",
            u.field().sub(&expect).sup(),
            TAU_T2,
        ));
    }

    // Multiplicity: distinct seeds produce distinct solutions.
    {
        let spec = ProblemSpec::scalar(1, 0, 1, ALPHA, parse("u0^2").unwrap()).with_initial_value(
            0,
            0,
            vec![C64::new(0.5, 0.0)],
        );
        let shifted = shift_initial_values(&spec)?;
        let ws = OperatorWorkspace::new(build_grid(0.2, 24, 48)?);
        let cfg = SolverConfigSer {
            gamma0: 2.0,
            ..Default::default()
        }
        .to_solve_config(ALPHA);
        let (r0, u0) = picard_solve(&ws, &shifted.spec, &cfg)?;
        let mut psi = PolyMap::zero(1);
        psi.add_term(1, 0, vec![C64::new(0.1, 0.0)]);
        let seeded = shifted.spec.clone().with_psi(psi);
        let (r1, u1) = picard_solve(&ws, &seeded, &cfg)?;
        let sep = norm_k_value(&u0.sub(&u1), 1, &hp);
        let res0 = residual(&ws, &shifted.spec, &u0)?;
        let res1 = residual(&ws, &seeded, &u1)?;
        let pass = r0.status == SolveStatus::Converged
            && r1.status == SolveStatus::Converged
            && sep >= 0.01
            && res0 <= 1e-3
            && res1 <= 1e-3;
        out.push(CheckResult {
            name: "solver.multiplicity seeds ψ ∈ {0, 0.1z}".into(),
            pass,
            detail: format!("separation {sep:.3e} ≥ 1e-2, residuals {res0:.1e} / {res1:.1e}"),
        });
    }

    // δ̂ ~ R for a linear RHS.
    {
        let spec = ProblemSpec::scalar(
            1,
            0,
            1,
            ALPHA,
            Expr::mul(Expr::lit(c(0.8)), parse("u0").unwrap()),
        );
        let mut logs = Vec::new();
        for radius in [0.1, 0.2, 0.4] {
            let ws = OperatorWorkspace::new(build_grid(radius, 12, 24)?);
            let (f, g) = default_probe_pair(&ws, &spec, 1.0, &hp);
            logs.push((
                radius.ln(),
                contraction_probe(&ws, &spec, &f, &g, &hp)?.ln(),
            ));
        }
        let slope = (logs[2].1 - logs[0].1) / (logs[2].0 - logs[0].0);
        out.push(CheckResult::range(
            "solver.probe_slope δ̂ ~ R for a = λu",
            slope,
            1.0,
            0.2,
        ));
    }

    // Osserman regime: converges inside, fails beyond the bound radius.
    {
        let run = corpus::run_corpus("liouville-osserman", None)?;
        out.push(CheckResult {
            name: "solver.osserman converges at R = 0.2".into(),
            pass: run.pass,
            detail: run.detail,
        });
        let run = corpus::run_corpus("liouville-osserman", Some(3.0))?;
        out.push(CheckResult {
            name: "solver.osserman rejects R = 3 > 2e⁻⁰".into(),
            pass: !run.pass && run.status != "converged",
            detail: run.detail,
        });
    }

    // Non-contraction demo.
    {
        let run = corpus::run_corpus("mizohata-demo", None)?;
        let min = run
            .probe_table
            .as_ref()
            .unwrap()
            .iter()
            .map(|(_, d)| *d)
            .fold(f64::INFINITY, f64::min);
        out.push(CheckResult::lower(
            "solver.non_contraction min δ̂ (full-order RHS)",
            min,
            0.9,
        ));
    }

    // Discrete seminorm sanity: diameter realization for z̄ (feeds the 3R
    // calibration used throughout).
    {
        let grid = build_grid(1.0, 8, 16)?;
        let f = Field::scalar_from_fn(grid, |z| z.conj());
        let h = holder_seminorm(&f, &hp);
        out.push(CheckResult::range(
            "solver.seminorm H_α[z̄] = (2R)^{1−α}",
            h,
            2.0f64.powf(1.0 - ALPHA),
            1e-9,
        ));
    }

    Ok(out)
}

pub fn run_suite(suite: &str, n_r: usize, n_theta: usize) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    match suite {
        "operators" => out.extend(operators_suite(n_r, n_theta)?),
        "holder" => out.extend(holder_suite()?),
        "solver" => out.extend(solver_suite()?),
        "all" => {
            out.extend(operators_suite(n_r, n_theta)?);
            out.extend(holder_suite()?);
            out.extend(solver_suite()?);
        }
        other => bail!("unknown suite `{other}` (expected all | operators | holder | solver)"),
    }
    Ok(out)
}
