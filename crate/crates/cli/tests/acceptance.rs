//! Acceptance suite: every release criterion, one test each, at its stated
//! tolerance. Each test prints a `criterion N PASS` line with the measured
//! values (visible with `--nocapture`).

use std::time::Instant;

use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pompeiu::expr::{parse, Expr};
use pompeiu::field::Field;
use pompeiu::grid::build_grid;
use pompeiu::holder::{norm_alpha_value, norm_k_value, HolderParams};
use pompeiu::jet::{Jet, PolyMap};
use pompeiu::operators::oracle::{t_poly, Poly};
use pompeiu::operators::{op_s, op_sb, op_t, op_t2, OperatorWorkspace};
use pompeiu::solver::{
    contraction_probe, default_probe_pair, picard_solve, residual, shift_initial_values,
    SolveConfig, SolveStatus,
};
use pompeiu::ProblemSpec;

use pompeiu_cli::corpus;
use pompeiu_cli::validate;

const ALPHA: f64 = 0.5;

fn holder() -> HolderParams {
    HolderParams::new(ALPHA)
}

fn ws(radius: f64, n_r: usize, n_theta: usize) -> OperatorWorkspace {
    OperatorWorkspace::new(build_grid(radius, n_r, n_theta).unwrap())
}

/// Batched max-node T errors for the monomial battery, one component per
/// monomial.
fn t_errors(w: &OperatorWorkspace, polys: &[Poly]) -> Vec<f64> {
    let grid = w.grid();
    let f = Field::from_fn(grid.clone(), polys.len(), |comp, z| polys[comp].eval(z));
    let got = op_t(w, &f);
    polys
        .iter()
        .enumerate()
        .map(|(comp, p)| {
            let exact = t_poly(p, grid.radius());
            (0..grid.num_nodes())
                .map(|i| (got.value(comp, i) - exact.eval(grid.node(i))).norm())
                .fold(0.0f64, f64::max)
        })
        .collect()
}

#[test]
fn criterion_01_operator_exactness_and_refinement() {
    let started = Instant::now();
    let polys = [
        Poly::monomial(0, 0, C64::new(1.0, 0.0)),
        Poly::monomial(0, 1, C64::new(1.0, 0.0)),
        Poly::monomial(1, 0, C64::new(1.0, 0.0)),
    ];
    let coarse = t_errors(&ws(1.0, 48, 96), &polys);
    let fine = t_errors(&ws(1.0, 96, 192), &polys);
    let elapsed = started.elapsed().as_secs_f64();

    for (name, err) in ["T(1)", "T(z̄)", "T(z)"].iter().zip(&coarse) {
        assert!(*err <= 5e-3, "{name} error {err:.3e} > 5e-3");
    }
    let rate_floor = 2.0f64.powf(ALPHA);
    let mut rates = Vec::new();
    for (c, f) in coarse.iter().zip(&fine) {
        if *c <= 1e-10 {
            rates.push(f64::INFINITY);
            continue;
        }
        let rate = c / f.max(1e-300);
        assert!(
            rate >= rate_floor,
            "refinement rate {rate:.2} < 2^α = {rate_floor:.2}"
        );
        rates.push(rate);
    }
    assert!(elapsed <= 60.0, "criterion 1 runtime {elapsed:.1}s > 60s");
    println!(
        "criterion 1 PASS: T errors (48×96) = {:.2e}/{:.2e}/{:.2e} ≤ 5e-3, \
         refinement rates {:.1}/{:.1} ≥ {:.2}, runtime {elapsed:.1}s ≤ 60s",
        coarse[0], coarse[1], coarse[2], rates[1], rates[2], rate_floor
    );
}

#[test]
fn criterion_02_identity_suite() {
    let w = ws(1.0, 48, 96);
    let family = [(0usize, 1usize), (1, 1), (0, 2), (2, 1)];
    let mut worst1 = 0.0f64;
    let mut worst2 = 0.0f64;
    for (a, b) in family {
        let p = Poly::monomial(a, b, C64::new(1.0, 0.0));
        let f = p.to_field(w.grid());
        // ‖T∂̄f + Sf − f‖_sup
        let e1 = op_t(&w, &p.diff(0, 1).to_field(w.grid()))
            .add(&op_s(&f, w.grid()))
            .sub(&f)
            .sup();
        worst1 = worst1.max(e1);
        // ‖²Tf − T∂f + S_b f‖_sup
        let jet =
            Jet::from_expr(&parse(&format!("z^{a}*conj(z)^{b}")).unwrap(), w.grid(), 1).unwrap();
        let e2 = op_t2(&w, &f, Some(&jet))
            .sub(&op_t(&w, &p.diff(1, 0).to_field(w.grid())))
            .add(&op_sb(&f, w.grid()))
            .sup();
        worst2 = worst2.max(e2);
    }
    assert!(worst1 <= 5e-3, "‖T∂̄f + Sf − f‖ = {worst1:.3e} > 5e-3");
    assert!(worst2 <= 1e-2, "‖²Tf − T∂f + S_bf‖ = {worst2:.3e} > 1e-2");
    println!(
        "criterion 2 PASS: ‖T∂̄f + Sf − f‖ = {worst1:.2e} ≤ 5e-3, \
         ‖²Tf − T∂f + S_bf‖ = {worst2:.2e} ≤ 1e-2"
    );
}

#[test]
fn criterion_03_sup_bound() {
    let w = ws(1.0, 32, 64);
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..50 {
        let coeffs: Vec<C64> = (0..10)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let f = Field::scalar_from_fn(w.grid().clone(), move |z| {
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
        });
        let excess = op_t(&w, &f).sup() - 4.0 * w.grid().radius() * f.sup();
        worst = worst.max(excess);
    }
    assert!(worst <= 5e-3, "sup-bound excess {worst:.3e} > 5e-3");
    println!("criterion 3 PASS: max(|Tf| − 4R|f|) = {worst:.2e} ≤ 5e-3 over 50 seeded fields");
}

#[test]
fn criterion_04_holder_suite() {
    let hp = holder();
    let mut norms = Vec::new();
    for radius in [0.5, 1.0] {
        let grid = build_grid(radius, 16, 32).unwrap();
        let f = Field::scalar_from_fn(grid, |z| z);
        let n = norm_alpha_value(&f, &hp);
        assert!(
            (n - 3.0 * radius).abs() <= 0.02 * 3.0 * radius,
            "‖z‖ = {n} vs 3R = {} at R = {radius}",
            3.0 * radius
        );
        norms.push(n);
    }
    // Banach algebra on exact full-pair discrete norms.
    let grid = build_grid(1.0, 8, 24).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst_ratio = 0.0f64;
    for _ in 0..100 {
        let coeffs: Vec<C64> = (0..12)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let poly = |lo: usize, z: C64| {
            let zb = z.conj();
            coeffs[lo]
                + coeffs[lo + 1] * z
                + coeffs[lo + 2] * zb
                + coeffs[lo + 3] * z * z
                + coeffs[lo + 4] * z * zb
                + coeffs[lo + 5] * zb * zb
        };
        let f = Field::scalar_from_fn(grid.clone(), |z| poly(0, z));
        let g = Field::scalar_from_fn(grid.clone(), |z| poly(6, z));
        let prod = f.zip_map(&g, |a, b| a * b);
        let ratio =
            norm_alpha_value(&prod, &hp) / (norm_alpha_value(&f, &hp) * norm_alpha_value(&g, &hp));
        worst_ratio = worst_ratio.max(ratio);
    }
    assert!(
        worst_ratio <= 1.0 + 1e-12,
        "Banach algebra violated: ratio {worst_ratio}"
    );
    println!(
        "criterion 4 PASS: ‖z‖ = {:.4}/{:.4} (3R ± 2%), Banach ratio max {worst_ratio:.3} ≤ 1",
        norms[0], norms[1]
    );
}

#[test]
fn criterion_05_scaling_laws() {
    let hp = holder();
    let mut slopes = Vec::new();
    for (a, b) in [(1usize, 0usize), (0, 1), (1, 1), (2, 0), (0, 2)] {
        let m = a + b;
        let mut logs = Vec::new();
        for radius in [0.25, 0.5, 1.0] {
            let grid = build_grid(radius, 8, 16).unwrap();
            let f = Field::scalar_from_fn(grid.clone(), move |z| {
                z.powu(a as u32) * z.conj().powu(b as u32)
            });
            let jet =
                Jet::from_expr(&parse(&format!("z^{a}*conj(z)^{b}")).unwrap(), &grid, m).unwrap();
            let ratio = norm_alpha_value(&f, &hp) / norm_k_value(&jet, m, &hp);
            logs.push((radius.ln(), ratio.ln()));
        }
        let slope = (logs[2].1 - logs[0].1) / (logs[2].0 - logs[0].0);
        assert!(
            (slope - m as f64).abs() <= 0.1,
            "z^{a}z̄^{b}: slope {slope} vs {m} ± 0.1"
        );
        slopes.push(slope);
    }
    // δ̂ ~ R for a = λu.
    let spec = ProblemSpec::scalar(
        1,
        0,
        1,
        ALPHA,
        Expr::mul(Expr::lit_re(0.8), parse("u0").unwrap()),
    );
    let mut logs = Vec::new();
    for radius in [0.1, 0.2, 0.4] {
        let w = ws(radius, 12, 24);
        let (f, g) = default_probe_pair(&w, &spec, 1.0, &hp);
        logs.push((
            radius.ln(),
            contraction_probe(&w, &spec, &f, &g, &hp).unwrap().ln(),
        ));
    }
    let probe_slope = (logs[2].1 - logs[0].1) / (logs[2].0 - logs[0].0);
    assert!(
        (probe_slope - 1.0).abs() <= 0.2,
        "δ̂ slope {probe_slope} vs 1 ± 0.2"
    );
    println!(
        "criterion 5 PASS: norm-ratio slopes {slopes:.2?} (targets m ± 0.1), \
         δ̂ slope {probe_slope:.3} = 1 ± 0.2"
    );
}

#[test]
fn criterion_06_solver_convergence() {
    for name in ["dbar-u-squared", "dbar-exp-u"] {
        let started = Instant::now();
        let run = corpus::run_corpus(name, None).unwrap();
        let elapsed = started.elapsed().as_secs_f64();
        assert!(run.pass, "{name}: {}", run.detail);
        let report = run.report.as_ref().unwrap();
        assert!(
            report.iterations <= 30,
            "{name}: {} iterations > 30",
            report.iterations
        );
        let res = report.residual_history.last().copied().unwrap_or(f64::NAN);
        assert!(res <= 1e-3, "{name}: residual {res:.3e} > 1e-3");
        let defect = run.oracle_defect.unwrap();
        assert!(defect <= 1e-2, "{name}: oracle defect {defect:.3e} > 1e-2");
        // Contraction ratios in the monotone tail.
        let diffs = &report.diff_norms;
        let mut tail = diffs.len().saturating_sub(1);
        while tail > 0 && diffs[tail - 1] > diffs[tail] {
            tail -= 1;
        }
        let worst_ratio = report.contraction_ratios[tail.max(1) - 1..]
            .iter()
            .cloned()
            .fold(0.0f64, f64::max);
        assert!(
            worst_ratio <= 0.85,
            "{name}: monotone ratio {worst_ratio:.3} > 0.85"
        );
        assert!(elapsed <= 300.0, "{name}: runtime {elapsed:.1}s > 5 min");
        println!(
            "criterion 6 PASS: {name} converged in {} iters, residual {res:.1e} ≤ 1e-3, \
             oracle {defect:.1e} ≤ 1e-2, ratios ≤ {worst_ratio:.2}, {elapsed:.1}s",
            report.iterations
        );
    }
}

#[test]
fn criterion_07_multiplicity() {
    let spec = ProblemSpec::scalar(1, 0, 1, ALPHA, parse("u0^2").unwrap()).with_initial_value(
        0,
        0,
        vec![C64::new(0.5, 0.0)],
    );
    let shifted = shift_initial_values(&spec).unwrap();
    let w = ws(0.2, 24, 48);
    let cfg = SolveConfig::new(ALPHA);
    let (r0, u0) = picard_solve(&w, &shifted.spec, &cfg).unwrap();
    let mut psi = PolyMap::zero(1);
    psi.add_term(1, 0, vec![C64::new(0.1, 0.0)]);
    let seeded = shifted.spec.clone().with_psi(psi);
    let (r1, u1) = picard_solve(&w, &seeded, &cfg).unwrap();
    assert_eq!(r0.status, SolveStatus::Converged);
    assert_eq!(r1.status, SolveStatus::Converged);
    let sep = norm_k_value(&u0.sub(&u1), 1, &holder());
    let res0 = residual(&w, &shifted.spec, &u0).unwrap();
    let res1 = residual(&w, &seeded, &u1).unwrap();
    assert!(sep >= 0.01, "separation {sep:.3e} < 0.01");
    assert!(
        res0 <= 1e-3 && res1 <= 1e-3,
        "residuals {res0:.1e}/{res1:.1e} > 1e-3"
    );
    println!(
        "criterion 7 PASS: seeds ψ ∈ {{0, 0.1z}} give ‖u₁−u₂‖⁽¹⁾ = {sep:.3} ≥ 0.01, \
         residuals {res0:.1e}/{res1:.1e} ≤ 1e-3"
    );
}

#[test]
fn criterion_08_osserman_regime() {
    let run = corpus::run_corpus("liouville-osserman", None).unwrap();
    assert!(run.pass, "R = 0.2: {}", run.detail);
    let res = run
        .report
        .as_ref()
        .unwrap()
        .residual_history
        .last()
        .copied()
        .unwrap();
    assert!(res <= 1e-2, "residual {res:.3e} > 1e-2 at R = 0.2");
    let run3 = corpus::run_corpus("liouville-osserman", Some(3.0)).unwrap();
    assert_ne!(
        run3.status, "converged",
        "must not converge at R = 3 > 2e⁻⁰"
    );
    assert_eq!(corpus::corpus_exit_code(&run3), 2);
    println!(
        "criterion 8 PASS: converges at R = 0.2 (residual {res:.1e} ≤ 1e-2), \
         reports non-convergence (exit 2) at R = 3 > 2: {}",
        run3.status
    );
}

#[test]
fn criterion_09_non_contraction_probe() {
    let run = corpus::run_corpus("mizohata-demo", None).unwrap();
    let table = run.probe_table.as_ref().unwrap();
    let radii: Vec<f64> = table.iter().map(|(r, _)| *r).collect();
    assert_eq!(radii, vec![0.05, 0.1, 0.2]);
    for (r, d) in table {
        assert!(*d >= 0.9, "δ̂ = {d:.3} < 0.9 at R = {r}");
    }
    println!("criterion 9 PASS: δ̂ = {table:?} all ≥ 0.9");
}

#[test]
fn criterion_10_jet_correction() {
    let worst = validate::jet_correction_worst(20).unwrap();
    assert!(worst <= 1e-6, "normalized jet residue {worst:.3e} > 1e-6");
    println!(
        "criterion 10 PASS: max |∂^k∂̄^l Θ(f)(0)| / ‖Θ(f)‖⁽ᵐ⁾ = {worst:.2e} ≤ 1e-6 \
         over 20 random specs"
    );
}
