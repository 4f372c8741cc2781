use super::*;
use crate::expr::parse;
use crate::grid::build_grid;
use crate::operators::op_s;
use std::sync::Arc;

fn ws(radius: f64, n_r: usize, n_theta: usize) -> OperatorWorkspace {
    OperatorWorkspace::new(build_grid(radius, n_r, n_theta).unwrap())
}

fn holder(alpha: f64) -> HolderParams {
    HolderParams::new(alpha)
}

fn zero_jet(ws: &OperatorWorkspace, order: usize) -> Jet {
    Jet::zeros(ws.grid().clone(), 1, order)
}

#[test]
fn omega_examples() {
    let w = ws(0.5, 12, 24);
    // m=1, ν=1, a = u², f = 0 → ω = 0.
    let spec = ProblemSpec::scalar(1, 0, 1, 0.5, parse("u0^2").unwrap());
    let omega = omega_map(&w, &spec, &zero_jet(&w, 1)).unwrap();
    assert!(omega.field().sup() < 1e-14);
    // f ≡ c constant → ω = c²·z̄.
    let cval = C64::new(0.3, -0.2);
    let mut f = zero_jet(&w, 1);
    f.set_deriv(0, 0, Field::constant(w.grid().clone(), 1, cval));
    let omega = omega_map(&w, &spec, &f).unwrap();
    let expect = Field::scalar_from_fn(w.grid().clone(), |z| cval * cval * z.conj());
    assert!(omega.field().sub(&expect).sup() < 1e-10);
    // m=2, μ=ν=1, a ≡ 1 → ω = zz̄ − R².
    let spec2 = ProblemSpec::scalar(2, 1, 1, 0.5, parse("1").unwrap());
    let omega = omega_map(&w, &spec2, &zero_jet(&w, 2)).unwrap();
    let expect = Field::scalar_from_fn(w.grid().clone(), |z| z * z.conj() - C64::new(0.25, 0.0));
    assert!(omega.field().sub(&expect).sup() < 3e-3);
}

#[test]
fn theta_corrects_the_jet_at_origin() {
    let w = ws(0.5, 12, 24);
    // m=1, a ≡ 1: Θ(f) = z̄ for every f.
    let spec = ProblemSpec::scalar(1, 0, 1, 0.5, parse("1").unwrap());
    let theta = theta_map(&w, &spec, &zero_jet(&w, 1)).unwrap();
    let expect = Field::scalar_from_fn(w.grid().clone(), |z| z.conj());
    assert!(theta.field().sub(&expect).sup() < 1e-10);
    // m=2, μ=ν=1, a ≡ 1: Θ = zz̄ (the constant −R² is corrected away).
    let spec2 = ProblemSpec::scalar(2, 1, 1, 0.5, parse("1").unwrap());
    let theta = theta_map(&w, &spec2, &zero_jet(&w, 2)).unwrap();
    let expect = Field::scalar_from_fn(w.grid().clone(), |z| z * z.conj());
    assert!(theta.field().sub(&expect).sup() < 3e-3);
    let center = w.grid().center_index();
    for (i, j) in pairs_up_to(1) {
        let v = theta.deriv(i, j).value(0, center).norm();
        assert!(v < 1e-12, "jet ({i},{j}) at origin: {v}");
    }
    // m=1, a = u², f = 0: Θ(0) = 0.
    let spec3 = ProblemSpec::scalar(1, 0, 1, 0.5, parse("u0^2").unwrap());
    let theta = theta_map(&w, &spec3, &zero_jet(&w, 1)).unwrap();
    assert!(theta.field().sup() < 1e-14);
}

#[test]
fn picard_constant_rhs_converges_to_conj_z() {
    let w = ws(0.5, 12, 24);
    let spec = ProblemSpec::scalar(1, 0, 1, 0.5, parse("1").unwrap());
    let cfg = SolveConfig::new(0.5);
    let (report, u) = picard_solve(&w, &spec, &cfg).unwrap();
    assert_eq!(report.status, SolveStatus::Converged);
    assert_eq!(report.iterations, 2);
    let expect = Field::scalar_from_fn(w.grid().clone(), |z| z.conj());
    assert!(u.field().sub(&expect).sup() < 1e-10);
    assert!(report.residual_history.last().unwrap() < &1e-8);
}

#[test]
fn picard_zero_fixed_point_of_u_squared() {
    let w = ws(0.5, 12, 24);
    let spec = ProblemSpec::scalar(1, 0, 1, 0.5, parse("u0^2").unwrap());
    let cfg = SolveConfig::new(0.5);
    let (report, u) = picard_solve(&w, &spec, &cfg).unwrap();
    assert_eq!(report.status, SolveStatus::Converged);
    assert!(u.field().sup() < 1e-14);
}

#[test]
fn picard_shifted_square_matches_closed_form() {
    // ∂̄u = u², u(0) = 1/2 has the solution 1/(2 − z̄) for the zero seed:
    // the fixed point normalizes S(ũ) to a constant, forcing φ ≡ 2.
    let w = ws(0.2, 16, 32);
    let spec = ProblemSpec::scalar(1, 0, 1, 0.5, parse("u0^2").unwrap()).with_initial_value(
        0,
        0,
        vec![C64::new(0.5, 0.0)],
    );
    let shifted = shift_initial_values(&spec).unwrap();
    let cfg = SolveConfig::new(0.5);
    let (report, u_tilde) = picard_solve(&w, &shifted.spec, &cfg).unwrap();
    assert_eq!(report.status, SolveStatus::Converged);
    assert!(
        report.iterations <= 30,
        "took {} iterations",
        report.iterations
    );
    let u = shifted.recombine(&u_tilde);
    let expect = Field::scalar_from_fn(w.grid().clone(), |z| {
        C64::new(1.0, 0.0) / (C64::new(2.0, 0.0) - z.conj())
    });
    let err = u.field().sub(&expect).sup();
    assert!(err < 5e-4, "closed-form mismatch {err}");
    // Achieved jet at the origin.
    let c0 = u.deriv(0, 0).value(0, w.grid().center_index());
    assert!((c0 - C64::new(0.5, 0.0)).norm() < 1e-10);
}

#[test]
fn picard_shifted_unit_value_matches_closed_form() {
    // ∂̄u = u² with u(0) = 1: the zero-seed fixed point is 1/(1 − z̄).
    let w = ws(0.2, 16, 32);
    let spec = ProblemSpec::scalar(1, 0, 1, 0.5, parse("u0^2").unwrap()).with_initial_value(
        0,
        0,
        vec![C64::new(1.0, 0.0)],
    );
    let shifted = shift_initial_values(&spec).unwrap();
    let mut cfg = SolveConfig::new(0.5);
    cfg.divergence_cap = 60.0;
    let (report, u_tilde) = picard_solve(&w, &shifted.spec, &cfg).unwrap();
    assert_eq!(report.status, SolveStatus::Converged);
    let u = shifted.recombine(&u_tilde);
    let expect = Field::scalar_from_fn(w.grid().clone(), |z| {
        C64::new(1.0, 0.0) / (C64::new(1.0, 0.0) - z.conj())
    });
    let err = u.field().sub(&expect).sup();
    assert!(err < 2e-3, "closed-form mismatch {err}");
    assert!(residual(&w, &spec, &u).unwrap() < 1e-6);
}

#[test]
fn solver_respects_nondefault_holder_exponent() {
    // Same quadratic problem at α = 0.75; all norms and certificates take
    // the exponent from the problem.
    let w = ws(0.2, 12, 24);
    let spec = ProblemSpec::scalar(1, 0, 1, 0.75, parse("(u0+0.5)^2").unwrap());
    let cfg = SolveConfig::new(0.75);
    let (report, u) = picard_solve(&w, &spec, &cfg).unwrap();
    assert_eq!(report.status, SolveStatus::Converged);
    assert!(residual(&w, &spec, &u).unwrap() < 1e-6);
    let est = constants_estimate(&spec, 0.2, 2.0, &SamplingParams::default()).unwrap();
    assert!(est.delta > 0.0 && est.eta > 0.0);
}

#[test]
fn shift_examples() {
    // m=1, c = 1, a = u² → b = (ũ+1)².
    let spec = ProblemSpec::scalar(1, 0, 1, 0.5, parse("u0^2").unwrap()).with_initial_value(
        0,
        0,
        vec![C64::new(1.0, 0.0)],
    );
    let shifted = shift_initial_values(&spec).unwrap();
    let env = crate::expr::Env::z_only(C64::new(0.0, 0.0)).bind(0, 0, 0, C64::new(0.25, 0.0));
    let v = crate::expr::eval(&shifted.spec.rhs[0], &env).unwrap();
    assert!((v - C64::new(1.5625, 0.0)).norm() < 1e-14);

    // m=2 jet: p = a + b₁z + b₂z̄ with matching derivatives at 0.
    let spec = ProblemSpec::scalar(2, 1, 1, 0.5, parse("u0").unwrap())
        .with_initial_value(0, 0, vec![C64::new(1.0, 0.0)])
        .with_initial_value(1, 0, vec![C64::new(2.0, 0.0)])
        .with_initial_value(0, 1, vec![C64::new(0.0, 3.0)]);
    let shifted = shift_initial_values(&spec).unwrap();
    let p = &shifted.shift;
    assert_eq!(p.eval(C64::new(0.0, 0.0), 0), C64::new(1.0, 0.0));
    assert_eq!(
        p.derivative(1, 0).eval(C64::new(0.0, 0.0), 0),
        C64::new(2.0, 0.0)
    );
    assert_eq!(
        p.derivative(0, 1).eval(C64::new(0.0, 0.0), 0),
        C64::new(0.0, 3.0)
    );

    // Zero jet → identity shift.
    let spec = ProblemSpec::scalar(1, 0, 1, 0.5, parse("u0^2").unwrap());
    let shifted = shift_initial_values(&spec).unwrap();
    assert!(shifted.shift.is_zero());
    assert_eq!(shifted.spec.rhs[0].to_string(), spec.rhs[0].to_string());
}

#[test]
fn residual_examples() {
    let w = ws(0.5, 12, 24);
    // u = z̄, a ≡ 1, (μ,ν) = (0,1) → residual 0.
    let spec = ProblemSpec::scalar(1, 0, 1, 0.5, parse("1").unwrap());
    let u = Jet::from_expr(&parse("conj(z)").unwrap(), w.grid(), 1).unwrap();
    assert!(residual(&w, &spec, &u).unwrap() < 1e-13);
    // u = zz̄, a ≡ 1, (μ,ν) = (1,1) → residual 0.
    let spec = ProblemSpec::scalar(2, 1, 1, 0.5, parse("1").unwrap());
    let u = Jet::from_expr(&parse("z*conj(z)").unwrap(), w.grid(), 2).unwrap();
    assert!(residual(&w, &spec, &u).unwrap() < 1e-13);
    // u = 0, a = u² → residual 0 exactly.
    let spec = ProblemSpec::scalar(1, 0, 1, 0.5, parse("u0^2").unwrap());
    let u = Jet::zeros(w.grid().clone(), 1, 1);
    assert_eq!(residual(&w, &spec, &u).unwrap(), 0.0);
}

#[test]
fn probe_scales_linearly_for_linear_rhs() {
    // a = λu: δ̂ = ‖corrected T(λ(f−g))‖/‖f−g‖ ∝ R.
    let lambda = 0.8;
    let spec = ProblemSpec::scalar(
        1,
        0,
        1,
        0.5,
        Expr::mul(Expr::lit_re(lambda), parse("u0").unwrap()),
    );
    let h = holder(0.5);
    let mut logs = Vec::new();
    for radius in [0.1, 0.2, 0.4] {
        let w = ws(radius, 12, 24);
        let (f, g) = default_probe_pair(&w, &spec, 1.0, &h);
        let d = contraction_probe(&w, &spec, &f, &g, &h).unwrap();
        logs.push((radius.ln(), d.ln()));
    }
    let slope = (logs[2].1 - logs[0].1) / (logs[2].0 - logs[0].0);
    assert!((slope - 1.0).abs() < 0.2, "δ̂ log-log slope {slope}");
}

#[test]
fn probe_vanishes_as_radius_shrinks_for_quadratic_rhs() {
    let spec = ProblemSpec::scalar(1, 0, 1, 0.5, parse("u0^2").unwrap());
    let h = holder(0.5);
    let mut deltas = Vec::new();
    for radius in [0.4, 0.2, 0.1] {
        let w = ws(radius, 12, 24);
        // Probe pair c₁ z̄, c₂ z̄.
        let f = Jet::from_expr(&parse("0.3*conj(z)").unwrap(), w.grid(), 1).unwrap();
        let g = Jet::from_expr(&parse("-0.2*conj(z)").unwrap(), w.grid(), 1).unwrap();
        deltas.push(contraction_probe(&w, &spec, &f, &g, &h).unwrap());
    }
    assert!(deltas[2] < deltas[1] && deltas[1] < deltas[0], "{deltas:?}");
    assert!(deltas[2] < 0.5 * deltas[0]);
}

#[test]
fn probe_rejects_equal_fields() {
    let w = ws(0.2, 12, 24);
    let spec = ProblemSpec::scalar(1, 0, 1, 0.5, parse("u0").unwrap());
    let f = zero_jet(&w, 1);
    assert!(contraction_probe(&w, &spec, &f, &f, &holder(0.5)).is_err());
}

#[test]
fn multiplicity_two_seeds_two_solutions() {
    // Distinct homogeneous seeds give distinct solutions of the same
    // equation with small residuals.
    let w = ws(0.2, 12, 24);
    let base = ProblemSpec::scalar(1, 0, 1, 0.5, parse("(u0+0.5)^2").unwrap());
    let cfg = SolveConfig::new(0.5);
    let (r0, u0) = picard_solve(&w, &base, &cfg).unwrap();
    let mut psi = PolyMap::zero(1);
    psi.add_term(1, 0, vec![C64::new(0.1, 0.0)]);
    let seeded = base.clone().with_psi(psi);
    let (r1, u1) = picard_solve(&w, &seeded, &cfg).unwrap();
    assert_eq!(r0.status, SolveStatus::Converged);
    assert_eq!(r1.status, SolveStatus::Converged);
    let h = holder(0.5);
    let sep = crate::holder::norm_k_value(&u0.sub(&u1), 1, &h);
    assert!(sep > 0.01, "solutions too close: {sep}");
    assert!(residual(&w, &base, &u0).unwrap() < 1e-6);
    assert!(residual(&w, &seeded, &u1).unwrap() < 1e-6);
}

#[test]
fn converged_solution_is_structurally_holomorphic() {
    // For ∂̄u = (ũ+c)² solved with zero seed, g = 1/u + z̄ must satisfy
    // S g = g up to a constant (g holomorphic); checked through the Cauchy
    // integral, an independent route from the iteration identities.
    let w = ws(0.2, 16, 32);
    let spec = ProblemSpec::scalar(1, 0, 1, 0.5, parse("u0^2").unwrap()).with_initial_value(
        0,
        0,
        vec![C64::new(0.5, 0.0)],
    );
    let shifted = shift_initial_values(&spec).unwrap();
    let (_, u_tilde) = picard_solve(&w, &shifted.spec, &SolveConfig::new(0.5)).unwrap();
    let u = shifted.recombine(&u_tilde);
    let g_field = u.field().map(|v| C64::new(1.0, 0.0) / v).zip_map(
        &Field::scalar_from_fn(w.grid().clone(), |z| z.conj()),
        |a, b| a + b,
    );
    let err = op_s(&g_field, w.grid()).sub(&g_field).sup();
    assert!(err < 5e-4, "Cauchy-reproduction defect {err}");
}

#[test]
fn constants_examples() {
    let sampling = SamplingParams::default();
    // a = λu: A = |λ| exactly.
    let spec = ProblemSpec::scalar(
        1,
        0,
        1,
        0.5,
        Expr::mul(Expr::lit_re(0.7), parse("u0").unwrap()),
    );
    let est = constants_estimate(&spec, 0.3, 2.0, &sampling).unwrap();
    assert!((est.a_sup - 0.7).abs() < 1e-12);

    // a = u²: A = 2·C·R·γ, attained on the box face.
    let spec = ProblemSpec::scalar(1, 0, 1, 0.5, parse("u0^2").unwrap());
    let est = constants_estimate(&spec, 0.3, 2.0, &sampling).unwrap();
    let expect = 2.0 * sampling.generic_c * 0.3 * 2.0;
    assert!(
        (est.a_sup - expect).abs() < 1e-9 * expect,
        "{} vs {expect}",
        est.a_sup
    );

    // a ≡ const: everything collapses.
    let spec = ProblemSpec::scalar(1, 0, 1, 0.5, parse("2.5").unwrap());
    let est = constants_estimate(&spec, 0.3, 2.0, &sampling).unwrap();
    assert_eq!(est.a_sup, 0.0);
    assert_eq!(est.h_alpha_a, 0.0);
    assert_eq!(est.delta, 0.0);
    assert!((est.eta - 2.5).abs() < 1e-12);
}

#[test]
fn constants_monotone_in_input_magnitudes() {
    // δ and η grow with γ (which inflates A for superlinear RHS).
    let spec = ProblemSpec::scalar(1, 0, 1, 0.5, parse("u0^2").unwrap());
    let sampling = SamplingParams::default();
    let small = constants_estimate(&spec, 0.3, 1.0, &sampling).unwrap();
    let large = constants_estimate(&spec, 0.3, 3.0, &sampling).unwrap();
    assert!(large.delta >= small.delta);
    assert!(large.eta >= small.eta);
}

#[test]
fn radius_search_constant_rhs_returns_r_max() {
    // a ≡ 1: δ ≡ 0, η = C(1 + R·0) = 1 ≤ γ₀/2 = 4.
    let spec = ProblemSpec::scalar(1, 0, 1, 0.5, parse("1").unwrap());
    let params = RadiusSearchParams::default();
    match radius_search(&spec, 8.0, &params).unwrap() {
        RadiusSearchOutcome::Admissible(cert) => {
            assert_eq!(cert.r_admissible, 1.0);
            assert_eq!(cert.certificate.delta, 0.0);
        }
        RadiusSearchOutcome::Failed { reason, .. } => panic!("unexpected failure: {reason}"),
    }
}

#[test]
fn radius_search_quadratic_rhs_finds_positive_radius() {
    let spec = ProblemSpec::scalar(1, 0, 1, 0.5, parse("u0^2").unwrap());
    let params = RadiusSearchParams::default();
    match radius_search(&spec, 4.0, &params).unwrap() {
        RadiusSearchOutcome::Admissible(cert) => {
            assert!(cert.r_admissible > 0.0);
            assert!(cert.certificate.delta <= 0.75);
            assert!(cert.certificate.eta <= 2.0);
            if let Some(d) = cert.probe_delta {
                assert!(d <= 0.75);
            }
        }
        RadiusSearchOutcome::Failed { reason, .. } => panic!("unexpected failure: {reason}"),
    }
}

#[test]
fn radius_search_rejects_small_gamma0() {
    let spec = ProblemSpec::scalar(1, 0, 1, 0.5, parse("(u0+1)^2").unwrap());
    // |a(0)| = 1, so gamma0 must exceed 4.
    assert!(radius_search(&spec, 3.0, &RadiusSearchParams::default()).is_err());
}

#[test]
fn radius_search_fails_for_full_order_dependence() {
    // The transport demo: the ∂u coefficient has modulus ≥ 1 near the
    // origin and carries weight R⁰, so δ never shrinks.
    let mut spec = ProblemSpec::scalar(
        1,
        0,
        1,
        0.5,
        parse("1/(1+re(z)) - ((1-re(z))/(1+re(z)))*d(0,1,0)").unwrap(),
    );
    spec.allow_order_m_rhs = true;
    let params = RadiusSearchParams {
        r_max: 0.5,
        cross_check_probe: false,
        ..Default::default()
    };
    match radius_search(&spec, 8.0, &params).unwrap() {
        RadiusSearchOutcome::Failed { tested, .. } => {
            for (_, delta, _) in tested {
                assert!(delta > 0.75, "δ = {delta} unexpectedly admissible");
            }
        }
        RadiusSearchOutcome::Admissible(cert) => {
            panic!("expected failure, got R = {}", cert.r_admissible)
        }
    }
}

#[test]
fn transport_demo_probe_is_non_contractive() {
    // δ̂ ≥ 0.9 across radii for the full-order RHS: probe pair differing
    // by ε·z so the ∂u slot sees the difference.
    let mut spec = ProblemSpec::scalar(
        1,
        0,
        1,
        0.5,
        parse("1/(1+re(z)) - ((1-re(z))/(1+re(z)))*d(0,1,0)").unwrap(),
    );
    spec.allow_order_m_rhs = true;
    let h = holder(0.5);
    for radius in [0.05, 0.1, 0.2] {
        let w = ws(radius, 12, 24);
        let f = Jet::from_expr(&parse("0.5*z").unwrap(), w.grid(), 1).unwrap();
        let g = f.scale(C64::new(-1.0, 0.0));
        let d = contraction_probe(&w, &spec, &f, &g, &h).unwrap();
        assert!(d >= 0.9, "R = {radius}: δ̂ = {d}");
    }
}

#[test]
fn jet_env_reads_jet_entries() {
    let g = build_grid(0.5, 8, 16).unwrap();
    let jet = Jet::from_expr(&parse("z^2*conj(z)").unwrap(), &g, 1).unwrap();
    let node = g.node_index(3, 4);
    let env = JetNodeEnv::new(&jet, node);
    let z = g.node(node);
    assert_eq!(env.z(), z);
    let v = env.deriv(0, 1, 0).unwrap();
    assert!((v - 2.0 * z * z.conj()).norm() < 1e-12);
    assert!(env.deriv(0, 1, 1).is_none());
    assert!(env.deriv(1, 0, 0).is_none());
}

fn _assert_send_sync<T: Send + Sync>() {}

#[test]
fn workspace_is_shareable() {
    _assert_send_sync::<Arc<OperatorWorkspace>>();
}

#[test]
fn coupled_two_component_system_converges() {
    // ∂̄u₀ = u₁ + 1, ∂̄u₁ = u₀² with zero jets: exercises vector fields,
    // multi-component jets and the component-max norms end to end.
    let w = ws(0.2, 16, 32);
    let spec = ProblemSpec {
        m: 1,
        mu: 0,
        nu: 1,
        n_components: 2,
        alpha: 0.5,
        rhs: vec![parse("u1 + 1").unwrap(), parse("u0^2").unwrap()],
        initial_jet: Default::default(),
        psi: PolyMap::zero(2),
        allow_order_m_rhs: false,
    };
    let cfg = SolveConfig::new(0.5);
    let (report, u) = picard_solve(&w, &spec, &cfg).unwrap();
    assert_eq!(report.status, SolveStatus::Converged);
    assert!(residual(&w, &spec, &u).unwrap() < 1e-6);
    // u₀ picks up z̄ at leading order, u₁ stays quadratically small.
    let u0_lead = u.deriv(0, 1).value(0, w.grid().center_index());
    assert!(
        (u0_lead - C64::new(1.0, 0.0)).norm() < 1e-6,
        "∂̄u₀(0) = {u0_lead}"
    );
    assert!(u.field().component(1).iter().all(|v| v.norm() < 0.01));
    // Components are genuinely coupled: u₁ is not identically zero.
    let sup1 = u
        .field()
        .component(1)
        .iter()
        .fold(0.0f64, |m, v| m.max(v.norm()));
    assert!(sup1 > 1e-5, "u₁ sup {sup1}");
}
