//! Symbolic Wirtinger differentiation.
//!
//! Every variable ξ and its conjugate ξ̄ are treated as independent:
//! ∂ξ/∂ξ = 1, ∂ξ̄/∂ξ = 0, ∂ξ̄/∂ξ̄ = 1. `exp`/`log` follow the chain rule in
//! their (holomorphic) argument; `re`/`im` are expanded through
//! `re w = (w + w̄)/2`, `im w = (w − w̄)/(2i)` before differentiating.

use super::{BinaryOp, Expr, ExprKind, UnaryOp, Var};
use crate::C64;

/// Returns ∂e/∂var (or ∂e/∂v̄ar when `conjugate` is set) as a new tree.
/// Total on well-formed input; derivatives of `log`/`/` keep their
/// singularities as explicit division nodes.
pub fn wirtinger_derive(e: &Expr, var: Var, conjugate: bool) -> Expr {
    match &e.kind {
        ExprKind::Lit(_) => Expr::lit(C64::new(0.0, 0.0)),
        ExprKind::Var(v) => {
            if *v == var && !conjugate {
                Expr::lit(C64::new(1.0, 0.0))
            } else {
                Expr::lit(C64::new(0.0, 0.0))
            }
        }
        ExprKind::Unary(op, inner) => {
            match op {
                UnaryOp::Neg => Expr::unary(UnaryOp::Neg, wirtinger_derive(inner, var, conjugate)),
                // ∂(w̄)/∂ξ = conj(∂w/∂ξ̄).
                UnaryOp::Conj => {
                    Expr::unary(UnaryOp::Conj, wirtinger_derive(inner, var, !conjugate))
                }
                UnaryOp::Re => {
                    let d = wirtinger_derive(inner, var, conjugate);
                    let dc = Expr::unary(UnaryOp::Conj, wirtinger_derive(inner, var, !conjugate));
                    Expr::mul(Expr::lit(C64::new(0.5, 0.0)), Expr::add(d, dc))
                }
                UnaryOp::Im => {
                    let d = wirtinger_derive(inner, var, conjugate);
                    let dc = Expr::unary(UnaryOp::Conj, wirtinger_derive(inner, var, !conjugate));
                    // 1/(2i) = -i/2.
                    Expr::mul(Expr::lit(C64::new(0.0, -0.5)), Expr::sub(d, dc))
                }
                UnaryOp::Exp => Expr::mul(
                    Expr::unary(UnaryOp::Exp, (**inner).clone()),
                    wirtinger_derive(inner, var, conjugate),
                ),
                UnaryOp::Log => {
                    Expr::div(wirtinger_derive(inner, var, conjugate), (**inner).clone())
                }
            }
        }
        ExprKind::Binary(op, a, b) => {
            let da = wirtinger_derive(a, var, conjugate);
            let db = wirtinger_derive(b, var, conjugate);
            match op {
                BinaryOp::Add => Expr::add(da, db),
                BinaryOp::Sub => Expr::sub(da, db),
                BinaryOp::Mul => {
                    Expr::add(Expr::mul(da, (**b).clone()), Expr::mul((**a).clone(), db))
                }
                BinaryOp::Div => {
                    // (a/b)' = (a'b - ab')/b².
                    let num = Expr::sub(Expr::mul(da, (**b).clone()), Expr::mul((**a).clone(), db));
                    Expr::div(num, Expr::pow((**b).clone(), 2))
                }
            }
        }
        ExprKind::Pow(base, n) => {
            let d = wirtinger_derive(base, var, conjugate);
            Expr::mul(
                Expr::mul(
                    Expr::lit(C64::new(*n as f64, 0.0)),
                    Expr::pow((**base).clone(), n - 1),
                ),
                d,
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{eval, parse, Env};
    use super::*;

    #[test]
    fn derivative_of_square_is_linear() {
        let e = parse("u0^2").unwrap();
        let d = wirtinger_derive(&e, Var::deriv(0, 0, 0), false);
        for v in [C64::new(1.5, -0.3), C64::new(0.0, 2.0)] {
            let env = Env::z_only(C64::new(0.0, 0.0)).bind(0, 0, 0, v);
            assert!((eval(&d, &env).unwrap() - 2.0 * v).norm() < 1e-14);
        }
    }

    #[test]
    fn conjugate_variable_rules() {
        let e = parse("conj(u0)").unwrap();
        let d = wirtinger_derive(&e, Var::deriv(0, 0, 0), false);
        let dbar = wirtinger_derive(&e, Var::deriv(0, 0, 0), true);
        let env = Env::z_only(C64::new(0.0, 0.0)).bind(0, 0, 0, C64::new(0.7, 0.2));
        assert_eq!(eval(&d, &env).unwrap(), C64::new(0.0, 0.0));
        assert_eq!(eval(&dbar, &env).unwrap(), C64::new(1.0, 0.0));
    }

    #[test]
    fn transport_rhs_coefficients_at_origin() {
        // a = F/(1+re z) - ((1-re z)/(1+re z))·η with F ≡ 1, η = ∂u.
        let a = parse("1/(1+re(z)) - ((1-re(z))/(1+re(z)))*d(0,1,0)").unwrap();
        let eta = Var::deriv(0, 1, 0);
        let da = wirtinger_derive(&a, eta, false);
        let dabar = wirtinger_derive(&a, eta, true);
        let env = Env::z_only(C64::new(0.0, 0.0)).bind(0, 1, 0, C64::new(0.3, 0.1));
        assert!((eval(&da, &env).unwrap() - C64::new(-1.0, 0.0)).norm() < 1e-14);
        assert_eq!(eval(&dabar, &env).unwrap(), C64::new(0.0, 0.0));
    }

    #[test]
    fn z_slot_derivatives_use_re_expansion() {
        // f = re(z): ∂f/∂z = 1/2, ∂f/∂z̄ = 1/2.
        let e = parse("re(z)").unwrap();
        let env = Env::z_only(C64::new(0.4, -0.2));
        let dz = eval(&wirtinger_derive(&e, Var::Z, false), &env).unwrap();
        let dzbar = eval(&wirtinger_derive(&e, Var::Z, true), &env).unwrap();
        assert!((dz - C64::new(0.5, 0.0)).norm() < 1e-14);
        assert!((dzbar - C64::new(0.5, 0.0)).norm() < 1e-14);
    }
}
