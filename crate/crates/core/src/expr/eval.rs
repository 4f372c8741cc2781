//! Expression evaluation with standard complex semantics.

use thiserror::Error;

use super::{BinaryOp, Expr, ExprKind, Span, UnaryOp, Var};
use crate::C64;

/// Binding of expression variables to complex values.
///
/// The solver implements this directly over jet storage so evaluation never
/// copies node data.
pub trait EvalEnv {
    fn z(&self) -> C64;
    fn deriv(&self, comp: usize, dz: usize, dzbar: usize) -> Option<C64>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalErrorKind {
    DivisionByZero,
    LogOfZero,
    Unbound(Var),
}

#[derive(Debug, Clone, Error, PartialEq)]
#[error("evaluation error at offset {}..{}: {}", span.start, span.end, describe(kind))]
pub struct EvalError {
    pub span: Span,
    pub kind: EvalErrorKind,
}

fn describe(kind: &EvalErrorKind) -> String {
    match kind {
        EvalErrorKind::DivisionByZero => "division by zero".to_string(),
        EvalErrorKind::LogOfZero => "log of zero".to_string(),
        EvalErrorKind::Unbound(v) => format!("unbound variable {v:?}"),
    }
}

/// Evaluates an expression in an environment. `log` is the principal
/// branch; `log(0)` and division by zero are domain errors carrying the
/// offending node's span.
pub fn eval<E: EvalEnv>(e: &Expr, env: &E) -> Result<C64, EvalError> {
    match &e.kind {
        ExprKind::Lit(v) => Ok(*v),
        ExprKind::Var(Var::Z) => Ok(env.z()),
        ExprKind::Var(Var::Deriv { comp, dz, dzbar }) => {
            env.deriv(*comp, *dz, *dzbar).ok_or(EvalError {
                span: e.span,
                kind: EvalErrorKind::Unbound(Var::Deriv {
                    comp: *comp,
                    dz: *dz,
                    dzbar: *dzbar,
                }),
            })
        }
        ExprKind::Unary(op, inner) => {
            let v = eval(inner, env)?;
            Ok(match op {
                UnaryOp::Neg => -v,
                UnaryOp::Conj => v.conj(),
                UnaryOp::Re => C64::new(v.re, 0.0),
                UnaryOp::Im => C64::new(v.im, 0.0),
                UnaryOp::Exp => v.exp(),
                UnaryOp::Log => {
                    if v == C64::new(0.0, 0.0) {
                        return Err(EvalError {
                            span: e.span,
                            kind: EvalErrorKind::LogOfZero,
                        });
                    }
                    v.ln()
                }
            })
        }
        ExprKind::Binary(op, a, b) => {
            let x = eval(a, env)?;
            let y = eval(b, env)?;
            Ok(match op {
                BinaryOp::Add => x + y,
                BinaryOp::Sub => x - y,
                BinaryOp::Mul => x * y,
                BinaryOp::Div => {
                    if y == C64::new(0.0, 0.0) {
                        return Err(EvalError {
                            span: e.span,
                            kind: EvalErrorKind::DivisionByZero,
                        });
                    }
                    x / y
                }
            })
        }
        ExprKind::Pow(base, n) => {
            let v = eval(base, env)?;
            if *n < 0 && v == C64::new(0.0, 0.0) {
                return Err(EvalError {
                    span: e.span,
                    kind: EvalErrorKind::DivisionByZero,
                });
            }
            Ok(v.powi(*n))
        }
    }
}
