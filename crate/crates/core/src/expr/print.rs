//! Precedence-aware printing. `parse(to_string(e))` evaluates identically
//! to `e`; f64 literals use Rust's shortest round-trip formatting.

use std::fmt;

use super::{BinaryOp, Expr, ExprKind, UnaryOp, Var};
use crate::C64;

fn prec(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Binary(BinaryOp::Add | BinaryOp::Sub, _, _) => 1,
        ExprKind::Binary(BinaryOp::Mul | BinaryOp::Div, _, _) => 2,
        ExprKind::Unary(UnaryOp::Neg, _) => 3,
        ExprKind::Pow(_, _) => 4,
        // Literals that print in composite form are parenthesized, so
        // every remaining node behaves like an atom.
        _ => 5,
    }
}

fn fmt_lit(v: C64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if v.im == 0.0 {
        if v.re < 0.0 || v.re.is_sign_negative() {
            write!(f, "({})", v.re)
        } else {
            write!(f, "{}", v.re)
        }
    } else if v.re == 0.0 && v.im == 1.0 {
        write!(f, "i")
    } else if v.im >= 0.0 {
        write!(f, "({}+{}*i)", v.re, v.im)
    } else {
        write!(f, "({}-{}*i)", v.re, -v.im)
    }
}

fn fmt_child(e: &Expr, parent: u8, tight: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let p = prec(e);
    let need = if tight { p <= parent } else { p < parent };
    if need {
        write!(f, "(")?;
        write!(f, "{e}")?;
        write!(f, ")")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Lit(v) => fmt_lit(*v, f),
            ExprKind::Var(Var::Z) => write!(f, "z"),
            ExprKind::Var(Var::Deriv {
                comp,
                dz: 0,
                dzbar: 0,
            }) => write!(f, "u{comp}"),
            ExprKind::Var(Var::Deriv { comp, dz, dzbar }) => write!(f, "d({comp},{dz},{dzbar})"),
            ExprKind::Unary(UnaryOp::Neg, e) => {
                write!(f, "-")?;
                fmt_child(e, 3, true, f)
            }
            ExprKind::Unary(op, e) => {
                let name = match op {
                    UnaryOp::Conj => "conj",
                    UnaryOp::Re => "re",
                    UnaryOp::Im => "im",
                    UnaryOp::Exp => "exp",
                    UnaryOp::Log => "log",
                    UnaryOp::Neg => unreachable!(),
                };
                write!(f, "{name}({e})")
            }
            ExprKind::Binary(op, a, b) => {
                let (sym, p) = match op {
                    BinaryOp::Add => ("+", 1),
                    BinaryOp::Sub => ("-", 1),
                    BinaryOp::Mul => ("*", 2),
                    BinaryOp::Div => ("/", 2),
                };
                fmt_child(a, p, false, f)?;
                write!(f, " {sym} ")?;
                fmt_child(b, p, true, f)
            }
            ExprKind::Pow(base, n) => {
                fmt_child(base, 4, true, f)?;
                if *n < 0 {
                    write!(f, "^-{}", n.unsigned_abs())
                } else {
                    write!(f, "^{n}")
                }
            }
        }
    }
}
