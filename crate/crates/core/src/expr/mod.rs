//! Expression DSL for right-hand sides `a(z, u, D¹u, …)`.
//!
//! Grammar (EBNF, whitespace insignificant):
//!
//! ```text
//! expr     := term { ("+" | "-") term }
//! term     := factor { ("*" | "/") factor }
//! factor   := "-" factor | power
//! power    := atom [ "^" exponent ]
//! exponent := [ "-" ] integer
//! atom     := number | "i" | "z" | "u" integer
//!           | "d" "(" integer "," integer "," integer ")"
//!           | func "(" expr ")" | "(" expr ")"
//! func     := "conj" | "re" | "im" | "exp" | "log"
//! number   := digits [ "." digits ] [ ("e"|"E") ["+"|"-"] digits ]
//! ```
//!
//! `z` is the disk coordinate, `i` the imaginary unit. `d(j, p, q)` denotes
//! the derivative `∂^p ∂̄^q u_j` of the j-th solution component; `u3` is
//! shorthand for `d(3, 0, 0)`. `log` is the principal branch. There is no
//! implicit multiplication: write `3*i`, not `3i`.
//!
//! Expressions must stay closed under Wirtinger differentiation, which this
//! node set is: see [`wirtinger_derive`].

mod derive;
mod eval;
mod parse;
mod print;

pub use derive::wirtinger_derive;
pub use eval::{eval, EvalEnv, EvalError, EvalErrorKind};
pub use parse::{parse, ParseError};

use std::collections::{BTreeSet, HashMap};

use crate::C64;

/// Byte range of a node in its source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Span {
        Span { start, end }
    }

    fn join(self, other: Span) -> Span {
        Span {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }
}

/// A variable of the DSL: the coordinate `z` or a jet entry `∂^dz ∂̄^dzbar u_comp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Z,
    Deriv {
        comp: usize,
        dz: usize,
        dzbar: usize,
    },
}

impl Var {
    pub fn deriv(comp: usize, dz: usize, dzbar: usize) -> Var {
        Var::Deriv { comp, dz, dzbar }
    }

    /// Derivative order of the variable (0 for `z`).
    pub fn order(&self) -> usize {
        match self {
            Var::Z => 0,
            Var::Deriv { dz, dzbar, .. } => dz + dzbar,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Conj,
    Re,
    Im,
    Exp,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone)]
pub enum ExprKind {
    Lit(C64),
    Var(Var),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

/// An expression tree node with its source span.
#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

const SYNTH: Span = Span { start: 0, end: 0 };

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Expr {
        Expr { kind, span }
    }

    pub fn lit(v: C64) -> Expr {
        Expr::new(ExprKind::Lit(v), SYNTH)
    }

    pub fn lit_re(v: f64) -> Expr {
        Expr::lit(C64::new(v, 0.0))
    }

    pub fn var(v: Var) -> Expr {
        Expr::new(ExprKind::Var(v), SYNTH)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind, ExprKind::Lit(v) if v == C64::new(0.0, 0.0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.kind, ExprKind::Lit(v) if v == C64::new(1.0, 0.0))
    }

    fn as_lit(&self) -> Option<C64> {
        match self.kind {
            ExprKind::Lit(v) => Some(v),
            _ => None,
        }
    }

    // Folding constructors. Used by the differentiator and the shift
    // rewriter to keep derived trees small; the parser builds raw nodes.

    pub fn add(a: Expr, b: Expr) -> Expr {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if let (Some(x), Some(y)) = (a.as_lit(), b.as_lit()) {
            return Expr::lit(x + y);
        }
        let span = a.span.join(b.span);
        Expr::new(
            ExprKind::Binary(BinaryOp::Add, Box::new(a), Box::new(b)),
            span,
        )
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        if b.is_zero() {
            return a;
        }
        if let (Some(x), Some(y)) = (a.as_lit(), b.as_lit()) {
            return Expr::lit(x - y);
        }
        let span = a.span.join(b.span);
        Expr::new(
            ExprKind::Binary(BinaryOp::Sub, Box::new(a), Box::new(b)),
            span,
        )
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        if a.is_zero() || b.is_zero() {
            return Expr::lit(C64::new(0.0, 0.0));
        }
        if a.is_one() {
            return b;
        }
        if b.is_one() {
            return a;
        }
        if let (Some(x), Some(y)) = (a.as_lit(), b.as_lit()) {
            return Expr::lit(x * y);
        }
        let span = a.span.join(b.span);
        Expr::new(
            ExprKind::Binary(BinaryOp::Mul, Box::new(a), Box::new(b)),
            span,
        )
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        if a.is_zero() && !b.is_zero() {
            return Expr::lit(C64::new(0.0, 0.0));
        }
        if b.is_one() {
            return a;
        }
        let span = a.span.join(b.span);
        Expr::new(
            ExprKind::Binary(BinaryOp::Div, Box::new(a), Box::new(b)),
            span,
        )
    }

    pub fn unary(op: UnaryOp, e: Expr) -> Expr {
        if op == UnaryOp::Neg {
            if let Some(v) = e.as_lit() {
                return Expr::lit(-v);
            }
        }
        let span = e.span;
        Expr::new(ExprKind::Unary(op, Box::new(e)), span)
    }

    pub fn pow(e: Expr, n: i32) -> Expr {
        if n == 0 {
            return Expr::lit(C64::new(1.0, 0.0));
        }
        if n == 1 {
            return e;
        }
        if let Some(v) = e.as_lit() {
            return Expr::lit(v.powi(n));
        }
        let span = e.span;
        Expr::new(ExprKind::Pow(Box::new(e), n), span)
    }

    /// Free variables of the expression.
    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match &self.kind {
            ExprKind::Lit(_) => {}
            ExprKind::Var(v) => {
                out.insert(*v);
            }
            ExprKind::Unary(_, e) | ExprKind::Pow(e, _) => e.collect_vars(out),
            ExprKind::Binary(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Replaces every variable node for which `subst` returns an expression.
    pub fn substitute(&self, subst: &impl Fn(Var) -> Option<Expr>) -> Expr {
        match &self.kind {
            ExprKind::Lit(_) => self.clone(),
            ExprKind::Var(v) => subst(*v).unwrap_or_else(|| self.clone()),
            ExprKind::Unary(op, e) => Expr::new(
                ExprKind::Unary(*op, Box::new(e.substitute(subst))),
                self.span,
            ),
            ExprKind::Pow(e, n) => {
                Expr::new(ExprKind::Pow(Box::new(e.substitute(subst)), *n), self.span)
            }
            ExprKind::Binary(op, a, b) => Expr::new(
                ExprKind::Binary(
                    *op,
                    Box::new(a.substitute(subst)),
                    Box::new(b.substitute(subst)),
                ),
                self.span,
            ),
        }
    }
}

/// Concrete variable binding: `z` plus any referenced jet entries.
#[derive(Debug, Clone, Default)]
pub struct Env {
    z: C64,
    derivs: HashMap<(usize, usize, usize), C64>,
}

impl Env {
    pub fn z_only(z: C64) -> Env {
        Env {
            z,
            derivs: HashMap::new(),
        }
    }

    pub fn new(z: C64) -> Env {
        Env::z_only(z)
    }

    pub fn bind(mut self, comp: usize, dz: usize, dzbar: usize, v: C64) -> Env {
        self.derivs.insert((comp, dz, dzbar), v);
        self
    }

    pub fn set(&mut self, comp: usize, dz: usize, dzbar: usize, v: C64) {
        self.derivs.insert((comp, dz, dzbar), v);
    }
}

impl EvalEnv for Env {
    fn z(&self) -> C64 {
        self.z
    }

    fn deriv(&self, comp: usize, dz: usize, dzbar: usize) -> Option<C64> {
        self.derivs.get(&(comp, dz, dzbar)).copied()
    }
}
