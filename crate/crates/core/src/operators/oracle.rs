//! Exact polynomial calculus for the integral operators.
//!
//! Inputs declared as polynomials in (z, z̄) admit closed forms for every
//! operator, derived from the reproducing identity `T∂̄f = f − Sf` together
//! with residue evaluation of the boundary integrals:
//!
//! ```text
//! T(z^a z̄^b) = z^a z̄^{b+1}/(b+1) − [a ≥ b+1] R^{2(b+1)} z^{a−b−1}/(b+1)
//! S(z^a z̄^b) = [a ≥ b] R^{2b} z^{a−b}
//! S_b(z^a z̄^b) = −[a ≥ b+2] R^{2b+2} z^{a−b−2}
//! ```
//!
//! This module is a test oracle: it provides machine-precision ground truth
//! for the quadrature path and is never used in the solve path.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::field::Field;
use crate::grid::DiskGrid;
use crate::jet::factorial;
use crate::C64;

/// A scalar polynomial in z and z̄.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    pub terms: BTreeMap<(usize, usize), C64>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn monomial(a: usize, b: usize, c: C64) -> Poly {
        let mut p = Poly::zero();
        p.add_term(a, b, c);
        p
    }

    pub fn add_term(&mut self, a: usize, b: usize, c: C64) {
        if c == C64::new(0.0, 0.0) {
            return;
        }
        let e = self.terms.entry((a, b)).or_insert(C64::new(0.0, 0.0));
        *e += c;
        if *e == C64::new(0.0, 0.0) {
            self.terms.remove(&(a, b));
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(*a, *b, *c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: C64) -> Poly {
        let mut out = Poly::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(*a, *b, c * s);
        }
        out
    }

    pub fn conj(&self) -> Poly {
        let mut out = Poly::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(*b, *a, c.conj());
        }
        out
    }

    pub fn eval(&self, z: C64) -> C64 {
        let zb = z.conj();
        let mut acc = C64::new(0.0, 0.0);
        for ((a, b), c) in &self.terms {
            acc += c * z.powu(*a as u32) * zb.powu(*b as u32);
        }
        acc
    }

    /// ∂^i ∂̄^j of the polynomial.
    pub fn diff(&self, i: usize, j: usize) -> Poly {
        let mut out = Poly::zero();
        for ((a, b), c) in &self.terms {
            if *a < i || *b < j {
                continue;
            }
            let factor = (factorial(*a) / factorial(a - i)) * (factorial(*b) / factorial(b - j));
            out.add_term(a - i, b - j, c * factor);
        }
        out
    }

    pub fn max_abs_on(&self, grid: &DiskGrid) -> f64 {
        grid.nodes()
            .iter()
            .fold(0.0f64, |m, z| m.max(self.eval(*z).norm()))
    }

    pub fn to_field(&self, grid: &Arc<DiskGrid>) -> Field {
        Field::scalar_from_fn(grid.clone(), |z| self.eval(z))
    }
}

/// Exact T of a polynomial on the disk of radius `r`.
pub fn t_poly(p: &Poly, r: f64) -> Poly {
    let mut out = Poly::zero();
    for ((a, b), c) in &p.terms {
        let denom = (*b + 1) as f64;
        out.add_term(*a, b + 1, c / denom);
        if *a >= b + 1 {
            let coef = -c * r.powi(2 * (*b as i32 + 1)) / denom;
            out.add_term(a - b - 1, 0, coef);
        }
    }
    out
}

/// Exact T̄ (conjugate transform).
pub fn tbar_poly(p: &Poly, r: f64) -> Poly {
    t_poly(&p.conj(), r).conj()
}

/// Exact interior Cauchy integral S of a polynomial's boundary values.
pub fn s_poly(p: &Poly, r: f64) -> Poly {
    let mut out = Poly::zero();
    for ((a, b), c) in &p.terms {
        if a >= b {
            out.add_term(a - b, 0, c * r.powi(2 * *b as i32));
        }
    }
    out
}

/// Exact S̄ of a polynomial.
pub fn sbar_poly(p: &Poly, r: f64) -> Poly {
    s_poly(&p.conj(), r).conj()
}

/// Exact boundary integral S_b against dζ̄.
pub fn sb_poly(p: &Poly, r: f64) -> Poly {
    let mut out = Poly::zero();
    for ((a, b), c) in &p.terms {
        if *a >= b + 2 {
            out.add_term(a - b - 2, 0, -c * r.powi(2 * *b as i32 + 2));
        }
    }
    out
}

/// Exact ²T via ∂T.
pub fn t2_poly(p: &Poly, r: f64) -> Poly {
    t_poly(p, r).diff(1, 0)
}

/// Exact ^{k+2}T via ∂^{k+1}T.
pub fn tk_poly(p: &Poly, r: f64, k: usize) -> Poly {
    t_poly(p, r).diff(k + 1, 0)
}

/// Exact T^ν T̄^μ (T̄ applied first).
pub fn compose_t_poly(p: &Poly, r: f64, mu: usize, nu: usize) -> Poly {
    let mut cur = p.clone();
    for _ in 0..mu {
        cur = tbar_poly(&cur, r);
    }
    for _ in 0..nu {
        cur = t_poly(&cur, r);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn one() -> Poly {
        Poly::monomial(0, 0, c(1.0))
    }

    #[test]
    fn t_of_simple_monomials() {
        let r = 1.3;
        // T(1) = z̄.
        assert_eq!(t_poly(&one(), r), Poly::monomial(0, 1, c(1.0)));
        // T(z̄) = z̄²/2.
        assert_eq!(
            t_poly(&Poly::monomial(0, 1, c(1.0)), r),
            Poly::monomial(0, 2, c(0.5))
        );
        // T(z) = z z̄ − R².
        let mut expect = Poly::monomial(1, 1, c(1.0));
        expect.add_term(0, 0, c(-r * r));
        assert_eq!(t_poly(&Poly::monomial(1, 0, c(1.0)), r), expect);
    }

    #[test]
    fn reproducing_identity_holds_symbolically() {
        // T(∂̄f) + S(f) − f = 0 for the monomial family. The T formula was
        // derived independently of this identity, so the check is two-route.
        let r = 0.8;
        for (a, b) in [(0usize, 1usize), (1, 1), (0, 2), (2, 1), (3, 2)] {
            let f = Poly::monomial(a, b, C64::new(0.7, -0.3));
            let lhs = t_poly(&f.diff(0, 1), r).add(&s_poly(&f, r)).sub(&f);
            assert!(lhs.terms.is_empty(), "failure at ({a},{b}): {lhs:?}");
        }
    }

    #[test]
    fn conjugate_reproducing_identity() {
        let r = 1.1;
        for (a, b) in [(1usize, 0usize), (1, 1), (2, 0), (1, 2)] {
            let f = Poly::monomial(a, b, C64::new(-0.2, 0.9));
            let lhs = tbar_poly(&f.diff(1, 0), r).add(&sbar_poly(&f, r)).sub(&f);
            assert!(lhs.terms.is_empty(), "failure at ({a},{b})");
        }
    }

    #[test]
    fn second_derivative_operator_identity() {
        // ²Tf = T(∂f) − S_b(f) term by term.
        let r = 0.9;
        for (a, b) in [(1usize, 0usize), (1, 1), (2, 1), (0, 2), (3, 0)] {
            let f = Poly::monomial(a, b, C64::new(0.4, 0.4));
            let lhs = t2_poly(&f, r);
            let rhs = t_poly(&f.diff(1, 0), r).sub(&sb_poly(&f, r));
            assert_eq!(lhs, rhs, "failure at ({a},{b})");
        }
    }

    #[test]
    fn known_t2_and_t3_values() {
        let r = 1.0;
        // ²T(1) = 0, ²T(z̄) = 0, ²T(z) = z̄.
        assert!(t2_poly(&one(), r).terms.is_empty());
        assert!(t2_poly(&Poly::monomial(0, 1, c(1.0)), r).terms.is_empty());
        assert_eq!(
            t2_poly(&Poly::monomial(1, 0, c(1.0)), r),
            Poly::monomial(0, 1, c(1.0))
        );
        // ³T(z̄²) = 0, ³T(z²) = 2z̄.
        assert!(tk_poly(&Poly::monomial(0, 2, c(1.0)), r, 1)
            .terms
            .is_empty());
        assert_eq!(
            tk_poly(&Poly::monomial(2, 0, c(1.0)), r, 1),
            Poly::monomial(0, 1, c(2.0))
        );
    }

    #[test]
    fn composition_example() {
        // T T̄ 1 = T(z) = zz̄ − R², whose ∂∂̄ is 1.
        let r = 0.6;
        let w = compose_t_poly(&one(), r, 1, 1);
        assert_eq!(w.diff(1, 1), one());
        let mut expect = Poly::monomial(1, 1, c(1.0));
        expect.add_term(0, 0, c(-r * r));
        assert_eq!(w, expect);
        // T²(1) = T(z̄) = z̄²/2, whose ∂̄² is 1.
        let w = compose_t_poly(&one(), r, 0, 2);
        assert_eq!(w, Poly::monomial(0, 2, c(0.5)));
        assert_eq!(w.diff(0, 2), one());
    }
}
