//! Derivative bundles: the collection `{∂^i∂̄^j u}_{i+j ≤ k}` of a field.
//!
//! Mixed Wirtinger derivatives commute on the smoothness classes handled
//! here, so a jet stores the (k+1)(k+2)/2 distinct index pairs rather than
//! the 2^k order-sensitive strings; entry (0,0) is the field itself.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::CoreError;
use crate::expr::{self, Expr, Var};
use crate::field::Field;
use crate::grid::DiskGrid;
use crate::C64;

/// Index pairs (i, j) with i + j ≤ order, sorted by total order then j.
pub fn pairs_up_to(order: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=order).flat_map(|p| (0..=p).map(move |j| (p - j, j)))
}

/// Number of pairs with i + j ≤ order.
pub fn num_pairs(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

/// Flat index of (i, j) in a jet: triangle offset of p = i+j, then j.
#[inline]
pub fn pair_index(i: usize, j: usize) -> usize {
    let p = i + j;
    p * (p + 1) / 2 + j
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// A field together with its derivatives up to `order`.
#[derive(Debug, Clone)]
pub struct Jet {
    order: usize,
    derivs: Vec<Field>,
}

impl Jet {
    pub fn zeros(grid: Arc<DiskGrid>, n_components: usize, order: usize) -> Jet {
        let derivs = (0..num_pairs(order))
            .map(|_| Field::zeros(grid.clone(), n_components))
            .collect();
        Jet { order, derivs }
    }

    /// Wraps a bare field as an order-0 jet.
    pub fn order0(field: Field) -> Jet {
        Jet {
            order: 0,
            derivs: vec![field],
        }
    }

    /// Builds a jet from one field per index pair (in [`pairs_up_to`] order).
    pub fn from_fields(order: usize, fields: Vec<Field>) -> Jet {
        assert_eq!(fields.len(), num_pairs(order));
        for w in fields.windows(2) {
            assert!(w[0].compatible(&w[1]));
        }
        Jet {
            order,
            derivs: fields,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn n_components(&self) -> usize {
        self.derivs[0].n_components()
    }

    pub fn grid(&self) -> &Arc<DiskGrid> {
        self.derivs[0].grid()
    }

    /// The underlying field, i.e. the (0,0) entry.
    pub fn field(&self) -> &Field {
        &self.derivs[0]
    }

    pub fn deriv(&self, i: usize, j: usize) -> &Field {
        assert!(
            i + j <= self.order,
            "jet entry ({i},{j}) beyond order {}",
            self.order
        );
        &self.derivs[pair_index(i, j)]
    }

    pub fn set_deriv(&mut self, i: usize, j: usize, f: Field) {
        assert!(i + j <= self.order);
        let idx = pair_index(i, j);
        self.derivs[idx] = f;
    }

    /// Restriction to a lower order (entries are cloned).
    pub fn truncated(&self, order: usize) -> Jet {
        assert!(order <= self.order);
        Jet {
            order,
            derivs: self.derivs[..num_pairs(order)].to_vec(),
        }
    }

    pub fn add(&self, other: &Jet) -> Jet {
        assert_eq!(self.order, other.order);
        Jet {
            order: self.order,
            derivs: self
                .derivs
                .iter()
                .zip(&other.derivs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Jet) -> Jet {
        assert_eq!(self.order, other.order);
        Jet {
            order: self.order,
            derivs: self
                .derivs
                .iter()
                .zip(&other.derivs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Jet {
        Jet {
            order: self.order,
            derivs: self.derivs.iter().map(|f| f.scale(s)).collect(),
        }
    }

    /// Jet of the conjugate field: ∂^i∂̄^j (f̄) = conj(∂^j∂̄^i f).
    pub fn conj_swapped(&self) -> Jet {
        let mut out = self.clone();
        for (i, j) in pairs_up_to(self.order) {
            out.derivs[pair_index(i, j)] = self.deriv(j, i).conj();
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.derivs.iter().all(|f| f.is_finite())
    }

    /// Jet coefficients at one node: `out[pair_index(i,j)][component]`.
    pub fn at_node(&self, node: usize) -> Vec<Vec<C64>> {
        self.derivs
            .iter()
            .map(|f| (0..f.n_components()).map(|c| f.value(c, node)).collect())
            .collect()
    }

    /// Builds the jet of an expression in `z` alone by sampling its
    /// symbolic Wirtinger derivatives. Exact for polynomial inputs.
    pub fn from_expr(e: &Expr, grid: &Arc<DiskGrid>, order: usize) -> Result<Jet, CoreError> {
        let mut fields = Vec::with_capacity(num_pairs(order));
        for (i, j) in pairs_up_to(order) {
            let mut d = e.clone();
            for _ in 0..i {
                d = expr::wirtinger_derive(&d, Var::Z, false);
            }
            for _ in 0..j {
                d = expr::wirtinger_derive(&d, Var::Z, true);
            }
            fields.push(crate::field::sample(&d, grid)?);
        }
        Ok(Jet::from_fields(order, fields))
    }
}

/// Evaluates the degree-`k` Taylor polynomial of the jet, centered at grid
/// node `base`, at the point `zeta`:
///
/// ```text
/// P_k(ζ, z₀) = Σ_{i+j ≤ k} ∂^i∂̄^j f(z₀) / (i! j!) · (ζ−z₀)^i (ζ̄−z̄₀)^j
/// ```
pub fn taylor_eval(jet: &Jet, base: usize, degree: usize, zeta: C64) -> Vec<C64> {
    assert!(
        degree <= jet.order(),
        "taylor_eval degree {degree} exceeds jet order {}",
        jet.order()
    );
    let z0 = jet.grid().node(base);
    let dz = zeta - z0;
    let dzb = dz.conj();
    let n = jet.n_components();
    let mut out = vec![C64::new(0.0, 0.0); n];
    for (i, j) in pairs_up_to(degree) {
        let coef = 1.0 / (factorial(i) * factorial(j));
        let mono = dz.powu(i as u32) * dzb.powu(j as u32) * coef;
        let f = jet.deriv(i, j);
        for (c, o) in out.iter_mut().enumerate() {
            *o += f.value(c, base) * mono;
        }
    }
    out
}

/// A polynomial map in (z, z̄): coefficients per monomial z^a z̄^b and
/// component. Used for homogeneous seeds, jet-correction polynomials, and
/// the initial-value shift.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMap {
    pub n_components: usize,
    pub terms: BTreeMap<(usize, usize), Vec<C64>>,
}

impl PolyMap {
    pub fn zero(n_components: usize) -> PolyMap {
        PolyMap {
            n_components,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, a: usize, b: usize, coeffs: Vec<C64>) {
        assert_eq!(coeffs.len(), self.n_components);
        let entry = self
            .terms
            .entry((a, b))
            .or_insert_with(|| vec![C64::new(0.0, 0.0); self.n_components]);
        for (e, c) in entry.iter_mut().zip(coeffs) {
            *e += c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms
            .values()
            .all(|v| v.iter().all(|c| *c == C64::new(0.0, 0.0)))
    }

    /// True when every nonzero term has total degree exactly `deg`.
    pub fn is_homogeneous(&self, deg: usize) -> bool {
        self.terms
            .iter()
            .all(|((a, b), coeffs)| a + b == deg || coeffs.iter().all(|c| *c == C64::new(0.0, 0.0)))
    }

    /// Coefficient of z^a z̄^b for one component (zero when absent).
    pub fn coeff(&self, a: usize, b: usize, comp: usize) -> C64 {
        self.terms
            .get(&(a, b))
            .map_or(C64::new(0.0, 0.0), |v| v[comp])
    }

    pub fn eval(&self, z: C64, comp: usize) -> C64 {
        let zb = z.conj();
        let mut acc = C64::new(0.0, 0.0);
        for ((a, b), coeffs) in &self.terms {
            acc += coeffs[comp] * z.powu(*a as u32) * zb.powu(*b as u32);
        }
        acc
    }

    /// The polynomial ∂^i∂̄^j p.
    pub fn derivative(&self, i: usize, j: usize) -> PolyMap {
        let mut out = PolyMap::zero(self.n_components);
        for ((a, b), coeffs) in &self.terms {
            if *a < i || *b < j {
                continue;
            }
            let factor = (factorial(*a) / factorial(a - i)) * (factorial(*b) / factorial(b - j));
            out.add_term(a - i, b - j, coeffs.iter().map(|c| c * factor).collect());
        }
        out
    }

    /// Expression form of one component (for RHS substitution).
    pub fn to_expr(&self, comp: usize) -> Expr {
        let mut acc = Expr::lit(C64::new(0.0, 0.0));
        for ((a, b), coeffs) in &self.terms {
            let c = coeffs[comp];
            if c == C64::new(0.0, 0.0) {
                continue;
            }
            let mut term = Expr::lit(c);
            if *a > 0 {
                term = Expr::mul(term, Expr::pow(Expr::var(Var::Z), *a as i32));
            }
            if *b > 0 {
                term = Expr::mul(
                    term,
                    Expr::pow(
                        Expr::unary(crate::expr::UnaryOp::Conj, Expr::var(Var::Z)),
                        *b as i32,
                    ),
                );
            }
            acc = Expr::add(acc, term);
        }
        acc
    }

    /// Samples the polynomial and its derivatives as an exact jet.
    pub fn to_jet(&self, grid: &Arc<DiskGrid>, order: usize) -> Jet {
        let fields = pairs_up_to(order)
            .map(|(i, j)| {
                let d = self.derivative(i, j);
                Field::from_fn(grid.clone(), self.n_components, |c, z| d.eval(z, c))
            })
            .collect();
        Jet::from_fields(order, fields)
    }
}
