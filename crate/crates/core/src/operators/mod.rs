//! Numerical realizations of the integral operators: the Cauchy-Green
//! transform `T`, its conjugate `T̄`, the boundary integrals `S`, `S_b`, the
//! strongly singular `²T` and `^{k+2}T`, compositions `T^ν T̄^μ`, and the
//! derivative identities that propagate jets through them without numerical
//! differentiation:
//!
//! ```text
//! ∂̄ T f = f,      ∂^i∂̄^j T f = ∂^i∂̄^{j-1} f   (j ≥ 1),
//! ∂^{k+1} T f = ^{k+2}T f,                 ²Tf = T(∂f) − S_b f.
//! ```

mod boundary;
mod interp;
pub mod oracle;
mod singular;

pub use boundary::{op_s, op_s_conj, op_sb};

use std::sync::Arc;

use crate::error::CoreError;
use crate::field::Field;
use crate::grid::DiskGrid;
use crate::jet::{pairs_up_to, Jet};
use crate::util::gauss_legendre;

use interp::Interp;
use singular::apply_singular;

/// Quadrature parameters for the singular patch.
#[derive(Debug, Clone, Copy)]
pub struct OperatorParams {
    /// Patch radius in units of the local node spacing.
    pub patch_factor: f64,
    /// Gauss-Legendre nodes per patch ray.
    pub n_patch_radial: usize,
    /// Angular nodes of the patch.
    pub n_patch_angular: usize,
}

impl Default for OperatorParams {
    fn default() -> Self {
        OperatorParams {
            patch_factor: 4.0,
            n_patch_radial: 8,
            n_patch_angular: 32,
        }
    }
}

/// Precomputed per-grid quadrature data shared by every operator
/// application: patch radii around each target, the patch rule, and the
/// interpolation stencils. Immutable after construction.
#[derive(Debug, Clone)]
pub struct OperatorWorkspace {
    grid: Arc<DiskGrid>,
    params: OperatorParams,
    rho_out: Vec<f64>,
    /// Patch angular count per target node.
    n_phi: Vec<usize>,
    patch_gl: (Vec<f64>, Vec<f64>),
    interp: Interp,
}

impl OperatorWorkspace {
    pub fn new(grid: Arc<DiskGrid>) -> OperatorWorkspace {
        OperatorWorkspace::with_params(grid, OperatorParams::default())
    }

    pub fn with_params(grid: Arc<DiskGrid>, params: OperatorParams) -> OperatorWorkspace {
        let (mut gl_x, mut gl_w) = gauss_legendre(params.n_patch_radial);
        for (x, w) in gl_x.iter_mut().zip(gl_w.iter_mut()) {
            *x = 0.5 * (*x + 1.0);
            *w *= 0.5;
        }
        let mut params = params;
        params.n_patch_angular = params.n_patch_angular.max(grid.n_theta() / 2);
        let rho_out = compute_patch_radii(&grid, params.patch_factor);
        // Targets whose patch disk is clipped by the boundary circle see a
        // ray-length profile min(ρ_out, t_exit(φ)) that is only C⁰ in φ;
        // resolving its kinks needs roughly twice the grid's angular
        // density. Everywhere else the patch integrand is smooth and
        // periodic and the base count suffices.
        let n_phi = (0..grid.num_nodes())
            .map(|idx| {
                let clipped = grid.node(idx).norm() + rho_out[idx] >= grid.radius();
                if clipped {
                    params.n_patch_angular.max(2 * grid.n_theta())
                } else {
                    params.n_patch_angular
                }
            })
            .collect();
        let interp = Interp::new(&grid);
        OperatorWorkspace {
            grid,
            params,
            rho_out,
            n_phi,
            patch_gl: (gl_x, gl_w),
            interp,
        }
    }

    pub fn grid(&self) -> &Arc<DiskGrid> {
        &self.grid
    }

    pub fn params(&self) -> &OperatorParams {
        &self.params
    }

    pub(crate) fn rho_out(&self, node: usize) -> f64 {
        self.rho_out[node]
    }

    pub(crate) fn n_phi(&self, node: usize) -> usize {
        self.n_phi[node]
    }

    pub(crate) fn patch_gl(&self) -> (&[f64], &[f64]) {
        (&self.patch_gl.0, &self.patch_gl.1)
    }

    pub(crate) fn interp(&self) -> &Interp {
        &self.interp
    }

    /// Trapezoid weights of the boundary rule (uniform, summing to 2πR).
    pub fn boundary_weights(&self) -> Vec<f64> {
        let w = std::f64::consts::TAU * self.grid.radius() / self.grid.n_theta() as f64;
        vec![w; self.grid.n_theta()]
    }
}

/// Patch radius per node: a multiple of the local node spacing (max of the
/// adjacent radial gaps and the local arc length), capped by the disk size.
fn compute_patch_radii(grid: &DiskGrid, factor: f64) -> Vec<f64> {
    let rings = grid.ring_radii();
    let dtheta = grid.angular_step();
    let radius = grid.radius();
    let gap = |ring: usize| -> f64 {
        let below = if ring == 0 {
            rings[0]
        } else {
            rings[ring] - rings[ring - 1]
        };
        let above = if ring + 1 < rings.len() {
            rings[ring + 1] - rings[ring]
        } else {
            0.0
        };
        below.max(above)
    };
    (0..grid.num_nodes())
        .map(|idx| {
            let local = if idx == grid.center_index() {
                rings[0].max(rings[0] * dtheta)
            } else {
                let ring = (idx - 1) / grid.n_theta();
                let (r, _) = grid.node_polar(idx);
                gap(ring).max(r * dtheta)
            };
            (factor * local).min(0.75 * radius)
        })
        .collect()
}

/// The Cauchy-Green transform `Tf(z) = (−1/2πi)∫_D f(ζ)dζ̄∧dζ/(ζ−z)`.
pub fn op_t(ws: &OperatorWorkspace, f: &Field) -> Field {
    apply_singular(ws, f, None, 1, 0)
}

/// `T̄f = conj(T(f̄))`.
pub fn op_tbar(ws: &OperatorWorkspace, f: &Field) -> Field {
    op_t(ws, &f.conj()).conj()
}

/// The strongly singular `²Tf(z) = (−1/2πi)∫_D (f(ζ)−f(z))/(ζ−z)² dζ̄∧dζ`.
///
/// When a 1-jet of `f` is supplied the integrand is regularized one degree
/// further and the linear moment is added in closed form, which sharpens
/// the quadrature; the value is identical either way.
pub fn op_t2(ws: &OperatorWorkspace, f: &Field, jet: Option<&Jet>) -> Field {
    let s = jet.map_or(0, |j| j.order().min(1));
    apply_singular(ws, f, jet, 2, s)
}

/// `^{k+2}Tf`, the Taylor-subtracted operator realizing `∂^{k+1}Tf`.
/// Requires the jet of `f` to order at least `k`.
pub fn op_tk(ws: &OperatorWorkspace, jet: &Jet, k: usize) -> Result<Field, CoreError> {
    if jet.order() < k {
        return Err(CoreError::JetOrder {
            have: jet.order(),
            need: k,
        });
    }
    let s = jet.order().min(k + 1);
    Ok(apply_singular(ws, jet.field(), Some(jet), k + 2, s))
}

/// Jet of `Tg` to order `g.order() + 1`, by the derivative identities:
/// ∂̄-derivatives peel onto `g`, pure ∂-derivatives evaluate `^{i+1}T g`.
pub fn jet_of_t(ws: &OperatorWorkspace, g: &Jet) -> Jet {
    let k = g.order();
    let mut fields = Vec::new();
    for (i, j) in pairs_up_to(k + 1) {
        let f = if i == 0 && j == 0 {
            op_t(ws, g.field())
        } else if j >= 1 {
            g.deriv(i, j - 1).clone()
        } else {
            op_tk(ws, g, i - 1).expect("jet order sufficient by construction")
        };
        fields.push(f);
    }
    Jet::from_fields(k + 1, fields)
}

/// Jet of `T̄g` via conjugation symmetry.
pub fn jet_of_tbar(ws: &OperatorWorkspace, g: &Jet) -> Jet {
    jet_of_t(ws, &g.conj_swapped()).conj_swapped()
}

/// `T^ν T̄^μ h` with jets carried through: T̄ applied μ times, then T ν
/// times; `T⁰ = T̄⁰ = Id`. Output jet order is `h.order() + μ + ν`.
pub fn compose_t(ws: &OperatorWorkspace, h: &Jet, mu: usize, nu: usize) -> Jet {
    let mut cur = h.clone();
    for _ in 0..mu {
        cur = jet_of_tbar(ws, &cur);
    }
    for _ in 0..nu {
        cur = jet_of_t(ws, &cur);
    }
    cur
}

/// `∂^i∂̄^j (Tg)` without numerical differentiation. Requires
/// `i + j ≤ g.order() + 1`.
pub fn derivative_of_t(
    ws: &OperatorWorkspace,
    g: &Jet,
    i: usize,
    j: usize,
) -> Result<Field, CoreError> {
    if i + j > g.order() + 1 {
        return Err(CoreError::JetOrder {
            have: g.order(),
            need: i + j - 1,
        });
    }
    if i == 0 && j == 0 {
        Ok(op_t(ws, g.field()))
    } else if j >= 1 {
        Ok(g.deriv(i, j - 1).clone())
    } else {
        op_tk(ws, g, i - 1)
    }
}
