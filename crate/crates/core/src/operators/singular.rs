//! Weakly/strongly singular area integrals over the disk.
//!
//! Everything `T`, `²T` and `^{k+2}T` need reduces to
//!
//! ```text
//! I_p(z) = ∫_D (f(ζ) − P_s(ζ, z)) / (ζ − z)^p dA(ζ),     s ≤ p − 1,
//! ```
//!
//! plus exact closed-form terms for the subtracted polynomial: every
//! monomial (ζ−z)^i (ζ̄−z̄)^j / (ζ−z)^p with i+j ≤ p−1 integrates to zero
//! over the disk except (i,j) = (p−1, 0), whose integral is −π z̄.
//!
//! The quadrature splits the integrand with a smooth radial cutoff χ
//! centered at the target: the `(1−χ)`-part is summed on the global grid
//! (smooth integrand there), while the `χ`-part is integrated on a local
//! polar patch centered at z, where dA cancels the kernel singularity and
//! the integrand becomes bounded. Field values on the patch come from
//! local interpolation. The split is an exact partition of the integral,
//! so the scheme converges as fast as its smooth pieces.

use rayon::prelude::*;

use crate::field::Field;
use crate::jet::{factorial, pairs_up_to, Jet};
use crate::util::TreeSum;
use crate::C64;

use super::OperatorWorkspace;

/// Quintic cutoff: 1 at 0, 0 at 1, C² at both ends.
#[inline]
pub(crate) fn cutoff(t: f64) -> f64 {
    if t <= 0.0 {
        1.0
    } else if t >= 1.0 {
        0.0
    } else {
        1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)
    }
}

/// Subtraction-polynomial coefficients at one target: (i, j, coef).
type Coeffs = Vec<(usize, usize, C64)>;

#[inline]
fn eval_sub(coeffs: &Coeffs, dz: C64) -> C64 {
    let dzb = dz.conj();
    let mut acc = C64::new(0.0, 0.0);
    for (i, j, c) in coeffs {
        acc += c * dz.powu(*i as u32) * dzb.powu(*j as u32);
    }
    acc
}

/// Computes `scale_p · I_p` at every node for every component, plus the
/// closed-form term z̄·∂^{p−1}f(z) when the subtraction reaches degree p−1,
/// where `scale_p = −(p−1)!/π`. With p = 1, s = 0 this is exactly `Tf`;
/// with p = k+2, s ∈ {k, k+1} it is `^{k+2}Tf`.
///
/// The kernel and cutoff are evaluated once per (target, source) pair and
/// shared across components.
pub(crate) fn apply_singular(
    ws: &OperatorWorkspace,
    field: &Field,
    jet: Option<&Jet>,
    p: usize,
    s: usize,
) -> Field {
    assert!(p >= 1 && s <= p - 1);
    if s > 0 {
        let j = jet.expect("subtraction degree ≥ 1 requires a jet");
        assert!(j.order() >= s);
    }
    let grid = ws.grid();
    let n = grid.num_nodes();
    let n_comp = field.n_components();
    let scale = -factorial(p - 1) / std::f64::consts::PI;
    let radius = grid.radius();
    let (gl_x, gl_w) = ws.patch_gl();

    let per_target: Vec<Vec<C64>> = (0..n)
        .into_par_iter()
        .map_init(
            || {
                (
                    vec![TreeSum::new(); n_comp],
                    vec![C64::new(0.0, 0.0); n_comp],
                )
            },
            |(acc, fvals), target| {
                let z = grid.node(target);
                let rho_out = ws.rho_out(target);
                let rho_sq = rho_out * rho_out;
                let n_phi = ws.n_phi(target);
                let dphi = std::f64::consts::TAU / n_phi as f64;

                // Subtraction coefficients ∂^i∂̄^j f(z)/(i!j!) per component.
                let coeffs: Vec<Coeffs> = (0..n_comp)
                    .map(|comp| {
                        if s == 0 {
                            vec![(0, 0, field.value(comp, target))]
                        } else {
                            let j = jet.unwrap();
                            pairs_up_to(s)
                                .map(|(i, jj)| {
                                    let c = j.deriv(i, jj).value(comp, target)
                                        / (factorial(i) * factorial(jj));
                                    (i, jj, c)
                                })
                                .collect()
                        }
                    })
                    .collect();

                // Global part: Σ w (1−χ) (f − P_s)/(ζ−z)^p, cascade-summed
                // in fixed node order per component.
                for a in acc.iter_mut() {
                    a.reset();
                }
                for (src, (zeta, w)) in grid.nodes().iter().zip(grid.weights()).enumerate() {
                    if *w == 0.0 {
                        continue;
                    }
                    let dz = zeta - z;
                    let d2 = dz.norm_sqr();
                    let cut = if d2 >= rho_sq {
                        1.0
                    } else {
                        let c = 1.0 - cutoff(d2.sqrt() / rho_out);
                        if c == 0.0 {
                            continue;
                        }
                        c
                    };
                    let invd = dz.conj() / d2;
                    let kern = invd.powu(p as u32) * (w * cut);
                    for (comp, a) in acc.iter_mut().enumerate() {
                        let numer = field.value(comp, src) - eval_sub(&coeffs[comp], dz);
                        a.add(numer * kern);
                    }
                }
                let mut sums: Vec<C64> = acc.iter().map(|a| a.total()).collect();

                // Patch part in polar coordinates around z:
                // ∫∫ χ(ρ)(f−P_s)(z+ρe^{iφ}) e^{−ipφ} ρ^{1−p} dρ dφ.
                let zsq = z.norm_sqr();
                for iphi in 0..n_phi {
                    let phi = (iphi as f64 + 0.5) * dphi;
                    let dir = C64::from_polar(1.0, phi);
                    let b = (z.conj() * dir).re;
                    let disc = (b * b + radius * radius - zsq).max(0.0);
                    let t_exit = -b + disc.sqrt();
                    let t_max = rho_out.min(t_exit);
                    // Grazing rays at boundary targets come out as
                    // roundoff-length instead of exactly zero; their true
                    // contribution is O(t_max) but the subtracted numerator
                    // is pure noise there, amplified by ρ^{1−p}. Drop them.
                    if t_max <= 1e-9 * rho_out {
                        continue;
                    }
                    let kdir = dir.conj().powu(p as u32) * dphi;
                    for (xq, wq) in gl_x.iter().zip(gl_w) {
                        let rho = t_max * xq;
                        let zeta = z + dir * rho;
                        let chi = cutoff(rho / rho_out);
                        if chi == 0.0 {
                            continue;
                        }
                        let r_star = zeta.norm().min(radius);
                        let th_star = zeta.im.atan2(zeta.re);
                        let radial = rho.powi(1 - p as i32);
                        let weight = wq * t_max * chi * radial;
                        ws.interp()
                            .sample_into(field, grid, r_star, th_star, 0..n_comp, fvals);
                        for (comp, sum) in sums.iter_mut().enumerate() {
                            let numer = fvals[comp] - eval_sub(&coeffs[comp], dir * rho);
                            *sum += numer * weight * kdir;
                        }
                    }
                }

                // Closed-form term for the (p−1, 0) monomial.
                for (comp, sum) in sums.iter_mut().enumerate() {
                    *sum *= scale;
                    if s == p - 1 {
                        let top = if p - 1 == 0 {
                            field.value(comp, target)
                        } else {
                            jet.unwrap().deriv(p - 1, 0).value(comp, target)
                        };
                        *sum += top * z.conj();
                    }
                }
                sums
            },
        )
        .collect();

    let mut out = Field::zeros(grid.clone(), n_comp);
    for (target, sums) in per_target.iter().enumerate() {
        for (comp, v) in sums.iter().enumerate() {
            out.set(comp, target, *v);
        }
    }
    out
}
