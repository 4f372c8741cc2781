//! Local tensor interpolation on the polar grid.
//!
//! The singular-patch quadrature needs field values off the grid. Angular
//! interpolation uses a 6-point Lagrange stencil on the uniform θ nodes;
//! radial interpolation uses a 6-point barycentric stencil on the signed
//! radius line through the origin, where the ray at angle θ continues as
//! the ray at θ+π (f(−r, θ) = f(r, θ+π)). The center node participates as
//! the signed radius 0.

use crate::field::Field;
use crate::grid::DiskGrid;
use crate::C64;

const W: usize = 6;
/// Angular stencil width; wider than radial because the strongly singular
/// patch divides interpolation noise by powers of the local distance.
const W_ANG: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
enum RadialSource {
    Center,
    /// Ring index; `flipped` reads the ring at θ + π.
    Ring {
        ring: usize,
        flipped: bool,
    },
}

#[derive(Debug, Clone)]
pub(crate) struct Interp {
    /// Signed radii, ascending: mirrored innermost rings, 0, then all rings.
    ext_radii: Vec<f64>,
    sources: Vec<RadialSource>,
    n_theta: usize,
    dtheta: f64,
    /// Angular stencil width (≤ n_theta) and its barycentric weights
    /// (−1)^k C(w−1, k).
    w_ang: usize,
    ang_weights: Vec<f64>,
}

impl Interp {
    pub fn new(grid: &DiskGrid) -> Interp {
        let rings = grid.ring_radii();
        let mirror = W.min(rings.len());
        let mut ext_radii = Vec::with_capacity(rings.len() + mirror + 1);
        let mut sources = Vec::with_capacity(rings.len() + mirror + 1);
        for q in (0..mirror).rev() {
            ext_radii.push(-rings[q]);
            sources.push(RadialSource::Ring {
                ring: q,
                flipped: true,
            });
        }
        ext_radii.push(0.0);
        sources.push(RadialSource::Center);
        for (q, r) in rings.iter().enumerate() {
            ext_radii.push(*r);
            sources.push(RadialSource::Ring {
                ring: q,
                flipped: false,
            });
        }
        // Mirrored entries were pushed in descending ring order, so the
        // full list is ascending.
        debug_assert!(ext_radii.windows(2).all(|w| w[0] < w[1]));
        let w_ang = W_ANG.min(grid.n_theta());
        let mut ang_weights = vec![0.0f64; w_ang];
        let mut binom = 1.0f64;
        for (k, w) in ang_weights.iter_mut().enumerate() {
            *w = if k % 2 == 0 { binom } else { -binom };
            binom = binom * (w_ang - 1 - k) as f64 / (k + 1) as f64;
        }
        Interp {
            ext_radii,
            sources,
            n_theta: grid.n_theta(),
            dtheta: grid.angular_step(),
            w_ang,
            ang_weights,
        }
    }

    /// Interpolated value of one component at polar position (r, θ), r ≥ 0.
    #[cfg(test)]
    pub fn sample(&self, field: &Field, comp: usize, grid: &DiskGrid, r: f64, theta: f64) -> C64 {
        let mut out = [C64::new(0.0, 0.0)];
        self.sample_into(field, grid, r, theta, comp..comp + 1, &mut out);
        out[0]
    }

    /// Interpolates the components in `comps` at (r, θ), sharing the
    /// stencil across components.
    pub fn sample_into(
        &self,
        field: &Field,
        grid: &DiskGrid,
        r: f64,
        theta: f64,
        comps: std::ops::Range<usize>,
        out: &mut [C64],
    ) {
        // Radial window: W consecutive signed radii around r.
        let n = self.ext_radii.len();
        let pos = self.ext_radii.partition_point(|x| *x < r);
        let lo = pos.saturating_sub(W / 2).min(n - W);
        let xs = &self.ext_radii[lo..lo + W];

        // Barycentric coefficients over the signed radii.
        let mut coef = [0.0f64; W];
        let mut exact = None;
        for k in 0..W {
            let d = r - xs[k];
            if d.abs() < 1e-14 * (1.0 + r.abs()) {
                exact = Some(k);
                break;
            }
        }
        match exact {
            Some(k) => coef[k] = 1.0,
            None => {
                let mut den = 0.0;
                for k in 0..W {
                    let mut prod = 1.0;
                    for l in 0..W {
                        if l != k {
                            prod *= xs[k] - xs[l];
                        }
                    }
                    let c = 1.0 / (prod * (r - xs[k]));
                    coef[k] = c;
                    den += c;
                }
                for c in coef.iter_mut() {
                    *c /= den;
                }
            }
        }

        for v in out.iter_mut() {
            *v = C64::new(0.0, 0.0);
        }
        for (k, src) in self.sources[lo..lo + W].iter().enumerate() {
            if coef[k] == 0.0 {
                continue;
            }
            match src {
                RadialSource::Center => {
                    for (slot, comp) in out.iter_mut().zip(comps.clone()) {
                        *slot += field.value(comp, grid.center_index()) * coef[k];
                    }
                }
                RadialSource::Ring { ring, flipped } => {
                    let th = if *flipped {
                        theta + std::f64::consts::PI
                    } else {
                        theta
                    };
                    self.angular_into(field, grid, *ring, th, comps.clone(), coef[k], out);
                }
            }
        }
    }

    /// Adds `scale ×` the angular interpolant on one ring into `out`.
    fn angular_into(
        &self,
        field: &Field,
        grid: &DiskGrid,
        ring: usize,
        theta: f64,
        comps: std::ops::Range<usize>,
        scale: f64,
        out: &mut [C64],
    ) {
        let t = theta / self.dtheta;
        let j0 = t.floor();
        let frac = t - j0;
        let j0 = j0 as i64;
        // Center the stencil on the interval [j0, j0+1).
        let lead = (self.w_ang as i64) / 2 - 1;
        let base = j0 - lead;
        // Barycentric coefficients, or a hit on a node.
        let mut den = 0.0;
        let mut hit = None;
        for (k, w) in self.ang_weights.iter().enumerate() {
            let d = frac + lead as f64 - k as f64;
            if d.abs() < 1e-13 {
                hit = Some(k);
                break;
            }
            den += w / d;
        }
        for (slot, comp) in out.iter_mut().zip(comps) {
            let v = match hit {
                Some(k) => {
                    let j = (base + k as i64).rem_euclid(self.n_theta as i64) as usize;
                    field.value(comp, grid.node_index(ring, j))
                }
                None => {
                    let mut num = C64::new(0.0, 0.0);
                    for (k, w) in self.ang_weights.iter().enumerate() {
                        let d = frac + lead as f64 - k as f64;
                        let j = (base + k as i64).rem_euclid(self.n_theta as i64) as usize;
                        num += field.value(comp, grid.node_index(ring, j)) * (w / d);
                    }
                    num / den
                }
            };
            *slot += v * scale;
        }
    }
}
