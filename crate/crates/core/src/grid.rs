//! Polar discretization of the closed disk `D = {|z| ≤ R}`.
//!
//! The grid is a tensor product of Gauss-Legendre radial nodes on `(0, R)`
//! and a uniform angular grid, plus one explicit center node and one
//! zero-weight boundary ring at `|z| = R`. The center node carries the jet
//! of every sampled field at the origin; the boundary ring carries the
//! boundary restriction consumed by the Cauchy integrals `S` and `S_b`.
//! Both have zero area weight, so the weights remain an exact quadrature of
//! the area measure `dA`.

use std::sync::Arc;

use crate::error::CoreError;
use crate::util::{gauss_legendre, pairwise_sum};
use crate::C64;

#[derive(Debug, Clone)]
pub struct DiskGrid {
    radius: f64,
    n_r: usize,
    n_theta: usize,
    /// Interior ring radii (ascending) followed by the boundary radius `R`.
    ring_radii: Vec<f64>,
    /// Radial Gauss-Legendre weights (scaled to `(0, R)`), one per interior ring.
    ring_weights: Vec<f64>,
    nodes: Vec<C64>,
    weights: Vec<f64>,
    node_r: Vec<f64>,
    node_theta: Vec<f64>,
}

/// Builds a quadrature grid on the disk of radius `radius`.
///
/// `n_r` is the number of interior radial rings, `n_theta` the number of
/// angular nodes per ring (must be even so boundary antipodes are nodes).
pub fn build_grid(radius: f64, n_r: usize, n_theta: usize) -> Result<Arc<DiskGrid>, CoreError> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(CoreError::InvalidGrid(format!(
            "radius must be positive and finite, got {radius}"
        )));
    }
    if n_r < 4 {
        return Err(CoreError::InvalidGrid(format!(
            "n_r must be ≥ 4, got {n_r}"
        )));
    }
    if n_theta < 8 || n_theta % 2 != 0 {
        return Err(CoreError::InvalidGrid(format!(
            "n_theta must be even and ≥ 8, got {n_theta}"
        )));
    }

    let (gl_nodes, gl_weights) = gauss_legendre(n_r);
    let mut ring_radii: Vec<f64> = gl_nodes.iter().map(|x| radius * 0.5 * (x + 1.0)).collect();
    let ring_weights: Vec<f64> = gl_weights.iter().map(|w| w * radius * 0.5).collect();
    ring_radii.push(radius);

    let num_nodes = 1 + (n_r + 1) * n_theta;
    let mut nodes = Vec::with_capacity(num_nodes);
    let mut weights = Vec::with_capacity(num_nodes);
    let mut node_r = Vec::with_capacity(num_nodes);
    let mut node_theta = Vec::with_capacity(num_nodes);

    nodes.push(C64::new(0.0, 0.0));
    weights.push(0.0);
    node_r.push(0.0);
    node_theta.push(0.0);

    let dtheta = std::f64::consts::TAU / n_theta as f64;
    for ring in 0..=n_r {
        let r = ring_radii[ring];
        // Area weight r·w_r·Δθ for interior rings; boundary ring is
        // evaluation-only.
        let w = if ring < n_r {
            ring_weights[ring] * r * dtheta
        } else {
            0.0
        };
        for j in 0..n_theta {
            let theta = dtheta * j as f64;
            nodes.push(C64::from_polar(r, theta));
            weights.push(w);
            node_r.push(r);
            node_theta.push(theta);
        }
    }

    Ok(Arc::new(DiskGrid {
        radius,
        n_r,
        n_theta,
        ring_radii,
        ring_weights,
        nodes,
        weights,
        node_r,
        node_theta,
    }))
}

impl DiskGrid {
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn n_r(&self) -> usize {
        self.n_r
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[C64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn node(&self, idx: usize) -> C64 {
        self.nodes[idx]
    }

    pub fn weight(&self, idx: usize) -> f64 {
        self.weights[idx]
    }

    pub fn node_polar(&self, idx: usize) -> (f64, f64) {
        (self.node_r[idx], self.node_theta[idx])
    }

    /// Index of the unique node at `z = 0`.
    pub fn center_index(&self) -> usize {
        0
    }

    /// Ring radii: interior Gauss-Legendre radii ascending, then `R`.
    pub fn ring_radii(&self) -> &[f64] {
        &self.ring_radii
    }

    pub fn ring_weights(&self) -> &[f64] {
        &self.ring_weights
    }

    pub fn angular_step(&self) -> f64 {
        std::f64::consts::TAU / self.n_theta as f64
    }

    /// Node index of angular position `j` on ring `ring` (boundary ring is
    /// `ring == n_r`).
    pub fn node_index(&self, ring: usize, j: usize) -> usize {
        debug_assert!(ring <= self.n_r && j < self.n_theta);
        1 + ring * self.n_theta + j
    }

    /// First node index of the boundary ring.
    pub fn boundary_start(&self) -> usize {
        1 + self.n_r * self.n_theta
    }

    /// Indices of the boundary ring, in angular order.
    pub fn boundary_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.boundary_start()..self.num_nodes()
    }

    /// Exact total area `πR²` as carried by the weights.
    pub fn total_weight(&self) -> f64 {
        pairwise_sum(&self.weights)
    }

    /// Quadrature of a scalar function over the disk.
    pub fn integrate(&self, f: impl Fn(C64) -> C64) -> C64 {
        let terms: Vec<C64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .filter(|(_, w)| **w != 0.0)
            .map(|(z, w)| f(*z) * *w)
            .collect();
        crate::util::pairwise_sum_c(&terms)
    }

    /// True if two grids have identical geometry (same construction inputs).
    pub fn same_layout(&self, other: &DiskGrid) -> bool {
        self.radius == other.radius && self.n_r == other.n_r && self.n_theta == other.n_theta
    }
}
