//! Discrete realizations of the working norms: sup norm `|f|`, Hölder
//! seminorm `H_α[f]`, the weighted norm `‖f‖ = |f| + (2R)^α H_α[f]`, and the
//! order-k norms `‖f‖^{(k)} = max_{i+j=k} ‖∂^i∂̄^j f‖` on jets.
//!
//! The discrete seminorm is a sup over node pairs and therefore a lower
//! bound of the continuum seminorm. All inequality tests in this crate are
//! stated on the discrete metric space, where they are exact statements.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::jet::{pairs_up_to, Jet};

/// Node count at or below which the seminorm enumerates every pair.
const FULL_PAIR_NODE_LIMIT: usize = 640;

#[derive(Debug, Clone, Copy)]
pub struct HolderParams {
    /// Hölder exponent in (0, 1).
    pub alpha: f64,
    /// Max sampled pairs when the grid is too large for full enumeration.
    pub pair_budget: usize,
    pub rng_seed: u64,
}

impl HolderParams {
    pub fn new(alpha: f64) -> HolderParams {
        assert!(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
        HolderParams {
            alpha,
            pair_budget: 200_000,
            rng_seed: 0x5EED,
        }
    }
}

/// Measured norms of a field (or jet entry).
#[derive(Debug, Clone)]
pub struct NormReport {
    pub sup: f64,
    pub seminorm: f64,
    /// `sup + (2R)^α · seminorm`.
    pub norm_alpha: f64,
    /// For jets: the norm of every stored derivative, keyed by (i, j).
    pub per_derivative: Vec<((usize, usize), f64)>,
}

/// Max of |value| over nodes and components (vector max-norm).
pub fn sup_norm(f: &Field) -> f64 {
    f.sup()
}

#[inline]
fn pair_quotient(f: &Field, alpha: f64, a: usize, b: usize) -> f64 {
    let za = f.grid().node(a);
    let zb = f.grid().node(b);
    let dist = (za - zb).norm();
    if dist == 0.0 {
        return 0.0;
    }
    let mut dv = 0.0f64;
    for c in 0..f.n_components() {
        dv = dv.max((f.value(c, a) - f.value(c, b)).norm());
    }
    dv / dist.powf(alpha)
}

/// Discrete Hölder seminorm: sup of |f(z)-f(z')| / |z-z'|^α over node
/// pairs. Enumerates all pairs on small grids; otherwise a seeded uniform
/// sample of `pair_budget` pairs plus every boundary-antipodal pair.
pub fn holder_seminorm(f: &Field, p: &HolderParams) -> f64 {
    let n = f.num_nodes();
    assert!(n >= 2);
    let mut best = 0.0f64;
    if n <= FULL_PAIR_NODE_LIMIT {
        for a in 0..n {
            for b in (a + 1)..n {
                best = best.max(pair_quotient(f, p.alpha, a, b));
            }
        }
        return best;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.rng_seed);
    for _ in 0..p.pair_budget {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b {
            continue;
        }
        best = best.max(pair_quotient(f, p.alpha, a, b));
    }
    // Diameter pairs realize the sup for the coordinate-like fields that
    // drive the norm calibration; always include them.
    let grid = f.grid();
    let half = grid.n_theta() / 2;
    let start = grid.boundary_start();
    for j in 0..half {
        best = best.max(pair_quotient(f, p.alpha, start + j, start + j + half));
    }
    best
}

/// The weighted Hölder norm `‖f‖ = |f| + (2R)^α H_α[f]`.
pub fn norm_alpha(f: &Field, p: &HolderParams) -> NormReport {
    let sup = sup_norm(f);
    let seminorm = holder_seminorm(f, p);
    let scale = (2.0 * f.grid().radius()).powf(p.alpha);
    NormReport {
        sup,
        seminorm,
        norm_alpha: sup + scale * seminorm,
        per_derivative: Vec::new(),
    }
}

/// Convenience scalar version of [`norm_alpha`].
pub fn norm_alpha_value(f: &Field, p: &HolderParams) -> f64 {
    norm_alpha(f, p).norm_alpha
}

/// The order-k norm of a jet: max of `‖∂^i∂̄^j f‖` over the top order
/// i + j = k. The report also carries the norm of every lower entry.
pub fn norm_k(jet: &Jet, k: usize, p: &HolderParams) -> NormReport {
    assert!(
        k <= jet.order(),
        "norm_k({k}) needs jet order ≥ {k}, have {}",
        jet.order()
    );
    let mut per = Vec::new();
    let mut top_sup = 0.0f64;
    let mut top_semi = 0.0f64;
    let mut top = 0.0f64;
    for (i, j) in pairs_up_to(jet.order()) {
        if i + j > k {
            continue;
        }
        let r = norm_alpha(jet.deriv(i, j), p);
        if i + j == k {
            top = top.max(r.norm_alpha);
            top_sup = top_sup.max(r.sup);
            top_semi = top_semi.max(r.seminorm);
        }
        per.push(((i, j), r.norm_alpha));
    }
    NormReport {
        sup: top_sup,
        seminorm: top_semi,
        norm_alpha: top,
        per_derivative: per,
    }
}

/// Scalar value of the order-k norm.
pub fn norm_k_value(jet: &Jet, k: usize, p: &HolderParams) -> f64 {
    norm_k(jet, k, p).norm_alpha
}
