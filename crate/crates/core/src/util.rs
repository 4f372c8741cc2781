//! Small numeric helpers shared by the quadrature and norm code.

use crate::C64;

/// Pairwise (cascade) summation of real values.
///
/// All node reductions in the crate go through this so results are
/// independent of thread count and accumulate O(log n) rounding instead of
/// O(n).
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BASE: usize = 64;
    if values.len() <= BASE {
        let mut acc = 0.0;
        for v in values {
            acc += v;
        }
        return acc;
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Pairwise summation of complex values.
pub fn pairwise_sum_c(values: &[C64]) -> C64 {
    const BASE: usize = 64;
    if values.len() <= BASE {
        let mut acc = C64::new(0.0, 0.0);
        for v in values {
            acc += v;
        }
        return acc;
    }
    let mid = values.len() / 2;
    pairwise_sum_c(&values[..mid]) + pairwise_sum_c(&values[mid..])
}

/// Streaming cascade accumulator: a binary-counter variant of pairwise
/// summation. Deterministic for a fixed insertion order, O(log n) rounding,
/// no allocation. Used by the per-target quadrature loops.
#[derive(Debug, Clone)]
pub struct TreeSum {
    levels: [C64; 64],
    occupied: u64,
}

impl TreeSum {
    pub fn new() -> Self {
        TreeSum {
            levels: [C64::new(0.0, 0.0); 64],
            occupied: 0,
        }
    }

    pub fn reset(&mut self) {
        self.occupied = 0;
    }

    #[inline]
    pub fn add(&mut self, v: C64) {
        let mut carry = v;
        let mut level = 0;
        while self.occupied & (1 << level) != 0 {
            carry += self.levels[level];
            self.occupied &= !(1 << level);
            level += 1;
        }
        self.levels[level] = carry;
        self.occupied |= 1 << level;
    }

    pub fn total(&self) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for level in 0..64 {
            if self.occupied & (1 << level) != 0 {
                acc += self.levels[level];
            }
        }
        acc
    }
}

impl Default for TreeSum {
    fn default() -> Self {
        Self::new()
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
///
/// Newton iteration on the Legendre recurrence; accurate to machine
/// precision for the orders used here (n ≤ a few hundred).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Initial guess: Chebyshev-like approximation of the i-th root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and P'_n(x) by upward recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = (n as f64) * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                // One more corrected step, then stop.
                let mut q0 = 1.0;
                let mut q1 = x;
                for k in 2..=n {
                    let kf = k as f64;
                    let q2 = ((2.0 * kf - 1.0) * x * q1 - (kf - 1.0) * q0) / kf;
                    q0 = q1;
                    q1 = q2;
                }
                dp = (n as f64) * (x * q1 - q0) / (x * x - 1.0);
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}
