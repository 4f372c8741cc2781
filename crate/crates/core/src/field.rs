//! Sampled complex vector fields on a [`DiskGrid`].

use std::sync::Arc;

use crate::error::CoreError;
use crate::expr::{Env, Expr};
use crate::grid::DiskGrid;
use crate::C64;

/// A map `D → ℂⁿ` sampled at every grid node (component-major storage).
#[derive(Debug, Clone)]
pub struct Field {
    grid: Arc<DiskGrid>,
    n_components: usize,
    values: Vec<C64>,
}

impl Field {
    pub fn zeros(grid: Arc<DiskGrid>, n_components: usize) -> Field {
        assert!(n_components > 0);
        let n = grid.num_nodes() * n_components;
        Field {
            grid,
            n_components,
            values: vec![C64::new(0.0, 0.0); n],
        }
    }

    pub fn constant(grid: Arc<DiskGrid>, n_components: usize, value: C64) -> Field {
        let n = grid.num_nodes() * n_components;
        Field {
            grid,
            n_components,
            values: vec![value; n],
        }
    }

    /// Pointwise construction from a closure of the node coordinate
    /// (component index first).
    pub fn from_fn(
        grid: Arc<DiskGrid>,
        n_components: usize,
        f: impl Fn(usize, C64) -> C64,
    ) -> Field {
        let mut out = Field::zeros(grid.clone(), n_components);
        for c in 0..n_components {
            for (i, z) in grid.nodes().iter().enumerate() {
                out.values[c * grid.num_nodes() + i] = f(c, *z);
            }
        }
        out
    }

    /// Scalar (single-component) field from a closure.
    pub fn scalar_from_fn(grid: Arc<DiskGrid>, f: impl Fn(C64) -> C64) -> Field {
        Field::from_fn(grid, 1, |_, z| f(z))
    }

    pub fn grid(&self) -> &Arc<DiskGrid> {
        &self.grid
    }

    pub fn n_components(&self) -> usize {
        self.n_components
    }

    pub fn num_nodes(&self) -> usize {
        self.grid.num_nodes()
    }

    #[inline]
    pub fn value(&self, component: usize, node: usize) -> C64 {
        self.values[component * self.grid.num_nodes() + node]
    }

    #[inline]
    pub fn set(&mut self, component: usize, node: usize, v: C64) {
        let n = self.grid.num_nodes();
        self.values[component * n + node] = v;
    }

    /// All samples of one component, in node order.
    pub fn component(&self, component: usize) -> &[C64] {
        let n = self.grid.num_nodes();
        &self.values[component * n..(component + 1) * n]
    }

    pub fn component_mut(&mut self, component: usize) -> &mut [C64] {
        let n = self.grid.num_nodes();
        &mut self.values[component * n..(component + 1) * n]
    }

    /// Builds a single-component field from raw node samples.
    pub fn from_samples(grid: Arc<DiskGrid>, samples: Vec<C64>) -> Field {
        assert_eq!(samples.len() % grid.num_nodes(), 0);
        let n_components = samples.len() / grid.num_nodes();
        Field {
            grid,
            n_components,
            values: samples,
        }
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Field {
        Field {
            grid: self.grid.clone(),
            n_components: self.n_components,
            values: self.values.iter().map(|v| f(*v)).collect(),
        }
    }

    pub fn zip_map(&self, other: &Field, f: impl Fn(C64, C64) -> C64) -> Field {
        assert!(self.compatible(other));
        Field {
            grid: self.grid.clone(),
            n_components: self.n_components,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }

    pub fn conj(&self) -> Field {
        self.map(|v| v.conj())
    }

    pub fn add(&self, other: &Field) -> Field {
        self.zip_map(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Field) -> Field {
        self.zip_map(other, |a, b| a - b)
    }

    pub fn scale(&self, s: C64) -> Field {
        self.map(|v| v * s)
    }

    /// Max of |value| over nodes and components.
    pub fn sup(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.values
            .iter()
            .all(|v| v.re.is_finite() && v.im.is_finite())
    }

    pub fn compatible(&self, other: &Field) -> bool {
        self.n_components == other.n_components && self.grid.same_layout(&other.grid)
    }
}

/// Samples an expression in the variable `z` (and `conj(z)`) at every node.
///
/// The expression must not reference solution components; those are bound
/// only inside the solver.
pub fn sample(expr: &Expr, grid: &Arc<DiskGrid>) -> Result<Field, CoreError> {
    let mut out = Field::zeros(grid.clone(), 1);
    for (i, z) in grid.nodes().iter().enumerate() {
        let env = Env::z_only(*z);
        let v = crate::expr::eval(expr, &env)?;
        out.set(0, i, v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::grid::build_grid;

    #[test]
    fn sample_z_times_conj_z_is_r_squared_on_boundary() {
        let g = build_grid(1.0, 8, 16).unwrap();
        let e = parse("z*conj(z)").unwrap();
        let f = sample(&e, &g).unwrap();
        for idx in g.boundary_indices() {
            assert!((f.value(0, idx) - C64::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn sample_one_gives_all_ones() {
        let g = build_grid(0.5, 8, 16).unwrap();
        let f = sample(&parse("1").unwrap(), &g).unwrap();
        assert!(f
            .component(0)
            .iter()
            .all(|v| (*v - C64::new(1.0, 0.0)).norm() == 0.0));
    }

    #[test]
    fn sample_exp_at_center_is_one() {
        let g = build_grid(1.0, 8, 16).unwrap();
        let f = sample(&parse("exp(z)").unwrap(), &g).unwrap();
        assert_eq!(f.value(0, g.center_index()), C64::new(1.0, 0.0));
    }

    #[test]
    fn sample_propagates_domain_errors() {
        let g = build_grid(1.0, 8, 16).unwrap();
        // log(z) fails at the center node where z = 0.
        assert!(sample(&parse("log(z)").unwrap(), &g).is_err());
    }

    #[test]
    fn vector_sup_takes_component_max() {
        let g = build_grid(1.0, 8, 16).unwrap();
        let f = Field::from_fn(g, 2, |c, z| if c == 0 { z } else { 2.0 * z.conj() });
        assert!((f.sup() - 2.0).abs() < 1e-14);
    }
}
