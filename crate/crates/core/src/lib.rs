//! Numerical machinery for nonlinear Cauchy-Riemann systems on a disk.
//!
//! The crate solves systems of the form
//!
//! ```text
//! ∂^μ ∂̄^ν u(z) = a(z, u, D¹u, …, D^{m-1}u),   ∂^i ∂̄^j u(0) = c_{i,j}   (i + j ≤ m-1)
//! ```
//!
//! on a closed disk `|z| ≤ R` by a constructive fixed-point scheme:
//! the right-hand side is pushed through compositions of the Cauchy-Green
//! (Pompeiu) operator `T` and its conjugate, a jet-correcting map pins the
//! derivative bundle at the origin, and Picard iteration runs inside a
//! Hölder-norm ball with explicit contraction estimates.
//!
//! Module map:
//!
//! - [`grid`]: polar quadrature grids on the disk.
//! - [`field`]: sampled complex vector fields.
//! - [`jet`]: derivative bundles `{∂^i∂̄^j u}` and Taylor evaluation.
//! - [`expr`]: the expression DSL for right-hand sides, with Wirtinger
//!   differentiation.
//! - [`holder`]: discrete sup/Hölder norms.
//! - [`operators`]: the integral operators `T`, `T̄`, `S`, `S_b`, `²T`,
//!   `^{k+2}T` and their compositions.
//! - [`solver`]: the fixed-point map, Picard iteration, contraction
//!   constants and admissible-radius search.

pub mod error;
pub mod expr;
pub mod field;
pub mod grid;
pub mod holder;
pub mod jet;
pub mod operators;
pub mod problem;
pub mod solver;
pub mod util;

pub use error::CoreError;
pub use field::Field;
pub use grid::DiskGrid;
pub use holder::{HolderParams, NormReport};
pub use jet::Jet;
pub use operators::OperatorWorkspace;
pub use problem::ProblemSpec;
pub use solver::{SolveConfig, SolveReport, SolveStatus};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
