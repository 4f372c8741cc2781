//! JSON run configuration and its translation into core problem types.
//!
//! Schema (see the README for the full field reference):
//!
//! ```json
//! {
//!   "problem": { "name": "dbar-u-squared" }      // registry reference, or inline:
//!   "problem": {
//!     "m": 1, "mu": 0, "nu": 1, "n": 1, "alpha": 0.5,
//!     "rhs": ["u0^2"],
//!     "initial_jet": [ { "i": 0, "j": 0, "values": [[0.5, 0.0]] } ],
//!     "psi":         [ { "i": 1, "j": 0, "values": [[0.1, 0.0]] } ]
//!   },
//!   "grid":   { "radius": 0.2, "n_r": 24, "n_theta": 48 },
//!   "solver": { "max_iter": 200, "tol_abs": 1e-8, "tol_rel": 1e-8,
//!               "divergence_cap": null, "gamma0": 2.0, "generic_c": 1.0 },
//!   "radius_search": { "r_max": 1.0, "r_min": 1e-3 },   // optional
//!   "output_dir": "out"
//! }
//! ```
//!
//! Complex numbers are `[re, im]` pairs. `initial_jet` entries list
//! `∂^i∂̄^j u(0)` per component for i+j ≤ m−1; `psi` lists homogeneous
//! degree-m monomial coefficients of the seed.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use num_complex::Complex64 as C64;
use pompeiu::expr::parse;
use pompeiu::holder::HolderParams;
use pompeiu::jet::PolyMap;
use pompeiu::solver::{RadiusSearchParams, SamplingParams, SolveConfig};
use pompeiu::ProblemSpec;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub problem: ProblemConfig,
    #[serde(default)]
    pub grid: Option<GridConfig>,
    #[serde(default)]
    pub solver: SolverConfigSer,
    #[serde(default)]
    pub radius_search: Option<RadiusSearchConfig>,
    pub output_dir: PathBuf,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ProblemConfig {
    Named { name: String },
    Inline(Box<InlineProblem>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InlineProblem {
    pub m: usize,
    pub mu: usize,
    pub nu: usize,
    pub n: usize,
    pub alpha: f64,
    pub rhs: Vec<String>,
    #[serde(default)]
    pub initial_jet: Vec<JetEntry>,
    #[serde(default)]
    pub psi: Vec<JetEntry>,
    /// Allows order-m derivatives on the RHS (non-contraction demos).
    #[serde(default)]
    pub allow_order_m_rhs: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JetEntry {
    pub i: usize,
    pub j: usize,
    /// One `[re, im]` pair per component.
    pub values: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GridConfig {
    pub radius: f64,
    pub n_r: usize,
    pub n_theta: usize,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfigSer {
    pub max_iter: usize,
    pub tol_abs: f64,
    pub tol_rel: f64,
    /// Defaults to 10·gamma0 when absent.
    pub divergence_cap: Option<f64>,
    pub gamma0: f64,
    pub generic_c: f64,
    pub safety: f64,
    pub seed: u64,
    pub pair_budget: usize,
    pub n_samples: usize,
}

impl Default for SolverConfigSer {
    fn default() -> Self {
        SolverConfigSer {
            max_iter: 200,
            tol_abs: 1e-8,
            tol_rel: 1e-8,
            divergence_cap: None,
            gamma0: 4.0,
            generic_c: 1.0,
            safety: 1.1,
            seed: 7,
            pair_budget: 200_000,
            n_samples: 4096,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct RadiusSearchConfig {
    pub r_max: f64,
    pub r_min: f64,
    pub probe_n_r: usize,
    pub probe_n_theta: usize,
    pub cross_check_probe: bool,
}

impl Default for RadiusSearchConfig {
    fn default() -> Self {
        RadiusSearchConfig {
            r_max: 1.0,
            r_min: 1e-3,
            probe_n_r: 12,
            probe_n_theta: 24,
            cross_check_probe: true,
        }
    }
}

impl InlineProblem {
    pub fn to_spec(&self) -> Result<ProblemSpec> {
        let mut rhs = Vec::with_capacity(self.rhs.len());
        for (idx, src) in self.rhs.iter().enumerate() {
            let e = parse(src).with_context(|| format!("rhs[{idx}]"))?;
            rhs.push(e);
        }
        let mut spec = ProblemSpec {
            m: self.m,
            mu: self.mu,
            nu: self.nu,
            n_components: self.n,
            alpha: self.alpha,
            rhs,
            initial_jet: Default::default(),
            psi: PolyMap::zero(self.n),
            allow_order_m_rhs: self.allow_order_m_rhs,
        };
        for entry in &self.initial_jet {
            if entry.values.len() != self.n {
                bail!(
                    "initial_jet entry ({},{}) needs {} values",
                    entry.i,
                    entry.j,
                    self.n
                );
            }
            spec.initial_jet.insert(
                (entry.i, entry.j),
                entry
                    .values
                    .iter()
                    .map(|[re, im]| C64::new(*re, *im))
                    .collect(),
            );
        }
        for entry in &self.psi {
            if entry.values.len() != self.n {
                bail!(
                    "psi entry ({},{}) needs {} values",
                    entry.i,
                    entry.j,
                    self.n
                );
            }
            spec.psi.add_term(
                entry.i,
                entry.j,
                entry
                    .values
                    .iter()
                    .map(|[re, im]| C64::new(*re, *im))
                    .collect(),
            );
        }
        spec.validate()?;
        Ok(spec)
    }
}

impl SolverConfigSer {
    pub fn to_solve_config(&self, alpha: f64) -> SolveConfig {
        let mut holder = HolderParams::new(alpha);
        holder.pair_budget = self.pair_budget;
        holder.rng_seed = self.seed;
        SolveConfig {
            max_iter: self.max_iter,
            tol_abs: self.tol_abs,
            tol_rel: self.tol_rel,
            divergence_cap: self.divergence_cap.unwrap_or(10.0 * self.gamma0),
            holder,
        }
    }

    pub fn sampling(&self) -> SamplingParams {
        SamplingParams {
            n_samples: self.n_samples,
            seed: self.seed,
            safety: self.safety,
            generic_c: self.generic_c,
        }
    }
}

impl RadiusSearchConfig {
    pub fn to_params(&self, sampling: SamplingParams) -> RadiusSearchParams {
        RadiusSearchParams {
            r_max: self.r_max,
            r_min: self.r_min,
            sampling,
            probe_grid: (self.probe_n_r, self.probe_n_theta),
            cross_check_probe: self.cross_check_probe,
        }
    }
}

/// Parses a config file, returning the parsed JSON value as well so the
/// manifest can echo it even when schema validation fails.
pub fn load_config(text: &str) -> Result<RunConfig> {
    let cfg: RunConfig = serde_json::from_str(text).context("config schema")?;
    Ok(cfg)
}
