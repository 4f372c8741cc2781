//! Run artifacts: manifest.json, residuals.csv, field.csv.
//!
//! field.csv uses Rust's shortest round-trip decimal formatting, so
//! re-parsing reproduces the stored f64 values bit for bit.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use num_complex::Complex64 as C64;
use pompeiu::jet::pairs_up_to;
use pompeiu::solver::{RadiusCertificate, SolveReport, SolveStatus};
use pompeiu::{Field, Jet};
use serde::{Deserialize, Serialize};

use crate::config::JetEntry;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub status: String,
    pub config: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_diff_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical_delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_jet_at_origin: Option<Vec<JetEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius_certificate: Option<RadiusCertificateSer>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_defect: Option<f64>,
    /// δ̂ per probed radius, for probe-only runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe_table: Option<Vec<(f64, f64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_seconds: f64,
}

impl Manifest {
    pub fn new(status: &str, config: serde_json::Value) -> Manifest {
        Manifest {
            status: status.to_string(),
            config,
            iterations: None,
            final_norm: None,
            final_diff_norm: None,
            residual: None,
            empirical_delta: None,
            final_jet_at_origin: None,
            radius_certificate: None,
            oracle_defect: None,
            probe_table: None,
            error: None,
            elapsed_seconds: 0.0,
        }
    }

    pub fn absorb_report(&mut self, report: &SolveReport) {
        self.status = status_str(report.status).to_string();
        self.iterations = Some(report.iterations);
        self.final_norm = Some(report.final_norm);
        self.final_diff_norm = report.diff_norms.last().copied();
        self.residual = report.residual_history.last().copied();
        self.empirical_delta = report.empirical_delta;
        self.error = report.failure.clone();
        let jet = report
            .final_jet_at_origin
            .iter()
            .map(|((i, j), vals)| JetEntry {
                i: *i,
                j: *j,
                values: vals.iter().map(|c| [c.re, c.im]).collect(),
            })
            .collect();
        self.final_jet_at_origin = Some(jet);
    }
}

pub fn status_str(status: SolveStatus) -> &'static str {
    match status {
        SolveStatus::Converged => "converged",
        SolveStatus::Diverged => "diverged",
        SolveStatus::MaxIter => "max_iter",
    }
}

pub fn exit_code(status: SolveStatus) -> i32 {
    match status {
        SolveStatus::Converged => 0,
        _ => 2,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadiusCertificateSer {
    pub r_admissible: f64,
    pub delta: f64,
    pub eta: f64,
    pub a_sup: f64,
    pub h_alpha_a: f64,
    pub c_of_r_gamma: f64,
    pub generic_c: f64,
    pub probe_delta: Option<f64>,
    pub tested: Vec<(f64, f64, f64)>,
}

impl From<&RadiusCertificate> for RadiusCertificateSer {
    fn from(c: &RadiusCertificate) -> Self {
        RadiusCertificateSer {
            r_admissible: c.r_admissible,
            delta: c.certificate.delta,
            eta: c.certificate.eta,
            a_sup: c.certificate.a_sup,
            h_alpha_a: c.certificate.h_alpha_a,
            c_of_r_gamma: c.certificate.c_of_r_gamma,
            generic_c: c.certificate.generic_c,
            probe_delta: c.probe_delta,
            tested: c.tested.clone(),
        }
    }
}

pub fn write_manifest(dir: &Path, manifest: &Manifest) -> Result<()> {
    fs::create_dir_all(dir)?;
    let path = dir.join("manifest.json");
    let text = serde_json::to_string_pretty(manifest)?;
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn write_residuals(dir: &Path, report: &SolveReport) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut out = String::from("iter,diff_norm,ratio,residual\n");
    for (idx, diff) in report.diff_norms.iter().enumerate() {
        let ratio = if idx == 0 {
            String::new()
        } else {
            format!("{}", report.contraction_ratios[idx - 1])
        };
        let residual = report
            .residual_history
            .get(idx)
            .map_or(String::new(), |r| format!("{r}"));
        out.push_str(&format!("{},{diff},{ratio},{residual}\n", idx + 1));
    }
    fs::write(dir.join("residuals.csv"), out)?;
    Ok(())
}

/// Writes the solution samples: node index, polar coordinates, position,
/// then one (re, im) column pair per component.
pub fn write_field(dir: &Path, field: &Field) -> Result<()> {
    fs::create_dir_all(dir)?;
    let grid = field.grid();
    let mut header = String::from("index,r,theta,z_re,z_im");
    for c in 0..field.n_components() {
        header.push_str(&format!(",u{c}_re,u{c}_im"));
    }
    header.push('\n');
    let mut out = header;
    for idx in 0..grid.num_nodes() {
        let (r, theta) = grid.node_polar(idx);
        let z = grid.node(idx);
        out.push_str(&format!("{idx},{r},{theta},{},{}", z.re, z.im));
        for c in 0..field.n_components() {
            let v = field.value(c, idx);
            out.push_str(&format!(",{},{}", v.re, v.im));
        }
        out.push('\n');
    }
    fs::write(dir.join("field.csv"), out)?;
    Ok(())
}

/// Reads field.csv back into per-component sample vectors (bitwise equal to
/// what was written).
pub fn read_field_csv(text: &str) -> Result<Vec<Vec<C64>>> {
    let mut lines = text.lines();
    let header = lines.next().context("empty field.csv")?;
    let cols: Vec<&str> = header.split(',').collect();
    anyhow::ensure!(
        cols.len() > 5 && (cols.len() - 5) % 2 == 0,
        "bad header: {header}"
    );
    let n_components = (cols.len() - 5) / 2;
    let mut values: Vec<Vec<C64>> = vec![Vec::new(); n_components];
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        anyhow::ensure!(parts.len() == cols.len(), "bad row: {line}");
        for c in 0..n_components {
            let re: f64 = parts[5 + 2 * c].parse()?;
            let im: f64 = parts[6 + 2 * c].parse()?;
            values[c].push(C64::new(re, im));
        }
    }
    Ok(values)
}

/// Jet values at the origin serialized as jet entries.
pub fn jet_entries_at_origin(jet: &Jet, up_to: usize) -> Vec<JetEntry> {
    let center = jet.grid().center_index();
    pairs_up_to(up_to)
        .map(|(i, j)| JetEntry {
            i,
            j,
            values: (0..jet.n_components())
                .map(|c| {
                    let v = jet.deriv(i, j).value(c, center);
                    [v.re, v.im]
                })
                .collect(),
        })
        .collect()
}
