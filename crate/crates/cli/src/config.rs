//! Grid configuration files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use pcf_core::identities::{descriptor, ParameterPoint};
use serde::{Deserialize, Serialize};

use crate::literal::ComplexLit;
use crate::Failure;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// A set of identities sampled on the Cartesian product of the listed
/// parameter values. A missing axis is sampled at the single value 1.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridBlock {
    pub identities: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Vec<ComplexLit>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<ComplexLit>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<ComplexLit>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<ComplexLit>>,
}

/// Contents of a `verify` config file. The top level may itself carry one
/// block (`identities` plus axes); further blocks go in `blocks`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Vec<ComplexLit>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<ComplexLit>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<ComplexLit>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<ComplexLit>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<GridBlock>,
    /// Per-identity tolerance overrides.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

/// One (identity, point) pair to verify.
#[derive(Debug, Clone, PartialEq)]
pub struct Task {
    pub id: String,
    pub point: ParameterPoint,
    pub tol: f64,
}

fn axis(values: &Option<Vec<ComplexLit>>) -> Vec<Complex64> {
    match values {
        Some(v) => v.iter().map(|c| c.0).collect(),
        None => vec![Complex64::new(1.0, 0.0)],
    }
}

impl GridConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::config(format!("cannot read {}: {e}", path.display())))?;
        let cfg: GridConfig = serde_json::from_str(&text)
            .map_err(|e| Failure::config(format!("cannot parse {}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// The top-level block, if any, followed by `blocks`.
    pub fn all_blocks(&self) -> Vec<GridBlock> {
        let mut out = Vec::new();
        if !self.identities.is_empty() {
            out.push(GridBlock {
                identities: self.identities.clone(),
                nu: self.nu.clone(),
                mu: self.mu.clone(),
                z: self.z.clone(),
                a: self.a.clone(),
            });
        }
        out.extend(self.blocks.iter().cloned());
        out
    }

    pub fn validate(&self) -> Result<(), Failure> {
        let blocks = self.all_blocks();
        if blocks.is_empty() {
            return Err(Failure::config("config lists no identities".into()));
        }
        for block in &blocks {
            if block.identities.is_empty() {
                return Err(Failure::config("a block lists no identities".into()));
            }
            for id in &block.identities {
                descriptor(id).map_err(|e| Failure::config(e.to_string()))?;
            }
        }
        for (id, &tol) in &self.tolerances {
            descriptor(id).map_err(|e| Failure::config(format!("tolerance override: {e}")))?;
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(Failure::config(format!(
                    "tolerance for {id} must be positive, got {tol}"
                )));
            }
        }
        Ok(())
    }

    pub fn tolerance(&self, id: &str) -> f64 {
        self.tolerances
            .get(id)
            .copied()
            .unwrap_or_else(|| descriptor(id).map(|d| d.default_tol).unwrap_or(f64::NAN))
    }

    /// Expands the grid in block, identity, ν, μ, z, a order.
    pub fn tasks(&self) -> Vec<Task> {
        let mut out = Vec::new();
        for block in self.all_blocks() {
            let (nus, mus, zs, as_) = (axis(&block.nu), axis(&block.mu), axis(&block.z), axis(&block.a));
            for id in &block.identities {
                let tol = self.tolerance(id);
                for &nu in &nus {
                    for &mu in &mus {
                        for &z in &zs {
                            for &a in &as_ {
                                out.push(Task {
                                    id: id.clone(),
                                    point: ParameterPoint::new(nu, mu, z, a),
                                    tol,
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }
}
