//! `evolve` configuration file.

use std::path::PathBuf;

use fdkp::solver::{constrained_bump, rough_data, Solver, SolverConfig};
use fdkp::spectral::SpectralField2D;
use fdkp::{Error, Result};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub solver: SolverConfig,
    pub run: RunSection,
    pub initial: Initial,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub t_end: f64,
    #[serde(default = "one")]
    pub record_every: usize,
    /// Snapshot every this many ledger rows (0: final only).
    #[serde(default)]
    pub snapshot_every: usize,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Initial {
    /// `∂_{x₁}` of a centred Gaussian (satisfies the constraint).
    ConstrainedBump { amplitude: f64 },
    /// Random-phase data with `|c_k| ∝ |ξ|^{−s−1−ε}`.
    Rough { s: f64, eps: f64, amplitude: f64, seed: u64 },
    /// `A exp(−((x₁−c₁)² + (x₂−c₂)²)/w²)`, box-centred.
    Gaussian { amplitude: f64, width: f64 },
    /// Field read from a snapshot file.
    Snapshot { path: PathBuf },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { dir: default_dir() }
    }
}

fn default_dir() -> PathBuf {
    PathBuf::from(".")
}

impl RunConfig {
    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| e.to_string())?;
        cfg.solver.validate().map_err(|e| e.to_string())?;
        if !(cfg.run.t_end.is_finite() && cfg.run.t_end > 0.0) {
            return Err(format!("run.t_end must be finite and > 0, got {}", cfg.run.t_end));
        }
        let positive = |x: f64| x.is_finite() && x > 0.0;
        let ok = match &cfg.initial {
            Initial::ConstrainedBump { amplitude } => positive(*amplitude),
            Initial::Rough { s, eps, amplitude, .. } => positive(*s) && positive(*eps) && positive(*amplitude),
            Initial::Gaussian { amplitude, width } => positive(*amplitude) && positive(*width),
            Initial::Snapshot { .. } => true,
        };
        if !ok {
            return Err("initial-data parameters must be finite and > 0".into());
        }
        Ok(cfg)
    }

    pub fn initial_field(&self, solver: &Solver) -> Result<SpectralField2D> {
        let g = solver.grid();
        let u = match &self.initial {
            Initial::ConstrainedBump { amplitude } => constrained_bump(g, *amplitude)?,
            Initial::Rough { s, eps, amplitude, seed } => rough_data(&self.solver, *s, *eps, *amplitude, *seed)?,
            Initial::Gaussian { amplitude, width } => {
                let (c1, c2) = (g.l1 / 2.0, g.l2 / 2.0);
                SpectralField2D::from_fn(g, |x1, x2| {
                    amplitude * (-((x1 - c1).powi(2) + (x2 - c2).powi(2)) / (width * width)).exp()
                })?
            }
            Initial::Snapshot { path } => {
                let f = std::fs::File::open(path)?;
                let (u, _) = SpectralField2D::read_snapshot(std::io::BufReader::new(f))?;
                g.check_same(&u.grid())?;
                u
            }
        };
        if u.linf_norm() == 0.0 && !matches!(self.initial, Initial::Snapshot { .. }) {
            return Err(Error::Empty("initial field vanishes"));
        }
        solver.truncate(&u)
    }
}
