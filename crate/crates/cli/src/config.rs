//! Layered configuration: built-in defaults, then a TOML file, then
//! `--set key=value` overrides, then dedicated flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use wolfpack::benchmarks::BenchId;
use wolfpack::gwo::Algorithm;
use wolfpack::hill_climb::HcConfig;
use wolfpack::opt::SearchSpace;
use wolfpack::oswec::{self, synthetic_coeffs_default, BodyProps, HydroCoeffs, OswecModel, SimConfig};
use wolfpack::site::{Param, Scaling};

use crate::CliError;

pub const SEED_ENV: &str = "WOLFPACK_SEED";
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AppConfig {
    pub optimizer: OptimizerSection,
    pub bench: BenchSection,
    pub space: SpaceSection,
    pub model: ModelSection,
    pub sweep: SweepSection,
    pub sites: SitesSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerSection {
    pub algorithm: Algorithm,
    pub agents: usize,
    pub iterations: usize,
    pub seed: Option<u64>,
    /// Independent seeded runs of `optimize`.
    pub runs: usize,
    pub hc: HcConfig,
}

impl Default for OptimizerSection {
    fn default() -> Self {
        Self { algorithm: Algorithm::HcEgwo, agents: 20, iterations: 1000, seed: None, runs: 10, hc: HcConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchSection {
    pub algorithms: Vec<Algorithm>,
    pub functions: Vec<BenchId>,
    pub repeats: usize,
    pub agents: usize,
    pub iterations: usize,
    pub seed_stride: u64,
}

impl Default for BenchSection {
    fn default() -> Self {
        Self {
            algorithms: Algorithm::COMPARED.to_vec(),
            functions: BenchId::all().collect(),
            repeats: 30,
            agents: 30,
            iterations: 500,
            seed_stride: 1,
        }
    }
}

/// Bounds in user units: m, s, MNm/rad, MNsm/rad.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpaceSection {
    pub h: [f64; 2],
    pub t: [f64; 2],
    pub k: [f64; 2],
    pub c: [f64; 2],
}

impl Default for SpaceSection {
    fn default() -> Self {
        let s = oswec::default_space();
        let b = |d: usize| [s.lower()[d], s.upper()[d]];
        Self { h: b(0), t: b(1), k: b(2), c: b(3) }
    }
}

impl SpaceSection {
    pub fn search_space(&self) -> Result<SearchSpace, CliError> {
        let rows = [self.h, self.t, self.k, self.c];
        SearchSpace::new(rows.iter().map(|r| r[0]).collect(), rows.iter().map(|r| r[1]).collect())
            .map(|s| s.with_units(oswec::objective::DECISION_UNITS))
            .map_err(|e| CliError::Config(format!("space: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelSection {
    /// `"synthetic"` or a coefficient CSV with a same-stem TOML sidecar.
    pub coefficients: String,
    pub theta_limit_deg: f64,
    pub body: BodyProps,
    pub sim: SimConfig,
}

impl Default for ModelSection {
    fn default() -> Self {
        Self {
            coefficients: "synthetic".into(),
            theta_limit_deg: oswec::DEFAULT_THETA_LIMIT_DEG,
            body: BodyProps::default(),
            sim: SimConfig::default(),
        }
    }
}

impl ModelSection {
    pub fn build(&self) -> Result<OswecModel, CliError> {
        let coeffs = if self.coefficients == "synthetic" {
            synthetic_coeffs_default()
        } else {
            HydroCoeffs::load(Path::new(&self.coefficients)).map_err(CliError::from_core)?
        };
        OswecModel::new(self.body, coeffs, self.sim, self.theta_limit_deg)
            .map_err(|e| CliError::Config(format!("model: {e}")))
    }
}

/// `[lo, hi, n]`: `n` evenly spaced values from `lo` to `hi`.
pub type Axis = (f64, f64, usize);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub vary: [Param; 2],
    /// Values of the parameters not swept.
    pub fixed: BTreeMap<Param, f64>,
    pub grid: BTreeMap<Param, Axis>,
    pub mask: bool,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            vary: [Param::H, Param::T],
            fixed: [(Param::H, 4.223), (Param::T, 7.39), (Param::K, 54.46), (Param::C, 75.58)].into(),
            grid: [
                (Param::H, (0.5, 5.0, 10)),
                (Param::T, (3.0, 12.0, 10)),
                (Param::K, (0.0, 100.0, 11)),
                (Param::C, (0.01, 200.0, 11)),
            ]
            .into(),
            mask: true,
        }
    }
}

pub fn axis_values((lo, hi, n): Axis) -> Result<Vec<f64>, CliError> {
    if n == 0 || !(lo.is_finite() && hi.is_finite()) || (n > 1 && hi <= lo) {
        return Err(CliError::Config(format!("grid axis [{lo}, {hi}, {n}] needs n >= 1 and lo < hi")));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    // rounded so that printed grids read as typed, e.g. 20.009 not 20.009000000000004
    let tidy = |x: f64| (x * 1e10).round() / 1e10;
    Ok((0..n).map(|i| if i + 1 == n { hi } else { tidy(lo + (hi - lo) * i as f64 / (n - 1) as f64) }).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SitesSection {
    /// `"synthetic"` or a sites CSV path.
    pub data: String,
    pub h_star: f64,
    pub t_star: f64,
    pub scaling: Scaling,
}

impl Default for SitesSection {
    fn default() -> Self {
        Self { data: "synthetic".into(), h_star: 4.223, t_star: 7.39, scaling: Scaling::Raw }
    }
}

/// Reads the optional file, applies overrides and checks every key.
pub fn load(path: Option<&PathBuf>, overrides: &[String]) -> Result<AppConfig, CliError> {
    let mut table = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", p.display())))?;
            text.parse::<toml::Table>().map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?
        }
        None => toml::Table::new(),
    };
    for o in overrides {
        apply_override(&mut table, o)?;
    }
    toml::Value::Table(table).try_into().map_err(|e: toml::de::Error| CliError::Config(e.to_string()))
}

/// `a.b.c=value`, where value is a TOML literal or else a bare string.
pub fn apply_override(table: &mut toml::Table, assignment: &str) -> Result<(), CliError> {
    let (key, raw) = assignment
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("override `{assignment}` is not KEY=VALUE")))?;
    let path: Vec<&str> = key.trim().split('.').collect();
    if path.iter().any(|p| p.is_empty()) {
        return Err(CliError::Config(format!("override key `{key}` is malformed")));
    }
    let value = format!("v = {}", raw.trim())
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.trim().to_string()));
    let (last, parents) = path.split_last().expect("non-empty path");
    let mut cur = table;
    for p in parents {
        let entry = cur.entry(p.to_string()).or_insert_with(|| toml::Value::Table(toml::Table::new()));
        cur = entry
            .as_table_mut()
            .ok_or_else(|| CliError::Config(format!("override `{key}`: `{p}` is not a section")))?;
    }
    cur.insert(last.to_string(), value);
    Ok(())
}

/// Flag, then config file, then environment, then the built-in default.
pub fn resolve_seed(flag: Option<u64>, cfg: &AppConfig) -> Result<u64, CliError> {
    if let Some(s) = flag.or(cfg.optimizer.seed) {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Config(format!("{SEED_ENV}=`{v}` is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip_through_toml() {
        let cfg = load(None, &[]).unwrap();
        assert_eq!(cfg, AppConfig::default());
        let text = toml::to_string(&cfg).unwrap();
        let back: AppConfig = toml::from_str(&text).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn overrides_reach_nested_keys() {
        let cfg = load(
            None,
            &[
                "optimizer.hc.g=50".into(),
                "optimizer.algorithm=mgwo".into(),
                "model.sim.dt=0.05".into(),
                "bench.functions=[\"F3\", \"F9\"]".into(),
                "sweep.vary=[\"K\",\"C\"]".into(),
            ],
        )
        .unwrap();
        assert_eq!(cfg.optimizer.hc.g, 50);
        assert_eq!(cfg.optimizer.algorithm, Algorithm::Mgwo);
        assert_eq!(cfg.model.sim.dt, 0.05);
        assert_eq!(cfg.bench.functions.len(), 2);
        assert_eq!(cfg.sweep.vary, [Param::K, Param::C]);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(matches!(load(None, &["optimizer.agnets=3".into()]), Err(CliError::Config(_))));
        assert!(matches!(load(None, &["nonsense=1".into()]), Err(CliError::Config(_))));
        assert!(matches!(load(None, &["noequals".into()]), Err(CliError::Config(_))));
    }

    #[test]
    fn seed_precedence() {
        let mut cfg = AppConfig::default();
        cfg.optimizer.seed = Some(7);
        assert_eq!(resolve_seed(Some(3), &cfg).unwrap(), 3);
        assert_eq!(resolve_seed(None, &cfg).unwrap(), 7);
    }

    #[test]
    fn axis_spacing() {
        assert_eq!(axis_values((0.0, 1.0, 3)).unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(axis_values((2.0, 2.0, 1)).unwrap(), vec![2.0]);
        assert!(axis_values((1.0, 0.0, 3)).is_err());
        assert!(axis_values((0.0, 1.0, 0)).is_err());
    }
}
