//! Mean PTO power as an optimization objective over (H, T, K, C).

use serde::{Deserialize, Serialize};

use super::coeffs::{synthetic_coeffs_default, HydroCoeffs};
use super::excitation::WaveSpec;
use super::irf::sampled_irf;
use super::pto::PtoParams;
use super::sim::{feasibility_check, simulate_with_kernel, BodyProps, Feasibility, Forcing, SimConfig, SimResult};
use super::sim::DEFAULT_THETA_LIMIT_DEG;
use crate::error::{Error, Result};
use crate::opt::{Direction, Evaluation, Objective, SearchSpace};

/// Decision vector layout: H (m), T (s), K (MNm/rad), C (MNsm/rad).
pub const DECISION_NAMES: [&str; 4] = ["H", "T", "K", "C"];
pub const DECISION_UNITS: [&str; 4] = ["m", "s", "MNm/rad", "MNsm/rad"];

pub fn default_space() -> SearchSpace {
    SearchSpace::new(vec![0.5, 2.0, 0.0, 0.01], vec![5.0, 12.0, 100.0, 200.0])
        .expect("static bounds are valid")
        .with_units(DECISION_UNITS)
}

/// Design point in user units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Design {
    pub h: f64,
    pub t: f64,
    pub k_mn: f64,
    pub c_mn: f64,
}

impl Design {
    pub fn from_slice(x: &[f64]) -> Result<Self> {
        match *x {
            [h, t, k_mn, c_mn] => Ok(Self { h, t, k_mn, c_mn }),
            _ => Err(Error::Dimension { expected: 4, got: x.len() }),
        }
    }

    pub fn to_vec(self) -> Vec<f64> {
        vec![self.h, self.t, self.k_mn, self.c_mn]
    }
}

/// Body, coefficients and run settings with the impulse response cached
/// for the configured time step.
#[derive(Debug, Clone)]
pub struct OswecModel {
    body: BodyProps,
    coeffs: HydroCoeffs,
    sim: SimConfig,
    theta_limit_deg: f64,
    kernel: Vec<f64>,
}

impl OswecModel {
    pub fn new(body: BodyProps, coeffs: HydroCoeffs, sim: SimConfig, theta_limit_deg: f64) -> Result<Self> {
        body.validate()?;
        coeffs.validate()?;
        sim.validate()?;
        if !(theta_limit_deg > 0.0) {
            return Err(Error::config("rotation limit must be > 0 degrees"));
        }
        let kernel = sampled_irf(&coeffs, sim.dt, sim.memory)?;
        Ok(Self { body, coeffs, sim, theta_limit_deg, kernel })
    }

    pub fn synthetic() -> Self {
        Self::new(BodyProps::default(), synthetic_coeffs_default(), SimConfig::default(), DEFAULT_THETA_LIMIT_DEG)
            .expect("defaults are valid")
    }

    pub fn with_sim(&self, sim: SimConfig) -> Result<Self> {
        Self::new(self.body, self.coeffs.clone(), sim, self.theta_limit_deg)
    }

    pub fn with_theta_limit(&self, theta_limit_deg: f64) -> Result<Self> {
        Self::new(self.body, self.coeffs.clone(), self.sim, theta_limit_deg)
    }

    pub fn body(&self) -> &BodyProps {
        &self.body
    }

    pub fn coeffs(&self) -> &HydroCoeffs {
        &self.coeffs
    }

    pub fn sim_config(&self) -> &SimConfig {
        &self.sim
    }

    pub fn theta_limit_deg(&self) -> f64 {
        self.theta_limit_deg
    }

    pub fn simulate(&self, wave: &WaveSpec, pto: &PtoParams) -> Result<SimResult> {
        simulate_with_kernel(&self.body, self.coeffs.a_inf, &self.kernel, &Forcing::new(&self.coeffs, wave)?, pto, &self.sim)
    }

    pub fn simulate_design(&self, d: &Design) -> Result<SimResult> {
        self.simulate(&WaveSpec::regular(d.h, d.t), &PtoParams::from_mega(d.k_mn, d.c_mn)?)
    }

    pub fn feasibility(&self, result: &SimResult) -> Feasibility {
        feasibility_check(result, self.theta_limit_deg)
    }

    /// Simulation plus rotation check for one design.
    pub fn assess(&self, d: &Design) -> Result<(SimResult, Feasibility)> {
        let r = self.simulate_design(d)?;
        let f = self.feasibility(&r);
        Ok((r, f))
    }

    /// Post-ramp mean power in W, or an infeasibility reason.
    pub fn objective_power(&self, x: &[f64]) -> Evaluation {
        let outcome = Design::from_slice(x).and_then(|d| self.assess(&d));
        match outcome {
            Ok((r, Feasibility::Feasible)) => Evaluation::Value(r.summary.mean_power_w),
            Ok((_, Feasibility::Infeasible { max_theta_deg })) => {
                Evaluation::Infeasible(format!("rotation {max_theta_deg:.2} deg exceeds {} deg", self.theta_limit_deg))
            }
            Err(e) => Evaluation::Infeasible(e.to_string()),
        }
    }
}

impl Objective for OswecModel {
    fn direction(&self) -> Direction {
        Direction::Maximize
    }

    fn evaluate(&self, x: &[f64]) -> Evaluation {
        self.objective_power(x)
    }
}
