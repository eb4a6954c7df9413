//! Time-domain pitch dynamics with radiation memory.

use serde::{Deserialize, Serialize};

use super::coeffs::HydroCoeffs;
use super::excitation::{IrregularSea, RegularExcitation, WaveSpec};
use super::irf::sampled_irf;
use super::pto::{pto_force, pto_power, PtoParams};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BodyProps {
    /// Pitch inertia about the hinge, kg·m².
    pub inertia: f64,
    /// Informational, kg.
    pub mass: f64,
    /// Hydrostatic restoring stiffness, N·m/rad.
    pub kp: f64,
    /// Informational, m.
    pub cg_z: f64,
}

impl Default for BodyProps {
    fn default() -> Self {
        Self { inertia: 1.85e6, mass: 127_000.0, kp: 6.4e6, cg_z: -3.9 }
    }
}

impl BodyProps {
    pub fn validate(&self) -> Result<()> {
        if !(self.inertia.is_finite() && self.inertia > 0.0) {
            return Err(Error::config("pitch inertia must be > 0"));
        }
        if !(self.kp.is_finite() && self.kp > 0.0) {
            return Err(Error::config("hydrostatic stiffness must be > 0"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    pub t_end: f64,
    pub ramp: f64,
    pub dt: f64,
    /// Length of the radiation memory window, s.
    pub memory: f64,
    /// Initial flap angle, rad. The flap is at rest before t = 0.
    pub theta0: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self { t_end: 400.0, ramp: 100.0, dt: 0.1, memory: 20.0, theta0: 0.0 }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.t_end, self.ramp, self.dt, self.memory, self.theta0].iter().all(|v| v.is_finite());
        if !finite || self.dt <= 0.0 || self.ramp < 0.0 || self.memory < 0.0 {
            return Err(Error::config("simulation times must be finite, dt > 0, ramp and memory >= 0"));
        }
        if self.ramp >= self.t_end {
            return Err(Error::config(format!("ramp {} must be shorter than t_end {}", self.ramp, self.t_end)));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    /// Over the whole record; this is the quantity the rotation limit uses.
    pub max_theta_deg: f64,
    pub max_theta_dot_deg_s: f64,
    pub mean_abs_theta_dot_deg_s: f64,
    pub max_pto_force_nm: f64,
    pub max_power_w: f64,
    pub mean_power_w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub ramp: f64,
    pub time: Vec<f64>,
    pub theta: Vec<f64>,
    pub theta_dot: Vec<f64>,
    pub theta_ddot: Vec<f64>,
    pub f_exc: Vec<f64>,
    /// −A∞·θ̈ − memory convolution.
    pub f_rad: Vec<f64>,
    /// K·θ + C·θ̇; acts on the flap with the opposite sign.
    pub f_pto: Vec<f64>,
    /// −Kp·θ.
    pub f_restoring: Vec<f64>,
    pub power: Vec<f64>,
    pub summary: Summary,
}

impl SimResult {
    /// Summary statistics recomputed from the series. All but the rotation
    /// maximum use samples with t > ramp.
    pub fn summarize(&self) -> Summary {
        let post: Vec<usize> = (0..self.time.len()).filter(|&i| self.time[i] > self.ramp).collect();
        let deg = f64::to_degrees;
        let max_abs = |v: &[f64], idx: &[usize]| idx.iter().map(|&i| v[i].abs()).fold(0.0, f64::max);
        let mean = |f: &dyn Fn(usize) -> f64| {
            if post.is_empty() {
                0.0
            } else {
                post.iter().map(|&i| f(i)).sum::<f64>() / post.len() as f64
            }
        };
        let all: Vec<usize> = (0..self.time.len()).collect();
        Summary {
            max_theta_deg: deg(max_abs(&self.theta, &all)),
            max_theta_dot_deg_s: deg(max_abs(&self.theta_dot, &post)),
            mean_abs_theta_dot_deg_s: deg(mean(&|i| self.theta_dot[i].abs())),
            max_pto_force_nm: max_abs(&self.f_pto, &post),
            max_power_w: post.iter().map(|&i| self.power[i]).fold(0.0, f64::max),
            mean_power_w: mean(&|i| self.power[i]),
        }
    }

    /// Series as CSV with header
    /// `t_s,theta_rad,theta_dot_rad_s,f_exc_Nm,f_rad_Nm,f_pto_Nm,power_W`.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(SERIES_HEADER)?;
        for i in 0..self.time.len() {
            w.write_record(
                [self.time[i], self.theta[i], self.theta_dot[i], self.f_exc[i], self.f_rad[i], self.f_pto[i], self.power[i]]
                    .map(|x| x.to_string()),
            )?;
        }
        w.flush()?;
        Ok(())
    }
}

pub const SERIES_HEADER: [&str; 7] =
    ["t_s", "theta_rad", "theta_dot_rad_s", "f_exc_Nm", "f_rad_Nm", "f_pto_Nm", "power_W"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Feasibility {
    Feasible,
    Infeasible { max_theta_deg: f64 },
}

impl Feasibility {
    pub fn from_max_rotation(max_theta_deg: f64, limit_deg: f64) -> Self {
        if max_theta_deg <= limit_deg {
            Feasibility::Feasible
        } else {
            Feasibility::Infeasible { max_theta_deg }
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible)
    }
}

pub const DEFAULT_THETA_LIMIT_DEG: f64 = 30.0;

/// Feasible iff max over all t of |θ| is within the limit (inclusive).
pub fn feasibility_check(result: &SimResult, theta_limit_deg: f64) -> Feasibility {
    let max = result.theta.iter().map(|v| v.abs()).fold(0.0, f64::max).to_degrees();
    Feasibility::from_max_rotation(max, theta_limit_deg)
}

pub(crate) enum Forcing {
    Calm,
    Regular(RegularExcitation),
    Irregular(IrregularSea),
}

impl Forcing {
    pub(crate) fn new(coeffs: &HydroCoeffs, wave: &WaveSpec) -> Result<Self> {
        wave.validate()?;
        Ok(match *wave {
            WaveSpec::Calm => Forcing::Calm,
            WaveSpec::Regular { h, t } => Forcing::Regular(RegularExcitation::new(coeffs, h, t)?),
            WaveSpec::Irregular { hs, tp, components, phase_seed } => {
                Forcing::Irregular(IrregularSea::new(coeffs, hs, tp, components, phase_seed)?)
            }
        })
    }

    fn torque(&self, t: f64, ramp: f64) -> f64 {
        match self {
            Forcing::Calm => 0.0,
            Forcing::Regular(r) => r.torque(t, ramp),
            Forcing::Irregular(s) => s.torque(t, ramp),
        }
    }
}

/// Integrates (I + A∞)θ̈ = F_exc − ∫Kr(t−τ)θ̇(τ)dτ − Kp·θ − (K·θ + C·θ̇).
pub fn simulate(
    body: &BodyProps,
    coeffs: &HydroCoeffs,
    pto: &PtoParams,
    wave: &WaveSpec,
    cfg: &SimConfig,
) -> Result<SimResult> {
    cfg.validate()?;
    let kernel = sampled_irf(coeffs, cfg.dt, cfg.memory)?;
    simulate_with_kernel(body, coeffs.a_inf, &kernel, &Forcing::new(coeffs, wave)?, pto, cfg)
}

/// `kernel[k]` is Kr(k·dt). The convolution is a trapezoidal sum over the
/// memory window; θ̇ between stored steps is linearly interpolated and is
/// zero before t = 0.
pub(crate) fn simulate_with_kernel(
    body: &BodyProps,
    a_inf: f64,
    kernel: &[f64],
    forcing: &Forcing,
    pto: &PtoParams,
    cfg: &SimConfig,
) -> Result<SimResult> {
    body.validate()?;
    cfg.validate()?;
    let dt = cfg.dt;
    let n = cfg.steps();
    let m = kernel.len().saturating_sub(1);
    let weight = |k: usize| if k == m { 0.5 } else { 1.0 };
    let inertia = body.inertia + a_inf;
    let stiffness = body.kp + pto.k;
    let k0 = kernel.first().copied().unwrap_or(0.0);

    let mut time = Vec::with_capacity(n + 1);
    let mut theta = Vec::with_capacity(n + 1);
    let mut vel: Vec<f64> = Vec::with_capacity(n + 1);
    let mut acc = Vec::with_capacity(n + 1);
    let mut f_exc = Vec::with_capacity(n + 1);
    let mut f_rad = Vec::with_capacity(n + 1);

    let (mut th, mut v) = (cfg.theta0, 0.0);
    for step in 0..=n {
        let t = step as f64 * dt;
        vel.push(v);
        // history sums with the current step's velocity already stored
        let (mut s0, mut s1) = (0.0, 0.0);
        for k in 1..=m.min(step + 1) {
            let w = weight(k) * kernel[k];
            if k <= step {
                s0 += w * vel[step - k];
            }
            s1 += w * vel[step + 1 - k];
        }
        let conv = |c: f64, v_stage: f64| dt * (0.5 * k0 * v_stage + (1.0 - c) * s0 + c * s1);
        let fe = [forcing.torque(t, cfg.ramp), forcing.torque(t + 0.5 * dt, cfg.ramp), forcing.torque(t + dt, cfg.ramp)];
        let accel = |stage: usize, c: f64, th: f64, v: f64| {
            let mem = conv(c, v);
            ((fe[stage] - mem - stiffness * th - pto.c * v) / inertia, mem)
        };

        let (a1, mem0) = accel(0, 0.0, th, v);
        time.push(t);
        theta.push(th);
        acc.push(a1);
        f_exc.push(fe[0]);
        f_rad.push(-a_inf * a1 - mem0);
        if step == n {
            break;
        }

        let v1 = v;
        let (th2, v2) = (th + 0.5 * dt * v1, v + 0.5 * dt * a1);
        let (a2, _) = accel(1, 0.5, th2, v2);
        let (th3, v3) = (th + 0.5 * dt * v2, v + 0.5 * dt * a2);
        let (a3, _) = accel(1, 0.5, th3, v3);
        let (th4, v4) = (th + dt * v3, v + dt * a3);
        let (a4, _) = accel(2, 1.0, th4, v4);
        th += dt / 6.0 * (v1 + 2.0 * v2 + 2.0 * v3 + v4);
        v += dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        if !(th.is_finite() && v.is_finite()) || th.abs() > 1e6 {
            return Err(Error::Diverged {
                t: t + dt,
                detail: format!("theta={th}, theta_dot={v}; check coefficients or reduce dt"),
            });
        }
    }

    let f_pto: Vec<f64> = theta.iter().zip(&vel).map(|(&a, &b)| pto_force(pto, a, b)).collect();
    let power: Vec<f64> = theta.iter().zip(&vel).map(|(&a, &b)| pto_power(pto, a, b)).collect();
    let f_restoring = theta.iter().map(|&a| -body.kp * a).collect();
    let mut result = SimResult {
        ramp: cfg.ramp,
        time,
        theta,
        theta_dot: vel,
        theta_ddot: acc,
        f_exc,
        f_rad,
        f_pto,
        f_restoring,
        power,
        summary: Summary::default(),
    };
    result.summary = result.summarize();
    Ok(result)
}
