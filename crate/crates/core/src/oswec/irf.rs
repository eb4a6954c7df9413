//! Radiation impulse response from the damping curve.

use std::f64::consts::PI;

use super::coeffs::HydroCoeffs;
use crate::error::{Error, Result};

/// Kr(τ) = (2/π)∫B(ω)cos(ωτ)dω, trapezoidal over the coefficient grid with
/// B taken as zero outside it.
pub fn radiation_irf(coeffs: &HydroCoeffs, tau: &[f64]) -> Result<Vec<f64>> {
    irf_from_damping(&coeffs.omega, &coeffs.damping, tau)
}

pub fn irf_from_damping(omega: &[f64], damping: &[f64], tau: &[f64]) -> Result<Vec<f64>> {
    if omega.len() < 2 || damping.len() != omega.len() {
        return Err(Error::config("impulse response needs at least 2 frequency points"));
    }
    if tau.iter().any(|&t| !(t >= 0.0)) || tau.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::config("tau grid must be non-negative and ascending"));
    }
    Ok(tau
        .iter()
        .map(|&t| {
            let f = |i: usize| damping[i] * (omega[i] * t).cos();
            let integral: f64 =
                (1..omega.len()).map(|i| 0.5 * (omega[i] - omega[i - 1]) * (f(i) + f(i - 1))).sum();
            2.0 / PI * integral
        })
        .collect())
}

/// Kr sampled at `k·dt` for `k = 0..=round(memory/dt)`.
pub fn sampled_irf(coeffs: &HydroCoeffs, dt: f64, memory: f64) -> Result<Vec<f64>> {
    let m = (memory / dt).round() as usize;
    let tau: Vec<f64> = (0..=m).map(|k| k as f64 * dt).collect();
    radiation_irf(coeffs, &tau)
}
