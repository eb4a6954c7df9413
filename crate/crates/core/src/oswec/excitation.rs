//! Wave excitation torque.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::coeffs::HydroCoeffs;
use crate::error::{Error, Result};
use crate::opt::{UnitSource, WolfRng};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WaveSpec {
    /// Still water.
    Calm,
    Regular {
        /// Wave height (crest to trough), m.
        h: f64,
        /// Period, s.
        t: f64,
    },
    Irregular {
        hs: f64,
        tp: f64,
        #[serde(default = "default_components")]
        components: usize,
        #[serde(default)]
        phase_seed: u64,
    },
}

fn default_components() -> usize {
    200
}

impl WaveSpec {
    pub fn regular(h: f64, t: f64) -> Self {
        WaveSpec::Regular { h, t }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            WaveSpec::Calm => Ok(()),
            WaveSpec::Regular { h, t } => {
                if !(h.is_finite() && h >= 0.0 && t.is_finite() && t > 0.0) {
                    return Err(Error::config(format!("regular wave needs H >= 0 and T > 0 (H={h}, T={t})")));
                }
                Ok(())
            }
            WaveSpec::Irregular { hs, tp, components, .. } => {
                if !(hs.is_finite() && hs >= 0.0 && tp.is_finite() && tp > 0.0) {
                    return Err(Error::config(format!("sea state needs Hs >= 0 and Tp > 0 (Hs={hs}, Tp={tp})")));
                }
                if components < 10 {
                    return Err(Error::config("irregular sea needs at least 10 components"));
                }
                Ok(())
            }
        }
    }
}

/// Half-cosine fade-in from 0 at t = 0 to 1 at t = ramp.
pub fn ramp_factor(t: f64, ramp: f64) -> f64 {
    if t >= ramp {
        1.0
    } else if t <= 0.0 {
        0.0
    } else {
        0.5 * (1.0 - (PI * t / ramp).cos())
    }
}

/// Monochromatic excitation, coefficients resolved once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularExcitation {
    pub omega: f64,
    /// (H/2)·|F(ω)|.
    pub amplitude: f64,
    pub phase: f64,
}

impl RegularExcitation {
    pub fn new(coeffs: &HydroCoeffs, h: f64, t_wave: f64) -> Result<Self> {
        WaveSpec::regular(h, t_wave).validate()?;
        let omega = 2.0 * PI / t_wave;
        let (amp, phase) = coeffs.excitation_at(omega)?;
        Ok(Self { omega, amplitude: 0.5 * h * amp, phase })
    }

    pub fn torque(&self, t: f64, ramp: f64) -> f64 {
        ramp_factor(t, ramp) * self.amplitude * (self.omega * t + self.phase).cos()
    }
}

pub fn excitation_regular(coeffs: &HydroCoeffs, h: f64, t_wave: f64, t: f64, ramp: f64) -> Result<f64> {
    Ok(RegularExcitation::new(coeffs, h, t_wave)?.torque(t, ramp))
}

/// Pierson–Moskowitz spectral density (m²·s) in terms of Hs and Tp.
pub fn pierson_moskowitz(omega: f64, hs: f64, tp: f64) -> f64 {
    if omega <= 0.0 {
        return 0.0;
    }
    let wp = 2.0 * PI / tp;
    let r = wp / omega;
    5.0 / 16.0 * hs * hs * wp.powi(4) / omega.powi(5) * (-1.25 * r.powi(4)).exp()
}

/// Spectral band limits as multiples of the peak frequency.
pub const BAND: (f64, f64) = (0.25, 4.0);

/// Equal-Δω discretization of a Pierson–Moskowitz sea with random phases.
#[derive(Debug, Clone, PartialEq)]
pub struct IrregularSea {
    pub omega: Vec<f64>,
    pub d_omega: f64,
    /// Component wave amplitude √(2S(ω)Δω), m.
    pub wave_amp: Vec<f64>,
    pub random_phase: Vec<f64>,
    exc_amp: Vec<f64>,
    exc_phase: Vec<f64>,
}

impl IrregularSea {
    pub fn new(coeffs: &HydroCoeffs, hs: f64, tp: f64, components: usize, phase_seed: u64) -> Result<Self> {
        WaveSpec::Irregular { hs, tp, components, phase_seed }.validate()?;
        let wp = 2.0 * PI / tp;
        let (lo, hi) = (BAND.0 * wp, BAND.1 * wp);
        let d_omega = (hi - lo) / components as f64;
        let omega: Vec<f64> = (0..components).map(|j| lo + (j as f64 + 0.5) * d_omega).collect();
        let mut rng = WolfRng::new(phase_seed);
        let random_phase: Vec<f64> = omega.iter().map(|_| 2.0 * PI * rng.unit()).collect();
        let wave_amp = omega.iter().map(|&w| (2.0 * pierson_moskowitz(w, hs, tp) * d_omega).sqrt()).collect();
        let (exc_amp, exc_phase) =
            omega.iter().map(|&w| coeffs.excitation_at(w)).collect::<Result<Vec<_>>>()?.into_iter().unzip();
        Ok(Self { omega, d_omega, wave_amp, random_phase, exc_amp, exc_phase })
    }

    pub fn torque(&self, t: f64, ramp: f64) -> f64 {
        let sum: f64 = (0..self.omega.len())
            .map(|j| {
                self.exc_amp[j]
                    * self.wave_amp[j]
                    * (self.omega[j] * t + self.exc_phase[j] + self.random_phase[j]).cos()
            })
            .sum();
        ramp_factor(t, ramp) * sum
    }

    /// Undisturbed free-surface elevation at the hinge line, m.
    pub fn free_surface(&self, t: f64) -> f64 {
        (0..self.omega.len())
            .map(|j| self.wave_amp[j] * (self.omega[j] * t + self.random_phase[j]).cos())
            .sum()
    }

    /// ΣS(ω_j)Δω_j, the variance the discretized sea carries.
    pub fn spectral_variance(&self) -> f64 {
        self.wave_amp.iter().map(|a| a * a / 2.0).sum()
    }

    /// The synthesized record repeats after 2π/Δω seconds.
    pub fn repeat_period(&self) -> f64 {
        2.0 * PI / self.d_omega
    }
}

pub fn excitation_irregular(
    coeffs: &HydroCoeffs,
    hs: f64,
    tp: f64,
    components: usize,
    phase_seed: u64,
    t: f64,
    ramp: f64,
) -> Result<f64> {
    Ok(IrregularSea::new(coeffs, hs, tp, components, phase_seed)?.torque(t, ramp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oswec::synthetic_coeffs_default;

    #[test]
    fn ramp_shape() {
        assert_eq!(ramp_factor(0.0, 100.0), 0.0);
        assert!((ramp_factor(50.0, 100.0) - 0.5).abs() < 1e-15);
        assert_eq!(ramp_factor(100.0, 100.0), 1.0);
        assert_eq!(ramp_factor(5.0, 0.0), 1.0);
    }

    #[test]
    fn regular_zero_height_and_peak() {
        let c = synthetic_coeffs_default();
        for t in [0.0, 13.7, 250.0] {
            assert_eq!(excitation_regular(&c, 0.0, 8.0, t, 100.0).unwrap(), 0.0);
        }
        let ex = RegularExcitation::new(&c, 2.0, 8.0).unwrap();
        let (amp, _) = c.excitation_at(ex.omega).unwrap();
        // ωt + phase = 0 modulo 2π, after the ramp
        let t = (40.0 * PI - ex.phase) / ex.omega;
        assert!(t > 100.0);
        assert!((ex.torque(t, 100.0) - amp).abs() < 1e-9 * amp);
    }

    #[test]
    fn regular_is_linear_in_height() {
        let c = synthetic_coeffs_default();
        for t in [3.0, 77.7, 301.2] {
            let one = excitation_regular(&c, 1.5, 7.0, t, 100.0).unwrap();
            let two = excitation_regular(&c, 3.0, 7.0, t, 100.0).unwrap();
            assert_eq!(two, 2.0 * one);
        }
    }

    #[test]
    fn off_grid_period_rejected() {
        let c = synthetic_coeffs_default();
        assert!(matches!(excitation_regular(&c, 1.0, 2.0, 0.0, 0.0), Err(Error::FrequencyOutOfRange { .. })));
        assert!(excitation_regular(&c, 1.0, 0.0, 0.0, 0.0).is_err());
        assert!(IrregularSea::new(&c, 2.0, 3.0, 200, 0).is_err());
    }

    #[test]
    fn irregular_zero_height_and_repeatable() {
        let c = synthetic_coeffs_default();
        assert_eq!(excitation_irregular(&c, 0.0, 10.0, 50, 3, 120.0, 100.0).unwrap(), 0.0);
        let a = IrregularSea::new(&c, 2.0, 10.0, 200, 42).unwrap();
        let b = IrregularSea::new(&c, 2.0, 10.0, 200, 42).unwrap();
        let ts: Vec<f64> = (0..500).map(|i| i as f64 * 0.7).collect();
        assert_eq!(ts.iter().map(|&t| a.torque(t, 100.0)).collect::<Vec<_>>(), ts.iter().map(|&t| b.torque(t, 100.0)).collect::<Vec<_>>());
        let other = IrregularSea::new(&c, 2.0, 10.0, 200, 43).unwrap();
        assert_ne!(a.torque(150.0, 100.0), other.torque(150.0, 100.0));
    }

    #[test]
    fn free_surface_variance_matches_spectrum() {
        let c = synthetic_coeffs_default();
        let sea = IrregularSea::new(&c, 2.5, 10.0, 200, 7).unwrap();
        let n = 40_000;
        let dt = sea.repeat_period() / n as f64;
        let samples: Vec<f64> = (0..n).map(|i| sea.free_surface(i as f64 * dt)).collect();
        let mean = samples.iter().sum::<f64>() / n as f64;
        let var = samples.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64;
        let target = sea.spectral_variance();
        assert!((var - target).abs() < 0.02 * target, "{var} vs {target}");
        // Hs = 4√m0 holds for the continuous spectrum up to band truncation
        assert!((4.0 * target.sqrt() - 2.5).abs() < 0.05 * 2.5);
    }

    #[test]
    fn wave_spec_validation() {
        assert!(WaveSpec::regular(-1.0, 8.0).validate().is_err());
        assert!(WaveSpec::Irregular { hs: 1.0, tp: 8.0, components: 5, phase_seed: 0 }.validate().is_err());
        let parsed: WaveSpec = toml::from_str("kind = \"irregular\"\nhs = 2.0\ntp = 9.0\n").unwrap();
        assert_eq!(parsed, WaveSpec::Irregular { hs: 2.0, tp: 9.0, components: 200, phase_seed: 0 });
    }
}
