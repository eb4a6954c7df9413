//! Linear spring-damper power take-off.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stored in SI (N·m/rad, N·m·s/rad).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PtoParams {
    pub k: f64,
    pub c: f64,
}

pub const MEGA: f64 = 1e6;

impl PtoParams {
    pub fn new(k: f64, c: f64) -> Result<Self> {
        if !(k.is_finite() && k >= 0.0 && c.is_finite() && c >= 0.0) {
            return Err(Error::config(format!("PTO coefficients must be finite and >= 0 (K={k}, C={c})")));
        }
        Ok(Self { k, c })
    }

    /// From MNm/rad and MNsm/rad.
    pub fn from_mega(k_mn: f64, c_mn: f64) -> Result<Self> {
        Self::new(k_mn * MEGA, c_mn * MEGA)
    }

    pub fn k_mega(&self) -> f64 {
        self.k / MEGA
    }

    pub fn c_mega(&self) -> f64 {
        self.c / MEGA
    }
}

/// K·θ + C·θ̇. Acts on the flap with the opposite sign.
pub fn pto_force(pto: &PtoParams, theta: f64, theta_dot: f64) -> f64 {
    pto.k * theta + pto.c * theta_dot
}

pub fn pto_power(pto: &PtoParams, theta: f64, theta_dot: f64) -> f64 {
    pto_force(pto, theta, theta_dot) * theta_dot
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn worked_values() {
        let p = PtoParams::new(54.46e6, 75.58e6).unwrap();
        assert!((pto_force(&p, 0.1, 0.05) - 9.225e6).abs() < 1e-6);
        assert!((pto_power(&p, 0.1, 0.05) - 4.6125e5).abs() < 1e-6);
        assert_eq!(pto_force(&p, 0.0, 0.0), 0.0);
        assert_eq!(pto_power(&p, 0.3, 0.0), 0.0);
        let spring = PtoParams::new(2.0e6, 0.0).unwrap();
        assert_eq!(pto_force(&spring, 0.25, 9.0), 0.5e6);
    }

    #[test]
    fn rejects_negative() {
        assert!(PtoParams::new(-1.0, 0.0).is_err());
        assert!(PtoParams::from_mega(0.0, -0.1).is_err());
        assert!(PtoParams::new(f64::NAN, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn mega_units_round_trip(k in 0.0f64..1000.0, c in 0.0f64..1000.0) {
            let p = PtoParams::from_mega(k, c).unwrap();
            prop_assert_eq!(p.k, k * 1e6);
            prop_assert_eq!(p.c, c * 1e6);
        }

        #[test]
        fn pure_damper_absorbs(c in 0.0f64..1e8, theta in -1.0f64..1.0, v in -1.0f64..1.0) {
            let p = PtoParams::new(0.0, c).unwrap();
            prop_assert!(pto_power(&p, theta, v) >= 0.0);
        }
    }
}
