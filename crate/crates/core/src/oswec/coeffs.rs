//! Frequency-domain hydrodynamic coefficients.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HydroCoeffs {
    /// rad/s, strictly increasing.
    pub omega: Vec<f64>,
    /// Added mass A(ω), kg·m².
    pub added_mass: Vec<f64>,
    /// Radiation damping B(ω), N·m·s/rad.
    pub damping: Vec<f64>,
    /// Excitation torque per unit wave amplitude, N·m/m.
    pub exc_amp: Vec<f64>,
    pub exc_phase: Vec<f64>,
    /// Infinite-frequency added mass, kg·m².
    pub a_inf: f64,
}

/// Parameters of the synthetic coefficient set.
pub mod synthetic {
    pub const OMEGA_MIN: f64 = 0.1;
    pub const OMEGA_MAX: f64 = 3.0;
    pub const D_OMEGA: f64 = 0.01;
    /// Peak radiation damping, N·m·s/rad, reached at `OMEGA_PEAK`.
    pub const B_PEAK: f64 = 2.1e7;
    pub const OMEGA_PEAK: f64 = 1.0;
    pub const A_BASE: f64 = 8.0e6;
    pub const A_BUMP: f64 = 2.4e6;
    pub const A_BUMP_CENTER: f64 = 0.7;
    pub const A_BUMP_WIDTH: f64 = 0.6;
    /// Effective flap width entering the Haskind-style excitation amplitude.
    pub const WIDTH: f64 = 18.0;
    pub const RHO: f64 = 1025.0;
    pub const G: f64 = 9.81;
}

impl HydroCoeffs {
    pub fn new(
        omega: Vec<f64>,
        added_mass: Vec<f64>,
        damping: Vec<f64>,
        exc_amp: Vec<f64>,
        exc_phase: Vec<f64>,
        a_inf: f64,
    ) -> Result<Self> {
        let c = Self { omega, added_mass, damping, exc_amp, exc_phase, a_inf };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.omega.len();
        if n < 2 {
            return Err(Error::config("coefficient grid needs at least 2 frequencies"));
        }
        for (name, v) in [
            ("added mass", &self.added_mass),
            ("damping", &self.damping),
            ("excitation amplitude", &self.exc_amp),
            ("excitation phase", &self.exc_phase),
        ] {
            if v.len() != n {
                return Err(Error::config(format!("{name} has {} entries, omega has {n}", v.len())));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::config(format!("{name} contains non-finite values")));
            }
        }
        if self.omega.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::config("omega must be finite and non-negative"));
        }
        if self.omega.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::config("omega must be strictly increasing"));
        }
        if self.damping.iter().any(|b| *b < 0.0) {
            return Err(Error::config("radiation damping must be non-negative"));
        }
        if !(self.a_inf.is_finite() && self.a_inf >= 0.0) {
            return Err(Error::config("A_inf must be finite and non-negative"));
        }
        Ok(())
    }

    pub fn omega_range(&self) -> (f64, f64) {
        (self.omega[0], self.omega[self.omega.len() - 1])
    }

    pub fn check_omega(&self, omega: f64) -> Result<()> {
        let (lo, hi) = self.omega_range();
        if omega.is_finite() && omega >= lo && omega <= hi {
            Ok(())
        } else {
            Err(Error::FrequencyOutOfRange { omega, lo, hi })
        }
    }

    /// Linearly interpolated excitation (amplitude, phase) at `omega`.
    pub fn excitation_at(&self, omega: f64) -> Result<(f64, f64)> {
        self.check_omega(omega)?;
        Ok((interp(&self.omega, &self.exc_amp, omega), interp(&self.omega, &self.exc_phase, omega)))
    }

    pub fn added_mass_at(&self, omega: f64) -> Result<f64> {
        self.check_omega(omega)?;
        Ok(interp(&self.omega, &self.added_mass, omega))
    }

    pub fn damping_at(&self, omega: f64) -> Result<f64> {
        self.check_omega(omega)?;
        Ok(interp(&self.omega, &self.damping, omega))
    }

    /// Loads the coefficient CSV plus the `a_inf_kgm2` key from a TOML
    /// sidecar with the same stem (`foo.csv` → `foo.toml`).
    pub fn load(path: &Path) -> Result<Self> {
        let sidecar = path.with_extension("toml");
        let text = std::fs::read_to_string(&sidecar).map_err(|e| Error::Data {
            path: sidecar.clone(),
            message: format!("cannot read sidecar: {e}"),
        })?;
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Sidecar {
            a_inf_kgm2: f64,
        }
        let side: Sidecar =
            toml::from_str(&text).map_err(|e| Error::Data { path: sidecar.clone(), message: e.to_string() })?;
        Self::load_csv(path, side.a_inf_kgm2)
    }

    pub fn load_csv(path: &Path, a_inf: f64) -> Result<Self> {
        let data = |message: String| Error::Data { path: path.to_path_buf(), message };
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path)?;
        let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
        if header != CSV_HEADER {
            return Err(data(format!("expected header `{}`, found `{}`", CSV_HEADER.join(","), header.join(","))));
        }
        let mut cols: [Vec<f64>; 5] = Default::default();
        let mut bad = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let line = i + 2;
            let rec = rec?;
            let parsed: Option<Vec<f64>> =
                (rec.len() == 5).then(|| rec.iter().map(|f| f.parse::<f64>().ok()).collect()).flatten();
            match parsed {
                Some(v) => cols.iter_mut().zip(v).for_each(|(c, x)| c.push(x)),
                None => bad.push(format!("line {line}: expected 5 numeric fields")),
            }
        }
        if !bad.is_empty() {
            return Err(data(bad.join("; ")));
        }
        let [omega, a, b, amp, phase] = cols;
        Self::new(omega, a, b, amp, phase, a_inf).map_err(|e| data(e.to_string()))
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER)?;
        for i in 0..self.omega.len() {
            w.write_record(
                [self.omega[i], self.added_mass[i], self.damping[i], self.exc_amp[i], self.exc_phase[i]]
                    .map(|x| x.to_string()),
            )?;
        }
        w.flush()?;
        Ok(())
    }
}

pub const CSV_HEADER: [&str; 5] =
    ["omega_rad_s", "added_mass_kgm2", "rad_damping_Nms_rad", "exc_amp_Nm_per_m", "exc_phase_rad"];

/// Piecewise-linear interpolation; `x` must lie within `xs`.
pub(crate) fn interp(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let i = xs.partition_point(|&v| v <= x).clamp(1, xs.len() - 1);
    let (x0, x1) = (xs[i - 1], xs[i]);
    let s = (x - x0) / (x1 - x0);
    ys[i - 1] + s * (ys[i] - ys[i - 1])
}

/// Synthetic stand-in for boundary-element output of a bottom-hinged flap
/// (version 1; values change only with a version bump).
///
/// B(ω) is single-peaked at `OMEGA_PEAK`, A(ω) is a smooth bump over a
/// constant base, A∞ is A at the top of the grid, and the excitation
/// amplitude follows the Haskind-style relation |F|² = 2ρg²·W·B/ω.
pub fn synthetic_coeffs_default() -> HydroCoeffs {
    use synthetic::*;
    let n = ((OMEGA_MAX - OMEGA_MIN) / D_OMEGA).round() as usize + 1;
    let omega: Vec<f64> = (0..n).map(|i| OMEGA_MIN + i as f64 * D_OMEGA).collect();
    let damping: Vec<f64> = omega
        .iter()
        .map(|&w| {
            let r = w / OMEGA_PEAK;
            B_PEAK * r.powi(4) * (2.0 * (1.0 - r * r)).exp()
        })
        .collect();
    let added_mass: Vec<f64> =
        omega.iter().map(|&w| A_BASE + A_BUMP * (-((w - A_BUMP_CENTER) / A_BUMP_WIDTH).powi(2)).exp()).collect();
    let exc_amp: Vec<f64> =
        omega.iter().zip(&damping).map(|(&w, &b)| (2.0 * b * RHO * G * G * WIDTH / w).sqrt()).collect();
    let exc_phase: Vec<f64> = omega.iter().map(|&w| -0.6 * w + 0.25 * (1.0 - (-w).exp())).collect();
    let a_inf = added_mass[n - 1];
    HydroCoeffs { omega, added_mass, damping, exc_amp, exc_phase, a_inf }
}
