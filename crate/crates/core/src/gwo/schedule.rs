//! Exploration-rate schedules `a(t)` and the exploration ratio.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantKind {
    Standard,
    Mgwo,
    Eegwo,
    Igwo,
    Ergwo,
    Egwo,
}

impl VariantKind {
    pub const ALL: [VariantKind; 6] = [
        VariantKind::Standard,
        VariantKind::Mgwo,
        VariantKind::Eegwo,
        VariantKind::Igwo,
        VariantKind::Ergwo,
        VariantKind::Egwo,
    ];
}

/// A GWO variant and its constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VariantSpec {
    pub kind: VariantKind,
    /// EEGWO weight on the leader mean.
    pub b1: f64,
    /// EEGWO weight on the random-peer difference.
    pub b2: f64,
    /// EEGWO nonlinear modulation index.
    pub mu_eegwo: f64,
    /// ERGWO modulation base.
    pub mu_ergwo: f64,
    pub a_initial: f64,
    pub a_final: f64,
    /// Keep the extra `/3` of the ERGWO weighted update.
    pub ergwo_literal_div3: bool,
    /// Evaluate the EEGWO and ERGWO schedules as `a(T + 1 - t)`, which makes
    /// them decrease like the other variants.
    pub reverse_schedule: bool,
}

impl Default for VariantSpec {
    fn default() -> Self {
        Self {
            kind: VariantKind::Standard,
            b1: 0.1,
            b2: 0.9,
            mu_eegwo: 1.5,
            mu_ergwo: 1.001,
            a_initial: 2.0,
            a_final: 0.0,
            ergwo_literal_div3: true,
            reverse_schedule: false,
        }
    }
}

impl VariantSpec {
    pub fn new(kind: VariantKind) -> Self {
        Self { kind, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let in_unit = |v: f64| v > 0.0 && v <= 1.0;
        if !in_unit(self.b1) || !in_unit(self.b2) {
            return Err(Error::config(format!("b1={} and b2={} must lie in (0, 1]", self.b1, self.b2)));
        }
        if !(1.0001..=1.005).contains(&self.mu_ergwo) {
            return Err(Error::config(format!("mu_ergwo={} must lie in [1.0001, 1.005]", self.mu_ergwo)));
        }
        if !(self.mu_eegwo > 0.0) {
            return Err(Error::config("mu_eegwo must be positive"));
        }
        if !(self.a_initial.is_finite() && self.a_final.is_finite()) {
            return Err(Error::config("a_initial and a_final must be finite"));
        }
        Ok(())
    }

    /// Exploration rate `a` at iteration `t` of `max_iter` (1-based).
    pub fn schedule(&self, t: usize, max_iter: usize) -> Result<f64> {
        if max_iter < 2 {
            return Err(Error::config("schedules need at least 2 iterations"));
        }
        if t == 0 || t > max_iter {
            return Err(Error::IterationRange { t, max: max_iter });
        }
        let reversible = matches!(self.kind, VariantKind::Eegwo | VariantKind::Ergwo);
        let t = if self.reverse_schedule && reversible { max_iter + 1 - t } else { t };
        let (tf, tt) = (t as f64, max_iter as f64);
        let (a0, a1) = (self.a_initial, self.a_final);
        let a = match self.kind {
            VariantKind::Standard => a0 - (a0 - a1) * (tf - 1.0) / (tt - 1.0),
            VariantKind::Mgwo => a1 + (a0 - a1) * (1.0 - tf * tf / (tt * tt)),
            VariantKind::Eegwo => a0 - (a0 - a1) * ((tt - tf) / tt).powf(self.mu_eegwo),
            VariantKind::Igwo => a1 + (a0 - a1) * (1.0 - tf / tt).powi(2),
            VariantKind::Ergwo => a0 - (a0 - a1) * self.mu_ergwo.powf(-tf),
            VariantKind::Egwo => {
                let r = (tt - tf) / (tt - 1.0);
                a0 * (1.0 - (tf.powf(r) - tt.powf(r)).exp())
            }
        };
        Ok(a)
    }

    /// The whole schedule `a(1..=T)`.
    pub fn schedule_curve(&self, max_iter: usize) -> Result<Vec<f64>> {
        (1..=max_iter).map(|t| self.schedule(t, max_iter)).collect()
    }

    /// Fraction of iterations whose exploration rate allows `|A| > 1`,
    /// counted as `a(t) >= 1`.
    pub fn exploration_ratio(&self, max_iter: usize) -> Result<f64> {
        let curve = self.schedule_curve(max_iter)?;
        Ok(curve.iter().filter(|&&a| a >= 1.0).count() as f64 / max_iter as f64)
    }
}
