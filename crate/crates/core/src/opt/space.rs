use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opt::rng::UnitSource;

/// Axis-aligned box of admissible decision vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchSpace {
    lower: Vec<f64>,
    upper: Vec<f64>,
    units: Vec<String>,
}

impl SearchSpace {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::config("search space needs at least one dimension"));
        }
        if lower.len() != upper.len() {
            return Err(Error::Dimension { expected: lower.len(), got: upper.len() });
        }
        for (d, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::config(format!(
                    "dimension {d}: lower bound {lo} must be finite and below upper bound {hi}"
                )));
            }
        }
        let units = vec![String::new(); lower.len()];
        Ok(Self { lower, upper, units })
    }

    /// Same bounds on every one of `dim` axes.
    pub fn uniform(dim: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    pub fn with_units<S: Into<String>>(mut self, units: impl IntoIterator<Item = S>) -> Self {
        let units: Vec<String> = units.into_iter().map(Into::into).collect();
        if units.len() == self.dim() {
            self.units = units;
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn units(&self) -> &[String] {
        &self.units
    }

    pub fn width(&self, d: usize) -> f64 {
        self.upper[d] - self.lower[d]
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *v >= *lo && *v <= *hi)
    }

    /// Projects `x` onto the box coordinate-wise.
    pub fn clamp(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), got: x.len() });
        }
        let mut out = x.to_vec();
        self.clamp_in_place(&mut out);
        Ok(out)
    }

    pub(crate) fn clamp_in_place(&self, x: &mut [f64]) {
        for (v, (lo, hi)) in x.iter_mut().zip(self.lower.iter().zip(&self.upper)) {
            // NaN coordinates land on the lower bound
            *v = if v.is_nan() { *lo } else { v.max(*lo).min(*hi) };
        }
    }

    /// Uniform point in the box; one draw per dimension, in dimension order.
    pub fn sample<R: UnitSource>(&self, rng: &mut R) -> Vec<f64> {
        (0..self.dim())
            .map(|d| self.lower[d] + rng.unit() * self.width(d))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clamp_examples() {
        let unit = SearchSpace::uniform(1, 0.0, 1.0).unwrap();
        assert_eq!(unit.clamp(&[1.5]).unwrap(), vec![1.0]);
        assert_eq!(unit.clamp(&[0.5]).unwrap(), vec![0.5]);
        let two = SearchSpace::new(vec![0.0, 0.0], vec![1.0, 5.0]).unwrap();
        assert_eq!(two.clamp(&[-3.0, 7.0]).unwrap(), vec![0.0, 5.0]);
    }

    #[test]
    fn clamp_rejects_wrong_dimension() {
        let unit = SearchSpace::uniform(2, 0.0, 1.0).unwrap();
        assert!(matches!(unit.clamp(&[0.1]), Err(Error::Dimension { expected: 2, got: 1 })));
    }

    #[test]
    fn degenerate_width_rejected() {
        assert!(SearchSpace::new(vec![1.0], vec![1.0]).is_err());
        assert!(SearchSpace::new(vec![2.0], vec![1.0]).is_err());
        assert!(SearchSpace::new(vec![], vec![]).is_err());
        assert!(SearchSpace::new(vec![0.0, f64::NEG_INFINITY], vec![1.0, 0.0]).is_err());
    }
}
