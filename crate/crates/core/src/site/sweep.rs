//! Power matrices and two-parameter sensitivity grids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oswec::{Design, Feasibility, OswecModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Param {
    H,
    T,
    K,
    C,
}

impl Param {
    pub const ALL: [Param; 4] = [Param::H, Param::T, Param::K, Param::C];

    pub fn name(self) -> &'static str {
        match self {
            Param::H => "H",
            Param::T => "T",
            Param::K => "K",
            Param::C => "C",
        }
    }

    fn set(self, d: &mut Design, v: f64) {
        match self {
            Param::H => d.h = v,
            Param::T => d.t = v,
            Param::K => d.k_mn = v,
            Param::C => d.c_mn = v,
        }
    }
}

impl std::str::FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "H" => Ok(Param::H),
            "T" => Ok(Param::T),
            "K" => Ok(Param::K),
            "C" => Ok(Param::C),
            _ => Err(Error::config(format!("unknown design parameter `{s}` (expected H, T, K or C)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSweepSpec {
    /// Row parameter, then column parameter.
    pub vary: [Param; 2],
    pub grids: [Vec<f64>; 2],
    /// Values for the parameters not swept (user units).
    pub fixed: Design,
    /// Exclude over-rotating cells from the reported powers and best cell.
    pub mask: bool,
}

impl GridSweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.vary[0] == self.vary[1] {
            return Err(Error::config("swept parameters must differ"));
        }
        for g in &self.grids {
            if g.is_empty() || g.windows(2).any(|w| w[1] <= w[0]) || g.iter().any(|v| !v.is_finite()) {
                return Err(Error::config("sweep grids must be non-empty, finite and ascending"));
            }
        }
        Ok(())
    }

    pub fn design(&self, i: usize, j: usize) -> Design {
        let mut d = self.fixed;
        self.vary[0].set(&mut d, self.grids[0][i]);
        self.vary[1].set(&mut d, self.grids[1][j]);
        d
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CellOutcome {
    Feasible { power_w: f64 },
    Infeasible { power_w: f64, max_theta_deg: f64 },
    Failed { message: String },
}

impl CellOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, CellOutcome::Feasible { .. })
    }

    pub fn power(&self) -> Option<f64> {
        match *self {
            CellOutcome::Feasible { power_w } | CellOutcome::Infeasible { power_w, .. } => Some(power_w),
            CellOutcome::Failed { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestCell {
    pub row: usize,
    pub col: usize,
    pub design: Design,
    pub power_w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensitivityGrid {
    pub spec: GridSweepSpec,
    /// `cells[i][j]` for row value `grids[0][i]` and column value `grids[1][j]`.
    pub cells: Vec<Vec<CellOutcome>>,
    pub best: Option<BestCell>,
}

pub fn evaluate_cell(model: &OswecModel, d: &Design) -> CellOutcome {
    match model.assess(d) {
        Ok((r, Feasibility::Feasible)) => CellOutcome::Feasible { power_w: r.summary.mean_power_w },
        Ok((r, Feasibility::Infeasible { max_theta_deg })) => {
            CellOutcome::Infeasible { power_w: r.summary.mean_power_w, max_theta_deg }
        }
        Err(e) => CellOutcome::Failed { message: e.to_string() },
    }
}

/// Simulates every cell independently; a failing cell does not stop the sweep.
pub fn sensitivity_grid(spec: &GridSweepSpec, model: &OswecModel) -> Result<SensitivityGrid> {
    spec.validate()?;
    let (rows, cols) = (spec.grids[0].len(), spec.grids[1].len());
    let idx: Vec<(usize, usize)> = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).collect();
    let eval = |&(i, j): &(usize, usize)| evaluate_cell(model, &spec.design(i, j));
    #[cfg(feature = "parallel")]
    let flat: Vec<CellOutcome> = {
        use rayon::prelude::*;
        idx.par_iter().map(eval).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let flat: Vec<CellOutcome> = idx.iter().map(eval).collect();

    let mut best: Option<BestCell> = None;
    for (&(i, j), cell) in idx.iter().zip(&flat) {
        let eligible = if spec.mask { cell.is_feasible() } else { cell.power().is_some() };
        let Some(p) = cell.power().filter(|_| eligible) else { continue };
        if best.as_ref().is_none_or(|b| p > b.power_w) {
            best = Some(BestCell { row: i, col: j, design: spec.design(i, j), power_w: p });
        }
    }
    let mut it = flat.into_iter();
    let cells = (0..rows).map(|_| it.by_ref().take(cols).collect()).collect();
    Ok(SensitivityGrid { spec: spec.clone(), cells, best })
}

/// Mean power over an (H, T) grid at fixed PTO settings (MN units).
pub fn power_matrix(model: &OswecModel, h_grid: &[f64], t_grid: &[f64], k_mn: f64, c_mn: f64) -> Result<SensitivityGrid> {
    let spec = GridSweepSpec {
        vary: [Param::H, Param::T],
        grids: [h_grid.to_vec(), t_grid.to_vec()],
        fixed: Design { h: h_grid.first().copied().unwrap_or(0.0), t: t_grid.first().copied().unwrap_or(1.0), k_mn, c_mn },
        mask: true,
    };
    sensitivity_grid(&spec, model)
}

impl SensitivityGrid {
    /// Reported power of a cell: `None` for failed cells, and for
    /// over-rotating cells when masking is on.
    pub fn reported(&self, i: usize, j: usize) -> Option<f64> {
        let c = &self.cells[i][j];
        if self.spec.mask && !c.is_feasible() {
            None
        } else {
            c.power()
        }
    }

    /// First row: column grid; first column: row grid; `NA` where no power
    /// is reported.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        self.write_layout(out, |i, j| self.reported(i, j).map_or("NA".to_string(), |p| p.to_string()))
    }

    /// Same layout with 1 for feasible cells and 0 otherwise.
    pub fn write_mask_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        self.write_layout(out, |i, j| if self.cells[i][j].is_feasible() { "1" } else { "0" }.to_string())
    }

    fn write_layout<W: std::io::Write>(&self, out: W, cell: impl Fn(usize, usize) -> String) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let corner = format!("{}\\{}", self.spec.vary[0].name(), self.spec.vary[1].name());
        w.write_record(std::iter::once(corner).chain(self.spec.grids[1].iter().map(|v| v.to_string())))?;
        for (i, r) in self.spec.grids[0].iter().enumerate() {
            w.write_record(std::iter::once(r.to_string()).chain((0..self.spec.grids[1].len()).map(|j| cell(i, j))))?;
        }
        w.flush()?;
        Ok(())
    }
}
