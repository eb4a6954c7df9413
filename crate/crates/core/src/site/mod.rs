//! Site ranking against a target sea state, and design-space sweeps.

pub mod fixture;
pub mod records;
pub mod sweep;

pub use fixture::synthetic_sites;
pub use records::{
    load_sites, rank_sites, rank_sites_scaled, read_sites, site_rmse, site_rmse_scaled, write_ranked_csv, write_sites,
    Observation, RankedSite, Scaling, SiteRecord,
};
pub use sweep::{evaluate_cell, power_matrix, sensitivity_grid, BestCell, CellOutcome, GridSweepSpec, Param, SensitivityGrid};
