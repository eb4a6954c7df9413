//! Deterministic synthetic wave climate for 105 offshore points grouped
//! around nine ports of the southern Caspian coast.

use super::records::{Observation, SiteRecord};
use crate::opt::{UnitSource, WolfRng};

/// (port, lat, lon, mean Hs, mean Tp, points)
pub const PORTS: [(&str, f64, f64, f64, f64, usize); 9] = [
    ("Astara", 38.43, 48.87, 1.10, 5.2, 12),
    ("Anzali", 37.47, 49.46, 1.45, 5.9, 12),
    ("Kiashahr", 37.42, 49.94, 1.60, 6.2, 12),
    ("Nowshahr", 36.65, 51.50, 1.35, 5.8, 12),
    ("Fereydunkenar", 36.68, 52.52, 1.25, 5.6, 12),
    ("Babolsar", 36.70, 52.65, 1.30, 5.7, 12),
    ("Amirabad", 36.85, 53.37, 1.05, 5.1, 11),
    ("Bandar Torkaman", 36.90, 54.07, 0.90, 4.7, 11),
    ("Chalus", 36.65, 51.42, 1.40, 5.9, 11),
];

pub const OBSERVATIONS_PER_POINT: usize = 24;
pub const SEED: u64 = 2024;

pub fn synthetic_sites() -> Vec<SiteRecord> {
    let mut rng = WolfRng::new(SEED);
    let mut out = Vec::new();
    let mut id = 0;
    for &(port, lat, lon, hs_mean, tp_mean, points) in &PORTS {
        for _ in 0..points {
            id += 1;
            // offshore distance in [0, 1] raises both Hs and Tp
            let reach = rng.unit();
            let lat_p = lat + 0.25 * reach + 0.04 * (rng.unit() - 0.5);
            let lon_p = lon + 0.30 * (rng.unit() - 0.5);
            let hs_p = hs_mean * (0.8 + 0.5 * reach);
            let tp_p = tp_mean * (0.9 + 0.25 * reach);
            let records = (0..OBSERVATIONS_PER_POINT)
                .map(|_| {
                    let storm = rng.unit();
                    let hs = hs_p * (0.35 + 1.6 * storm * storm + 0.2 * rng.unit());
                    let tp = tp_p * (0.75 + 0.5 * storm + 0.1 * rng.unit());
                    Observation { hs: round(hs, 2), tp: round(tp, 2) }
                })
                .collect();
            out.push(SiteRecord {
                point_id: format!("P{id:03}"),
                port: port.to_string(),
                lat: round(lat_p, 4),
                lon: round(lon_p, 4),
                records,
            });
        }
    }
    out
}

fn round(x: f64, digits: i32) -> f64 {
    let s = 10f64.powi(digits);
    (x * s).round() / s
}
