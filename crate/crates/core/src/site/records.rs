//! Candidate sites, wave-climate ingestion and RMSE ranking.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SITES_HEADER: [&str; 6] = ["point_id", "port", "lat_deg", "lon_deg", "hs_m", "tp_s"];
pub const RANKED_HEADER: [&str; 5] = ["point_id", "port", "lat", "lon", "rmse"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub hs: f64,
    pub tp: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SiteRecord {
    pub point_id: String,
    pub port: String,
    pub lat: f64,
    pub lon: f64,
    /// Non-empty; every Hs and Tp positive.
    pub records: Vec<Observation>,
}

impl SiteRecord {
    pub fn validate(&self) -> Result<()> {
        if self.records.is_empty() {
            return Err(Error::config(format!("site {} has no observations", self.point_id)));
        }
        if self.records.iter().any(|o| !(o.hs > 0.0 && o.tp > 0.0 && o.hs.is_finite() && o.tp.is_finite())) {
            return Err(Error::config(format!("site {} has non-positive Hs or Tp", self.point_id)));
        }
        Ok(())
    }
}

/// Reads one observation per row and groups rows by `point_id` in order
/// of first appearance.
pub fn load_sites(path: &Path) -> Result<Vec<SiteRecord>> {
    let file = std::fs::File::open(path).map_err(|e| Error::Data { path: path.to_path_buf(), message: e.to_string() })?;
    read_sites(file).map_err(|e| match e {
        Error::Rows(rows) => Error::Data { path: path.to_path_buf(), message: rows.join("; ") },
        other => other,
    })
}

pub fn read_sites<R: std::io::Read>(input: R) -> Result<Vec<SiteRecord>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).flexible(true).from_reader(input);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header.len() == 1 && header[0].is_empty() {
        return Err(Error::Rows(vec!["line 1: file is empty".into()]));
    }
    if header != SITES_HEADER {
        return Err(Error::Rows(vec![format!(
            "line 1: expected header `{}`, found `{}`",
            SITES_HEADER.join(","),
            header.join(",")
        )]));
    }
    let mut sites: Vec<SiteRecord> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut bad = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = match rec {
            Ok(r) => r,
            Err(e) => {
                bad.push(format!("line {line}: {e}"));
                continue;
            }
        };
        if rec.len() != 6 {
            bad.push(format!("line {line}: expected 6 fields, found {}", rec.len()));
            continue;
        }
        let num = |j: usize| rec[j].parse::<f64>().ok().filter(|v| v.is_finite());
        let (Some(lat), Some(lon), Some(hs), Some(tp)) = (num(2), num(3), num(4), num(5)) else {
            bad.push(format!("line {line}: non-numeric lat/lon/hs/tp"));
            continue;
        };
        if hs <= 0.0 || tp <= 0.0 {
            bad.push(format!("line {line}: hs and tp must be positive"));
            continue;
        }
        let id = rec[0].to_string();
        if id.is_empty() {
            bad.push(format!("line {line}: empty point_id"));
            continue;
        }
        match index.get(&id) {
            Some(&k) => {
                let s = &mut sites[k];
                if s.port != rec[1] || s.lat != lat || s.lon != lon {
                    bad.push(format!("line {line}: point {id} changes port or position"));
                    continue;
                }
                s.records.push(Observation { hs, tp });
            }
            None => {
                index.insert(id.clone(), sites.len());
                sites.push(SiteRecord { point_id: id, port: rec[1].to_string(), lat, lon, records: vec![Observation { hs, tp }] });
            }
        }
    }
    if !bad.is_empty() {
        return Err(Error::Rows(bad));
    }
    if sites.is_empty() {
        return Err(Error::Rows(vec!["no data rows".into()]));
    }
    Ok(sites)
}

pub fn write_sites<W: std::io::Write>(sites: &[SiteRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SITES_HEADER)?;
    for s in sites {
        for o in &s.records {
            w.write_record([
                s.point_id.clone(),
                s.port.clone(),
                format!("{:.4}", s.lat),
                format!("{:.4}", s.lon),
                format!("{:.2}", o.hs),
                format!("{:.2}", o.tp),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// How deviations from the target are measured.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scaling {
    /// Metres and seconds compared directly.
    #[default]
    Raw,
    /// Each deviation divided by its target value.
    Relative,
}

/// sqrt( Σ[(Hs−H*)² + (Tp−T*)²] / 2N ) over the record's N observations.
pub fn site_rmse(record: &SiteRecord, h_star: f64, t_star: f64) -> f64 {
    site_rmse_scaled(record, h_star, t_star, Scaling::Raw)
}

pub fn site_rmse_scaled(record: &SiteRecord, h_star: f64, t_star: f64, scaling: Scaling) -> f64 {
    let (sh, st) = match scaling {
        Scaling::Raw => (1.0, 1.0),
        Scaling::Relative => (h_star, t_star),
    };
    let n = record.records.len() as f64;
    let sum: f64 = record
        .records
        .iter()
        .map(|o| ((o.hs - h_star) / sh).powi(2) + ((o.tp - t_star) / st).powi(2))
        .sum();
    (sum / (2.0 * n)).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedSite {
    pub point_id: String,
    pub port: String,
    pub lat: f64,
    pub lon: f64,
    pub rmse: f64,
}

/// Ascending RMSE; ties ordered by `point_id`.
pub fn rank_sites(records: &[SiteRecord], h_star: f64, t_star: f64) -> Vec<RankedSite> {
    rank_sites_scaled(records, h_star, t_star, Scaling::Raw)
}

pub fn rank_sites_scaled(records: &[SiteRecord], h_star: f64, t_star: f64, scaling: Scaling) -> Vec<RankedSite> {
    let mut out: Vec<RankedSite> = records
        .iter()
        .map(|r| RankedSite {
            point_id: r.point_id.clone(),
            port: r.port.clone(),
            lat: r.lat,
            lon: r.lon,
            rmse: site_rmse_scaled(r, h_star, t_star, scaling),
        })
        .collect();
    out.sort_by(|a, b| a.rmse.total_cmp(&b.rmse).then_with(|| a.point_id.cmp(&b.point_id)));
    out
}

pub fn write_ranked_csv<W: std::io::Write>(ranked: &[RankedSite], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RANKED_HEADER)?;
    for r in ranked {
        w.write_record([r.point_id.clone(), r.port.clone(), r.lat.to_string(), r.lon.to_string(), r.rmse.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn site(id: &str, obs: &[(f64, f64)]) -> SiteRecord {
        SiteRecord {
            point_id: id.into(),
            port: "Port".into(),
            lat: 37.0,
            lon: 50.0,
            records: obs.iter().map(|&(hs, tp)| Observation { hs, tp }).collect(),
        }
    }

    #[test]
    fn rmse_examples() {
        assert_eq!(site_rmse(&site("a", &[(4.0, 7.0), (4.0, 7.0)]), 4.0, 7.0), 0.0);
        let r = site_rmse(&site("a", &[(5.223, 7.39)]), 4.223, 7.39);
        assert!((r - 0.5f64.sqrt()).abs() < 1e-12);
        let rel = site_rmse_scaled(&site("a", &[(4.0, 10.0)]), 2.0, 5.0, Scaling::Relative);
        assert!((rel - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ties_break_by_point_id() {
        let a = site("P2", &[(1.0, 5.0)]);
        let b = site("P1", &[(1.0, 5.0)]);
        let ranked = rank_sites(&[a, b], 2.0, 6.0);
        assert_eq!(ranked[0].point_id, "P1");
        assert_eq!(ranked[1].point_id, "P2");
    }

    #[test]
    fn grouping_and_errors() {
        let ok = "point_id,port,lat_deg,lon_deg,hs_m,tp_s\nA,Astara,38.4,48.9,1.0,5.0\nA,Astara,38.4,48.9,1.2,5.5\nB,Anzali,37.5,49.5,0.8,4.0\n";
        let s = read_sites(ok.as_bytes()).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].records.len(), 2);
        assert!(read_sites("".as_bytes()).is_err());
        assert!(read_sites("point_id,port,lat_deg,lon_deg,hs_m,tp_s\n".as_bytes()).is_err());
        let bad = "point_id,port,lat_deg,lon_deg,hs_m,tp_s\nA,x,1,2,abc,5\nA,x,1,2,1,5\nB,y,1,2,-1,5\n";
        match read_sites(bad.as_bytes()) {
            Err(Error::Rows(rows)) => {
                assert_eq!(rows.len(), 2);
                assert!(rows[0].starts_with("line 2"));
                assert!(rows[1].starts_with("line 4"));
            }
            other => panic!("{other:?}"),
        }
        assert!(read_sites("id,port\nA,b\n".as_bytes()).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let s = vec![site("P1", &[(1.25, 5.5), (0.75, 4.25)]), site("P2", &[(2.0, 7.0)])];
        let mut buf = Vec::new();
        write_sites(&s, &mut buf).unwrap();
        assert_eq!(read_sites(buf.as_slice()).unwrap(), s);
    }

    fn arb_sites() -> impl Strategy<Value = Vec<SiteRecord>> {
        proptest::collection::vec(proptest::collection::vec((0.1f64..4.0, 2.0f64..12.0), 1..6), 1..12).prop_map(|all| {
            all.iter().enumerate().map(|(i, obs)| site(&format!("P{i:03}"), obs)).collect()
        })
    }

    proptest! {
        #[test]
        fn ranking_is_sorted_permutation(sites in arb_sites(), h in 0.5f64..5.0, t in 2.0f64..12.0) {
            let ranked = rank_sites(&sites, h, t);
            prop_assert_eq!(ranked.len(), sites.len());
            prop_assert!(ranked.windows(2).all(|w| w[0].rmse <= w[1].rmse));
            let mut ids: Vec<_> = ranked.iter().map(|r| r.point_id.clone()).collect();
            ids.sort();
            let mut want: Vec<_> = sites.iter().map(|s| s.point_id.clone()).collect();
            want.sort();
            prop_assert_eq!(ids, want);
            let best = sites.iter().map(|s| site_rmse(s, h, t)).fold(f64::INFINITY, f64::min);
            prop_assert_eq!(ranked[0].rmse, best);
        }

        #[test]
        fn rmse_ignores_observation_order(obs in proptest::collection::vec((0.1f64..4.0, 2.0f64..12.0), 1..10), h in 0.5f64..5.0, t in 2.0f64..12.0) {
            let a = site("A", &obs);
            let mut rev = obs.clone();
            rev.reverse();
            let b = site("A", &rev);
            prop_assert!((site_rmse(&a, h, t) - site_rmse(&b, h, t)).abs() <= 1e-12 * site_rmse(&a, h, t).max(1.0));
        }
    }
}
