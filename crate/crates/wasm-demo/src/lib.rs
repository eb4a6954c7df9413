//! WebAssembly bindings for the static demo page in `www/`. Every export
//! returns a JSON string; errors surface as thrown JS strings.

use serde::Serialize;
use wasm_bindgen::prelude::*;
use wolfpack::benchmarks::BenchId;
use wolfpack::gwo::Algorithm;
use wolfpack::opt::{run, RunConfig};
use wolfpack::oswec::{Design, OswecModel};

#[derive(Serialize)]
struct Curve {
    name: &'static str,
    a: Vec<f64>,
    exploration_ratio: f64,
}

/// Control parameter a(t), t = 1..=max_iter, for every compared algorithm.
pub fn schedule_curves_json(max_iter: usize) -> Result<String, String> {
    let curves = Algorithm::COMPARED
        .iter()
        .map(|&algo| {
            let spec = algo.spec();
            Ok(Curve {
                name: algo.name(),
                a: spec.schedule_curve(max_iter).map_err(|e| e.to_string())?,
                exploration_ratio: spec.exploration_ratio(max_iter).map_err(|e| e.to_string())?,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    serde_json::to_string(&curves).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct SimView {
    t: Vec<f64>,
    theta_deg: Vec<f64>,
    power_w: Vec<f64>,
    mean_power_w: f64,
    max_theta_deg: f64,
    feasible: bool,
}

/// Regular-wave simulation of the synthetic flap, sampled every `stride` steps.
pub fn simulate_json(h: f64, t: f64, k_mn: f64, c_mn: f64, stride: usize) -> Result<String, String> {
    let model = OswecModel::synthetic();
    let (r, feas) = model.assess(&Design { h, t, k_mn, c_mn }).map_err(|e| e.to_string())?;
    let stride = stride.max(1);
    let pick = |v: &[f64], f: fn(f64) -> f64| v.iter().step_by(stride).map(|&x| f(x)).collect::<Vec<_>>();
    let view = SimView {
        t: pick(&r.time, |x| x),
        theta_deg: pick(&r.theta, f64::to_degrees),
        power_w: pick(&r.power, |x| x),
        mean_power_w: r.summary.mean_power_w,
        max_theta_deg: r.summary.max_theta_deg,
        feasible: feas.is_feasible(),
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct RunView {
    convergence: Vec<f64>,
    best_fitness: f64,
    best_position: Vec<f64>,
    evaluations: usize,
}

/// One seeded optimizer run on a benchmark function.
pub fn optimize_json(function: &str, algorithm: &str, agents: usize, iterations: usize, seed: u64) -> Result<String, String> {
    let id: BenchId = function.parse().map_err(|e: wolfpack::Error| e.to_string())?;
    let algo: Algorithm = algorithm.parse().map_err(|e: wolfpack::Error| e.to_string())?;
    let bench = id.info();
    let res = run(bench, &bench.space(), &RunConfig::new(algo, agents, iterations, seed)).map_err(|e| e.to_string())?;
    let view = RunView {
        convergence: res.convergence,
        best_fitness: res.best_fitness,
        best_position: res.best_position,
        evaluations: res.evaluation_count,
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn schedule_curves(max_iter: usize) -> Result<String, JsValue> {
    schedule_curves_json(max_iter).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn simulate(h: f64, t: f64, k_mn: f64, c_mn: f64, stride: usize) -> Result<String, JsValue> {
    simulate_json(h, t, k_mn, c_mn, stride).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn optimize(function: &str, algorithm: &str, agents: usize, iterations: usize, seed: u64) -> Result<String, JsValue> {
    optimize_json(function, algorithm, agents, iterations, seed).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn curves_cover_all_variants() {
        let v: Value = serde_json::from_str(&schedule_curves_json(100).unwrap()).unwrap();
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), 6);
        for c in arr {
            assert_eq!(c["a"].as_array().unwrap().len(), 100);
            let er = c["exploration_ratio"].as_f64().unwrap();
            assert!((0.0..=1.0).contains(&er));
        }
        assert!(schedule_curves_json(1).is_err());
    }

    #[test]
    fn simulation_view() {
        let v: Value = serde_json::from_str(&simulate_json(4.223, 7.39, 54.46, 75.58, 10).unwrap()).unwrap();
        assert_eq!(v["t"].as_array().unwrap().len(), 401);
        assert_eq!(v["feasible"], true);
        assert!(v["mean_power_w"].as_f64().unwrap() > 0.0);
        assert!(simulate_json(1.0, 1.0, 0.0, 1.0, 1).is_err());
    }

    #[test]
    fn optimizer_view() {
        let v: Value = serde_json::from_str(&optimize_json("F9", "hc-egwo", 10, 40, 3).unwrap()).unwrap();
        assert_eq!(v["convergence"].as_array().unwrap().len(), 40);
        assert!(v["best_fitness"].as_f64().unwrap() < -1.0);
        assert!(optimize_json("F0", "gwo", 5, 10, 0).is_err());
        assert!(optimize_json("F9", "pso", 5, 10, 0).is_err());
    }
}
