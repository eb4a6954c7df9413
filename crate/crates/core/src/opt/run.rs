use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gwo::{self, Algorithm, LeaderSet, VariantKind, VariantSpec};
use crate::hill_climb::{self, HcConfig};
use crate::opt::objective::{Agent, Evaluator, Objective};
use crate::opt::rng::{UnitSource, WolfRng};
use crate::opt::space::SearchSpace;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub population: usize,
    pub max_iter: usize,
    pub seed: u64,
    pub variant: VariantSpec,
    /// Hill-climbing hybrid; only meaningful for EGWO.
    pub hybrid: Option<HcConfig>,
}

impl RunConfig {
    pub fn new(algorithm: Algorithm, population: usize, max_iter: usize, seed: u64) -> Self {
        Self {
            population,
            max_iter,
            seed,
            variant: algorithm.spec(),
            hybrid: algorithm.is_hybrid().then(HcConfig::default),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.population < 1 {
            return Err(Error::config("population must be at least 1"));
        }
        if self.max_iter < 2 {
            return Err(Error::config("max_iter must be at least 2"));
        }
        self.variant.validate()?;
        if let Some(hc) = &self.hybrid {
            hc.validate()?;
        }
        Ok(())
    }

    /// Algorithm name as used on the command line.
    pub fn label(&self) -> &'static str {
        match (self.variant.kind, self.hybrid.is_some()) {
            (VariantKind::Egwo, true) => Algorithm::HcEgwo.name(),
            (VariantKind::Egwo, false) => Algorithm::Egwo.name(),
            (VariantKind::Standard, _) => Algorithm::Gwo.name(),
            (VariantKind::Mgwo, _) => Algorithm::Mgwo.name(),
            (VariantKind::Eegwo, _) => Algorithm::Eegwo.name(),
            (VariantKind::Igwo, _) => Algorithm::Igwo.name(),
            (VariantKind::Ergwo, _) => Algorithm::Ergwo.name(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub variant: String,
    pub seed: u64,
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
    /// Best-so-far fitness after each iteration.
    pub convergence: Vec<f64>,
    #[serde(rename = "evaluations")]
    pub evaluation_count: usize,
    pub hc_invocations: usize,
}

/// `n` unevaluated agents drawn uniformly from `space`, agent by agent.
pub fn initialize_population<R: UnitSource>(space: &SearchSpace, n: usize, rng: &mut R) -> Vec<Agent> {
    (0..n).map(|_| Agent::new(space.sample(rng))).collect()
}

/// Runs the configured variant for `max_iter` iterations.
///
/// With a hill-climbing configuration, after every iteration past the warmup
/// the mean best-fitness change over the last `window` iterations is checked;
/// when its magnitude falls below the threshold, hill climbing starts from the
/// global best and replaces it only on strict improvement. A start point whose
/// previous climb found nothing is not climbed again, since the climb is
/// deterministic and would repeat the same probes.
pub fn run(objective: &dyn Objective, space: &SearchSpace, config: &RunConfig) -> Result<RunResult> {
    config.validate()?;
    let direction = objective.direction();
    let mut rng = WolfRng::new(config.seed);
    let mut eval = Evaluator::new(objective, space);

    let mut population = initialize_population(space, config.population, &mut rng);
    for agent in &mut population {
        agent.fitness = Some(eval.evaluate(&agent.position));
    }
    let mut leaders = LeaderSet::select(&population, direction);

    let mut history = Vec::with_capacity(config.max_iter + 1);
    history.push(leaders.alpha.fit());
    let mut convergence = Vec::with_capacity(config.max_iter);
    let mut hc_invocations = 0;
    let mut exhausted_start: Option<Vec<f64>> = None;

    for t in 1..=config.max_iter {
        gwo::step(&config.variant, &mut population, &mut leaders, t, config.max_iter, &mut rng, &mut eval)?;
        history.push(leaders.alpha.fit());

        if let Some(hc) = &config.hybrid {
            let stalled = hc.past_warmup(t, config.max_iter)
                && hill_climb::stagnation_delta(&history, hc.window).is_some_and(|d| d.abs() < hc.threshold);
            if stalled && exhausted_start.as_deref() != Some(leaders.alpha.position.as_slice()) {
                hc_invocations += 1;
                let local = hill_climb::hill_climb(&leaders.alpha, hc, &mut eval);
                if direction.is_better(local.fit(), leaders.alpha.fit()) {
                    leaders.promote(local);
                    *history.last_mut().expect("history is never empty") = leaders.alpha.fit();
                    exhausted_start = None;
                } else {
                    exhausted_start = Some(leaders.alpha.position.clone());
                }
            }
        }
        convergence.push(leaders.alpha.fit());
    }

    Ok(RunResult {
        variant: config.label().to_string(),
        seed: config.seed,
        best_position: leaders.alpha.position.clone(),
        best_fitness: leaders.alpha.fit(),
        convergence,
        evaluation_count: eval.evaluations(),
        hc_invocations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opt::objective::FnObjective;

    fn sphere(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    #[test]
    fn initial_population_in_bounds_and_unevaluated() {
        let space = SearchSpace::uniform(2, 0.0, 1.0).unwrap();
        let pop = initialize_population(&space, 3, &mut WolfRng::new(5));
        assert_eq!(pop.len(), 3);
        assert!(pop.iter().all(|a| space.contains(&a.position) && a.fitness.is_none()));
        let again = initialize_population(&space, 3, &mut WolfRng::new(5));
        assert_eq!(pop, again);
    }

    #[test]
    fn tiny_run() {
        let space = SearchSpace::uniform(2, -1.0, 1.0).unwrap();
        let obj = FnObjective::minimize(sphere);
        let res = run(&obj, &space, &RunConfig::new(Algorithm::Gwo, 2, 2, 1)).unwrap();
        assert_eq!(res.convergence.len(), 2);
        assert!(res.convergence[1] <= res.convergence[0]);
        assert_eq!(res.best_fitness, *res.convergence.last().unwrap());
        assert_eq!(res.evaluation_count, 2 + 2 * 2);
    }

    #[test]
    fn invalid_configs_rejected() {
        let space = SearchSpace::uniform(1, -1.0, 1.0).unwrap();
        let obj = FnObjective::minimize(sphere);
        assert!(run(&obj, &space, &RunConfig::new(Algorithm::Gwo, 0, 10, 1)).is_err());
        assert!(run(&obj, &space, &RunConfig::new(Algorithm::Gwo, 5, 1, 1)).is_err());
    }

    #[test]
    fn hybrid_label() {
        assert_eq!(RunConfig::new(Algorithm::HcEgwo, 5, 5, 0).label(), "hc-egwo");
        assert_eq!(RunConfig::new(Algorithm::Egwo, 5, 5, 0).label(), "egwo");
    }

    #[test]
    fn result_json_shape() {
        let space = SearchSpace::uniform(2, -1.0, 1.0).unwrap();
        let obj = FnObjective::minimize(sphere);
        let res = run(&obj, &space, &RunConfig::new(Algorithm::Mgwo, 4, 3, 9)).unwrap();
        let v: serde_json::Value = serde_json::to_value(&res).unwrap();
        for key in ["variant", "seed", "best_position", "best_fitness", "convergence", "evaluations", "hc_invocations"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["variant"], "mgwo");
    }
}
