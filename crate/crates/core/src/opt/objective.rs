use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::opt::space::SearchSpace;

/// Fitness assigned to infeasible candidates (sign follows the direction).
pub const PENALTY: f64 = 1e30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Minimize,
    Maximize,
}

impl Direction {
    /// Worst possible fitness, used for infeasible candidates.
    pub fn penalty(self) -> f64 {
        match self {
            Direction::Minimize => PENALTY,
            Direction::Maximize => -PENALTY,
        }
    }

    /// Strict improvement of `a` over `b`.
    pub fn is_better(self, a: f64, b: f64) -> bool {
        match self {
            Direction::Minimize => a < b,
            Direction::Maximize => a > b,
        }
    }

    /// Ordering that sorts better fitness first.
    pub fn cmp(self, a: f64, b: f64) -> Ordering {
        match self {
            Direction::Minimize => a.total_cmp(&b),
            Direction::Maximize => b.total_cmp(&a),
        }
    }
}

/// Outcome of a single objective evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum Evaluation {
    Value(f64),
    Infeasible(String),
}

/// A black-box objective over a box-constrained space.
///
/// Implementations must be deterministic and reentrant: concurrent runs may
/// share one objective.
pub trait Objective: Sync {
    fn direction(&self) -> Direction;
    fn evaluate(&self, x: &[f64]) -> Evaluation;
}

/// Wraps a plain function as an unconstrained objective.
pub struct FnObjective<F> {
    f: F,
    direction: Direction,
}

impl<F> FnObjective<F>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    pub fn minimize(f: F) -> Self {
        Self { f, direction: Direction::Minimize }
    }

    pub fn maximize(f: F) -> Self {
        Self { f, direction: Direction::Maximize }
    }
}

impl<F> Objective for FnObjective<F>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    fn direction(&self) -> Direction {
        self.direction
    }

    fn evaluate(&self, x: &[f64]) -> Evaluation {
        Evaluation::Value((self.f)(x))
    }
}

/// Candidate solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Agent {
    pub position: Vec<f64>,
    /// `None` until evaluated.
    pub fitness: Option<f64>,
}

impl Agent {
    pub fn new(position: Vec<f64>) -> Self {
        Self { position, fitness: None }
    }

    pub fn evaluated(position: Vec<f64>, fitness: f64) -> Self {
        Self { position, fitness: Some(fitness) }
    }

    /// Fitness, or `NaN` when unevaluated.
    pub fn fit(&self) -> f64 {
        self.fitness.unwrap_or(f64::NAN)
    }
}

/// Counts evaluations and applies the death penalty.
pub struct Evaluator<'a> {
    objective: &'a dyn Objective,
    space: &'a SearchSpace,
    evaluations: usize,
    infeasible: usize,
    last_diagnostic: Option<String>,
}

impl<'a> Evaluator<'a> {
    pub fn new(objective: &'a dyn Objective, space: &'a SearchSpace) -> Self {
        Self { objective, space, evaluations: 0, infeasible: 0, last_diagnostic: None }
    }

    pub fn direction(&self) -> Direction {
        self.objective.direction()
    }

    pub fn space(&self) -> &SearchSpace {
        self.space
    }

    /// Evaluates an in-bounds position; infeasible or NaN results map to the penalty.
    pub fn evaluate(&mut self, x: &[f64]) -> f64 {
        assert!(self.space.contains(x), "evaluated position {x:?} lies outside the search space");
        self.evaluations += 1;
        let penalty = self.direction().penalty();
        match self.objective.evaluate(x) {
            Evaluation::Value(v) if v.is_nan() => {
                self.infeasible += 1;
                self.last_diagnostic = Some(format!("objective returned NaN at {x:?}"));
                penalty
            }
            // Never let a feasible value tie or beat the penalty.
            Evaluation::Value(v) => match self.direction() {
                Direction::Minimize => v.min(PENALTY * (1.0 - f64::EPSILON)),
                Direction::Maximize => v.max(-PENALTY * (1.0 - f64::EPSILON)),
            },
            Evaluation::Infeasible(why) => {
                self.infeasible += 1;
                self.last_diagnostic = Some(why);
                penalty
            }
        }
    }

    pub fn evaluations(&self) -> usize {
        self.evaluations
    }

    pub fn infeasible(&self) -> usize {
        self.infeasible
    }

    pub fn last_diagnostic(&self) -> Option<&str> {
        self.last_diagnostic.as_deref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    #[test]
    fn sphere_at_origin_is_zero() {
        let space = SearchSpace::uniform(3, -1.0, 1.0).unwrap();
        let obj = FnObjective::minimize(sphere);
        let mut eval = Evaluator::new(&obj, &space);
        assert_eq!(eval.evaluate(&[0.0; 3]), 0.0);
        assert_eq!(eval.evaluations(), 1);
    }

    struct Gate;
    impl Objective for Gate {
        fn direction(&self) -> Direction {
            Direction::Minimize
        }
        fn evaluate(&self, x: &[f64]) -> Evaluation {
            if x[0] > 0.5 {
                Evaluation::Infeasible("x0 above 0.5".into())
            } else if x[0] < -0.5 {
                Evaluation::Value(f64::NAN)
            } else {
                Evaluation::Value(x[0])
            }
        }
    }

    #[test]
    fn infeasible_and_nan_get_penalty() {
        let space = SearchSpace::uniform(1, -1.0, 1.0).unwrap();
        let mut eval = Evaluator::new(&Gate, &space);
        assert_eq!(eval.evaluate(&[0.9]), 1e30);
        assert_eq!(eval.last_diagnostic(), Some("x0 above 0.5"));
        assert_eq!(eval.evaluate(&[-0.9]), 1e30);
        assert!(eval.last_diagnostic().unwrap().contains("NaN"));
        assert_eq!(eval.infeasible(), 2);
        assert_eq!(eval.evaluate(&[0.1]), 0.1);
        assert_eq!(eval.evaluations(), 3);
    }

    #[test]
    fn penalty_dominated_by_any_feasible_value() {
        for dir in [Direction::Minimize, Direction::Maximize] {
            let space = SearchSpace::uniform(1, -1.0, 1.0).unwrap();
            let huge = FnObjective { f: |_: &[f64]| 1e300, direction: dir };
            let tiny = FnObjective { f: |_: &[f64]| -1e300, direction: dir };
            for obj in [&huge as &dyn Objective, &tiny] {
                let v = Evaluator::new(obj, &space).evaluate(&[0.0]);
                assert!(dir.is_better(v, dir.penalty()));
            }
        }
    }

    #[test]
    #[should_panic(expected = "outside the search space")]
    fn out_of_bounds_evaluation_panics() {
        let space = SearchSpace::uniform(1, 0.0, 1.0).unwrap();
        let obj = FnObjective::minimize(sphere);
        Evaluator::new(&obj, &space).evaluate(&[2.0]);
    }
}
