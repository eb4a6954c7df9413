//! Hill-climbing local search and the stagnation trigger that turns EGWO
//! into HC-EGWO.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gwo::VariantKind;
use crate::opt::objective::{Agent, Evaluator, Objective};
use crate::opt::run::{run, RunConfig, RunResult};
use crate::opt::space::SearchSpace;

/// How the initial neighbourhood step is derived from the bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepBase {
    /// `(upper - lower) / g`
    Range,
    /// `(lower + upper) / g`, as printed in the original pseudocode.
    Sum,
}

/// What is added back after each linear step reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepDecay {
    /// `S - (t/T) S + 1`, in the variable's raw units.
    Literal,
    /// `S - (t/T) S + S0 / g`, which scales with the variable's range.
    Quantum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HcConfig {
    /// Search resolution `g`.
    pub g: usize,
    /// Stagnation window `M`.
    pub window: usize,
    /// Stagnation threshold on `|mean improvement|`.
    pub threshold: f64,
    /// Local iterations per hill-climbing invocation.
    pub max_iters: usize,
    /// Fraction of global iterations during which hill climbing stays off.
    pub warmup: f64,
    pub step_base: StepBase,
    pub step_decay: StepDecay,
}

impl Default for HcConfig {
    fn default() -> Self {
        Self {
            g: 100,
            window: 10,
            threshold: 1e-6,
            max_iters: 50,
            warmup: 0.1,
            step_base: StepBase::Range,
            step_decay: StepDecay::Literal,
        }
    }
}

impl HcConfig {
    pub fn validate(&self) -> Result<()> {
        if self.g < 2 {
            return Err(Error::config("hc.g must be at least 2"));
        }
        if self.window < 1 || self.max_iters < 1 {
            return Err(Error::config("hc.window and hc.max_iters must be positive"));
        }
        if !(self.threshold >= 0.0) {
            return Err(Error::config("hc.threshold must be non-negative"));
        }
        if !(0.0..=1.0).contains(&self.warmup) {
            return Err(Error::config("hc.warmup must lie in [0, 1]"));
        }
        Ok(())
    }

    /// Whether hill climbing may run after global iteration `t` of `max_iter`.
    pub fn past_warmup(&self, t: usize, max_iter: usize) -> bool {
        t as f64 > self.warmup * max_iter as f64
    }
}

/// Mean of the last `window` successive differences of `history`, or `None`
/// while fewer than `window + 1` entries exist.
pub fn stagnation_delta(history: &[f64], window: usize) -> Option<f64> {
    if window == 0 || history.len() < window + 1 {
        return None;
    }
    let tail = &history[history.len() - window - 1..];
    let sum: f64 = tail.windows(2).map(|w| w[1] - w[0]).sum();
    Some(sum / window as f64)
}

pub fn initial_step(space: &SearchSpace, g: usize, base: StepBase) -> Vec<f64> {
    (0..space.dim())
        .map(|d| match base {
            StepBase::Range => space.width(d) / g as f64,
            StepBase::Sum => (space.lower()[d] + space.upper()[d]) / g as f64,
        })
        .collect()
}

/// Linear step reduction `S - (t/T) S + 1`.
pub fn decay_step(step: &[f64], t: usize, max_iter: usize) -> Vec<f64> {
    decay_with(step, t, max_iter, |_| 1.0)
}

fn decay_with(step: &[f64], t: usize, max_iter: usize, floor: impl Fn(usize) -> f64) -> Vec<f64> {
    let frac = t as f64 / max_iter as f64;
    step.iter().enumerate().map(|(d, s)| s - frac * s + floor(d)).collect()
}

/// Probes `sol +- step[d]` along every axis and returns the best of the
/// probes and `sol` itself. Probes that clamp back onto `sol` are skipped;
/// ties keep `sol`.
pub fn neighborhood_search(sol: &[f64], fitness: f64, step: &[f64], eval: &mut Evaluator<'_>) -> (Vec<f64>, f64) {
    let direction = eval.direction();
    let space = eval.space().clone();
    let mut best = (sol.to_vec(), fitness);
    for d in 0..sol.len() {
        for sign in [1.0, -1.0] {
            let mut probe = sol.to_vec();
            probe[d] += sign * step[d];
            space.clamp_in_place(&mut probe);
            if probe[d] == sol[d] {
                continue;
            }
            let f = eval.evaluate(&probe);
            if direction.is_better(f, best.1) {
                best = (probe, f);
            }
        }
    }
    best
}

/// Greedy local search from `start`, shrinking the step after every move.
pub fn hill_climb(start: &Agent, cfg: &HcConfig, eval: &mut Evaluator<'_>) -> Agent {
    let initial = initial_step(eval.space(), cfg.g, cfg.step_base);
    let quantum: Vec<f64> = initial.iter().map(|s| s / cfg.g as f64).collect();
    let mut step = initial.clone();
    let (mut sol, mut fit) = (start.position.clone(), start.fit());
    for it in 1..=cfg.max_iters {
        (sol, fit) = neighborhood_search(&sol, fit, &step, eval);
        step = match cfg.step_decay {
            StepDecay::Literal => decay_step(&step, it, cfg.max_iters),
            StepDecay::Quantum => decay_with(&step, it, cfg.max_iters, |d| quantum[d]),
        };
    }
    Agent::evaluated(sol, fit)
}

/// Runs HC-EGWO: EGWO global steps with hill climbing from the global best
/// whenever progress stalls.
pub fn hc_egwo_run(objective: &dyn Objective, space: &SearchSpace, config: &RunConfig) -> Result<RunResult> {
    if config.variant.kind != VariantKind::Egwo || config.hybrid.is_none() {
        return Err(Error::config("HC-EGWO needs the EGWO variant with a hill-climbing configuration"));
    }
    run(objective, space, config)
}
