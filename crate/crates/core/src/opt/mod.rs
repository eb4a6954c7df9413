//! Algorithm-agnostic optimization substrate.

pub mod objective;
pub mod rng;
pub mod run;
pub mod space;

pub use objective::{Agent, Direction, Evaluation, Evaluator, FnObjective, Objective, PENALTY};
pub use rng::{Cycle, UnitSource, WolfRng};
pub use run::{initialize_population, run, RunConfig, RunResult};
pub use space::SearchSpace;
