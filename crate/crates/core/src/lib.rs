//! Grey wolf optimizer variants (including the HC-EGWO hybrid), a
//! multimodal benchmark and statistics harness, and a time-domain model of
//! an oscillating surge wave energy converter whose mean power output is
//! the real-world objective.

pub mod benchmarks;
pub mod error;
pub mod gwo;
pub mod hill_climb;
pub mod opt;
pub mod oswec;
pub mod site;
pub mod stats;

pub use error::{Error, Result};
