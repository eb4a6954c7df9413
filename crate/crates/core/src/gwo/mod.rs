//! Grey wolf optimizer variants.

mod leaders;
mod schedule;
mod step;
pub mod update;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use leaders::LeaderSet;
pub use schedule::{VariantKind, VariantSpec};
pub use step::step;

use crate::error::Error;

/// The six compared algorithms, plus EGWO without its local search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "gwo")]
    Gwo,
    #[serde(rename = "mgwo")]
    Mgwo,
    #[serde(rename = "eegwo")]
    Eegwo,
    #[serde(rename = "igwo")]
    Igwo,
    #[serde(rename = "ergwo")]
    Ergwo,
    #[serde(rename = "hc-egwo")]
    HcEgwo,
    #[serde(rename = "egwo")]
    Egwo,
}

impl Algorithm {
    /// The six algorithms of the comparison study, in reporting order.
    pub const COMPARED: [Algorithm; 6] = [
        Algorithm::Gwo,
        Algorithm::Mgwo,
        Algorithm::Eegwo,
        Algorithm::Igwo,
        Algorithm::Ergwo,
        Algorithm::HcEgwo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Gwo => "gwo",
            Algorithm::Mgwo => "mgwo",
            Algorithm::Eegwo => "eegwo",
            Algorithm::Igwo => "igwo",
            Algorithm::Ergwo => "ergwo",
            Algorithm::HcEgwo => "hc-egwo",
            Algorithm::Egwo => "egwo",
        }
    }

    pub fn kind(self) -> VariantKind {
        match self {
            Algorithm::Gwo => VariantKind::Standard,
            Algorithm::Mgwo => VariantKind::Mgwo,
            Algorithm::Eegwo => VariantKind::Eegwo,
            Algorithm::Igwo => VariantKind::Igwo,
            Algorithm::Ergwo => VariantKind::Ergwo,
            Algorithm::HcEgwo | Algorithm::Egwo => VariantKind::Egwo,
        }
    }

    pub fn spec(self) -> VariantSpec {
        VariantSpec::new(self.kind())
    }

    /// Whether the hill-climbing hybrid is active.
    pub fn is_hybrid(self) -> bool {
        self == Algorithm::HcEgwo
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        [Algorithm::Egwo]
            .into_iter()
            .chain(Algorithm::COMPARED)
            .find(|a| a.name() == lower)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}
