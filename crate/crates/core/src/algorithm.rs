use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baseline::pack_ffd_wrap;
use crate::error::{Error, Result};
use crate::greedy::{pack_g, OrderedList};
use crate::model::{left_justify, Instance, Packing};
use crate::twobar::{lex_order_by, pack_ga, run_pipeline, LexKey, PipelineOptions};

/// Every heuristic exposed through the CLI and the benchmark harness.
///
/// Declaration order is the report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    A,
    ALo,
    A1,
    A1Lo,
    Ga,
    GaLo,
    G,
    Ffd,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::A,
        Algorithm::ALo,
        Algorithm::A1,
        Algorithm::A1Lo,
        Algorithm::Ga,
        Algorithm::GaLo,
        Algorithm::G,
        Algorithm::Ffd,
    ];

    /// The six variants compared in the reference experiment.
    pub const TABLE: [Algorithm; 6] =
        [Algorithm::A, Algorithm::ALo, Algorithm::A1, Algorithm::A1Lo, Algorithm::Ga, Algorithm::GaLo];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::A => "a",
            Algorithm::ALo => "a_lo",
            Algorithm::A1 => "a1",
            Algorithm::A1Lo => "a1_lo",
            Algorithm::Ga => "ga",
            Algorithm::GaLo => "ga_lo",
            Algorithm::G => "g",
            Algorithm::Ffd => "ffd",
        }
    }

    /// Label used in report tables, e.g. `A1_LO`.
    pub fn label(self) -> String {
        self.name().to_uppercase()
    }

    pub fn requires_two_bar(self) -> bool {
        self != Algorithm::G
    }

    pub fn solve(self, instance: &Instance) -> Result<Packing> {
        self.solve_with(instance, LexKey::FirstBar)
    }

    /// Runs the algorithm; `_lo` variants sort by `key`. The result is
    /// left-justified.
    pub fn solve_with(self, instance: &Instance, key: LexKey) -> Result<Packing> {
        let n = instance.len();
        let pipeline = |merge, lex| run_pipeline(instance, PipelineOptions { merge, lex });
        let packing = match self {
            Algorithm::A => pipeline(true, None)?,
            Algorithm::ALo => pipeline(true, Some(key))?,
            Algorithm::A1 => pipeline(false, None)?,
            Algorithm::A1Lo => pipeline(false, Some(key))?,
            Algorithm::Ga => pack_ga(instance, &OrderedList::identity(n))?,
            Algorithm::GaLo => pack_ga(instance, &lex_order_by(instance, key)?)?,
            Algorithm::G => pack_g(instance, &OrderedList::identity(n))?,
            Algorithm::Ffd => pack_ffd_wrap(instance)?,
        };
        left_justify(instance, &packing)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == lower)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert_eq!("GA_LO".parse::<Algorithm>().unwrap(), Algorithm::GaLo);
        assert!("mffd".parse::<Algorithm>().is_err());
        assert_eq!(serde_json::to_string(&Algorithm::A1Lo).unwrap(), "\"a1_lo\"");
        assert_eq!(Algorithm::A1Lo.label(), "A1_LO");
    }

    #[test]
    fn g_accepts_wide_charts_others_do_not() {
        let i = Instance::from_rows(&[vec![0.5, 0.2, 0.1], vec![0.5, 0.5]]).unwrap();
        assert!(Algorithm::G.solve(&i).is_ok());
        for a in Algorithm::ALL.into_iter().filter(|a| a.requires_two_bar()) {
            assert!(a.solve(&i).unwrap_err().is_shape_mismatch(), "{a}");
        }
    }
}
