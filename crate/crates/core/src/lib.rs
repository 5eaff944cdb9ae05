//! Packing of bar charts into a strip of unit height.
//!
//! A bar chart is a sequence of bars of height in `(0, 1]` occupying
//! consecutive cells. A packing assigns each chart a start cell so that no cell
//! carries more than 1; its length is the number of occupied cells.

pub mod algorithm;
pub mod baseline;
pub mod bench;
pub mod blp;
pub mod error;
pub mod exact;
pub mod greedy;
pub mod height;
pub mod model;
pub mod render;
pub mod twobar;

#[cfg(test)]
mod oracle;

pub use algorithm::Algorithm;
pub use error::{Error, Result};
pub use exact::{lower_bound, solve_exact, ExactOptions, ExactOutcome};
pub use greedy::OrderedList;
pub use height::Height;
pub use model::{evaluate, left_justify, normalize, BarChart, Instance, Packing, PackingReport, RawInstance};
pub use twobar::LexKey;
