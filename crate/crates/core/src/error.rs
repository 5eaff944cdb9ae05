use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("chart {chart}: non-positive height")]
    NonPositiveHeight { chart: usize },

    #[error("chart {chart}: height exceeds the strip height")]
    HeightExceedsStrip { chart: usize },

    #[error("chart {chart}: no bars")]
    EmptyChart { chart: usize },

    #[error("instance has no charts")]
    EmptyInstance,

    #[error("strip height must be positive")]
    NonPositiveStrip,

    #[error("invalid decimal `{0}`")]
    InvalidDecimal(String),

    #[error("chart {chart} has {width} bars, algorithm requires exactly 2")]
    NotTwoBar { chart: usize, width: usize },

    #[error("order is not a permutation of 0..{n}")]
    InvalidOrder { n: usize },

    #[error("packing covers {got} charts, instance has {expected}")]
    PackingMismatch { expected: usize, got: usize },

    #[error("chart {chart}: start cell must be >= 1")]
    InvalidStartCell { chart: usize },

    #[error("packing is infeasible (cell {cell} carries {load})")]
    Infeasible { cell: u32, load: String },

    #[error("denominator must be >= 1, got {0}")]
    InvalidDenominator(u32),

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("invalid bench config: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by running an algorithm on an instance shape it
    /// does not support, as opposed to malformed input.
    pub fn is_shape_mismatch(&self) -> bool {
        matches!(self, Error::NotTwoBar { .. })
    }
}
