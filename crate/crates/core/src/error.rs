use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid label {0}: labels are 0..=3")]
    InvalidLabel(u8),

    #[error("index out of range: generator {index} on {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },

    #[error("zero is not a generator")]
    ZeroGenerator,

    #[error("{0} strands: an even strand count is required")]
    OddStrands(usize),

    #[error("need at least {min} anyons, got {got}")]
    TooFewAnyons { min: usize, got: usize },

    #[error("strand mismatch: register has {expected} anyons, word has {got} strands")]
    StrandMismatch { expected: usize, got: usize },

    #[error("pair {pair} out of range ({pairs} pairs)")]
    InvalidPair { pair: usize, pairs: usize },

    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),

    #[error("diagram has {crossings} crossings, state-sum budget is {budget}")]
    CrossingBudget { crossings: usize, budget: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("letter {letter} is outside the scope generators {allowed:?}")]
    OutOfScope { letter: i32, allowed: Vec<usize> },

    #[error(
        "no word up to depth {depth} meets leakage tolerance {tolerance}; \
         best word {best_word:?} has distance {best_distance} and leakage {best_leakage}"
    )]
    LeakageUnsatisfied {
        depth: usize,
        tolerance: f64,
        best_word: Vec<i32>,
        best_distance: f64,
        best_leakage: f64,
    },

    #[error("invalid gate target: {0}")]
    InvalidTarget(String),

    #[error("not a valid subspace: {0}")]
    InvalidSubspace(String),

    #[error("total dimension {dim} exceeds the limit {limit}")]
    ResourceLimit { dim: usize, limit: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
