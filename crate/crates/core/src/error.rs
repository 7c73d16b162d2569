use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input alphabet must be non-empty")]
    EmptyAlphabet,
    #[error("component map {which} has length {len}, expected {expected}")]
    MapLength {
        which: &'static str,
        len: usize,
        expected: usize,
    },
    #[error("probability {name} = {value} is outside [0, 1]")]
    Probability { name: &'static str, value: f64 },
    #[error("pmf entry {index} is negative or not finite ({value})")]
    NegativeMass { index: usize, value: f64 },
    #[error("pmf total mass {total} differs from 1")]
    Mass { total: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("channel is not in canonical orientation (p1 = {p1} < p2 = {p2})")]
    NotCanonical { p1: f64, p2: f64 },
    #[error("weight lambda must be a non-negative number, got {0}")]
    InvalidLambda(f64),
    #[error("objective returned NaN at {point:?}")]
    NanObjective { point: Vec<f64> },
    #[error("simplex dimension must be at least 1")]
    ZeroDimension,
    #[error("invalid optimizer configuration: {0}")]
    Config(String),
    #[error("lattice with {points} points exceeds the enumeration budget of {budget}")]
    Budget { points: u128, budget: u128 },
    #[error("auxiliary alphabet size must be at least 1")]
    ZeroAuxiliary,
    #[error("channel matrix is singular over GF({0})")]
    Singular(u64),
    #[error("field size {0} is not prime")]
    NotPrime(u64),
    #[error("invalid Blackwell parameters alpha0 = {alpha0}, alpha1 = {alpha1}")]
    BlackwellParams { alpha0: f64, alpha1: f64 },
    #[error("closed-form branch must be 3 or 4, got {0}")]
    Branch(u8),
    #[error("outer support {outer} falls below inner support {inner} at lambda = {lambda}")]
    Ordering { lambda: f64, inner: f64, outer: f64 },
    #[error("need at least {min} lambda samples, got {got}")]
    LambdaCount { min: usize, got: usize },
    #[error("channel file: {0}")]
    Input(String),
    #[error("malformed CSV: {0}")]
    Csv(String),
}
