use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("epsilon raised to a negative power is undefined")]
    NegativePowerOfEpsilon,

    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("entry count {len} does not match {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, len: usize },

    #[error("circuit of positive weight through node {node}; the star diverges")]
    PositiveCircuit { node: usize },

    #[error("precedence graph is not strongly connected")]
    NotIrreducible,

    #[error("vector has no finite entry")]
    AllEpsilonVector,

    #[error("leg groups do not partition 1..={n}: {reason}")]
    NotPartition { n: usize, reason: String },

    #[error("leg index {index} outside 1..={n}")]
    BadIndex { index: usize, n: usize },

    #[error("gait is not normal (flattened legs must be strictly increasing)")]
    NotNormalGait,

    #[error("assumption A1 violated: swing and stance times must be positive")]
    AssumptionA1Violated,

    #[error("assumption A2 violated: tau_f+tau_g exceeds m*(tau_f+tau_delta)")]
    AssumptionA2Violated,

    #[error("exponent {0} not allowed here")]
    BadExponent(u32),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("negative delay {delay} at step {step}: events can only be postponed")]
    NegativeDelay { step: usize, delay: String },

    #[error("segments disagree on leg count: {expected} vs {found}")]
    LegCountMismatch { expected: usize, found: usize },

    #[error("leg {leg} event times decrease at step {step}")]
    NonMonotoneTrajectory { leg: usize, step: usize },

    #[error("state index {index} outside 0..{len}")]
    BadStateIndex { index: usize, len: usize },

    #[error("disturbance at step {step} lies outside the {steps}-step horizon")]
    DisturbanceOutOfRange { step: usize, steps: usize },

    #[error("trajectory is empty")]
    EmptyTrajectory,

    #[error("diagram quantum must be positive and finite")]
    BadQuantum,

    #[error("state has a non-finite entry")]
    NonFiniteState,
}
