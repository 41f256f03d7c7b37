use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TensorError {
    #[error("order and dimension must both be at least 1 (got order {order}, dim {dim})")]
    EmptyShape { order: usize, dim: usize },

    #[error("tensor with dim^order = {requested} entries exceeds the guard of {limit}")]
    TooLarge { requested: u128, limit: usize },

    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("entry {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("vector length {got} does not match tensor dimension {dim}")]
    VectorLength { dim: usize, got: usize },

    #[error("index {index} is out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("row tensor needs order >= 2")]
    OrderTooSmall,

    #[error("pair profile needs two distinct indices (got {0} twice)")]
    SameIndex(usize),

    #[error("principal subtensor index set is empty")]
    EmptySubset,

    #[error("duplicate index {0} in subtensor index set")]
    DuplicateIndex(usize),

    #[error("sign vector entry {index} is {value}, expected +1 or -1")]
    BadSign { index: usize, value: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntervalError {
    #[error("dilation radius must be non-negative (got {0})")]
    NegativeRadius(f64),

    #[error("grid step must be positive (got {0})")]
    BadStep(f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeigError {
    #[error("the exact solver needs dimension 2 (got {0})")]
    NeedsDimTwo(usize),

    #[error("the exact solver needs order >= 2 (got {0})")]
    NeedsOrderTwo(usize),

    #[error("power iteration requires a symmetric tensor")]
    NotSymmetric,

    #[error("power iteration requires at least one start")]
    NoStarts,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error(
        "{class}: the sign-normalized route says {via_abar}, the alpha route says {via_alpha}"
    )]
    RouteDisagreement {
        class: &'static str,
        via_abar: bool,
        via_alpha: bool,
    },
}
