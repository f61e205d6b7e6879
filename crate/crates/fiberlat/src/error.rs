use thiserror::Error;

/// Errors produced by configuration validation and the lattice operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("curve {id}: {reason}")]
    CurveInvariant { id: usize, reason: String },

    #[error("edge ({a},{b}): {reason}")]
    EdgeInvariant { a: usize, b: usize, reason: String },

    #[error("configuration: {0}")]
    Configuration(String),

    #[error("fiber radical violated at curve {id}: F.C = {value}, expected 0")]
    RadicalViolation { id: usize, value: i64 },

    #[error("proper subconfiguration {subset:?} is not negative definite")]
    NotNegativeDefinite { subset: Vec<usize> },

    #[error("divisor has {divisor} coefficients but the configuration has {curves} curves")]
    IndexMismatch { divisor: usize, curves: usize },

    #[error("divisor must be effective and nonzero")]
    NotEffective,

    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    #[error("curve {0} is not a (-2)-curve")]
    NotMinusTwo(usize),

    #[error("chain does not match any of the nine diagram families")]
    Unclassifiable,

    #[error(
        "Cartan divisibility failure at ({i},{j}): 2*{pairing} is not divisible by {diagonal}"
    )]
    CartanDivisibility {
        i: usize,
        j: usize,
        pairing: i64,
        diagonal: i64,
    },

    #[error("Koszul index out of range: i = {i} must lie in 0..={max}")]
    KoszulIndexRange { i: i64, max: i64 },

    #[error("bound too large: {0}")]
    BoundTooLarge(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no admissible component: {0}")]
    NoAdmissibleComponent(String),

    #[error("case dispatch gap: {0}")]
    DispatchGap(String),
}

pub type Result<T> = std::result::Result<T, Error>;
