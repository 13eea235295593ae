use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("partition has a nonempty 2-core")]
    NonEmptyCore,
    #[error("bipartition component has more than one row")]
    NotOneLine,
    #[error("weights live in different ambient sizes ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("weight {lambda} is not in Lambda_{n}")]
    WeightOutOfRange { n: usize, lambda: i64 },
    #[error("generator index {index} out of range for rank {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("invalid signed permutation window {0:?}")]
    InvalidWindow(Vec<i32>),
    #[error("n = {n} exceeds the configured bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("tableau shapes differ")]
    ShapeMismatch,
    #[error("invalid domino tableau: {0}")]
    InvalidTableau(String),
    #[error("duplicate letter {0} in word")]
    DuplicateLetter(i32),
    #[error("Gaussian integer requested for negative n = {0}")]
    NegativeN(i64),
    #[error("conductor {conductor} exceeds bound {bound}")]
    ConductorOverflow { conductor: u32, bound: u32 },
    #[error("element is not in W_b")]
    NotInWb,
    #[error("specialization does not satisfy q = -q^(2m), q^l = 1, q != +-1")]
    SpecializationInvalid,
    #[error("blob on a non-exposed line")]
    ExposureViolation,
    #[error("invalid blob diagram: {0}")]
    InvalidDiagram(String),
    #[error("[2] is not invertible")]
    TwoNotInvertible,
    #[error("divided power is not exact")]
    DividedPowerInexact,
    #[error("monomial for {0} is not unitriangular")]
    NotUnitriangular(String),
    #[error("bipartition {0} is not reachable in the crystal")]
    NotReachable(String),
    #[error("weight {0} lies on a wall")]
    SingularWeight(i64),
    #[error("KL correction failed for element {0}")]
    KlCorrectionFailed(usize),
}
