//! Crate-wide error type.

use thiserror::Error;

use crate::sman::SourceSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree m={0} out of supported range 1..=16")]
    DegreeOutOfRange(u32),
    #[error("polynomial {poly:#x} does not have degree exactly {m}")]
    WrongPolyDegree { poly: u32, m: u32 },
    #[error("polynomial {poly:#x} is not primitive over GF(2): {reason}")]
    NotPrimitive { poly: u32, reason: String },
    #[error("value {value} is not an element of a field with {q} elements")]
    ElementOutOfRange { value: u64, q: u32 },
    #[error("cannot parse {0:?} as a field element")]
    ElementParse(String),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("zero has no discrete logarithm")]
    ZeroLog,
    #[error("argument scaling by zero is undefined")]
    ZeroScale,
    #[error("polynomial vanishes at the pivot point a^{0}, cannot normalize there")]
    VanishesAtPivot(usize),
    #[error("polynomial degree {degree} does not fit in a coefficient vector of length {len}")]
    DegreeTooHigh { degree: usize, len: usize },
    #[error("matrix dimensions {0}x{1} and {2}x{3} are incompatible")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("column index {index} out of range for a matrix with {cols} columns")]
    IndexOutOfRange { index: usize, cols: usize },
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("code length N={n} needs q-1 >= N, but the field has q={q}")]
    FieldTooSmall { n: usize, q: u32 },
    #[error("code dimension k = N - 2z = {n} - {twoz} is not positive")]
    CodeDimension { n: usize, twoz: usize },
    #[error("received word is not within distance z of any codeword")]
    DecodeFailure,
    #[error("brute-force oracle needs q^k <= 2^20, got q={q}, k={k}")]
    OracleTooLarge { q: u32, k: usize },
    #[error("networks with more than three sources are unsupported (found {0})")]
    TooManySources(usize),
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("rate vector outside the capacity region; violated source subsets: {}", format_subsets(.0))]
    NotInCapacityRegion(Vec<SourceSet>),
    #[error("no source permutation matches any construction case; instance violates the case coverage claim")]
    CaseClassificationFailure,
    #[error("row polynomial for source {owner} has {roots} roots, exceeding the degree bound k-1 = {bound}")]
    DegreeBoundViolation { owner: usize, roots: usize, bound: usize },
    #[error("generator matrix rank {found} is below the total rate {expected}")]
    RankDeficient { expected: usize, found: usize },
    #[error("generator matrix is nonzero at masked position (row {row}, column {col})")]
    MaskViolation { row: usize, col: usize },
    #[error("construction failed verification: {0}")]
    VerifyFailed(String),
    #[error("duplicate error position {0}")]
    DuplicatePosition(usize),
    #[error("error values must be nonzero (position {0})")]
    ZeroErrorValue(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

fn format_subsets(sets: &[SourceSet]) -> String {
    sets.iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
