//! Binary linear algebra, the code model and its Tanner graph, code
//! constructors, and the exhaustive oracles used to check every decoder.

mod alist;
mod code;
mod construct;
mod matrix;
mod tanner;

pub use alist::{load_alist, save_alist};
pub use code::LinearCode;
pub use construct::{array_code, hamming_code, random_regular_ldpc, spc_product_code};
pub use matrix::BinaryMatrix;
pub use tanner::TannerGraph;

pub(crate) use matrix::{pack_bits, parity_and, support_of_words, unpack_bits};

/// Largest code dimension the enumeration oracles accept.
pub const MAX_ENUMERATION_DIMENSION: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Gf2Error {
    #[error("matrix dimensions must be at least 1x1")]
    EmptyMatrix,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("code dimension {k} exceeds enumeration limit {max}")]
    DimensionTooLarge { k: usize, max: usize },
    #[error("code has no nonzero codeword")]
    NoNonzeroCodeword,
    #[error("generator matrix is not orthogonal to the parity-check matrix or has wrong rank")]
    GeneratorMismatch,
    #[error("infeasible degree pair: n={n}, d_v={dv}, d_c={dc}")]
    InfeasibleDegrees { n: usize, dv: usize, dc: usize },
    #[error("no admissible construction found after {attempts} attempts")]
    ConstructionFailed { attempts: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("alist parse error at line {line}: {msg}")]
    Alist { line: usize, msg: String },
}
