//! Exact scalars, based spaces, multilinear operations and linear maps.

mod bundle;
mod map;
mod op;
mod scalar;
mod space;

use thiserror::Error;

pub use bundle::AlgebraBundle;
pub use map::LinearMap;
pub use op::{tuples, MultiLinearOp, Symmetry};
pub use scalar::{Field, Fp, Scalar};
pub use space::{BasisSpace, Element, LabelledElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("not a scalar literal: {0:?}")]
    BadScalar(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("a basis needs at least one vector")]
    EmptyBasis,
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("duplicate name {0:?}")]
    DuplicateName(String),
    #[error("operations need arity at least 1")]
    ZeroArity,
    #[error("{op}: expected {expected} arguments, got {found}")]
    ArityMismatch { op: String, expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("values from different fields")]
    FieldMismatch,
    #[error("matrix is not square ({rows} rows, a row of length {cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("{op}: entries at {first:?} and {second:?} disagree with the declared symmetry")]
    InconsistentSymmetry { op: String, first: Vec<usize>, second: Vec<usize> },
    #[error("{op}: alternating op has a nonzero value at repeated index {key:?}")]
    AlternatingDiagonal { op: String, key: Vec<usize> },
    #[error("not a permutation of the basis")]
    BadPermutation,
}
