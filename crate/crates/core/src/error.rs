use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("ambient dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket entries for ({left}, {right}) and ({right}, {left}) violate skew-supersymmetry")]
    Consistency { left: usize, right: usize },
    #[error("bracket pair ({left}, {right}) listed more than once")]
    DuplicatePair { left: usize, right: usize },
    #[error("twist is not the identity; expected a Lie superalgebra")]
    NotIdentityTwist,
    #[error("input is not a Lie superalgebra: {0}")]
    NotLie(String),
    #[error("map is not an even automorphism: {0}")]
    NotAutomorphism(String),
    #[error("change-of-basis matrix is singular")]
    SingularChange,
    #[error("change-of-basis matrix mixes parities (column {column})")]
    ParityMixing { column: usize },
    #[error("subspace is not stable under {0}")]
    NotStable(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("candidate subalgebra is not graded")]
    NotGraded,
    #[error("candidate fails the MAGSA conditions: {}", .0.join("; "))]
    InvalidMagsa(Vec<String>),
    #[error("algebra is not split with respect to H: {0}")]
    NotSplit(String),
    #[error("operator spectrum is not rational (residue of dimension {0})")]
    NonRationalSpectrum(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectError {
    #[error("connection relation is not an equivalence: {0}")]
    EquivalenceViolation(String),
    #[error("root index {0} out of range")]
    UnknownRoot(usize),
    #[error("twist does not permute the roots")]
    NoRootPermutation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("class {class}: {what}")]
    Certification { class: usize, what: String },
    #[error("center is zero and H is generated, but the class ideals do not form a direct sum")]
    DirectSumViolation,
    #[error("unknown class {0}")]
    UnknownClass(usize),
    #[error("preconditions unmet: {}", .0.join(", "))]
    PreconditionUnmet(Vec<String>),
    #[error("simplicity verdicts disagree: {0}")]
    VerdictDisagreement(String),
    #[error("component {class} is not certified simple: {reason}")]
    ComponentNotSimple { class: usize, reason: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Connect(#[from] ConnectError),
}
