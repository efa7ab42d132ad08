use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: String, found: String },
    #[error("element is not in {space}: {reason}")]
    NotInSpace { space: String, reason: String },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("invalid pair spec {0:?}")]
    PairSpec(String),
    #[error("invalid size: {0}")]
    Size(String),
    #[error("spin form is singular")]
    SingularForm,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("map is not in the structure variety; first violating basis triple {triple:?}")]
    NotMember { triple: [usize; 3] },
    #[error("pair of maps is not structural; first violating basis triple {triple:?}")]
    NotStructural { triple: [usize; 3] },
    #[error("descriptor does not fit the pair: {0}")]
    Descriptor(String),
    #[error("subspace is not isotropic: beta(b{0}, b{1}) = {2}")]
    NotIsotropic(usize, usize, String),
    #[error("subspace is not an inner ideal")]
    NotInner,
    #[error("out-of-scope scalar: {0}")]
    OutOfScopeScalar(String),
    #[error("unknown family row {0:?}")]
    UnknownRow(String),
    #[error("parameter schema violation: {0}")]
    Schema(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("positivity certificate failed: {0}")]
    Positivity(String),
    #[error("triple system axiom {axiom} fails at basis tuple {tuple:?}")]
    Axiom { axiom: String, tuple: Vec<usize> },
    #[error("unknown isomorphism identifier {0:?}")]
    UnknownIsomorphism(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn shape_err(expected: impl ToString, found: impl ToString) -> Error {
    Error::Shape { expected: expected.to_string(), found: found.to_string() }
}
