use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("scalar is not a single term: {0}")]
    NotMonomial(String),
    #[error("scalar is zero")]
    ZeroScalar,
    #[error("expected {expected} labels, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("full-group scope requested on a group with free components")]
    InfiniteScope,
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("index {0} is not in the domain")]
    InvalidIndex(String),
    #[error("mixed explicit/affine operation on an infinite domain: {0}")]
    MixedFormUnsupported(String),
    #[error("affine morphisms with different index maps or phase profiles cannot be added")]
    AffineAdditionUnsupported,
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),
    #[error("mode not supported: {0}")]
    ModeUnsupported(String),
    #[error("{0} is not in the lattice")]
    NotInLattice(i64),
    #[error("label {0} does not induce a local module")]
    NotLocal(i64),
    #[error("chain scalar is not constant on the window: {0}")]
    NotConstantOnWindow(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
