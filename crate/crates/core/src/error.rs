use thiserror::Error;

pub type Result<T> = std::result::Result<T, ZetaError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("resource guard exceeded: {what} (limit {limit}, requested {requested})")]
    ResourceGuard {
        what: &'static str,
        limit: u64,
        requested: u64,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unsupported ramified prime {p}: the index of Z[theta] may be divisible by p; supply the decomposition type manually")]
    UnsupportedRamifiedPrime { p: u64 },
    #[error("degree mismatch: minimal polynomial has degree {field}, family instance expects d = {instance}")]
    DegreeMismatch { field: usize, instance: u32 },
    #[error("degenerate specialization: {0}")]
    DegenerateSpecialization(String),
    #[error("series expansion impossible: {0}")]
    NotAPowerSeries(String),
    #[error("malformed Lie lattice: {0}")]
    MalformedLattice(String),
    #[error("unsupported lattice class: {0}")]
    UnsupportedLattice(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl ZetaError {
    pub(crate) fn guard(what: &'static str, limit: u64, requested: u64) -> Self {
        ZetaError::ResourceGuard {
            what,
            limit,
            requested,
        }
    }
}
