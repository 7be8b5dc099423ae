use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order is not antisymmetric: {0} <= {1} and {1} <= {0}")]
    NotAPoset(String, String),
    #[error("{0} and {1} have no unique {2}")]
    NotALattice(String, String, &'static str),
    #[error("order has no {0} element")]
    NotBounded(&'static str),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("lattice must have between 1 and 64 elements, got {0}")]
    LatticeSize(usize),
    #[error("index {index} out of range (size {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("unknown builtin lattice `{0}`")]
    UnknownBuiltin(String),
    #[error("factor {0} is not an ideal of the scalar lattice")]
    FactorNotIdeal(usize),
    #[error("factor {0} is not a principal ideal")]
    FactorNotPrincipal(usize),
    #[error("a canonical quasimodule needs at least one factor")]
    NoFactors,
    #[error("carrier would have {size} vectors, above the cap of {cap}")]
    CarrierTooLarge { size: u128, cap: usize },
    #[error("vector {0} is not in the carrier")]
    NotInCarrier(String),
    #[error("enumeration budget of {0} exceeded")]
    EnumerationBudgetExceeded(usize),
    #[error("factor {0} is not 0-distributive")]
    NotZeroDistributive(usize),
    #[error("input set is not closed under double orthogonal complement")]
    NotClosed,
    #[error("input set is not a subquasimodule: {0}")]
    NotSubquasimodule(String),
    #[error("closed subquasimodule does not factor as a product of closed projections")]
    FactorizationFailed,
    #[error("unknown instance `{0}`")]
    UnknownInstance(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("unknown hypothesis `{0}`")]
    UnknownHypothesis(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
}
