use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zeros is undefined")]
    BothZero,
    #[error("{a} is not a quadratic residue mod {p}")]
    NonResidue { a: BigUint, p: BigUint },
    #[error("prime {p} exceeds the abandonment threshold {threshold}")]
    TooLarge { p: String, threshold: u64 },
    #[error("abandoned: {0}")]
    Abandoned(String),
    #[error("input is reducible")]
    Reducible,
    #[error("associated prime {p} lies in an unsupported residue class mod 20")]
    UnsupportedResidue { p: BigUint },
    #[error("not a sum of two squares by the factor criteria")]
    NotRepresentable,
    #[error("no sum-of-two-squares representation")]
    SotsFail,
    #[error("closure of the generators has {0} elements instead of 60")]
    GroupClosure(usize),
    #[error("quaternion is not in the lattice of the gate group")]
    NotInLattice,
    #[error("no peeling candidate at tau depth {0}")]
    NoPeelingCandidate(usize),
    #[error("{count} peeling candidates at tau depth {depth}")]
    AmbiguousPeel { depth: usize, count: usize },
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("precision insufficient: {0}")]
    PrecisionInsufficient(String),
    #[error("unbounded region")]
    UnboundedRegion,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Errors that a search loop treats as "skip this candidate".
    pub fn is_abandonment(&self) -> bool {
        matches!(self, Error::Abandoned(_) | Error::TooLarge { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
