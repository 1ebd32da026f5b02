use alloc::string::String;
use core::fmt;

use crate::order::PosetViolation;

/// Which search ran out of budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resource {
    PosetEnumeration,
    HomomorphismSearch,
    Subalgebras,
    Congruences,
    FreeAlgebra,
    Assignments,
    Materialize,
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Resource::PosetEnumeration => "poset enumeration",
            Resource::HomomorphismSearch => "homomorphism search",
            Resource::Subalgebras => "subalgebra enumeration",
            Resource::Congruences => "congruence enumeration",
            Resource::FreeAlgebra => "free algebra construction",
            Resource::Assignments => "assignment enumeration",
            Resource::Materialize => "table materialization",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    IndexOutOfRange {
        index: usize,
        size: usize,
    },
    InvalidPoset(PosetViolation),
    /// The table is not square or has the wrong dimension.
    Shape(String),
    NotALattice {
        a: usize,
        b: usize,
    },
    BoundsMismatch,
    NotDistributive {
        a: usize,
        b: usize,
        c: usize,
    },
    ResidualMissing {
        a: usize,
        b: usize,
    },
    TooSmall {
        got: usize,
        min: usize,
    },
    TooLarge {
        got: usize,
        max: usize,
    },
    Degenerate,
    InvalidCongruence(String),
    NotAHomomorphism,
    BudgetExceeded {
        resource: Resource,
        limit: u64,
    },
    UnboundVariable(usize),
    Parse(crate::rules::ParseError),
    VerificationFailed(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::IndexOutOfRange { index, size } => {
                write!(f, "element {index} out of range for carrier of size {size}")
            }
            Error::InvalidPoset(v) => write!(f, "not a partial order: {v}"),
            Error::Shape(msg) => write!(f, "malformed table: {msg}"),
            Error::NotALattice { a, b } => {
                write!(f, "elements {a} and {b} lack a meet or a join")
            }
            Error::BoundsMismatch => f.write_str("declared bottom/top are not the least/greatest elements"),
            Error::NotDistributive { a, b, c } => {
                write!(f, "distributivity fails at ({a}, {b}, {c})")
            }
            Error::ResidualMissing { a, b } => {
                write!(f, "implication or co-implication undefined at ({a}, {b})")
            }
            Error::TooSmall { got, min } => write!(f, "size {got} is below the minimum {min}"),
            Error::TooLarge { got, max } => write!(f, "size {got} exceeds the maximum {max}"),
            Error::Degenerate => f.write_str("operation requires a non-degenerate algebra"),
            Error::InvalidCongruence(msg) => write!(f, "invalid congruence: {msg}"),
            Error::NotAHomomorphism => f.write_str("map does not preserve the operations"),
            Error::BudgetExceeded { resource, limit } => {
                write!(f, "{resource} exceeded its budget of {limit}")
            }
            Error::UnboundVariable(v) => write!(f, "variable x{v} is not assigned"),
            Error::Parse(e) => write!(f, "{e}"),
            Error::VerificationFailed(msg) => write!(f, "internal verification failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<PosetViolation> for Error {
    fn from(v: PosetViolation) -> Self {
        Error::InvalidPoset(v)
    }
}

impl From<crate::rules::ParseError> for Error {
    fn from(e: crate::rules::ParseError) -> Self {
        Error::Parse(e)
    }
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T> = core::result::Result<T, Error>;
