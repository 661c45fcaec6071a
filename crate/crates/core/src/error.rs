use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe must contain at least one element")]
    EmptyUniverse,
    #[error("universe has {size} elements, capacity is {capacity}")]
    CapacityExceeded { size: usize, capacity: usize },
    #[error("invalid element label {0:?}")]
    BadLabel(String),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown element label {0:?}")]
    UnknownElementLabel(String),
    #[error("subset width {found} does not match universe size {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("the empty set cannot be a member of the domain")]
    EmptySetInDomain,
    #[error("ideal member {a} of {x} is not a subset of it")]
    IdealMemberNotSubset { x: String, a: String },
    #[error("choice {a} for {x} is not a subset of it")]
    ChoiceNotSubset { x: String, a: String },
    #[error("{0} is not in the domain")]
    SetNotInDomain(String),
    #[error("ideal of {x} is not downward closed: {a} is missing")]
    NotMonotone { x: String, a: String },
    #[error("filter of {0} has no least element")]
    NotPrincipal(String),
    #[error("domain is not closed: {0} is required but missing")]
    DomainNotClosed(String),
    #[error("domain must be the full powerset minus the empty set")]
    DomainNotFull,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("syntax error at offset {offset}: expected {expected}")]
    Syntax { offset: usize, expected: String },
    #[error("unbound atom {0:?}")]
    UnboundAtom(String),
    #[error("invalid search spec: {0}")]
    InvalidSpec(String),
    #[error("universe size {size} exceeds the search ceiling: {reason}")]
    SizeCeiling { size: usize, reason: String },
    #[error("malformed input: {0}")]
    Input(String),
}

impl Error {
    /// True for errors caused by a universe that is too large to handle.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::CapacityExceeded { .. } | Error::SizeCeiling { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
