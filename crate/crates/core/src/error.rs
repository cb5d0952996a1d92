use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Why an element failed a membership check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipReason {
    /// The element has the wrong number of residues for the group.
    Arity { expected: usize, found: usize },
    /// A residue is not reduced modulo its component's modulus.
    OutOfRange { component: usize, residue: u128, modulus: u128 },
    /// A residue in a multiplicative slot shares a factor with the modulus.
    NotCoprime { component: usize, residue: u128, modulus: u128, gcd: u128 },
    /// The element is a valid residue tuple but lies outside the subgroup carrier.
    NotInCarrier,
}

impl fmt::Display for MembershipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MembershipReason::Arity { expected, found } => {
                write!(f, "expected {expected} residue(s), found {found}")
            }
            MembershipReason::OutOfRange { component, residue, modulus } => write!(
                f,
                "component {component}: residue {residue} is out of range for modulus {modulus}"
            ),
            MembershipReason::NotCoprime { component, residue, modulus, gcd } => write!(
                f,
                "component {component}: residue {residue} is not coprime to {modulus} (gcd {gcd})"
            ),
            MembershipReason::NotInCarrier => write!(f, "not in the subgroup carrier"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{element} is not a member of {group}: {reason}")]
    Membership { element: String, group: String, reason: MembershipReason },
    #[error("group would have {order} elements, above the cap of {cap}")]
    CapExceeded { order: u128, cap: usize },
    #[error("carrier is not a subgroup: {0}")]
    InvalidCarrier(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
