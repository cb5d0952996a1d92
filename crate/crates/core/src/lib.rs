//! Finite abelian groups built from modular addition, modular multiplication
//! and direct products.
//!
//! The group machinery is generic over the residue type ([`Residue`]: any
//! unsigned primitive integer). The `u64` aliases below cover everyday use:
//!
//! ```
//! use abelian::{structure, ComponentSpec, Group, GroupSpec};
//!
//! let units = Group::new(GroupSpec::single(ComponentSpec::multiplicative(32)?))?;
//! let factors = structure::invariant_factors_of(&units)?;
//! assert_eq!(factors.factors(), &[8, 2]);
//! # Ok::<(), abelian::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod group;
pub mod numt;
pub mod scalar;
pub mod structure;
pub mod subgroup;

pub use error::{Error, MembershipReason, Result};
pub use group::{make_group, ComponentKind, DEFAULT_CAP};
pub use scalar::Residue;
pub use structure::{Classification, InvariantFactors, IsoCertificate, OrderMultiset, PrimaryDecomposition};

pub type ComponentSpec = group::ComponentSpec<u64>;
pub type GroupSpec = group::GroupSpec<u64>;
pub type Element = group::Element<u64>;
pub type Group = group::Group<u64>;
pub type Subgroup = subgroup::Subgroup<u64>;
pub type Factorization = numt::Factorization<u64>;

/// Narrow aliases for small moduli (below 2^32).
pub type Group32 = group::Group<u32>;
pub type Element32 = group::Element<u32>;
/// Wide aliases for moduli beyond 64 bits.
pub type Group128 = group::Group<u128>;
pub type Element128 = group::Element<u128>;
