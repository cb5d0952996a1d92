//! The residue scalar trait.
//!
//! Every number-theoretic routine and group type is generic over an unsigned
//! primitive integer. Products of residues never overflow: [`mul_mod`] falls
//! back to double-and-add when the direct product does not fit.
//!
//! [`mul_mod`]: crate::numt::mul_mod

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{PrimInt, Unsigned};

/// Unsigned primitive integers usable as residues and moduli.
pub trait Residue:
    PrimInt + Unsigned + Hash + Debug + Display + FromStr + Default + Send + Sync + 'static
{
}

impl<T> Residue for T where
    T: PrimInt + Unsigned + Hash + Debug + Display + FromStr + Default + Send + Sync + 'static
{
}
