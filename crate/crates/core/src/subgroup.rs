//! Cyclic closures, generated subgroups and the subgroup criterion.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Element, Group, GroupSpec};
use crate::scalar::Residue;

/// A subgroup of a full group, stored as a validated carrier.
#[derive(Debug, Clone)]
pub struct Subgroup<R> {
    group: Group<R>,
}

impl<R: Residue> PartialEq for Subgroup<R> {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
    }
}

impl<R: Residue> Eq for Subgroup<R> {}

impl<R: Residue> Subgroup<R> {
    /// Validates `carrier` as a subgroup of the group described by `parent_spec`.
    pub fn from_carrier<I>(parent_spec: GroupSpec<R>, carrier: I) -> Result<Self>
    where
        I: IntoIterator<Item = Element<R>>,
    {
        Ok(Subgroup { group: Group::with_carrier(parent_spec, carrier)? })
    }

    pub fn parent_spec(&self) -> &GroupSpec<R> {
        self.group.spec()
    }

    /// Carrier in the parent's enumeration order.
    pub fn carrier(&self) -> &[Element<R>] {
        self.group.carrier().expect("subgroups always carry a carrier")
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn contains(&self, a: &Element<R>) -> bool {
        self.group.contains(a)
    }

    /// The subgroup as a group in its own right.
    pub fn as_group(&self) -> &Group<R> {
        &self.group
    }

    pub fn into_group(self) -> Group<R> {
        self.group
    }
}

impl<R: Residue> fmt::Display for Subgroup<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.group.fmt(f)
    }
}

/// `[g, g^2, ..., g^o(g)]`, ending at the identity.
pub fn cycle<R: Residue>(group: &Group<R>, g: &Element<R>) -> Result<Vec<Element<R>>> {
    group.check_member(g)?;
    let identity = group.identity();
    let mut out = vec![g.clone()];
    let mut cur = g.clone();
    while cur != identity {
        cur = group.op_unchecked(&cur, g);
        out.push(cur.clone());
    }
    Ok(out)
}

/// Smallest subgroup of `group` containing every generator.
///
/// Every product `g1^b1 * ... * gs^bs` with `1 <= bi <= o(gi)` is formed from
/// the generators' cycles and deduplicated. Products are folded in one
/// generator at a time so duplicates are dropped as they appear.
pub fn generate<R: Residue>(group: &Group<R>, generators: &[Element<R>]) -> Result<Subgroup<R>> {
    if generators.is_empty() {
        return Err(Error::domain("generating set must be nonempty"));
    }
    let cycles = generators.iter().map(|g| cycle(group, g)).collect::<Result<Vec<_>>>()?;
    let mut acc: BTreeSet<Element<R>> = BTreeSet::from([group.identity()]);
    for cyc in &cycles {
        acc = acc
            .iter()
            .flat_map(|x| cyc.iter().map(move |y| (x, y)))
            .map(|(x, y)| group.op_unchecked(x, y))
            .collect();
    }
    Subgroup::from_carrier(group.spec().clone(), acc)
}

/// Subgroup criterion: `a * b^-1` lies in the set for every ordered pair.
pub fn is_subgroup<R: Residue>(group: &Group<R>, set: &[Element<R>]) -> Result<bool> {
    if set.is_empty() {
        return Err(Error::domain("subgroup criterion needs a nonempty set"));
    }
    for a in set {
        group.check_member(a)?;
    }
    let members: BTreeSet<&Element<R>> = set.iter().collect();
    let inverses: Vec<Element<R>> = members.iter().map(|b| group.inv_unchecked(b)).collect();
    Ok(members
        .iter()
        .all(|a| inverses.iter().all(|b_inv| members.contains(&group.op_unchecked(a, b_inv)))))
}

pub fn is_generating_set<R: Residue>(group: &Group<R>, set: &[Element<R>]) -> Result<bool> {
    Ok(generate(group, set)?.order() == group.order())
}
