//! Groups built from additive and multiplicative residue components and
//! their direct products.
//!
//! A [`Group`] is an ordered list of components. Elements are residue tuples,
//! one residue per component, and the operation acts componentwise. A group
//! may also carry an explicit carrier set, which is how subgroups are
//! represented (see [`crate::subgroup`]).

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use itertools::{Either, Itertools};

use crate::error::{Error, MembershipReason, Result};
use crate::numt::{self, euler_phi, gcd_unchecked, mod_pow_unchecked, mul_mod};
use crate::scalar::Residue;

/// Largest number of elements a group may have unless a larger cap is given.
pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentKind {
    /// `{0, ..., n-1}` under addition mod `n`.
    Additive,
    /// Residues coprime to `n` under multiplication mod `n`.
    Multiplicative,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentKind::Additive => "add",
            ComponentKind::Multiplicative => "mult",
        })
    }
}

/// One direct factor: an additive or multiplicative residue group mod `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComponentSpec<R> {
    kind: ComponentKind,
    modulus: R,
    order: R,
    /// Distinct primes dividing `order`; only kept for multiplicative components.
    order_primes: Vec<R>,
}

impl<R: Residue> ComponentSpec<R> {
    pub fn new(kind: ComponentKind, modulus: R) -> Result<Self> {
        if modulus < R::one() + R::one() {
            return Err(Error::domain(format!("modulus must be at least 2, got {modulus}")));
        }
        let (order, order_primes) = match kind {
            ComponentKind::Additive => (modulus, Vec::new()),
            ComponentKind::Multiplicative => {
                let phi = euler_phi(modulus)?;
                (phi, numt::factorize(phi)?.primes().collect())
            }
        };
        Ok(ComponentSpec { kind, modulus, order, order_primes })
    }

    pub fn additive(modulus: R) -> Result<Self> {
        Self::new(ComponentKind::Additive, modulus)
    }

    pub fn multiplicative(modulus: R) -> Result<Self> {
        Self::new(ComponentKind::Multiplicative, modulus)
    }

    pub fn kind(&self) -> ComponentKind {
        self.kind
    }

    pub fn modulus(&self) -> R {
        self.modulus
    }

    /// `n` for additive components, `phi(n)` for multiplicative ones.
    pub fn order(&self) -> R {
        self.order
    }

    pub fn identity(&self) -> R {
        match self.kind {
            ComponentKind::Additive => R::zero(),
            ComponentKind::Multiplicative => R::one(),
        }
    }

    fn check(&self, index: usize, r: R) -> std::result::Result<(), MembershipReason> {
        if r >= self.modulus {
            return Err(MembershipReason::OutOfRange {
                component: index,
                residue: wide(r),
                modulus: wide(self.modulus),
            });
        }
        if self.kind == ComponentKind::Multiplicative {
            let g = gcd_unchecked(r, self.modulus);
            if g != R::one() {
                return Err(MembershipReason::NotCoprime {
                    component: index,
                    residue: wide(r),
                    modulus: wide(self.modulus),
                    gcd: wide(g),
                });
            }
        }
        Ok(())
    }

    fn op(&self, a: R, b: R) -> R {
        let n = self.modulus;
        match self.kind {
            ComponentKind::Additive => {
                if a >= n - b {
                    a - (n - b)
                } else {
                    a + b
                }
            }
            ComponentKind::Multiplicative => mul_mod(a, b, n),
        }
    }

    fn inv(&self, a: R) -> R {
        let n = self.modulus;
        match self.kind {
            ComponentKind::Additive => (n - a) % n,
            ComponentKind::Multiplicative => mod_pow_unchecked(a, self.order() - R::one(), n),
        }
    }

    fn pow(&self, a: R, k: u64) -> R {
        let n = self.modulus;
        match self.kind {
            ComponentKind::Additive => {
                let k = match n.to_u64() {
                    Some(n64) => R::from(k % n64).expect("reduced below the modulus"),
                    None => R::from(k).expect("k is below a modulus wider than u64"),
                };
                mul_mod(a, k, n)
            }
            ComponentKind::Multiplicative => mod_pow_unchecked(a, k, n),
        }
    }

    /// `n / gcd(n, a)` additively; the least divisor `d` of `phi(n)` with
    /// `a^d = 1` multiplicatively.
    fn element_order(&self, a: R) -> R {
        let n = self.modulus;
        match self.kind {
            ComponentKind::Additive => n / gcd_unchecked(n, a),
            ComponentKind::Multiplicative => {
                let mut d = self.order;
                for &p in &self.order_primes {
                    while (d % p).is_zero() && mod_pow_unchecked(a, d / p, n) == R::one() {
                        d = d / p;
                    }
                }
                d
            }
        }
    }

    /// Residues in ascending order.
    fn residues(&self) -> Vec<R> {
        let n = self.modulus;
        let all = num_iter(n);
        match self.kind {
            ComponentKind::Additive => all.collect(),
            ComponentKind::Multiplicative => {
                all.filter(|&a| gcd_unchecked(a, n) == R::one()).collect()
            }
        }
    }
}

fn wide<R: Residue>(r: R) -> u128 {
    r.to_u128().expect("unsigned primitives fit in u128")
}

fn num_iter<R: Residue>(n: R) -> impl Iterator<Item = R> {
    let mut next = R::zero();
    std::iter::from_fn(move || {
        if next < n {
            let cur = next;
            next = next + R::one();
            Some(cur)
        } else {
            None
        }
    })
}

impl<R: Residue> fmt::Display for ComponentSpec<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind, self.modulus)
    }
}

/// Nonempty ordered list of components; the group is their direct product.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec<R> {
    components: Vec<ComponentSpec<R>>,
}

impl<R: Residue> GroupSpec<R> {
    pub fn new(components: Vec<ComponentSpec<R>>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::domain("a group needs at least one component"));
        }
        Ok(GroupSpec { components })
    }

    pub fn single(component: ComponentSpec<R>) -> Self {
        GroupSpec { components: vec![component] }
    }

    /// Product of additive components `Z_m1 x Z_m2 x ...`.
    pub fn cyclic_product(orders: &[R]) -> Result<Self> {
        Self::new(orders.iter().map(|&m| ComponentSpec::additive(m)).collect::<Result<_>>()?)
    }

    pub fn components(&self) -> &[ComponentSpec<R>] {
        &self.components
    }

    /// Order of the full product, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.components.iter().fold(1u128, |acc, c| {
            acc.saturating_mul(c.order().to_u128().unwrap_or(u128::MAX))
        })
    }
}

impl<R: Residue> fmt::Display for GroupSpec<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.components.iter().join("x"))
    }
}

/// A residue tuple, one entry per component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element<R>(Vec<R>);

impl<R: Residue> Element<R> {
    pub fn new(residues: Vec<R>) -> Self {
        Element(residues)
    }

    /// Element of a one-component group.
    pub fn scalar(r: R) -> Self {
        Element(vec![r])
    }

    pub fn residues(&self) -> &[R] {
        &self.0
    }

    pub fn into_residues(self) -> Vec<R> {
        self.0
    }
}

impl<R: Residue> From<R> for Element<R> {
    fn from(r: R) -> Self {
        Element::scalar(r)
    }
}

impl<R: Residue> From<Vec<R>> for Element<R> {
    fn from(v: Vec<R>) -> Self {
        Element(v)
    }
}

/// Single residues print bare, tuples print as `[a, b]`.
impl<R: Residue> fmt::Display for Element<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [r] => write!(f, "{r}"),
            rs => write!(f, "[{}]", rs.iter().join(", ")),
        }
    }
}

/// A finite abelian group. Immutable once built.
#[derive(Debug, Clone)]
pub struct Group<R> {
    spec: GroupSpec<R>,
    /// Per-component residues in ascending order.
    residues: Vec<Vec<R>>,
    /// Present for subgroups; sorted in the parent's enumeration order.
    carrier: Option<Vec<Element<R>>>,
    index: Option<HashSet<Element<R>>>,
    order: usize,
}

/// Builds the full group described by `spec` with the default element cap.
pub fn make_group<R: Residue>(spec: GroupSpec<R>) -> Result<Group<R>> {
    Group::new(spec)
}

impl<R: Residue> Group<R> {
    pub fn new(spec: GroupSpec<R>) -> Result<Self> {
        Self::with_cap(spec, DEFAULT_CAP)
    }

    /// Builds the full group, refusing more than `cap` elements.
    pub fn with_cap(spec: GroupSpec<R>, cap: usize) -> Result<Self> {
        let order = spec.order();
        if order > cap as u128 {
            return Err(Error::CapExceeded { order, cap });
        }
        let residues = spec.components.iter().map(ComponentSpec::residues).collect();
        Ok(Group { spec, residues, carrier: None, index: None, order: order as usize })
    }

    /// Restricts `spec` to an explicit carrier, validating that it is a
    /// subgroup: every element belongs to the full group, the identity is
    /// present and the set is closed under the operation.
    pub fn with_carrier<I>(spec: GroupSpec<R>, carrier: I) -> Result<Self>
    where
        I: IntoIterator<Item = Element<R>>,
    {
        let full_order = spec.order();
        let carrier: BTreeSet<Element<R>> = carrier.into_iter().collect();
        if carrier.len() as u128 > full_order {
            return Err(Error::InvalidCarrier("more elements than the group".into()));
        }
        let parent = Group { spec, residues: Vec::new(), carrier: None, index: None, order: 0 };
        for e in &carrier {
            parent.check_in_spec(e)?;
        }
        let identity = parent.identity();
        if !carrier.contains(&identity) {
            return Err(Error::InvalidCarrier(format!("identity {identity} is missing")));
        }
        check_closed(&parent, &carrier)?;
        let order = carrier.len();
        let index = carrier.iter().cloned().collect();
        Ok(Group {
            spec: parent.spec,
            residues: Vec::new(),
            carrier: Some(carrier.into_iter().collect()),
            index: Some(index),
            order,
        })
    }

    pub fn spec(&self) -> &GroupSpec<R> {
        &self.spec
    }

    pub fn components(&self) -> &[ComponentSpec<R>] {
        &self.spec.components
    }

    /// Explicit carrier, present only for subgroups.
    pub fn carrier(&self) -> Option<&[Element<R>]> {
        self.carrier.as_deref()
    }

    pub fn is_subgroup_restricted(&self) -> bool {
        self.carrier.is_some()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Elements in ascending residue order, last component varying fastest.
    pub fn elements(&self) -> impl Iterator<Item = Element<R>> + '_ {
        match &self.carrier {
            Some(c) => Either::Left(c.iter().cloned()),
            None => Either::Right(
                self.residues
                    .iter()
                    .map(|rs| rs.iter().copied())
                    .multi_cartesian_product()
                    .map(Element),
            ),
        }
    }

    /// Zero-based position in the enumeration.
    pub fn nth_element(&self, i: usize) -> Option<Element<R>> {
        self.elements().nth(i)
    }

    pub fn identity(&self) -> Element<R> {
        Element(self.spec.components.iter().map(ComponentSpec::identity).collect())
    }

    fn check_in_spec(&self, a: &Element<R>) -> Result<()> {
        let comps = &self.spec.components;
        let reason = if a.0.len() != comps.len() {
            Some(MembershipReason::Arity { expected: comps.len(), found: a.0.len() })
        } else {
            comps.iter().zip(&a.0).enumerate().find_map(|(i, (c, &r))| c.check(i, r).err())
        };
        match reason {
            None => Ok(()),
            Some(reason) => Err(self.membership_error(a, reason)),
        }
    }

    fn membership_error(&self, a: &Element<R>, reason: MembershipReason) -> Error {
        let group = if self.carrier.is_some() {
            format!("a subgroup of {}", self.spec)
        } else {
            self.spec.to_string()
        };
        Error::Membership { element: a.to_string(), group, reason }
    }

    /// Membership with the reason for rejection.
    pub fn check_member(&self, a: &Element<R>) -> Result<()> {
        self.check_in_spec(a)?;
        match &self.index {
            Some(index) if !index.contains(a) => {
                Err(self.membership_error(a, MembershipReason::NotInCarrier))
            }
            _ => Ok(()),
        }
    }

    pub fn contains(&self, a: &Element<R>) -> bool {
        self.check_member(a).is_ok()
    }

    /// Componentwise operation. Both operands must be members.
    pub fn op(&self, a: &Element<R>, b: &Element<R>) -> Result<Element<R>> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(self.op_unchecked(a, b))
    }

    pub(crate) fn op_unchecked(&self, a: &Element<R>, b: &Element<R>) -> Element<R> {
        Element(
            self.spec
                .components
                .iter()
                .zip(a.0.iter().zip(&b.0))
                .map(|(c, (&x, &y))| c.op(x, y))
                .collect(),
        )
    }

    pub fn inv(&self, a: &Element<R>) -> Result<Element<R>> {
        self.check_member(a)?;
        Ok(self.inv_unchecked(a))
    }

    pub(crate) fn inv_unchecked(&self, a: &Element<R>) -> Element<R> {
        Element(self.spec.components.iter().zip(&a.0).map(|(c, &x)| c.inv(x)).collect())
    }

    /// `k`-fold operation: `k * a` additively, `a^k` multiplicatively.
    pub fn pow(&self, a: &Element<R>, k: u64) -> Result<Element<R>> {
        self.check_member(a)?;
        Ok(Element(self.spec.components.iter().zip(&a.0).map(|(c, &x)| c.pow(x, k)).collect()))
    }

    /// Least `k >= 1` with `a^k` the identity, as the lcm of component orders.
    pub fn element_order(&self, a: &Element<R>) -> Result<u64> {
        self.check_member(a)?;
        Ok(self.element_order_unchecked(a))
    }

    pub(crate) fn element_order_unchecked(&self, a: &Element<R>) -> u64 {
        self.spec.components.iter().zip(&a.0).fold(1u64, |acc, (c, &x)| {
            // Component orders divide the (capped) group order, so they fit.
            let o = c.element_order(x).to_u64().expect("element order fits in u64");
            numt::lcm(acc, o).expect("element order fits in u64")
        })
    }
}

impl<R: Residue> PartialEq for Group<R> {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.carrier == other.carrier
    }
}

impl<R: Residue> Eq for Group<R> {}

impl<R: Residue> fmt::Display for Group<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.carrier {
            None => write!(f, "{}", self.spec),
            Some(c) => write!(f, "subgroup of {} of order {}", self.spec, c.len()),
        }
    }
}

/// Closure check: grows the subgroup generated by `set`, one new generator
/// at a time, and fails as soon as a product leaves `set`.
fn check_closed<R: Residue>(parent: &Group<R>, set: &BTreeSet<Element<R>>) -> Result<()> {
    let identity = parent.identity();
    let mut reached: HashSet<Element<R>> = HashSet::from([identity.clone()]);
    let mut gens: Vec<Element<R>> = Vec::new();
    for s in set {
        if reached.contains(s) {
            continue;
        }
        gens.push(s.clone());
        let mut frontier: Vec<Element<R>> = reached.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = parent.op_unchecked(&x, g);
                if !set.contains(&y) {
                    return Err(Error::InvalidCarrier(format!("{x} * {g} = {y} is outside the set")));
                }
                if reached.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    Ok(())
}
