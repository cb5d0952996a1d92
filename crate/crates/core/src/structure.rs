//! Classification of finite abelian groups: element-order fingerprints,
//! prime-power element counts, primary decomposition, torsion coefficients,
//! candidate enumeration and isomorphism decisions.
//!
//! Counts and cyclic orders are plain `u64`; group elements may use any
//! [`Residue`] type.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Group, GroupSpec};
use crate::numt::{checked_pow, factorize, is_prime, valuation};
use crate::scalar::Residue;

/// Sorted multiset of element orders, one entry per element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrderMultiset(Vec<u64>);

impl OrderMultiset {
    pub fn from_orders(mut orders: Vec<u64>) -> Self {
        orders.sort_unstable();
        OrderMultiset(orders)
    }

    pub fn orders(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of elements of exactly order `k`.
    pub fn count_of(&self, k: u64) -> usize {
        let lo = self.0.partition_point(|&o| o < k);
        let hi = self.0.partition_point(|&o| o <= k);
        hi - lo
    }

    /// Number of elements whose order divides `k`.
    pub fn count_dividing(&self, k: u64) -> usize {
        self.0.iter().filter(|&&o| k.is_multiple_of(o)).count()
    }
}

impl fmt::Display for OrderMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(" "))
    }
}

/// Torsion coefficients `m1, m2, ..., mk`, largest first, each divisible by
/// the next. The trivial group has no factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InvariantFactors(Vec<u64>);

impl InvariantFactors {
    /// Checks the divisibility chain; accepts either orientation and stores
    /// the factors largest first.
    pub fn new(mut factors: Vec<u64>) -> Result<Self> {
        if let Some(&m) = factors.iter().find(|&&m| m < 2) {
            return Err(Error::domain(format!("invariant factors must be at least 2, got {m}")));
        }
        factors.sort_unstable_by(|a, b| b.cmp(a));
        if factors.windows(2).any(|w| w[0] % w[1] != 0) {
            return Err(Error::domain(format!("{factors:?} is not a divisibility chain")));
        }
        Ok(InvariantFactors(factors))
    }

    /// Largest first.
    pub fn factors(&self) -> &[u64] {
        &self.0
    }

    /// Smallest first, each dividing the next.
    pub fn ascending(&self) -> Vec<u64> {
        self.0.iter().rev().copied().collect()
    }

    pub fn group_order(&self) -> u64 {
        self.0.iter().product()
    }

    /// The additive product `Z_m1 x ... x Z_mk`. Fails for the trivial class.
    pub fn to_spec(&self) -> Result<GroupSpec<u64>> {
        GroupSpec::cyclic_product(&self.0)
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "Z_1");
        }
        write!(f, "{}", self.0.iter().map(|m| format!("Z_{m}")).join(" x "))
    }
}

/// For each prime, the exponents `a1 >= a2 >= ...` of the cyclic factors
/// `Z_{p^a1} x Z_{p^a2} x ...`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PrimaryDecomposition(BTreeMap<u64, Vec<u32>>);

impl PrimaryDecomposition {
    pub fn new(parts: BTreeMap<u64, Vec<u32>>) -> Self {
        let parts = parts
            .into_iter()
            .filter(|(_, es)| !es.is_empty())
            .map(|(p, mut es)| {
                es.sort_unstable_by(|a, b| b.cmp(a));
                (p, es)
            })
            .collect();
        PrimaryDecomposition(parts)
    }

    pub fn parts(&self) -> &BTreeMap<u64, Vec<u32>> {
        &self.0
    }

    pub fn exponents(&self, p: u64) -> &[u32] {
        self.0.get(&p).map_or(&[], Vec::as_slice)
    }

    /// All prime powers `p^a`, grouped by prime, largest first within a prime.
    pub fn prime_powers(&self) -> Vec<u64> {
        self.0
            .iter()
            .flat_map(|(&p, es)| es.iter().map(move |&e| p.pow(e)))
            .collect()
    }

    pub fn group_order(&self) -> u64 {
        self.prime_powers().iter().product()
    }
}

impl fmt::Display for PrimaryDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let powers = self.prime_powers();
        if powers.is_empty() {
            return write!(f, "Z_1");
        }
        write!(f, "{}", powers.iter().map(|q| format!("Z_{q}")).join(" x "))
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::domain(format!("{p} is not prime")))
    }
}

fn eta_with(p: u64, cap: u32, m: u64) -> Result<u64> {
    require_prime(p)?;
    if m == 0 {
        return Err(Error::domain("eta needs m >= 1"));
    }
    let b = valuation(p, m);
    checked_pow(p, cap.min(b)).ok_or_else(|| Error::Overflow(format!("{p}^{}", cap.min(b))))
}

/// `p^min(a, b)` where `p^b` exactly divides `m`.
pub fn eta(p: u64, a: u32, m: u64) -> Result<u64> {
    if a == 0 {
        return Err(Error::domain("eta needs a >= 1"));
    }
    eta_with(p, a, m)
}

/// `p^min(a - 1, b)` where `p^b` exactly divides `m`.
pub fn eta_minus(p: u64, a: u32, m: u64) -> Result<u64> {
    if a == 0 {
        return Err(Error::domain("eta_minus needs a >= 1"));
    }
    eta_with(p, a - 1, m)
}

/// Number of elements of order exactly `p^a` in `Z_m1 x ... x Z_mk`:
/// the product of `eta(p, a, mi)` minus the product of `eta_minus(p, a, mi)`.
pub fn count_order_pa(cyclic_orders: &[u64], p: u64, a: u32) -> Result<u64> {
    let mut upto = 1u64;
    let mut below = 1u64;
    for &m in cyclic_orders {
        upto = upto
            .checked_mul(eta(p, a, m)?)
            .ok_or_else(|| Error::Overflow("prime-power count".into()))?;
        below *= eta_minus(p, a, m)?;
    }
    Ok(upto - below)
}

pub fn order_multiset<R: Residue>(group: &Group<R>) -> OrderMultiset {
    OrderMultiset::from_orders(group.elements().map(|g| group.element_order_unchecked(&g)).collect())
}

/// Recovers the prime-power factors of `group` from its element orders.
pub fn primary_decomposition<R: Residue>(group: &Group<R>) -> Result<PrimaryDecomposition> {
    primary_decomposition_from_orders(&order_multiset(group))
}

/// Inverts the counts `D(a) = #{g : o(g) divides p^a}`. For a product of
/// cyclic p-groups with exponents `b_i`, `log_p D(a) - log_p D(a - 1)` is the
/// number of `b_i` that are at least `a`, so the exponents are the conjugate
/// of that sequence.
pub fn primary_decomposition_from_orders(orders: &OrderMultiset) -> Result<PrimaryDecomposition> {
    let n = orders.len() as u64;
    if n == 0 {
        return Err(Error::domain("empty order multiset"));
    }
    let mut parts = BTreeMap::new();
    for &(p, total) in factorize(n)?.pairs() {
        let mut ranks = Vec::new();
        let mut prev_log = 0u32;
        for a in 1..=total {
            let d = orders.count_dividing(p.pow(a)) as u64;
            let log = exact_log(p, d).ok_or_else(|| {
                Error::Inconsistent(format!("{d} elements have order dividing {p}^{a}, not a power of {p}"))
            })?;
            if log < prev_log {
                return Err(Error::Inconsistent("order-dividing counts decreased".into()));
            }
            ranks.push(log - prev_log);
            prev_log = log;
        }
        if prev_log != total {
            return Err(Error::Inconsistent(format!("{p}-part has size {p}^{prev_log}, expected {p}^{total}")));
        }
        let k = ranks.first().copied().unwrap_or(0);
        let exps: Vec<u32> =
            (1..=k).map(|j| ranks.iter().filter(|&&r| r >= j).count() as u32).collect();
        parts.insert(p, exps);
    }
    let decomposition = PrimaryDecomposition::new(parts);
    verify_counts(&decomposition, orders)?;
    Ok(decomposition)
}

/// Checks the reconstructed factors against the observed prime-power counts.
fn verify_counts(decomposition: &PrimaryDecomposition, orders: &OrderMultiset) -> Result<()> {
    let factors = decomposition.prime_powers();
    for (&p, es) in decomposition.parts() {
        for a in 1..=es[0] + 1 {
            let predicted = count_order_pa(&factors, p, a)?;
            let observed = orders.count_of(p.pow(a)) as u64;
            if predicted != observed {
                return Err(Error::Inconsistent(format!(
                    "order {p}^{a}: predicted {predicted} elements, observed {observed}"
                )));
            }
        }
    }
    Ok(())
}

fn exact_log(p: u64, mut d: u64) -> Option<u32> {
    let mut k = 0;
    while d > 1 {
        if !d.is_multiple_of(p) {
            return None;
        }
        d /= p;
        k += 1;
    }
    (d == 1).then_some(k)
}

/// Canonical torsion coefficients of `Z_c1 x ... x Z_cr`: split every order
/// into prime powers, then repeatedly multiply together the largest remaining
/// power of each prime.
pub fn torsion_coefficients(cyclic_orders: &[u64]) -> Result<InvariantFactors> {
    if cyclic_orders.is_empty() {
        return Err(Error::domain("torsion coefficients need at least one cyclic order"));
    }
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &c in cyclic_orders {
        if c < 2 {
            return Err(Error::domain(format!("cyclic orders must be at least 2, got {c}")));
        }
        for &(p, e) in factorize(c)?.pairs() {
            by_prime.entry(p).or_default().push(p.pow(e));
        }
    }
    Ok(merge_prime_powers(by_prime))
}

fn merge_prime_powers(mut by_prime: BTreeMap<u64, Vec<u64>>) -> InvariantFactors {
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
    }
    let rounds = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let factors = (0..rounds)
        .map(|r| by_prime.values().filter_map(|ps| ps.get(r)).product())
        .collect();
    InvariantFactors(factors)
}

pub fn invariant_factors_of<R: Residue>(group: &Group<R>) -> Result<InvariantFactors> {
    Ok(invariant_factors_from_primary(&primary_decomposition(group)?))
}

pub fn invariant_factors_from_primary(decomposition: &PrimaryDecomposition) -> InvariantFactors {
    let by_prime = decomposition
        .parts()
        .iter()
        .map(|(&p, es)| (p, es.iter().map(|&e| p.pow(e)).collect()))
        .collect();
    merge_prime_powers(by_prime)
}

/// Partitions of `k`, each listed largest part first, in lexicographically
/// descending order: `[4], [3, 1], [2, 2], [2, 1, 1], [1, 1, 1, 1]`.
pub fn integer_partitions(k: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            rec(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

/// One set of invariant factors per isomorphism class of abelian groups of
/// order `n`, sorted descending (the cyclic group comes first).
pub fn abelian_groups_of_order(n: u64) -> Result<Vec<InvariantFactors>> {
    if n == 0 {
        return Err(Error::domain("group order must be at least 1"));
    }
    let fact = factorize(n)?;
    let per_prime: Vec<Vec<(u64, Vec<u32>)>> = fact
        .pairs()
        .iter()
        .map(|&(p, e)| integer_partitions(e).into_iter().map(|part| (p, part)).collect())
        .collect();
    let mut classes: Vec<InvariantFactors> = per_prime
        .into_iter()
        .multi_cartesian_product()
        .map(|choice| {
            let by_prime = choice
                .into_iter()
                .map(|(p, part)| (p, part.into_iter().map(|e| p.pow(e)).collect()))
                .collect();
            merge_prime_powers(by_prime)
        })
        .collect();
    if classes.is_empty() {
        // n = 1: the trivial group.
        classes.push(InvariantFactors(Vec::new()));
    }
    classes.sort_unstable_by(|a, b| b.cmp(a));
    classes.dedup();
    Ok(classes)
}

/// Fingerprint of one group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub order: u64,
    pub order_multiset: OrderMultiset,
    pub primary: PrimaryDecomposition,
    pub invariant_factors: InvariantFactors,
}

pub fn classify<R: Residue>(group: &Group<R>) -> Result<Classification> {
    let order_multiset = order_multiset(group);
    let primary = primary_decomposition_from_orders(&order_multiset)?;
    let invariant_factors = invariant_factors_from_primary(&primary);
    Ok(Classification { order: group.order() as u64, order_multiset, primary, invariant_factors })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCertificate {
    pub isomorphic: bool,
    pub left: Classification,
    pub right: Classification,
}

/// Decides isomorphism by comparing order multisets; the certificate also
/// carries both groups' invariant factors, which must agree with the verdict.
pub fn is_isomorphic<R: Residue, S: Residue>(g: &Group<R>, h: &Group<S>) -> Result<IsoCertificate> {
    let left = classify(g)?;
    let right = classify(h)?;
    let isomorphic = left.order == right.order && left.order_multiset == right.order_multiset;
    if isomorphic != (left.invariant_factors == right.invariant_factors) {
        return Err(Error::Inconsistent(format!(
            "order multisets {} but invariant factors {} vs {}",
            if isomorphic { "agree" } else { "differ" },
            left.invariant_factors,
            right.invariant_factors
        )));
    }
    Ok(IsoCertificate { isomorphic, left, right })
}
