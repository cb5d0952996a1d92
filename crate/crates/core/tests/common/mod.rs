//! Independent oracles shared by the integration tests. None of these call
//! the analytic routines they are used to check.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use abelian::{ComponentKind, ComponentSpec, Element, Group, GroupSpec};
use rand::rngs::StdRng;
use rand::Rng;

pub fn add(n: u64) -> Group {
    Group::new(GroupSpec::single(ComponentSpec::additive(n).unwrap())).unwrap()
}

pub fn mult(n: u64) -> Group {
    Group::new(GroupSpec::single(ComponentSpec::multiplicative(n).unwrap())).unwrap()
}

pub fn product(parts: &[(ComponentKind, u64)]) -> Group {
    let comps = parts.iter().map(|&(k, n)| ComponentSpec::new(k, n).unwrap()).collect();
    Group::new(GroupSpec::new(comps).unwrap()).unwrap()
}

pub fn cyclic(orders: &[u64]) -> Group {
    Group::new(GroupSpec::cyclic_product(orders).unwrap()).unwrap()
}

pub fn scalars(rs: &[u64]) -> Vec<Element> {
    rs.iter().map(|&r| Element::scalar(r)).collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// phi(n) by counting `1 <= a <= n` coprime to `n`.
pub fn phi_by_count(n: u64) -> u64 {
    (1..=n).filter(|&a| gcd(a, n) == 1).count() as u64
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Order by repeatedly applying the operation until the identity returns.
pub fn order_by_iteration(g: &Group, x: &Element) -> u64 {
    let id = g.identity();
    let mut cur = x.clone();
    let mut k = 1;
    while cur != id {
        cur = g.op(&cur, x).unwrap();
        k += 1;
    }
    k
}

pub fn orders_by_iteration(g: &Group) -> Vec<u64> {
    g.elements().map(|x| order_by_iteration(g, &x)).collect()
}

/// Closure of `set` under the operation by naive fixed-point iteration.
pub fn fixed_point_closure(g: &Group, set: &[Element]) -> BTreeSet<Element> {
    let mut acc: BTreeSet<Element> = set.iter().cloned().collect();
    loop {
        let snapshot: Vec<Element> = acc.iter().cloned().collect();
        let before = acc.len();
        for a in &snapshot {
            for b in &snapshot {
                acc.insert(g.op(a, b).unwrap());
            }
        }
        if acc.len() == before {
            return acc;
        }
    }
}

/// Number of partitions of `k` by the standard `p(n, max part)` recurrence.
pub fn partition_count(k: u32) -> usize {
    fn p(n: u32, max: u32) -> usize {
        if n == 0 {
            return 1;
        }
        (1..=n.min(max)).map(|part| p(n - part, part)).sum()
    }
    p(k, k)
}

/// Peels off one largest cyclic p-factor at a time. With `D(j)` the number of
/// elements of order dividing `p^j`, splitting off `Z_{p^a}` divides `D(j)`
/// by `p^min(j, a)`. Returns exponents per prime, largest first.
pub fn peel_decomposition(orders: &[u64]) -> BTreeMap<u64, Vec<u32>> {
    let n = orders.len() as u64;
    let mut out = BTreeMap::new();
    for p in (2..=n).filter(|&p| is_prime(p) && n.is_multiple_of(p)) {
        let mut total = 0u32;
        let mut m = n;
        while m.is_multiple_of(p) {
            m /= p;
            total += 1;
        }
        let mut d: Vec<u64> = (0..=total)
            .map(|j| orders.iter().filter(|&&o| p.pow(j) % o == 0).count() as u64)
            .collect();
        let mut exps = Vec::new();
        while d[total as usize] > 1 {
            let top = d[total as usize];
            let a = (0..=total).find(|&j| d[j as usize] == top).unwrap();
            exps.push(a);
            for j in 0..=total {
                d[j as usize] /= p.pow(j.min(a));
            }
        }
        out.insert(p, exps);
    }
    out
}

/// A random product of 1 to `max_parts` components with order at most `max_order`.
pub fn random_group(rng: &mut StdRng, max_parts: usize, max_order: usize) -> Group {
    loop {
        let parts = rng.gen_range(1..=max_parts);
        let comps: Vec<(ComponentKind, u64)> = (0..parts)
            .map(|_| {
                let kind = if rng.gen_bool(0.5) {
                    ComponentKind::Additive
                } else {
                    ComponentKind::Multiplicative
                };
                (kind, rng.gen_range(2..=64))
            })
            .collect();
        let g = product(&comps);
        if g.order() <= max_order {
            return g;
        }
    }
}

pub fn random_subset(rng: &mut StdRng, g: &Group, size: usize) -> Vec<Element> {
    let els: Vec<Element> = g.elements().collect();
    (0..size).map(|_| els[rng.gen_range(0..els.len())].clone()).collect()
}

/// All `(n,+)` and `(n,x)` for `2 <= n <= max_n`.
pub fn basic_corpus(max_n: u64) -> Vec<Group> {
    (2..=max_n).flat_map(|n| [add(n), mult(n)]).collect()
}
