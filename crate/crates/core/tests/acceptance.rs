//! Acceptance criteria. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use abelian::structure::{
    abelian_groups_of_order, count_order_pa, invariant_factors_of, is_isomorphic, order_multiset,
    torsion_coefficients,
};
use abelian::subgroup::{cycle, generate, is_subgroup};
use abelian::{numt, ComponentKind, Element, Error, Group, GroupSpec, MembershipReason};
use common::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure_eq {
    ($left:expr, $right:expr, $($ctx:tt)+) => {{
        let (l, r) = (&$left, &$right);
        if l != r {
            return Err(format!("{}: {:?} != {:?}", format!($($ctx)+), l, r));
        }
    }};
}

fn tuple(a: u64, b: u64) -> Element {
    Element::new(vec![a, b])
}

fn ok<T>(r: abelian::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn orders_of(g: &Group, els: &[Element]) -> Result<Vec<u64>, String> {
    els.iter().map(|x| ok(g.element_order(x))).collect()
}

/// Golden values for the additive, multiplicative, subgroup and product
/// examples.
fn golden_fixtures() -> Check {
    // (10,+)
    let g = add(10);
    ensure_eq!(g.elements().collect::<Vec<_>>(), scalars(&(0..10).collect::<Vec<_>>()), "(10,+) elements");
    ensure_eq!(g.identity(), Element::scalar(0), "(10,+) identity");
    ensure_eq!(g.order(), 10, "(10,+) order");
    ensure_eq!(ok(g.inv(&Element::scalar(3)))?, Element::scalar(7), "(10,+) inv 3");
    ensure_eq!(ok(g.op(&Element::scalar(7), &Element::scalar(6)))?, Element::scalar(3), "(10,+) 7*6");
    ensure_eq!(ok(g.pow(&Element::scalar(7), 3))?, Element::scalar(1), "(10,+) 7^3");
    let els: Vec<Element> = g.elements().collect();
    ensure_eq!(orders_of(&g, &els)?, vec![1, 10, 5, 10, 5, 2, 5, 10, 5, 10], "(10,+) element orders");

    // (15,x)
    let h = mult(15);
    let h_els = scalars(&[1, 2, 4, 7, 8, 11, 13, 14]);
    ensure_eq!(h.elements().collect::<Vec<_>>(), h_els, "(15,x) elements");
    ensure_eq!(h.identity(), Element::scalar(1), "(15,x) identity");
    ensure_eq!(h.order(), 8, "(15,x) order");
    ensure_eq!(ok(h.inv(&Element::scalar(2)))?, Element::scalar(8), "(15,x) inv 2");
    ensure_eq!(ok(h.pow(&Element::scalar(2), 10))?, Element::scalar(4), "(15,x) 2^10");
    ensure_eq!(orders_of(&h, &h_els)?, vec![1, 4, 2, 4, 4, 2, 4, 2], "(15,x) element orders");
    // Excluded line: 10 is not a unit mod 15, so the product is rejected.
    match h.op(&Element::scalar(2), &Element::scalar(10)) {
        Err(Error::Membership { reason: MembershipReason::NotCoprime { .. }, .. }) => {}
        other => return Err(format!("(15,x) 2*10 should be a membership error, got {other:?}")),
    }

    // (120,+) with <60, 30, 15>
    let g = add(120);
    ensure_eq!(ok(cycle(&g, &Element::scalar(60)))?, scalars(&[60, 0]), "60 cycle");
    ensure_eq!(ok(cycle(&g, &Element::scalar(30)))?, scalars(&[30, 60, 90, 0]), "30 cycle");
    ensure_eq!(ok(cycle(&g, &Element::scalar(15)))?, scalars(&[15, 30, 45, 60, 75, 90, 105, 0]), "15 cycle");
    let s = ok(generate(&g, &scalars(&[60, 30, 15])))?;
    let expect: BTreeSet<Element> = scalars(&[0, 105, 75, 45, 15, 90, 60, 30]).into_iter().collect();
    ensure_eq!(s.carrier().iter().cloned().collect::<BTreeSet<_>>(), expect, "<60,30,15> carrier");
    let sub = s.as_group();
    ensure_eq!(sub.identity(), Element::scalar(0), "<60,30,15> identity");
    ensure_eq!(s.order(), 8, "<60,30,15> order");
    ensure_eq!(ok(sub.inv(&Element::scalar(15)))?, Element::scalar(105), "<60,30,15> inv 15");
    ensure_eq!(ok(sub.op(&Element::scalar(15), &Element::scalar(30)))?, Element::scalar(45), "15*30");
    ensure_eq!(ok(sub.pow(&Element::scalar(15), 3))?, Element::scalar(45), "15^3");
    let listed = scalars(&[0, 105, 75, 45, 15, 90, 60, 30]);
    ensure_eq!(orders_of(sub, &listed)?, vec![1, 8, 8, 8, 8, 4, 2, 4], "<60,30,15> element orders");

    // (64,x) with <17, 7>
    let g = mult(64);
    ensure_eq!(ok(cycle(&g, &Element::scalar(17)))?, scalars(&[17, 33, 49, 1]), "17 cycle");
    ensure_eq!(ok(cycle(&g, &Element::scalar(7)))?, scalars(&[7, 49, 23, 33, 39, 17, 55, 1]), "7 cycle");
    let s = ok(generate(&g, &scalars(&[17, 7])))?;
    let expect: BTreeSet<Element> = scalars(&[1, 17, 33, 7, 49, 23, 55, 39]).into_iter().collect();
    ensure_eq!(s.carrier().iter().cloned().collect::<BTreeSet<_>>(), expect, "<17,7> carrier");
    ensure_eq!(s.as_group().identity(), Element::scalar(1), "<17,7> identity");
    ensure_eq!(s.order(), 8, "<17,7> order");
    if s.contains(&Element::scalar(25)) {
        return Err("25 must lie outside <17,7>".into());
    }
    // Element orders agree with the printed cycle lengths.
    ensure_eq!(ok(s.as_group().element_order(&Element::scalar(17)))?, 4, "<17,7> order of 17");
    ensure_eq!(ok(s.as_group().element_order(&Element::scalar(7)))?, 8, "<17,7> order of 7");

    // (5,+) x (9,x)
    let g = product(&[(ComponentKind::Additive, 5), (ComponentKind::Multiplicative, 9)]);
    let table: Vec<Element> =
        (0..5).flat_map(|a| [1, 2, 4, 5, 7, 8].into_iter().map(move |b| tuple(a, b))).collect();
    ensure_eq!(g.elements().collect::<Vec<_>>(), table, "(5,+)x(9,x) table");
    ensure_eq!(g.identity(), tuple(0, 1), "(5,+)x(9,x) identity");
    ensure_eq!(g.order(), 30, "(5,+)x(9,x) order");
    let e3 = g.nth_element(2).unwrap();
    ensure_eq!(e3, tuple(0, 4), "element 3");
    ensure_eq!(ok(g.inv(&e3))?, tuple(0, 7), "inv element 3");
    let (e7, e6) = (g.nth_element(6).unwrap(), g.nth_element(5).unwrap());
    ensure_eq!((e7.clone(), e6.clone()), (tuple(1, 1), tuple(0, 8)), "elements 7 and 6");
    ensure_eq!(ok(g.op(&e7, &e6))?, tuple(1, 8), "element 7 * element 6");
    ensure_eq!(ok(g.pow(&e7, 3))?, tuple(3, 1), "element 7 ^ 3");
    let mut expect_orders = vec![1, 6, 3, 6, 3, 2];
    for _ in 0..4 {
        expect_orders.extend([5, 30, 15, 30, 15, 10]);
    }
    ensure_eq!(orders_of(&g, &table)?, expect_orders, "(5,+)x(9,x) element orders");

    // (6,+) x (9,x) with <[0,2], [3,5]>
    let g = product(&[(ComponentKind::Additive, 6), (ComponentKind::Multiplicative, 9)]);
    let (g2, g22) = (g.nth_element(1).unwrap(), g.nth_element(21).unwrap());
    ensure_eq!((g2.clone(), g22.clone()), (tuple(0, 2), tuple(3, 5)), "elements 2 and 22");
    let c2: Vec<Element> = [(0, 2), (0, 4), (0, 8), (0, 7), (0, 5), (0, 1)].iter().map(|&(a, b)| tuple(a, b)).collect();
    let c22: Vec<Element> = [(3, 5), (0, 7), (3, 8), (0, 4), (3, 2), (0, 1)].iter().map(|&(a, b)| tuple(a, b)).collect();
    ensure_eq!(ok(cycle(&g, &g2))?, c2, "[0,2] cycle");
    ensure_eq!(ok(cycle(&g, &g22))?, c22, "[3,5] cycle");
    let s = ok(generate(&g, &[g2, g22]))?;
    let listed: Vec<Element> = [(0, 1), (3, 2), (3, 1), (0, 7), (3, 8), (0, 5), (0, 4), (3, 7), (0, 8), (3, 4), (0, 2), (3, 5)]
        .iter()
        .map(|&(a, b)| tuple(a, b))
        .collect();
    ensure_eq!(
        s.carrier().iter().cloned().collect::<BTreeSet<_>>(),
        listed.iter().cloned().collect::<BTreeSet<_>>(),
        "<[0,2],[3,5]> carrier"
    );
    let sub = s.as_group();
    ensure_eq!(sub.identity(), tuple(0, 1), "subgroup identity");
    ensure_eq!(s.order(), 12, "subgroup order");
    ensure_eq!(ok(sub.inv(&tuple(3, 1)))?, tuple(3, 1), "inv [3,1]");
    ensure_eq!(ok(sub.op(&tuple(0, 4), &tuple(0, 5)))?, tuple(0, 2), "[0,4]*[0,5]");
    ensure_eq!(ok(sub.pow(&tuple(0, 4), 3))?, tuple(0, 1), "[0,4]^3");
    ensure_eq!(orders_of(sub, &listed)?, vec![1, 6, 2, 3, 2, 6, 3, 6, 2, 6, 6, 6], "subgroup element orders");
    Ok(())
}

fn classification_reproduction() -> Check {
    use ComponentKind::Additive as A;
    let target = mult(32);
    let candidates = [
        ("(16,+)", product(&[(A, 16)]), vec![1, 2, 4, 4, 8, 8, 8, 8, 16, 16, 16, 16, 16, 16, 16, 16]),
        ("(8,+)x(2,+)", product(&[(A, 8), (A, 2)]), vec![1, 2, 2, 2, 4, 4, 4, 4, 8, 8, 8, 8, 8, 8, 8, 8]),
        ("(4,+)x(2,+)x(2,+)", product(&[(A, 4), (A, 2), (A, 2)]), vec![1, 2, 2, 2, 2, 2, 2, 2, 4, 4, 4, 4, 4, 4, 4, 4]),
        ("(2,+)^4", product(&[(A, 2), (A, 2), (A, 2), (A, 2)]), vec![1u64, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2]),
    ];
    ensure_eq!(target.order(), 16, "(32,x) order");
    ensure_eq!(
        order_multiset(&target).orders().to_vec(),
        vec![1, 2, 2, 2, 4, 4, 4, 4, 8, 8, 8, 8, 8, 8, 8, 8],
        "(32,x) sorted orders"
    );
    for (name, g, expect) in &candidates {
        ensure_eq!(order_multiset(g).orders().to_vec(), *expect, "{name} sorted orders");
        let verdict = ok(is_isomorphic(&target, g))?.isomorphic;
        ensure_eq!(verdict, *name == "(8,+)x(2,+)", "(32,x) vs {name}");
    }
    Ok(())
}

fn torsion_example() -> Check {
    ensure_eq!(ok(torsion_coefficients(&[24, 32, 42]))?.factors().to_vec(), vec![672, 24, 2], "Z24 x Z32 x Z42");
    Ok(())
}

fn check_prime_power_counts(g: &Group) -> Check {
    let factors = ok(invariant_factors_of(g))?;
    let orders = orders_by_iteration(g);
    let n = g.order() as u64;
    for p in (2..=n).filter(|&p| is_prime(p)) {
        let mut a = 1;
        while p.pow(a) <= n {
            let brute = orders.iter().filter(|&&o| o == p.pow(a)).count() as u64;
            ensure_eq!(ok(count_order_pa(factors.factors(), p, a))?, brute, "{g}: order {p}^{a}");
            a += 1;
        }
    }
    Ok(())
}

fn prime_power_count_oracle() -> Check {
    for g in basic_corpus(100) {
        check_prime_power_counts(&g)?;
    }
    let mut rng = StdRng::seed_from_u64(0xacce);
    let mut products = 0;
    while products < 30 {
        let g = random_group(&mut rng, 3, 500);
        if g.components().len() < 2 {
            continue;
        }
        check_prime_power_counts(&g)?;
        products += 1;
    }
    Ok(())
}

fn cyclic_count_lemma() -> Check {
    for n in 2..=100u64 {
        let g = add(n);
        let orders: Vec<u64> = g.elements().map(|x| g.element_order(&x).unwrap()).collect();
        for m in (1..=n).filter(|m| n % m == 0) {
            let count = orders.iter().filter(|&&o| o == m).count() as u64;
            ensure_eq!(count, ok(numt::euler_phi(m))?, "(n,+) n = {n}, order {m}");
        }
    }
    for n in 1..=10_000u64 {
        ensure_eq!(ok(numt::euler_phi(n))?, phi_by_count(n), "phi({n})");
    }
    Ok(())
}

fn subgroup_oracle() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5b6);
    let mut negatives = 0;
    for i in 0..200 {
        let g = random_group(&mut rng, 3, 200);
        let k = rng.gen_range(1..=3);
        let s = random_subset(&mut rng, &g, k);
        let sub = ok(generate(&g, &s))?;
        let carrier: BTreeSet<Element> = sub.carrier().iter().cloned().collect();
        ensure_eq!(carrier, fixed_point_closure(&g, &s), "instance {i}: {g} {s:?}");
        ensure_eq!(ok(is_subgroup(&g, sub.carrier()))?, true, "instance {i}: carrier passes criterion");
        let s_set: BTreeSet<Element> = s.iter().cloned().collect();
        ensure_eq!(ok(is_subgroup(&g, &s))?, s_set == carrier, "instance {i}: criterion on generators");
        // Mutate a proper subgroup: the generated one, else the cyclic one of the first generator.
        let base: BTreeSet<Element> = if carrier.len() < g.order() {
            carrier.clone()
        } else {
            ok(generate(&g, &s[..1]))?.carrier().iter().cloned().collect()
        };
        if base.len() < g.order() {
            let outside: Vec<Element> = g.elements().filter(|x| !base.contains(x)).collect();
            let mut mutated: Vec<Element> = base.iter().cloned().collect();
            mutated.push(outside[rng.gen_range(0..outside.len())].clone());
            let mutated_set: BTreeSet<Element> = mutated.iter().cloned().collect();
            let regenerated: BTreeSet<Element> = ok(generate(&g, &mutated))?.carrier().iter().cloned().collect();
            let verdict = ok(is_subgroup(&g, &mutated))?;
            ensure_eq!(verdict, regenerated == mutated_set, "instance {i}: mutated criterion");
            if !verdict {
                negatives += 1;
            }
        }
    }
    if negatives < 100 {
        return Err(format!("only {negatives} negative cases exercised"));
    }
    Ok(())
}

fn classification_round_trip() -> Check {
    let trivial = ok(Group::with_carrier(add(2).spec().clone(), [Element::scalar(0)]))?;
    for n in 1..=256u64 {
        let classes = ok(abelian_groups_of_order(n))?;
        let mut multisets = BTreeSet::new();
        let mut fingerprints = BTreeSet::new();
        for class in &classes {
            let g = if class.factors().is_empty() {
                trivial.clone()
            } else {
                ok(Group::new(ok(GroupSpec::cyclic_product(class.factors()))?))?
            };
            ensure_eq!(ok(invariant_factors_of(&g))?, *class, "order {n}");
            multisets.insert(order_multiset(&g));
            let fp: Vec<u64> = (2..=n)
                .filter(|&p| is_prime(p))
                .flat_map(|p| (1..=8).map(move |a| (p, a)))
                .filter(|&(p, a)| p.pow(a) <= n)
                .map(|(p, a)| count_order_pa(class.factors(), p, a).unwrap())
                .collect();
            fingerprints.insert(fp);
        }
        ensure_eq!(multisets.len(), classes.len(), "order {n}: distinct order multisets");
        ensure_eq!(fingerprints.len(), classes.len(), "order {n}: distinct analytic counts");
    }
    Ok(())
}

fn candidate_counts() -> Check {
    let expected = [1usize, 1, 2, 3, 5, 7, 11];
    for p in [2u64, 3] {
        for k in 0..=6u32 {
            let count = ok(abelian_groups_of_order(p.pow(k)))?.len();
            ensure_eq!(count, expected[k as usize], "classes of order {p}^{k}");
            ensure_eq!(count, partition_count(k), "partition oracle for k = {k}");
        }
    }
    ensure_eq!(ok(abelian_groups_of_order(16))?.len(), 5, "classes of order 16");
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 golden fixtures for worked examples", golden_fixtures),
        ("2 classification of (32,x) against order-16 candidates", classification_reproduction),
        ("3 torsion coefficients of Z24 x Z32 x Z42", torsion_example),
        ("4 prime-power counts equal enumeration", prime_power_count_oracle),
        ("5 cyclic order counts equal phi; phi equals coprime count", cyclic_count_lemma),
        ("6 generated subgroups equal fixed-point closure", subgroup_oracle),
        ("7 classification round trip for orders up to 256", classification_round_trip),
        ("8 class counts equal partition counts", candidate_counts),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let ms = start.elapsed().as_millis();
        match result {
            Ok(()) => println!("PASS  criterion {name} ({ms} ms)"),
            Err(e) => {
                failed += 1;
                println!("FAIL  criterion {name} ({ms} ms): {e}");
            }
        }
    }
    println!("{} of {} acceptance criteria passed", 8 - failed, 8);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
