//! The preserved conjecture counterexamples, re-validated by brute force in
//! coordinates and re-found by the checks.

mod common;

use std::collections::BTreeSet;

use common::Naive;
use serde::Deserialize;
use zslab::verify::{check_conjecture5, check_conjecture6, CheckStatus};
use zslab::{Config, GroupElement, GroupSpec, Sequence};

#[derive(Deserialize)]
struct Fixture {
    conjecture: u8,
    p: u64,
    k: u32,
    sequence: serde_json::Value,
}

fn load() -> Vec<Fixture> {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/conjecture_counterexamples.json"
    );
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn labeled(s: &Sequence) -> Vec<GroupElement> {
    s.iter()
        .flat_map(|(g, m)| std::iter::repeat(g.clone()).take(m as usize))
        .collect()
}

/// Some nonempty labeled `T₀` with fewer than `p` terms has a sum that no
/// other labeled subsequence attains.
fn conj5_naive(n: &Naive, t: &[GroupElement], p: u64) -> bool {
    let sums: Vec<GroupElement> = (1u64..1 << t.len())
        .map(|mask| {
            let chosen: Vec<_> = (0..t.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| t[i].clone())
                .collect();
            n.sum(&chosen)
        })
        .collect();
    (1u64..1 << t.len()).any(|mask| {
        mask.count_ones() < p as u32 && sums.iter().filter(|s| **s == sums[mask as usize - 1]).count() == 1
    })
}

/// Some cyclic `H` meets `T`, and misses every subsum of the terms outside it.
fn conj6_naive(n: &Naive, t: &[GroupElement]) -> bool {
    n.elems.iter().any(|g| {
        let h: BTreeSet<GroupElement> = (0..n.group.order_of(g) as i64)
            .map(|m| n.group.smul(m, g).unwrap())
            .collect();
        if !t.iter().any(|x| h.contains(x)) {
            return false;
        }
        let rest: Vec<_> = t.iter().filter(|x| !h.contains(*x)).cloned().collect();
        n.subsums_bruteforce(&rest).is_disjoint(&h)
    })
}

#[test]
fn counterexamples_are_genuine() {
    for f in load() {
        let g = GroupSpec::elementary(f.p, f.k as usize).unwrap();
        let n = Naive::new(&g);
        let s = Sequence::from_literal(&g, &f.sequence.to_string()).unwrap();
        let t = labeled(&s);
        assert!(n.is_zero_sum_free(&t), "{s} is not zero-sum free");
        assert!(!n.subsums_bruteforce(&t).contains(&g.zero()));
        let holds = match f.conjecture {
            5 => conj5_naive(&n, &t, f.p),
            6 => conj6_naive(&n, &t),
            other => panic!("unknown conjecture {other}"),
        };
        assert!(!holds, "conjecture {} holds for {s}", f.conjecture);
    }
}

#[test]
fn checks_find_the_fixtures_at_the_shortest_length() {
    let cfg = Config::single_threaded();
    for f in load() {
        let g = GroupSpec::elementary(f.p, f.k as usize).unwrap();
        let s = Sequence::from_literal(&g, &f.sequence.to_string()).unwrap();
        let len = s.length();
        let check = |cap| match f.conjecture {
            5 => check_conjecture5(f.p, f.k, cap, 0, &cfg).unwrap(),
            _ => check_conjecture6(f.p, f.k, cap, 0, &cfg).unwrap(),
        };
        assert_eq!(check(len - 1).status, CheckStatus::Pass);
        let at = check(len);
        assert_eq!(at.status, CheckStatus::Fail);
        assert_eq!(at.details["exhaustive"]["shortest_counterexample_len"], len);
        assert_eq!(at.witnesses[0].sequence.length(), len);
    }
}

#[test]
fn naive_predicates_agree_with_checks_on_small_groups() {
    // Every zero-sum free sequence over C₂³ and C₃² satisfies both.
    for (p, k) in [(2, 3), (3, 2)] {
        let g = GroupSpec::elementary(p, k).unwrap();
        let n = Naive::new(&g);
        for m in n.zero_sum_free().iter().filter(|m| !m.is_empty()) {
            let t = n.items(m);
            assert!(conj5_naive(&n, &t, p), "conj5 {:?}", t);
            assert!(conj6_naive(&n, &t), "conj6 {:?}", t);
        }
        let cfg = Config::single_threaded();
        assert!(check_conjecture5(p, k as u32, 6, 0, &cfg).unwrap().passed());
        assert!(check_conjecture6(p, k as u32, 6, 0, &cfg).unwrap().passed());
    }
}
