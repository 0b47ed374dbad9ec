//! Solvers against exhaustive enumeration on every group of order at most 12.

mod common;

use common::{groups_up_to, Naive};
use zslab::factor::{enumerate_irreducibles, is_irreducible, is_ufis};
use zslab::invariants::{
    all_dense_witnesses, dense_witness, solve_K1, solve_big_K, solve_davenport, solve_little_k,
    solve_narkiewicz, DenseKind,
};
use zslab::sumset::is_zero_sum_free;
use zslab::{Caps, Config, Rational, WeightFunction};

const MAX_ORDER: u64 = 12;

fn cfg() -> Config {
    Config::single_threaded()
}

fn wide_caps() -> Caps {
    Caps {
        group_cap: 1 << 12,
        oracle_len_cap: 24,
    }
}

#[test]
fn zero_sum_free_objectives_match_enumeration() {
    for g in groups_up_to(MAX_ORDER) {
        let n = Naive::new(&g);
        let zsf = n.zero_sum_free();
        for w in [WeightFunction::Cross, WeightFunction::Dyadic] {
            let want = n.best(&zsf, &w);
            let got = solve_little_k(&g, &w, &cfg()).unwrap();
            assert_eq!(got.value, want.value, "k({g}, {})", w.name());
            assert_eq!(got.witness, want.witness, "k({g}, {}) witness", w.name());
        }
        let dense = n.best(&zsf, &WeightFunction::Cross);
        let got = dense_witness(&g, DenseKind::Zsf, &cfg()).unwrap();
        assert_eq!(got.witness, dense.witness, "dense zsf {g}");
        let all = all_dense_witnesses(&g, DenseKind::Zsf, &cfg()).unwrap();
        assert_eq!(all.witnesses, dense.ties, "all dense zsf {g}");
        for s in &all.witnesses {
            assert!(is_zero_sum_free(s, 1 << 12).unwrap());
        }
    }
}

#[test]
fn irreducible_objectives_match_enumeration() {
    for g in groups_up_to(MAX_ORDER) {
        let n = Naive::new(&g);
        let irr = n.irreducibles();

        let listed: Vec<_> = {
            let mut v: Vec<_> = enumerate_irreducibles(&g, g.order() as usize, 1 << 12)
                .unwrap()
                .into_iter()
                .map(|s| s.to_indices())
                .collect();
            v.sort();
            v
        };
        let mut want: Vec<_> = irr.iter().map(|m| n.sequence(m).to_indices()).collect();
        want.sort();
        assert_eq!(listed, want, "irreducibles of {g}");

        let got = solve_big_K(&g, &cfg()).unwrap();
        if irr.is_empty() {
            assert_eq!(got.value, Rational::zero());
            assert!(got.witness.is_empty());
        } else {
            let best = n.best(&irr, &WeightFunction::Cross);
            assert_eq!(got.value, best.value, "K({g})");
            assert_eq!(got.witness, best.witness, "K({g}) witness");
            assert!(is_irreducible(&got.witness, 1 << 12).unwrap());
        }

        let d = solve_davenport(&g, &cfg()).unwrap();
        let longest = irr.iter().map(|m| m.len()).max().unwrap_or(0);
        assert_eq!(d.value, Rational::integer(longest as i64), "D({g})");
        assert_eq!(d.witness.length() as usize, longest);
    }
}

#[test]
fn ufis_objectives_match_enumeration() {
    for g in groups_up_to(MAX_ORDER) {
        let n = Naive::new(&g);
        let ufis = n.ufis();
        for w in [WeightFunction::Cross, WeightFunction::Dyadic] {
            let want = n.best(&ufis, &w);
            let got = solve_K1(&g, &w, &cfg()).unwrap();
            assert_eq!(got.value, want.value, "K1({g}, {})", w.name());
            assert_eq!(got.witness, want.witness, "K1({g}, {}) witness", w.name());
            assert!(is_ufis(&got.witness, &wide_caps()).unwrap());
        }
        let want = n.best(&ufis, &WeightFunction::Length);
        let got = solve_narkiewicz(&g, &cfg()).unwrap();
        assert_eq!(got.value, want.value, "N1({g})");
        assert_eq!(got.witness, want.witness, "N1({g}) witness");

        let dense = n.best(&ufis, &WeightFunction::Cross);
        let all = all_dense_witnesses(&g, DenseKind::Ufis, &cfg()).unwrap();
        assert_eq!(all.value, dense.value, "dense ufis {g}");
        assert_eq!(all.witnesses, dense.ties, "all dense ufis {g}");
        for s in &all.witnesses {
            assert!(is_ufis(s, &wide_caps()).unwrap());
        }
    }
}

#[test]
fn subsum_dp_matches_subset_enumeration() {
    for g in groups_up_to(8) {
        let n = Naive::new(&g);
        for m in n.zero_sum_free().iter().chain(n.irreducibles().iter()) {
            let items = n.items(m);
            let s = n.sequence(m);
            let dp = zslab::sumset::sumset(&s, 1 << 12).unwrap();
            assert_eq!(dp, n.subsums_bruteforce(&items), "{g} {s}");
        }
    }
}
