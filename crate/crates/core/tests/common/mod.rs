//! Brute-force oracles for the integration tests. Nothing here uses the
//! crate's lookup tables, bitsets or search engines: subsums are explicit
//! sets of group elements, and feasible sequences are found by plain
//! enumeration of multisets.

#![allow(dead_code)]

use std::collections::BTreeSet;

use zslab::factor::count_factorizations;
use zslab::{Caps, GroupElement, GroupSpec, Rational, Sequence, WeightFunction};

pub struct Naive {
    pub group: GroupSpec,
    /// Nonzero elements in linear-index order.
    pub elems: Vec<GroupElement>,
}

/// A feasible multiset as positions into `Naive::elems`, nondecreasing.
pub type Multiset = Vec<usize>;

impl Naive {
    pub fn new(group: &GroupSpec) -> Self {
        let elems = group.nonzero_elements(1 << 12).expect("small group");
        Naive {
            group: group.clone(),
            elems,
        }
    }

    pub fn items(&self, m: &Multiset) -> Vec<GroupElement> {
        m.iter().map(|&i| self.elems[i].clone()).collect()
    }

    pub fn sequence(&self, m: &Multiset) -> Sequence {
        Sequence::from_pairs(&self.group, self.items(m).into_iter().map(|g| (g, 1))).unwrap()
    }

    pub fn sum(&self, items: &[GroupElement]) -> GroupElement {
        items
            .iter()
            .fold(self.group.zero(), |acc, g| self.group.add(&acc, g).unwrap())
    }

    /// Sums of all nonempty labeled subsets, by enumerating `2^n` masks.
    pub fn subsums_bruteforce(&self, items: &[GroupElement]) -> BTreeSet<GroupElement> {
        let n = items.len();
        let mut out = BTreeSet::new();
        for mask in 1u64..1 << n {
            let chosen: Vec<GroupElement> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| items[i].clone())
                .collect();
            out.insert(self.sum(&chosen));
        }
        out
    }

    fn extend_sums(&self, sums: &BTreeSet<GroupElement>, g: &GroupElement) -> BTreeSet<GroupElement> {
        let mut out = sums.clone();
        out.insert(g.clone());
        for s in sums {
            out.insert(self.group.add(s, g).unwrap());
        }
        out
    }

    /// Subsums built one term at a time over explicit element sets.
    pub fn subsums(&self, items: &[GroupElement]) -> BTreeSet<GroupElement> {
        items
            .iter()
            .fold(BTreeSet::new(), |acc, g| self.extend_sums(&acc, g))
    }

    pub fn is_zero_sum_free(&self, items: &[GroupElement]) -> bool {
        !self.subsums(items).contains(&self.group.zero())
    }

    pub fn is_irreducible(&self, items: &[GroupElement]) -> bool {
        if items.is_empty() || !self.group.is_zero(&self.sum(items)) {
            return false;
        }
        (0..items.len()).all(|i| {
            let mut rest = items.to_vec();
            rest.remove(i);
            self.is_zero_sum_free(&rest)
        })
    }

    /// Every zero-sum free multiset, the empty one included.
    pub fn zero_sum_free(&self) -> Vec<Multiset> {
        let mut out = vec![vec![]];
        let mut path = Vec::new();
        self.zsf_rec(0, &BTreeSet::new(), &mut path, &mut out);
        out
    }

    fn zsf_rec(
        &self,
        start: usize,
        sums: &BTreeSet<GroupElement>,
        path: &mut Multiset,
        out: &mut Vec<Multiset>,
    ) {
        for i in start..self.elems.len() {
            let next = self.extend_sums(sums, &self.elems[i]);
            if next.contains(&self.group.zero()) {
                continue;
            }
            path.push(i);
            out.push(path.clone());
            self.zsf_rec(i, &next, path, out);
            path.pop();
        }
    }

    /// Every irreducible multiset: a zero-sum free `T` closed by `−σ(T)`,
    /// filtered by the definition.
    pub fn irreducibles(&self) -> Vec<Multiset> {
        let mut out = BTreeSet::new();
        for t in self.zero_sum_free() {
            if t.is_empty() {
                continue;
            }
            let items = self.items(&t);
            let h = self.group.neg(&self.sum(&items)).unwrap();
            let pos = self
                .elems
                .iter()
                .position(|e| *e == h)
                .expect("nonzero closing term");
            let mut s = t.clone();
            s.push(pos);
            s.sort_unstable();
            if self.is_irreducible(&self.items(&s)) {
                out.insert(s);
            }
        }
        out.into_iter().collect()
    }

    /// "Divides a UFIS" by the extension oracle: `S` or `S·(−σ(S))` has
    /// exactly one labeled factorization.
    pub fn divides_ufis(&self, items: &[GroupElement], caps: &Caps) -> bool {
        let mut s = Sequence::from_pairs(&self.group, items.iter().map(|g| (g.clone(), 1))).unwrap();
        let sigma = s.sigma();
        if !self.group.is_zero(&sigma) {
            s.push(self.group.neg(&sigma).unwrap(), 1).unwrap();
        }
        count_factorizations(&s, caps).unwrap().count == 1u32.into()
    }

    /// Every UFIS, the empty one included.
    pub fn ufis(&self) -> Vec<Multiset> {
        let caps = Caps {
            group_cap: 1 << 12,
            oracle_len_cap: 24,
        };
        let mut out = vec![vec![]];
        let mut path = Vec::new();
        self.ufis_rec(0, &mut path, &caps, &mut out);
        out
    }

    fn ufis_rec(&self, start: usize, path: &mut Multiset, caps: &Caps, out: &mut Vec<Multiset>) {
        for i in start..self.elems.len() {
            path.push(i);
            let items = self.items(path);
            // Dividing a UFIS is inherited by every sub-multiset.
            if self.divides_ufis(&items, caps) {
                if self.group.is_zero(&self.sum(&items)) {
                    out.push(path.clone());
                }
                self.ufis_rec(i, path, caps, out);
            }
            path.pop();
        }
    }

    pub fn weight(&self, m: &Multiset, w: &WeightFunction) -> Rational {
        m.iter()
            .map(|&i| w.weight(self.group.order_of(&self.elems[i])).unwrap())
            .sum()
    }

    /// The optimum under "largest value, then shortest, then smallest
    /// sorted index vector", with the full set of ties on value and length.
    pub fn best<'a>(&self, cands: impl IntoIterator<Item = &'a Multiset>, w: &WeightFunction) -> Best {
        let mut best: Option<(Rational, usize, Multiset)> = None;
        let mut ties: Vec<Multiset> = Vec::new();
        for m in cands {
            let v = self.weight(m, w);
            let key_better = |b: &(Rational, usize, Multiset)| v > b.0 || (v == b.0 && m.len() < b.1);
            match &best {
                Some(b) if !key_better(b) => {
                    if v == b.0 && m.len() == b.1 {
                        ties.push(m.clone());
                        if *m < b.2 {
                            best = Some((v, m.len(), m.clone()));
                        }
                    }
                }
                _ => {
                    ties = vec![m.clone()];
                    best = Some((v, m.len(), m.clone()));
                }
            }
        }
        let (value, _, m) = best.expect("at least the empty sequence");
        ties.sort();
        ties.dedup();
        Best {
            value,
            witness: self.sequence(&m),
            ties: ties.iter().map(|t| self.sequence(t)).collect(),
        }
    }
}

pub struct Best {
    pub value: Rational,
    pub witness: Sequence,
    /// Every multiset with the optimal value and minimal length.
    pub ties: Vec<Sequence>,
}

/// Labeled irreducible factorizations counted by recursion on the first
/// unused label, stopping early at `limit`.
pub fn naive_factorizations(n: &Naive, items: &[GroupElement], limit: u64) -> u64 {
    if items.is_empty() {
        return 1;
    }
    if !n.group.is_zero(&n.sum(items)) {
        return 0;
    }
    let rest = &items[1..];
    let mut total = 0;
    for mask in 0u64..1 << rest.len() {
        let mut block = vec![items[0].clone()];
        let mut left = Vec::new();
        for (i, g) in rest.iter().enumerate() {
            if mask >> i & 1 == 1 {
                block.push(g.clone());
            } else {
                left.push(g.clone());
            }
        }
        if n.is_irreducible(&block) {
            total += naive_factorizations(n, &left, limit - total.min(limit - 1));
            if total >= limit {
                return total;
            }
        }
    }
    total
}

/// Every abelian group of order `1..=max`.
pub fn groups_up_to(max: u64) -> Vec<GroupSpec> {
    (1..=max)
        .flat_map(zslab::group::abelian_groups_of_order)
        .collect()
}
