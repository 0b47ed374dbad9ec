//! Sequences over `G•` as multisets with valuations.
//!
//! Copies of an element are interchangeable here; the only operation that
//! needs to tell them apart (counting labeled factorizations) lives in
//! [`crate::factor`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, factorize};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec, GroupTable};
use crate::rational::Rational;

/// Weight attached to an element through its order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightFunction {
    /// `1/n`, the cross number.
    Cross,
    /// `1`, so the weighted sum is the length.
    Length,
    /// Totally multiplicative with `f(p_i) = 2^-i` on the `i`-th prime.
    Dyadic,
    Custom(BTreeMap<u64, Rational>),
}

impl WeightFunction {
    pub fn weight(&self, order: u64) -> Result<Rational> {
        match self {
            WeightFunction::Cross => Ok(Rational::new(1, order as i64)),
            WeightFunction::Length => Ok(Rational::one()),
            WeightFunction::Dyadic => {
                let mut shift = 0u32;
                for (p, e) in factorize(order) {
                    shift += arith::prime_index(p)? * e;
                }
                if shift > 62 {
                    return Err(Error::Overflow("dyadic weight"));
                }
                Ok(Rational::new(1, 1i64 << shift))
            }
            WeightFunction::Custom(map) => map.get(&order).cloned().ok_or(Error::MissingWeight(order)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            WeightFunction::Cross => "cross",
            WeightFunction::Length => "length",
            WeightFunction::Dyadic => "dyadic",
            WeightFunction::Custom(_) => "custom",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    group: GroupSpec,
    counts: BTreeMap<GroupElement, u64>,
}

impl Sequence {
    pub fn empty(group: &GroupSpec) -> Self {
        Sequence {
            group: group.clone(),
            counts: BTreeMap::new(),
        }
    }

    /// Zero multiplicities are dropped; the identity is rejected.
    pub fn from_pairs<I>(group: &GroupSpec, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (GroupElement, u64)>,
    {
        let mut s = Sequence::empty(group);
        for (g, m) in pairs {
            s.push(g, m)?;
        }
        Ok(s)
    }

    /// Builds from linear indices into `table`, repetition allowed.
    pub fn from_indices(table: &GroupTable, indices: &[usize]) -> Self {
        let mut counts = BTreeMap::new();
        for &i in indices {
            debug_assert!(i != 0, "identity in sequence");
            *counts.entry(table.element(i)).or_insert(0) += 1;
        }
        Sequence {
            group: table.spec().clone(),
            counts,
        }
    }

    pub fn push(&mut self, g: GroupElement, m: u64) -> Result<()> {
        self.group.check(&g)?;
        if self.group.is_zero(&g) {
            return Err(Error::IdentityInSequence);
        }
        if m > 0 {
            *self.counts.entry(g).or_insert(0) += m;
        }
        Ok(())
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// `(element, multiplicity)` pairs in linear-index order.
    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, u64)> + '_ {
        self.counts.iter().map(|(g, &m)| (g, m))
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> + '_ {
        self.counts.keys()
    }

    pub fn support_len(&self) -> usize {
        self.counts.len()
    }

    pub fn valuation(&self, g: &GroupElement) -> u64 {
        self.counts.get(g).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn length(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn sigma(&self) -> GroupElement {
        let mut acc = self.group.zero();
        for (g, &m) in &self.counts {
            let scaled = self.group.smul(m as i64, g).expect("member element");
            acc = self.group.add_unchecked(&acc, &scaled);
        }
        acc
    }

    pub fn cross_number(&self, w: &WeightFunction) -> Result<Rational> {
        let mut total = Rational::zero();
        for (g, &m) in &self.counts {
            let wt = w.weight(self.group.order_of(g))?;
            total += &(wt * Rational::integer(m as i64));
        }
        Ok(total)
    }

    fn same_group(&self, other: &Sequence) -> Result<()> {
        if self.group != other.group {
            Err(Error::MismatchedGroups)
        } else {
            Ok(())
        }
    }

    pub fn gcd(&self, other: &Sequence) -> Result<Sequence> {
        self.same_group(other)?;
        let counts = self
            .counts
            .iter()
            .filter_map(|(g, &m)| {
                let k = m.min(other.valuation(g));
                (k > 0).then(|| (g.clone(), k))
            })
            .collect();
        Ok(Sequence {
            group: self.group.clone(),
            counts,
        })
    }

    /// `self | other`.
    pub fn divides(&self, other: &Sequence) -> bool {
        self.group == other.group && self.counts.iter().all(|(g, &m)| m <= other.valuation(g))
    }

    pub fn mul(&self, other: &Sequence) -> Result<Sequence> {
        self.same_group(other)?;
        let mut out = self.clone();
        for (g, &m) in &other.counts {
            *out.counts.entry(g.clone()).or_insert(0) += m;
        }
        Ok(out)
    }

    /// `self · other⁻¹`; `other` must divide `self`.
    pub fn div(&self, other: &Sequence) -> Result<Sequence> {
        self.same_group(other)?;
        if !other.divides(self) {
            return Err(Error::NotSubsequence);
        }
        let mut out = self.clone();
        for (g, &m) in &other.counts {
            let slot = out.counts.get_mut(g).expect("divides");
            *slot -= m;
            if *slot == 0 {
                out.counts.remove(g);
            }
        }
        Ok(out)
    }

    /// One copy of `g` removed; `None` if `g` is absent.
    pub fn without_one(&self, g: &GroupElement) -> Option<Sequence> {
        let m = self.valuation(g);
        if m == 0 {
            return None;
        }
        let mut out = self.clone();
        if m == 1 {
            out.counts.remove(g);
        } else {
            out.counts.insert(g.clone(), m - 1);
        }
        Some(out)
    }

    /// Replaces the subsequence `t` with the single element `σ(t)`.
    pub fn amalgamate(&self, t: &Sequence) -> Result<Sequence> {
        let rest = self.div(t)?;
        let s = t.sigma();
        if self.group.is_zero(&s) {
            return Err(Error::ZeroSumAmalgamation);
        }
        let mut out = rest;
        *out.counts.entry(s).or_insert(0) += 1;
        Ok(out)
    }

    pub fn order_histogram(&self) -> BTreeMap<u64, u64> {
        let mut hist = BTreeMap::new();
        for (g, &m) in &self.counts {
            *hist.entry(self.group.order_of(g)).or_insert(0) += m;
        }
        hist
    }

    /// Number of terms of order exactly `ell`.
    pub fn count_of_order(&self, ell: u64) -> u64 {
        self.counts
            .iter()
            .filter(|(g, _)| self.group.order_of(g) == ell)
            .map(|(_, &m)| m)
            .sum()
    }

    /// Terms whose order has at least two distinct prime factors.
    pub fn cross_terms(&self) -> Sequence {
        self.filter(|g| factorize(self.group.order_of(g)).len() > 1)
    }

    /// `S_{G0}` for a predicate describing `G0`.
    pub fn filter<F: Fn(&GroupElement) -> bool>(&self, keep: F) -> Sequence {
        Sequence {
            group: self.group.clone(),
            counts: self
                .counts
                .iter()
                .filter(|(g, _)| keep(g))
                .map(|(g, &m)| (g.clone(), m))
                .collect(),
        }
    }

    /// Sorted linear indices with repetition; the canonical form used for
    /// tie-breaking and for table-driven code.
    pub fn to_indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.length() as usize);
        for (g, &m) in &self.counts {
            let idx = self.group.index_of(g);
            out.extend(std::iter::repeat(idx).take(m as usize));
        }
        out
    }

    /// The same multiset viewed in another group with identical components.
    pub fn with_group(&self, group: &GroupSpec) -> Result<Sequence> {
        Sequence::from_pairs(group, self.iter().map(|(g, m)| (g.clone(), m)))
    }

    /// Parses the `[[coords, multiplicity], ...]` literal.
    pub fn from_literal(group: &GroupSpec, text: &str) -> Result<Sequence> {
        let pairs: Vec<(Vec<u64>, u64)> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("sequence literal: {e}")))?;
        Sequence::from_pairs(group, pairs.into_iter().map(|(c, m)| (GroupElement::new(c), m)))
    }

    pub fn to_literal(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

impl Serialize for Sequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(&Vec<u64>, u64)> = self.counts.iter().map(|(g, &m)| (&g.coords, m)).collect();
        pairs.serialize(s)
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sequence[{}]{}", self.group, self)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, &m)) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            if m == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{m}")?;
            }
        }
        Ok(())
    }
}
