//! Subsums of sequences as an incremental bit-vector DP.
//!
//! `Σ(S)` here is the set of sums of *nonempty* subsequences, so `0 ∈ Σ(S)`
//! exactly when `S` has a nonempty zero-sum subsequence.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::group::{GroupElement, GroupTable};
use crate::seq::Sequence;

/// Bit `i` set means the element with linear index `i` is a nonempty subsum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SumsetState {
    words: Vec<u64>,
    size: usize,
}

impl SumsetState {
    pub fn new(size: usize) -> Self {
        SumsetState {
            words: vec![0; size.div_ceil(64).max(1)],
            size,
        }
    }

    /// Nonempty subsums of the given indices.
    pub fn of_indices(table: &GroupTable, indices: &[usize]) -> Self {
        let mut st = SumsetState::new(table.size());
        for &g in indices {
            st.insert(table, g);
        }
        st
    }

    pub fn of_sequence(table: &GroupTable, s: &Sequence) -> Self {
        Self::of_indices(table, &s.to_indices())
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// `Σ ← Σ ∪ (Σ + g) ∪ {g}`; bits never clear.
    pub fn insert(&mut self, table: &GroupTable, g: usize) {
        let old = self.words.clone();
        for (wi, &w) in old.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                self.set(table.add(wi * 64 + b, g));
            }
        }
        self.set(g);
    }

    /// Returns a new state instead of mutating.
    pub fn with(&self, table: &GroupTable, g: usize) -> Self {
        let mut next = self.clone();
        next.insert(table, g);
        next
    }

    /// True if the two sets share an element other than `0`.
    pub fn meets_outside_zero(&self, other: &SumsetState) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .enumerate()
            .any(|(i, (a, b))| {
                let both = a & b;
                if i == 0 {
                    both & !1 != 0
                } else {
                    both != 0
                }
            })
    }

    /// In-place union.
    pub fn union_with(&mut self, other: &SumsetState) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// `Σ ∪ {0}` covers the whole group.
    pub fn is_full_with_zero(&self) -> bool {
        let mut with_zero = self.clone();
        with_zero.set(0);
        with_zero.count() == self.size
    }
}

/// Number of labeled nonempty subsets hitting each sum, saturating at
/// `u64::MAX`. Only "is it exactly one" is ever asked of large counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsumCounts {
    counts: Vec<u64>,
}

impl SubsumCounts {
    pub fn new(size: usize) -> Self {
        SubsumCounts {
            counts: vec![0; size],
        }
    }

    pub fn insert(&mut self, table: &GroupTable, g: usize) {
        let old = self.counts.clone();
        for (y, &c) in old.iter().enumerate() {
            if c > 0 {
                let t = table.add(y, g);
                self.counts[t] = self.counts[t].saturating_add(c);
            }
        }
        self.counts[g] = self.counts[g].saturating_add(1);
    }

    pub fn get(&self, i: usize) -> u64 {
        self.counts[i]
    }
}

pub fn sumset(s: &Sequence, cap: u64) -> Result<BTreeSet<GroupElement>> {
    let table = GroupTable::new(s.group(), cap)?;
    let st = SumsetState::of_sequence(&table, s);
    Ok(st.iter().map(|i| table.element(i)).collect())
}

pub fn is_zero_sum_free(s: &Sequence, cap: u64) -> Result<bool> {
    let table = GroupTable::new(s.group(), cap)?;
    Ok(!SumsetState::of_sequence(&table, s).contains_zero())
}

/// `Σ(S) ∪ {0} = G`.
pub fn has_full_sumset(s: &Sequence, cap: u64) -> Result<bool> {
    let table = GroupTable::new(s.group(), cap)?;
    Ok(SumsetState::of_sequence(&table, s).is_full_with_zero())
}

/// `σ(S) = 0`; true for the empty sequence.
pub fn is_zero_sum(s: &Sequence) -> bool {
    s.group().is_zero(&s.sigma())
}
