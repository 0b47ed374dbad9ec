//! Irreducible sequences, labeled factorization counting and the UFIS tests.
//!
//! Factorizations are counted on *labeled* copies: `g⁴` over `C₂` has three
//! factorizations into `g²` blocks, not one. Everything else works on
//! multisets. The multiset form of the gcd criterion used by
//! [`divides_ufis`] is: every irreducible sub-multiset `U | S` must take all
//! copies of each element it uses, and distinct irreducible sub-multisets
//! must have disjoint supports. Either failure yields two labeled minimal
//! zero-sum subsequences that overlap, whose gcd is a nonempty proper part
//! of an irreducible and therefore not zero-sum.

use num_bigint::BigUint;

use crate::config::Caps;
use crate::error::{check_cap, Error, Result};
use crate::group::{GroupSpec, GroupTable};
use crate::seq::Sequence;
use crate::sumset::{is_zero_sum, SubsumCounts, SumsetState};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationCount {
    pub count: BigUint,
    /// One factorization, present iff `count >= 1`.
    pub witness: Option<Vec<Sequence>>,
}

/// Irreducibility on a sorted index list, via single-copy removals.
pub(crate) fn is_irreducible_indices(table: &GroupTable, idx: &[usize]) -> bool {
    if idx.is_empty() {
        return false;
    }
    let sum = idx.iter().fold(0, |acc, &g| table.add(acc, g));
    if sum != 0 {
        return false;
    }
    let mut prev = usize::MAX;
    for pos in 0..idx.len() {
        if idx[pos] == prev {
            continue;
        }
        prev = idx[pos];
        let mut st = SumsetState::new(table.size());
        for (k, &g) in idx.iter().enumerate() {
            if k != pos {
                st.insert(table, g);
            }
        }
        if st.contains_zero() {
            return false;
        }
    }
    true
}

pub fn is_irreducible(s: &Sequence, cap: u64) -> Result<bool> {
    let table = GroupTable::new(s.group(), cap)?;
    Ok(is_irreducible_indices(&table, &s.to_indices()))
}

/// Subset tables for labeled copies: per-mask sums and minimal zero-sum flags.
struct LabeledTables {
    irreducible: Vec<bool>,
}

impl LabeledTables {
    fn new(table: &GroupTable, labels: &[usize]) -> Self {
        let n = labels.len();
        let full = 1usize << n;
        let mut sum = vec![0usize; full];
        let mut has_zero = vec![false; full];
        let mut irreducible = vec![false; full];
        for mask in 1..full {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            sum[mask] = table.add(sum[rest], labels[low]);
            let zero = sum[mask] == 0;
            let mut sub_zero = false;
            let mut bits = mask;
            while bits != 0 {
                let b = bits & bits.wrapping_neg();
                bits ^= b;
                if has_zero[mask ^ b] {
                    sub_zero = true;
                    break;
                }
            }
            has_zero[mask] = zero || sub_zero;
            irreducible[mask] = zero && !sub_zero;
        }
        LabeledTables { irreducible }
    }
}

fn count_masks(tables: &LabeledTables, mask: usize, memo: &mut Vec<Option<u128>>) -> u128 {
    if mask == 0 {
        return 1;
    }
    if let Some(c) = memo[mask] {
        return c;
    }
    let low = mask & mask.wrapping_neg();
    let rest = mask ^ low;
    let mut total: u128 = 0;
    // Blocks containing the lowest unused label, so each partition is
    // generated once.
    let mut sub = rest;
    loop {
        let block = sub | low;
        if tables.irreducible[block] {
            total += count_masks(tables, mask ^ block, memo);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    memo[mask] = Some(total);
    total
}

/// Number of labeled partitions of `S` into irreducible blocks.
pub fn count_factorizations(s: &Sequence, caps: &Caps) -> Result<FactorizationCount> {
    check_cap("sequence length", s.length(), caps.oracle_len_cap)?;
    if s.length() > 26 {
        return Err(Error::Overflow("labeled factorization table"));
    }
    let table = GroupTable::new(s.group(), caps.group_cap)?;
    if !is_zero_sum(s) {
        return Ok(FactorizationCount {
            count: BigUint::from(0u32),
            witness: None,
        });
    }
    let labels = s.to_indices();
    let tables = LabeledTables::new(&table, &labels);
    let full = (1usize << labels.len()) - 1;
    let mut memo = vec![None; full + 1];
    let count = count_masks(&tables, full, &mut memo);
    let witness = (count > 0).then(|| {
        let mut blocks = Vec::new();
        let mut mask = full;
        while mask != 0 {
            let low = mask & mask.wrapping_neg();
            let rest = mask ^ low;
            let mut sub = rest;
            loop {
                let block = sub | low;
                if tables.irreducible[block] && count_masks(&tables, mask ^ block, &mut memo) > 0 {
                    let idx: Vec<usize> = (0..labels.len())
                        .filter(|k| block >> k & 1 == 1)
                        .map(|k| labels[k])
                        .collect();
                    blocks.push(Sequence::from_indices(&table, &idx));
                    mask ^= block;
                    break;
                }
                debug_assert!(sub != 0, "count > 0 implies a block exists");
                sub = (sub - 1) & rest;
            }
        }
        blocks
    });
    Ok(FactorizationCount {
        count: BigUint::from(count),
        witness,
    })
}

pub fn is_ufis(s: &Sequence, caps: &Caps) -> Result<bool> {
    Ok(is_zero_sum(s) && count_factorizations(s, caps)?.count == BigUint::from(1u32))
}

/// All irreducible sub-multisets of `S` as sorted index lists.
pub(crate) fn irreducible_divisor_indices(table: &GroupTable, s: &Sequence) -> Vec<Vec<usize>> {
    let support: Vec<(usize, u64)> = s.iter().map(|(g, m)| (s.group().index_of(g), m)).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    irreducible_divisors_rec(
        table,
        &support,
        0,
        &mut current,
        &SumsetState::new(table.size()),
        &mut out,
    );
    out
}

fn irreducible_divisors_rec(
    table: &GroupTable,
    support: &[(usize, u64)],
    start: usize,
    current: &mut Vec<usize>,
    sums: &SumsetState,
    out: &mut Vec<Vec<usize>>,
) {
    for (j, &(g, v)) in support.iter().enumerate().skip(start) {
        let mut st = sums.clone();
        let base = current.len();
        for _ in 0..v {
            st.insert(table, g);
            current.push(g);
            if st.contains_zero() {
                if is_irreducible_indices(table, current) {
                    out.push(current.clone());
                }
                break;
            }
            irreducible_divisors_rec(table, support, j + 1, current, &st, out);
        }
        current.truncate(base);
    }
}

pub fn irreducible_divisors(s: &Sequence, cap: u64) -> Result<Vec<Sequence>> {
    let table = GroupTable::new(s.group(), cap)?;
    Ok(irreducible_divisor_indices(&table, s)
        .iter()
        .map(|idx| Sequence::from_indices(&table, idx))
        .collect())
}

/// The gcd criterion: `S` divides some UFIS iff any two zero-sum
/// subsequences have a zero-sum gcd. Checked over irreducible ones.
pub fn divides_ufis(s: &Sequence, cap: u64) -> Result<bool> {
    let blocks = irreducible_divisors(s, cap)?;
    for u in &blocks {
        if u.iter().any(|(g, m)| m < s.valuation(g)) {
            return Ok(false);
        }
    }
    for (i, u) in blocks.iter().enumerate() {
        for v in &blocks[i + 1..] {
            if u.support().any(|g| v.valuation(g) > 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `S` if zero-sum, else `S·(−σ(S))`.
pub fn extend_to_ufis(s: &Sequence, cap: u64) -> Result<Sequence> {
    if !divides_ufis(s, cap)? {
        return Err(Error::Precondition("sequence does not divide a UFIS".into()));
    }
    let g = s.group();
    let sigma = s.sigma();
    if g.is_zero(&sigma) {
        return Ok(s.clone());
    }
    let mut out = s.clone();
    out.push(g.neg_unchecked(&sigma), 1)?;
    Ok(out)
}

/// For irreducible `U` and UFIS `S2`: `U·S2` is a UFIS iff `Σ(U) ∩ Σ(S2) ⊆ {0}`.
pub fn compose_is_ufis(u: &Sequence, s2: &Sequence, cap: u64) -> Result<bool> {
    if u.group() != s2.group() {
        return Err(Error::MismatchedGroups);
    }
    let table = GroupTable::new(u.group(), cap)?;
    if !is_irreducible_indices(&table, &u.to_indices()) {
        return Err(Error::Precondition("first argument is not irreducible".into()));
    }
    if !(is_zero_sum(s2) && divides_ufis(s2, cap)?) {
        return Err(Error::Precondition("second argument is not a UFIS".into()));
    }
    let a = SumsetState::of_sequence(&table, u);
    let b = SumsetState::of_sequence(&table, s2);
    Ok(!a.meets_outside_zero(&b))
}

/// `U` is optimal in the UFIS `S` if no longer irreducible can replace it
/// while keeping unique factorization.
pub fn is_optimal_factor(u: &Sequence, s: &Sequence, cap: u64) -> Result<bool> {
    let table = GroupTable::new(s.group(), cap)?;
    if !is_irreducible_indices(&table, &u.to_indices()) {
        return Err(Error::Precondition("factor is not irreducible".into()));
    }
    if !(is_zero_sum(s) && divides_ufis(s, cap)?) {
        return Err(Error::Precondition("host sequence is not a UFIS".into()));
    }
    let rest = s.div(u)?;
    let forbidden = SumsetState::of_sequence(&table, &rest);
    let min_len = u.length() as usize + 1;
    Ok(!exists_irreducible_avoiding(&table, &forbidden, min_len))
}

/// Is there an irreducible of length `>= min_len` whose nonzero subsums all
/// avoid `forbidden`?
fn exists_irreducible_avoiding(table: &GroupTable, forbidden: &SumsetState, min_len: usize) -> bool {
    let n = table.size();
    let allowed: Vec<usize> = (1..n).filter(|&g| !forbidden.contains(g)).collect();
    let mut found = false;
    let mut path = Vec::new();
    let st = SumsetState::new(n);
    let counts = SubsumCounts::new(n);
    avoid_rec(
        table, forbidden, &allowed, 0, &mut path, &st, &counts, min_len, &mut found,
    );
    found
}

#[allow(clippy::too_many_arguments)]
fn avoid_rec(
    table: &GroupTable,
    forbidden: &SumsetState,
    allowed: &[usize],
    start: usize,
    path: &mut Vec<usize>,
    sums: &SumsetState,
    counts: &SubsumCounts,
    min_len: usize,
    found: &mut bool,
) {
    for (j, &g) in allowed.iter().enumerate().skip(start) {
        if *found {
            return;
        }
        let mut st = sums.clone();
        let mut ct = counts.clone();
        let base = path.len();
        loop {
            st.insert(table, g);
            ct.insert(table, g);
            path.push(g);
            if st.contains_zero() || st.iter().any(|x| x != 0 && forbidden.contains(x)) {
                break;
            }
            let sigma = path.iter().fold(0, |acc, &x| table.add(acc, x));
            let h = table.neg(sigma);
            if path.len() + 1 >= min_len && !forbidden.contains(h) && ct.get(sigma) == 1 {
                *found = true;
                break;
            }
            avoid_rec(table, forbidden, allowed, j + 1, path, &st, &ct, min_len, found);
            if *found {
                break;
            }
        }
        path.truncate(base);
    }
}

/// Irreducibles of length `<= max_len` as sorted index lists, ordered by
/// `(length, lexicographic)`.
pub(crate) fn irreducible_index_lists(table: &GroupTable, max_len: usize) -> Vec<Vec<usize>> {
    let n = table.size();
    let mut out = Vec::new();
    if n <= 1 || max_len < 2 {
        return out;
    }
    let mut path = Vec::new();
    enumerate_rec(
        table,
        1,
        &mut path,
        &SumsetState::new(n),
        &SubsumCounts::new(n),
        0,
        max_len,
        &mut out,
    );
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rec(
    table: &GroupTable,
    start: usize,
    path: &mut Vec<usize>,
    sums: &SumsetState,
    counts: &SubsumCounts,
    sigma: usize,
    max_len: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if path.len() + 1 >= max_len {
        return;
    }
    for g in start..table.size() {
        let mut st = sums.clone();
        let mut ct = counts.clone();
        let mut sig = sigma;
        let base = path.len();
        while path.len() + 1 < max_len {
            st.insert(table, g);
            if st.contains_zero() {
                break;
            }
            ct.insert(table, g);
            sig = table.add(sig, g);
            path.push(g);
            // Close with the largest element so each irreducible appears once.
            let h = table.neg(sig);
            if h >= g && ct.get(sig) == 1 {
                let mut block = path.clone();
                block.push(h);
                out.push(block);
            }
            enumerate_rec(table, g + 1, path, &st, &ct, sig, max_len, out);
        }
        path.truncate(base);
    }
}

/// Every irreducible sequence of length `<= max_len`, each exactly once.
pub fn enumerate_irreducibles(group: &GroupSpec, max_len: usize, cap: u64) -> Result<Vec<Sequence>> {
    let table = GroupTable::new(group, cap)?;
    Ok(irreducible_index_lists(&table, max_len)
        .iter()
        .map(|idx| Sequence::from_indices(&table, idx))
        .collect())
}

/// The block decomposition of a UFIS, ordered canonically.
pub fn ufis_blocks(s: &Sequence, cap: u64) -> Result<Vec<Sequence>> {
    if !(is_zero_sum(s) && divides_ufis(s, cap)?) {
        return Err(Error::Precondition("sequence is not a UFIS".into()));
    }
    irreducible_divisors(s, cap)
}

/// Cap check shared by callers that loop over many sequences.
pub fn check_oracle_len(s: &Sequence, caps: &Caps) -> Result<()> {
    check_cap("sequence length", s.length(), caps.oracle_len_cap)
}
