//! Branch-and-bound engines.
//!
//! Weights are scaled to integers over a common denominator so the hot loop
//! never touches rationals. Every candidate is ranked by the same key:
//! larger value, then shorter, then the lexicographically smaller sorted
//! index vector. Pruning is strict on value and only cuts ties when the
//! subtree cannot beat the incumbent on length, so the winner is the unique
//! key-optimum regardless of search order or thread count.

use std::cmp::Ordering as CmpOrdering;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factor::irreducible_index_lists;
use crate::group::GroupTable;
use crate::rational::Rational;
use crate::seq::WeightFunction;
use crate::sumset::{SubsumCounts, SumsetState};

pub(crate) struct ScaledWeights {
    pub per_index: Vec<u64>,
    pub den: u64,
}

impl ScaledWeights {
    pub fn new(table: &GroupTable, w: &WeightFunction) -> Result<Self> {
        let n = table.size();
        let mut by_order: Vec<(u64, Rational)> = Vec::new();
        for g in 1..n {
            let ord = table.order(g);
            if by_order.iter().all(|(o, _)| *o != ord) {
                let r = w.weight(ord)?;
                if r.is_negative() {
                    return Err(Error::NegativeWeight(ord));
                }
                by_order.push((ord, r));
            }
        }
        let mut den = BigInt::from(1);
        for (_, r) in &by_order {
            den = den.lcm(r.denom());
        }
        let den_u = den.to_u64().ok_or(Error::Overflow("weight denominator"))?;
        let mut scaled = Vec::with_capacity(by_order.len());
        for (ord, r) in &by_order {
            let v = (r.numer() * (&den / r.denom()))
                .to_u64()
                .ok_or(Error::Overflow("scaled weight"))?;
            scaled.push((*ord, v));
        }
        let mut per_index = vec![0u64; n];
        for (g, slot) in per_index.iter_mut().enumerate().skip(1) {
            let ord = table.order(g);
            *slot = scaled.iter().find(|(o, _)| *o == ord).map(|p| p.1).unwrap_or(0);
        }
        let max = per_index.iter().copied().max().unwrap_or(0);
        // Every bound is at most a few |G|-fold sums of the largest weight.
        if (max as u128) * (n as u128 + 1) * 4 > u64::MAX as u128 {
            return Err(Error::Overflow("scaled objective"));
        }
        Ok(ScaledWeights {
            per_index,
            den: den_u,
        })
    }

    pub fn to_rational(&self, v: u64) -> Rational {
        Rational::from_big(BigInt::from(v), BigInt::from(self.den))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Candidate {
    pub value: u64,
    /// Sorted linear indices.
    pub indices: Vec<usize>,
}

impl Candidate {
    /// `Less` means `self` ranks ahead.
    fn rank(&self, other: &Candidate) -> CmpOrdering {
        other
            .value
            .cmp(&self.value)
            .then(self.indices.len().cmp(&other.indices.len()))
            .then_with(|| self.indices.cmp(&other.indices))
    }
}

fn pick_best(a: Option<Candidate>, b: Option<Candidate>) -> Option<Candidate> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.rank(&x) == CmpOrdering::Less { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Mode {
    Optimize,
    /// Gather every candidate with exactly this value and length.
    Collect {
        value: u64,
        len: usize,
    },
}

struct Ctx<'a> {
    mode: Mode,
    shared: &'a AtomicU64,
    best: Option<Candidate>,
    collected: Vec<Vec<usize>>,
    nodes: u64,
}

impl<'a> Ctx<'a> {
    fn new(mode: Mode, shared: &'a AtomicU64) -> Self {
        Ctx {
            mode,
            shared,
            best: None,
            collected: Vec::new(),
            nodes: 0,
        }
    }

    fn offer(&mut self, value: u64, unsorted: &[usize]) {
        match self.mode {
            Mode::Optimize => {
                if let Some(b) = &self.best {
                    if value < b.value || (value == b.value && unsorted.len() > b.indices.len()) {
                        return;
                    }
                }
                let mut indices = unsorted.to_vec();
                indices.sort_unstable();
                let cand = Candidate { value, indices };
                self.best = pick_best(self.best.take(), Some(cand));
                self.shared.fetch_max(value, Ordering::Relaxed);
            }
            Mode::Collect { value: v, len } => {
                if value == v && unsorted.len() == len {
                    let mut indices = unsorted.to_vec();
                    indices.sort_unstable();
                    self.collected.push(indices);
                }
            }
        }
    }

    /// Can a subtree whose values are `<= bound` and lengths `>= min_len`
    /// still matter?
    fn prune(&self, bound: u64, min_len: usize) -> bool {
        match self.mode {
            Mode::Optimize => {
                if bound < self.shared.load(Ordering::Relaxed) {
                    return true;
                }
                match &self.best {
                    Some(b) => bound < b.value || (bound == b.value && min_len > b.indices.len()),
                    None => false,
                }
            }
            Mode::Collect { value, len } => bound < value || min_len > len,
        }
    }
}

pub(crate) struct Outcome {
    pub best: Option<Candidate>,
    pub collected: Vec<Vec<usize>>,
    pub nodes: u64,
}

fn run_tasks<T, F>(
    tasks: Vec<T>,
    threads: usize,
    mode: Mode,
    root: Option<Candidate>,
    f: F,
) -> Result<Outcome>
where
    T: Send + Sync,
    F: Fn(&T, &mut Ctx<'_>) + Send + Sync,
{
    let shared = AtomicU64::new(root.as_ref().map_or(0, |c| c.value));
    let work = |t: &T| {
        let mut ctx = Ctx::new(mode, &shared);
        f(t, &mut ctx);
        (ctx.best, ctx.collected, ctx.nodes)
    };
    let parts: Vec<_> = if threads <= 1 {
        tasks.iter().map(work).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
        pool.install(|| tasks.par_iter().map(work).collect())
    };
    let mut out = Outcome {
        best: match mode {
            Mode::Optimize => root.clone(),
            Mode::Collect { .. } => None,
        },
        collected: Vec::new(),
        nodes: 1,
    };
    if let (Mode::Collect { value, len }, Some(r)) = (mode, &root) {
        if r.value == value && r.indices.len() == len {
            out.collected.push(r.indices.clone());
        }
    }
    for (best, collected, nodes) in parts {
        out.best = pick_best(out.best, best);
        out.collected.extend(collected);
        out.nodes += nodes;
    }
    out.collected
        .sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.collected.dedup();
    Ok(out)
}

/// DFS over zero-sum free multisets `T`. With `closing`, each `T` is
/// completed to `T·(−σ(T))` whenever that is irreducible, i.e. exactly one
/// labeled subset of `T` sums to `σ(T)`.
pub(crate) struct ZsfSearch<'a> {
    table: &'a GroupTable,
    weights: &'a [u64],
    closing: bool,
    cands: Vec<usize>,
    suffix_max: Vec<u64>,
    max_all: u64,
}

struct Level {
    sums: SumsetState,
    counts: Option<SubsumCounts>,
    sigma: usize,
}

impl<'a> ZsfSearch<'a> {
    pub fn new(table: &'a GroupTable, weights: &'a [u64], closing: bool) -> Self {
        let mut cands: Vec<usize> = (1..table.size()).collect();
        cands.sort_by(|&a, &b| table.order(b).cmp(&table.order(a)).then(a.cmp(&b)));
        let mut suffix_max = vec![0u64; cands.len() + 1];
        for j in (0..cands.len()).rev() {
            suffix_max[j] = suffix_max[j + 1].max(weights[cands[j]]);
        }
        let max_all = suffix_max[0];
        ZsfSearch {
            table,
            weights,
            closing,
            cands,
            suffix_max,
            max_all,
        }
    }

    /// States after adding `g` once, twice, … while staying zero-sum free.
    fn levels(&self, base: &Level, g: usize, limit: usize) -> Vec<Level> {
        let mut out: Vec<Level> = Vec::new();
        loop {
            if out.len() >= limit {
                break;
            }
            let prev = out.last().unwrap_or(base);
            let mut sums = prev.sums.clone();
            sums.insert(self.table, g);
            if sums.contains_zero() {
                break;
            }
            let counts = prev.counts.as_ref().map(|c| {
                let mut c = c.clone();
                c.insert(self.table, g);
                c
            });
            let sigma = self.table.add(prev.sigma, g);
            out.push(Level { sums, counts, sigma });
        }
        out
    }

    fn root_level(&self) -> Level {
        Level {
            sums: SumsetState::new(self.table.size()),
            counts: self.closing.then(|| SubsumCounts::new(self.table.size())),
            sigma: 0,
        }
    }

    fn evaluate(&self, path: &mut Vec<usize>, level: &Level, value: u64, ctx: &mut Ctx<'_>) {
        ctx.nodes += 1;
        if !self.closing {
            ctx.offer(value, path);
            return;
        }
        let counts = level.counts.as_ref().expect("closing search tracks counts");
        if !path.is_empty() && counts.get(level.sigma) == 1 {
            let h = self.table.neg(level.sigma);
            path.push(h);
            ctx.offer(value + self.weights[h], path);
            path.pop();
        }
    }

    fn rec(&self, start: usize, path: &mut Vec<usize>, level: &Level, value: u64, ctx: &mut Ctx<'_>) {
        self.evaluate(path, level, value, ctx);
        let free = (self.table.size() - 1).saturating_sub(level.sums.count());
        if free == 0 {
            return;
        }
        let extra = if self.closing { self.max_all } else { 0 };
        let min_len = path.len() + 1 + self.closing as usize;
        for j in start..self.cands.len() {
            let bound = value + free as u64 * self.suffix_max[j] + extra;
            if ctx.prune(bound, min_len) {
                break;
            }
            let g = self.cands[j];
            let levels = self.levels(level, g, free);
            for m in (1..=levels.len()).rev() {
                let base = path.len();
                path.extend(std::iter::repeat(g).take(m));
                self.rec(
                    j + 1,
                    path,
                    &levels[m - 1],
                    value + m as u64 * self.weights[g],
                    ctx,
                );
                path.truncate(base);
            }
        }
    }

    pub fn run(&self, mode: Mode, threads: usize) -> Result<Outcome> {
        let root = self.root_level();
        let root_cand = (!self.closing).then(|| Candidate {
            value: 0,
            indices: Vec::new(),
        });
        // Split at the first (element, multiplicity) choice.
        let mut tasks = Vec::new();
        for j in 0..self.cands.len() {
            let n = self.levels(&root, self.cands[j], usize::MAX).len();
            for m in (1..=n).rev() {
                tasks.push((j, m));
            }
        }
        run_tasks(tasks, threads, mode, root_cand, |&(j, m), ctx| {
            let g = self.cands[j];
            let value = m as u64 * self.weights[g];
            let free = self.table.size() - 1;
            let bound = value
                + (free - m) as u64 * self.suffix_max[j + 1]
                + if self.closing { self.max_all } else { 0 };
            if ctx.prune(bound, m + self.closing as usize) {
                return;
            }
            let levels = self.levels(&self.root_level(), g, m);
            let mut path = vec![g; m];
            self.rec(j + 1, &mut path, &levels[m - 1], value, ctx);
        })
    }
}

struct Block {
    indices: Vec<usize>,
    /// `Σ(U) ∪ {0}`.
    sums: SumsetState,
    weight: u64,
    /// `|Σ(U)|`: how many new sumset elements `U` consumes at least.
    cost: u64,
}

/// UFIS search as sets of irreducible blocks, grown by Gao's criterion:
/// `U·S'` stays a UFIS iff `Σ(U) ∩ Σ(S') ⊆ {0}`, and the sumset with zero
/// of the product is the Minkowski sum. Each new block claims at least
/// `|Σ(U)|` elements outside the current sumset, which gives the bound.
pub(crate) struct BlockSearch<'a> {
    table: &'a GroupTable,
    blocks: Vec<Block>,
}

impl<'a> BlockSearch<'a> {
    pub fn new(table: &'a GroupTable, weights: &[u64]) -> Self {
        let mut blocks: Vec<Block> = irreducible_index_lists(table, usize::MAX)
            .into_iter()
            .map(|indices| {
                let sums = SumsetState::of_indices(table, &indices);
                let weight = indices.iter().map(|&g| weights[g]).sum();
                let cost = sums.count() as u64 - 1;
                Block {
                    indices,
                    sums,
                    weight,
                    cost,
                }
            })
            .collect();
        // Best weight-per-consumed-element first, so the suffix maximum of
        // the ratio is the next block's ratio.
        blocks.sort_by(|a, b| {
            ((b.weight as u128) * (a.cost as u128))
                .cmp(&((a.weight as u128) * (b.cost as u128)))
                .then(a.indices.len().cmp(&b.indices.len()))
                .then_with(|| a.indices.cmp(&b.indices))
        });
        BlockSearch { table, blocks }
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    fn bound(&self, value: u64, free: u64, j: usize) -> u64 {
        let b = &self.blocks[j];
        value + ((free as u128 * b.weight as u128) / b.cost as u128) as u64
    }

    fn rec(&self, start: usize, chosen: &mut Vec<usize>, sums: &SumsetState, value: u64, ctx: &mut Ctx<'_>) {
        ctx.nodes += 1;
        ctx.offer(value, chosen);
        let free = (self.table.size() - sums.count()) as u64;
        if free == 0 {
            return;
        }
        let min_len = chosen.len() + 2;
        for j in start..self.blocks.len() {
            if ctx.prune(self.bound(value, free, j), min_len) {
                break;
            }
            let b = &self.blocks[j];
            if b.cost > free || b.sums.meets_outside_zero(sums) {
                continue;
            }
            let mut next = sums.clone();
            for &g in &b.indices {
                next.insert(self.table, g);
            }
            let base = chosen.len();
            chosen.extend_from_slice(&b.indices);
            self.rec(j + 1, chosen, &next, value + b.weight, ctx);
            chosen.truncate(base);
        }
    }

    pub fn run(&self, mode: Mode, threads: usize) -> Result<Outcome> {
        let root_cand = Candidate {
            value: 0,
            indices: Vec::new(),
        };
        let tasks: Vec<usize> = (0..self.blocks.len()).collect();
        run_tasks(tasks, threads, mode, Some(root_cand), |&j, ctx| {
            let free = self.table.size() as u64 - 1;
            if ctx.prune(self.bound(0, free, j), 2) {
                return;
            }
            let b = &self.blocks[j];
            let mut sums = SumsetState::new(self.table.size());
            sums.set(0);
            for &g in &b.indices {
                sums.insert(self.table, g);
            }
            let mut chosen = b.indices.clone();
            self.rec(j + 1, &mut chosen, &sums, b.weight, ctx);
        })
    }
}

impl Outcome {
    pub fn best_or_empty(&self) -> Candidate {
        self.best.clone().unwrap_or(Candidate {
            value: 0,
            indices: Vec::new(),
        })
    }
}
