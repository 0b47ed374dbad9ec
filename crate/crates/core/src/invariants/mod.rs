//! Exact solvers for `k`, `K`, `K₁`, `D`, `N₁`, dense witnesses, and the
//! closed-form conjectured values.

mod formula;
mod search;

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use formula::{
    is_2wide, is_2wide_integer, is_wide, is_wide_integer, k_star, K1_star, K_star, WideVariant,
    WidenessReport,
};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec, GroupTable};
use crate::rational::Rational;
use crate::seq::{Sequence, WeightFunction};
use search::{BlockSearch, Candidate, Mode, Outcome, ScaledWeights, ZsfSearch};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Objective {
    #[serde(rename = "k")]
    LittleK,
    #[serde(rename = "K")]
    BigK,
    K1,
    D,
    N1,
    #[serde(rename = "dense_zsf")]
    DenseZsf,
    #[serde(rename = "dense_ufis")]
    DenseUfis,
}

impl Objective {
    pub fn name(self) -> &'static str {
        match self {
            Objective::LittleK => "k",
            Objective::BigK => "K",
            Objective::K1 => "K1",
            Objective::D => "D",
            Objective::N1 => "N1",
            Objective::DenseZsf => "dense_zsf",
            Objective::DenseUfis => "dense_ufis",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DenseKind {
    Zsf,
    Ufis,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSolveResult")]
pub struct SolveResult {
    pub group: GroupSpec,
    pub objective: Objective,
    pub weight: WeightFunction,
    pub value: Rational,
    pub witness: Sequence,
    pub nodes_explored: u64,
    pub elapsed_ms: u64,
}

#[derive(Deserialize)]
struct RawSolveResult {
    group: GroupSpec,
    objective: Objective,
    weight: WeightFunction,
    value: Rational,
    witness: Vec<(Vec<u64>, u64)>,
    nodes_explored: u64,
    elapsed_ms: u64,
}

impl TryFrom<RawSolveResult> for SolveResult {
    type Error = Error;

    fn try_from(raw: RawSolveResult) -> Result<Self> {
        let witness = Sequence::from_pairs(
            &raw.group,
            raw.witness.into_iter().map(|(c, m)| (GroupElement::new(c), m)),
        )?;
        Ok(SolveResult {
            group: raw.group,
            objective: raw.objective,
            weight: raw.weight,
            value: raw.value,
            witness,
            nodes_explored: raw.nodes_explored,
            elapsed_ms: raw.elapsed_ms,
        })
    }
}

/// Every optimum of a dense objective, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDenseSet")]
pub struct DenseSet {
    pub group: GroupSpec,
    pub kind: DenseKind,
    pub value: Rational,
    pub length: u64,
    pub witnesses: Vec<Sequence>,
    pub nodes_explored: u64,
}

#[derive(Deserialize)]
struct RawDenseSet {
    group: GroupSpec,
    kind: DenseKind,
    value: Rational,
    length: u64,
    witnesses: Vec<Vec<(Vec<u64>, u64)>>,
    nodes_explored: u64,
}

impl TryFrom<RawDenseSet> for DenseSet {
    type Error = Error;

    fn try_from(raw: RawDenseSet) -> Result<Self> {
        let witnesses = raw
            .witnesses
            .into_iter()
            .map(|w| Sequence::from_pairs(&raw.group, w.into_iter().map(|(c, m)| (GroupElement::new(c), m))))
            .collect::<Result<_>>()?;
        Ok(DenseSet {
            group: raw.group,
            kind: raw.kind,
            value: raw.value,
            length: raw.length,
            witnesses,
            nodes_explored: raw.nodes_explored,
        })
    }
}

struct Problem {
    table: GroupTable,
    weights: ScaledWeights,
}

impl Problem {
    fn new(g: &GroupSpec, w: &WeightFunction, cfg: &Config) -> Result<Self> {
        let table = GroupTable::new(g, cfg.group_cap)?;
        let weights = ScaledWeights::new(&table, w)?;
        Ok(Problem { table, weights })
    }

    fn finish(
        &self,
        objective: Objective,
        w: &WeightFunction,
        out: &Outcome,
        started: Instant,
    ) -> SolveResult {
        let best = out.best_or_empty();
        SolveResult {
            group: self.table.spec().clone(),
            objective,
            weight: w.clone(),
            value: self.weights.to_rational(best.value),
            witness: Sequence::from_indices(&self.table, &best.indices),
            nodes_explored: out.nodes,
            elapsed_ms: started.elapsed().as_millis() as u64,
        }
    }

    fn zsf(&self, closing: bool, mode: Mode, cfg: &Config) -> Result<Outcome> {
        ZsfSearch::new(&self.table, &self.weights.per_index, closing).run(mode, cfg.threads)
    }

    fn ufis(&self, mode: Mode, cfg: &Config) -> Result<Outcome> {
        BlockSearch::new(&self.table, &self.weights.per_index).run(mode, cfg.threads)
    }
}

fn solve(g: &GroupSpec, w: &WeightFunction, objective: Objective, cfg: &Config) -> Result<SolveResult> {
    let started = Instant::now();
    let p = Problem::new(g, w, cfg)?;
    let out = match objective {
        Objective::LittleK | Objective::DenseZsf => p.zsf(false, Mode::Optimize, cfg)?,
        Objective::BigK | Objective::D => p.zsf(true, Mode::Optimize, cfg)?,
        Objective::K1 | Objective::N1 | Objective::DenseUfis => p.ufis(Mode::Optimize, cfg)?,
    };
    Ok(p.finish(objective, w, &out, started))
}

/// `k(G, w)`: the largest weight of a zero-sum free sequence.
pub fn solve_little_k(g: &GroupSpec, w: &WeightFunction, cfg: &Config) -> Result<SolveResult> {
    solve(g, w, Objective::LittleK, cfg)
}

/// `K(G)`: the largest cross number of an irreducible sequence.
#[allow(non_snake_case)]
pub fn solve_big_K(g: &GroupSpec, cfg: &Config) -> Result<SolveResult> {
    solve(g, &WeightFunction::Cross, Objective::BigK, cfg)
}

/// `K₁(G, w)`: the largest weight of a UFIS.
#[allow(non_snake_case)]
pub fn solve_K1(g: &GroupSpec, w: &WeightFunction, cfg: &Config) -> Result<SolveResult> {
    solve(g, w, Objective::K1, cfg)
}

/// `D(G)`: the maximal length of an irreducible sequence; `0` for the
/// trivial group.
pub fn solve_davenport(g: &GroupSpec, cfg: &Config) -> Result<SolveResult> {
    solve(g, &WeightFunction::Length, Objective::D, cfg)
}

/// `N₁(G)`: the maximal length of a UFIS.
pub fn solve_narkiewicz(g: &GroupSpec, cfg: &Config) -> Result<SolveResult> {
    solve(g, &WeightFunction::Length, Objective::N1, cfg)
}

/// The lexicographically smallest among maximal-cross-number, then
/// minimal-length sequences of the given kind.
pub fn dense_witness(g: &GroupSpec, kind: DenseKind, cfg: &Config) -> Result<SolveResult> {
    let objective = match kind {
        DenseKind::Zsf => Objective::DenseZsf,
        DenseKind::Ufis => Objective::DenseUfis,
    };
    solve(g, &WeightFunction::Cross, objective, cfg)
}

/// All dense sequences of the given kind, not just the tie-broken one.
pub fn all_dense_witnesses(g: &GroupSpec, kind: DenseKind, cfg: &Config) -> Result<DenseSet> {
    let w = WeightFunction::Cross;
    let p = Problem::new(g, &w, cfg)?;
    let run = |mode| match kind {
        DenseKind::Zsf => p.zsf(false, mode, cfg),
        DenseKind::Ufis => p.ufis(mode, cfg),
    };
    let first = run(Mode::Optimize)?;
    let best: Candidate = first.best_or_empty();
    let all = run(Mode::Collect {
        value: best.value,
        len: best.indices.len(),
    })?;
    Ok(DenseSet {
        group: g.clone(),
        kind,
        value: p.weights.to_rational(best.value),
        length: best.indices.len() as u64,
        witnesses: all
            .collected
            .iter()
            .map(|idx| Sequence::from_indices(&p.table, idx))
            .collect(),
        nodes_explored: first.nodes + all.nodes,
    })
}

/// Number of irreducible sequences the UFIS solvers work with.
pub fn irreducible_count(g: &GroupSpec, cfg: &Config) -> Result<usize> {
    let p = Problem::new(g, &WeightFunction::Length, cfg)?;
    Ok(BlockSearch::new(&p.table, &p.weights.per_index).block_count())
}
