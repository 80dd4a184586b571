//! Exhaustive search for the largest weight spectrum of an [n,k]_q code.
//!
//! Codes are enumerated as multisets of canonical columns. The weight of a
//! codeword does not depend on the order of the columns, nor on replacing a
//! column `c` by `s*c` for a scalar `s` with `w(s*x) = w(x)` for all `x`, so
//! one representative per such orbit is enough.
//!
//! For each canonical column we precompute the symbol weight it contributes
//! to every nonzero message; a multiset's codeword weights are then the sum
//! of its columns' rows. A nonzero message with total weight zero means the
//! columns span a proper subspace, so rank filtering falls out of the same
//! table.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::mws_min_length;
use crate::constructions::{ColumnBlock, ColumnMultiset};
use crate::error::{overflow, Error, Result};
use crate::field::message_digits;
use crate::spectra::mws_spectrum_size;
use crate::weights::WeightFunction;

pub const DEFAULT_SEARCH_BUDGET: u64 = 200_000_000;
/// Witnesses kept per result, first in enumeration order.
pub const WITNESS_CAP: usize = 16;

/// Nonzero vectors of Z_q^k, one per orbit under the weight-preserving
/// scalars, each the lexicographically smallest of its orbit. Listed in
/// lexicographic order.
pub fn canonical_columns(k: usize, wf: &WeightFunction) -> Result<Vec<Vec<u32>>> {
    let field = wf.field();
    let total = field.pow(k)?;
    let scalars = wf.weight_preserving_scalars();
    let mut out = Vec::new();
    for index in 1..total {
        let v = message_digits(field.q(), k, index);
        let is_rep = scalars.iter().all(|&s| {
            let sv: Vec<u32> = v.iter().map(|&x| field.mul(s, x)).collect();
            v <= sv
        });
        if is_rep {
            out.push(v);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum EnumerationOrder {
    /// Canonical columns in lexicographic order.
    #[default]
    Forward,
    /// Canonical columns in reverse lexicographic order.
    Reverse,
}

#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub n: usize,
    pub k: usize,
    pub wf: WeightFunction,
    /// Largest number of multisets the search may enumerate.
    pub budget: u64,
    /// Worker threads; 0 lets the pool decide.
    pub workers: usize,
    pub order: EnumerationOrder,
}

impl SearchSpec {
    pub fn new(n: usize, k: usize, wf: WeightFunction) -> Self {
        Self {
            n,
            k,
            wf,
            budget: DEFAULT_SEARCH_BUDGET,
            workers: 1,
            order: EnumerationOrder::Forward,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_order(mut self, order: EnumerationOrder) -> Self {
        self.order = order;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub weight: String,
    /// Largest spectrum size over all [n,k]_q codes.
    pub l_value: u64,
    pub witnesses: Vec<ColumnMultiset>,
    pub is_mws_attained: bool,
    pub is_fws_attained: bool,
    /// Multisets enumerated, including rank-deficient ones.
    pub multisets_examined: u64,
    pub full_rank_multisets: u64,
    pub exhaustive: bool,
}

/// Number of size-`n` multisets drawn from `c` kinds: `C(c+n-1, n)`.
pub fn multiset_count(c: usize, n: usize) -> u128 {
    if c == 0 {
        return u128::from(n == 0);
    }
    let mut acc: u128 = 1;
    for i in 0..n as u128 {
        // exact at every step: acc = C(c-1+i+1, i+1)
        acc = match acc.checked_mul(c as u128 + i) {
            Some(x) => x / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

struct Tables {
    /// Row-major: canonical column index x nonzero message.
    weights: Vec<u32>,
    messages: usize,
    columns: usize,
    max_weight: usize,
}

impl Tables {
    fn build(columns: &[Vec<u32>], wf: &WeightFunction, k: usize, n: usize) -> Result<Self> {
        let field = wf.field();
        let messages = (field.pow(k)? - 1) as usize;
        let max_weight = wf
            .max_symbol_weight()
            .checked_mul(n as u64)
            .filter(|&w| w < u64::from(u32::MAX))
            .ok_or_else(|| overflow("n * m"))? as usize;
        let msgs: Vec<Vec<u32>> = (1..=messages as u64)
            .map(|i| message_digits(field.q(), k, i))
            .collect();
        let mut weights = Vec::with_capacity(columns.len() * messages);
        for c in columns {
            for u in &msgs {
                weights.push(wf.symbol(field.dot(u, c)) as u32);
            }
        }
        Ok(Self {
            weights,
            messages,
            columns: columns.len(),
            max_weight,
        })
    }

    #[inline]
    fn row(&self, c: usize) -> &[u32] {
        &self.weights[c * self.messages..(c + 1) * self.messages]
    }
}

#[derive(Debug, Default)]
struct ShardResult {
    best: u64,
    witnesses: Vec<Vec<usize>>,
    examined: u64,
    full_rank: u64,
}

impl ShardResult {
    fn offer(&mut self, size: u64, indices: &[usize]) {
        if size > self.best {
            self.best = size;
            self.witnesses.clear();
        }
        if size == self.best && self.witnesses.len() < WITNESS_CAP {
            self.witnesses.push(indices.to_vec());
        }
    }

    /// Appends a later shard; associative, and order-preserving for witnesses.
    fn merge(mut self, other: ShardResult) -> ShardResult {
        self.examined += other.examined;
        self.full_rank += other.full_rank;
        if other.best > self.best {
            self.best = other.best;
            self.witnesses = other.witnesses;
        } else if other.best == self.best {
            let room = WITNESS_CAP - self.witnesses.len();
            self.witnesses
                .extend(other.witnesses.into_iter().take(room));
        }
        self
    }
}

struct Walker<'a> {
    tables: &'a Tables,
    n: usize,
    acc: Vec<Vec<u32>>,
    indices: Vec<usize>,
    seen: Vec<u32>,
    stamp: u32,
    out: ShardResult,
}

impl<'a> Walker<'a> {
    fn new(tables: &'a Tables, n: usize) -> Self {
        Self {
            tables,
            n,
            acc: vec![vec![0; tables.messages]; n + 1],
            indices: vec![0; n],
            seen: vec![0; tables.max_weight + 1],
            stamp: 0,
            out: ShardResult::default(),
        }
    }

    /// Enumerates all completions of a fixed nondecreasing prefix.
    fn run_prefix(&mut self, prefix: &[usize]) {
        for (d, &c) in prefix.iter().enumerate() {
            self.push(d, c);
        }
        self.descend(prefix.len(), *prefix.last().unwrap_or(&0));
    }

    fn push(&mut self, depth: usize, c: usize) {
        self.indices[depth] = c;
        let (head, tail) = self.acc.split_at_mut(depth + 1);
        let row = self.tables.row(c);
        for ((dst, &src), &w) in tail[0].iter_mut().zip(&head[depth]).zip(row) {
            *dst = src + w;
        }
    }

    fn descend(&mut self, depth: usize, from: usize) {
        if depth == self.n {
            self.leaf();
            return;
        }
        for c in from..self.tables.columns {
            self.push(depth, c);
            self.descend(depth + 1, c);
        }
    }

    fn leaf(&mut self) {
        self.out.examined += 1;
        let weights = &self.acc[self.n];
        if weights.contains(&0) {
            return;
        }
        self.out.full_rank += 1;
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
        let mut distinct = 0u64;
        for &w in weights {
            let slot = &mut self.seen[w as usize];
            if *slot != self.stamp {
                *slot = self.stamp;
                distinct += 1;
            }
        }
        if distinct >= self.out.best {
            let indices = self.indices.clone();
            self.out.offer(distinct, &indices);
        }
    }
}

/// All nondecreasing index sequences of length `depth` over `0..c`, in
/// lexicographic order.
fn prefixes(c: usize, depth: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if depth == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut cur = vec![0usize; depth];
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..depth).rev().find(|&p| cur[p] + 1 < c) else {
            return out;
        };
        let v = cur[pos] + 1;
        cur[pos..].iter_mut().for_each(|x| *x = v);
    }
}

fn to_multiset(
    wf: &WeightFunction,
    k: usize,
    columns: &[Vec<u32>],
    indices: &[usize],
) -> Result<ColumnMultiset> {
    let mut blocks: Vec<ColumnBlock> = Vec::new();
    let mut last = None;
    for &i in indices {
        if last == Some(i) {
            blocks.last_mut().expect("block exists").multiplicity += 1;
        } else {
            blocks.push(ColumnBlock {
                column: columns[i].clone(),
                multiplicity: 1,
            });
            last = Some(i);
        }
    }
    ColumnMultiset::new(wf.field(), k, blocks)
}

/// Computes `L(n,k,q)` for the given weight by exhaustive enumeration.
///
/// The multiset space is cut into shards by their first two columns; shards
/// run independently and are merged in enumeration order, so the result is
/// the same for any worker count.
pub fn optimal_spectrum(spec: &SearchSpec) -> Result<SearchResult> {
    let SearchSpec {
        n,
        k,
        ref wf,
        budget,
        workers,
        order,
    } = *spec;
    if k == 0 || n < k {
        return Err(Error::Shape(format!(
            "need 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    let mut columns = canonical_columns(k, wf)?;
    if order == EnumerationOrder::Reverse {
        columns.reverse();
    }
    let required = multiset_count(columns.len(), n);
    if required > u128::from(budget) {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let tables = Tables::build(&columns, wf, k, n)?;
    let shards = prefixes(columns.len(), n.min(2));
    let run = |prefix: &Vec<usize>| {
        let mut walker = Walker::new(&tables, n);
        walker.run_prefix(prefix);
        walker.out
    };
    let parts: Vec<ShardResult> = if workers == 1 {
        shards.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::WorkerPool(e.to_string()))?;
        pool.install(|| shards.par_iter().map(run).collect())
    };
    let merged = parts
        .into_iter()
        .fold(ShardResult::default(), ShardResult::merge);

    let c = wf.constants();
    let ceiling = mws_spectrum_size(wf, k)?;
    let full = wf.achievable_weights(n)?.len() as u64;
    let witnesses = merged
        .witnesses
        .iter()
        .map(|idx| to_multiset(wf, k, &columns, idx))
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(merged.best <= (n as u64 * c.m).min(ceiling));
    Ok(SearchResult {
        n,
        k,
        q: wf.field().q(),
        weight: wf.name().to_string(),
        l_value: merged.best,
        witnesses,
        is_mws_attained: merged.best == ceiling,
        is_fws_attained: merged.best == full,
        multisets_examined: merged.examined,
        full_rank_multisets: merged.full_rank,
        exhaustive: merged.examined as u128 == required,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BudgetStop {
    pub n: usize,
    pub required: u128,
    pub budget: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinMwsOutcome {
    /// Least length with an MWS code, if one was found up to `n_max`.
    pub found_n: Option<usize>,
    pub per_n: Vec<SearchResult>,
    /// Set when the search stopped early on the budget at this length.
    pub budget_exceeded: Option<BudgetStop>,
}

/// Searches lengths from the MWS lower bound upward for the first MWS code.
pub fn min_mws_length(
    k: usize,
    wf: &WeightFunction,
    n_max: usize,
    budget: u64,
    workers: usize,
    order: EnumerationOrder,
) -> Result<MinMwsOutcome> {
    if n_max < k {
        return Err(Error::Shape(format!("n_max = {n_max} is below k = {k}")));
    }
    let report = mws_min_length(wf, k)?;
    let start = report
        .exact
        .as_ref()
        .or(report.lower.as_ref())
        .map_or(k as u64, |b| b.value)
        .max(k as u64) as usize;
    let mut outcome = MinMwsOutcome {
        found_n: None,
        per_n: Vec::new(),
        budget_exceeded: None,
    };
    for n in start..=n_max {
        let spec = SearchSpec {
            n,
            k,
            wf: wf.clone(),
            budget,
            workers,
            order,
        };
        match optimal_spectrum(&spec) {
            Ok(result) => {
                let hit = result.is_mws_attained;
                outcome.per_n.push(result);
                if hit {
                    outcome.found_n = Some(n);
                    break;
                }
            }
            Err(Error::BudgetExceeded { required, budget }) => {
                outcome.budget_exceeded = Some(BudgetStop {
                    n,
                    required,
                    budget,
                });
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(outcome)
}
