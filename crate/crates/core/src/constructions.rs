//! Explicit generator matrices with extremal weight spectra.
//!
//! Every construction is returned as a [`ColumnMultiset`]: a list of
//! distinct columns with repetition counts, expanded on demand.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{overflow, Error, Result};
use crate::field::{matrix_rank, message_digits, GeneratorMatrix, PrimeField};
use crate::spectra::WeightSpectrum;
use crate::weights::WeightFunction;

/// Largest matrix `expand` will materialise.
pub const MAX_EXPANDED_LENGTH: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ColumnBlock {
    pub column: Vec<u32>,
    pub multiplicity: u64,
}

/// A generator matrix `[c1^a1 | c2^a2 | ...]` described by its blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ColumnMultiset {
    #[serde(skip)]
    field: PrimeField,
    k: usize,
    blocks: Vec<ColumnBlock>,
}

impl ColumnMultiset {
    pub fn new(field: PrimeField, k: usize, blocks: Vec<ColumnBlock>) -> Result<Self> {
        if k == 0 || blocks.is_empty() {
            return Err(Error::Shape(
                "a column multiset needs k >= 1 and at least one block".into(),
            ));
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.column.len() != k {
                return Err(Error::Shape(format!(
                    "block {} has a column of length {}, expected {k}",
                    i + 1,
                    b.column.len()
                )));
            }
            if let Some((row, &v)) = b.column.iter().enumerate().find(|(_, &v)| v >= field.q()) {
                return Err(Error::EntryOutOfRange {
                    row: row + 1,
                    column: i + 1,
                    value: u64::from(v),
                    q: field.q(),
                });
            }
            if b.column.iter().all(|&x| x == 0) {
                return Err(Error::ZeroColumn { column: i + 1 });
            }
            if b.multiplicity == 0 {
                return Err(Error::Shape(format!("block {} has multiplicity 0", i + 1)));
            }
        }
        let columns: Vec<Vec<u32>> = blocks.iter().map(|b| b.column.clone()).collect();
        let rank = matrix_rank(field, &columns);
        if rank != k {
            return Err(Error::RankDeficient { rank, k });
        }
        let out = Self { field, k, blocks };
        out.n()?;
        Ok(out)
    }

    /// Groups a list of columns (in first-occurrence order) into blocks.
    pub fn from_columns(field: PrimeField, k: usize, columns: &[Vec<u32>]) -> Result<Self> {
        let mut blocks: Vec<ColumnBlock> = Vec::new();
        for c in columns {
            match blocks.iter_mut().find(|b| b.column == *c) {
                Some(b) => b.multiplicity += 1,
                None => blocks.push(ColumnBlock {
                    column: c.clone(),
                    multiplicity: 1,
                }),
            }
        }
        Self::new(field, k, blocks)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[ColumnBlock] {
        &self.blocks
    }

    pub fn multiplicities(&self) -> Vec<u64> {
        self.blocks.iter().map(|b| b.multiplicity).collect()
    }

    /// Total number of columns.
    pub fn n(&self) -> Result<u64> {
        self.blocks
            .iter()
            .try_fold(0u64, |acc, b| acc.checked_add(b.multiplicity))
            .ok_or_else(|| overflow("code length"))
    }

    /// The concrete k x n matrix, blocks in listed order.
    pub fn expand(&self) -> Result<GeneratorMatrix> {
        let n = self.n()?;
        if n > MAX_EXPANDED_LENGTH {
            return Err(overflow("expanded matrix length"));
        }
        let rows = (0..self.k)
            .map(|i| {
                self.blocks
                    .iter()
                    .flat_map(|b| std::iter::repeat_n(b.column[i], b.multiplicity as usize))
                    .collect()
            })
            .collect();
        GeneratorMatrix::new(self.field, rows)
    }

    /// Weight spectrum computed block-wise: the weight of `uG` is the sum of
    /// `multiplicity * w(u . column)` over blocks. Does not expand the matrix.
    pub fn spectrum(&self, wf: &WeightFunction) -> Result<WeightSpectrum> {
        if wf.field() != self.field {
            return Err(Error::Shape(
                "weight function over a different field".into(),
            ));
        }
        let q = self.field.q();
        let total = self.field.pow(self.k)?;
        if total > crate::field::DEFAULT_ENUMERATION_BUDGET {
            return Err(Error::BudgetExceeded {
                required: u128::from(total),
                budget: crate::field::DEFAULT_ENUMERATION_BUDGET,
            });
        }
        let mut distribution = BTreeMap::new();
        for index in 1..total {
            let u = message_digits(q, self.k, index);
            let mut weight = 0u64;
            for b in &self.blocks {
                let sym = self.field.dot(&u, &b.column);
                weight = wf
                    .symbol(sym)
                    .checked_mul(b.multiplicity)
                    .and_then(|x| x.checked_add(weight))
                    .ok_or_else(|| overflow("codeword weight"))?;
            }
            *distribution.entry(weight).or_insert(0u64) += 1;
        }
        Ok(WeightSpectrum {
            n: self.n()? as usize,
            k: self.k,
            q,
            weight_name: wf.name().to_string(),
            weights: distribution.keys().copied().collect(),
            distribution,
        })
    }

    /// Parses the text form: one block per line, `c1 c2 ... ck ^ mult`.
    pub fn parse(field: PrimeField, text: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut k = None;
        for (line_idx, line) in text.lines().enumerate() {
            let line_no = line_idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let caret = tokens
                .iter()
                .position(|&t| t == "^")
                .ok_or_else(|| Error::Parse {
                    line: line_no,
                    column: tokens.len() + 1,
                    message: "expected `^ multiplicity`".into(),
                })?;
            if caret + 2 != tokens.len() {
                return Err(Error::Parse {
                    line: line_no,
                    column: caret + 2,
                    message: "expected exactly one multiplicity after `^`".into(),
                });
            }
            let parse_num = |col: usize, tok: &str| -> Result<u64> {
                tok.parse::<u64>().map_err(|_| Error::Parse {
                    line: line_no,
                    column: col,
                    message: format!("`{tok}` is not a nonnegative integer"),
                })
            };
            let mut column = Vec::with_capacity(caret);
            for (i, tok) in tokens[..caret].iter().enumerate() {
                let v = parse_num(i + 1, tok)?;
                if v >= u64::from(field.q()) {
                    return Err(Error::Parse {
                        line: line_no,
                        column: i + 1,
                        message: format!("entry {v} is outside [0, {})", field.q()),
                    });
                }
                column.push(v as u32);
            }
            match k {
                None => k = Some(column.len()),
                Some(k) if k != column.len() => {
                    return Err(Error::Parse {
                        line: line_no,
                        column: 1,
                        message: format!("column has {} entries, expected {k}", column.len()),
                    })
                }
                _ => {}
            }
            let multiplicity = parse_num(caret + 2, tokens[caret + 1])?;
            blocks.push(ColumnBlock {
                column,
                multiplicity,
            });
        }
        let k = k.ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: "no blocks".into(),
        })?;
        Self::new(field, k, blocks)
    }

    /// One `c1 ... ck ^ mult` line per block.
    pub fn lines(&self) -> Vec<String> {
        self.blocks
            .iter()
            .map(|b| {
                let col: Vec<String> = b.column.iter().map(u32::to_string).collect();
                format!("{} ^ {}", col.join(" "), b.multiplicity)
            })
            .collect()
    }
}

impl fmt::Display for ColumnMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn unit(k: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; k];
    v[i] = 1;
    v
}

/// `e_1 + ... + e_j` (first `j` coordinates set).
fn prefix_sum(k: usize, j: usize) -> Vec<u32> {
    (0..k).map(|i| u32::from(i < j)).collect()
}

/// Largest FWS length `((m+1)^k - 1)/m`, i.e. `sum_{i<k} (m+1)^i`.
pub fn fws_length_limit(m: u64, k: usize) -> Result<u64> {
    let base = m.checked_add(1).ok_or_else(|| overflow("m + 1"))?;
    let mut total = 0u64;
    let mut power = 1u64;
    for i in 0..k {
        total = total
            .checked_add(power)
            .ok_or_else(|| overflow("FWS length limit"))?;
        if i + 1 < k {
            power = power
                .checked_mul(base)
                .ok_or_else(|| overflow("FWS length limit"))?;
        }
    }
    Ok(total)
}

/// FWS code of any admissible length on the columns `e_1, ..., e_k`.
///
/// Multiplicities satisfy `a_1 = 1` and `a_i <= m*(a_1 + ... + a_{i-1}) + 1`,
/// so the digit sums `sum a_i w(u_i)` cover `1..=m*n`. Each `a_i` is as large
/// as possible while leaving one column for every later unit vector; at the
/// maximal length this is `a_i = (m+1)^(i-1)`.
pub fn general_fws(k: usize, wf: &WeightFunction, n: u64) -> Result<ColumnMultiset> {
    let m = wf.require_initial_segment()?.m;
    if k == 0 {
        return Err(Error::Shape("k must be at least 1".into()));
    }
    let max = fws_length_limit(m, k)?;
    if n < k as u64 || n > max {
        return Err(Error::OutOfRange {
            n,
            min: k as u64,
            max,
            citation: "FWS codes exist exactly for k <= n <= ((m+1)^k - 1)/m",
        });
    }
    let mut blocks = Vec::with_capacity(k);
    let mut assigned = 0u64;
    for i in 0..k {
        let cap = m * assigned + 1;
        let reserve = (k - 1 - i) as u64;
        let a = cap.min(n - assigned - reserve);
        debug_assert!(a >= 1);
        assigned += a;
        blocks.push(ColumnBlock {
            column: unit(k, i),
            multiplicity: a,
        });
    }
    debug_assert_eq!(assigned, n);
    ColumnMultiset::new(wf.field(), k, blocks)
}

/// Column list `e_1, ..., e_k` followed by `columns_after` with base-`a`
/// multiplicities `1, a, a^2, ...`, `a = (q+1)/2`.
fn lee_digit_blocks(
    k: usize,
    field: PrimeField,
    columns_after: impl Iterator<Item = Vec<u32>>,
) -> Result<ColumnMultiset> {
    if field.q() == 2 {
        return Err(Error::NotOdd(2));
    }
    if k == 0 {
        return Err(Error::Shape("k must be at least 1".into()));
    }
    let alpha = u64::from(field.q().div_ceil(2));
    let mut power = 1u64;
    let mut blocks = Vec::new();
    for (i, column) in (0..k).map(|i| unit(k, i)).chain(columns_after).enumerate() {
        if i > 0 {
            power = power
                .checked_mul(alpha)
                .ok_or_else(|| overflow("Lee-MWS multiplicity"))?;
        }
        blocks.push(ColumnBlock {
            column,
            multiplicity: power,
        });
    }
    ColumnMultiset::new(field, k, blocks)
}

/// Lee-MWS code for odd prime q.
///
/// Blocks are `e_1, ..., e_k` followed by `e_i + e_j` for all `i < j` in
/// lexicographic order, with multiplicities `1, a, a^2, ...` where
/// `a = (q+1)/2`. Lee symbol weights are at most `a - 1`, so a codeword's
/// weight written in base `a` reads off `|u_i|` and every `|u_i + u_j|`,
/// which pins `u` down up to sign. For `k <= 2` this is
/// `[e_1 | e_2^a | (e_1+e_2)^(a^2)]`.
pub fn lee_mws(k: usize, field: PrimeField) -> Result<ColumnMultiset> {
    let pairs = (0..k).flat_map(move |i| {
        (i + 1..k).map(move |j| {
            let mut v = vec![0; k];
            v[i] = 1;
            v[j] = 1;
            v
        })
    });
    lee_digit_blocks(k, field, pairs)
}

/// Variant of [`lee_mws`] using only the prefix sums `e_1 + ... + e_j`
/// (`j = 2..=k`) after the unit vectors, length `sum_{i=0}^{2k-2} a^i`.
///
/// Coincides with [`lee_mws`] for `k <= 2`. For `k >= 3` it is not MWS:
/// messages with `u_1 + u_2 = 0` that differ only in the sign of `u_3`
/// produce equal weights, e.g. `(1,2,1)` and `(1,2,2)` over Z_3.
pub fn lee_prefix_sums(k: usize, field: PrimeField) -> Result<ColumnMultiset> {
    lee_digit_blocks(k, field, (2..=k).map(move |j| prefix_sum(k, j)))
}

/// Length of the [`lee_mws`] construction, `sum_{i<B} ((q+1)/2)^i` with
/// `B = k(k+1)/2` blocks.
pub fn lee_mws_length(k: usize, field: PrimeField) -> Result<u64> {
    if field.q() == 2 {
        return Err(Error::NotOdd(2));
    }
    let alpha = u64::from(field.q().div_ceil(2));
    let blocks = k * (k + 1) / 2;
    let mut total = 0u64;
    let mut power = 1u64;
    for i in 0..blocks {
        if i > 0 {
            power = power
                .checked_mul(alpha)
                .ok_or_else(|| overflow("Lee-MWS length"))?;
        }
        total = total
            .checked_add(power)
            .ok_or_else(|| overflow("Lee-MWS length"))?;
    }
    Ok(total)
}

/// Manhattan-MWS code `[e_1 | e_2^q | ... | e_k^(q^(k-1))]`, also FWS.
pub fn manhattan_mws(k: usize, field: PrimeField) -> Result<ColumnMultiset> {
    if k == 0 {
        return Err(Error::Shape("k must be at least 1".into()));
    }
    let q = u64::from(field.q());
    let mut blocks = Vec::with_capacity(k);
    let mut power = 1u64;
    for i in 0..k {
        if i > 0 {
            power = power
                .checked_mul(q)
                .ok_or_else(|| overflow("Manhattan-MWS multiplicity"))?;
        }
        blocks.push(ColumnBlock {
            column: unit(k, i),
            multiplicity: power,
        });
    }
    ColumnMultiset::new(field, k, blocks)
}

/// Manhattan-FWS code of length `k <= n <= (q^k - 1)/(q - 1)`.
pub fn manhattan_fws(k: usize, field: PrimeField, n: u64) -> Result<ColumnMultiset> {
    general_fws(k, &WeightFunction::manhattan(field), n)
}
