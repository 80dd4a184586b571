//! Arithmetic over Z_q for prime q, vectors and generator matrices over it.
//!
//! Field elements are stored as their canonical representatives `0..q` and
//! every operation reduces eagerly, because the Lee and Manhattan weights
//! read those representatives directly.

use std::fmt;

use serde::Serialize;

use crate::error::{overflow, Error, Result};

/// Default cap on the number of codewords a single enumeration may visit.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 24;

/// The prime field Z_q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    /// Validates that `q` is prime.
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::ModulusTooSmall(q));
        }
        if q > u64::from(u32::MAX) || !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(Self { q: q as u32 })
    }

    #[inline]
    pub fn q(self) -> u32 {
        self.q
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) + u64::from(b)) % u64::from(self.q)) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.q)) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    /// Multiplicative inverse of a nonzero element, by Fermat.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.q), "zero has no inverse");
        let mut base = u64::from(a % self.q);
        let mut exp = self.q - 2;
        let modulus = u64::from(self.q);
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % modulus;
            }
            base = base * base % modulus;
            exp >>= 1;
        }
        acc as u32
    }

    /// Reduces an arbitrary integer to its representative in `0..q`.
    #[inline]
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(i64::from(self.q)) as u32
    }

    /// Nonzero elements `1..q` in increasing order.
    pub fn nonzero(self) -> impl Iterator<Item = u32> {
        1..self.q
    }

    /// Dot product of two equal-length vectors.
    pub fn dot(self, a: &[u32], b: &[u32]) -> u32 {
        debug_assert_eq!(a.len(), b.len());
        let q = u64::from(self.q);
        let mut acc = 0u64;
        for (&x, &y) in a.iter().zip(b) {
            acc = (acc + u64::from(x) * u64::from(y)) % q;
        }
        acc as u32
    }

    /// `q^k` as a checked integer.
    pub fn pow(self, k: usize) -> Result<u64> {
        checked_pow(u64::from(self.q), k).ok_or_else(|| overflow("q^k"))
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}", self.q)
    }
}

pub(crate) fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    let exp = u32::try_from(exp).ok()?;
    base.checked_pow(exp)
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A word of Z_q^n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldVector {
    q: u32,
    entries: Vec<u32>,
}

impl FieldVector {
    pub fn new(field: PrimeField, entries: Vec<u32>) -> Result<Self> {
        if let Some((column, &value)) = entries.iter().enumerate().find(|(_, &v)| v >= field.q()) {
            return Err(Error::EntryOutOfRange {
                row: 0,
                column,
                value: u64::from(value),
                q: field.q(),
            });
        }
        Ok(Self {
            q: field.q(),
            entries,
        })
    }

    pub fn zero(field: PrimeField, n: usize) -> Self {
        Self {
            q: field.q(),
            entries: vec![0; n],
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    /// Coordinates holding a nonzero symbol.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, _)| i)
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.entries
    }
}

/// Rank of a list of equal-length rows over Z_q, by Gaussian elimination.
pub fn matrix_rank(field: PrimeField, rows: &[Vec<u32>]) -> usize {
    let mut m: Vec<Vec<u32>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x % field.q()).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv(m[rank][col]);
        for x in m[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, p));
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// A k x n full-rank matrix over Z_q with no all-zero column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    field: PrimeField,
    rows: Vec<Vec<u32>>,
}

impl GeneratorMatrix {
    pub fn new(field: PrimeField, rows: Vec<Vec<u32>>) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::Shape(
                "a generator matrix needs at least one row".into(),
            ));
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(Error::Shape(
                "a generator matrix needs at least one column".into(),
            ));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            if let Some((j, &v)) = row.iter().enumerate().find(|(_, &v)| v >= field.q()) {
                return Err(Error::EntryOutOfRange {
                    row: i + 1,
                    column: j + 1,
                    value: u64::from(v),
                    q: field.q(),
                });
            }
        }
        if let Some(column) = (0..n).find(|&j| rows.iter().all(|r| r[j] == 0)) {
            return Err(Error::ZeroColumn { column: column + 1 });
        }
        let rank = matrix_rank(field, &rows);
        if rank != k {
            return Err(Error::RankDeficient { rank, k });
        }
        Ok(Self { field, rows })
    }

    /// Builds a matrix from its columns, each of length k.
    pub fn from_columns(field: PrimeField, columns: &[Vec<u32>]) -> Result<Self> {
        let k = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != k) {
            return Err(Error::Shape("columns have differing lengths".into()));
        }
        let rows = (0..k)
            .map(|i| columns.iter().map(|c| c[i]).collect())
            .collect();
        Self::new(field, rows)
    }

    /// The identity matrix I_k.
    pub fn identity(field: PrimeField, k: usize) -> Self {
        let rows = (0..k)
            .map(|i| (0..k).map(|j| u32::from(i == j)).collect())
            .collect();
        Self { field, rows }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.n()).map(|j| self.column(j)).collect()
    }

    pub fn rank(&self) -> usize {
        matrix_rank(self.field, &self.rows)
    }

    /// The codeword `u G` for a message `u` of length k.
    pub fn encode(&self, message: &[u32]) -> FieldVector {
        assert_eq!(message.len(), self.k(), "message length must equal k");
        let f = self.field;
        let mut out = vec![0u32; self.n()];
        for (&u, row) in message.iter().zip(&self.rows) {
            if u == 0 {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(u, g));
            }
        }
        FieldVector {
            q: f.q(),
            entries: out,
        }
    }

    /// All `q^k` codewords, bounded by [`DEFAULT_ENUMERATION_BUDGET`].
    pub fn codewords(&self) -> Result<Codewords<'_>> {
        self.codewords_with_budget(DEFAULT_ENUMERATION_BUDGET)
    }

    /// All `q^k` codewords in lexicographic message order, zero first.
    pub fn codewords_with_budget(&self, budget: u64) -> Result<Codewords<'_>> {
        let total = self.field.pow(self.k())?;
        if total > budget {
            return Err(Error::BudgetExceeded {
                required: u128::from(total),
                budget,
            });
        }
        Ok(Codewords {
            matrix: self,
            message: vec![0; self.k()],
            remaining: total,
        })
    }
}

impl fmt::Display for GeneratorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Iterator over the codewords of a [`GeneratorMatrix`].
pub struct Codewords<'a> {
    matrix: &'a GeneratorMatrix,
    message: Vec<u32>,
    remaining: u64,
}

impl Codewords<'_> {
    /// The message that the next call to `next` will encode.
    pub fn peek_message(&self) -> Option<&[u32]> {
        (self.remaining > 0).then_some(self.message.as_slice())
    }
}

impl Iterator for Codewords<'_> {
    type Item = FieldVector;

    fn next(&mut self) -> Option<FieldVector> {
        if self.remaining == 0 {
            return None;
        }
        let word = self.matrix.encode(&self.message);
        self.remaining -= 1;
        let q = self.matrix.q();
        for digit in self.message.iter_mut().rev() {
            *digit += 1;
            if *digit < q {
                break;
            }
            *digit = 0;
        }
        Some(word)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

/// Message number `index` written in base q, most significant digit first.
pub fn message_digits(q: u32, k: usize, mut index: u64) -> Vec<u32> {
    let mut digits = vec![0u32; k];
    for d in digits.iter_mut().rev() {
        *d = (index % u64::from(q)) as u32;
        index /= u64::from(q);
    }
    digits
}
