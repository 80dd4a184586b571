//! Component-wise weight functions over Z_q.
//!
//! A weight function is a symbol table `w: Z_q -> N` with `w(0) = 0` and
//! `w(x) > 0` otherwise; the weight of a word is the integer sum of its
//! symbol weights.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{overflow, Error, Result};
use crate::field::{checked_pow, PrimeField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightKind {
    Hamming,
    Lee,
    Manhattan,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightFunction {
    field: PrimeField,
    kind: WeightKind,
    name: String,
    table: Vec<u64>,
}

/// Derived constants of a weight function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WeightConstants {
    /// Largest symbol weight.
    pub m: u64,
    /// Largest number of distinct weights on a one-dimensional subspace.
    pub delta: u64,
    /// True iff the nonzero symbols take exactly the weights `1..=m`.
    pub initial_segment: bool,
}

impl WeightFunction {
    pub fn hamming(field: PrimeField) -> Self {
        let table = (0..field.q()).map(|x| u64::from(x != 0)).collect();
        Self::from_parts(field, WeightKind::Hamming, "hamming", table)
    }

    pub fn lee(field: PrimeField) -> Self {
        let q = field.q();
        let table = (0..q).map(|x| u64::from(x.min(q - x))).collect();
        Self::from_parts(field, WeightKind::Lee, "lee", table)
    }

    pub fn manhattan(field: PrimeField) -> Self {
        let table = (0..field.q()).map(u64::from).collect();
        Self::from_parts(field, WeightKind::Manhattan, "manhattan", table)
    }

    /// One of the built-in weights by name.
    pub fn builtin(name: &str, field: PrimeField) -> Result<Self> {
        match name {
            "hamming" => Ok(Self::hamming(field)),
            "lee" => Ok(Self::lee(field)),
            "manhattan" => Ok(Self::manhattan(field)),
            other => Err(Error::UnknownWeightName(other.to_string())),
        }
    }

    /// A custom table given as the weights of symbols `1..q`.
    pub fn custom(field: PrimeField, nonzero_weights: &[u64]) -> Result<Self> {
        let q = field.q() as usize;
        if nonzero_weights.len() != q - 1 {
            return Err(Error::InvalidWeightTable(format!(
                "expected {} weights for symbols 1..{}, got {}",
                q - 1,
                q - 1,
                nonzero_weights.len()
            )));
        }
        if let Some(pos) = nonzero_weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidWeightTable(format!(
                "symbol {} has weight 0; only the zero symbol may",
                pos + 1
            )));
        }
        let mut table = Vec::with_capacity(q);
        table.push(0);
        table.extend_from_slice(nonzero_weights);
        Ok(Self::from_parts(field, WeightKind::Custom, "custom", table))
    }

    /// Parses the one-line custom format `q v1 v2 ... v_{q-1}`.
    pub fn parse_custom(text: &str) -> Result<Self> {
        let line_no = text
            .lines()
            .position(|l| !l.trim().is_empty())
            .ok_or_else(|| Error::Parse {
                line: 1,
                column: 1,
                message: "empty weight table".into(),
            })?;
        let line = text.lines().nth(line_no).unwrap_or_default();
        let mut values = Vec::new();
        for (i, tok) in line.split_whitespace().enumerate() {
            let v: u64 = tok.parse().map_err(|_| Error::Parse {
                line: line_no + 1,
                column: i + 1,
                message: format!("`{tok}` is not a nonnegative integer"),
            })?;
            values.push(v);
        }
        let (&q, weights) = values.split_first().ok_or_else(|| Error::Parse {
            line: line_no + 1,
            column: 1,
            message: "missing modulus".into(),
        })?;
        let field = PrimeField::new(q)?;
        Self::custom(field, weights)
    }

    fn from_parts(field: PrimeField, kind: WeightKind, name: &str, table: Vec<u64>) -> Self {
        Self {
            field,
            kind,
            name: name.to_string(),
            table,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    #[inline]
    pub fn symbol(&self, x: u32) -> u64 {
        self.table[x as usize]
    }

    /// Integer sum of symbol weights.
    pub fn word_weight(&self, word: &[u32]) -> u64 {
        word.iter().map(|&x| self.table[x as usize]).sum()
    }

    pub fn max_symbol_weight(&self) -> u64 {
        self.table.iter().copied().max().unwrap_or(0)
    }

    /// The tuple `(w(a*1), w(a*2), ..., w(a*(q-1)))` for a scalar `a`.
    pub fn scalar_action(&self, a: u32) -> Vec<u64> {
        self.field
            .nonzero()
            .map(|b| self.symbol(self.field.mul(a, b)))
            .collect()
    }

    /// Nonzero scalars grouped by their scalar-action tuple, in order of
    /// their smallest member. The first class always contains 1.
    pub fn scalar_classes(&self) -> Vec<Vec<u32>> {
        let mut classes: Vec<(Vec<u64>, Vec<u32>)> = Vec::new();
        for a in self.field.nonzero() {
            let tuple = self.scalar_action(a);
            match classes.iter_mut().find(|(t, _)| *t == tuple) {
                Some((_, members)) => members.push(a),
                None => classes.push((tuple, vec![a])),
            }
        }
        classes.into_iter().map(|(_, m)| m).collect()
    }

    /// Scalars that leave every symbol weight unchanged.
    pub fn weight_preserving_scalars(&self) -> Vec<u32> {
        self.scalar_classes().swap_remove(0)
    }

    pub fn constants(&self) -> WeightConstants {
        let m = self.max_symbol_weight();
        let delta = self.scalar_classes().len() as u64;
        let values: BTreeSet<u64> = self.table[1..].iter().copied().collect();
        let initial_segment = values.iter().copied().eq(1..=m);
        WeightConstants {
            m,
            delta,
            initial_segment,
        }
    }

    pub fn require_initial_segment(&self) -> Result<WeightConstants> {
        let c = self.constants();
        if c.initial_segment {
            Ok(c)
        } else {
            Err(Error::NotInitialSegment(self.name.clone()))
        }
    }

    /// A word, written as `(symbol, multiplicity)` pairs, on whose span the
    /// weight function takes exactly `delta` distinct values. Symbol `b`
    /// appears `R^(b-1)` times with radix `R = m*q + 1`.
    pub fn delta_witness(&self) -> Result<Vec<(u32, u64)>> {
        let radix = self
            .max_symbol_weight()
            .checked_mul(u64::from(self.field.q()))
            .and_then(|x| x.checked_add(1))
            .ok_or_else(|| overflow("delta witness radix"))?;
        self.field
            .nonzero()
            .map(|b| {
                checked_pow(radix, (b - 1) as usize)
                    .map(|mult| (b, mult))
                    .ok_or_else(|| overflow("delta witness multiplicity"))
            })
            .collect()
    }

    /// `{ w(x) : x in Z_q^n, x != 0 }`, by a reachability sweep over
    /// coordinates.
    pub fn achievable_weights(&self, n: usize) -> Result<BTreeSet<u64>> {
        let m = self.max_symbol_weight();
        let top = m
            .checked_mul(n as u64)
            .filter(|&t| t < (1 << 32))
            .ok_or_else(|| overflow("n * m"))? as usize;
        let symbol_weights: BTreeSet<usize> = self.table.iter().map(|&w| w as usize).collect();
        let mut reach = vec![false; top + 1];
        reach[0] = true;
        for _ in 0..n {
            let mut next = vec![false; top + 1];
            for (s, _) in reach.iter().enumerate().filter(|(_, &r)| r) {
                for &w in &symbol_weights {
                    if s + w <= top {
                        next[s + w] = true;
                    }
                }
            }
            reach = next;
        }
        Ok(reach
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &r)| r)
            .map(|(w, _)| w as u64)
            .collect())
    }
}

impl fmt::Display for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.name, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn all_words(q: u32, n: usize) -> impl Iterator<Item = Vec<u32>> {
        let total = (q as u64).pow(n as u32);
        (0..total).map(move |i| crate::field::message_digits(q, n, i))
    }

    fn builtins(q: u64) -> [WeightFunction; 3] {
        let field = f(q);
        [
            WeightFunction::hamming(field),
            WeightFunction::lee(field),
            WeightFunction::manhattan(field),
        ]
    }

    #[test]
    fn builtin_tables() {
        let lee7 = WeightFunction::builtin("lee", f(7)).unwrap();
        assert_eq!(lee7.symbol(2), 2);
        assert_eq!(lee7.symbol(5), 2);
        assert_eq!(WeightFunction::manhattan(f(5)).table(), &[0, 1, 2, 3, 4]);
        assert_eq!(WeightFunction::hamming(f(3)).table(), &[0, 1, 1]);
        assert_eq!(
            WeightFunction::builtin("euclid", f(3)),
            Err(Error::UnknownWeightName("euclid".into()))
        );
    }

    #[test]
    fn word_weights() {
        let v = [1, 4, 2];
        assert_eq!(WeightFunction::lee(f(5)).word_weight(&v), 4);
        assert_eq!(WeightFunction::manhattan(f(5)).word_weight(&v), 7);
        assert_eq!(WeightFunction::hamming(f(5)).word_weight(&[1, 4, 0]), 2);
    }

    #[test]
    fn constants_of_builtins() {
        let c = WeightFunction::lee(f(5)).constants();
        assert_eq!((c.m, c.delta, c.initial_segment), (2, 2, true));
        let c = WeightFunction::manhattan(f(5)).constants();
        assert_eq!((c.m, c.delta, c.initial_segment), (4, 4, true));
        let c = WeightFunction::hamming(f(7)).constants();
        assert_eq!((c.m, c.delta, c.initial_segment), (1, 1, true));
        let c = WeightFunction::lee(f(2)).constants();
        assert_eq!((c.m, c.delta), (1, 1));
    }

    #[test]
    fn manhattan_scalar_tuples_are_distinct() {
        let w = WeightFunction::manhattan(f(5));
        let tuples: Vec<_> = (1..5).map(|a| w.scalar_action(a)).collect();
        assert_eq!(
            tuples,
            vec![
                vec![1, 2, 3, 4],
                vec![2, 4, 1, 3],
                vec![3, 1, 4, 2],
                vec![4, 3, 2, 1]
            ]
        );
    }

    #[test]
    fn builtin_constants_match_closed_forms() {
        for q in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            let [h, l, m] = builtins(q);
            assert_eq!((h.constants().m, h.constants().delta), (1, 1));
            assert_eq!(
                (l.constants().m, l.constants().delta),
                ((q - 1) / 2, (q - 1) / 2)
            );
            assert_eq!((m.constants().m, m.constants().delta), (q - 1, q - 1));
            for w in [h, l, m] {
                let c = w.constants();
                assert!(c.initial_segment);
                assert!(1 <= c.delta && c.delta < q && c.m <= c.delta);
            }
        }
    }

    #[test]
    fn custom_table_parsing() {
        let w = WeightFunction::parse_custom("3 1 3\n").unwrap();
        assert_eq!(w.table(), &[0, 1, 3]);
        assert!(!w.constants().initial_segment);
        assert!(matches!(
            WeightFunction::parse_custom("3 1 x"),
            Err(Error::Parse {
                line: 1,
                column: 3,
                ..
            })
        ));
        assert!(matches!(
            WeightFunction::parse_custom("5 1 2"),
            Err(Error::InvalidWeightTable(_))
        ));
        assert!(matches!(
            WeightFunction::parse_custom("3 0 1"),
            Err(Error::InvalidWeightTable(_))
        ));
        assert_eq!(
            WeightFunction::parse_custom("4 1 1 1"),
            Err(Error::NotPrime(4))
        );
    }

    #[test]
    fn achievable_weight_examples() {
        let lee5 = WeightFunction::lee(f(5));
        assert_eq!(lee5.achievable_weights(1).unwrap(), BTreeSet::from([1, 2]));
        assert_eq!(lee5.achievable_weights(4).unwrap(), (1..=8).collect());
        let custom = WeightFunction::custom(f(3), &[1, 3]).unwrap();
        assert_eq!(
            custom.achievable_weights(2).unwrap(),
            BTreeSet::from([1, 2, 3, 4, 6])
        );
    }

    #[test]
    fn achievable_weights_match_brute_force() {
        for q in [2u64, 3, 5] {
            let field = f(q);
            let mut weights = builtins(q).to_vec();
            if q == 5 {
                weights.push(WeightFunction::custom(field, &[2, 5, 1, 5]).unwrap());
            }
            for w in &weights {
                for n in 1..=4 {
                    let brute: BTreeSet<u64> = all_words(field.q(), n)
                        .skip(1)
                        .map(|x| w.word_weight(&x))
                        .collect();
                    assert_eq!(w.achievable_weights(n).unwrap(), brute, "{w} n={n}");
                }
            }
        }
    }

    #[test]
    fn weight_is_zero_only_on_zero_word() {
        for q in [2u64, 3, 5, 7] {
            for w in builtins(q) {
                for n in 1..=3 {
                    for x in all_words(q as u32, n) {
                        let zero = x.iter().all(|&s| s == 0);
                        assert_eq!(w.word_weight(&x) == 0, zero);
                    }
                }
            }
        }
    }

    #[test]
    fn lee_weight_is_negation_invariant() {
        for q in [3u64, 5, 7, 11] {
            let field = f(q);
            let lee = WeightFunction::lee(field);
            for n in 1..=3 {
                for x in all_words(field.q(), n) {
                    let neg: Vec<u32> = x.iter().map(|&s| field.neg(s)).collect();
                    assert_eq!(lee.word_weight(&x), lee.word_weight(&neg));
                }
            }
        }
    }

    /// Independent check of the scalar-class count against the definition
    /// of delta as a maximum over words.
    #[test]
    fn delta_matches_brute_force_maximum() {
        for q in [2u64, 3, 5, 7, 11] {
            let field = f(q);
            for w in builtins(q) {
                let delta = w.constants().delta;
                let mut best = 0u64;
                for n in 1..=4usize {
                    if (q as f64).powi(n as i32) > 20_000.0 {
                        break;
                    }
                    for u in all_words(field.q(), n).skip(1) {
                        let distinct: BTreeSet<u64> = field
                            .nonzero()
                            .map(|a| {
                                let au: Vec<u32> = u.iter().map(|&x| field.mul(a, x)).collect();
                                w.word_weight(&au)
                            })
                            .collect();
                        best = best.max(distinct.len() as u64);
                    }
                }
                assert_eq!(best, delta, "{w}");
            }
        }
    }

    #[test]
    fn radix_witness_attains_delta() {
        let customs = [
            WeightFunction::custom(f(5), &[2, 5, 1, 5]).unwrap(),
            WeightFunction::custom(f(7), &[1, 1, 2, 2, 1, 1]).unwrap(),
            WeightFunction::custom(f(3), &[1, 3]).unwrap(),
        ];
        let mut all: Vec<WeightFunction> = customs.to_vec();
        for q in [3u64, 5, 7] {
            all.extend(builtins(q));
        }
        for w in all {
            let field = w.field();
            let witness = w.delta_witness().unwrap();
            let distinct: BTreeSet<u128> = field
                .nonzero()
                .map(|a| {
                    witness
                        .iter()
                        .map(|&(b, mult)| u128::from(mult) * u128::from(w.symbol(field.mul(a, b))))
                        .sum()
                })
                .collect();
            assert_eq!(distinct.len() as u64, w.constants().delta, "{w}");
        }
    }

    #[test]
    fn lee_sum_difference_identity() {
        for q in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            let field = f(q);
            let lee = WeightFunction::lee(field);
            for u1 in 0..field.q() {
                for u2 in 0..field.q() {
                    if lee.symbol(field.sub(u1, u2)) == lee.symbol(field.add(u1, u2)) {
                        assert!(u1 == 0 || u2 == 0, "q={q} u1={u1} u2={u2}");
                    }
                }
            }
        }
    }
}
