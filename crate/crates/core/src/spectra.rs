//! Weight spectra of codes and the FWS / MWS predicates.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{overflow, Error, Result};
use crate::field::{GeneratorMatrix, DEFAULT_ENUMERATION_BUDGET};
use crate::weights::WeightFunction;

/// Distinct weights of the nonzero codewords together with their counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightSpectrum {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub weight_name: String,
    pub weights: Vec<u64>,
    pub distribution: BTreeMap<u64, u64>,
}

impl WeightSpectrum {
    pub fn size(&self) -> usize {
        self.weights.len()
    }

    pub fn min(&self) -> Option<u64> {
        self.weights.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.weights.last().copied()
    }

    /// Largest number of nonzero codewords sharing one weight.
    pub fn max_multiplicity(&self) -> u64 {
        self.distribution.values().copied().max().unwrap_or(0)
    }

    pub fn codeword_count(&self) -> u64 {
        self.distribution.values().sum::<u64>() + 1
    }

    pub fn is_fws(&self, wf: &WeightFunction) -> Result<bool> {
        let full = wf.achievable_weights(self.n)?;
        Ok(self.weights.len() == full.len() && self.weights.iter().eq(full.iter()))
    }

    pub fn is_mws(&self, wf: &WeightFunction) -> Result<bool> {
        Ok(self.weights.len() as u64 == mws_spectrum_size(wf, self.k)?)
    }
}

/// The MWS spectrum size `(q^k - 1)/(q - 1) * delta`.
pub fn mws_spectrum_size(wf: &WeightFunction, k: usize) -> Result<u64> {
    let field = wf.field();
    let q = u64::from(field.q());
    let lines = (field.pow(k)? - 1) / (q - 1);
    lines
        .checked_mul(wf.constants().delta)
        .ok_or_else(|| overflow("MWS spectrum size"))
}

fn check_same_field(g: &GeneratorMatrix, wf: &WeightFunction) -> Result<()> {
    if g.field() != wf.field() {
        return Err(Error::Shape(format!(
            "matrix is over {} but the weight function is over {}",
            g.field(),
            wf.field()
        )));
    }
    Ok(())
}

pub fn spectrum(g: &GeneratorMatrix, wf: &WeightFunction) -> Result<WeightSpectrum> {
    spectrum_with_budget(g, wf, DEFAULT_ENUMERATION_BUDGET)
}

/// Enumerates every nonzero codeword and tallies its weight.
pub fn spectrum_with_budget(
    g: &GeneratorMatrix,
    wf: &WeightFunction,
    budget: u64,
) -> Result<WeightSpectrum> {
    check_same_field(g, wf)?;
    let mut distribution = BTreeMap::new();
    for word in g.codewords_with_budget(budget)?.skip(1) {
        *distribution
            .entry(wf.word_weight(word.entries()))
            .or_insert(0u64) += 1;
    }
    Ok(WeightSpectrum {
        n: g.n(),
        k: g.k(),
        q: g.q(),
        weight_name: wf.name().to_string(),
        weights: distribution.keys().copied().collect(),
        distribution,
    })
}

pub fn is_fws(g: &GeneratorMatrix, wf: &WeightFunction) -> Result<bool> {
    spectrum(g, wf)?.is_fws(wf)
}

pub fn is_mws(g: &GeneratorMatrix, wf: &WeightFunction) -> Result<bool> {
    spectrum(g, wf)?.is_mws(wf)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SupportProperties {
    /// Smallest support size of a nonzero codeword.
    pub min_support: usize,
    /// Every two nonzero codewords share a support coordinate.
    pub pairwise_intersecting: bool,
}

pub fn support_properties(g: &GeneratorMatrix) -> Result<SupportProperties> {
    let blocks = g.n().div_ceil(64);
    let supports: Vec<Vec<u64>> = g
        .codewords()?
        .skip(1)
        .map(|w| {
            let mut bits = vec![0u64; blocks];
            for i in w.support() {
                bits[i / 64] |= 1 << (i % 64);
            }
            bits
        })
        .collect();
    let min_support = supports
        .iter()
        .map(|s| s.iter().map(|b| b.count_ones() as usize).sum())
        .min()
        .unwrap_or(0);
    let pairwise_intersecting = supports.iter().enumerate().all(|(i, a)| {
        supports[i + 1..]
            .iter()
            .all(|b| a.iter().zip(b).any(|(x, y)| x & y != 0))
    });
    Ok(SupportProperties {
        min_support,
        pairwise_intersecting,
    })
}

/// For each row taken as `v1` (the rest forming the remainder of the basis),
/// the pair `(s', t)` where `t` is the size of the union of the other rows'
/// supports and `s'` counts the coordinates of `v1` outside that union.
pub fn basis_support_counts(g: &GeneratorMatrix) -> Vec<(usize, usize)> {
    let rows = g.rows();
    (0..rows.len())
        .map(|i| {
            let others: BTreeSet<usize> = rows
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .flat_map(|(_, r)| {
                    r.iter()
                        .enumerate()
                        .filter(|(_, &x)| x != 0)
                        .map(|(c, _)| c)
                })
                .collect();
            let s_prime = rows[i]
                .iter()
                .enumerate()
                .filter(|&(c, &x)| x != 0 && !others.contains(&c))
                .count();
            (s_prime, others.len())
        })
        .collect()
}

/// Checks `s' <= m*t + 1` for every row rotation of an FWS code's basis.
pub fn verify_basis_bound(g: &GeneratorMatrix, wf: &WeightFunction) -> Result<bool> {
    let m = wf.require_initial_segment()?.m;
    if !is_fws(g, wf)? {
        return Err(Error::NotFws);
    }
    Ok(basis_support_counts(g)
        .into_iter()
        .all(|(s_prime, t)| s_prime as u64 <= m * t as u64 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn blocks(field: PrimeField, spec: &[(&[u32], usize)]) -> GeneratorMatrix {
        let cols: Vec<Vec<u32>> = spec
            .iter()
            .flat_map(|(c, mult)| std::iter::repeat_n(c.to_vec(), *mult))
            .collect();
        GeneratorMatrix::from_columns(field, &cols).unwrap()
    }

    fn g25() -> GeneratorMatrix {
        blocks(f(5), &[(&[1, 0], 1), (&[0, 1], 3), (&[1, 1], 9)])
    }

    #[test]
    fn identity_lee_q3() {
        let field = f(3);
        let s = spectrum(
            &GeneratorMatrix::identity(field, 2),
            &WeightFunction::lee(field),
        )
        .unwrap();
        assert_eq!(s.weights, vec![1, 2]);
        assert_eq!(s.distribution, BTreeMap::from([(1, 4), (2, 4)]));
        assert_eq!(s.codeword_count(), 9);
    }

    #[test]
    fn lee_construction_example_has_twelve_weights() {
        let lee = WeightFunction::lee(f(5));
        let s = spectrum(&g25(), &lee).unwrap();
        assert_eq!(s.size(), 12);
        assert!(s.is_mws(&lee).unwrap());
        assert!(!s.is_fws(&lee).unwrap());
        assert!(s.distribution.values().all(|&c| c == 2));
    }

    #[test]
    fn manhattan_small_code_is_fws_and_mws() {
        let field = f(3);
        let man = WeightFunction::manhattan(field);
        let g = blocks(field, &[(&[1, 0], 1), (&[0, 1], 3)]);
        let s = spectrum(&g, &man).unwrap();
        assert_eq!(s.weights, (1..=8).collect::<Vec<_>>());
        assert!(s.is_mws(&man).unwrap());
        assert!(s.is_fws(&man).unwrap());
    }

    #[test]
    fn fws_examples() {
        for q in [3u64, 5, 7] {
            let field = f(q);
            for wf in [
                WeightFunction::hamming(field),
                WeightFunction::lee(field),
                WeightFunction::manhattan(field),
            ] {
                for k in 1..=2 {
                    assert!(is_fws(&GeneratorMatrix::identity(field, k), &wf).unwrap());
                }
            }
        }
        let lee = WeightFunction::lee(f(5));
        assert!(is_fws(&blocks(f(5), &[(&[1, 0], 1), (&[0, 1], 3)]), &lee).unwrap());
        let long = blocks(f(5), &[(&[1, 0], 1), (&[0, 1], 3), (&[1, 1], 9)]);
        assert!(!is_fws(&long, &lee).unwrap());
    }

    #[test]
    fn mws_negative_example() {
        let field = f(5);
        let s = spectrum(
            &GeneratorMatrix::identity(field, 2),
            &WeightFunction::lee(field),
        )
        .unwrap();
        assert_eq!(s.weights, vec![1, 2, 3, 4]);
        assert!(!s.is_mws(&WeightFunction::lee(field)).unwrap());
    }

    #[test]
    fn fws_against_non_initial_table() {
        // table (0,1,3): the ambient weight set at n=2 is {1,2,3,4,6}
        let field = f(3);
        let wf = WeightFunction::custom(field, &[1, 3]).unwrap();
        assert!(is_fws(&GeneratorMatrix::identity(field, 2), &wf).unwrap());
        let g = GeneratorMatrix::new(field, vec![vec![1, 1]]).unwrap();
        // codewords (1,1) and (2,2): weights 2 and 6
        assert!(!is_fws(&g, &wf).unwrap());
    }

    #[test]
    fn support_examples() {
        let field = f(5);
        let sp = support_properties(&GeneratorMatrix::identity(field, 2)).unwrap();
        assert_eq!(sp.min_support, 1);
        assert!(!sp.pairwise_intersecting);
        let sp = support_properties(&g25()).unwrap();
        assert!(sp.pairwise_intersecting);
        assert!(sp.min_support >= 2);
    }

    #[test]
    fn basis_bound_examples() {
        let field = f(5);
        let lee = WeightFunction::lee(field);
        let g = blocks(field, &[(&[1, 0], 1), (&[0, 1], 3)]);
        assert_eq!(basis_support_counts(&g), vec![(1, 3), (3, 1)]);
        assert!(verify_basis_bound(&g, &lee).unwrap());

        let f3 = f(3);
        assert!(
            verify_basis_bound(&GeneratorMatrix::identity(f3, 3), &WeightFunction::lee(f3))
                .unwrap()
        );
        let full = blocks(f3, &[(&[1, 0, 0], 1), (&[0, 1, 0], 2), (&[0, 0, 1], 4)]);
        assert_eq!(basis_support_counts(&full), vec![(1, 6), (2, 5), (4, 3)]);
        assert!(verify_basis_bound(&full, &WeightFunction::hamming(f3)).unwrap());

        assert_eq!(verify_basis_bound(&g25(), &lee), Err(Error::NotFws));
        let custom = WeightFunction::custom(field, &[1, 3, 3, 1]).unwrap();
        assert!(matches!(
            verify_basis_bound(&g, &custom),
            Err(Error::NotInitialSegment(_))
        ));
    }

    #[test]
    fn spectrum_invariant_under_column_permutation_and_lee_negation() {
        let field = f(5);
        let lee = WeightFunction::lee(field);
        let nonzero: Vec<Vec<u32>> = (1..25u64)
            .map(|i| crate::field::message_digits(5, 2, i))
            .collect();
        // every multiset of columns up to n = 4; orderings are covered by
        // comparing against a reversed and a rotated copy
        for n in 2..=4usize {
            let mut idx = vec![0usize; n];
            loop {
                let cols: Vec<Vec<u32>> = idx.iter().map(|&i| nonzero[i].clone()).collect();
                if let Ok(g) = GeneratorMatrix::from_columns(field, &cols) {
                    let base = spectrum(&g, &lee).unwrap();
                    let mut reordered = cols.clone();
                    reordered.reverse();
                    reordered.rotate_left(1);
                    let g2 = GeneratorMatrix::from_columns(field, &reordered).unwrap();
                    assert_eq!(spectrum(&g2, &lee).unwrap().distribution, base.distribution);
                    for j in 0..n {
                        let mut negated = cols.clone();
                        for x in negated[j].iter_mut() {
                            *x = field.neg(*x);
                        }
                        let g3 = GeneratorMatrix::from_columns(field, &negated).unwrap();
                        assert_eq!(spectrum(&g3, &lee).unwrap().distribution, base.distribution);
                    }
                }
                // next nondecreasing index tuple
                let Some(pos) = (0..n).rev().find(|&p| idx[p] + 1 < nonzero.len()) else {
                    break;
                };
                let v = idx[pos] + 1;
                for x in idx[pos..].iter_mut() {
                    *x = v;
                }
            }
        }
    }

    #[test]
    fn rejects_mismatched_field() {
        let g = GeneratorMatrix::identity(f(3), 2);
        assert!(matches!(
            spectrum(&g, &WeightFunction::lee(f(5))),
            Err(Error::Shape(_))
        ));
    }
}
