//! Closed-form bounds and exact values for spectrum sizes and code lengths.

use std::fmt;

use serde::Serialize;

use crate::constructions::{fws_length_limit, lee_mws_length};
use crate::error::{overflow, Error, Result};
use crate::spectra::mws_spectrum_size;
use crate::weights::{WeightFunction, WeightKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Quantity {
    /// Largest spectrum size of a k-dimensional code, any length.
    #[serde(rename = "L(k,q)")]
    SpectrumSize,
    /// Largest spectrum size of an [n,k]_q code.
    #[serde(rename = "L(n,k,q)")]
    SpectrumSizeAtLength,
    /// Shortest length of an MWS code.
    #[serde(rename = "M(k,q)")]
    MinMwsLength,
    /// Longest length of an FWS code.
    #[serde(rename = "N(k,q)")]
    MaxFwsLength,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::SpectrumSize => "L(k,q)",
            Quantity::SpectrumSizeAtLength => "L(n,k,q)",
            Quantity::MinMwsLength => "M(k,q)",
            Quantity::MaxFwsLength => "N(k,q)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundValue {
    pub value: u64,
    pub source: String,
}

fn bv(value: u64, source: &str) -> Option<BoundValue> {
    Some(BoundValue {
        value,
        source: source.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub quantity: Quantity,
    pub weight: String,
    pub k: usize,
    pub q: u32,
    pub n: Option<u64>,
    pub lower: Option<BoundValue>,
    pub upper: Option<BoundValue>,
    pub exact: Option<BoundValue>,
    pub notes: Vec<String>,
}

impl BoundReport {
    fn new(quantity: Quantity, wf: &WeightFunction, k: usize, n: Option<u64>) -> Self {
        Self {
            quantity,
            weight: wf.name().to_string(),
            k,
            q: wf.field().q(),
            n,
            lower: None,
            upper: None,
            exact: None,
            notes: Vec::new(),
        }
    }

    /// `lower <= exact <= upper` for whichever of them are present.
    pub fn is_consistent(&self) -> bool {
        let lo = self.lower.as_ref().map(|b| b.value);
        let hi = self.upper.as_ref().map(|b| b.value);
        let ex = self.exact.as_ref().map(|b| b.value);
        let le = |a: Option<u64>, b: Option<u64>| match (a, b) {
            (Some(a), Some(b)) => a <= b,
            _ => true,
        };
        le(lo, ex) && le(ex, hi) && le(lo, hi)
    }

    /// Best known value: the exact one, or the interval `[lower, upper]`.
    pub fn summary(&self) -> String {
        if let Some(e) = &self.exact {
            return format!("{} = {}", self.quantity, e.value);
        }
        match (&self.lower, &self.upper) {
            (Some(l), Some(u)) => format!("{} <= {} <= {}", l.value, self.quantity, u.value),
            (Some(l), None) => format!("{} >= {}", self.quantity, l.value),
            (None, Some(u)) => format!("{} <= {}", self.quantity, u.value),
            (None, None) => format!("{} unknown", self.quantity),
        }
    }
}

fn lines_count(wf: &WeightFunction, k: usize) -> Result<u64> {
    let q = u64::from(wf.field().q());
    Ok((wf.field().pow(k)? - 1) / (q - 1))
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::Shape("k must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Upper bound on the spectrum size, with exact values where they are known.
pub fn spectrum_ceiling(wf: &WeightFunction, k: usize, n: Option<u64>) -> Result<BoundReport> {
    check_k(k)?;
    let c = wf.constants();
    let ceiling = mws_spectrum_size(wf, k)?;
    let field = wf.field();
    let q = field.q();
    let Some(n) = n else {
        let mut r = BoundReport::new(Quantity::SpectrumSize, wf, k, None);
        r.upper = bv(ceiling, "(q^k-1)/(q-1) * delta: disjoint weight sets of at most delta values per 1-dim subspace");
        let qk = field.pow(k)?;
        r.exact = match wf.kind() {
            WeightKind::Lee if q > 2 => bv((qk - 1) / 2, "Lee-MWS construction attains (q^k-1)/2"),
            WeightKind::Manhattan => bv(qk - 1, "Manhattan-MWS construction attains q^k-1"),
            WeightKind::Hamming | WeightKind::Lee => bv(
                lines_count(wf, k)?,
                "Hamming MWS codes exist for all k, q (known from literature)",
            ),
            WeightKind::Custom => None,
        };
        return Ok(r);
    };
    if n < k as u64 {
        return Err(Error::OutOfRange {
            n,
            min: k as u64,
            max: u64::MAX,
            citation: "an [n,k]_q code needs n >= k",
        });
    }
    let mut r = BoundReport::new(Quantity::SpectrumSizeAtLength, wf, k, Some(n));
    let nm = n.checked_mul(c.m).ok_or_else(|| overflow("n * m"))?;
    r.upper = if nm <= ceiling {
        bv(nm, "n * m: no word of length n weighs more than n * m")
    } else {
        bv(ceiling, "(q^k-1)/(q-1) * delta: L(n,k,q) <= L(k,q)")
    };
    if c.initial_segment && n <= fws_length_limit(c.m, k)? {
        r.exact = bv(
            nm,
            "FWS code exists for k <= n <= ((m+1)^k-1)/m and attains n * m",
        );
    }
    Ok(r)
}

/// `N = ((m+1)^k - 1)/m` for initial-segment weights.
pub fn fws_max_length(wf: &WeightFunction, k: usize) -> Result<BoundReport> {
    check_k(k)?;
    let c = wf.require_initial_segment()?;
    let mut r = BoundReport::new(Quantity::MaxFwsLength, wf, k, None);
    r.exact = bv(
        fws_length_limit(c.m, k)?,
        "((m+1)^k-1)/m: support growth bound on an FWS basis, attained by e_i^((m+1)^(i-1))",
    );
    Ok(r)
}

/// Bounds on the shortest MWS code length.
pub fn mws_min_length(wf: &WeightFunction, k: usize) -> Result<BoundReport> {
    check_k(k)?;
    let field = wf.field();
    let q = field.q();
    let c = wf.constants();
    let lines = lines_count(wf, k)?;
    let mut r = BoundReport::new(Quantity::MinMwsLength, wf, k, None);
    match wf.kind() {
        WeightKind::Lee if q > 2 => {
            let extra = (2 * (k as u64 - 1)).div_ceil(u64::from(q) - 1);
            let lower = lines
                .checked_add(extra)
                .ok_or_else(|| overflow("Lee MWS lower bound"))?;
            r.lower = bv(
                lower,
                "(q^k-1)/(q-1) + ceil(2(k-1)/(q-1)): every nonzero codeword of a Lee-MWS code has support >= k",
            );
            let upper = lee_mws_length(k, field)?;
            r.upper = bv(
                upper,
                "length of the Lee-MWS construction on e_i and e_i+e_j, sum_{i<k(k+1)/2} ((q+1)/2)^i",
            );
            if lower == upper {
                r.exact = r.lower.clone();
            }
            if k >= 3 {
                r.notes.push(
                    "the shorter prefix-sum matrix e_i, e_1+...+e_j of length (a^(2k-1)-1)/(a-1) \
                     is not MWS for k >= 3, so the upper bound uses the pairwise-sum construction"
                        .into(),
                );
            }
            if k == 2 && q == 5 {
                r.notes
                    .push("exhaustive search tables give 8 <= M(2,5) <= 11".into());
            }
        }
        WeightKind::Lee => {
            r.lower = bv(
                lines,
                "2^k - 1: binary Lee weight is Hamming weight, each weight held by one codeword",
            );
        }
        WeightKind::Manhattan => {
            r.exact = bv(
                lines,
                "(q^k-1)/(q-1): n(q-1) >= q^k-1, attained by [e_1 | e_2^q | ... | e_k^(q^(k-1))]",
            );
        }
        WeightKind::Hamming => {
            r.lower = bv(
                lines,
                "(q^k-1)/(q-1): weight sandwich with at most q-1 codewords per weight",
            );
            r.notes.push(
                "upper bounds for the Hamming weight are known from literature; not computed"
                    .into(),
            );
        }
        WeightKind::Custom => {
            let ceiling = mws_spectrum_size(wf, k)?;
            r.lower = bv(
                ceiling.div_ceil(c.m),
                "ceil(L(k,q)/m): an MWS code needs n * m >= its spectrum size",
            );
        }
    }
    Ok(r)
}

/// The weight sandwich `ceil((M-1)/r) <= observed <= m*n`.
pub fn sandwich_check(code_size: u64, r: u64, m: u64, n: u64, observed: u64) -> bool {
    if r == 0 || code_size == 0 {
        return false;
    }
    let Some(upper) = m.checked_mul(n) else {
        return false;
    };
    (code_size - 1).div_ceil(r) <= observed && observed <= upper
}

/// The only length at which a code can be both FWS and MWS, if any:
/// `(q^k-1)/(q-1)` when `delta = m = q-1`, otherwise none.
pub fn fws_and_mws_length(wf: &WeightFunction, k: usize) -> Result<Option<u64>> {
    let c = wf.constants();
    let q = u64::from(wf.field().q());
    if c.delta == c.m && c.m == q - 1 {
        Ok(Some(lines_count(wf, k)?))
    } else {
        Ok(None)
    }
}
