//! Palindromic prefixes and the palindrome-density estimator.
//!
//! For an infinite word with palindromic prefix lengths `n₁ < n₂ < …`, the
//! palindrome density is `(limsup n_{i+1}/n_i)⁻¹`, or 0 when there are only
//! finitely many such prefixes. On a finite prefix the limsup is replaced by
//! the maximum over the last `tail` ratios.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::decimal;
use crate::error::{Error, Result};
use crate::report::{BoundReport, Verdict};
use crate::surd::Quad;
use crate::word::{Symbol, Word};

pub const DEFAULT_TAIL: usize = 5;

/// Every palindromic prefix length found within a scanned prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PalindromePrefixList {
    pub source: String,
    pub horizon: usize,
    /// Strictly increasing; empty only for the empty word.
    pub lengths: Vec<usize>,
}

impl PalindromePrefixList {
    pub fn scan(source: impl Into<String>, w: &Word) -> Self {
        PalindromePrefixList {
            source: source.into(),
            horizon: w.len(),
            lengths: palindromic_prefix_lengths(&w.to_symbols()),
        }
    }
}

/// Lengths `L ≥ 1` such that `s[..L]` is a palindrome, in increasing order.
///
/// Manacher's algorithm over the separator-interleaved text, stopped at the
/// center of the longest candidate prefix: linear time.
pub fn palindromic_prefix_lengths(s: &[Symbol]) -> Vec<usize> {
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    // Interleaved text t has length 2n + 1; odd positions carry symbols.
    let m = 2 * n + 1;
    let same = |i: usize, j: usize| i.is_multiple_of(2) || s[(i - 1) / 2] == s[(j - 1) / 2];
    let mut rad = vec![0usize; n + 1];
    let (mut center, mut right) = (0usize, 0usize);
    let mut out = Vec::new();
    for i in 0..=n {
        let mut k = if i < right {
            rad[2 * center - i].min(right - i)
        } else {
            0
        };
        while k < i && i + k + 1 < m && same(i - k - 1, i + k + 1) {
            k += 1;
        }
        rad[i] = k;
        if i + k > right {
            center = i;
            right = i + k;
        }
        // Center i of t spans s[0..i] exactly when the radius reaches the left end.
        if i > 0 && k == i {
            out.push(i);
        }
    }
    out
}

/// `(max of the last `tail` ratios n_{i+1}/n_i)⁻¹`, or 0 with fewer than two lengths.
pub fn densp_estimate(lengths: &[usize], tail: usize) -> Result<BigRational> {
    if tail == 0 {
        return Err(Error::invalid("tail window must be at least 1"));
    }
    if lengths.len() < 2 {
        return Ok(BigRational::zero());
    }
    let ratios = lengths.windows(2).map(|p| (p[1], p[0]));
    let skip = (lengths.len() - 1).saturating_sub(tail);
    let (num, den) = ratios
        .skip(skip)
        .max_by(|(a, b), (c, d)| (*a as u128 * *d as u128).cmp(&(*c as u128 * *b as u128)))
        .expect("at least one ratio");
    Ok(BigRational::new(BigInt::from(den), BigInt::from(num)))
}

/// Result of comparing the estimator with the bound `1/φ`.
#[derive(Clone, Debug)]
pub struct FischlerReport {
    pub list: PalindromePrefixList,
    pub tail: usize,
    pub estimate: BigRational,
    pub bound: Quad,
    /// `bound − estimate`, exact.
    pub margin: Quad,
    pub verdict: Verdict,
}

impl FischlerReport {
    pub fn to_bound_report(&self) -> BoundReport {
        let mut notes = vec![format!(
            "limsup estimated as the max of the last {} prefix-length ratios within horizon {}",
            self.tail, self.list.horizon
        )];
        if self.verdict == Verdict::ExceedsBoundPrecondition {
            notes.push(
                "estimate exceeds 1/φ: the bound assumes a non-periodic word, which a finite prefix cannot certify"
                    .into(),
            );
        }
        BoundReport {
            claim: "fischler".into(),
            params: vec![
                ("source".into(), self.list.source.clone()),
                ("horizon".into(), self.list.horizon.to_string()),
                ("tail".into(), self.tail.to_string()),
            ],
            interpretation: None,
            left_exact: decimal::fraction(&self.estimate),
            left_decimal: decimal::rational(&self.estimate, decimal::PLACES),
            right_exact: self.bound.to_string(),
            right_decimal: decimal::quad(&self.bound, decimal::PLACES),
            verdict: self.verdict,
            notes,
        }
    }
}

/// Estimates the palindrome density of `w` and checks it against `1/φ`.
pub fn fischler_check(source: impl Into<String>, w: &Word, tail: usize) -> Result<FischlerReport> {
    if w.len() < 2 {
        return Err(Error::invalid("the scanned prefix must have length at least 2"));
    }
    let list = PalindromePrefixList::scan(source, w);
    let estimate = densp_estimate(&list.lengths, tail)?;
    let bound = Quad::inverse_golden_ratio();
    let margin = &bound - &Quad::rational(estimate.clone());
    let verdict = match margin.signum() {
        Ordering::Less => Verdict::ExceedsBoundPrecondition,
        _ => Verdict::Holds,
    };
    Ok(FischlerReport {
        list,
        tail,
        estimate,
        bound,
        margin,
        verdict,
    })
}
