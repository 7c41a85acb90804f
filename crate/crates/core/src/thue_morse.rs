//! The Thue–Morse word `t`, its zero/one counts, and exhaustive checks of the
//! power-of-two balance and the sandwich bound on `λ_n / n`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::word::{Alphabet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TmGenerator {
    /// `t₀ = 0`, `t_{2n} = t_n`, `t_{2n+1} = 1 − t_n`.
    Recurrence,
    /// Fixed point of `0 ↦ 01, 1 ↦ 10`.
    Morphism,
}

pub fn tm_prefix(len: usize, generator: TmGenerator) -> Word {
    match generator {
        TmGenerator::Morphism => Morphism::thue_morse()
            .fixed_point_prefix(0, len)
            .expect("0 is prolongable"),
        TmGenerator::Recurrence => {
            let s2 = Alphabet::sigma(2).expect("k = 2");
            let mut w = Word::with_capacity(&s2, len);
            for i in 0..len {
                let s = if i == 0 {
                    0
                } else {
                    w.get(i / 2).expect("earlier index") ^ (i & 1) as u8
                };
                w.push(s);
            }
            w
        }
    }
}

/// Exchanges 0 and 1. Defined on binary words only.
pub fn complement(w: &Word) -> Result<Word> {
    if w.alphabet().size() != 2 {
        return Err(Error::invalid(format!(
            "complement is defined on the binary alphabet, not on {} symbols",
            w.alphabet().size()
        )));
    }
    let mut out = Word::with_capacity(w.alphabet(), w.len());
    for s in w.iter() {
        out.push(1 - s);
    }
    Ok(out)
}

/// Zero and one counts of the prefix `p_n` of length `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TmCounts {
    pub n: BigUint,
    pub zeros: BigUint,
    pub ones: BigUint,
}

/// Counts of `p_n` in `O(log n)` big-integer steps.
///
/// Writing `n = 2^k + m` with `0 ≤ m < 2^k`, the tail of `p_n` after
/// `p_{2^k}` is the complement of `p_m`, so
/// `λ_n = λ_{2^k} + α_m` and `α_n = α_{2^k} + (m − α_m)`,
/// with `λ_{2^k} = α_{2^k} = 2^{k−1}` for `k ≥ 1`.
pub fn tm_counts(n: &BigUint) -> TmCounts {
    let mut zeros = BigUint::zero();
    let mut rest = n.clone();
    // Whether the block being unfolded is complemented.
    let mut flipped = false;
    while !rest.is_zero() {
        let k = rest.bits() - 1;
        if k == 0 {
            if !flipped {
                zeros += 1u32;
            }
            break;
        }
        zeros += BigUint::one() << (k - 1);
        rest -= BigUint::one() << k;
        flipped = !flipped;
    }
    let ones = n - &zeros;
    TmCounts {
        n: n.clone(),
        zeros,
        ones,
    }
}

pub fn tm_counts_u64(n: u64) -> (u64, u64) {
    let c = tm_counts(&BigUint::from(n));
    let z = u64::try_from(&c.zeros).expect("zeros <= n");
    (z, n - z)
}

/// `n = 2^k + m` with `0 ≤ m < 2^k`, for `n ≥ 1`.
pub fn split_power(n: u64) -> (u32, u64) {
    let k = 63 - n.leading_zeros();
    (k, n - (1u64 << k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichViolation {
    pub n: u64,
    pub k: u32,
    pub m: u64,
    pub zeros: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerOfTwoCheck {
    pub k: u32,
    pub zeros: u64,
    pub ones: u64,
    /// Both counts equal `2^{k−1}`.
    pub balanced: bool,
    /// `p_{2^k} = p_{2^{k−1}} · complement(p_{2^{k−1}})`.
    pub complement_block: bool,
}

#[derive(Clone, Debug)]
pub struct TmBoundsReport {
    pub n_max: u64,
    /// Number of `n` at which the sandwich bound was evaluated.
    pub checked: u64,
    /// Ordered by `n`; capped at [`MAX_REPORTED_VIOLATIONS`].
    pub violations: Vec<SandwichViolation>,
    pub violation_count: u64,
    pub power_of_two_checks: Vec<PowerOfTwoCheck>,
    /// Running counts from the generated prefix agree with [`tm_counts`] at every chunk edge.
    pub counts_consistent: bool,
    pub notes: Vec<String>,
}

impl TmBoundsReport {
    pub fn holds(&self) -> bool {
        self.violation_count == 0
            && self.counts_consistent
            && self
                .power_of_two_checks
                .iter()
                .all(|c| c.balanced && c.complement_block)
    }
}

pub const MAX_REPORTED_VIOLATIONS: usize = 32;
const CHUNK: u64 = 1 << 14;

/// Checks `2^{k−1} ≤ λ_n ≤ 2^{k−1} + m` (the bound on `λ_n/n` with the
/// common denominator `n = 2^k + m` cleared) for every `2 ≤ n ≤ n_max`,
/// plus the power-of-two balance and the complement-block identity for
/// every `1 ≤ k` with `2^k ≤ n_max`.
///
/// `n = 1` (`k = 0`) is excluded: `2^{−1}` is not a count and `λ₁ = 1`.
pub fn tm_bounds_check(n_max: u64) -> Result<TmBoundsReport> {
    if n_max < 1 {
        return Err(Error::invalid("n_max must be at least 1"));
    }
    let len = usize::try_from(n_max)
        .ok()
        .filter(|&l| l <= crate::generate::DEFAULT_BUDGET)
        .ok_or_else(|| Error::ResourceLimit {
            n: n_max as i64,
            detail: format!("a sweep to {n_max} exceeds the symbol budget"),
        })?;
    let t = tm_prefix(len, TmGenerator::Recurrence);

    let chunks: Vec<(u64, u64)> = (0..n_max.div_ceil(CHUNK))
        .map(|c| (c * CHUNK + 1, ((c + 1) * CHUNK).min(n_max)))
        .collect();
    let per_chunk: Vec<(Vec<SandwichViolation>, u64, u64, bool)> = chunks
        .par_iter()
        .map(|&(lo, hi)| {
            let (mut zeros, _) = tm_counts_u64(lo - 1);
            let mut found = Vec::new();
            let mut count = 0u64;
            let mut checked = 0u64;
            for n in lo..=hi {
                if t.get((n - 1) as usize) == Some(0) {
                    zeros += 1;
                }
                if n < 2 {
                    continue;
                }
                checked += 1;
                let (k, m) = split_power(n);
                let half = 1u64 << (k - 1);
                if zeros < half || zeros > half + m {
                    count += 1;
                    if found.len() < MAX_REPORTED_VIOLATIONS {
                        found.push(SandwichViolation { n, k, m, zeros });
                    }
                }
            }
            let consistent = tm_counts_u64(hi).0 == zeros;
            (found, count, checked, consistent)
        })
        .collect();

    let mut violations = Vec::new();
    let (mut violation_count, mut checked, mut counts_consistent) = (0, 0, true);
    for (found, count, c, ok) in per_chunk {
        violations.extend(found);
        violation_count += count;
        checked += c;
        counts_consistent &= ok;
    }
    violations.truncate(MAX_REPORTED_VIOLATIONS);

    let mut power_of_two_checks = Vec::new();
    let mut k = 1u32;
    while k < 64 && (1u64 << k) <= n_max {
        let size = 1usize << k;
        let half = size / 2;
        let block = t.prefix(size);
        let zeros = block.letter_counts()[0];
        let ones = size as u64 - zeros;
        let head = t.prefix(half);
        let tail = block.slice(half..size).expect("in range");
        power_of_two_checks.push(PowerOfTwoCheck {
            k,
            zeros,
            ones,
            balanced: zeros == half as u64 && ones == half as u64,
            complement_block: complement(&head).expect("binary") == tail,
        });
        k += 1;
    }

    Ok(TmBoundsReport {
        n_max,
        checked,
        violations,
        violation_count,
        power_of_two_checks,
        counts_consistent,
        notes: vec![
            "n = 1 (k = 0) excluded: the bound needs k >= 1, as the induction starts at n = 2".into(),
        ],
    })
}

/// How the printed and corrected forms of the `n = 2^k + m` count
/// decomposition fare against brute-force counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub n_max: u64,
    /// `λ_n = λ_{2^k} + (m − α_m)`, `α_n = α_{2^k} + α_m`.
    pub printed_failures: u64,
    pub printed_first_failure: Option<u64>,
    /// `λ_n = λ_{2^k} + α_m`, `α_n = α_{2^k} + (m − α_m)`.
    pub corrected_failures: u64,
}

pub fn decomposition_check(n_max: u64) -> Result<DecompositionReport> {
    if !(1..=1 << 26).contains(&n_max) {
        return Err(Error::invalid("n_max must lie in [1, 2^26]"));
    }
    let t = tm_prefix(n_max as usize, TmGenerator::Morphism);
    // zeros[i] = λ_i by direct counting.
    let mut zeros = Vec::with_capacity(n_max as usize + 1);
    zeros.push(0u64);
    for s in t.iter() {
        let last = *zeros.last().expect("nonempty");
        zeros.push(last + u64::from(s == 0));
    }
    let ones = |i: u64| i - zeros[i as usize];
    let mut report = DecompositionReport {
        n_max,
        printed_failures: 0,
        printed_first_failure: None,
        corrected_failures: 0,
    };
    for n in 1..=n_max {
        let (k, m) = split_power(n);
        let p = 1u64 << k;
        let (lam, alp) = (zeros[n as usize], ones(n));
        let (lam_p, alp_p) = (zeros[p as usize], ones(p));
        let am = ones(m);
        if lam != lam_p + (m - am) || alp != alp_p + am {
            report.printed_failures += 1;
            report.printed_first_failure.get_or_insert(n);
        }
        if lam != lam_p + am || alp != alp_p + (m - am) {
            report.corrected_failures += 1;
        }
    }
    Ok(report)
}

pub fn is_power_of_two(n: &BigUint) -> bool {
    !n.is_zero() && (n & (n - 1u32)).is_zero()
}

/// `λ_n / n`, the zero frequency of `p_n`, as a reduced fraction `(p, q)`.
pub fn zero_frequency(c: &TmCounts) -> (BigUint, BigUint) {
    let g = c.zeros.gcd(&c.n);
    if g.is_zero() {
        return (BigUint::zero(), BigUint::one());
    }
    (&c.zeros / &g, &c.n / &g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefixes() {
        assert_eq!(tm_prefix(1, TmGenerator::Recurrence).to_string(), "0");
        assert_eq!(tm_prefix(8, TmGenerator::Recurrence).to_string(), "01101001");
        assert_eq!(tm_prefix(8, TmGenerator::Morphism).to_string(), "01101001");
        assert!(tm_prefix(0, TmGenerator::Recurrence).is_empty());
        assert_eq!(
            tm_prefix(1024, TmGenerator::Recurrence),
            tm_prefix(1024, TmGenerator::Morphism)
        );
    }

    #[test]
    fn recurrence_matches_bit_parity() {
        let t = tm_prefix(5000, TmGenerator::Recurrence);
        for (i, s) in t.iter().enumerate() {
            assert_eq!(s as u32, i.count_ones() % 2);
        }
    }

    #[test]
    fn count_examples() {
        assert_eq!(tm_counts_u64(16), (8, 8));
        assert_eq!(tm_counts_u64(1), (1, 0));
        assert_eq!(tm_counts_u64(5), (2, 3));
        assert_eq!(tm_counts_u64(0), (0, 0));
        let big = BigUint::one() << 200u32;
        // t at index 2^200 is 1
        let c = tm_counts(&(&big + 1u32));
        assert_eq!(c.zeros, &big >> 1u32);
        assert_eq!(c.ones, (&big >> 1u32) + 1u32);
    }

    #[test]
    fn complement_rejects_non_binary() {
        let s3 = Alphabet::sigma(3).unwrap();
        assert!(complement(&Word::parse(&s3, "012").unwrap()).is_err());
        let s2 = Alphabet::sigma(2).unwrap();
        assert_eq!(
            complement(&Word::parse(&s2, "0110").unwrap()).unwrap().to_string(),
            "1001"
        );
    }

    #[test]
    fn sandwich_example_at_five() {
        let (k, m) = split_power(5);
        assert_eq!((k, m), (2, 1));
        let (z, _) = tm_counts_u64(5);
        // 2/5 <= 2/5 <= 3/5
        assert!((2..=3).contains(&z));
        let rep = tm_bounds_check(5).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.checked, 4);
    }

    #[test]
    fn printed_decomposition_fails_where_corrected_holds() {
        // n = 3: p_3 = 011 has one zero, the printed form gives two.
        let rep = decomposition_check(1000).unwrap();
        assert_eq!(rep.printed_first_failure, Some(3));
        assert!(rep.printed_failures > 0);
        assert_eq!(rep.corrected_failures, 0);
    }

    #[test]
    fn powers_of_two() {
        assert!(is_power_of_two(&BigUint::from(64u32)));
        assert!(!is_power_of_two(&BigUint::from(0u32)));
        assert!(!is_power_of_two(&BigUint::from(12u32)));
        let c = tm_counts(&BigUint::from(6u32));
        assert_eq!(
            zero_frequency(&c),
            (BigUint::from(1u32), BigUint::from(2u32))
        );
    }
}
