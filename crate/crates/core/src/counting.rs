//! Letter counts and densities of recursively concatenated words, computed
//! from count vectors without materializing the words.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::decimal;
use crate::error::{Error, Result};
use crate::generate::{RecursiveSpec, DEFAULT_BUDGET};
use crate::palindromes::densp_estimate;
use crate::palindromes::palindromic_prefix_lengths;
use crate::report::{BoundReport, Verdict};
use crate::source::WordSource;
use crate::stats::{self, Correlation, SeriesSummary};
use crate::surd::Quad;

/// Per-letter counts of `y_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountVector {
    pub n: u64,
    pub counts: Vec<BigUint>,
}

impl CountVector {
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

fn seed_counts(spec: &RecursiveSpec) -> (Vec<BigUint>, Vec<BigUint>) {
    let big = |w: &crate::word::Word| w.letter_counts().into_iter().map(BigUint::from).collect();
    (big(spec.seed0()), big(spec.seed1()))
}

fn add(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Counts of `y_n` by `v_n = v_{n−1} + v_{n−2}`: `n` big-integer vector additions.
pub fn counts_recursive(spec: &RecursiveSpec, n: u64) -> CountVector {
    let (mut a, mut b) = seed_counts(spec);
    if n == 0 {
        return CountVector { n, counts: a };
    }
    for _ in 1..n {
        let c = add(&b, &a);
        a = std::mem::replace(&mut b, c);
    }
    CountVector { n, counts: b }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityRecord {
    pub counts: CountVector,
    pub total: BigUint,
    pub densities: Vec<BigRational>,
}

impl DensityRecord {
    fn from_counts(counts: CountVector) -> Result<Self> {
        let total = counts.total();
        if total.is_zero() {
            return Err(Error::invalid(format!("y_{} is empty", counts.n)));
        }
        let t = BigInt::from(total.clone());
        let densities = counts
            .counts
            .iter()
            .map(|c| BigRational::new(BigInt::from(c.clone()), t.clone()))
            .collect();
        Ok(DensityRecord {
            counts,
            total,
            densities,
        })
    }

    pub fn n(&self) -> u64 {
        self.counts.n
    }

    pub fn sum(&self) -> BigRational {
        self.densities.iter().sum()
    }

    pub fn decimals(&self) -> Vec<String> {
        self.densities
            .iter()
            .map(|d| decimal::rational(d, decimal::PLACES))
            .collect()
    }
}

pub fn density_record(spec: &RecursiveSpec, n: u64) -> Result<DensityRecord> {
    DensityRecord::from_counts(counts_recursive(spec, n))
}

/// Records for `n = 0..=n_max`, in one pass over the recurrence.
pub fn density_series(spec: &RecursiveSpec, n_max: u64) -> Result<Vec<DensityRecord>> {
    let (mut a, mut b) = seed_counts(spec);
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let counts = match n {
            0 => a.clone(),
            1 => b.clone(),
            _ => {
                let c = add(&b, &a);
                a = std::mem::replace(&mut b, c);
                b.clone()
            }
        };
        out.push(DensityRecord::from_counts(CountVector { n, counts })?);
    }
    Ok(out)
}

/// `lim dens(a, n)` for every letter `a`.
///
/// With `v_n = f_{n−1} v₀ + f_n v₁` and `f_{n−1}/f_n → 1/φ`, the limit of
/// `v_n[a] / |v_n|` is `(c₀ + φ c₁) / (L₀ + φ L₁)`.
pub fn limit_densities(spec: &RecursiveSpec) -> Vec<Quad> {
    let (c0, c1) = seed_counts(spec);
    let phi = Quad::golden_ratio();
    let lin = |x: &BigUint, y: &BigUint| {
        let x = Quad::rational(BigRational::from_integer(x.clone().into()));
        &x + &phi.mul_rational(&BigRational::from_integer(y.clone().into()))
    };
    let l0: BigUint = c0.iter().sum();
    let l1: BigUint = c1.iter().sum();
    let den = lin(&l0, &l1);
    c0.iter()
        .zip(&c1)
        .map(|(x, y)| lin(x, y).checked_div(&den).expect("seeds are nonempty"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table2Row {
    pub n: u64,
    pub length: BigUint,
    pub counts: Vec<BigUint>,
}

pub fn table2_rows(spec: &RecursiveSpec, n_lo: u64, n_hi: u64) -> Result<Vec<Table2Row>> {
    if n_lo < 2 || n_lo > n_hi {
        return Err(Error::invalid(format!(
            "table rows need 2 <= n_lo <= n_hi, got {n_lo}..{n_hi}"
        )));
    }
    Ok(density_series(spec, n_hi)?
        .into_iter()
        .skip(n_lo as usize)
        .map(|r| Table2Row {
            n: r.n(),
            length: r.total,
            counts: r.counts.counts,
        })
        .collect())
}

/// Readings of the logarithmic bound on `dens(𝕐_n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lemma42Interp {
    /// Exponents read as the row labels of the count table:
    /// `ln((λ_n + α_n + β_n) / 𝓛_{n−1})`.
    A,
    /// As `A`, with a base-10 logarithm.
    B,
    /// Literal powers of the `n = 2` counts `(λ, α, β, 𝓛) = (2, 1, 1, 4)`:
    /// `ln((λ^n + α^{n+1} + β^{n+2}) / 𝓛^{n−1})`.
    C,
}

impl Lemma42Interp {
    pub const ALL: [Lemma42Interp; 3] = [Lemma42Interp::A, Lemma42Interp::B, Lemma42Interp::C];

    pub fn id(self) -> &'static str {
        match self {
            Lemma42Interp::A => "A",
            Lemma42Interp::B => "B",
            Lemma42Interp::C => "C",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Lemma42Interp::A => "ln((lambda_n + alpha_n + beta_n) / L_{n-1}), table-row reading",
            Lemma42Interp::B => "log10((lambda_n + alpha_n + beta_n) / L_{n-1}), table-row reading",
            Lemma42Interp::C => "ln((2^n + 1^(n+1) + 1^(n+2)) / 4^(n-1)), literal powers of the n = 2 counts",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Lemma42Interp::A),
            "B" | "b" => Ok(Lemma42Interp::B),
            "C" | "c" => Ok(Lemma42Interp::C),
            _ => Err(Error::invalid(format!("unknown interpretation {s:?}; use A, B or C"))),
        }
    }
}

fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    let shift = bits.saturating_sub(64);
    let top = (n >> shift).to_f64().expect("fits in 64 bits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln r` for `r > 0`, accurate for operands far beyond `f64` range.
pub fn ln_rational(r: &BigRational) -> f64 {
    ln_big(r.numer()) - ln_big(r.denom())
}

/// Compares a rational with `e`, refining the partial sums of `Σ 1/k!`
/// until the comparison is decided (it always is, since `e` is irrational).
pub fn cmp_with_e(x: &BigRational) -> Ordering {
    let mut term = BigRational::one();
    let mut lower = BigRational::one();
    let mut k = 1u64;
    loop {
        term /= BigRational::from_integer(k.into());
        lower += &term;
        // The tail beyond 1/k! is below 1/(k·k!).
        let upper = &lower + &term / BigRational::from_integer(k.into());
        if *x < lower {
            return Ordering::Less;
        }
        if *x > upper {
            return Ordering::Greater;
        }
        k += 1;
    }
}

pub fn lemma42_check(spec: &RecursiveSpec, n: u64, interp: Lemma42Interp) -> Result<BoundReport> {
    if n < 2 {
        return Err(Error::invalid("the logarithmic bound is stated for n >= 2"));
    }
    let record = density_record(spec, n)?;
    let left = record.sum();
    let (num, den): (BigInt, BigInt) = match interp {
        Lemma42Interp::A | Lemma42Interp::B => {
            let prev = counts_recursive(spec, n - 1).total();
            (record.total.clone().into(), prev.into())
        }
        Lemma42Interp::C => {
            let e = n as usize;
            let pow = |b: u32, k: usize| num_traits::pow(BigInt::from(b), k);
            (pow(2, e) + pow(1, e + 1) + pow(1, e + 2), pow(4, e - 1))
        }
    };
    let log = if interp == Lemma42Interp::B { "log10" } else { "ln" };
    let mut notes = vec![interp.describe().to_string()];
    let (right_decimal, verdict) = if num.is_positive() && den.is_positive() {
        let x = BigRational::new(num.clone(), den.clone());
        let value = match interp {
            Lemma42Interp::B => ln_rational(&x) / std::f64::consts::LN_10,
            _ => ln_rational(&x),
        };
        // left = 1 here, and 1 <= ln x iff x >= e; 1 <= log10 x iff x >= 10.
        let holds = if left.is_one() {
            match interp {
                Lemma42Interp::B => x >= BigRational::from_integer(10.into()),
                _ => cmp_with_e(&x) == Ordering::Greater,
            }
        } else {
            // Densities always sum to one; kept for completeness.
            BigRational::from_float(value).is_some_and(|v| left <= v)
        };
        (decimal::float(value, decimal::PLACES), Verdict::from_le(holds))
    } else {
        notes.push("logarithm argument is not positive".into());
        ("undefined".into(), Verdict::Undefined)
    };
    Ok(BoundReport {
        claim: "lemma42".into(),
        params: vec![("n".into(), n.to_string())],
        interpretation: Some(interp.id().into()),
        left_exact: decimal::compact(&left),
        left_decimal: decimal::rational(&left, decimal::PLACES),
        right_exact: format!("{log}({num}/{den})"),
        right_decimal,
        verdict,
        notes,
    })
}

/// Palindrome-density estimates for a prefix `w` and its interior `w*`,
/// compared with `est(w*) ≤ est(w) ≤ 1/φ` and `est(w*) ≤ 2/φ`.
pub fn bounds_report(source: &WordSource, prefix_len: usize, tail: usize) -> Result<Vec<BoundReport>> {
    if prefix_len < 4 {
        return Err(Error::invalid("bounds need a prefix of length at least 4"));
    }
    let w = source.prefix(prefix_len, DEFAULT_BUDGET)?;
    let star = w.interior()?;
    let est_w = densp_estimate(&palindromic_prefix_lengths(&w.to_symbols()), tail)?;
    let est_star = densp_estimate(&palindromic_prefix_lengths(&star.to_symbols()), tail)?;
    let inv_phi = Quad::inverse_golden_ratio();
    let two_inv_phi = inv_phi.mul_rational(&BigRational::from_integer(2.into()));

    let params = vec![
        ("source".to_string(), source.describe()),
        ("prefix_len".to_string(), prefix_len.to_string()),
        ("tail".to_string(), tail.to_string()),
    ];
    let base_note = format!(
        "dens on a finite word is the palindromic-prefix estimator (max of the last {tail} ratios); w* drops the first and last letters"
    );
    let rat = |r: &BigRational| (decimal::fraction(r), decimal::rational(r, decimal::PLACES));
    let vs_quad = |claim: &str, left: &BigRational, right: &Quad, over: Verdict| {
        let (le, ld) = rat(left);
        let holds = (right - &Quad::rational(left.clone())).signum() != Ordering::Less;
        let mut notes = vec![base_note.clone()];
        let verdict = if holds { Verdict::Holds } else { over };
        if verdict == Verdict::ExceedsBoundPrecondition {
            notes.push("estimate exceeds 1/φ: the bound assumes a non-periodic word".into());
        }
        BoundReport {
            claim: claim.into(),
            params: params.clone(),
            interpretation: None,
            left_exact: le,
            left_decimal: ld,
            right_exact: right.to_string(),
            right_decimal: decimal::quad(right, decimal::PLACES),
            verdict,
            notes,
        }
    };

    let (le, ld) = rat(&est_star);
    let (re, rd) = rat(&est_w);
    let left_report = BoundReport {
        claim: "lemma43-left".into(),
        params: params.clone(),
        interpretation: None,
        left_exact: le,
        left_decimal: ld,
        right_exact: re,
        right_decimal: rd,
        verdict: Verdict::from_le(est_star <= est_w),
        notes: vec![base_note.clone()],
    };
    Ok(vec![
        left_report,
        vs_quad("lemma43-right", &est_w, &inv_phi, Verdict::ExceedsBoundPrecondition),
        vs_quad("cor44", &est_star, &two_inv_phi, Verdict::Violated),
    ])
}

/// Reference statistics for the `λ`, `α`, `β` density series over `n = 0..=12`.
pub const REFERENCE_MEAN: [&str; 3] = ["0.5", "0.175", "0.289"];
pub const REFERENCE_MEDIAN: [&str; 3] = ["0.5", "0.191", "0.309"];
pub const REFERENCE_STD: [&str; 3] = ["0", "0.064", "0.098"];
/// `(λ, α)`, `(λ, β)`, `(α, β)`.
pub const REFERENCE_CORR: [&str; 3] = ["0.0", "0.0", "-0.9"];

pub const SERIES_NAMES: [&str; 3] = ["lambda", "alpha", "beta"];
const CORR_PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Allowed distance between a recomputed statistic and its reference value.
pub fn table1_tolerance() -> BigRational {
    BigRational::new(1.into(), 2000.into())
}

fn parse_decimal(s: &str) -> BigRational {
    let neg = s.starts_with('-');
    let body = s.trim_start_matches('-');
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits: BigInt = format!("{int}{frac}").parse().expect("decimal literal");
    let r = BigRational::new(digits, num_traits::pow(BigInt::from(10), frac.len()));
    if neg {
        -r
    } else {
        r
    }
}

/// `|√v − p| ≤ t`, decided exactly.
fn sqrt_within(v: &BigRational, p: &BigRational, t: &BigRational) -> bool {
    let hi = p + t;
    let lo = p - t;
    !hi.is_negative() && *v <= &hi * &hi && (!lo.is_positive() || *v >= &lo * &lo)
}

fn corr_within(c: &Correlation, p: &BigRational, t: &BigRational) -> bool {
    match c.sign {
        Ordering::Less => sqrt_within(&c.r_squared, &-p, t),
        _ => sqrt_within(&c.r_squared, p, t),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1Cell {
    pub statistic: &'static str,
    pub series: String,
    pub reference: &'static str,
    pub recomputed_exact: String,
    pub recomputed_decimal: String,
    pub mismatch: bool,
}

#[derive(Clone, Debug)]
pub struct Table1Report {
    pub n_max: u64,
    pub summaries: Vec<SeriesSummary>,
    pub correlations: Vec<Correlation>,
    pub cells: Vec<Table1Cell>,
}

/// Recomputes mean, median, sample standard deviation and pairwise Pearson
/// correlations of the three density series and flags every cell further
/// than [`table1_tolerance`] from its reference value.
pub fn table1_comparison(spec: &RecursiveSpec, n_max: u64) -> Result<Table1Report> {
    let series = density_series(spec, n_max)?;
    if series[0].densities.len() != 3 {
        return Err(Error::invalid("the statistics table is defined for ternary words"));
    }
    let cols: Vec<Vec<BigRational>> = (0..3)
        .map(|a| series.iter().map(|r| r.densities[a].clone()).collect())
        .collect();
    let summaries = cols.iter().map(|c| stats::summarize(c)).collect::<Result<Vec<_>>>()?;
    let correlations = CORR_PAIRS
        .iter()
        .map(|&(i, j)| stats::pearson(&cols[i], &cols[j]))
        .collect::<Result<Vec<_>>>()?;
    let t = table1_tolerance();
    let mut cells = Vec::new();
    for (a, s) in summaries.iter().enumerate() {
        let near = |x: &BigRational, p: &str| (x - parse_decimal(p)).abs() <= t;
        cells.push(Table1Cell {
            statistic: "mean",
            series: SERIES_NAMES[a].into(),
            reference: REFERENCE_MEAN[a],
            recomputed_exact: decimal::fraction(&s.mean),
            recomputed_decimal: decimal::rational(&s.mean, decimal::PLACES),
            mismatch: !near(&s.mean, REFERENCE_MEAN[a]),
        });
        cells.push(Table1Cell {
            statistic: "median",
            series: SERIES_NAMES[a].into(),
            reference: REFERENCE_MEDIAN[a],
            recomputed_exact: decimal::fraction(&s.median),
            recomputed_decimal: decimal::rational(&s.median, decimal::PLACES),
            mismatch: !near(&s.median, REFERENCE_MEDIAN[a]),
        });
        cells.push(Table1Cell {
            statistic: "std",
            series: SERIES_NAMES[a].into(),
            reference: REFERENCE_STD[a],
            recomputed_exact: format!("sqrt({})", decimal::fraction(&s.sample_variance)),
            recomputed_decimal: s.sample_std_decimal(),
            mismatch: !sqrt_within(&s.sample_variance, &parse_decimal(REFERENCE_STD[a]), &t),
        });
    }
    for (idx, (&(i, j), c)) in CORR_PAIRS.iter().zip(&correlations).enumerate() {
        let exact = match c.sign {
            Ordering::Equal => "0".to_string(),
            Ordering::Less => format!("-sqrt({})", decimal::fraction(&c.r_squared)),
            Ordering::Greater => format!("sqrt({})", decimal::fraction(&c.r_squared)),
        };
        let exact = match exact.as_str() {
            "-sqrt(1/1)" => "-1".to_string(),
            "sqrt(1/1)" => "1".to_string(),
            _ => exact,
        };
        cells.push(Table1Cell {
            statistic: "corr",
            series: format!("{}~{}", SERIES_NAMES[i], SERIES_NAMES[j]),
            reference: REFERENCE_CORR[idx],
            recomputed_exact: exact,
            recomputed_decimal: c.decimal(),
            mismatch: !corr_within(c, &parse_decimal(REFERENCE_CORR[idx]), &t),
        });
    }
    Ok(Table1Report {
        n_max,
        summaries,
        correlations,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{Alphabet, Word};

    fn u(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn count_examples() {
        let y = RecursiveSpec::y();
        assert_eq!(counts_recursive(&y, 12).counts, u(&[233, 89, 144]));
        assert_eq!(counts_recursive(&y, 12).total(), BigUint::from(466u32));
        assert_eq!(counts_recursive(&y, 0).counts, u(&[1, 1, 0]));
        assert_eq!(counts_recursive(&y, 1).counts, u(&[1, 0, 1]));
    }

    #[test]
    fn density_examples() {
        let y = RecursiveSpec::y();
        let d4 = density_record(&y, 4).unwrap();
        assert_eq!(d4.decimals(), ["0.500000000", "0.200000000", "0.300000000"]);
        let d12 = density_record(&y, 12).unwrap();
        assert_eq!(d12.densities[1], r(89, 466));
        assert_eq!(d12.decimals()[1], "0.190987124");
        assert!(d12.sum().is_one());
        let s = density_series(&y, 1).unwrap();
        assert_eq!(s[0].densities, [r(1, 2), r(1, 2), r(0, 1)]);
        assert_eq!(s[1].densities, [r(1, 2), r(0, 1), r(1, 2)]);
        assert_eq!(density_series(&y, 0).unwrap().len(), 1);
    }

    #[test]
    fn limits() {
        let lim = limit_densities(&RecursiveSpec::y());
        let dec: Vec<_> = lim.iter().map(|q| decimal::quad(q, 9)).collect();
        assert_eq!(dec, ["0.500000000", "0.190983006", "0.309016994"]);
        let phi = Quad::golden_ratio();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(lim[1], (&phi * &phi).recip().unwrap().mul_rational(&half));
        assert_eq!(lim[2], phi.recip().unwrap().mul_rational(&half));

        let s3 = Alphabet::sigma(3).unwrap();
        let w = Word::parse(&s3, "01").unwrap();
        let eq = RecursiveSpec::new(w.clone(), w).unwrap();
        let lim = limit_densities(&eq);
        assert_eq!(lim, [Quad::rational(half.clone()), Quad::rational(half), Quad::int(0)]);
    }

    #[test]
    fn table2_examples() {
        let y = RecursiveSpec::y();
        let rows = table2_rows(&y, 2, 15).unwrap();
        assert_eq!(rows.len(), 14);
        let row = |n: usize| {
            let r = &rows[n - 2];
            let mut v = vec![r.length.clone()];
            v.extend(r.counts.iter().cloned());
            v
        };
        assert_eq!(row(7), u(&[42, 21, 8, 13]));
        assert_eq!(row(15), u(&[1974, 987, 377, 610]));
        assert_eq!(row(2), u(&[4, 2, 1, 1]));
        assert!(table2_rows(&y, 1, 5).is_err());
        assert!(table2_rows(&y, 6, 5).is_err());
    }

    #[test]
    fn e_comparison() {
        assert_eq!(cmp_with_e(&r(2718281, 1_000_000)), Ordering::Less);
        assert_eq!(cmp_with_e(&r(2718282, 1_000_000)), Ordering::Greater);
        assert_eq!(cmp_with_e(&r(3, 1)), Ordering::Greater);
        assert_eq!(cmp_with_e(&r(21, 13)), Ordering::Less);
    }

    #[test]
    fn lemma42_examples() {
        let y = RecursiveSpec::y();
        let a7 = lemma42_check(&y, 7, Lemma42Interp::A).unwrap();
        assert_eq!(a7.right_exact, "ln(42/26)");
        assert!((a7.right_decimal.parse::<f64>().unwrap() - (42f64 / 26.0).ln()).abs() < 1e-9);
        assert_eq!(a7.verdict, Verdict::Violated);
        assert_eq!(a7.left_exact, "1");
        let b7 = lemma42_check(&y, 7, Lemma42Interp::B).unwrap();
        assert!((b7.right_decimal.parse::<f64>().unwrap() - 0.2083).abs() < 1e-4);
        let a2 = lemma42_check(&y, 2, Lemma42Interp::A).unwrap();
        assert_eq!(&a2.right_decimal[..5], "0.693");
        let c2 = lemma42_check(&y, 2, Lemma42Interp::C).unwrap();
        assert_eq!(c2.right_exact, "ln(6/4)");
        assert!(lemma42_check(&y, 1, Lemma42Interp::A).is_err());
        let c40 = lemma42_check(&y, 40, Lemma42Interp::C).unwrap();
        assert!(c40.right_decimal.starts_with('-'));
    }

    #[test]
    fn ln_of_huge_rationals() {
        let big = BigRational::new(num_traits::pow(BigInt::from(2), 5000), BigInt::one());
        assert!((ln_rational(&big) - 5000.0 * std::f64::consts::LN_2).abs() < 1e-9);
    }

    #[test]
    fn bounds_on_fibonacci_and_periodic() {
        let rep = bounds_report(&WordSource::Fibonacci, 100_000, 5).unwrap();
        assert_eq!(rep.len(), 3);
        assert!(rep.iter().all(|b| b.verdict == Verdict::Holds), "{rep:?}");
        let s2 = Alphabet::sigma(2).unwrap();
        let per = WordSource::Periodic(Word::parse(&s2, "01").unwrap());
        let rep = bounds_report(&per, 1000, 5).unwrap();
        assert_eq!(rep[1].verdict, Verdict::ExceedsBoundPrecondition);
        assert_eq!(rep[2].verdict, Verdict::Holds);
        assert!(bounds_report(&per, 3, 5).is_err());
    }

    #[test]
    fn table1_flags() {
        let rep = table1_comparison(&RecursiveSpec::y(), 12).unwrap();
        let cell = |stat: &str, series: &str| {
            rep.cells
                .iter()
                .find(|c| c.statistic == stat && c.series == series)
                .unwrap()
                .clone()
        };
        assert!(!cell("median", "alpha").mismatch);
        assert!(!cell("median", "beta").mismatch);
        assert!(cell("mean", "alpha").mismatch);
        assert!(cell("mean", "beta").mismatch);
        assert!(cell("std", "alpha").mismatch);
        assert!(cell("std", "beta").mismatch);
        assert!(!cell("mean", "lambda").mismatch);
        assert!(!cell("std", "lambda").mismatch);
        assert!(!cell("corr", "lambda~alpha").mismatch);
        let ab = cell("corr", "alpha~beta");
        assert!(ab.mismatch);
        assert_eq!(ab.recomputed_exact, "-1");
        assert_eq!(ab.recomputed_decimal, "-1.000000000");
        assert_eq!(&cell("mean", "alpha").recomputed_decimal[..6], "0.2032");
    }
}
