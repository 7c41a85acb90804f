//! Fibonacci numbers on all integer indices, central binomial coefficients,
//! and a closed registry of Fibonacci-number claims evaluated exactly.
//!
//! A claim is never assumed to hold: both sides are computed as exact
//! rationals and compared. A false claim is an ordinary result.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::decimal;
use crate::error::{Error, Result};

/// Default bound on `|n|` for [`fib`].
pub const DEFAULT_FIB_MAX: u64 = 1_000_000;

/// `(f_n, f_{n+1})` by fast doubling.
pub fn fib_pair(n: u64) -> (BigUint, BigUint) {
    let mut a = BigUint::zero();
    let mut b = BigUint::one();
    for bit in (0..64 - n.leading_zeros()).rev() {
        // f_{2k} = f_k (2 f_{k+1} − f_k), f_{2k+1} = f_k² + f_{k+1}²
        let two_b = &b << 1u32;
        let c = &a * (two_b - &a);
        let d = &a * &a + &b * &b;
        if (n >> bit) & 1 == 1 {
            b = &c + &d;
            a = d;
        } else {
            a = c;
            b = d;
        }
    }
    (a, b)
}

/// `f_n` for `|n| ≤ DEFAULT_FIB_MAX`, with `f_{−m} = (−1)^{m+1} f_m`.
pub fn fib(n: i64) -> Result<BigInt> {
    fib_with_limit(n, DEFAULT_FIB_MAX)
}

pub fn fib_with_limit(n: i64, max: u64) -> Result<BigInt> {
    let m = n.unsigned_abs();
    if m > max {
        return Err(Error::ResourceLimit {
            n,
            detail: format!("|n| exceeds the Fibonacci index limit of {max}"),
        });
    }
    let f = BigInt::from(fib_pair(m).0);
    Ok(if n < 0 && m.is_multiple_of(2) { -f } else { f })
}

/// `C(2n, n)` by the multiplicative formula.
pub fn central_binomial(n: u64) -> BigUint {
    let mut c = BigUint::one();
    for i in 1..=n {
        // C(2i, i) = C(2i−2, i−1) · 2(2i − 1) / i, exact at every step.
        c = c * (2 * (2 * i - 1)) / i;
    }
    c
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// How to read `f_m` at negative `m`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NegIndex {
    /// `f_{−m} = (−1)^{m+1} f_m`.
    #[default]
    Negafibonacci,
    /// `|f_{−m}| = f_m`.
    Absolute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClaimId {
    Prop32,
    CoreIdentity,
    CatalanEq4,
    DocagnePrinted,
    DocagneStandard,
    SafewordEq2,
    Eq7,
}

impl ClaimId {
    pub const ALL: [ClaimId; 7] = [
        ClaimId::Prop32,
        ClaimId::CoreIdentity,
        ClaimId::CatalanEq4,
        ClaimId::DocagnePrinted,
        ClaimId::DocagneStandard,
        ClaimId::SafewordEq2,
        ClaimId::Eq7,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Prop32 => "prop32",
            ClaimId::CoreIdentity => "core-identity",
            ClaimId::CatalanEq4 => "catalan-eq4",
            ClaimId::DocagnePrinted => "docagne-printed",
            ClaimId::DocagneStandard => "docagne-standard",
            ClaimId::SafewordEq2 => "safeword-eq2",
            ClaimId::Eq7 => "eq7",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<_> = Self::ALL.iter().map(|c| c.as_str()).collect();
                Error::invalid(format!("unknown claim {s:?}; known: {}", known.join(", ")))
            })
    }

    /// Parameter names, in sweep order.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            ClaimId::Prop32 | ClaimId::CoreIdentity | ClaimId::Eq7 => &["n", "k"],
            ClaimId::CatalanEq4 | ClaimId::DocagnePrinted => &["m", "r"],
            ClaimId::DocagneStandard => &["m", "n"],
            ClaimId::SafewordEq2 => &["n"],
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            ClaimId::Prop32 => "2^n * (n f_k) / (n! * f_{n+k-3} * f_{n-k-5}) = C(2n, n)",
            ClaimId::CoreIdentity => "f_{n+k-3} f_{n-k-5} = f_k f_{2n-6} + (-1)^(n-3) f_{2n-6}",
            ClaimId::CatalanEq4 => "f_{m+r} f_{m-r-1} = f_m f_{2r} + (-1)^(m-1) f_{2m-2r-2}",
            ClaimId::DocagnePrinted => "f_{m+r} f_m - f_{m+r-1} f_{m+1} = (-1)^m f_r",
            ClaimId::DocagneStandard => "f_m f_{n+1} - f_{m+1} f_n = (-1)^n f_{m-n}",
            ClaimId::SafewordEq2 => "f_n + f_{n-1} = f_{2n}",
            ClaimId::Eq7 => "f_{n+k-3} f_{n-k-5} = f_k^(n-1) * f_{2n} / n",
        }
    }

    pub fn domain(self) -> &'static str {
        match self {
            ClaimId::Prop32 | ClaimId::CoreIdentity | ClaimId::Eq7 => "n >= 1, k >= n+3",
            ClaimId::CatalanEq4 => "r >= 0, m > r+1",
            ClaimId::DocagnePrinted => "m >= 1, r >= 0",
            ClaimId::DocagneStandard => "any integers m, n",
            ClaimId::SafewordEq2 => "n >= 1",
        }
    }

    fn in_domain(self, p: &[i64]) -> bool {
        match self {
            ClaimId::Prop32 | ClaimId::CoreIdentity | ClaimId::Eq7 => {
                p[0] >= 1 && p[1] >= p[0].saturating_add(3)
            }
            ClaimId::CatalanEq4 => p[1] >= 0 && p[0] > p[1].saturating_add(1),
            ClaimId::DocagnePrinted => p[0] >= 1 && p[1] >= 0,
            ClaimId::DocagneStandard => true,
            ClaimId::SafewordEq2 => p[0] >= 1,
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClaimVerdict {
    True,
    False,
    Undefined,
}

impl ClaimVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ClaimVerdict::True => "true",
            ClaimVerdict::False => "false",
            ClaimVerdict::Undefined => "undefined",
        }
    }
}

impl fmt::Display for ClaimVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimReport {
    pub claim: ClaimId,
    pub params: Vec<(String, i64)>,
    /// `None` when the side involves a division by zero.
    pub lhs: Option<BigRational>,
    pub rhs: Option<BigRational>,
    pub verdict: ClaimVerdict,
    pub notes: Vec<String>,
}

impl ClaimReport {
    /// `n=1;k=4`.
    pub fn params_text(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn lhs_text(&self) -> String {
        self.lhs.as_ref().map_or("undefined".into(), decimal::compact)
    }

    pub fn rhs_text(&self) -> String {
        self.rhs.as_ref().map_or("undefined".into(), decimal::compact)
    }
}

struct Eval {
    neg: NegIndex,
    zero_factors: Vec<String>,
}

impl Eval {
    fn f(&self, i: i64) -> Result<BigInt> {
        let v = fib(i)?;
        Ok(match self.neg {
            NegIndex::Negafibonacci => v,
            NegIndex::Absolute => v.abs(),
        })
    }

    /// `num / den`, or `None` after recording `name` when `den = 0`.
    fn div(&mut self, num: BigInt, den: &[(&str, BigInt)]) -> Option<BigRational> {
        let mut d = BigInt::one();
        for (name, v) in den {
            if v.is_zero() {
                self.zero_factors.push(format!("{name} = 0"));
            }
            d *= v;
        }
        (!d.is_zero()).then(|| BigRational::new(num, d))
    }
}

fn sign_pow(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn int(v: BigInt) -> Option<BigRational> {
    Some(BigRational::from_integer(v))
}

/// Evaluates both sides of `claim` at `params`, given in [`ClaimId::params`] order.
pub fn claim_eval(claim: ClaimId, params: &[i64], neg: NegIndex) -> Result<ClaimReport> {
    let names = claim.params();
    if params.len() != names.len() {
        return Err(Error::invalid(format!(
            "{claim} takes parameters ({}), got {} values",
            names.join(", "),
            params.len()
        )));
    }
    if let Some(&p) = params.iter().find(|p| p.unsigned_abs() > DEFAULT_FIB_MAX / 4) {
        return Err(Error::ResourceLimit {
            n: p,
            detail: format!("claim parameters are limited to |p| <= {}", DEFAULT_FIB_MAX / 4),
        });
    }
    if !claim.in_domain(params) {
        return Err(Error::invalid(format!(
            "{claim} is declared for {}; got {}",
            claim.domain(),
            names
                .iter()
                .zip(params)
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(", ")
        )));
    }
    let mut ev = Eval {
        neg,
        zero_factors: Vec::new(),
    };
    let (lhs, rhs) = match claim {
        ClaimId::Prop32 => {
            let (n, k) = (params[0], params[1]);
            let nu = n as u64;
            let num = (BigInt::one() << nu) * BigInt::from(n) * ev.f(k)?;
            let lhs = ev.div(
                num,
                &[
                    ("n!", factorial(nu).into()),
                    ("f_{n+k-3}", ev.f(n + k - 3)?),
                    ("f_{n-k-5}", ev.f(n - k - 5)?),
                ],
            );
            (lhs, int(central_binomial(nu).into()))
        }
        ClaimId::CoreIdentity => {
            let (n, k) = (params[0], params[1]);
            let lhs = ev.f(n + k - 3)? * ev.f(n - k - 5)?;
            let f2 = ev.f(2 * n - 6)?;
            let rhs = ev.f(k)? * &f2 + sign_pow(n - 3) * f2;
            (int(lhs), int(rhs))
        }
        ClaimId::CatalanEq4 => {
            let (m, r) = (params[0], params[1]);
            let lhs = ev.f(m + r)? * ev.f(m - r - 1)?;
            let rhs = ev.f(m)? * ev.f(2 * r)? + sign_pow(m - 1) * ev.f(2 * m - 2 * r - 2)?;
            (int(lhs), int(rhs))
        }
        ClaimId::DocagnePrinted => {
            let (m, r) = (params[0], params[1]);
            let lhs = ev.f(m + r)? * ev.f(m)? - ev.f(m + r - 1)? * ev.f(m + 1)?;
            (int(lhs), int(sign_pow(m) * ev.f(r)?))
        }
        ClaimId::DocagneStandard => {
            let (m, n) = (params[0], params[1]);
            let lhs = ev.f(m)? * ev.f(n + 1)? - ev.f(m + 1)? * ev.f(n)?;
            (int(lhs), int(sign_pow(n) * ev.f(m - n)?))
        }
        ClaimId::SafewordEq2 => {
            let n = params[0];
            (int(ev.f(n)? + ev.f(n - 1)?), int(ev.f(2 * n)?))
        }
        ClaimId::Eq7 => {
            let (n, k) = (params[0], params[1]);
            let lhs = ev.f(n + k - 3)? * ev.f(n - k - 5)?;
            let num = num_traits::pow(ev.f(k)?, (n - 1) as usize) * ev.f(2 * n)?;
            let rhs = ev.div(num, &[("n", BigInt::from(n))]);
            (int(lhs), rhs)
        }
    };
    let verdict = match (&lhs, &rhs) {
        (Some(l), Some(r)) if l == r => ClaimVerdict::True,
        (Some(_), Some(_)) => ClaimVerdict::False,
        _ => ClaimVerdict::Undefined,
    };
    let mut notes = ev.zero_factors;
    if neg == NegIndex::Absolute {
        notes.push("negative indices read as |f|".into());
    }
    Ok(ClaimReport {
        claim,
        params: names
            .iter()
            .zip(params)
            .map(|(k, v)| (k.to_string(), *v))
            .collect(),
        lhs,
        rhs,
        verdict,
        notes,
    })
}

/// One end of a parameter range: a constant or an earlier parameter plus an offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RangeEnd {
    Const(i64),
    Offset { param: String, delta: i64 },
}

impl RangeEnd {
    fn resolve(&self, names: &[&str], bound: &[i64]) -> Result<i64> {
        match self {
            RangeEnd::Const(v) => Ok(*v),
            RangeEnd::Offset { param, delta } => {
                let idx = names[..bound.len()]
                    .iter()
                    .position(|n| n == param)
                    .ok_or_else(|| {
                        Error::invalid(format!(
                            "range bound refers to {param:?}, which is not an earlier parameter"
                        ))
                    })?;
                bound[idx]
                    .checked_add(*delta)
                    .ok_or_else(|| Error::invalid("range bound overflows"))
            }
        }
    }

    /// `5`, `n+3`, `m-1`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Ok(v) = s.parse::<i64>() {
            return Ok(RangeEnd::Const(v));
        }
        let split = s.char_indices().skip(1).find(|(_, c)| *c == '+' || *c == '-');
        let (param, delta) = match split {
            Some((i, _)) => {
                let delta = s[i..]
                    .parse::<i64>()
                    .map_err(|_| Error::invalid(format!("bad range bound {s:?}")))?;
                (&s[..i], delta)
            }
            None => (s, 0),
        };
        if param.is_empty() || !param.chars().all(|c| c.is_ascii_alphabetic()) {
            return Err(Error::invalid(format!("bad range bound {s:?}")));
        }
        Ok(RangeEnd::Offset {
            param: param.to_string(),
            delta,
        })
    }
}

impl fmt::Display for RangeEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RangeEnd::Const(v) => write!(f, "{v}"),
            RangeEnd::Offset { param, delta } if *delta == 0 => write!(f, "{param}"),
            RangeEnd::Offset { param, delta } => write!(f, "{param}{delta:+}"),
        }
    }
}

/// `name = lo..hi`, inclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamRange {
    pub name: String,
    pub lo: RangeEnd,
    pub hi: RangeEnd,
}

impl ParamRange {
    pub fn fixed(name: &str, v: i64) -> Self {
        ParamRange {
            name: name.into(),
            lo: RangeEnd::Const(v),
            hi: RangeEnd::Const(v),
        }
    }

    /// `n=1..5`, `k=n+3..n+10`, or a single value `n=4`.
    pub fn parse(s: &str) -> Result<Self> {
        let (name, body) = s
            .split_once('=')
            .ok_or_else(|| Error::invalid(format!("expected name=lo..hi, got {s:?}")))?;
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::invalid(format!("missing parameter name in {s:?}")));
        }
        let (lo, hi) = match body.split_once("..") {
            Some((a, b)) => (RangeEnd::parse(a)?, RangeEnd::parse(b)?),
            None => {
                let v = RangeEnd::parse(body)?;
                (v.clone(), v)
            }
        };
        Ok(ParamRange {
            name: name.into(),
            lo,
            hi,
        })
    }
}

pub const MAX_SWEEP_CASES: usize = 1_000_000;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub cases: usize,
    pub true_count: usize,
    pub false_count: usize,
    pub undefined_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub claim: ClaimId,
    pub summary: SweepSummary,
    /// Lexicographic in the claim's parameter order.
    pub cases: Vec<ClaimReport>,
}

fn enumerate(
    names: &[&str],
    ranges: &[&ParamRange],
    prefix: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) -> Result<()> {
    let depth = prefix.len();
    if depth == names.len() {
        if out.len() >= MAX_SWEEP_CASES {
            return Err(Error::ResourceLimit {
                n: out.len() as i64,
                detail: format!("a sweep may have at most {MAX_SWEEP_CASES} cases"),
            });
        }
        out.push(prefix.clone());
        return Ok(());
    }
    let r = ranges[depth];
    let lo = r.lo.resolve(names, prefix)?;
    let hi = r.hi.resolve(names, prefix)?;
    if lo > hi {
        return Err(Error::invalid(format!(
            "empty range {}={}..{} (= {lo}..{hi})",
            r.name, r.lo, r.hi
        )));
    }
    for v in lo..=hi {
        prefix.push(v);
        enumerate(names, ranges, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

/// Evaluates `claim` on every point of the product of `ranges`.
///
/// Every parameter of the claim needs exactly one range. Later ranges may
/// refer to earlier parameters (`k = n+3..n+10`).
pub fn claim_sweep(claim: ClaimId, ranges: &[ParamRange], neg: NegIndex) -> Result<SweepReport> {
    let names = claim.params();
    let mut ordered = Vec::with_capacity(names.len());
    for name in names {
        let mut matching = ranges.iter().filter(|r| r.name == *name);
        let r = matching
            .next()
            .ok_or_else(|| Error::invalid(format!("{claim} needs a range for {name}")))?;
        if matching.next().is_some() {
            return Err(Error::invalid(format!("duplicate range for {name}")));
        }
        ordered.push(r);
    }
    if let Some(extra) = ranges.iter().find(|r| !names.contains(&r.name.as_str())) {
        return Err(Error::invalid(format!(
            "{claim} has no parameter {:?}; it takes ({})",
            extra.name,
            names.join(", ")
        )));
    }
    let mut points = Vec::new();
    enumerate(names, &ordered, &mut Vec::new(), &mut points)?;
    let cases = points
        .par_iter()
        .map(|p| claim_eval(claim, p, neg))
        .collect::<Result<Vec<_>>>()?;
    let mut summary = SweepSummary {
        cases: cases.len(),
        ..Default::default()
    };
    for c in &cases {
        match c.verdict {
            ClaimVerdict::True => summary.true_count += 1,
            ClaimVerdict::False => summary.false_count += 1,
            ClaimVerdict::Undefined => summary.undefined_count += 1,
        }
    }
    Ok(SweepReport {
        claim,
        summary,
        cases,
    })
}
