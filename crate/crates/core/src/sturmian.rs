//! Mechanical words with quadratic-irrational slopes and the
//! continued-fraction construction of characteristic words.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generate::DEFAULT_BUDGET;
use crate::surd::Quad;
use crate::word::{Alphabet, Word};

/// An irrational slope `α ∈ (0, 1)` in a real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSlope(Quad);

impl QuadraticSlope {
    pub fn new(value: Quad) -> Result<Self> {
        if value.is_rational() {
            return Err(Error::invalid(format!("slope {value} is rational")));
        }
        if value.signum() != Ordering::Greater || (&value - &Quad::int(1)).signum() != Ordering::Less {
            return Err(Error::invalid(format!("slope {value} is not in (0, 1)")));
        }
        Ok(QuadraticSlope(value))
    }

    /// `(p + q√d)/r`.
    pub fn from_parts(p: i64, q: i64, d: i64, r: i64) -> Result<Self> {
        Self::new(Quad::from_parts(p.into(), q.into(), d.into(), r.into())?)
    }

    pub fn value(&self) -> &Quad {
        &self.0
    }

    /// `surd:p,q,d,r` or `cf:a1,a2,...` (see [`CFExpansion::parse`]).
    pub fn parse(s: &str) -> Result<Self> {
        if let Some(body) = s.strip_prefix("surd:") {
            let parts: Vec<i64> = body
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::invalid(format!("bad surd literal {s:?}")))?;
            let [p, q, d, r] = parts[..] else {
                return Err(Error::invalid(format!("surd literal needs p,q,d,r: {s:?}")));
            };
            return Self::from_parts(p, q, d, r);
        }
        if let Some(body) = s.strip_prefix("cf:") {
            return CFExpansion::parse(body)?.slope();
        }
        Err(Error::invalid(format!(
            "slope literal must start with surd: or cf:, got {s:?}"
        )))
    }
}

impl fmt::Display for QuadraticSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Partial quotients `a₁, a₂, …` of `[0; a₁, a₂, …]`.
///
/// `quotients[repeat..]` repeats forever when `repeat` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFExpansion {
    quotients: Vec<u64>,
    repeat: Option<usize>,
}

impl CFExpansion {
    pub fn finite(quotients: Vec<u64>) -> Result<Self> {
        Self::new(quotients, None)
    }

    pub fn periodic(quotients: Vec<u64>, repeat_from: usize) -> Result<Self> {
        Self::new(quotients, Some(repeat_from))
    }

    fn new(quotients: Vec<u64>, repeat: Option<usize>) -> Result<Self> {
        if quotients.is_empty() {
            return Err(Error::invalid("a continued fraction needs at least one quotient"));
        }
        if quotients.contains(&0) {
            return Err(Error::invalid("partial quotients must be positive"));
        }
        if repeat.is_some_and(|r| r >= quotients.len()) {
            return Err(Error::invalid("the repeating block is empty"));
        }
        Ok(CFExpansion { quotients, repeat })
    }

    /// `1,1,1` (finite) or `1,2|3,4` (`1, 2` then `3, 4` repeating).
    pub fn parse(s: &str) -> Result<Self> {
        let nums = |t: &str| -> Result<Vec<u64>> {
            t.split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| {
                    x.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::invalid(format!("bad partial quotient {x:?}")))
                })
                .collect()
        };
        match s.split_once('|') {
            Some((head, tail)) => {
                let mut q = nums(head)?;
                let start = q.len();
                q.extend(nums(tail)?);
                Self::periodic(q, start)
            }
            None => Self::finite(nums(s)?),
        }
    }

    pub fn is_periodic(&self) -> bool {
        self.repeat.is_some()
    }

    /// `a_j` for `j ≥ 1`, if supplied.
    pub fn quotient(&self, j: usize) -> Option<u64> {
        if j == 0 {
            return None;
        }
        let i = j - 1;
        if i < self.quotients.len() {
            return Some(self.quotients[i]);
        }
        let start = self.repeat?;
        let period = self.quotients.len() - start;
        Some(self.quotients[start + (i - start) % period])
    }

    /// The value `[0; a₁, a₂, …]`. A finite list is read with its last
    /// quotient repeating, so the value is always a quadratic irrational.
    pub fn slope(&self) -> Result<QuadraticSlope> {
        let start = self.repeat.unwrap_or(self.quotients.len() - 1);
        let (head, block) = self.quotients.split_at(start);
        // x = [b₁; b₂, …, b_p, x] solves Q x² + (Q' − P) x − P' = 0 for the
        // block matrix [[P, P'], [Q, Q']].
        let m = matrix_product(block);
        let (p, p1, q, q1) = (m[0].clone(), m[1].clone(), m[2].clone(), m[3].clone());
        let b = &q1 - &p;
        let disc = &b * &b + BigInt::from(4) * &q * &p1;
        let x = Quad::from_parts(-b, BigInt::one(), disc, BigInt::from(2) * q)?;
        // [a₁; a₂, …, a_k, x] = (M₀₀ x + M₀₁)/(M₁₀ x + M₁₁); α is its reciprocal.
        let h = matrix_product(head);
        let int = |v: &BigInt| Quad::rational(BigRational::from_integer(v.clone()));
        let top = &(&int(&h[0]) * &x) + &int(&h[1]);
        let bottom = &(&int(&h[2]) * &x) + &int(&h[3]);
        QuadraticSlope::new(bottom.checked_div(&top)?)
    }
}

impl fmt::Display for CFExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match self.repeat {
            Some(r) => write!(f, "{}|{}", join(&self.quotients[..r]), join(&self.quotients[r..])),
            None => f.write_str(&join(&self.quotients)),
        }
    }
}

/// `∏ [[a, 1], [1, 0]]` as `[m00, m01, m10, m11]`.
fn matrix_product(quotients: &[u64]) -> [BigInt; 4] {
    let mut m = [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()];
    for &a in quotients {
        let a = BigInt::from(a);
        m = [
            &m[0] * &a + &m[1],
            m[0].clone(),
            &m[2] * &a + &m[3],
            m[2].clone(),
        ];
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `⌊α(n+1)+β⌋ − ⌊αn+β⌋`.
    Floor,
    /// `⌈α(n+1)+β⌉ − ⌈αn+β⌉`.
    Ceil,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Floor => "floor",
            Variant::Ceil => "ceil",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "floor" => Ok(Variant::Floor),
            "ceil" => Ok(Variant::Ceil),
            _ => Err(Error::invalid(format!("variant must be floor or ceil, got {s:?}"))),
        }
    }
}

/// Sign of `(a + b√d)` for integers, `d ≥ 0`.
fn sign(a: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
    let sa = a.sign();
    let sb = b.sign();
    use num_bigint::Sign::*;
    match (sa, sb) {
        (_, NoSign) => a.cmp(&BigInt::zero()),
        (NoSign, _) => b.cmp(&BigInt::zero()),
        (Plus, Plus) => Ordering::Greater,
        (Minus, Minus) => Ordering::Less,
        _ => {
            let lhs = a * a;
            let rhs = b * b * d;
            let pos = if sa == Plus { Ordering::Greater } else { Ordering::Less };
            match lhs.cmp(&rhs) {
                Ordering::Greater => pos,
                Ordering::Less => pos.reverse(),
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

/// `αn + β` as `(A + B√d)/R`, stepped one `n` at a time in integers.
struct Line {
    a: BigInt,
    b: BigInt,
    d: BigInt,
    r: BigInt,
    step_a: BigInt,
    step_b: BigInt,
}

impl Line {
    fn new(alpha: &Quad, beta: &Quad) -> Line {
        let (pa, qa, ra) = alpha.integer_parts();
        let (pb, qb, rb) = beta.integer_parts();
        let r = num_integer::Integer::lcm(&ra, &rb);
        let (sa, sb) = (&r / &ra, &r / &rb);
        Line {
            a: pb * &sb,
            b: qb * &sb,
            d: alpha.radicand().clone(),
            step_a: pa * &sa,
            step_b: qa * &sa,
            r,
        }
    }

    fn advance(&mut self) {
        self.a += &self.step_a;
        self.b += &self.step_b;
    }

    /// Sign of `(αn + β) − m`.
    fn cmp_int(&self, m: &BigInt) -> Ordering {
        sign(&(&self.a - m * &self.r), &self.b, &self.d)
    }
}

/// `β` must be rational or in the field of `α`, with `0 ≤ β < 1`.
pub fn check_intercept(alpha: &QuadraticSlope, beta: &Quad) -> Result<()> {
    if !alpha.value().same_field(beta) {
        return Err(Error::invalid(format!(
            "intercept {beta} is not in the field of the slope {alpha}"
        )));
    }
    if beta.signum() == Ordering::Less || (beta - &Quad::int(1)).signum() != Ordering::Less {
        return Err(Error::invalid(format!("intercept {beta} is not in [0, 1)")));
    }
    Ok(())
}

/// The first `len` symbols `u_0 … u_{len−1}` of the mechanical word.
pub fn mechanical_word(alpha: &QuadraticSlope, beta: &Quad, len: usize, variant: Variant) -> Result<Word> {
    check_intercept(alpha, beta)?;
    if len > DEFAULT_BUDGET {
        return Err(Error::ResourceLimit {
            n: len as i64,
            detail: format!("length {len} exceeds the budget of {DEFAULT_BUDGET} symbols"),
        });
    }
    let s2 = Alphabet::sigma(2).expect("k = 2");
    let mut out = Word::with_capacity(&s2, len);
    let mut line = Line::new(alpha.value(), beta);
    // floor(β) = 0 since 0 <= β < 1.
    let mut floor = BigInt::zero();
    let value = |line: &Line, floor: &BigInt| match variant {
        Variant::Floor => floor.clone(),
        Variant::Ceil if line.cmp_int(floor) == Ordering::Equal => floor.clone(),
        Variant::Ceil => floor + 1,
    };
    let mut prev = value(&line, &floor);
    for _ in 0..len {
        line.advance();
        // 0 < α < 1, so the floor grows by at most one per step.
        let next = &floor + 1;
        if line.cmp_int(&next) != Ordering::Less {
            floor = next;
        }
        let cur = value(&line, &floor);
        out.push(if cur == prev { 0 } else { 1 });
        prev = cur;
    }
    Ok(out)
}

/// `s_j` with `s_{−1} = 1`, `s_0 = 0`, `s_j = s_{j−1}^{a_j} s_{j−2}`.
pub fn cf_word(cf: &CFExpansion, j: i64) -> Result<Word> {
    cf_word_with_budget(cf, j, DEFAULT_BUDGET)
}

pub fn cf_word_with_budget(cf: &CFExpansion, j: i64, budget: usize) -> Result<Word> {
    if j < -1 {
        return Err(Error::invalid(format!("index j must be >= -1, got {j}")));
    }
    let s2 = Alphabet::sigma(2).expect("k = 2");
    let mut older = Word::parse(&s2, "1").expect("valid");
    let mut newer = Word::parse(&s2, "0").expect("valid");
    if j == -1 {
        return Ok(older);
    }
    for i in 1..=j as usize {
        let a = cf.quotient(i).ok_or_else(|| {
            Error::invalid(format!("s_{j} needs a_1..a_{j}, but only {} quotients are given", cf.quotients.len()))
        })?;
        let len = (newer.len() as u128) * a as u128 + older.len() as u128;
        if len > budget as u128 {
            return Err(Error::ResourceLimit {
                n: i as i64,
                detail: format!("|s_{i}| = {len} exceeds the budget of {budget} symbols"),
            });
        }
        let mut next = Word::with_capacity(&s2, len as usize);
        for _ in 0..a {
            next.extend_from(&newer, 0..newer.len());
        }
        next.extend_from(&older, 0..older.len());
        older = std::mem::replace(&mut newer, next);
    }
    Ok(newer)
}

/// The first `len` symbols of `lim s_j`.
pub fn cf_prefix(cf: &CFExpansion, len: usize) -> Result<Word> {
    if len > DEFAULT_BUDGET {
        return Err(Error::ResourceLimit {
            n: len as i64,
            detail: format!("length {len} exceeds the budget of {DEFAULT_BUDGET} symbols"),
        });
    }
    let mut j = 1;
    loop {
        let w = cf_word(cf, j)?;
        if w.len() >= len {
            return Ok(w.prefix(len));
        }
        j += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub alpha: QuadraticSlope,
    pub beta: Quad,
    pub variant: Variant,
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha={} beta={} {}", self.alpha, self.beta, self.variant.as_str())
    }
}

/// Every candidate whose mechanical word starts with `target`, in input order.
pub fn slope_match_search(target: &Word, candidates: &[Candidate]) -> Result<Vec<Candidate>> {
    if target.is_empty() || target.alphabet().size() != 2 {
        return Err(Error::invalid("the target must be a nonempty binary word"));
    }
    let hits = candidates
        .par_iter()
        .map(|c| Ok(mechanical_word(&c.alpha, &c.beta, target.len(), c.variant)? == *target))
        .collect::<Result<Vec<bool>>>()?;
    Ok(candidates
        .iter()
        .zip(hits)
        .filter(|(_, hit)| *hit)
        .map(|(c, _)| c.clone())
        .collect())
}

/// `{1/φ, 1/φ²} × {0, α} × {floor, ceil}`.
pub fn golden_candidates() -> Vec<Candidate> {
    let slopes = [
        QuadraticSlope::from_parts(-1, 1, 5, 2).expect("1/φ"),
        QuadraticSlope::from_parts(3, -1, 5, 2).expect("1/φ²"),
    ];
    let mut out = Vec::new();
    for alpha in &slopes {
        for beta in [Quad::int(0), alpha.value().clone()] {
            for variant in [Variant::Floor, Variant::Ceil] {
                out.push(Candidate {
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                    variant,
                });
            }
        }
    }
    out
}

/// Parses `0`, `p/q`, `surd:p,q,d,r`, or `=alpha`.
pub fn parse_intercept(s: &str, alpha: &QuadraticSlope) -> Result<Quad> {
    let s = s.trim();
    if s == "=alpha" {
        return Ok(alpha.value().clone());
    }
    if let Some(body) = s.strip_prefix("surd:") {
        let parts: Vec<i64> = body
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::invalid(format!("bad surd literal {s:?}")))?;
        let [p, q, d, r] = parts[..] else {
            return Err(Error::invalid(format!("surd literal needs p,q,d,r: {s:?}")));
        };
        return Quad::from_parts(p.into(), q.into(), d.into(), r.into());
    }
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().map_err(|_| Error::invalid(format!("bad intercept {s:?}")))?;
    let d: BigInt = d.trim().parse().map_err(|_| Error::invalid(format!("bad intercept {s:?}")))?;
    if d.is_zero() {
        return Err(Error::invalid(format!("intercept {s:?} has a zero denominator")));
    }
    Ok(Quad::rational(BigRational::new(n, d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::fibonacci_prefix;

    fn inv_phi2() -> QuadraticSlope {
        QuadraticSlope::from_parts(3, -1, 5, 2).unwrap()
    }

    #[test]
    fn mechanical_examples() {
        let w = mechanical_word(&inv_phi2(), &Quad::int(0), 8, Variant::Floor).unwrap();
        assert_eq!(w.to_string(), "00100101");
        let a = QuadraticSlope::from_parts(-1, 1, 5, 2).unwrap();
        let w = mechanical_word(&a, &Quad::int(0), 5, Variant::Floor).unwrap();
        assert_eq!(w.to_string(), "01011");
        assert!(QuadraticSlope::new(Quad::rational(BigRational::new(1.into(), 2.into()))).is_err());
        assert!(QuadraticSlope::from_parts(1, 1, 5, 2).is_err());
        assert!(QuadraticSlope::from_parts(0, 1, 4, 3).is_err());
    }

    #[test]
    fn intercept_range() {
        let a = inv_phi2();
        assert!(mechanical_word(&a, &Quad::int(1), 4, Variant::Floor).is_err());
        assert!(mechanical_word(&a, &Quad::int(-1), 4, Variant::Floor).is_err());
        let other = Quad::sqrt(2).unwrap().mul_rational(&BigRational::new(1.into(), 2.into()));
        assert!(mechanical_word(&a, &other, 4, Variant::Floor).is_err());
    }

    #[test]
    fn ceil_variant_handles_integer_points() {
        // β = 1 − α makes αn + β an integer at n = 1.
        let a = inv_phi2();
        let beta = &Quad::int(1) - a.value();
        let f = mechanical_word(&a, &beta, 30, Variant::Floor).unwrap();
        let c = mechanical_word(&a, &beta, 30, Variant::Ceil).unwrap();
        assert_eq!(f.get(0), Some(1));
        assert_eq!(c.get(0), Some(0));
        assert_eq!(f.slice(2..30).unwrap(), c.slice(2..30).unwrap());
    }

    #[test]
    fn cf_examples() {
        let ones = CFExpansion::finite(vec![1, 1, 1]).unwrap();
        assert_eq!(cf_word(&ones, 3).unwrap().to_string(), "01001");
        assert_eq!(cf_word(&CFExpansion::finite(vec![2]).unwrap(), 1).unwrap().to_string(), "001");
        assert_eq!(cf_word(&CFExpansion::finite(vec![1, 2]).unwrap(), 2).unwrap().to_string(), "01010");
        assert_eq!(cf_word(&ones, -1).unwrap().to_string(), "1");
        assert_eq!(cf_word(&ones, 0).unwrap().to_string(), "0");
        assert!(cf_word(&ones, 4).is_err());
        assert!(cf_word(&ones, -2).is_err());
        assert!(CFExpansion::finite(vec![1, 0]).is_err());
    }

    #[test]
    fn cf_values() {
        let golden = CFExpansion::parse("1").unwrap().slope().unwrap();
        assert_eq!(golden.value(), &Quad::inverse_golden_ratio());
        let two_one = CFExpansion::parse("2,1").unwrap().slope().unwrap();
        assert_eq!(two_one, inv_phi2());
        // [0; 2, 2, 2, …] = √2 − 1
        let silver = CFExpansion::parse("|2").unwrap().slope().unwrap();
        assert_eq!(silver.value(), &(&Quad::sqrt(2).unwrap() - &Quad::int(1)));
        let p = CFExpansion::parse("1,2|3,4").unwrap();
        assert_eq!(p.quotient(5), Some(3));
        assert_eq!(p.quotient(6), Some(4));
        assert_eq!(p.to_string(), "1,2|3,4");
        assert!(QuadraticSlope::parse("cf:1,1").is_ok());
        assert_eq!(QuadraticSlope::parse("surd:3,-1,5,2").unwrap(), inv_phi2());
        assert!(QuadraticSlope::parse("x:1").is_err());
    }

    #[test]
    fn search_examples() {
        let cands = golden_candidates();
        let fib = fibonacci_prefix(20);
        let hits = slope_match_search(&fib, &cands).unwrap();
        assert!(hits.contains(&Candidate {
            alpha: inv_phi2(),
            beta: inv_phi2().value().clone(),
            variant: Variant::Floor
        }));
        let s2 = Alphabet::sigma(2).unwrap();
        let t = Word::parse(&s2, "00100101").unwrap();
        let hits = slope_match_search(&t, &cands).unwrap();
        assert!(hits.contains(&Candidate { alpha: inv_phi2(), beta: Quad::int(0), variant: Variant::Floor }));
        let t = Word::parse(&s2, "11").unwrap();
        let low: Vec<_> = cands.into_iter().filter(|c| c.alpha == inv_phi2()).collect();
        assert!(slope_match_search(&t, &low).unwrap().is_empty());
    }

    #[test]
    fn intercept_literals() {
        let a = inv_phi2();
        assert_eq!(parse_intercept("=alpha", &a).unwrap(), a.value().clone());
        assert_eq!(parse_intercept("0", &a).unwrap(), Quad::int(0));
        assert_eq!(
            parse_intercept("1/3", &a).unwrap(),
            Quad::rational(BigRational::new(1.into(), 3.into()))
        );
        assert!(parse_intercept("1/0", &a).is_err());
        assert!(parse_intercept("x", &a).is_err());
    }
}
