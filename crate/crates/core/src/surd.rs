//! Exact arithmetic in real quadratic fields `Q(√d)`.
//!
//! Every comparison is decided by integer sign analysis; no floating point is
//! involved except in [`Quad::to_f64`], which exists for display.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `a + b√d` with rational `a`, `b` and square-free `d > 1`, or a plain
/// rational (then `b = 0` and `d = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad {
    a: BigRational,
    b: BigRational,
    d: BigInt,
}

/// Splits `d ≥ 1` as `s² · f` with `f` square-free. `d` must fit in a `u64`.
fn square_free_split(d: &BigInt) -> Result<(BigInt, BigInt)> {
    let mut rest = d
        .to_u64()
        .ok_or_else(|| Error::invalid(format!("radicand {d} is out of the supported range")))?;
    let mut square = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            square *= p;
        }
        p += 1;
    }
    Ok((BigInt::from(square), BigInt::from(rest)))
}

impl Quad {
    pub fn rational(a: BigRational) -> Self {
        Quad {
            a,
            b: BigRational::zero(),
            d: BigInt::zero(),
        }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    /// `a + b√d` for `d ≥ 0`, with square factors moved out of the radical.
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Result<Self> {
        if d.is_negative() {
            return Err(Error::invalid(format!("radicand {d} is negative")));
        }
        if d.is_zero() || b.is_zero() {
            return Ok(Self::rational(a));
        }
        let (s, f) = square_free_split(&d)?;
        let b = b * BigRational::from_integer(s);
        if f.is_one() {
            return Ok(Self::rational(a + b));
        }
        Ok(Quad { a, b, d: f })
    }

    /// `(p + q√d) / r`.
    pub fn from_parts(p: BigInt, q: BigInt, d: BigInt, r: BigInt) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::invalid("denominator r must be nonzero"));
        }
        Self::new(
            BigRational::new(p, r.clone()),
            BigRational::new(q, r),
            d,
        )
    }

    pub fn sqrt(d: i64) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), d.into())
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn golden_ratio() -> Self {
        Self::from_parts(1.into(), 1.into(), 5.into(), 2.into()).expect("valid")
    }

    /// `1/φ = (√5 − 1)/2`.
    pub fn inverse_golden_ratio() -> Self {
        Self::from_parts((-1).into(), 1.into(), 5.into(), 2.into()).expect("valid")
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    /// The square-free radicand, or 0 for rationals.
    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn same_field(&self, other: &Quad) -> bool {
        self.is_rational() || other.is_rational() || self.d == other.d
    }

    fn joint_d(&self, other: &Quad) -> BigInt {
        assert!(
            self.same_field(other),
            "mixing Q(√{}) and Q(√{})",
            self.d,
            other.d
        );
        if self.is_rational() {
            other.d.clone()
        } else {
            self.d.clone()
        }
    }

    fn normalized(a: BigRational, b: BigRational, d: BigInt) -> Self {
        if b.is_zero() {
            Self::rational(a)
        } else {
            Quad { a, b, d }
        }
    }

    /// `(p, q, r)` with `self = (p + q√d)/r`, `r > 0` and `gcd(p, q, r) = 1`.
    pub fn integer_parts(&self) -> (BigInt, BigInt, BigInt) {
        let r = self.a.denom().lcm(self.b.denom());
        let p = self.a.numer() * (&r / self.a.denom());
        let q = self.b.numer() * (&r / self.b.denom());
        let g = p.gcd(&q).gcd(&r);
        (p / &g, q / &g, r / g)
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            (x, _) => {
                // Opposite signs: compare a² against b²d.
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * BigRational::from_integer(self.d.clone());
                match lhs.cmp(&rhs) {
                    Ordering::Greater => x,
                    Ordering::Less => x.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn abs(&self) -> Quad {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Quad> {
        if self.is_zero() {
            return Err(Error::invalid("division by zero"));
        }
        if self.is_rational() {
            return Ok(Self::rational(self.a.recip()));
        }
        let norm = &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.clone());
        Ok(Self::normalized(
            &self.a / &norm,
            -(&self.b / &norm),
            self.d.clone(),
        ))
    }

    pub fn checked_div(&self, other: &Quad) -> Result<Quad> {
        Ok(self * &other.recip()?)
    }

    /// `⌊self⌋`, decided exactly.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.a.floor().to_integer();
        }
        let (p, q, r) = self.integer_parts();
        let s = (&q * &q * &self.d).sqrt();
        let shift = if q.is_negative() { -s - 1 } else { s };
        let mut m = (p + shift).div_floor(&r);
        loop {
            let m_q = Quad::rational(BigRational::from_integer(m.clone()));
            if (self - &m_q).signum() == Ordering::Less {
                m -= 1;
                continue;
            }
            let next = Quad::rational(BigRational::from_integer(&m + 1));
            if (self - &next).signum() != Ordering::Less {
                m += 1;
                continue;
            }
            return m;
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.is_rational() {
            return a;
        }
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }

    pub fn mul_rational(&self, k: &BigRational) -> Quad {
        Self::normalized(&self.a * k, &self.b * k, self.d.clone())
    }
}

impl From<BigRational> for Quad {
    fn from(r: BigRational) -> Self {
        Quad::rational(r)
    }
}

impl Add for &Quad {
    type Output = Quad;
    fn add(self, rhs: &Quad) -> Quad {
        let d = self.joint_d(rhs);
        Quad::normalized(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl Sub for &Quad {
    type Output = Quad;
    fn sub(self, rhs: &Quad) -> Quad {
        let d = self.joint_d(rhs);
        Quad::normalized(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl Mul for &Quad {
    type Output = Quad;
    fn mul(self, rhs: &Quad) -> Quad {
        let d = self.joint_d(rhs);
        let dr = BigRational::from_integer(d.clone());
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dr;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Quad::normalized(a, b, d)
    }
}

impl Neg for &Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad::normalized(-&self.a, -&self.b, self.d.clone())
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        -&self
    }
}

impl PartialOrd for Quad {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.same_field(other).then(|| (self - other).signum())
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let (p, q, r) = self.integer_parts();
        let q_abs = q.abs();
        let coeff = if q_abs.is_one() {
            String::new()
        } else {
            q_abs.to_string()
        };
        let sign = if q.sign() == Sign::Minus { "-" } else { "+" };
        let body = if p.is_zero() {
            let lead = if sign == "-" { "-" } else { "" };
            format!("{lead}{coeff}√{}", self.d)
        } else {
            format!("{p} {sign} {coeff}√{}", self.d)
        };
        if r.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{r}")
        }
    }
}
