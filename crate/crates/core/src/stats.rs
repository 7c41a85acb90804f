//! Exact summary statistics over rational series.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::decimal;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSummary {
    pub count: usize,
    pub mean: BigRational,
    pub median: BigRational,
    /// Divides by `N − 1`; zero for a single element.
    pub sample_variance: BigRational,
    pub population_variance: BigRational,
}

impl SeriesSummary {
    pub fn sample_std_decimal(&self) -> String {
        decimal::sqrt_rational(&self.sample_variance, decimal::PLACES)
    }

    pub fn population_std_decimal(&self) -> String {
        decimal::sqrt_rational(&self.population_variance, decimal::PLACES)
    }
}

pub fn summarize(series: &[BigRational]) -> Result<SeriesSummary> {
    if series.is_empty() {
        return Err(Error::invalid("statistics need a nonempty series"));
    }
    let n = BigRational::from_integer(BigInt::from(series.len()));
    let mean = series.iter().fold(BigRational::zero(), |acc, x| acc + x) / &n;
    let ss = series
        .iter()
        .map(|x| (x - &mean) * (x - &mean))
        .fold(BigRational::zero(), |acc, x| acc + x);
    let sample_variance = if series.len() > 1 {
        &ss / (&n - BigRational::from_integer(1.into()))
    } else {
        BigRational::zero()
    };
    Ok(SeriesSummary {
        count: series.len(),
        median: median(series),
        population_variance: ss / &n,
        sample_variance,
        mean,
    })
}

fn median(series: &[BigRational]) -> BigRational {
    let mut sorted = series.to_vec();
    sorted.sort();
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid].clone()
    } else {
        (&sorted[mid - 1] + &sorted[mid]) / BigRational::from_integer(2.into())
    }
}

/// Pearson's r, kept exact as a sign and `r²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correlation {
    pub sign: Ordering,
    pub r_squared: BigRational,
    /// Either series was constant; `r` is then 0 by convention.
    pub zero_variance: bool,
}

impl Correlation {
    pub fn decimal(&self) -> String {
        let mag = decimal::sqrt_rational(&self.r_squared, decimal::PLACES);
        if self.sign == Ordering::Less {
            format!("-{mag}")
        } else {
            mag
        }
    }

    /// Exactly `value`, for rational `value`.
    pub fn equals(&self, value: &BigRational) -> bool {
        let sign = value.cmp(&BigRational::zero());
        (sign == self.sign || value.is_zero() && self.r_squared.is_zero())
            && value * value == self.r_squared
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let m = self.r_squared.to_f64().unwrap_or(f64::NAN).sqrt();
        if self.sign == Ordering::Less {
            -m
        } else {
            m
        }
    }
}

pub fn pearson(x: &[BigRational], y: &[BigRational]) -> Result<Correlation> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::invalid("correlation needs nonempty series"));
    }
    if x.len() != y.len() {
        return Err(Error::invalid(format!(
            "correlation needs equal lengths, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    let n = BigRational::from_integer(BigInt::from(x.len()));
    let mx = x.iter().fold(BigRational::zero(), |a, v| a + v) / &n;
    let my = y.iter().fold(BigRational::zero(), |a, v| a + v) / &n;
    let (mut sxy, mut sxx, mut syy) = (BigRational::zero(), BigRational::zero(), BigRational::zero());
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - &mx, b - &my);
        sxy += &dx * &dy;
        sxx += &dx * &dx;
        syy += &dy * &dy;
    }
    if sxx.is_zero() || syy.is_zero() {
        return Ok(Correlation {
            sign: Ordering::Equal,
            r_squared: BigRational::zero(),
            zero_variance: true,
        });
    }
    let sign = if sxy.is_zero() {
        Ordering::Equal
    } else if sxy.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    };
    Ok(Correlation {
        sign,
        r_squared: &sxy * &sxy / (sxx * syy),
        zero_variance: false,
    })
}
