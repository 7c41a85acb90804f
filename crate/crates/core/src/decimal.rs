//! Fixed-place decimal rendering with round-half-to-even, computed exactly.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::surd::Quad;

/// Places used by every report in the crate.
pub const PLACES: usize = 9;

fn pow10(places: usize) -> BigInt {
    BigInt::from(10u32).pow(places as u32)
}

/// Renders an integer count of `10^-places` units, e.g. `500000000` → `0.500000000`.
fn render_scaled(units: &BigInt, places: usize) -> String {
    let neg = units.is_negative();
    let digits = units.abs().to_string();
    let digits = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int, frac) = digits.split_at(digits.len() - places);
    let sign = if neg { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Rounds `floor + frac` to an integer where `frac_vs_half` compares the
/// discarded fraction with 1/2.
fn round_half_even(floor: BigInt, frac_vs_half: Ordering) -> BigInt {
    match frac_vs_half {
        Ordering::Less => floor,
        Ordering::Greater => floor + 1,
        Ordering::Equal => {
            if floor.is_even() {
                floor
            } else {
                floor + 1
            }
        }
    }
}

pub fn rational(r: &BigRational, places: usize) -> String {
    let scaled = r * BigRational::from_integer(pow10(places));
    let floor = scaled.floor();
    let frac = &scaled - &floor;
    let half = BigRational::new(1.into(), 2.into());
    render_scaled(&round_half_even(floor.to_integer(), frac.cmp(&half)), places)
}

pub fn quad(x: &Quad, places: usize) -> String {
    if let Some(r) = x.as_rational() {
        return rational(r, places);
    }
    let scaled = x.mul_rational(&BigRational::from_integer(pow10(places)));
    let floor = scaled.floor();
    let frac = &scaled - &Quad::rational(BigRational::from_integer(floor.clone()));
    let half = Quad::rational(BigRational::new(1.into(), 2.into()));
    let vs_half = (&frac - &half).signum();
    render_scaled(&round_half_even(floor, vs_half), places)
}

/// `√v` for rational `v ≥ 0`, rendered exactly.
pub fn sqrt_rational(v: &BigRational, places: usize) -> String {
    assert!(!v.is_negative(), "square root of a negative rational");
    let scale = pow10(places);
    let scaled = v * BigRational::from_integer(&scale * &scale);
    // floor(√x) = isqrt(floor(x)) for real x ≥ 0.
    let floor = scaled.floor().to_integer().sqrt();
    let mid = BigRational::from_integer(floor.clone()) + BigRational::new(1.into(), 2.into());
    render_scaled(&round_half_even(floor, scaled.cmp(&(&mid * &mid))), places)
}

/// `p/q` in lowest terms, with `q ≥ 1` always printed.
pub fn fraction(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// An integer when the denominator is one, `p/q` otherwise.
pub fn compact(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        fraction(r)
    }
}

/// Renders an `f64` to `places` decimals; used only for transcendental values.
pub fn float(x: f64, places: usize) -> String {
    if x == 0.0 {
        return render_scaled(&BigInt::zero(), places);
    }
    format!("{x:.places$}")
}
