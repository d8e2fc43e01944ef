//! Exact rational values and the decimal presentation layer.
//!
//! All percentile arithmetic is carried out on [`Exact`]; conversion to
//! decimal text happens only through [`round_half_up`].

use alloc::format;
use alloc::string::String;
use core::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Exact = BigRational;

pub fn ratio(numer: u64, denom: u64) -> Exact {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: u64) -> Exact {
    BigRational::from_integer(BigInt::from(value))
}

pub fn to_f64(value: &Exact) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Parses a decimal such as `25`, `12.5` or `0.125` into an exact value.
pub fn parse_decimal(text: &str) -> Option<Exact> {
    let text = text.trim();
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut numer = BigInt::zero();
    for b in int_part.bytes().chain(frac_part.bytes()) {
        numer = numer * 10u32 + u32::from(b - b'0');
    }
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = BigRational::new(numer, denom);
    Some(if negative { -value } else { value })
}

/// `value` rounded half-up (ties away from zero) to `places` decimals, kept
/// exact.
pub fn round_half_up_value(value: &Exact, places: usize) -> Exact {
    let scale = num_traits::pow(BigInt::from(10u32), places);
    let rounded = half_up_scaled(value, &scale);
    let magnitude = BigRational::new(rounded, scale);
    if value.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

fn half_up_scaled(value: &Exact, scale: &BigInt) -> BigInt {
    let scaled = value.abs() * BigRational::from_integer(scale.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2u32));
    (scaled + half).floor().to_integer()
}

/// Decimal text rounded half-up (ties away from zero) to `places` digits.
pub fn round_half_up(value: &Exact, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), places);
    let rounded = half_up_scaled(value, &scale);
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if value.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if places == 0 {
        format!("{sign}{whole}")
    } else {
        let frac = format!("{frac}");
        format!("{sign}{whole}.{frac:0>places$}")
    }
}

/// Numeric backend for the class-attribution arithmetic: exact rationals or
/// plain `f64`.
pub trait Scalar:
    Clone + PartialOrd + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
    fn from_ratio(numer: u64, denom: u64) -> Self;
    fn from_exact(value: &Exact) -> Self;

    fn zero() -> Self {
        Self::from_ratio(0, 1)
    }

    fn one() -> Self {
        Self::from_ratio(1, 1)
    }
}

impl Scalar for Exact {
    fn from_ratio(numer: u64, denom: u64) -> Self {
        ratio(numer, denom)
    }

    fn from_exact(value: &Exact) -> Self {
        value.clone()
    }
}

impl Scalar for f64 {
    fn from_ratio(numer: u64, denom: u64) -> Self {
        numer as f64 / denom as f64
    }

    fn from_exact(value: &Exact) -> Self {
        to_f64(value)
    }
}

pub(crate) fn min<S: Scalar>(a: S, b: S) -> S {
    if b < a {
        b
    } else {
        a
    }
}

pub(crate) fn max<S: Scalar>(a: S, b: S) -> S {
    if b > a {
        b
    } else {
        a
    }
}
