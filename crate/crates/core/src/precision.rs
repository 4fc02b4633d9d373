//! Working precision for floating-point stages and the tagged JSON form of approximate values.

use rug::{Float, Rational};
use serde::Serialize;

/// Decimal digits at or below which the double-precision mode is used.
pub const DOUBLE_DIGITS: u32 = 15;

/// MPFR bits for `digits` significant decimal digits: exactly 53 in double mode,
/// otherwise `⌈digits·log₂10⌉` plus 8 guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    if digits <= DOUBLE_DIGITS {
        53
    } else {
        (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 8
    }
}

pub fn float_from_rational(r: &Rational, bits: u32) -> Float {
    Float::with_val(bits, r)
}

/// A floating value tagged with the precision it was computed at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Approx {
    pub approx: String,
    pub precision_digits: u32,
}

impl Approx {
    pub fn new(value: &Float, precision_digits: u32) -> Self {
        let digits = precision_digits.max(1) as usize;
        Approx { approx: format!("{:.*e}", digits, value), precision_digits }
    }
}
