use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::integer::Integer;
use num::{Signed, Zero};

use super::qphi::format_scaled;

/// Fixed-point decimal `raw / 10^digits`, used wherever a value leaves the
/// exact layer (sums of unlike radicals, nested roots, float reports).
///
/// Every operation rounds toward negative infinity, so the error after `k`
/// operations stays within a few units of `10^-digits`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fixed {
    raw: BigInt,
    digits: u32,
}

impl Fixed {
    pub fn from_raw(raw: BigInt, digits: u32) -> Self {
        Fixed { raw, digits }
    }

    pub fn zero(digits: u32) -> Self {
        Fixed { raw: BigInt::zero(), digits }
    }

    pub fn from_int(n: i64, digits: u32) -> Self {
        Fixed { raw: BigInt::from(n) * unit(digits), digits }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn raw(&self) -> &BigInt {
        &self.raw
    }

    pub fn add(&self, rhs: &Fixed) -> Fixed {
        debug_assert_eq!(self.digits, rhs.digits);
        Fixed { raw: &self.raw + &rhs.raw, digits: self.digits }
    }

    pub fn sub(&self, rhs: &Fixed) -> Fixed {
        debug_assert_eq!(self.digits, rhs.digits);
        Fixed { raw: &self.raw - &rhs.raw, digits: self.digits }
    }

    pub fn mul(&self, rhs: &Fixed) -> Fixed {
        debug_assert_eq!(self.digits, rhs.digits);
        Fixed {
            raw: (&self.raw * &rhs.raw).div_floor(&unit(self.digits)),
            digits: self.digits,
        }
    }

    /// `None` on division by zero.
    pub fn div(&self, rhs: &Fixed) -> Option<Fixed> {
        debug_assert_eq!(self.digits, rhs.digits);
        if rhs.raw.is_zero() {
            return None;
        }
        Some(Fixed {
            raw: (&self.raw * unit(self.digits)).div_floor(&rhs.raw),
            digits: self.digits,
        })
    }

    /// `None` for negative input.
    pub fn sqrt(&self) -> Option<Fixed> {
        if self.raw.is_negative() {
            return None;
        }
        Some(Fixed {
            raw: (&self.raw * unit(self.digits)).sqrt(),
            digits: self.digits,
        })
    }

    pub fn neg(&self) -> Fixed {
        Fixed { raw: -&self.raw, digits: self.digits }
    }

    pub fn abs(&self) -> Fixed {
        Fixed { raw: self.raw.abs(), digits: self.digits }
    }

    pub fn signum(&self) -> i8 {
        if self.raw.is_positive() {
            1
        } else if self.raw.is_negative() {
            -1
        } else {
            0
        }
    }

    /// True when `|self − rhs| ≤ tol`.
    pub fn approx_eq(&self, rhs: &Fixed, tol: f64) -> bool {
        self.sub(rhs).abs().to_f64() <= tol
    }

    pub fn to_f64(&self) -> f64 {
        let negative = self.raw.is_negative();
        format_scaled(negative, &self.raw.abs(), self.digits as usize)
            .parse()
            .expect("fixed-point text is a valid float")
    }

    /// Truncated decimal text with `places` fractional digits (`places ≤ digits`).
    pub fn to_decimal(&self, places: usize) -> String {
        let drop = BigInt::from(10).pow(self.digits.saturating_sub(places as u32));
        let m = self.raw.abs() / drop;
        format_scaled(self.raw.is_negative(), &m, places)
    }
}

fn unit(digits: u32) -> BigInt {
    BigInt::from(10).pow(digits)
}

impl PartialOrd for Fixed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fixed {
    fn cmp(&self, other: &Self) -> Ordering {
        self.raw.cmp(&other.raw)
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(self.digits as usize))
    }
}
