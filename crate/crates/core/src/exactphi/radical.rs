use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::BigRational;

use super::qphi::format_scaled;
use super::{ExactError, Fixed, QPhi};

/// The real number `c·√d` with `c, d` in the golden field and `d ≥ 0`.
///
/// Radicands are kept as given; two radicals are equal when their signs and
/// squares `c²·d` agree.
#[derive(Clone, Debug)]
pub struct Radical {
    c: QPhi,
    d: QPhi,
}

impl Radical {
    pub fn new(c: QPhi, d: QPhi) -> Result<Self, ExactError> {
        if d.is_negative() {
            return Err(ExactError::NegativeRadicand(d.to_string()));
        }
        if c.is_zero() || d.is_zero() {
            return Ok(Radical { c: QPhi::zero(), d: QPhi::zero() });
        }
        Ok(Radical { c, d })
    }

    /// `√d`.
    pub fn sqrt(d: QPhi) -> Result<Self, ExactError> {
        Radical::new(QPhi::one(), d)
    }

    /// `x·√1`.
    pub fn from_qphi(x: QPhi) -> Self {
        Radical::new(x, QPhi::one()).expect("radicand 1 is non-negative")
    }

    pub fn zero() -> Self {
        Radical::from_qphi(QPhi::zero())
    }

    pub fn one() -> Self {
        Radical::from_qphi(QPhi::one())
    }

    pub fn coeff(&self) -> &QPhi {
        &self.c
    }

    pub fn radicand(&self) -> &QPhi {
        &self.d
    }

    pub fn signum(&self) -> i8 {
        if self.d.is_zero() {
            0
        } else {
            self.c.signum()
        }
    }

    /// `c²·d`, an element of the field.
    pub fn square(&self) -> QPhi {
        self.c.square() * &self.d
    }

    pub fn mul(&self, rhs: &Radical) -> Radical {
        Radical::new(&self.c * &rhs.c, &self.d * &rhs.d).expect("product of non-negative radicands")
    }

    pub fn scale(&self, k: &QPhi) -> Radical {
        Radical::new(&self.c * k, self.d.clone()).expect("radicand unchanged")
    }

    pub fn neg(&self) -> Radical {
        Radical { c: -&self.c, d: self.d.clone() }
    }

    /// The value as a field element, when the radicand is a perfect square.
    pub fn to_qphi(&self) -> Option<QPhi> {
        self.d.sqrt_exact().map(|r| &self.c * &r)
    }

    /// Decimal expansion truncated toward zero.
    pub fn to_decimal(&self, digits: usize) -> String {
        let m = self.scaled_magnitude(digits as u32);
        format_scaled(self.signum() < 0, &m, digits)
    }

    pub fn to_fixed(&self, digits: u32) -> Fixed {
        let m = self.scaled_magnitude(digits);
        Fixed::from_raw(if self.signum() < 0 { -m } else { m }, digits)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_fixed(40).to_f64()
    }

    // floor(|c|·√d·10^k) = isqrt(floor(c²d·10^2k))
    fn scaled_magnitude(&self, digits: u32) -> BigInt {
        let scale = BigRational::from_integer(BigInt::from(10).pow(2 * digits));
        self.square().scale(&scale).floor().sqrt()
    }
}

/// Exact order: signs first, then squares.
pub fn radical_cmp(x: &Radical, y: &Radical) -> Ordering {
    let (sx, sy) = (x.signum(), y.signum());
    if sx != sy {
        return sx.cmp(&sy);
    }
    match sx {
        0 => Ordering::Equal,
        1 => x.square().cmp(&y.square()),
        _ => y.square().cmp(&x.square()),
    }
}

pub fn radical_mul(x: &Radical, y: &Radical) -> Radical {
    x.mul(y)
}

impl PartialEq for Radical {
    fn eq(&self, other: &Self) -> bool {
        radical_cmp(self, other) == Ordering::Equal
    }
}

impl Eq for Radical {}

impl PartialOrd for Radical {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Radical {
    fn cmp(&self, other: &Self) -> Ordering {
        radical_cmp(self, other)
    }
}

impl From<QPhi> for Radical {
    fn from(x: QPhi) -> Self {
        Radical::from_qphi(x)
    }
}

/// Canonical text form `(c)*sqrt(d)`.
impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*sqrt({})", self.c, self.d)
    }
}

impl FromStr for Radical {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::Parse(s.to_string());
        let body = s.trim().strip_prefix('(').ok_or_else(bad)?;
        let (c, rest) = body.split_once(")*sqrt(").ok_or_else(bad)?;
        let d = rest.strip_suffix(')').ok_or_else(bad)?;
        Radical::new(c.parse()?, d.parse()?)
    }
}
