use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::{BigInt, Sign};
use num::integer::Integer;
use num::{BigRational, Signed, Zero};

use super::{ExactError, Fixed};

/// An element `a + b·φ` of the golden field, with `φ = (1 + √5)/2`.
///
/// Products are reduced with `φ² = φ + 1`, so the pair `(a, b)` is the
/// canonical representation and equality is component-wise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPhi {
    a: BigRational,
    b: BigRational,
}

impl QPhi {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QPhi { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        QPhi {
            a: BigRational::from_integer(a.into()),
            b: BigRational::from_integer(b.into()),
        }
    }

    /// `(an/ad) + (bn/bd)·φ`. Panics on a zero denominator.
    pub fn from_ratios(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        QPhi {
            a: BigRational::new(an.into(), ad.into()),
            b: BigRational::new(bn.into(), bd.into()),
        }
    }

    pub fn rational(r: BigRational) -> Self {
        QPhi { a: r, b: BigRational::zero() }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        QPhi::rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        QPhi::from_ints(0, 0)
    }

    pub fn one() -> Self {
        QPhi::from_ints(1, 0)
    }

    pub fn phi() -> Self {
        QPhi::from_ints(0, 1)
    }

    /// Rational part.
    pub fn a(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient of φ.
    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate, `φ ↦ 1 − φ`.
    pub fn conj(&self) -> QPhi {
        QPhi { a: &self.a + &self.b, b: -&self.b }
    }

    /// Field norm `x · conj(x) = a² + ab − b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    pub fn inv(&self) -> Result<QPhi, ExactError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let c = self.conj();
        Ok(QPhi { a: c.a / &n, b: c.b / &n })
    }

    pub fn checked_div(&self, rhs: &QPhi) -> Result<QPhi, ExactError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn square(&self) -> QPhi {
        self * self
    }

    pub fn pow(&self, exp: u32) -> QPhi {
        let mut result = QPhi::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = base.square();
            e >>= 1;
        }
        result
    }

    pub fn scale(&self, r: &BigRational) -> QPhi {
        QPhi { a: &self.a * r, b: &self.b * r }
    }

    /// Exact sign in {-1, 0, 1}.
    ///
    /// The value is `((2a + b) + b·√5) / 2`; when the two terms disagree in
    /// sign, `(2a + b)²` is compared against `5b²`.
    pub fn signum(&self) -> i8 {
        let two = BigRational::from_integer(2.into());
        let p = &two * &self.a + &self.b;
        let q = &self.b;
        let sp = rational_sign(&p);
        let sq = rational_sign(q);
        if sp == sq || sq == 0 {
            return sp;
        }
        if sp == 0 {
            return sq;
        }
        let five = BigRational::from_integer(5.into());
        match (&p * &p).cmp(&(five * q * q)) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            // √5 is irrational, so equality needs q = 0
            Ordering::Equal => unreachable!("p² = 5q² with q ≠ 0"),
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> QPhi {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        // x = (P + Q√5) / (2D) over integers, D > 0.
        let two = BigRational::from_integer(2.into());
        let p = &two * &self.a + &self.b;
        let q = &self.b;
        let d = p.denom().lcm(q.denom());
        let big_p = p.numer() * (&d / p.denom());
        let big_q = q.numer() * (&d / q.denom());
        let root = (BigInt::from(5) * &big_q * &big_q).sqrt();
        let floor_q_sqrt5 = match big_q.sign() {
            Sign::Minus => -root - 1,
            _ => root,
        };
        (big_p + floor_q_sqrt5).div_floor(&(d * 2))
    }

    /// Decimal expansion truncated (toward zero) to `digits` places.
    pub fn to_decimal(&self, digits: usize) -> String {
        let negative = self.is_negative();
        let scale = BigRational::from_integer(BigInt::from(10).pow(digits as u32));
        let m = self.abs().scale(&scale).floor();
        format_scaled(negative, &m, digits)
    }

    pub fn to_fixed(&self, digits: u32) -> Fixed {
        let scale = BigRational::from_integer(BigInt::from(10).pow(digits));
        Fixed::from_raw(self.scale(&scale).floor(), digits)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_fixed(40).to_f64()
    }

    /// Square root inside the field, when one exists.
    ///
    /// A root `r` satisfies `N(r)² = N(x)` and `(r + r')² = Tr(x) + 2N(r)`,
    /// `(r − r')² = Tr(x) − 2N(r)`; both candidate norms are tried and the
    /// non-negative root is returned.
    pub fn sqrt_exact(&self) -> Option<QPhi> {
        if self.is_zero() {
            return Some(QPhi::zero());
        }
        if self.is_negative() {
            return None;
        }
        let norm_root = rational_sqrt(&self.norm())?;
        let two = BigRational::from_integer(2.into());
        let five = BigRational::from_integer(5.into());
        let trace = &two * &self.a + &self.b;
        for n in [norm_root.clone(), -norm_root] {
            let Some(t) = rational_sqrt(&(&trace + &two * &n)) else {
                continue;
            };
            let Some(q) = rational_sqrt(&((&trace - &two * &n) / &five)) else {
                continue;
            };
            for q in [q.clone(), -q] {
                // r = p + qφ with 2p + q = t
                let p = (&t - &q) / &two;
                let r = QPhi::new(p, q);
                if r.square() == *self {
                    return Some(r.abs());
                }
            }
        }
        None
    }
}

fn rational_sign(r: &BigRational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Exact rational square root, if `r` is the square of a rational.
pub(crate) fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

pub(crate) fn format_scaled(negative: bool, m: &BigInt, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let (int_part, frac_part) = m.div_rem(&scale);
    let sign = if negative && !m.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
    }
}

impl PartialOrd for QPhi {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QPhi {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl Default for QPhi {
    fn default() -> Self {
        QPhi::zero()
    }
}

impl From<i64> for QPhi {
    fn from(n: i64) -> Self {
        QPhi::from_ints(n, 0)
    }
}

impl From<BigRational> for QPhi {
    fn from(r: BigRational) -> Self {
        QPhi::rational(r)
    }
}

impl<'a> Add<&'a QPhi> for &'a QPhi {
    type Output = QPhi;
    fn add(self, rhs: &QPhi) -> QPhi {
        QPhi { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl<'a> Sub<&'a QPhi> for &'a QPhi {
    type Output = QPhi;
    fn sub(self, rhs: &QPhi) -> QPhi {
        QPhi { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl<'a> Mul<&'a QPhi> for &'a QPhi {
    type Output = QPhi;
    fn mul(self, rhs: &QPhi) -> QPhi {
        let bb = &self.b * &rhs.b;
        QPhi {
            a: &self.a * &rhs.a + &bb,
            b: &self.a * &rhs.b + &rhs.a * &self.b + bb,
        }
    }
}

impl Neg for &QPhi {
    type Output = QPhi;
    fn neg(self) -> QPhi {
        QPhi { a: -&self.a, b: -&self.b }
    }
}

impl Neg for QPhi {
    type Output = QPhi;
    fn neg(self) -> QPhi {
        QPhi { a: -self.a, b: -self.b }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QPhi> for QPhi {
            type Output = QPhi;
            fn $m(self, rhs: QPhi) -> QPhi { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a QPhi> for QPhi {
            type Output = QPhi;
            fn $m(self, rhs: &QPhi) -> QPhi { (&self).$m(rhs) }
        }
        impl<'a> $tr<QPhi> for &'a QPhi {
            type Output = QPhi;
            fn $m(self, rhs: QPhi) -> QPhi { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

/// Canonical text form `a + b*phi`, rationals as `p` or `p/q`.
impl fmt::Display for QPhi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*phi", self.a, self.b)
    }
}

impl FromStr for QPhi {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::Parse(s.to_string());
        let (a, rest) = s.trim().split_once(" + ").ok_or_else(bad)?;
        let b = rest.strip_suffix("*phi").ok_or_else(bad)?;
        let a = a.parse::<BigRational>().map_err(|_| bad())?;
        let b = b.parse::<BigRational>().map_err(|_| bad())?;
        Ok(QPhi { a, b })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QPhi {
        QPhi::from_ints(a, b)
    }

    #[test]
    fn phi_squared_reduces() {
        assert_eq!(q(0, 1) * q(0, 1), q(1, 1));
        assert_eq!(q(0, 1).pow(3), q(1, 2));
        let x = QPhi::from_ratios(3, 7, -2, 5);
        assert_eq!(q(1, 0) * &x, x);
    }

    #[test]
    fn inverses() {
        assert_eq!(q(0, 1).inv().unwrap(), q(-1, 1));
        assert_eq!(q(1, 0).inv().unwrap(), q(1, 0));
        assert_eq!(q(1, 1).inv().unwrap(), q(2, -1));
        assert_eq!(QPhi::zero().inv(), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn signs() {
        assert_eq!(q(1, 0).signum(), 1);
        assert_eq!(q(-2, 1).signum(), -1);
        assert_eq!(q(-1, 1).signum(), 1);
        assert_eq!(QPhi::zero().signum(), 0);
        assert_eq!(q(2, -1).signum(), 1);
        assert_eq!(q(1, -1).signum(), -1);
    }

    #[test]
    fn decimals_truncate() {
        assert_eq!(q(0, 1).to_decimal(10), "1.6180339887");
        assert_eq!(q(1, 0).to_decimal(3), "1.000");
        assert_eq!(q(1, 2).to_decimal(10), "4.2360679774");
        assert_eq!(q(1, -1).to_decimal(5), "-0.61803");
        assert_eq!(q(7, 0).to_decimal(0), "7");
    }

    #[test]
    fn floor_of_negative_values() {
        assert_eq!(q(0, -1).floor(), BigInt::from(-2));
        assert_eq!(q(-1, 0).floor(), BigInt::from(-1));
        assert_eq!(QPhi::from_ratios(1, 3, 0, 1).floor(), BigInt::from(0));
    }

    #[test]
    fn exact_square_roots() {
        // √5 = 2φ − 1
        assert_eq!(q(5, 0).sqrt_exact(), Some(q(-1, 2)));
        assert_eq!(q(1, 1).sqrt_exact(), Some(q(0, 1)));
        assert_eq!(QPhi::from_ratios(5, 4, 0, 1).sqrt_exact(), Some(QPhi::from_ratios(-1, 2, 1, 1)));
        assert_eq!(q(0, 2).sqrt_exact(), None);
        assert_eq!(q(0, 1).sqrt_exact(), None);
        assert_eq!(q(-4, 0).sqrt_exact(), None);
    }

    #[test]
    fn text_round_trip() {
        let x = QPhi::from_ratios(-3, 4, 5, 1);
        assert_eq!(x.to_string(), "-3/4 + 5*phi");
        assert_eq!("-3/4 + 5*phi".parse::<QPhi>().unwrap(), x);
        assert!("3 + phi".parse::<QPhi>().is_err());
    }
}
