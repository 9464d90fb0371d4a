//! The generalized golden right triangles `T(n)`.
//!
//! Dividing `φ^(n+1) = F(n+1)·φ + F(n)` by `F(n)` gives
//! `1 + (√(φ·F(n+1)/F(n)))² = (√(φ^(n+1)/F(n)))²`, a right triangle with unit
//! short leg for every `n ≥ 1`. `T(1)` is the Kepler triangle; as `n → ∞`
//! the triangles approach the half golden rectangle `(1, φ, √(1 + φ²))`.

use std::cmp::Ordering;

use num::bigint::{BigInt, BigUint};
use num::BigRational;
use thiserror::Error;

use crate::exactphi::{fib, radical_cmp, Fixed, QPhi, Radical};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("the sequence starts at n = 1, got n = {0}")]
    IndexZero(u64),
    #[error("need N >= 2 for the bounds check, got {0}")]
    RangeTooShort(u64),
    #[error("exact check failed at n = {n}: {what}")]
    Violation { n: u64, what: &'static str },
}

fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenTriangleEntry {
    pub n: u64,
    pub f_n: BigUint,
    pub f_next: BigUint,
    pub side_short: Radical,
    pub side_mid: Radical,
    pub side_long: Radical,
    pub area: Radical,
}

impl GoldenTriangleEntry {
    pub fn sides(&self) -> [&Radical; 3] {
        [&self.side_short, &self.side_mid, &self.side_long]
    }
}

/// Exact sides and area of `T(n)`; Pythagoras is re-checked in the field
/// before returning.
pub fn tn_entry(n: u64) -> Result<GoldenTriangleEntry, SequenceError> {
    if n == 0 {
        return Err(SequenceError::IndexZero(n));
    }
    let (f_n, f_next) = (fib(n), fib(n + 1));
    let phi = QPhi::phi();
    let mid_sq = phi.scale(&ratio(&f_next, &f_n));
    let long_sq = phi.pow((n + 1) as u32).scale(&ratio(&BigUint::from(1u32), &f_n));
    if QPhi::one() + &mid_sq != long_sq {
        return Err(SequenceError::Violation { n, what: "1 + mid^2 = long^2" });
    }
    let half = QPhi::rational(BigRational::new(1.into(), 2.into()));
    let side_mid = Radical::sqrt(mid_sq.clone()).expect("positive radicand");
    Ok(GoldenTriangleEntry {
        n,
        side_short: Radical::one(),
        side_long: Radical::sqrt(long_sq).expect("positive radicand"),
        area: side_mid.scale(&half),
        side_mid,
        f_n,
        f_next,
    })
}

/// Area in the closed form `(√φ / 2)·√(F(n+1)/F(n))`.
pub fn tn_area(n: u64) -> Result<Radical, SequenceError> {
    if n == 0 {
        return Err(SequenceError::IndexZero(n));
    }
    let half_sqrt_phi = Radical::new(QPhi::from_ratios(1, 2, 0, 1), QPhi::phi()).expect("positive radicand");
    let ratio_root = Radical::sqrt(QPhi::rational(ratio(&fib(n + 1), &fib(n)))).expect("positive radicand");
    Ok(half_sqrt_phi.mul(&ratio_root))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub n_max: u64,
    /// Indices where `area(T(n))` equals `area(T(1))` or `area(T(2))`.
    pub equality_at: Vec<u64>,
    pub odd_ratios_increase: bool,
    pub even_ratios_decrease: bool,
}

/// Checks `area(T(1)) ≤ area(T(n)) ≤ area(T(2))` exactly for `1 ≤ n ≤ N`,
/// together with the alternation of `F(n+1)/F(n)` by parity.
pub fn tn_area_bounds_check(n_max: u64) -> Result<BoundsReport, SequenceError> {
    if n_max < 2 {
        return Err(SequenceError::RangeTooShort(n_max));
    }
    let lower = tn_area(1)?;
    let upper = tn_area(2)?;
    let mut equality_at = Vec::new();
    for n in 1..=n_max {
        let area = tn_area(n)?;
        let below = radical_cmp(&lower, &area);
        let above = radical_cmp(&area, &upper);
        if below == Ordering::Greater {
            return Err(SequenceError::Violation { n, what: "area(T1) <= area(Tn)" });
        }
        if above == Ordering::Greater {
            return Err(SequenceError::Violation { n, what: "area(Tn) <= area(T2)" });
        }
        if below == Ordering::Equal || above == Ordering::Equal {
            equality_at.push(n);
        }
    }
    let ratios: Vec<BigRational> = (1..=n_max).map(|n| ratio(&fib(n + 1), &fib(n))).collect();
    let monotone = |start: usize, want: Ordering| {
        let picked: Vec<&BigRational> = ratios.iter().skip(start).step_by(2).collect();
        picked.windows(2).all(|w| w[1].cmp(w[0]) == want)
    };
    let odd_ratios_increase = monotone(0, Ordering::Greater);
    let even_ratios_decrease = monotone(1, Ordering::Less);
    if !odd_ratios_increase {
        return Err(SequenceError::Violation { n: n_max, what: "odd-index ratios increase" });
    }
    if !even_ratios_decrease {
        return Err(SequenceError::Violation { n: n_max, what: "even-index ratios decrease" });
    }
    Ok(BoundsReport { n_max, equality_at, odd_ratios_increase, even_ratios_decrease })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitTriangle {
    pub side_short: Radical,
    pub side_mid: Radical,
    pub side_long: Radical,
    pub area: QPhi,
    /// `(n, |side_mid(T(n)) − φ|)` at high precision.
    pub convergence: Vec<(u64, Fixed)>,
}

/// Digits carried by the convergence table; 30 are reported.
const LIMIT_DIGITS: u32 = 40;

/// `|side_mid(T(n)) − φ|` to 40 digits.
pub fn mid_side_gap(n: u64) -> Result<Fixed, SequenceError> {
    let entry = tn_entry(n)?;
    let phi = QPhi::phi().to_fixed(LIMIT_DIGITS);
    Ok(entry.side_mid.to_fixed(LIMIT_DIGITS).sub(&phi).abs())
}

/// The limiting triangle `(1, φ, √(1 + φ²))` with area `φ/2`, and the gap
/// `|side_mid(T(n)) − φ|` for each `n` in `range`.
pub fn tn_limit(range: std::ops::RangeInclusive<u64>) -> Result<LimitTriangle, SequenceError> {
    let phi = QPhi::phi();
    let convergence = range.map(|n| mid_side_gap(n).map(|g| (n, g))).collect::<Result<_, _>>()?;
    Ok(LimitTriangle {
        side_short: Radical::one(),
        side_mid: Radical::from_qphi(phi.clone()),
        side_long: Radical::sqrt(QPhi::one() + phi.square()).expect("positive radicand"),
        area: phi.scale(&BigRational::new(1.into(), 2.into())),
        convergence,
    })
}

/// `mid² = short·long`, compared exactly.
pub fn is_geometric_progression(short: &Radical, mid: &Radical, long: &Radical) -> bool {
    mid.mul(mid) == short.mul(long)
}

/// The Kepler triangle `T(1)` has sides in geometric progression.
pub fn kepler_geometric_progression_check() -> bool {
    let t1 = tn_entry(1).expect("n = 1 is valid");
    is_geometric_progression(&t1.side_short, &t1.side_mid, &t1.side_long)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QPhi {
        QPhi::from_ints(a, b)
    }

    #[test]
    fn kepler_triangle() {
        let t = tn_entry(1).unwrap();
        assert_eq!(t.side_mid, Radical::sqrt(q(0, 1)).unwrap());
        assert_eq!(t.side_long, Radical::from_qphi(q(0, 1)));
        assert!(kepler_geometric_progression_check());
    }

    #[test]
    fn second_triangle() {
        let t = tn_entry(2).unwrap();
        assert_eq!(t.side_mid, Radical::sqrt(q(0, 2)).unwrap());
        assert_eq!(t.side_long, Radical::new(q(0, 1), q(0, 1)).unwrap());
        assert!(!is_geometric_progression(&t.side_short, &t.side_mid, &t.side_long));
    }

    #[test]
    fn third_triangle() {
        let t = tn_entry(3).unwrap();
        assert_eq!(t.side_mid.square(), QPhi::from_ratios(0, 1, 3, 2));
        assert_eq!(t.side_long.square(), q(0, 1).pow(4).scale(&BigRational::new(1.into(), 2.into())));
        assert_eq!(q(2, 3), q(0, 1).pow(4));
    }

    #[test]
    fn index_zero_rejected() {
        assert_eq!(tn_entry(0), Err(SequenceError::IndexZero(0)));
        assert!(tn_area(0).is_err());
        assert!(tn_area_bounds_check(1).is_err());
    }

    #[test]
    fn areas() {
        assert_eq!(tn_area(1).unwrap().to_decimal(10), "0.6360098247");
        // √(2φ)/2 evaluated independently at 30 digits: 0.899453719973933636130613791812
        assert_eq!(tn_area(2).unwrap().to_decimal(10), "0.8994537199");
        let closed = Radical::new(QPhi::from_ratios(1, 2, 0, 1), q(0, 1)).unwrap().mul(&Radical::sqrt(QPhi::from_ratios(5, 3, 0, 1)).unwrap());
        assert_eq!(tn_area(4).unwrap(), closed);
        assert_eq!(tn_area(4).unwrap(), tn_entry(4).unwrap().area);
    }

    #[test]
    fn bounds_with_equality_at_ends() {
        let r = tn_area_bounds_check(50).unwrap();
        assert_eq!(r.equality_at, vec![1, 2]);
        let (r1, r2, r3) = (BigRational::from_integer(1.into()), BigRational::from_integer(2.into()), BigRational::new(3.into(), 2.into()));
        assert!(r1 < r3 && r3 < r2);
    }

    #[test]
    fn limit_triangle() {
        let lim = tn_limit(1..=30).unwrap();
        assert_eq!(lim.area.to_decimal(10), "0.8090169943");
        assert_eq!(lim.side_long.square(), QPhi::one() + lim.side_mid.square());
        assert!(lim.convergence.last().unwrap().1.to_f64() < 1e-12);
        assert!(!is_geometric_progression(&lim.side_short, &lim.side_mid, &lim.side_long));
    }
}
