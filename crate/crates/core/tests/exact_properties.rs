use std::cmp::Ordering;

use goldenextremal_core::exactphi::{fib_qphi, phi_pow_decompose, radical_cmp, Fixed, QPhi, Radical};
use num::bigint::{BigInt, BigUint};
use num::BigRational;
use proptest::prelude::*;
use proptest::strategy::ValueTree;

fn rat() -> impl Strategy<Value = BigRational> {
    (-1_000_000i64..=1_000_000, 1i64..=10_000).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn qphi() -> impl Strategy<Value = QPhi> {
    (rat(), rat()).prop_map(|(a, b)| QPhi::new(a, b))
}

fn nonneg_qphi() -> impl Strategy<Value = QPhi> {
    qphi().prop_map(|x| x.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn field_axioms(x in qphi(), y in qphi(), z in qphi()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inv().unwrap(), QPhi::one());
        } else {
            prop_assert!(x.inv().is_err());
        }
    }

    #[test]
    fn conjugation_is_a_ring_homomorphism(x in qphi(), y in qphi()) {
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        prop_assert_eq!(x.conj().conj(), x.clone());
        // norm is x·conj(x), a rational
        prop_assert_eq!(&x * &x.conj(), QPhi::rational(x.norm()));
    }

    #[test]
    fn text_round_trip(x in qphi()) {
        let back: QPhi = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    // φ from a Fibonacci convergent, independent of the library's floor.
    #[test]
    fn floor_matches_independent_phi(x in qphi()) {
        let phi = oracle_phi(60);
        let scale = BigInt::from(10).pow(60);
        let a = x.a();
        let b = x.b();
        let approx = BigRational::from_integer(phi.0.clone()) / BigRational::from_integer(phi.1.clone());
        let v = a + b * approx;
        let lo = (&v - BigRational::new(1.into(), scale.clone())).floor().to_integer();
        let hi = (&v + BigRational::new(1.into(), scale)).floor().to_integer();
        if lo == hi {
            prop_assert_eq!(x.floor(), lo);
        }
    }

    #[test]
    fn radical_order_matches_30_digit_evaluation(c1 in nonneg_qphi(), d1 in nonneg_qphi(), c2 in nonneg_qphi(), d2 in nonneg_qphi(), negate in any::<bool>()) {
        let (mut x, mut y) = (Radical::new(c1, d1).unwrap(), Radical::new(c2, d2).unwrap());
        if negate {
            x = x.neg();
            y = y.neg();
        }
        let fx = oracle_radical(&x);
        let fy = oracle_radical(&y);
        let gap = fx.sub(&fy).abs();
        if gap.to_f64() > 1e-25 {
            prop_assert_eq!(radical_cmp(&x, &y), fx.cmp(&fy));
        }
        prop_assert_eq!(radical_cmp(&x, &y), radical_cmp(&y, &x).reverse());
        prop_assert_eq!(radical_cmp(&x, &x), Ordering::Equal);
    }
}

// c·√d from a 40-digit √5 built by integer square root, not via QPhi.
fn oracle_radical(r: &Radical) -> Fixed {
    let digits = 40;
    let unit = BigInt::from(10).pow(digits);
    let sqrt5 = Fixed::from_raw((BigInt::from(5) * &unit * &unit).sqrt(), digits);
    let half = Fixed::from_raw(&unit / 2, digits);
    let phi = half.add(&half.mul(&sqrt5));
    let lift = |x: &QPhi| {
        let f = |q: &BigRational| Fixed::from_raw((q * BigRational::from_integer(unit.clone())).floor().to_integer(), digits);
        f(x.a()).add(&f(x.b()).mul(&phi))
    };
    lift(r.coeff()).mul(&lift(r.radicand()).sqrt().unwrap())
}

// Convergent F(k+1)/F(k) with error below 10^-digits.
fn oracle_phi(digits: u32) -> (BigInt, BigInt) {
    let (mut a, mut b) = (BigInt::from(1), BigInt::from(1));
    for _ in 0..(5 * digits + 10) {
        let next = &a + &b;
        b = a;
        a = next;
    }
    (a, b)
}

#[test]
fn sign_agrees_with_leading_decimal_sign() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for _ in 0..1000 {
        let x = qphi().new_tree(&mut runner).unwrap().current();
        let text = x.to_decimal(30);
        let expected = if x.is_zero() {
            0
        } else if text.starts_with('-') {
            -1
        } else {
            1
        };
        if text.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') && !x.is_zero() {
            continue;
        }
        assert_eq!(x.signum(), expected, "{x} -> {text}");
    }
}

#[test]
fn phi_powers_decompose_into_fibonacci_up_to_200() {
    let (mut f0, mut f1) = (BigUint::from(0u32), BigUint::from(1u32));
    let mut power = QPhi::phi();
    for n in 0..=200u64 {
        let (a, b) = phi_pow_decompose(n).unwrap();
        assert_eq!((&a, &b), (&f1, &f0), "n = {n}");
        let rebuilt = QPhi::new(BigRational::from_integer(BigInt::from(b)), BigRational::from_integer(BigInt::from(a)));
        assert_eq!(rebuilt, power, "n = {n}");
        assert_eq!(fib_qphi(n), QPhi::integer(BigInt::from(f0.clone())));
        power = &power * &QPhi::phi();
        let next = &f0 + &f1;
        f0 = f1;
        f1 = next;
    }
}
