//! Exact arithmetic in the golden field `Q(φ)` and in single square roots
//! over it, plus the Fibonacci numbers that tie powers of φ to the field basis.

mod fixed;
mod qphi;
mod radical;

use num::bigint::BigUint;
use num::{One, Zero};
use thiserror::Error;

pub use fixed::Fixed;
pub use qphi::QPhi;
pub use radical::{radical_cmp, radical_mul, Radical};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero in Q(phi)")]
    DivisionByZero,
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("cannot parse exact value {0:?}")]
    Parse(String),
    #[error("phi^{power} does not decompose as F(n+1)*phi + F(n)")]
    Decomposition { power: u64 },
}

/// `F(n)` with `F(0) = 0`, `F(1) = 1`.
pub fn fib(n: u64) -> BigUint {
    let (mut prev, mut cur) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let next = &prev + &cur;
        prev = std::mem::replace(&mut cur, next);
    }
    prev
}

/// Returns `(F(n+1), F(n))` after checking, by multiplying φ by itself
/// `n + 1` times in the field, that `φ^(n+1) = F(n+1)·φ + F(n)`.
pub fn phi_pow_decompose(n: u64) -> Result<(BigUint, BigUint), ExactError> {
    let phi = QPhi::phi();
    let mut power = phi.clone();
    for _ in 0..n {
        power = &power * &phi;
    }
    let (f_next, f_n) = (fib(n + 1), fib(n));
    let expected = QPhi::new(
        num::BigRational::from_integer(f_n.clone().into()),
        num::BigRational::from_integer(f_next.clone().into()),
    );
    if power != expected {
        return Err(ExactError::Decomposition { power: n + 1 });
    }
    Ok((f_next, f_n))
}

/// `F(n)` lifted into the field.
pub fn fib_qphi(n: u64) -> QPhi {
    QPhi::integer(num::BigInt::from(fib(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_values() {
        assert_eq!(fib(0), BigUint::zero());
        assert_eq!(fib(2), BigUint::one());
        assert_eq!(fib(10), BigUint::from(55u32));
    }

    #[test]
    fn decompositions() {
        assert_eq!(phi_pow_decompose(0).unwrap(), (BigUint::one(), BigUint::zero()));
        assert_eq!(phi_pow_decompose(1).unwrap(), (BigUint::one(), BigUint::one()));
        assert_eq!(phi_pow_decompose(3).unwrap(), (BigUint::from(3u32), BigUint::from(2u32)));
    }
}
