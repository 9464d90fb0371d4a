//! Human-readable forms of exact values, such as `φ·√φ` or `√(φ/2)`.
//!
//! Canonical forms (`Display` of `QPhi` and `Radical`) are what documents
//! store; these are for table cells and report lines only.

use goldenextremal_core::exactphi::{QPhi, Radical};
use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

/// `x = r·φ^m` with rational `r > 0` and `m ≥ 0`, if such a split exists.
///
/// `N(φ^m) = (−1)^m`, so `r² = |N(x)|` and `m` follows from the size of `x/r`.
pub fn phi_power_split(x: &QPhi) -> Option<(BigRational, u32)> {
    if x.signum() <= 0 {
        return None;
    }
    let r = rational_sqrt(&x.norm().abs())?;
    let ratio = x.scale(&r.recip());
    let estimate = (ratio.to_f64().ln() / QPhi::phi().to_f64().ln()).round();
    if !(0.0..=100_000.0).contains(&estimate) {
        return None;
    }
    let m = estimate as u32;
    (QPhi::phi().pow(m) == ratio).then_some((r, m))
}

fn rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn phi_pow(k: u32) -> Option<String> {
    match k {
        0 => None,
        1 => Some("φ".into()),
        _ => Some(format!("φ^{k}")),
    }
}

/// `r·φ^k` as a product with the denominator last: `3φ/2`, `φ^2`, `5`.
fn monomial(r: &BigRational, k: u32) -> String {
    let mut num = String::new();
    if !r.numer().is_one() || k == 0 {
        num.push_str(&r.numer().to_string());
    }
    if let Some(p) = phi_pow(k) {
        num.push_str(&p);
    }
    if r.denom().is_one() {
        num
    } else {
        format!("{num}/{}", r.denom())
    }
}

fn join_product(parts: &[String], denom: &BigInt) -> String {
    let body = if parts.is_empty() { "1".to_string() } else { parts.join("·") };
    if denom.is_one() {
        body
    } else {
        format!("{body}/{denom}")
    }
}

/// A field element: `φ/2`, `φ^3`, `2 + φ`, `-1/2 + 3/2·φ`.
pub fn qphi(x: &QPhi) -> String {
    if x.is_zero() {
        return "0".into();
    }
    if let Some((r, m)) = phi_power_split(x) {
        return monomial(&r, m);
    }
    if let Some((r, m)) = phi_power_split(&-x) {
        return format!("-{}", monomial(&r, m));
    }
    let (a, b) = (x.a(), x.b());
    let bterm = if b.abs().is_one() { "φ".to_string() } else { format!("{}·φ", rational(&b.abs())) };
    match (a.is_zero(), b.is_negative()) {
        (true, false) => bterm,
        (true, true) => format!("-{bterm}"),
        (false, false) => format!("{} + {bterm}", rational(a)),
        (false, true) => format!("{} - {bterm}", rational(a)),
    }
}

/// A non-negative radical, written from its square: `√(2φ)`, `φ·√φ`, `√φ/2`.
pub fn radical(x: &Radical) -> String {
    if x.signum() < 0 {
        return format!("-{}", radical(&x.neg()));
    }
    let sq = x.square();
    if sq.is_zero() {
        return "0".into();
    }
    if let Some(v) = sq.sqrt_exact() {
        return qphi(&v);
    }
    let Some((r, m)) = phi_power_split(&sq) else {
        return format!("√({})", qphi(&sq));
    };
    let (k, e) = (m / 2, m % 2);
    match rational_sqrt(&r) {
        Some(s) => {
            let mut parts = Vec::new();
            if !s.numer().is_one() {
                parts.push(s.numer().to_string());
            }
            parts.extend(phi_pow(k));
            if e == 1 {
                parts.push("√φ".into());
            }
            join_product(&parts, s.denom())
        }
        None => {
            let mut parts: Vec<String> = phi_pow(k).into_iter().collect();
            parts.push(format!("√({})", monomial(&r, e)));
            parts.join("·")
        }
    }
}

/// The same text with `phi`, `sqrt` and `*` in place of `φ`, `√` and `·`.
pub fn ascii(s: &str) -> String {
    s.replace('φ', "phi").replace('√', "sqrt").replace('·', "*")
}
