use std::cmp::Ordering;

use crate::exactphi::{Fixed, QPhi, Radical};

use super::ConstructError;

/// Digits carried by the fixed-point shadow of every coordinate.
pub const SHADOW_DIGITS: u32 = 50;
/// Below this magnitude a shadow-only value has no trustworthy sign.
pub const SHADOW_TOL: f64 = 1e-25;

/// `p + q·√d` over the golden field. Normalized so that `q = 0` forces
/// `d = 0`, and `d` is never a perfect square in the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    p: QPhi,
    q: QPhi,
    d: QPhi,
}

impl Surd {
    pub fn new(p: QPhi, q: QPhi, d: QPhi) -> Option<Surd> {
        if d.is_negative() {
            return None;
        }
        if q.is_zero() || d.is_zero() {
            return Some(Surd::field(p));
        }
        match d.sqrt_exact() {
            Some(r) => Some(Surd::field(p + q * r)),
            None => Some(Surd { p, q, d }),
        }
    }

    pub fn field(p: QPhi) -> Surd {
        Surd { p, q: QPhi::zero(), d: QPhi::zero() }
    }

    pub fn p(&self) -> &QPhi {
        &self.p
    }

    pub fn q(&self) -> &QPhi {
        &self.q
    }

    pub fn d(&self) -> &QPhi {
        &self.d
    }

    /// The value when it lies in the field itself.
    pub fn as_field(&self) -> Option<&QPhi> {
        self.q.is_zero().then_some(&self.p)
    }

    pub fn signum(&self) -> i8 {
        let (sp, sq) = (self.p.signum(), self.q.signum());
        if sq == 0 || sp == sq {
            return if sp == 0 { sq } else { sp };
        }
        if sp == 0 {
            return sq;
        }
        match self.p.square().cmp(&(self.q.square() * &self.d)) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0,
        }
    }

    // Rewrites both operands over a common radicand, if one exists.
    fn align(x: &Surd, y: &Surd) -> Option<(QPhi, QPhi, QPhi, QPhi, QPhi)> {
        if y.q.is_zero() {
            return Some((x.p.clone(), x.q.clone(), y.p.clone(), QPhi::zero(), x.d.clone()));
        }
        if x.q.is_zero() || x.d == y.d {
            return Some((x.p.clone(), x.q.clone(), y.p.clone(), y.q.clone(), y.d.clone()));
        }
        let r = y.d.checked_div(&x.d).ok()?.sqrt_exact()?;
        Some((x.p.clone(), x.q.clone(), y.p.clone(), &y.q * &r, x.d.clone()))
    }

    pub fn add(&self, rhs: &Surd) -> Option<Surd> {
        let (p1, q1, p2, q2, d) = Surd::align(self, rhs)?;
        Surd::new(p1 + p2, q1 + q2, d)
    }

    pub fn neg(&self) -> Surd {
        Surd { p: -&self.p, q: -&self.q, d: self.d.clone() }
    }

    pub fn sub(&self, rhs: &Surd) -> Option<Surd> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Surd) -> Option<Surd> {
        let (p1, q1, p2, q2, d) = Surd::align(self, rhs)?;
        let p = &p1 * &p2 + &q1 * &q2 * &d;
        let q = &p1 * &q2 + &q1 * &p2;
        Surd::new(p, q, d)
    }

    pub fn div(&self, rhs: &Surd) -> Option<Surd> {
        let (_, _, p2, q2, d) = Surd::align(self, rhs)?;
        let den = p2.square() - q2.square() * &d;
        let inv = den.inv().ok()?;
        let conj = Surd::new(&p2 * &inv, -(&q2 * &inv), d)?;
        self.mul(&conj)
    }

    /// Square root, kept exact only when the result needs at most one new
    /// radical over the field.
    pub fn sqrt(&self) -> Option<Surd> {
        let x = self.as_field()?;
        if x.is_negative() {
            return None;
        }
        match x.sqrt_exact() {
            Some(r) => Some(Surd::field(r)),
            None => Surd::new(QPhi::zero(), QPhi::one(), x.clone()),
        }
    }

    pub fn to_fixed(&self, digits: u32) -> Fixed {
        let p = self.p.to_fixed(digits);
        if self.q.is_zero() {
            return p;
        }
        let r = Radical::new(self.q.clone(), self.d.clone()).expect("radicand kept non-negative");
        p.add(&r.to_fixed(digits))
    }
}

/// A coordinate or coefficient: exact when the engine can keep it so, and
/// always shadowed by a fixed-point value computed along its own path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Num {
    exact: Option<Surd>,
    approx: Fixed,
}

impl Num {
    pub fn field(x: QPhi) -> Num {
        let approx = x.to_fixed(SHADOW_DIGITS);
        Num { exact: Some(Surd::field(x)), approx }
    }

    pub fn int(n: i64) -> Num {
        Num::field(QPhi::from_ints(n, 0))
    }

    pub fn exact(&self) -> Option<&Surd> {
        self.exact.as_ref()
    }

    pub fn approx(&self) -> &Fixed {
        &self.approx
    }

    pub fn to_f64(&self) -> f64 {
        self.approx.to_f64()
    }

    pub fn add(&self, rhs: &Num) -> Num {
        Num {
            exact: both(&self.exact, &rhs.exact).and_then(|(x, y)| x.add(y)),
            approx: self.approx.add(&rhs.approx),
        }
    }

    pub fn sub(&self, rhs: &Num) -> Num {
        Num {
            exact: both(&self.exact, &rhs.exact).and_then(|(x, y)| x.sub(y)),
            approx: self.approx.sub(&rhs.approx),
        }
    }

    pub fn mul(&self, rhs: &Num) -> Num {
        Num {
            exact: both(&self.exact, &rhs.exact).and_then(|(x, y)| x.mul(y)),
            approx: self.approx.mul(&rhs.approx),
        }
    }

    pub fn neg(&self) -> Num {
        Num { exact: self.exact.as_ref().map(Surd::neg), approx: self.approx.neg() }
    }

    pub fn div(&self, rhs: &Num) -> Result<Num, ConstructError> {
        if rhs.signum()? == 0 {
            return Err(ConstructError::Degenerate("division by zero".into()));
        }
        let approx = self.approx.div(&rhs.approx).ok_or_else(|| ConstructError::Degenerate("division by zero".into()))?;
        Ok(Num { exact: both(&self.exact, &rhs.exact).and_then(|(x, y)| x.div(y)), approx })
    }

    pub fn sqrt(&self) -> Result<Num, ConstructError> {
        if self.signum()? < 0 {
            return Err(ConstructError::NoIntersection("square root of a negative quantity".into()));
        }
        let approx = self.approx.abs().sqrt().expect("non-negative");
        Ok(Num { exact: self.exact.as_ref().and_then(Surd::sqrt), approx })
    }

    /// Exact sign when available; otherwise the shadow's sign, refused when
    /// the shadow is too close to zero to decide.
    pub fn signum(&self) -> Result<i8, ConstructError> {
        if let Some(x) = &self.exact {
            return Ok(x.signum());
        }
        if self.approx.abs().to_f64() <= SHADOW_TOL {
            return Err(ConstructError::Ambiguous(format!("sign of {} is below the approximation tolerance", self.approx.to_decimal(30))));
        }
        Ok(self.approx.signum())
    }

    pub fn cmp(&self, rhs: &Num) -> Result<Ordering, ConstructError> {
        Ok(self.sub(rhs).signum()?.cmp(&0))
    }
}

fn both<'a>(x: &'a Option<Surd>, y: &'a Option<Surd>) -> Option<(&'a Surd, &'a Surd)> {
    Some((x.as_ref()?, y.as_ref()?))
}
