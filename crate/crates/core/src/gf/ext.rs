use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use super::algo::{self, FieldElement};
use super::field::{ArithOp, Field, Fq};
use crate::error::{Error, Result};

/// Element `x + y·w` of GF(q²) = GF(q)(w), where w = √α.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fq2<'f> {
    pub x: Fq<'f>,
    pub y: Fq<'f>,
}

impl Field {
    /// w = √α.
    pub fn sqrt_alpha(&self) -> Fq2<'_> {
        Fq2::new(self.zero(), self.one())
    }

    /// All elements of GF(q²), ordered by (x, y).
    pub fn ext_elements(&self) -> impl Iterator<Item = Fq2<'_>> + '_ {
        self.elements()
            .flat_map(move |x| self.elements().map(move |y| Fq2::new(x, y)))
    }

    /// Text form `X+Y*w`; `X` alone and `Y*w` alone are also accepted.
    pub fn parse_fq2(&self, text: &str) -> Result<Fq2<'_>> {
        let text = text.trim();
        let bad = || Error::Parse(format!("bad GF(q²) element '{text}'"));
        let imag = |t: &str| -> Result<Fq<'_>> {
            let t = t.trim();
            let body = t.strip_suffix("*w").ok_or_else(bad)?;
            self.parse_fq(body)
        };
        if let Some((re, im)) = text.split_once('+') {
            Ok(Fq2::new(self.parse_fq(re)?, imag(im)?))
        } else if text.ends_with("*w") {
            Ok(Fq2::new(self.zero(), imag(text)?))
        } else {
            Ok(Fq2::from(self.parse_fq(text)?))
        }
    }
}

impl<'f> From<Fq<'f>> for Fq2<'f> {
    fn from(x: Fq<'f>) -> Self {
        Fq2::new(x, x.field().zero())
    }
}

impl<'f> Fq2<'f> {
    pub fn new(x: Fq<'f>, y: Fq<'f>) -> Self {
        Fq2 { x, y }
    }

    pub fn field(&self) -> &'f Field {
        self.x.field()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// True when the element lies in GF(q).
    pub fn is_base(&self) -> bool {
        self.y.is_zero()
    }

    /// The GF(q) component when `is_base()`.
    pub fn to_base(&self) -> Option<Fq<'f>> {
        self.is_base().then_some(self.x)
    }

    /// z^q. The Frobenius fixes GF(q) and sends w to -w.
    pub fn conj(self) -> Self {
        Fq2::new(self.x, -self.y)
    }

    /// z·z̄ = x² - α y².
    pub fn norm(self) -> Fq<'f> {
        let f = self.field();
        self.x.square() - f.alpha() * self.y.square()
    }

    /// z + z̄ = 2x.
    pub fn trace(self) -> Fq<'f> {
        self.x + self.x
    }

    pub fn square(self) -> Self {
        self * self
    }

    pub fn inv(self) -> Option<Self> {
        let n = self.norm().inv()?;
        let c = self.conj();
        Some(Fq2::new(c.x * n, c.y * n))
    }

    pub fn scale(self, k: Fq<'f>) -> Self {
        Fq2::new(self.x * k, self.y * k)
    }

    pub fn is_square(self) -> bool {
        algo::is_square(self)
    }

    pub fn sqrt(self) -> Option<Self> {
        algo::sqrt(self)
    }

    pub fn mult_order(self) -> Result<u64> {
        algo::mult_order(self)
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        self.try_arith(rhs, ArithOp::Div)
    }

    pub fn try_arith(self, rhs: Self, op: ArithOp) -> Result<Self> {
        if !std::ptr::eq(self.field(), rhs.field()) {
            return Err(Error::MixedFields);
        }
        Ok(match op {
            ArithOp::Add => self + rhs,
            ArithOp::Sub => self - rhs,
            ArithOp::Mul => self * rhs,
            ArithOp::Div => self * rhs.inv().ok_or(Error::DivisionByZero)?,
        })
    }
}

impl<'f> FieldElement for Fq2<'f> {
    fn is_zero(&self) -> bool {
        Fq2::is_zero(self)
    }

    fn one_like(&self) -> Self {
        Fq2::from(self.field().one())
    }

    fn group_order(&self) -> u64 {
        let q = self.field().q() as u64;
        q * q - 1
    }

    fn group_order_factors(&self) -> &[(u64, u32)] {
        self.x.field().ext_factors()
    }

    fn nonsquare_like(&self) -> Self {
        let f = self.field();
        let (x, y) = f.ext_nonsquare();
        Fq2::new(f.wrap(x), f.wrap(y))
    }
}

impl PartialOrd for Fq2<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fq2<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.x, self.y).cmp(&(other.x, other.y))
    }
}

impl<'f> Add for Fq2<'f> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fq2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<'f> Sub for Fq2<'f> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fq2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<'f> Neg for Fq2<'f> {
    type Output = Self;
    fn neg(self) -> Self {
        Fq2::new(-self.x, -self.y)
    }
}

impl<'f> Mul for Fq2<'f> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let alpha = self.field().alpha();
        Fq2::new(
            self.x * rhs.x + alpha * self.y * rhs.y,
            self.x * rhs.y + self.y * rhs.x,
        )
    }
}

impl<'f> Mul<Fq<'f>> for Fq2<'f> {
    type Output = Self;
    fn mul(self, rhs: Fq<'f>) -> Self {
        self.scale(rhs)
    }
}

impl<'f> Div for Fq2<'f> {
    type Output = Self;
    /// Panics on division by zero; see [`Fq2::checked_div`].
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in GF(q²)")
    }
}

impl<'f> Div<Fq<'f>> for Fq2<'f> {
    type Output = Self;
    fn div(self, rhs: Fq<'f>) -> Self {
        self.scale(rhs.inv().expect("division by zero in GF(q)"))
    }
}

impl AddAssign for Fq2<'_> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fq2<'_> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fq2<'_> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl fmt::Display for Fq2<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*w", self.x, self.y)
    }
}

impl fmt::Debug for Fq2<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq2({self})")
    }
}
