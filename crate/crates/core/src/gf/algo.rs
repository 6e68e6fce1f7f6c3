//! Group-theoretic algorithms shared by GF(q) and GF(q²).
//!
//! Both element types implement [`FieldElement`]; the Euler criterion,
//! Tonelli–Shanks and the order computation are written once against it.

use std::ops::{Mul, Neg};

use crate::error::{Error, Result};

/// Trial-division factorization into (prime, exponent) pairs, ascending.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [(n, 1)]
}

/// Splits `q` into `(p, m)` with `q = p^m`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match prime_factors(q).as_slice() {
        [(p, m)] => Some((*p, *m)),
        _ => None,
    }
}

/// The multiplicative structure of a finite field, as seen from one element.
pub trait FieldElement: Copy + Ord + Mul<Output = Self> + Neg<Output = Self> {
    fn is_zero(&self) -> bool;
    fn one_like(&self) -> Self;
    /// Order of the multiplicative group.
    fn group_order(&self) -> u64;
    /// Prime factorization of [`Self::group_order`].
    fn group_order_factors(&self) -> &[(u64, u32)];
    /// A fixed nonsquare of the same field.
    fn nonsquare_like(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(self, mut e: u64) -> Self {
        let mut acc = self.one_like();
        let mut b = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b;
            }
            b = b * b;
            e >>= 1;
        }
        acc
    }
}

/// Euler's criterion. Zero counts as a square.
pub fn is_square<E: FieldElement>(x: E) -> bool {
    x.is_zero() || x.pow(x.group_order() / 2).is_one()
}

/// Canonical square root: the smaller of {r, -r}. `None` for nonsquares.
pub fn sqrt<E: FieldElement>(x: E) -> Option<E> {
    if x.is_zero() {
        return Some(x);
    }
    if !is_square(x) {
        return None;
    }
    let n = x.group_order();
    let s = n.trailing_zeros();
    let t = n >> s;

    let mut c = x.nonsquare_like().pow(t);
    let mut v = x.pow(t);
    let mut r = x.pow((t + 1) / 2);
    let mut m = s;
    while !v.is_one() {
        // least i with v^(2^i) = 1
        let mut i = 0;
        let mut probe = v;
        while !probe.is_one() {
            probe = probe * probe;
            i += 1;
        }
        debug_assert!(i < m);
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = b * b;
        }
        r = r * b;
        c = b * b;
        v = v * c;
        m = i;
    }
    debug_assert!(r * r == x);
    Some(r.min(-r))
}

/// Least k >= 1 with x^k = 1, found by stripping prime factors from the
/// group order.
pub fn mult_order<E: FieldElement>(x: E) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut k = x.group_order();
    for &(prime, exp) in x.group_order_factors() {
        for _ in 0..exp {
            if x.pow(k / prime).is_one() {
                k /= prime;
            } else {
                break;
            }
        }
    }
    Ok(k)
}
