use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use super::algo::{self, is_prime, prime_factors, FieldElement};
use super::poly;
use crate::error::{Error, Result};

/// Largest supported q. Log tables are O(q); the plane itself is O(q³).
pub const MAX_ORDER: u64 = 1 << 16;

/// Addition tables are only built up to this order (q² entries).
const ADD_TABLE_MAX: u32 = 729;

/// The tower GF(p) ⊂ GF(q) ⊂ GF(q²) with a fixed modulus and a fixed
/// nonsquare α of GF(q).
///
/// Elements of GF(q) are stored as a `u32` code whose natural order is the
/// canonical element order: the coefficient vector `(a0, a1, …, a_{m-1})`
/// compared lexicographically. For m = 1 the code is the residue itself.
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    alpha: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
    base_factors: Vec<(u64, u32)>,
    ext_factors: Vec<(u64, u32)>,
    ext_nonsquare: (u32, u32),
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("alpha", &self.alpha)
            .finish()
    }
}

impl Field {
    /// GF(p^m) with the default modulus and the default α.
    pub fn new(p: u32, m: u32) -> Result<Field> {
        Field::with_options(p, m, None, None)
    }

    /// `modulus`: monic, low degree first, length m + 1.
    /// `alpha`: coefficient vector `(a0, …, a_{m-1})` of a nonsquare.
    pub fn with_options(
        p: u32,
        m: u32,
        modulus: Option<Vec<u32>>,
        alpha: Option<Vec<u32>>,
    ) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::EvenCharacteristic(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q64 = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q64 > MAX_ORDER {
            return Err(Error::TooLarge(q64));
        }
        let q = q64 as u32;

        let modulus = match modulus {
            Some(f) => {
                let ok = f.len() == m as usize + 1
                    && f.last() == Some(&1)
                    && f.iter().all(|&c| c < p)
                    && poly::is_irreducible(&f, p);
                if !ok {
                    return Err(Error::ReducibleModulus);
                }
                f
            }
            None => poly::smallest_irreducible(p, m),
        };

        let base_factors = prime_factors(q64 - 1);
        let ext_factors = prime_factors(q64 * q64 - 1);

        let (exp, log) = log_tables(p, m, q, &modulus, &base_factors);
        let neg: Vec<u32> = (0..q).map(|c| negate_code(c, p, m)).collect();
        let add = (m > 1 && q <= ADD_TABLE_MAX).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_codes(a, b, p, m);
                }
            }
            t
        });

        let mut field = Field {
            p,
            m,
            q,
            modulus,
            alpha: 0,
            exp,
            log,
            neg,
            add,
            base_factors,
            ext_factors,
            ext_nonsquare: (0, 0),
        };

        field.alpha = match alpha {
            Some(coeffs) => {
                let a = field.from_coeffs(&coeffs)?;
                if a.is_zero() || algo::is_square(a) {
                    return Err(Error::AlphaIsSquare);
                }
                a.code
            }
            None => field
                .elements()
                .find(|e| !algo::is_square(*e))
                .expect("odd q has nonsquares")
                .code,
        };
        field.ext_nonsquare = {
            let f = &field;
            let z = f
                .ext_elements()
                .find(|z| !algo::is_square(*z))
                .expect("GF(q²) has nonsquares");
            (z.x.code, z.y.code)
        };
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic modulus, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn alpha(&self) -> Fq<'_> {
        self.wrap(self.alpha)
    }

    pub fn zero(&self) -> Fq<'_> {
        self.wrap(0)
    }

    pub fn one(&self) -> Fq<'_> {
        self.int(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn int(&self, n: i64) -> Fq<'_> {
        let a0 = n.rem_euclid(self.p as i64) as u32;
        self.wrap(a0 * self.p.pow(self.m - 1))
    }

    /// Element with the given canonical code (`0 <= code < q`).
    pub fn elem(&self, code: u32) -> Result<Fq<'_>> {
        if code >= self.q {
            return Err(Error::Parse(format!("element code {code} out of range")));
        }
        Ok(self.wrap(code))
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fq<'_>> {
        if coeffs.len() != self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Parse(format!(
                "expected {} coefficients in [0, {})",
                self.m, self.p
            )));
        }
        Ok(self.wrap(coeffs.iter().fold(0, |acc, &c| acc * self.p + c)))
    }

    /// All elements of GF(q) in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fq<'_>> + '_ {
        (0..self.q).map(move |c| self.wrap(c))
    }

    /// `-1` is a square in GF(q) iff q ≡ 1 mod 4.
    pub fn minus_one_is_square(&self) -> bool {
        self.q % 4 == 1
    }

    /// Parses the text form: a single integer for m = 1, otherwise
    /// `a0,a1,…,a_{m-1}`. A lone integer is accepted for any m and read in
    /// the prime subfield.
    pub fn parse_fq(&self, text: &str) -> Result<Fq<'_>> {
        let text = text.trim();
        let bad = || Error::Parse(format!("bad GF({}) element '{text}'", self.q));
        if !text.contains(',') {
            let n: i64 = text.parse().map_err(|_| bad())?;
            return Ok(self.int(n));
        }
        let coeffs = text
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        self.from_coeffs(&coeffs).map_err(|_| bad())
    }

    pub(crate) fn wrap(&self, code: u32) -> Fq<'_> {
        Fq { field: self, code }
    }

    pub(crate) fn ext_nonsquare(&self) -> (u32, u32) {
        self.ext_nonsquare
    }

    pub(crate) fn ext_factors(&self) -> &[(u64, u32)] {
        &self.ext_factors
    }

    fn coeffs_of(&self, code: u32) -> Vec<u32> {
        code_to_coeffs(code, self.p, self.m)
    }

    fn add_code(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if let Some(t) = &self.add {
            t[(a * self.q + b) as usize]
        } else {
            add_codes(a, b, self.p, self.m)
        }
    }

    fn mul_code(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }
}

fn code_to_coeffs(mut code: u32, p: u32, m: u32) -> Vec<u32> {
    let mut v = vec![0u32; m as usize];
    for slot in v.iter_mut().rev() {
        *slot = code % p;
        code /= p;
    }
    v
}

fn coeffs_to_code(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().fold(0, |acc, &c| acc * p + c)
}

fn add_codes(a: u32, b: u32, p: u32, m: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0u32;
    let mut w = 1u32;
    for _ in 0..m {
        let d = (a % p + b % p) % p;
        out += d * w;
        w *= p;
        a /= p;
        b /= p;
    }
    out
}

fn negate_code(a: u32, p: u32, m: u32) -> u32 {
    let mut a = a;
    let mut out = 0u32;
    let mut w = 1u32;
    for _ in 0..m {
        let d = (p - a % p) % p;
        out += d * w;
        w *= p;
        a /= p;
    }
    out
}

/// exp/log tables for a primitive element, chosen as the first element in
/// canonical order whose order is q - 1.
fn log_tables(
    p: u32,
    m: u32,
    q: u32,
    modulus: &[u32],
    factors: &[(u64, u32)],
) -> (Vec<u32>, Vec<u32>) {
    let n = (q - 1) as u64;
    let as_poly = |code: u32| {
        let mut c = code_to_coeffs(code, p, m);
        poly::trim(&mut c);
        c
    };
    let is_one = |v: &[u32]| v == [1];
    let generator = (1..q)
        .map(as_poly)
        .find(|g| {
            factors
                .iter()
                .all(|&(r, _)| !is_one(&poly::pow_mod(g, n / r, modulus, p)))
        })
        .expect("multiplicative group is cyclic");

    let mut exp = Vec::with_capacity(n as usize);
    let mut log = vec![0u32; q as usize];
    let mut cur = vec![1u32];
    for i in 0..n as u32 {
        let mut c = cur.clone();
        c.resize(m as usize, 0);
        let code = coeffs_to_code(&c, p);
        exp.push(code);
        log[code as usize] = i;
        cur = poly::mul_mod(&cur, &generator, modulus, p);
    }
    (exp, log)
}

/// Element of GF(q).
#[derive(Clone, Copy)]
pub struct Fq<'f> {
    field: &'f Field,
    code: u32,
}

/// Binary operation selector for [`Fq::try_arith`] / `Fq2::try_arith`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl<'f> Fq<'f> {
    pub fn field(&self) -> &'f Field {
        self.field
    }

    /// Canonical code; see [`Field`].
    pub fn code(&self) -> u32 {
        self.code
    }

    /// Coefficients `(a0, …, a_{m-1})` in the polynomial basis.
    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs_of(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn inv(self) -> Option<Fq<'f>> {
        if self.code == 0 {
            return None;
        }
        let n = self.field.q - 1;
        let l = self.field.log[self.code as usize];
        Some(self.field.wrap(self.field.exp[((n - l) % n) as usize]))
    }

    pub fn square(self) -> Fq<'f> {
        self * self
    }

    pub fn is_square(self) -> bool {
        algo::is_square(self)
    }

    /// Nonzero and a square.
    pub fn is_nonzero_square(self) -> bool {
        !self.is_zero() && self.is_square()
    }

    /// Canonical square root in GF(q), if any.
    pub fn sqrt(self) -> Option<Fq<'f>> {
        algo::sqrt(self)
    }

    /// Canonical square root in GF(q²); always exists.
    pub fn sqrt_ext(self) -> super::Fq2<'f> {
        super::Fq2::from(self)
            .sqrt()
            .expect("every element of GF(q) is a square in GF(q²)")
    }

    pub fn mult_order(self) -> Result<u64> {
        algo::mult_order(self)
    }

    pub fn checked_div(self, rhs: Fq<'f>) -> Result<Fq<'f>> {
        self.try_arith(rhs, ArithOp::Div)
    }

    /// Arithmetic with the error cases reported instead of panicking.
    pub fn try_arith(self, rhs: Fq<'f>, op: ArithOp) -> Result<Fq<'f>> {
        if !std::ptr::eq(self.field, rhs.field) {
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

#[inline]
fn same_field(a: &Field, b: &Field) {
    assert!(std::ptr::eq(a, b), "operands belong to different fields");
}

impl<'f> FieldElement for Fq<'f> {
    fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn one_like(&self) -> Self {
        self.field.one()
    }

    fn group_order(&self) -> u64 {
        (self.field.q - 1) as u64
    }

    fn group_order_factors(&self) -> &[(u64, u32)] {
        &self.field.base_factors
    }

    fn nonsquare_like(&self) -> Self {
        self.field.alpha()
    }

    fn pow(self, e: u64) -> Self {
        if self.code == 0 {
            return if e == 0 { self.field.one() } else { self };
        }
        let n = (self.field.q - 1) as u64;
        let l = self.field.log[self.code as usize] as u64;
        self.field.wrap(self.field.exp[((l * (e % n)) % n) as usize])
    }
}

impl PartialEq for Fq<'_> {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(std::ptr::eq(self.field, other.field));
        self.code == other.code
    }
}

impl Eq for Fq<'_> {}

impl Hash for Fq<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl PartialOrd for Fq<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fq<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.code.cmp(&other.code)
    }
}

impl<'f> Add for Fq<'f> {
    type Output = Fq<'f>;
    fn add(self, rhs: Self) -> Self {
        same_field(self.field, rhs.field);
        self.field.wrap(self.field.add_code(self.code, rhs.code))
    }
}

impl<'f> Sub for Fq<'f> {
    type Output = Fq<'f>;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<'f> Neg for Fq<'f> {
    type Output = Fq<'f>;
    fn neg(self) -> Self {
        self.field.wrap(self.field.neg[self.code as usize])
    }
}

impl<'f> Mul for Fq<'f> {
    type Output = Fq<'f>;
    fn mul(self, rhs: Self) -> Self {
        same_field(self.field, rhs.field);
        self.field.wrap(self.field.mul_code(self.code, rhs.code))
    }
}

impl<'f> Div for Fq<'f> {
    type Output = Fq<'f>;
    /// Panics on division by zero; see [`Fq::checked_div`].
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in GF(q)")
    }
}

impl AddAssign for Fq<'_> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fq<'_> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fq<'_> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl fmt::Display for Fq<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.m == 1 {
            write!(f, "{}", self.code)
        } else {
            let parts: Vec<String> = self.coeffs().iter().map(u32::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Fq<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Quadratic residues by enumeration, independent of the Euler path.
    fn residues_mod(p: u32) -> Vec<u32> {
        let mut r: Vec<u32> = (1..p).map(|x| x * x % p).collect();
        r.sort();
        r.dedup();
        r
    }

    #[test]
    fn default_alpha_is_smallest_nonsquare() {
        for (p, expected) in [(31u32, 3u32), (7, 3), (3, 2), (5, 2), (11, 2), (13, 2)] {
            let res = residues_mod(p);
            let brute = (1..p).find(|x| !res.contains(x)).unwrap();
            assert_eq!(brute, expected);
            let f = Field::new(p, 1).unwrap();
            assert_eq!(f.alpha().code(), expected, "p = {p}");
        }
        // 3^15 = -1 mod 31
        assert_eq!(poly::pow_mod_p(3, 15, 31), 30);
    }

    #[test]
    fn gf9_default_modulus() {
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.q(), 9);
        // enumerate monic quadratics (a0, a1) lexicographically, first rootless one
        let first = (0..3u32)
            .flat_map(|a0| (0..3u32).map(move |a1| (a0, a1)))
            .find(|&(a0, a1)| (0..3u32).all(|x| (x * x + a1 * x + a0) % 3 != 0))
            .unwrap();
        assert_eq!(f.modulus(), &[first.0, first.1, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(9, 1).unwrap_err(), Error::NotPrime(9));
        assert_eq!(Field::new(2, 3).unwrap_err(), Error::EvenCharacteristic(2));
        assert_eq!(
            Field::with_options(3, 2, Some(vec![2, 0, 1]), None).unwrap_err(),
            Error::ReducibleModulus
        );
        assert_eq!(
            Field::with_options(31, 1, None, Some(vec![2])).unwrap_err(),
            Error::AlphaIsSquare
        );
        assert!(Field::with_options(31, 1, None, Some(vec![30])).is_ok());
    }

    #[test]
    fn example_divisions_in_gf31() {
        let f = Field::new(31, 1).unwrap();
        assert_eq!(f.int(16) / f.int(19), f.int(9));
        assert_eq!(f.int(7) / f.int(28), f.int(8));
        assert_eq!(f.int(5) + f.zero(), f.int(5));
        assert_eq!(f.int(1).checked_div(f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_fields_rejected() {
        let f = Field::new(7, 1).unwrap();
        let g = Field::new(7, 1).unwrap();
        assert_eq!(
            f.int(1).try_arith(g.int(1), ArithOp::Add),
            Err(Error::MixedFields)
        );
    }

    #[test]
    fn squares_and_roots_gf31() {
        let f = Field::new(31, 1).unwrap();
        let res = residues_mod(31);
        assert_eq!(res.len(), 15);
        for x in 1..31 {
            assert_eq!(f.int(x as i64).is_square(), res.contains(&x));
        }
        assert!(f.int(2).is_square());
        assert!(!f.int(11).is_square());
        assert!(!f.int(-1).is_square());
        assert_eq!(f.int(10).sqrt(), Some(f.int(14)));
        assert_eq!(f.int(25).sqrt(), Some(f.int(5)));
        assert_eq!(f.int(2).sqrt(), Some(f.int(8)));
        assert_eq!(f.zero().sqrt(), Some(f.zero()));
        assert!(f.zero().is_square());
        assert_eq!(f.int(11).sqrt(), None);
    }

    #[test]
    fn orders_gf31() {
        let f = Field::new(31, 1).unwrap();
        assert_eq!(f.int(9).mult_order(), Ok(15));
        assert_eq!(f.int(8).mult_order(), Ok(5));
        assert_eq!(f.one().mult_order(), Ok(1));
        assert_eq!(f.zero().mult_order(), Err(Error::ZeroElement));
        // brute force for every element
        for x in 1..31u32 {
            let brute = (1..=30u64)
                .find(|&k| poly::pow_mod_p(x, k, 31) == 1)
                .unwrap();
            assert_eq!(f.int(x as i64).mult_order().unwrap(), brute);
        }
    }

    #[test]
    fn minus_one_square_iff_q_1_mod_4() {
        for (p, m) in [(3, 1), (5, 1), (7, 1), (3, 2), (3, 3), (13, 1)] {
            let f = Field::new(p, m).unwrap();
            assert_eq!(f.int(-1).is_square(), f.q() % 4 == 1);
        }
    }

    #[test]
    fn text_round_trip() {
        let f = Field::new(3, 3).unwrap();
        for e in f.elements() {
            assert_eq!(f.parse_fq(&e.to_string()).unwrap(), e);
        }
        assert_eq!(f.parse_fq("2").unwrap(), f.int(2));
        assert!(f.parse_fq("1,2").is_err());
        let g = Field::new(31, 1).unwrap();
        assert_eq!(g.parse_fq("-1").unwrap(), g.int(30));
    }

    #[test]
    fn nonprime_field_axioms_exhaustive_gf9() {
        let f = Field::new(3, 2).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                assert_eq!(a - b + b, a);
                if !b.is_zero() {
                    assert_eq!(a / b * b, a);
                }
                for c in f.elements() {
                    assert_eq!(a * (b + c), a * b + a * c);
                }
            }
        }
        // the prime subfield is closed
        assert_eq!(f.int(2) * f.int(2), f.int(1));
    }
}
