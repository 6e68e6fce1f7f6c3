//! Dense polynomials over GF(p), coefficients stored low degree first.
//!
//! Only what the field constructor needs: reduction, products modulo a
//! fixed polynomial, gcd, and the Rabin irreducibility test.

use super::algo::prime_factors;

pub(crate) fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn degree(v: &[u32]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

pub(crate) fn inv_mod_p(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod_p(a, (p - 2) as u64, p)
}

pub(crate) fn pow_mod_p(base: u32, mut e: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64;
    let mut b = (base % p) as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p64;
        }
        b = b * b % p64;
        e >>= 1;
    }
    acc as u32
}

/// Remainder of `a` modulo `f` (f nonzero).
pub(crate) fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let df = degree(f).expect("modulus must be nonzero");
    let lead_inv = inv_mod_p(f[df], p) as u64;
    let p64 = p as u64;
    let mut r: Vec<u32> = a.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < df {
            break;
        }
        let factor = r[dr] as u64 * lead_inv % p64;
        let shift = dr - df;
        for (i, &fc) in f[..=df].iter().enumerate() {
            let sub = factor * fc as u64 % p64;
            let cur = r[i + shift] as u64;
            r[i + shift] = ((cur + p64 - sub) % p64) as u32;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let mut v: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    trim(&mut v);
    v
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    rem(&mul(a, b, p), f, p)
}

pub(crate) fn pow_mod(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        e >>= 1;
    }
    rem(&acc, f, p)
}

fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut v: Vec<u32> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut v);
    v
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Rabin's test: a monic `f` of degree m is irreducible over GF(p) iff
/// x^(p^m) = x mod f and gcd(x^(p^(m/r)) - x, f) = 1 for every prime r | m.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(m) = degree(f) else { return false };
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    // frob[k] = x^(p^k) mod f
    let mut frob = vec![rem(&x, f, p)];
    for k in 1..=m {
        let prev = &frob[k - 1];
        frob.push(pow_mod(prev, p as u64, f, p));
    }
    if !sub(&frob[m], &frob[0], p).is_empty() {
        return false;
    }
    for (r, _) in prime_factors(m as u64) {
        let k = m / r as usize;
        let g = gcd(&sub(&frob[k], &x, p), f, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `m`,
/// comparing the non-leading coefficients low degree first.
pub fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let m = m as usize;
    let mut coeffs = vec![0u32; m];
    loop {
        let mut f = coeffs.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // odometer with coefficient 0 as the most significant digit
        let mut i = m;
        loop {
            if i == 0 {
                unreachable!("irreducible polynomials exist in every degree");
            }
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}
