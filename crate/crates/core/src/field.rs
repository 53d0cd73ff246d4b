//! Finite fields F_{p^e} with a fixed generator and flat discrete-log tables.
//!
//! Elements are encoded as integers in [0, q) whose base-p digits are the
//! polynomial coefficients, constant term first (least significant).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{factorize, is_prime, pow_mod};
use crate::error::{Error, Result};
use crate::padic::PadicInt;

/// Element encoding in [0, q).
pub type FqElem = u64;

pub const DEFAULT_TABLE_CAP: u64 = 1 << 20;
const NONE: u32 = u32::MAX;

#[derive(Clone)]
pub struct FieldCtx {
    p: u64,
    e: u32,
    q: u64,
    modulus: Vec<u64>,
    generator: FqElem,
    dlog: Vec<u32>,
    exp: Vec<u32>,
    one_minus: Vec<u32>,
    factorization: Vec<(u64, u32)>,
    traces: OnceLock<Vec<u32>>,
    jacobi: Arc<Mutex<HashMap<(u64, u64), Arc<Vec<i64>>>>>,
}

/// Entries kept in the Jacobi-count memo before it is flushed.
const JACOBI_MEMO_CAP: usize = 1 << 24;

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus && self.generator == other.generator
    }
}
impl Eq for FieldCtx {}

// Dense polynomials over F_p, constant term first, no trailing zeros.
fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut r: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut r);
    r
}

fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = crate::arith::inv_mod(f[df], p).expect("nonzero leading coefficient");
    while r.len() > df {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        let shift = top - df;
        for (i, &fc) in f.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * fc % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    poly_rem(&r, f, p)
}

fn poly_powmod(a: &[u64], mut k: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut base = poly_rem(a, f, p);
    let mut r = vec![1u64];
    while k > 0 {
        if k & 1 == 1 {
            r = poly_mulmod(&r, &base, f, p);
        }
        base = poly_mulmod(&base, &base, f, p);
        k >>= 1;
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Distinct-degree irreducibility test for a monic polynomial over F_p.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    if e == 0 {
        return false;
    }
    if e == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=e / 2 {
        h = poly_powmod(&h, p, f, p);
        let g = poly_gcd(f, &poly_sub(&h, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn digits(mut a: u64, p: u64, e: u32) -> Vec<u64> {
    let mut d = Vec::with_capacity(e as usize);
    for _ in 0..e {
        d.push(a % p);
        a /= p;
    }
    d
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl FieldCtx {
    /// Builds F_{p^e}. Without a modulus the smallest irreducible by encoding is used.
    pub fn new(p: u64, e: u32, modulus: Option<&[u64]>) -> Result<Self> {
        Self::with_cap(p, e, modulus, DEFAULT_TABLE_CAP)
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    pub fn with_cap(p: u64, e: u32, modulus: Option<&[u64]>, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if e == 0 {
            return Err(Error::BadModulus(e));
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= cap)
            .ok_or(Error::FieldTooLarge { p, e, cap })?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 || m[e as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus(e));
                }
                if !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                m.to_vec()
            }
            None => smallest_irreducible(p, e),
        };
        let factorization = factorize(q - 1);
        let mut ctx = FieldCtx {
            p,
            e,
            q,
            modulus,
            generator: 0,
            dlog: Vec::new(),
            exp: Vec::new(),
            one_minus: Vec::new(),
            factorization,
            traces: OnceLock::new(),
            jacobi: Arc::default(),
        };
        ctx.generator = (1..q)
            .find(|&g| ctx.is_generator_slow(g))
            .ok_or_else(|| Error::Internal("no generator found".into()))?;
        ctx.build_tables();
        Ok(ctx)
    }

    fn mul_slow(&self, a: FqElem, b: FqElem) -> FqElem {
        let r = poly_mulmod(
            &digits(a, self.p, self.e),
            &digits(b, self.p, self.e),
            &self.modulus,
            self.p,
        );
        undigits(&r, self.p)
    }

    fn pow_slow(&self, a: FqElem, k: u64) -> FqElem {
        let r = poly_powmod(&digits(a, self.p, self.e), k, &self.modulus, self.p);
        undigits(&r, self.p)
    }

    fn is_generator_slow(&self, g: FqElem) -> bool {
        let n = self.q - 1;
        if self.pow_slow(g, n) != 1 {
            return false;
        }
        self.factorization
            .iter()
            .all(|&(l, _)| self.pow_slow(g, n / l) != 1)
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        self.dlog = vec![NONE; self.q as usize];
        self.exp = vec![0; n];
        let mut x: FqElem = 1;
        for t in 0..n {
            self.exp[t] = x as u32;
            self.dlog[x as usize] = t as u32;
            x = self.mul_slow(x, self.generator);
        }
        let mut om = vec![NONE; n];
        for t in 0..n {
            let d = self.sub(1, self.exp[t] as u64);
            om[t] = self.dlog[d as usize];
        }
        self.one_minus = om;
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// q − 1, the order of the multiplicative group.
    pub fn order(&self) -> u64 {
        self.q - 1
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    pub fn generator(&self) -> FqElem {
        self.generator
    }
    pub fn factorization(&self) -> &[(u64, u32)] {
        &self.factorization
    }

    /// Exponent of x against the generator.
    pub fn dlog(&self, x: FqElem) -> Result<u64> {
        match self.dlog.get(x as usize) {
            Some(&d) if d != NONE => Ok(d as u64),
            Some(_) => Err(Error::ZeroArgument),
            None => Err(Error::Invalid(format!("{x} is not an element of F_{}", self.q))),
        }
    }

    /// Exponent of x, or None for x = 0.
    #[inline]
    pub fn log(&self, x: FqElem) -> Option<u64> {
        let d = self.dlog[x as usize];
        (d != NONE).then_some(d as u64)
    }

    /// generator^t.
    #[inline]
    pub fn exp(&self, t: u64) -> FqElem {
        self.exp[(t % (self.q - 1)) as usize] as u64
    }

    /// dlog(1 − generator^t), or None when generator^t = 1.
    #[inline]
    pub fn log_one_minus(&self, t: u64) -> Option<u64> {
        let d = self.one_minus[(t % (self.q - 1)) as usize];
        (d != NONE).then_some(d as u64)
    }

    /// Exponent of −1.
    pub fn log_minus_one(&self) -> u64 {
        (self.q - 1) / 2
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, a: i64) -> FqElem {
        a.rem_euclid(self.p as i64) as u64
    }

    /// Image of a rational a/b in the prime subfield.
    pub fn from_ratio(&self, a: i64, b: i64) -> Result<FqElem> {
        let b = self.from_int(b);
        if b == 0 {
            return Err(Error::ZeroArgument);
        }
        let bi = crate::arith::inv_mod(b, self.p).expect("p prime");
        Ok(self.from_int(a) * bi % self.p)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        0..self.q
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b, mut r, mut pw) = (a, b, 0, 1);
        for _ in 0..self.e {
            r += ((a % self.p + b % self.p) % self.p) * pw;
            a /= self.p;
            b /= self.p;
            pw *= self.p;
        }
        r
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.e == 1 {
            return (self.p - a) % self.p;
        }
        let (mut a, mut r, mut pw) = (a, 0, 1);
        for _ in 0..self.e {
            r += ((self.p - a % self.p) % self.p) * pw;
            a /= self.p;
            pw *= self.p;
        }
        r
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        match (self.log(a), self.log(b)) {
            (Some(x), Some(y)) => self.exp(x + y),
            _ => 0,
        }
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        let d = self.dlog(a)?;
        Ok(self.exp(self.q - 1 - d))
    }

    pub fn pow(&self, a: FqElem, k: u64) -> FqElem {
        match self.log(a) {
            Some(x) => self.exp(((x as u128 * k as u128) % (self.q as u128 - 1)) as u64),
            None if k == 0 => 1,
            None => 0,
        }
    }

    pub fn frobenius(&self, a: FqElem) -> FqElem {
        self.pow(a, self.p)
    }

    /// (trace, norm) down to F_p; both are returned as prime-field encodings.
    pub fn trace_and_norm(&self, x: FqElem) -> (u64, u64) {
        let mut t = 0;
        let mut n = 1;
        let mut y = x;
        for _ in 0..self.e {
            t = self.add(t, y);
            n = self.mul(n, y);
            y = self.frobenius(y);
        }
        (t, n)
    }

    pub fn trace(&self, x: FqElem) -> u64 {
        self.trace_and_norm(x).0
    }

    pub fn norm(&self, x: FqElem) -> u64 {
        self.trace_and_norm(x).1
    }

    /// Tr(generator^t) for t in [0, q−2], as prime-field values.
    pub fn trace_table(&self) -> &[u32] {
        self.traces
            .get_or_init(|| (0..self.q - 1).map(|t| self.trace(self.exp(t)) as u32).collect())
    }

    /// c[t] = #{x ∉ {0, 1} : a·dlog(x) + b·dlog(1 − x) ≡ t mod q−1}.
    ///
    /// These are the coefficient vectors of Jacobi sums; results are memoized per field.
    pub fn jacobi_counts(&self, a: u64, b: u64) -> Arc<Vec<i64>> {
        let n = self.q - 1;
        let key = (a % n, b % n);
        if let Some(v) = self.jacobi.lock().unwrap().get(&key) {
            return v.clone();
        }
        let mut c = vec![0i64; n as usize];
        for t in 1..n {
            let s = self.one_minus[t as usize] as u64;
            c[((key.0 * t + key.1 * s) % n) as usize] += 1;
        }
        let c = Arc::new(c);
        let mut memo = self.jacobi.lock().unwrap();
        if memo.len() * n as usize > JACOBI_MEMO_CAP {
            memo.clear();
        }
        memo.insert(key, c.clone());
        c
    }

    /// True when `g^(q−1) = 1` and `g^((q−1)/l) ≠ 1` for every prime l | q−1.
    pub fn is_generator(&self, g: FqElem) -> bool {
        g != 0 && self.is_generator_slow(g)
    }
}

fn smallest_irreducible(p: u64, e: u32) -> Vec<u64> {
    if e == 1 {
        return vec![0, 1];
    }
    let span = p.pow(e);
    for enc in 0..span {
        let mut f = digits(enc, p, e);
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Teichmüller lift of x into Z/p^r, with φ(0) = 0.
pub fn teichmuller(x: i64, p: u64, r: u32) -> PadicInt {
    let m = p.pow(r);
    let mut y = x.rem_euclid(m as i64) as u64;
    if y % p == 0 {
        return PadicInt::zero(p, r);
    }
    loop {
        let z = pow_mod(y, p, m);
        if z == y {
            return PadicInt::from_residue(y, p, r);
        }
        y = z;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_by_powering(g: u64, p: u64) -> u64 {
        let mut x = g % p;
        let mut k = 1;
        while x != 1 {
            x = x * g % p;
            k += 1;
        }
        k
    }

    #[test]
    fn small_prime_generators() {
        assert_eq!(FieldCtx::prime(5).unwrap().generator(), 2);
        assert_eq!(FieldCtx::prime(7).unwrap().generator(), 3);
        assert_eq!(order_by_powering(2, 5), 4);
        assert_eq!(order_by_powering(3, 7), 6);
    }

    #[test]
    fn dlog_examples() {
        let f = FieldCtx::prime(7).unwrap();
        assert_eq!(f.dlog(2).unwrap(), 2);
        assert_eq!(f.dlog(1).unwrap(), 0);
        assert_eq!(f.dlog(3).unwrap(), 1);
        assert_eq!(f.dlog(0), Err(Error::ZeroArgument));
    }

    #[test]
    fn f25_modulus() {
        // 3 is a non-square mod 5, so x^2 + 2 has no root.
        assert!((0..5u64).all(|x| (x * x + 2) % 5 != 0));
        let f = FieldCtx::new(5, 2, Some(&[2, 0, 1])).unwrap();
        assert_eq!(f.q(), 25);
        let default = FieldCtx::new(5, 2, None).unwrap();
        assert_eq!(default.modulus(), &[2, 0, 1]);
        // the class of x has trace 0 because the x-coefficient of the modulus is 0
        assert_eq!(f.trace(5), 0);
        assert_eq!(f.trace_and_norm(0), (0, 0));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(FieldCtx::prime(9).unwrap_err(), Error::NotPrime(9));
        assert_eq!(FieldCtx::prime(2).unwrap_err(), Error::EvenCharacteristic);
        assert_eq!(
            FieldCtx::new(5, 2, Some(&[1, 0, 1])).unwrap_err(),
            Error::ReducibleModulus(5)
        );
        assert!(matches!(
            FieldCtx::new(3, 20, None),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn tables_are_consistent() {
        for (p, e) in [(3, 1), (3, 3), (5, 2), (7, 2), (13, 1), (3, 4)] {
            let f = FieldCtx::new(p, e, None).unwrap();
            for t in 0..f.order() {
                assert_eq!(f.dlog(f.exp(t)).unwrap(), t);
                let om = f.log_one_minus(t);
                let direct = f.log(f.sub(1, f.exp(t)));
                assert_eq!(om, direct);
            }
            for x in f.elements() {
                let mut y = x;
                for _ in 0..e {
                    y = f.frobenius(y);
                }
                assert_eq!(y, x);
                let (t, n) = f.trace_and_norm(x);
                assert!(t < p && n < p);
            }
        }
    }

    #[test]
    fn teichmuller_examples() {
        assert_eq!(teichmuller(1, 7, 3).residue(), 1);
        assert_eq!(teichmuller(2, 5, 2).residue(), 7);
        assert_eq!(pow_mod(7, 4, 25), 1);
        assert_eq!(teichmuller(0, 5, 3).residue(), 0);
    }
}
