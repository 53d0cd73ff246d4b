//! Exact elements of Z[ζ_m] and of Z[ζ_m] divided by positive integers.
//!
//! A `CycInt` stores Σ c_t ζ_m^t modulo x^m − 1; two values are equal when
//! their difference is divisible by the cyclotomic polynomial Φ_m.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::{divisors, factorize, gcd, lcm};
use crate::error::{Error, Result};
use crate::field::{teichmuller, FieldCtx};
use crate::padic::PadicInt;

struct Cyclo {
    big: Vec<BigInt>,
    small: Option<Vec<i128>>,
}

fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, k)| k > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn compute_cyclotomic(m: u64) -> Vec<BigInt> {
    // Φ_m = Π_{d | m} (x^d − 1)^{μ(m/d)}: multiply the μ = 1 factors, then divide out the rest.
    let ds = divisors(m);
    let mut poly: Vec<BigInt> = vec![BigInt::one()];
    for &d in &ds {
        if mobius(m / d) == 1 {
            let d = d as usize;
            let mut next = vec![BigInt::zero(); poly.len() + d];
            for (i, c) in poly.iter().enumerate() {
                next[i + d] += c;
                next[i] -= c;
            }
            poly = next;
        }
    }
    for &d in &ds {
        if mobius(m / d) == -1 {
            let d = d as usize;
            let n = poly.len() - d;
            let mut q = vec![BigInt::zero(); n];
            for i in 0..n {
                let prev = if i >= d { q[i - d].clone() } else { BigInt::zero() };
                q[i] = prev - &poly[i];
            }
            poly = q;
        }
    }
    poly
}

fn cyclotomic(m: u64) -> Arc<Cyclo> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Cyclo>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(c) = cache.read().unwrap().get(&m) {
        return c.clone();
    }
    let big = compute_cyclotomic(m);
    let small = big.iter().map(|c| c.to_i128()).collect::<Option<Vec<_>>>();
    let entry = Arc::new(Cyclo { big, small });
    cache.write().unwrap().entry(m).or_insert(entry).clone()
}

/// Coefficients of Φ_m, constant term first.
pub fn cyclotomic_poly(m: u64) -> Vec<BigInt> {
    cyclotomic(m).big.clone()
}

#[derive(Clone)]
pub struct CycInt {
    m: u64,
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt(m={}, {:?})", self.m, self.reduced())
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let red = self.reduced();
        let mut parts = Vec::new();
        for (t, c) in red.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match t {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{t}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
        }
    }
}

fn fits(a: &[BigInt]) -> Option<(Vec<i128>, u32)> {
    let mut bits = 0;
    let mut out = Vec::with_capacity(a.len());
    for c in a {
        let b = c.bits() as u32;
        if b > 120 {
            return None;
        }
        bits = bits.max(b);
        out.push(c.to_i128()?);
    }
    Some((out, bits))
}

impl CycInt {
    /// Σ coeffs[t] ζ_m^t; indices beyond m wrap around.
    pub fn new(m: u64, coeffs: Vec<BigInt>) -> Self {
        assert!(m >= 1);
        let mut c = vec![BigInt::zero(); m as usize];
        for (t, v) in coeffs.into_iter().enumerate() {
            c[t % m as usize] += v;
        }
        CycInt { m, coeffs: c }
    }

    pub fn from_i64s(m: u64, coeffs: &[i64]) -> Self {
        Self::new(m, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(m: u64) -> Self {
        CycInt { m, coeffs: vec![BigInt::zero(); m as usize] }
    }

    pub fn one(m: u64) -> Self {
        Self::from_int(m, BigInt::one())
    }

    pub fn from_int(m: u64, c: BigInt) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = c;
        z
    }

    /// ζ_m^t.
    pub fn zeta(m: u64, t: i64) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[t.rem_euclid(m as i64) as usize] = BigInt::one();
        z
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Raw coefficients modulo x^m − 1.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient vector of length φ(m) after reduction modulo Φ_m.
    pub fn reduced(&self) -> Vec<BigInt> {
        let phi = cyclotomic(self.m);
        let deg = phi.big.len() - 1;
        if let (Some(small), Some((mut a, bits))) = (&phi.small, fits(&self.coeffs)) {
            let pbits = small.iter().map(|c| 128 - c.unsigned_abs().leading_zeros()).max().unwrap_or(0);
            // every step adds at most |c|·|φ_j|; give up on the fast path if it could overflow
            let steps = (a.len().saturating_sub(deg)) as u32;
            if bits + pbits * steps.min(8) + steps.min(64) < 120 || steps == 0 {
                if let Some(v) = reduce_small(&mut a, small, deg) {
                    return v;
                }
            }
        }
        let mut a = self.coeffs.clone();
        for i in (deg..a.len()).rev() {
            if a[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut a[i]);
            for (j, pj) in phi.big.iter().enumerate().take(deg) {
                if !pj.is_zero() {
                    a[i - deg + j] -= &c * pj;
                }
            }
        }
        a.truncate(deg);
        a
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero()) || self.reduced().iter().all(|c| c.is_zero())
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        let r = self.reduced();
        if r.iter().skip(1).all(|c| c.is_zero()) {
            Some(r.first().cloned().unwrap_or_default())
        } else {
            None
        }
    }

    /// Content of the reduced coefficient vector.
    pub fn content(&self) -> BigInt {
        self.reduced().iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Re-express in Z[ζ_n] for a multiple n of m.
    pub fn lift(&self, n: u64) -> Self {
        assert!(n % self.m == 0, "cannot lift from {} to {}", self.m, n);
        if n == self.m {
            return self.clone();
        }
        let s = (n / self.m) as usize;
        let mut c = vec![BigInt::zero(); n as usize];
        for (t, v) in self.coeffs.iter().enumerate() {
            c[t * s] = v.clone();
        }
        CycInt { m: n, coeffs: c }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.m == b.m {
            return (a.clone(), b.clone());
        }
        let l = lcm(a.m, b.m);
        (a.lift(l), b.lift(l))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.m == o.m {
            let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| x + y).collect();
            return CycInt { m: self.m, coeffs };
        }
        let (a, b) = Self::common(self, o);
        a.add(&b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        CycInt { m: self.m, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycInt { m: self.m, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn scale_i(&self, k: i64) -> Self {
        self.scale(&BigInt::from(k))
    }

    /// Exact division of every coefficient by k; None if some coefficient is not divisible.
    pub fn div_exact(&self, k: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(CycInt { m: self.m, coeffs: out })
    }

    /// Multiplication by ζ_m^t.
    pub fn shift(&self, t: i64) -> Self {
        let m = self.m as usize;
        let t = t.rem_euclid(self.m as i64) as usize;
        let mut c = vec![BigInt::zero(); m];
        for (i, v) in self.coeffs.iter().enumerate() {
            c[(i + t) % m] = v.clone();
        }
        CycInt { m: self.m, coeffs: c }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.m != o.m {
            let (a, b) = Self::common(self, o);
            return a.mul(&b);
        }
        let m = self.m as usize;
        let nz_a: Vec<usize> = (0..m).filter(|&i| !self.coeffs[i].is_zero()).collect();
        let nz_b: Vec<usize> = (0..m).filter(|&i| !o.coeffs[i].is_zero()).collect();
        if let (Some((a, ba)), Some((b, bb))) = (fits(&self.coeffs), fits(&o.coeffs)) {
            let terms = nz_a.len().min(nz_b.len()).max(1);
            let tb = 64 - (terms as u64).leading_zeros();
            if ba + bb + tb < 126 {
                let mut acc = vec![0i128; m];
                for &i in &nz_a {
                    let x = a[i];
                    for &j in &nz_b {
                        let k = if i + j >= m { i + j - m } else { i + j };
                        acc[k] += x * b[j];
                    }
                }
                return CycInt { m: self.m, coeffs: acc.into_iter().map(BigInt::from).collect() };
            }
        }
        let mut acc = vec![BigInt::zero(); m];
        for &i in &nz_a {
            for &j in &nz_b {
                let k = (i + j) % m;
                acc[k] += &self.coeffs[i] * &o.coeffs[j];
            }
        }
        CycInt { m: self.m, coeffs: acc }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut r = Self::one(self.m);
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// Galois conjugation σ_t: ζ ↦ ζ^t.
    pub fn conj(&self, t: i64) -> Result<Self> {
        let m = self.m;
        let tt = t.rem_euclid(m as i64) as u64;
        if gcd(tt, m) != 1 && m > 1 {
            return Err(Error::NotCoprime { t, m });
        }
        let mut c = vec![BigInt::zero(); m as usize];
        for (s, v) in self.coeffs.iter().enumerate() {
            c[((s as u64 * tt) % m) as usize] += v;
        }
        Ok(CycInt { m, coeffs: c })
    }

    /// Complex conjugate.
    pub fn bar(&self) -> Self {
        self.conj(-1).expect("−1 is always coprime")
    }

    /// Complex value (diagnostics only).
    pub fn to_complex(&self) -> Complex64 {
        let mut z = Complex64::new(0.0, 0.0);
        for (t, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ang = 2.0 * std::f64::consts::PI * t as f64 / self.m as f64;
            z += Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), ang);
        }
        z
    }

    /// Image in Z/p^r under ζ_m ↦ φ(g)^{(p−1)/m}, g the generator of `ctx` (e = 1).
    pub fn embed_padic(&self, p: u64, r: u32, ctx: &FieldCtx) -> Result<PadicInt> {
        if ctx.e() != 1 || ctx.p() != p {
            return Err(Error::Invalid("embedding needs the prime field F_p".into()));
        }
        if (p - 1) % self.m != 0 {
            return Err(Error::NotDivisible { n: self.m, m: p - 1 });
        }
        let z = teichmuller(ctx.generator() as i64, p, r).pow((p - 1) / self.m);
        let mut acc = PadicInt::zero(p, r);
        let mut zt = PadicInt::one(p, r);
        for c in &self.coeffs {
            if !c.is_zero() {
                acc = acc + PadicInt::from_bigint(c, p, r) * zt;
            }
            zt = zt * z;
        }
        Ok(acc)
    }

    /// JSON form {m, coeffs} with Φ_m-reduced coefficients.
    pub fn to_json(&self) -> Value {
        json!({ "m": self.m, "coeffs": self.reduced().iter().map(big_json).collect::<Vec<_>>() })
    }
}

fn reduce_small(a: &mut [i128], phi: &[i128], deg: usize) -> Option<Vec<BigInt>> {
    for i in (deg..a.len()).rev() {
        let c = a[i];
        if c == 0 {
            continue;
        }
        a[i] = 0;
        for j in 0..deg {
            let pj = phi[j];
            if pj != 0 {
                let t = c.checked_mul(pj)?;
                a[i - deg + j] = a[i - deg + j].checked_sub(t)?;
            }
        }
    }
    Some(a[..deg].iter().map(|&x| BigInt::from(x)).collect())
}

/// Integers as JSON numbers when they fit, strings otherwise.
pub fn big_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}
impl Eq for CycInt {}

/// num / den with den > 0 and gcd(den, content(num)) = 1.
#[derive(Clone)]
pub struct CycRat {
    num: CycInt,
    den: BigInt,
}

impl fmt::Debug for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / {}", self.num, self.den)
    }
}

impl fmt::Display for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / {}", self.num, self.den)
        }
    }
}

impl CycRat {
    pub fn new(num: CycInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        CycRat { num, den }.normalize()
    }

    pub fn from_int(x: CycInt) -> Self {
        CycRat { num: x, den: BigInt::one() }.normalize()
    }

    pub fn zero(m: u64) -> Self {
        Self::from_int(CycInt::zero(m))
    }

    /// Canonical form: Φ_m-reduced numerator, positive denominator, no common content.
    pub fn normalize(self) -> Self {
        let m = self.num.m;
        let mut red = self.num.reduced();
        let mut den = self.den;
        if den.is_negative() {
            den = -den;
            red.iter_mut().for_each(|c| *c = -&*c);
        }
        let g = red.iter().fold(den.clone(), |g, c| g.gcd(c));
        if !g.is_one() && !g.is_zero() {
            red.iter_mut().for_each(|c| *c /= &g);
            den /= &g;
        }
        if red.iter().all(|c| c.is_zero()) {
            den = BigInt::one();
        }
        CycRat { num: CycInt::new(m, red), den }
    }

    pub fn num(&self) -> &CycInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn m(&self) -> u64 {
        self.num.m
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The numerator when the value is a cyclotomic integer.
    pub fn as_cycint(&self) -> Option<CycInt> {
        self.is_integral().then(|| self.num.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        let num = self.num.scale(&o.den).add(&o.num.scale(&self.den));
        CycRat::new(num, &self.den * &o.den)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        CycRat { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        CycRat::new(self.num.mul(&o.num), &self.den * &o.den)
    }

    pub fn mul_int(&self, x: &CycInt) -> Self {
        CycRat::new(self.num.mul(x), self.den.clone())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycRat::new(self.num.scale(k), self.den.clone())
    }

    pub fn div_int(&self, k: &BigInt) -> Self {
        CycRat::new(self.num.clone(), &self.den * k)
    }

    pub fn pow(&self, k: u32) -> Self {
        CycRat::new(self.num.pow(k), self.den.pow(k))
    }

    pub fn conj(&self, t: i64) -> Result<Self> {
        Ok(CycRat::new(self.num.conj(t)?, self.den.clone()))
    }

    pub fn to_complex(&self) -> Complex64 {
        self.num.to_complex() / self.den.to_f64().unwrap_or(f64::NAN)
    }

    /// Teichmüller embedding into Z/p^r; a p-power in the denominator must cancel.
    pub fn embed_padic(&self, p: u64, r: u32, ctx: &FieldCtx) -> Result<PadicInt> {
        let bp = BigInt::from(p);
        let mut v = 0u32;
        let mut unit = self.den.clone();
        while unit.mod_floor(&bp).is_zero() {
            unit /= &bp;
            v += 1;
        }
        let e = self.num.embed_padic(p, r + v, ctx)?;
        if e.valuation() < v {
            return Err(Error::NegativeValuation(format!("{self} at p = {p}")));
        }
        let shifted = PadicInt::from_residue(e.residue() / p.pow(v), p, r);
        let ui = PadicInt::from_bigint(&unit, p, r).inv()?;
        Ok(shifted * ui)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.num.m,
            "coeffs": self.num.reduced().iter().map(big_json).collect::<Vec<_>>(),
            "den": big_json(&self.den),
        })
    }
}

impl PartialEq for CycRat {
    fn eq(&self, other: &Self) -> bool {
        self.num.scale(&other.den) == other.num.scale(&self.den)
    }
}
impl Eq for CycRat {}

impl From<CycInt> for CycRat {
    fn from(x: CycInt) -> Self {
        CycRat::from_int(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let b = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        assert_eq!(cyclotomic_poly(1), b(&[-1, 1]));
        assert_eq!(cyclotomic_poly(6), b(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), b(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(15), b(&[1, -1, 0, 1, -1, 1, 0, -1, 1]));
        // Φ_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_poly(105).iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn basic_relations() {
        let z6 = CycInt::zeta(6, 1);
        assert_eq!(CycInt::zeta(6, 2).add(&CycInt::one(6)), z6);
        for m in [1u64, 2, 5, 12] {
            assert_eq!(CycInt::zeta(m, 1).mul(&CycInt::zeta(m, m as i64 - 1)), CycInt::one(m));
        }
        let a = CycInt::one(3).add(&CycInt::zeta(3, 1));
        let b = CycInt::one(3).add(&CycInt::zeta(3, 2));
        assert_eq!(a.mul(&b), CycInt::one(3));
    }

    #[test]
    fn conjugation() {
        let x = CycInt::from_i64s(12, &[1, 2, 0, 5, 0, 7]);
        assert_eq!(x.conj(1).unwrap(), x);
        assert_eq!(x.conj(5).unwrap().conj(7).unwrap(), x.conj(35 % 12).unwrap());
        assert!(matches!(x.conj(2), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn mixed_orders_lift() {
        let a = CycInt::zeta(4, 1);
        let b = CycInt::zeta(6, 1);
        let c = a.mul(&b);
        assert_eq!(c.m(), 12);
        assert_eq!(c, CycInt::zeta(12, 5));
        assert_eq!(CycInt::zeta(2, 1), CycInt::from_int(7, BigInt::from(-1)));
    }

    #[test]
    fn complex_values() {
        let z = CycInt::zeta(3, 1).to_complex();
        assert!((z.re + 0.5).abs() < 1e-12 && (z.im - 3f64.sqrt() / 2.0).abs() < 1e-12);
        let s = CycInt::from_i64s(3, &[1, 1, 1]);
        assert!(s.to_complex().norm() < 1e-12);
        assert!(s.is_zero());
    }

    #[test]
    fn embedding_examples() {
        let f = FieldCtx::prime(13).unwrap();
        assert_eq!(f.generator(), 2);
        let i = CycInt::zeta(4, 1).embed_padic(13, 1, &f).unwrap();
        assert_eq!(i.residue(), 8);
        assert_eq!((i * i).residue(), 12);
        let n = CycInt::from_int(1, BigInt::from(-3)).embed_padic(13, 2, &f).unwrap();
        assert_eq!(n.residue(), 169 - 3);
    }

    #[test]
    fn rational_normalization() {
        let x = CycRat::new(CycInt::from_i64s(4, &[2, 2]), BigInt::from(2));
        assert_eq!(x.den(), &BigInt::one());
        assert_eq!(x.num(), &CycInt::from_i64s(4, &[1, 1]));
        let z = CycRat::new(CycInt::zero(5), BigInt::from(5));
        assert!(z.is_integral() && z.is_zero());
        // ζ_3 + ζ_3^2 = −1, so (3 + 3ζ_3 + 3ζ_3^2)/3 reduces to 0
        let w = CycRat::new(CycInt::from_i64s(3, &[3, 3, 3]), BigInt::from(9));
        assert!(w.is_zero());
        let n = CycRat::new(CycInt::from_i64s(1, &[3]), BigInt::from(-6));
        assert_eq!(n.den(), &BigInt::from(2));
        assert_eq!(n.num().as_integer(), Some(BigInt::from(-1)));
    }

    #[test]
    fn rational_embedding_cancels_p() {
        let f = FieldCtx::prime(7).unwrap();
        let x = CycRat::new(CycInt::from_i64s(1, &[14]), BigInt::from(7 * 3));
        let e = x.embed_padic(7, 2, &f).unwrap();
        assert_eq!(e, PadicInt::from_ratio(2, 3, 7, 2).unwrap());
        let bad = CycRat::new(CycInt::from_i64s(1, &[1]), BigInt::from(7));
        assert!(bad.embed_padic(7, 2, &f).is_err());
    }
}
