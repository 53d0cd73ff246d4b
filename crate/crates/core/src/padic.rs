//! Fixed-precision arithmetic in Z/p^r, Morita's p-adic Gamma function and
//! truncated hypergeometric series.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{inv_mod, mul_mod, pow_mod};
use crate::error::{Error, Result};

/// An element of Z/p^r.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PadicInt {
    p: u64,
    r: u32,
    residue: u64,
}

impl fmt::Debug for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.residue, self.p, self.r)
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn modulus(p: u64, r: u32) -> u64 {
    p.checked_pow(r)
        .filter(|m| *m < 1 << 62)
        .unwrap_or_else(|| panic!("precision {p}^{r} too large"))
}

impl PadicInt {
    pub fn from_residue(residue: u64, p: u64, r: u32) -> Self {
        let m = modulus(p, r);
        PadicInt { p, r, residue: residue % m }
    }

    pub fn zero(p: u64, r: u32) -> Self {
        Self::from_residue(0, p, r)
    }

    pub fn one(p: u64, r: u32) -> Self {
        Self::from_residue(1, p, r)
    }

    pub fn from_i64(a: i64, p: u64, r: u32) -> Self {
        let m = modulus(p, r);
        PadicInt { p, r, residue: (a as i128).rem_euclid(m as i128) as u64 }
    }

    pub fn from_bigint(a: &BigInt, p: u64, r: u32) -> Self {
        let m = BigInt::from(modulus(p, r));
        let res = a.mod_floor(&m).to_u64().expect("reduced residue fits");
        PadicInt { p, r, residue: res }
    }

    /// num/den mod p^r; fails when p divides den.
    pub fn from_rational(num: &BigInt, den: &BigInt, p: u64, r: u32) -> Result<Self> {
        let m = modulus(p, r);
        let bp = BigInt::from(p);
        if den.is_zero() || den.mod_floor(&bp).is_zero() {
            return Err(Error::NegativeValuation(format!("{num}/{den} at p = {p}")));
        }
        let d = den.mod_floor(&BigInt::from(m)).to_u64().unwrap();
        let di = inv_mod(d, m).ok_or_else(|| Error::NegativeValuation(format!("{num}/{den}")))?;
        Ok(Self::from_bigint(num, p, r) * Self::from_residue(di, p, r))
    }

    pub fn from_ratio(num: i64, den: i64, p: u64, r: u32) -> Result<Self> {
        Self::from_rational(&BigInt::from(num), &BigInt::from(den), p, r)
    }

    pub fn from_big_rational(x: &BigRational, p: u64, r: u32) -> Result<Self> {
        Self::from_rational(x.numer(), x.denom(), p, r)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn residue(&self) -> u64 {
        self.residue
    }
    pub fn modulus(&self) -> u64 {
        modulus(self.p, self.r)
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    pub fn is_unit(&self) -> bool {
        self.residue % self.p != 0
    }

    /// p-adic valuation of the residue, capped at r.
    pub fn valuation(&self) -> u32 {
        if self.residue == 0 {
            return self.r;
        }
        let mut v = 0;
        let mut x = self.residue;
        while x % self.p == 0 {
            x /= self.p;
            v += 1;
        }
        v
    }

    pub fn inv(&self) -> Result<Self> {
        inv_mod(self.residue, self.modulus())
            .map(|i| PadicInt { residue: i, ..*self })
            .ok_or_else(|| Error::NegativeValuation(format!("inverse of {self}")))
    }

    pub fn pow(&self, k: u64) -> Self {
        PadicInt { residue: pow_mod(self.residue, k, self.modulus()), ..*self }
    }

    /// Signed power; negative exponents need a unit.
    pub fn powi(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            Ok(self.pow(k as u64))
        } else {
            Ok(self.inv()?.pow(k.unsigned_abs()))
        }
    }

    /// Reduction to a lower precision.
    pub fn reduce(&self, r: u32) -> Self {
        assert!(r <= self.r, "cannot raise precision");
        Self::from_residue(self.residue, self.p, r)
    }

    /// Equality modulo p^k for k ≤ both precisions.
    pub fn eq_mod(&self, other: &Self, k: u32) -> bool {
        assert_eq!(self.p, other.p);
        let k = k.min(self.r).min(other.r);
        let m = modulus(self.p, k);
        self.residue % m == other.residue % m
    }

    /// Centered representative in (−p^r/2, p^r/2].
    pub fn centered(&self) -> i64 {
        let m = self.modulus();
        if self.residue > m / 2 {
            self.residue as i64 - m as i64
        } else {
            self.residue as i64
        }
    }

    fn check(&self, o: &Self) {
        assert!(self.p == o.p && self.r == o.r, "mixed p-adic precisions: {self} vs {o}");
    }
}

impl Add for PadicInt {
    type Output = PadicInt;
    fn add(self, o: Self) -> Self {
        self.check(&o);
        PadicInt { residue: (self.residue + o.residue) % self.modulus(), ..self }
    }
}

impl Sub for PadicInt {
    type Output = PadicInt;
    fn sub(self, o: Self) -> Self {
        self.check(&o);
        let m = self.modulus();
        PadicInt { residue: (self.residue + m - o.residue) % m, ..self }
    }
}

impl Neg for PadicInt {
    type Output = PadicInt;
    fn neg(self) -> Self {
        let m = self.modulus();
        PadicInt { residue: (m - self.residue) % m, ..self }
    }
}

impl Mul for PadicInt {
    type Output = PadicInt;
    fn mul(self, o: Self) -> Self {
        self.check(&o);
        PadicInt { residue: mul_mod(self.residue, o.residue, self.modulus()), ..self }
    }
}

// ---------------------------------------------------------------------------
// p-adic Gamma

/// Steps allowed in one Γ_p forward pass unless overridden.
pub const DEFAULT_GAMMA_STEPS: u64 = 4_000_000_000;

type GammaKey = (u64, u32, u64);

fn gamma_cache() -> &'static Mutex<HashMap<GammaKey, u64>> {
    static CACHE: OnceLock<Mutex<HashMap<GammaKey, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Γ_p at several residues mod p^r with one forward pass up to the largest.
pub fn gamma_p_many(p: u64, r: u32, residues: &[u64], max_steps: u64) -> Result<Vec<u64>> {
    let m = modulus(p, r);
    let residues: Vec<u64> = residues.iter().map(|a| a % m).collect();
    let mut out = vec![0u64; residues.len()];
    let mut todo: Vec<(u64, usize)> = Vec::new();
    {
        let cache = gamma_cache().lock().unwrap();
        for (i, &a) in residues.iter().enumerate() {
            match cache.get(&(p, r, a)) {
                Some(&v) => out[i] = v,
                None => todo.push((a, i)),
            }
        }
    }
    if todo.is_empty() {
        return Ok(out);
    }
    todo.sort_unstable();
    let top = todo.last().unwrap().0;
    if top > max_steps {
        return Err(Error::ResourceCap(format!(
            "Gamma_{p} pass of {top} steps exceeds {max_steps}"
        )));
    }
    let mut found = Vec::with_capacity(todo.len());
    let mut g: u64 = 1;
    let mut n: u64 = 0;
    let mut it = todo.iter().peekable();
    while let Some(&&(a, i)) = it.peek() {
        if n == a {
            out[i] = g;
            found.push((a, g));
            it.next();
            continue;
        }
        // Γ_p(n+1) = −n Γ_p(n), or −Γ_p(n) when p | n
        let factor = if n % p == 0 { 1 } else { n };
        g = m - mul_mod(factor % m, g, m);
        if g == m {
            g = 0;
        }
        n += 1;
    }
    let mut cache = gamma_cache().lock().unwrap();
    for (a, v) in found {
        cache.insert((p, r, a), v);
    }
    Ok(out)
}

/// Morita's Γ_p at the class of x mod p^r.
pub fn gamma_p(x: &PadicInt) -> Result<PadicInt> {
    let v = gamma_p_many(x.p, x.r, &[x.residue], DEFAULT_GAMMA_STEPS)?;
    Ok(PadicInt::from_residue(v[0], x.p, x.r))
}

/// Γ_p at a rational with p-unit denominator.
pub fn gamma_p_rational(num: i64, den: i64, p: u64, r: u32) -> Result<PadicInt> {
    gamma_p(&PadicInt::from_ratio(num, den, p, r)?)
}

/// Γ_p at several rationals, sharing one pass.
pub fn gamma_p_rationals(xs: &[(i64, i64)], p: u64, r: u32) -> Result<Vec<PadicInt>> {
    let res: Vec<u64> = xs
        .iter()
        .map(|&(a, b)| PadicInt::from_ratio(a, b, p, r).map(|x| x.residue))
        .collect::<Result<_>>()?;
    let vals = gamma_p_many(p, r, &res, DEFAULT_GAMMA_STEPS)?;
    Ok(vals.into_iter().map(|v| PadicInt::from_residue(v, p, r)).collect())
}

/// Least positive residue of x mod p, with 0 mapped to p.
pub fn a0(x: &PadicInt) -> u64 {
    let a = x.residue % x.p;
    if a == 0 {
        x.p
    } else {
        a
    }
}

// ---------------------------------------------------------------------------
// Exact p-adic bookkeeping: p^v · u with u a unit mod p^r.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Scaled {
    zero: bool,
    v: i64,
    u: u64,
}

impl Scaled {
    fn one() -> Self {
        Scaled { zero: false, v: 0, u: 1 }
    }

    fn from_int(n: i128, p: u64, m: u64) -> Self {
        if n == 0 {
            return Scaled { zero: true, v: 0, u: 0 };
        }
        let mut n = n;
        let mut v = 0;
        while n % p as i128 == 0 {
            n /= p as i128;
            v += 1;
        }
        Scaled { zero: false, v, u: n.rem_euclid(m as i128) as u64 }
    }

    fn from_bigint(n: &BigInt, p: u64, m: u64) -> Self {
        if n.is_zero() {
            return Scaled { zero: true, v: 0, u: 0 };
        }
        let bp = BigInt::from(p);
        let mut n = n.clone();
        let mut v = 0;
        while n.mod_floor(&bp).is_zero() {
            n /= &bp;
            v += 1;
        }
        let u = n.mod_floor(&BigInt::from(m)).to_u64().unwrap();
        Scaled { zero: false, v, u }
    }

    fn from_rational(x: &BigRational, p: u64, m: u64) -> Self {
        let a = Self::from_bigint(x.numer(), p, m);
        let b = Self::from_bigint(x.denom(), p, m);
        a.div(&b, m)
    }

    fn from_padic(x: &PadicInt) -> Self {
        let m = x.modulus();
        if x.residue == 0 {
            // known only modulo p^r; treat as exact zero
            return Scaled { zero: true, v: 0, u: 0 };
        }
        let mut n = x.residue;
        let mut v = 0;
        while n % x.p == 0 {
            n /= x.p;
            v += 1;
        }
        Scaled { zero: false, v, u: n % m }
    }

    fn mul(&self, o: &Self, m: u64) -> Self {
        if self.zero || o.zero {
            return Scaled { zero: true, v: 0, u: 0 };
        }
        Scaled { zero: false, v: self.v + o.v, u: mul_mod(self.u, o.u, m) }
    }

    fn div(&self, o: &Self, m: u64) -> Self {
        assert!(!o.zero, "division by zero");
        if self.zero {
            return *self;
        }
        let ui = inv_mod(o.u, m).expect("unit");
        Scaled { zero: false, v: self.v - o.v, u: mul_mod(self.u, ui, m) }
    }

    fn to_residue(self, p: u64, r: u32) -> Option<u64> {
        let m = modulus(p, r);
        if self.zero {
            return Some(0);
        }
        if self.v < 0 {
            return None;
        }
        if self.v >= r as i64 {
            return Some(0);
        }
        Some(mul_mod(p.pow(self.v as u32), self.u, m))
    }
}

/// Argument of a truncated series.
#[derive(Clone, Debug, PartialEq)]
pub enum HgsArg {
    Rational(BigRational),
    Padic(PadicInt),
}

impl From<BigRational> for HgsArg {
    fn from(x: BigRational) -> Self {
        HgsArg::Rational(x)
    }
}

impl From<PadicInt> for HgsArg {
    fn from(x: PadicInt) -> Self {
        HgsArg::Padic(x)
    }
}

/// Parameters of Σ_{k=start}^{M} scale · Π(a_i)_k / Π(b_j)_k · z^k / k!.
#[derive(Clone, Debug, PartialEq)]
pub struct HgsParams {
    pub upper: Vec<BigRational>,
    pub lower: Vec<BigRational>,
    pub argument: HgsArg,
    pub truncation: usize,
    pub scale: BigRational,
    pub start: usize,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl HgsParams {
    pub fn new(upper: Vec<BigRational>, lower: Vec<BigRational>, z: impl Into<HgsArg>, m: usize) -> Self {
        HgsParams {
            upper,
            lower,
            argument: z.into(),
            truncation: m,
            scale: BigRational::one(),
            start: 0,
        }
    }

    /// The balanced series with `count` copies of `a` over ones, at z.
    pub fn uniform(a: BigRational, count: usize, z: impl Into<HgsArg>, m: usize) -> Self {
        Self::new(vec![a; count], vec![BigRational::one(); count - 1], z, m)
    }

    pub fn with_scale(mut self, s: BigRational) -> Self {
        self.scale = s;
        self
    }

    pub fn with_start(mut self, k: usize) -> Self {
        self.start = k;
        self
    }

    fn check_lower(&self) -> Result<()> {
        for b in &self.lower {
            if b.is_integer() && !b.is_positive() {
                let nb = (-b.to_integer()).to_i64().unwrap_or(i64::MAX);
                if nb >= 0 && (nb as usize) < self.truncation {
                    return Err(Error::ZeroDenominator(nb as usize));
                }
            }
        }
        Ok(())
    }
}

/// Truncated series reduced mod p^r. Every term is checked for p-integrality.
///
/// Terms are carried as p^v · unit with the unit known mod p^r, which is exact
/// for products and quotients of p-adic numbers, so no term can wrap silently.
pub fn trunc_hgs_eval(params: &HgsParams, p: u64, r: u32) -> Result<PadicInt> {
    params.check_lower()?;
    let m = modulus(p, r);
    let z = match &params.argument {
        HgsArg::Rational(x) => Scaled::from_rational(x, p, m),
        HgsArg::Padic(x) => {
            if x.p != p || x.r < r {
                return Err(Error::Invalid("argument precision below target".into()));
            }
            Scaled::from_padic(&x.reduce(r))
        }
    };
    let to_pair = |x: &BigRational| -> Result<(i128, i128)> {
        let n = x.numer().to_i128().ok_or_else(|| Error::Invalid("parameter too large".into()))?;
        let d = x.denom().to_i128().ok_or_else(|| Error::Invalid("parameter too large".into()))?;
        if d % p as i128 == 0 {
            return Err(Error::NegativeValuation(format!("parameter {x} at p = {p}")));
        }
        Ok((n, d))
    };
    let up: Vec<(i128, i128)> = params.upper.iter().map(to_pair).collect::<Result<_>>()?;
    let lo: Vec<(i128, i128)> = params.lower.iter().map(to_pair).collect::<Result<_>>()?;
    let scale = Scaled::from_rational(&params.scale, p, m);
    let mut term = Scaled::one();
    let mut sum = 0u64;
    for k in 0..=params.truncation {
        if k >= params.start {
            let t = term.mul(&scale, m);
            let res = t.to_residue(p, r).ok_or(Error::NonIntegralTerm(k))?;
            sum = (sum + res) % m;
        }
        if term.zero || k == params.truncation {
            break;
        }
        let kk = k as i128;
        let mut num = z;
        for &(a, d) in &up {
            num = num.mul(&Scaled::from_int(a + kk * d, p, m), m);
            num = num.div(&Scaled::from_int(d, p, m), m);
        }
        let mut den = Scaled::from_int(kk + 1, p, m);
        for &(b, d) in &lo {
            let f = Scaled::from_int(b + kk * d, p, m);
            if f.zero {
                return Err(Error::ZeroDenominator(k));
            }
            den = den.mul(&f, m).div(&Scaled::from_int(d, p, m), m);
        }
        term = term.mul(&num, m).div(&den, m);
    }
    Ok(PadicInt::from_residue(sum, p, r))
}

/// Truncated series as an exact rational (z rational only).
pub fn trunc_hgs_exact(params: &HgsParams) -> Result<BigRational> {
    params.check_lower()?;
    let z = match &params.argument {
        HgsArg::Rational(x) => x.clone(),
        HgsArg::Padic(_) => return Err(Error::Invalid("exact evaluation needs a rational argument".into())),
    };
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    for k in 0..=params.truncation {
        if k >= params.start {
            sum += &term * &params.scale;
        }
        let kk = BigRational::from_integer(BigInt::from(k));
        let mut num = z.clone();
        for a in &params.upper {
            num *= a + &kk;
        }
        let mut den = &kk + BigRational::one();
        for b in &params.lower {
            den *= b + &kk;
        }
        if den.is_zero() {
            if k == params.truncation {
                break;
            }
            return Err(Error::ZeroDenominator(k));
        }
        term = term * num / den;
    }
    Ok(sum)
}

/// (a)_k mod p^r for rational a with p-unit denominator.
pub fn rising_factorial_p(a: &BigRational, k: usize, p: u64, r: u32) -> Result<PadicInt> {
    let m = modulus(p, r);
    if a.denom().mod_floor(&BigInt::from(p)).is_zero() {
        return Err(Error::NegativeValuation(format!("parameter {a} at p = {p}")));
    }
    let mut acc = Scaled::one();
    for i in 0..k {
        let f = a + BigRational::from_integer(BigInt::from(i));
        acc = acc.mul(&Scaled::from_rational(&f, p, m), m);
    }
    let res = acc.to_residue(p, r).ok_or_else(|| Error::NegativeValuation(format!("({a})_{k}")))?;
    Ok(PadicInt::from_residue(res, p, r))
}

/// p-adic valuation of (a)_k.
pub fn rising_factorial_valuation(a: &BigRational, k: usize, p: u64) -> i64 {
    let mut v = 0;
    let bp = BigInt::from(p);
    for i in 0..k {
        let f = a + BigRational::from_integer(BigInt::from(i));
        if f.is_zero() {
            return i64::MAX;
        }
        let mut n = f.numer().abs();
        while n.mod_floor(&bp).is_zero() {
            n /= &bp;
            v += 1;
        }
    }
    v
}

/// (H_k, H_k^(odd)) = (Σ_{j≤k} 1/j, Σ_{j≤k} 1/(2j−1)).
pub fn harmonic_sums(k: usize) -> (BigRational, BigRational) {
    let mut h = BigRational::zero();
    let mut ho = BigRational::zero();
    for j in 1..=k as i64 {
        h += rat(1, j);
        ho += rat(1, 2 * j - 1);
    }
    (h, ho)
}

/// Ratio F_{p^s−1} / F_{p^{s−1}−1} mod p^r for a series family (truncation ignored).
pub fn dwork_ratio(family: &HgsParams, p: u64, s: u32, r: u32) -> Result<PadicInt> {
    if s == 0 {
        return Err(Error::Invalid("s must be at least 1".into()));
    }
    let top = p.pow(s) as usize - 1;
    let low = p.pow(s - 1) as usize - 1;
    let mut num = family.clone();
    num.truncation = top;
    let mut den = family.clone();
    den.truncation = low;
    let a = trunc_hgs_eval(&num, p, r)?;
    let b = trunc_hgs_eval(&den, p, r)?;
    if !b.is_unit() {
        return Err(Error::NonOrdinary);
    }
    Ok(a * b.inv()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gamma_naive(n: u64, p: u64, r: u32) -> u64 {
        let m = p.pow(r);
        let mut v = 1u64;
        for j in 1..n {
            if j % p != 0 {
                v = v * j % m;
            }
        }
        if n % 2 == 1 {
            (m - v) % m
        } else {
            v
        }
    }

    #[test]
    fn from_rational_examples() {
        let x = PadicInt::from_ratio(1, 3, 7, 2).unwrap();
        assert_eq!(x.residue(), 33);
        assert_eq!((3 * 33) % 49, 1);
        assert_eq!(PadicInt::from_ratio(0, 5, 7, 3).unwrap().residue(), 0);
        assert!(matches!(PadicInt::from_ratio(1, 7, 7, 2), Err(Error::NegativeValuation(_))));
    }

    #[test]
    fn gamma_small_values() {
        assert_eq!(gamma_p(&PadicInt::zero(5, 2)).unwrap().residue(), 1);
        // Γ_5(5) = (−1)^5 · 4! = −24 ≡ 1 mod 25
        assert_eq!(gamma_p(&PadicInt::from_i64(5, 5, 2)).unwrap().residue(), 1);
        for p in [3u64, 5, 7] {
            for n in 0..60 {
                let g = gamma_p(&PadicInt::from_i64(n as i64, p, 3)).unwrap();
                assert_eq!(g.residue(), gamma_naive(n, p, 3), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn gamma_reflection_at_fractions() {
        for (n, p) in [(3, 7), (3, 13), (4, 13), (5, 11), (4, 17)] {
            let x = PadicInt::from_ratio(1, n, p, 3).unwrap();
            let y = PadicInt::from_ratio(n - 1, n, p, 3).unwrap();
            let lhs = gamma_p(&x).unwrap() * gamma_p(&y).unwrap();
            let sign = if a0(&x) % 2 == 0 { 1 } else { -1 };
            assert_eq!(lhs, PadicInt::from_i64(sign, p as u64, 3));
        }
    }

    #[test]
    fn rising_factorials() {
        let third = rat(1, 3);
        assert_eq!(rising_factorial_p(&third, 0, 7, 2).unwrap().residue(), 1);
        assert_eq!(rising_factorial_p(&rat(1, 1), 5, 7, 3).unwrap().residue(), 120);
        for p in [7u64, 13, 19] {
            let k = (p as usize - 1) / 3 + 1;
            assert!(rising_factorial_valuation(&third, k, p) >= 1);
            assert_eq!(rising_factorial_valuation(&third, k - 1, p), 0);
        }
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic_sums(0), (rat(0, 1), rat(0, 1)));
        assert_eq!(harmonic_sums(2), (rat(3, 2), rat(4, 3)));
        assert_eq!(harmonic_sums(3), (rat(11, 6), rat(23, 15)));
    }

    #[test]
    fn truncation_zero_is_one() {
        let params = HgsParams::uniform(rat(1, 3), 3, rat(1, 1), 0);
        assert_eq!(trunc_hgs_eval(&params, 7, 3).unwrap().residue(), 1);
    }

    #[test]
    fn exact_and_padic_routes_agree() {
        for p in [7u64, 13] {
            for m in [0usize, 3, p as usize - 1, 2 * p as usize] {
                let params = HgsParams::uniform(rat(1, 3), 3, rat(1, 1), m);
                let exact = trunc_hgs_exact(&params).unwrap();
                let via = trunc_hgs_eval(&params, p, 3);
                match PadicInt::from_big_rational(&exact, p, 3) {
                    Ok(x) => assert_eq!(via.unwrap(), x),
                    Err(_) => assert!(via.is_err() || exact.denom() % p == BigInt::zero()),
                }
            }
        }
    }

    #[test]
    fn non_integral_term_is_reported() {
        // 1/p^k growth: z = 1/p
        let params = HgsParams::new(vec![rat(1, 1)], vec![], rat(1, 7), 3);
        assert_eq!(trunc_hgs_eval(&params, 7, 2), Err(Error::NonIntegralTerm(1)));
    }

    #[test]
    fn zero_denominator_is_reported() {
        let params = HgsParams::new(vec![rat(1, 2), rat(1, 2)], vec![rat(-2, 1)], rat(1, 1), 5);
        assert_eq!(trunc_hgs_eval(&params, 7, 2), Err(Error::ZeroDenominator(2)));
    }

    #[test]
    fn dwork_first_level_is_truncation() {
        let fam = HgsParams::uniform(rat(1, 3), 3, rat(1, 1), 0);
        let r = dwork_ratio(&fam, 7, 1, 1).unwrap();
        let t = trunc_hgs_eval(&HgsParams::uniform(rat(1, 3), 3, rat(1, 1), 6), 7, 1).unwrap();
        assert_eq!(r, t);
    }
}
