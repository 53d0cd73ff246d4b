//! Terminating hypergeometric series over Q, classical summation formulas,
//! and q-expansions of eta products.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::padic::rat;

/// (a)_k as an exact rational.
pub fn pochhammer(a: &BigRational, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc *= &x;
        x += BigRational::one();
    }
    acc
}

fn nonpositive_integer(x: &BigRational) -> Option<usize> {
    if x.is_integer() && !x.is_positive() {
        (-x.to_integer()).to_usize()
    } else {
        None
    }
}

/// Σ_k Π(a_i)_k / Π(b_j)_k · z^k / k!, which must terminate through a nonpositive integer a_i.
pub fn terminating_hgs(upper: &[BigRational], lower: &[BigRational], z: &BigRational) -> Result<BigRational> {
    let n = upper
        .iter()
        .filter_map(nonpositive_integer)
        .min()
        .ok_or(Error::NonTerminating)?;
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 0..n {
        let kk = BigRational::from_integer(BigInt::from(k));
        let mut num = z.clone();
        for a in upper {
            num *= a + &kk;
        }
        let mut den = &kk + BigRational::one();
        for b in lower {
            let f = b + &kk;
            if f.is_zero() {
                return Err(Error::ZeroDenominator(k));
            }
            den *= f;
        }
        term = term * num / den;
        sum += &term;
    }
    Ok(sum)
}

/// An instance of one of the classical summation or transformation formulas.
#[derive(Clone, Debug, PartialEq)]
pub enum Classical {
    /// 2F1(a, −n; a+n+1; −1) = (a+1)_n / (a/2+1)_n.
    Kummer { a: BigRational, n: usize },
    /// (k+1)F_k(−Σm; b_i+m_i; b_i; 1) = (−1)^{Σm} (Σm)! / Π(b_i)_{m_i}.
    KarlssonMinton { b: Vec<BigRational>, m: Vec<usize> },
    /// Very-well-poised 7F6 at 1 with 2a+1 = b+c+d+e−m.
    Dougall { a: BigRational, b: BigRational, c: BigRational, d: BigRational, e: BigRational, m: usize },
    /// Well-poised 5F4 at 1 transformed to a balanced 4F3; e must be a nonpositive integer.
    Whipple { a: BigRational, b: BigRational, c: BigRational, d: BigRational, e: BigRational },
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityOutcome {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub equal: bool,
}

fn one() -> BigRational {
    BigRational::one()
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn prod_poch(xs: &[&BigRational], k: usize) -> BigRational {
    xs.iter().fold(one(), |acc, x| acc * pochhammer(x, k))
}

fn ratio(num: BigRational, den: BigRational) -> Result<BigRational> {
    if den.is_zero() {
        return Err(Error::Singular("right-hand side has a zero denominator".into()));
    }
    Ok(num / den)
}

/// Both sides of a classical identity, evaluated exactly.
pub fn classical_identity_check(inst: &Classical) -> Result<IdentityOutcome> {
    let (lhs, rhs) = match inst {
        Classical::Kummer { a, n } => {
            let n_r = int(*n as i64);
            let lhs = terminating_hgs(&[a.clone(), -&n_r], &[a + &n_r + one()], &int(-1))?;
            let rhs = ratio(pochhammer(&(a + one()), *n), pochhammer(&(a / int(2) + one()), *n))?;
            (lhs, rhs)
        }
        Classical::KarlssonMinton { b, m } => {
            if b.len() != m.len() || b.is_empty() {
                return Err(Error::Hypothesis("need matching nonempty b and m".into()));
            }
            let s: usize = m.iter().sum();
            let mut upper = vec![-int(s as i64)];
            upper.extend(b.iter().zip(m).map(|(bi, &mi)| bi + int(mi as i64)));
            let lhs = terminating_hgs(&upper, b, &one())?;
            let fact = pochhammer(&one(), s);
            let den = b.iter().zip(m).fold(one(), |acc, (bi, &mi)| acc * pochhammer(bi, mi));
            let sign = if s % 2 == 0 { one() } else { -one() };
            (lhs, ratio(sign * fact, den)?)
        }
        Classical::Dougall { a, b, c, d, e, m } => {
            let mm = int(*m as i64);
            if a * int(2) + one() != b + c + d + e - &mm {
                return Err(Error::Hypothesis("Dougall needs 2a+1 = b+c+d+e−m".into()));
            }
            let two = int(2);
            let upper = vec![a.clone(), a / &two + one(), b.clone(), c.clone(), d.clone(), e.clone(), -&mm];
            let lower = vec![
                a / &two,
                one() + a - b,
                one() + a - c,
                one() + a - d,
                one() + a - e,
                one() + a + &mm,
            ];
            let lhs = terminating_hgs(&upper, &lower, &one())?;
            let a1 = one() + a;
            let num = prod_poch(&[&a1, &(&a1 - b - c), &(&a1 - b - d), &(&a1 - c - d)], *m);
            let den = prod_poch(&[&(&a1 - b), &(&a1 - c), &(&a1 - d), &(&a1 - b - c - d)], *m);
            (lhs, ratio(num, den)?)
        }
        Classical::Whipple { a, b, c, d, e } => {
            let n = nonpositive_integer(e)
                .ok_or_else(|| Error::Hypothesis("Whipple instance needs e a nonpositive integer".into()))?;
            let a1 = one() + a;
            let upper = vec![a.clone(), b.clone(), c.clone(), d.clone(), e.clone()];
            let lower = vec![&a1 - b, &a1 - c, &a1 - d, &a1 - e];
            let lhs = terminating_hgs(&upper, &lower, &one())?;
            let half = a / int(2);
            let inner = terminating_hgs(
                &[&half + one() - b, c.clone(), d.clone(), e.clone()],
                &[&half + one(), c + d + e - a, &a1 - b],
                &one(),
            )?;
            let pre = ratio(
                pochhammer(&a1, n) * pochhammer(&(&a1 - c - d), n),
                pochhammer(&(&a1 - c), n) * pochhammer(&(&a1 - d), n),
            )?;
            (lhs, pre * inner)
        }
    };
    let equal = lhs == rhs;
    Ok(IdentityOutcome { lhs, rhs, equal })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalKind {
    Kummer,
    KarlssonMinton,
    Dougall,
    Whipple,
}

impl ClassicalKind {
    pub const ALL: [ClassicalKind; 4] =
        [ClassicalKind::Kummer, ClassicalKind::KarlssonMinton, ClassicalKind::Dougall, ClassicalKind::Whipple];
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let d = rng.gen_range(2..=12);
    let n = rng.gen_range(-30..=30);
    rat(n, d)
}

fn random_candidate(kind: ClassicalKind, rng: &mut ChaCha8Rng) -> Classical {
    match kind {
        ClassicalKind::Kummer => Classical::Kummer { a: random_rational(rng), n: rng.gen_range(0..=8) },
        ClassicalKind::KarlssonMinton => {
            let len = rng.gen_range(1..=4);
            Classical::KarlssonMinton {
                b: (0..len).map(|_| random_rational(rng)).collect(),
                m: (0..len).map(|_| rng.gen_range(0..=3)).collect(),
            }
        }
        ClassicalKind::Dougall => {
            let (a, b, c, d) = (random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng));
            let m = rng.gen_range(0..=5);
            let e = &a * int(2) + one() - &b - &c - &d + int(m as i64);
            Classical::Dougall { a, b, c, d, e, m }
        }
        ClassicalKind::Whipple => Classical::Whipple {
            a: random_rational(rng),
            b: random_rational(rng),
            c: random_rational(rng),
            d: random_rational(rng),
            e: int(-rng.gen_range(0..=5)),
        },
    }
}

/// True when the only nonpositive-integer numerator parameter of each series is the
/// designated terminating one and no denominator parameter is a nonpositive integer.
///
/// Outside this set the formulas hold only after a limiting argument.
pub fn is_admissible(inst: &Classical) -> bool {
    let two = int(2);
    let (free, lower): (Vec<BigRational>, Vec<BigRational>) = match inst {
        Classical::Kummer { a, n } => (vec![a.clone(), a / &two + one()], vec![a + int(*n as i64) + one()]),
        Classical::KarlssonMinton { b, m } => (
            b.iter().zip(m).map(|(bi, &mi)| bi + int(mi as i64)).collect(),
            b.clone(),
        ),
        Classical::Dougall { a, b, c, d, e, m } => {
            let a1 = one() + a;
            (
                vec![a.clone(), a / &two + one(), b.clone(), c.clone(), d.clone(), e.clone()],
                vec![a / &two, &a1 - b, &a1 - c, &a1 - d, &a1 - e, &a1 + int(*m as i64)],
            )
        }
        Classical::Whipple { a, b, c, d, e } => {
            let a1 = one() + a;
            let half = a / &two;
            (
                vec![a.clone(), b.clone(), c.clone(), d.clone(), &half + one() - b],
                vec![&a1 - b, &a1 - c, &a1 - d, &a1 - e, &half + one(), c + d + e - a],
            )
        }
    };
    free.iter().chain(&lower).all(|x| nonpositive_integer(x).is_none())
}

/// `count` admissible instances drawn from a fixed-seed stream.
///
/// Candidates whose evaluation would divide by zero are discarded, so every
/// returned instance has both sides defined.
pub fn random_instances(kind: ClassicalKind, count: usize, seed: u64) -> Vec<Classical> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c = random_candidate(kind, &mut rng);
        if is_admissible(&c) && classical_identity_check(&c).is_ok() {
            out.push(c);
        }
    }
    out
}

/// Truncated integer power series Σ c_k q^k, k < len.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatSeries {
    coeffs: Vec<BigInt>,
}

impl RatSeries {
    /// The constant series 1 with precision n (coefficients of q^0..q^n).
    pub fn one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::one();
        RatSeries { coeffs }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.precision().min(o.precision());
        let mut c = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        RatSeries { coeffs: c }
    }

    /// In-place multiplication by (1 − q^d).
    pub fn mul_one_minus(&mut self, d: usize) {
        let n = self.coeffs.len();
        for i in (d..n).rev() {
            let t = self.coeffs[i - d].clone();
            self.coeffs[i] -= t;
        }
    }

    /// Multiplication by q^s.
    pub fn shift(&self, s: usize) -> Self {
        let n = self.coeffs.len();
        let mut c = vec![BigInt::zero(); n];
        for i in s..n {
            c[i] = self.coeffs[i - s].clone();
        }
        RatSeries { coeffs: c }
    }
}

/// Coefficients a(0..=n) of q·Π_{k≥1}(1 − q^{2k})^4 (1 − q^{4k})^4.
pub fn eta_product_coeffs(n: usize) -> Vec<BigInt> {
    let mut s = RatSeries::one(n);
    for k in 1..=n / 2 {
        for _ in 0..4 {
            s.mul_one_minus(2 * k);
        }
        if 4 * k <= n {
            for _ in 0..4 {
                s.mul_one_minus(4 * k);
            }
        }
    }
    s.shift(1).coeffs
}

/// a(p) from the eta product, for p ≥ 1.
pub fn eta_coefficient(p: usize) -> BigInt {
    eta_product_coeffs(p.max(2))[p].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Π(1 − q^m) from Euler's pentagonal number theorem.
    fn euler_product(n: usize) -> Vec<i64> {
        let mut c = vec![0i64; n + 1];
        for k in 0i64.. {
            let mut any = false;
            for kk in [k, -k] {
                let g = kk * (3 * kk - 1) / 2;
                if g as usize <= n {
                    any = true;
                    c[g as usize] = if kk % 2 == 0 { 1 } else { -1 };
                }
            }
            if !any {
                break;
            }
        }
        c
    }

    fn oracle_eta(n: usize) -> Vec<i64> {
        let e = euler_product(n);
        let compose = |step: usize| -> Vec<i64> {
            let mut v = vec![0i64; n + 1];
            for (i, &c) in e.iter().enumerate() {
                if i * step <= n {
                    v[i * step] = c;
                }
            }
            v
        };
        let mul = |a: &[i64], b: &[i64]| -> Vec<i64> {
            let mut c = vec![0i64; n + 1];
            for i in 0..=n {
                for j in 0..=n - i {
                    c[i + j] += a[i] * b[j];
                }
            }
            c
        };
        let (f2, f4) = (compose(2), compose(4));
        let mut acc = vec![0i64; n + 1];
        acc[0] = 1;
        for _ in 0..4 {
            acc = mul(&acc, &f2);
            acc = mul(&acc, &f4);
        }
        let mut out = vec![0i64; n + 1];
        out[1..].copy_from_slice(&acc[..n]);
        out
    }

    #[test]
    fn eta_against_pentagonal_oracle() {
        let got = eta_product_coeffs(60);
        let want = oracle_eta(60);
        for k in 0..=60 {
            assert_eq!(got[k], BigInt::from(want[k]), "coefficient {k}");
        }
        assert_eq!(got[1], BigInt::from(1));
        assert_eq!(got[2], BigInt::from(0));
        assert_eq!(got[3], BigInt::from(-4));
        assert_eq!(got[5], BigInt::from(-2));
    }

    #[test]
    fn terminating_examples() {
        let v = terminating_hgs(&[int(-2), int(2), int(2)], &[int(1), int(1)], &one()).unwrap();
        assert_eq!(v, int(2));
        assert_eq!(terminating_hgs(&[int(0), rat(1, 3)], &[int(5)], &rat(7, 2)).unwrap(), one());
        assert_eq!(terminating_hgs(&[rat(1, 2)], &[], &one()), Err(Error::NonTerminating));
        assert_eq!(terminating_hgs(&[int(-3)], &[int(-1)], &one()), Err(Error::ZeroDenominator(1)));
    }

    #[test]
    fn kummer_example() {
        let out = classical_identity_check(&Classical::Kummer { a: rat(1, 2), n: 2 }).unwrap();
        assert!(out.equal);
        assert_eq!(out.rhs, pochhammer(&rat(3, 2), 2) / pochhammer(&rat(5, 4), 2));
        // direct two-term expansion of the left side
        let lhs = one() + rat(1, 2) * int(-2) / rat(7, 2) * int(-1)
            + rat(1, 2) * rat(3, 2) * int(-2) * int(-1) / (rat(7, 2) * rat(9, 2) * int(2));
        assert_eq!(out.lhs, lhs);
    }

    #[test]
    fn km_and_dougall_and_whipple_examples() {
        let km = Classical::KarlssonMinton { b: vec![int(1), int(1)], m: vec![1, 1] };
        let o = classical_identity_check(&km).unwrap();
        assert!(o.equal);
        assert_eq!(o.lhs, int(2));
        let (a, b, c, d, m) = (rat(1, 4), rat(5, 8), rat(1, 8), rat(1, 4), 1usize);
        let e = &a * int(2) + one() - &b - &c - &d + int(m as i64);
        assert_eq!(e, rat(1 + 5, 4));
        assert!(classical_identity_check(&Classical::Dougall { a, b, c, d, e, m }).unwrap().equal);
        let w = Classical::Whipple { a: rat(1, 3), b: rat(2, 5), c: rat(1, 7), d: rat(3, 4), e: int(-1) };
        assert!(classical_identity_check(&w).unwrap().equal);
        let bad = Classical::Whipple { a: rat(1, 3), b: rat(2, 5), c: rat(1, 7), d: rat(3, 4), e: rat(1, 2) };
        assert!(matches!(classical_identity_check(&bad), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn random_instances_are_reproducible() {
        for kind in ClassicalKind::ALL {
            let a = random_instances(kind, 5, 7);
            assert_eq!(a, random_instances(kind, 5, 7));
            for inst in &a {
                assert!(classical_identity_check(inst).unwrap().equal, "{inst:?}");
            }
        }
    }

    #[test]
    fn series_multiplication_truncates() {
        let mut a = RatSeries::one(5);
        a.mul_one_minus(1);
        let mut b = RatSeries::one(5);
        b.mul_one_minus(2);
        let c = a.mul(&b);
        let want: Vec<BigInt> = [1, -1, -1, 1, 0, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(c.coeffs(), &want[..]);
    }
}
