//! Exact arithmetic in the cyclotomic field `Q(ζ_N)`.
//!
//! Elements are polynomials in `ζ` of degree `< φ(N)`, reduced modulo the
//! cyclotomic polynomial `Φ_N`, so two elements are equal exactly when their
//! coefficient vectors agree. Coefficients are stored as arbitrary-precision
//! integer numerators over a single positive common denominator kept in lowest
//! terms; this keeps the hot multiplication loop in integer arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficients of `Φ_N`, lowest degree first.
///
/// Computed by dividing `X^N - 1` by `Φ_d` for every proper divisor `d` of `N`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = div_exact_monic(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Per-order data shared by every element of `Q(ζ_N)`.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    modulus: Vec<BigInt>,
    powers: Vec<Vec<BigInt>>,
}

impl CyclotomicField {
    fn build(order: u32) -> Self {
        let modulus = cyclotomic_polynomial(order);
        let phi = modulus.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![BigInt::zero(); phi];
        cur[0] = BigInt::one();
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by X and fold the overflow back with Φ_N (monic)
            let top = cur[phi - 1].clone();
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for i in 0..phi {
                    cur[i] -= &top * &modulus[i];
                }
            }
        }
        CyclotomicField { order, modulus, powers }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `φ(N)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let phi = self.degree();
        if v.len() > phi {
            for k in (phi..v.len()).rev() {
                let c = std::mem::take(&mut v[k]);
                if c.is_zero() {
                    continue;
                }
                for i in 0..phi {
                    v[k - phi + i] -= &c * &self.modulus[i];
                }
            }
            v.truncate(phi);
        }
        v.resize(phi, BigInt::zero());
        v
    }
}

/// The shared field data for order `n`, built on first use.
pub fn field(n: u32) -> Arc<CyclotomicField> {
    static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
    let fields = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = fields.lock().expect("field cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(CyclotomicField::build(n)))
        .clone()
}

#[derive(Clone)]
pub struct CycloNum {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloNum {}

impl std::hash::Hash for CycloNum {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.order().hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl CycloNum {
    fn from_parts(field: Arc<CyclotomicField>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut out = CycloNum { field, num, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn zero(n: u32) -> Self {
        let field = field(n);
        let phi = field.degree();
        CycloNum { field, num: vec![BigInt::zero(); phi], den: BigInt::one() }
    }

    pub fn one(n: u32) -> Self {
        Self::from_integer(n, 1)
    }

    pub fn from_integer(n: u32, value: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(n);
        out.num[0] = value.into();
        out
    }

    pub fn from_rational(n: u32, value: &BigRational) -> Self {
        let mut out = Self::zero(n);
        out.num[0] = value.numer().clone();
        out.den = value.denom().clone();
        out.normalize();
        out
    }

    /// Builds an element from rational coefficients of `1, ζ, ζ², ...`; longer inputs are reduced.
    pub fn from_coeffs(n: u32, coeffs: &[BigRational]) -> Self {
        let field = field(n);
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let num = field.reduce(num);
        Self::from_parts(field, num, den)
    }

    /// `ζ_N^e`, with `e` taken mod `N`.
    pub fn zeta_pow(n: u32, e: i64) -> Self {
        let field = field(n);
        let idx = e.rem_euclid(n as i64) as usize;
        let num = field.powers[idx].clone();
        CycloNum { field, num, den: BigInt::one() }
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Rational coefficients of `1, ζ, ..., ζ^{φ(N)-1}`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The constant coefficient when every other coefficient vanishes.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    fn check_order(&self, other: &CycloNum) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_order(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_order(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn try_mul(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &CycloNum, subtract: bool) -> CycloNum {
        let combine = |a: &BigInt, b: &BigInt| if subtract { a - b } else { a + b };
        if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| combine(a, b)).collect();
            return Self::from_parts(self.field.clone(), num, self.den.clone());
        }
        let den = self.den.lcm(&other.den);
        let fa = &den / &self.den;
        let fb = &den / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| combine(&(a * &fa), &(b * &fb)))
            .collect();
        Self::from_parts(self.field.clone(), num, den)
    }

    fn mul_unchecked(&self, other: &CycloNum) -> CycloNum {
        let phi = self.field.degree();
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let num = self.field.reduce(prod);
        Self::from_parts(self.field.clone(), num, &self.den * &other.den)
    }

    pub fn scale(&self, q: &BigRational) -> CycloNum {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::from_parts(self.field.clone(), num, &self.den * q.denom())
    }

    pub fn scale_int(&self, k: &BigInt) -> CycloNum {
        let num = self.num.iter().map(|c| c * k).collect();
        Self::from_parts(self.field.clone(), num, self.den.clone())
    }

    /// Image under the automorphism `ζ ↦ ζ^k`; `k` must be coprime to `N`.
    pub fn galois(&self, k: i64) -> CycloNum {
        let n = self.order() as i64;
        assert_eq!(k.gcd(&n), 1, "ζ -> ζ^{k} is not an automorphism of Q(ζ_{n})");
        let phi = self.field.degree();
        let mut out = vec![BigInt::zero(); phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = &self.field.powers[(i as i64 * k).rem_euclid(n) as usize];
            for (o, p) in out.iter_mut().zip(img) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        Self::from_parts(self.field.clone(), out, self.den.clone())
    }

    /// Complex conjugation, `ζ ↦ ζ^{N-1}`.
    pub fn conj(&self) -> CycloNum {
        self.galois(self.order() as i64 - 1)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against `Φ_N` over `Q`.
    pub fn inverse(&self) -> Result<CycloNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a: Vec<BigRational> = self.num.iter().map(|c| BigRational::from(c.clone())).collect();
        let m: Vec<BigRational> = self
            .field
            .modulus
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        let inv = rational_poly::inverse_mod(&a, &m);
        // the numerators were scaled by den, so undo that
        let den = BigRational::from(self.den.clone());
        let coeffs: Vec<BigRational> = inv.into_iter().map(|c| c * &den).collect();
        Ok(CycloNum::from_coeffs(self.order(), &coeffs))
    }

    pub fn try_div(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    /// Integer power by repeated squaring; negative exponents go through [`CycloNum::inverse`].
    pub fn pow(&self, e: i64) -> Result<CycloNum> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = CycloNum::one(self.order());
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul_unchecked(&sq);
            }
        }
        Ok(acc)
    }
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        self.try_add(rhs).expect("cyclotomic add")
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self.try_sub(rhs).expect("cyclotomic sub")
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        self.try_mul(rhs).expect("cyclotomic mul")
    }
}

impl Add for CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: CycloNum) -> CycloNum {
        &self + &rhs
    }
}

impl Sub for CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: CycloNum) -> CycloNum {
        &self - &rhs
    }
}

impl Mul for CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: CycloNum) -> CycloNum {
        &self * &rhs
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => c.to_string(),
                1 => format!("{c}·z"),
                _ => format!("{c}·z^{i}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".to_string());
        }
        write!(f, "{} (mod Phi_{})", terms.join(" + "), self.order())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

mod rational_poly {
    //! Dense polynomials over `Q`, lowest degree first, used only for inversion.

    use num_rational::BigRational;
    use num_traits::Zero;

    fn trim(p: &mut Vec<BigRational>) {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }

    fn div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rem = a.to_vec();
        trim(&mut rem);
        let db = b.len() - 1;
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let mut quot = vec![BigRational::zero(); rem.len() - db];
        let lead = &b[db];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + db] / lead;
            if c.is_zero() {
                continue;
            }
            for (i, bi) in b.iter().enumerate() {
                rem[k + i] -= &c * bi;
            }
            quot[k] = c;
        }
        trim(&mut rem);
        (quot, rem)
    }

    fn mul_sub(s0: &[BigRational], q: &[BigRational], s1: &[BigRational]) -> Vec<BigRational> {
        let len = s0.len().max(q.len() + s1.len());
        let mut out = vec![BigRational::zero(); len];
        for (i, c) in s0.iter().enumerate() {
            out[i] += c;
        }
        for (i, a) in q.iter().enumerate() {
            for (j, b) in s1.iter().enumerate() {
                out[i + j] -= a * b;
            }
        }
        trim(&mut out);
        out
    }

    /// `s` with `s·a ≡ 1 (mod m)`; `a` must be coprime to `m`.
    pub fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
        let mut r0 = m.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r0);
        trim(&mut r1);
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1: Vec<BigRational> = vec![BigRational::from_integer(1.into())];
        while !r1.is_empty() {
            let (q, rem) = div_rem(&r0, &r1);
            let s2 = mul_sub(&s0, &q, &s1);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        assert_eq!(r0.len(), 1, "element shares a factor with the modulus");
        let c = r0[0].clone();
        let (_, mut reduced) = div_rem(&s0, m);
        for x in &mut reduced {
            *x /= &c;
        }
        reduced
    }
}
