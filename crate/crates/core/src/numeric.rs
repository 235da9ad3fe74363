//! Multi-precision floating evaluation, used only as an independent oracle
//! for the exact cyclotomic path.

use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cyclo::CycloNum;
use crate::diagrams::{WeightSystem, YoungDiagram};
use crate::subsets::Subsets;
use crate::verlinde::Variant;

const RM: RoundingMode = RoundingMode::ToEven;

#[derive(Clone, Debug)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
}

/// Working precision plus the constants cache `astro-float` needs for `π`, `sin`, `cos`.
pub struct FloatCtx {
    p: usize,
    cc: Consts,
}

impl FloatCtx {
    /// A context carrying at least `digits` decimal digits plus guard bits.
    pub fn new(digits: usize) -> Self {
        let bits = (digits.max(1) as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64;
        FloatCtx {
            p: bits.div_ceil(64) * 64,
            cc: Consts::new().expect("astro-float constants cache"),
        }
    }

    pub fn precision(&self) -> usize {
        self.p
    }

    pub fn int(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, self.p)
    }

    pub fn bigint(&mut self, v: &BigInt) -> BigFloat {
        BigFloat::parse(&v.to_string(), astro_float::Radix::Dec, self.p, RM, &mut self.cc)
    }

    pub fn rational(&mut self, q: &BigRational) -> BigFloat {
        let n = self.bigint(q.numer());
        let d = self.bigint(q.denom());
        n.div(&d, self.p, RM)
    }

    pub fn real(&self, x: BigFloat) -> Complex {
        Complex { re: x, im: self.int(0) }
    }

    pub fn cint(&self, v: i64) -> Complex {
        self.real(self.int(v))
    }

    /// `sin(π·num/den)`.
    pub fn sin_pi_frac(&mut self, num: i64, den: i64) -> BigFloat {
        let angle = self.pi_frac(num, den);
        angle.sin(self.p, RM, &mut self.cc)
    }

    fn pi_frac(&mut self, num: i64, den: i64) -> BigFloat {
        let pi = self.cc.pi(self.p, RM);
        pi.mul(&self.int(num), self.p, RM).div(&self.int(den), self.p, RM)
    }

    /// `e^{2πi·k/n}`.
    pub fn zeta(&mut self, n: u32, k: i64) -> Complex {
        let k = k.rem_euclid(n as i64);
        let angle = self.pi_frac(2 * k, n as i64);
        Complex {
            re: angle.cos(self.p, RM, &mut self.cc),
            im: angle.sin(self.p, RM, &mut self.cc),
        }
    }

    pub fn add(&self, a: &Complex, b: &Complex) -> Complex {
        Complex { re: a.re.add(&b.re, self.p, RM), im: a.im.add(&b.im, self.p, RM) }
    }

    pub fn sub(&self, a: &Complex, b: &Complex) -> Complex {
        Complex { re: a.re.sub(&b.re, self.p, RM), im: a.im.sub(&b.im, self.p, RM) }
    }

    pub fn mul(&self, a: &Complex, b: &Complex) -> Complex {
        let p = self.p;
        Complex {
            re: a.re.mul(&b.re, p, RM).sub(&a.im.mul(&b.im, p, RM), p, RM),
            im: a.re.mul(&b.im, p, RM).add(&a.im.mul(&b.re, p, RM), p, RM),
        }
    }

    pub fn scale(&self, a: &Complex, x: &BigFloat) -> Complex {
        Complex { re: a.re.mul(x, self.p, RM), im: a.im.mul(x, self.p, RM) }
    }

    pub fn norm_sqr(&self, a: &Complex) -> BigFloat {
        a.re.mul(&a.re, self.p, RM).add(&a.im.mul(&a.im, self.p, RM), self.p, RM)
    }

    pub fn div(&self, a: &Complex, b: &Complex) -> Complex {
        let p = self.p;
        let den = self.norm_sqr(b);
        let conj_b = Complex { re: b.re.clone(), im: b.im.neg() };
        let num = self.mul(a, &conj_b);
        Complex { re: num.re.div(&den, p, RM), im: num.im.div(&den, p, RM) }
    }

    pub fn powi(&self, a: &Complex, e: i64) -> Complex {
        let mut acc = self.cint(1);
        let mut sq = a.clone();
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        if e < 0 {
            self.div(&self.cint(1), &acc)
        } else {
            acc
        }
    }

    pub fn abs(&mut self, a: &Complex) -> BigFloat {
        self.norm_sqr(a).sqrt(self.p, RM)
    }

    /// Evaluates the coefficient polynomial of `a` at `e^{2πi/N}`.
    pub fn embed(&mut self, a: &CycloNum) -> Complex {
        let n = a.order();
        let mut acc = self.cint(0);
        for (i, c) in a.coeffs().iter().enumerate() {
            if c == &BigRational::from_integer(0.into()) {
                continue;
            }
            let z = self.zeta(n, i as i64);
            let c = self.rational(c);
            acc = self.add(&acc, &self.scale(&z, &c));
        }
        acc
    }

    /// Determinant by Gaussian elimination with partial pivoting on `|·|²`.
    pub fn det(&self, mut m: Vec<Vec<Complex>>) -> Complex {
        let n = m.len();
        let mut det = self.cint(1);
        for col in 0..n {
            let mut best = col;
            let mut best_norm = self.norm_sqr(&m[col][col]);
            for row in col + 1..n {
                let nr = self.norm_sqr(&m[row][col]);
                if nr.cmp(&best_norm).is_some_and(|c| c > 0) {
                    best = row;
                    best_norm = nr;
                }
            }
            if best_norm.is_zero() {
                return self.cint(0);
            }
            if best != col {
                m.swap(best, col);
                det = Complex { re: det.re.neg(), im: det.im.neg() };
            }
            let pivot = m[col][col].clone();
            det = self.mul(&det, &pivot);
            for row in col + 1..n {
                let f = self.div(&m[row][col], &pivot);
                for k in col..n {
                    let t = self.mul(&f, &m[col][k]);
                    m[row][k] = self.sub(&m[row][k], &t);
                }
            }
        }
        det
    }

    /// Schur polynomial as the bialternant ratio at the given points.
    pub fn schur(&self, parts: &[usize], pts: &[Complex]) -> Complex {
        let r = pts.len();
        let alt = |shift: &dyn Fn(usize) -> usize| -> Vec<Vec<Complex>> {
            pts.iter()
                .map(|x| (0..r).map(|j| self.powi(x, shift(j) as i64)).collect())
                .collect()
        };
        let q = self.det(alt(&|j| parts.get(j).copied().unwrap_or(0) + r - 1 - j));
        let v = self.det(alt(&|j| r - 1 - j));
        self.div(&q, &v)
    }

    pub fn to_f64(&self, x: &BigFloat) -> f64 {
        x.to_string().parse().unwrap_or(f64::NAN)
    }

    /// `|x - target| / max(1, |target|)`.
    pub fn rel_error(&mut self, x: &Complex, target: &BigRational) -> BigFloat {
        let t = self.rational(target);
        let diff = Complex { re: x.re.sub(&t, self.p, RM), im: x.im.clone() };
        let scale = if t.abs().cmp(&self.int(1)).is_some_and(|c| c > 0) { t.abs() } else { self.int(1) };
        self.abs(&diff).div(&scale, self.p, RM)
    }

    /// `|x - exact|`.
    pub fn discrepancy(&mut self, x: &Complex, exact: &BigInt) -> BigFloat {
        let t = self.bigint(exact);
        let diff = Complex { re: x.re.sub(&t, self.p, RM), im: x.im.clone() };
        self.abs(&diff)
    }

    /// Whether `x` rounds to `exact`, i.e. `|x - exact| < 1/2`.
    pub fn rounds_to(&mut self, x: &Complex, exact: &BigInt) -> bool {
        let half = self.int(1).div(&self.int(2), self.p, RM);
        self.discrepancy(x, exact).cmp(&half).is_some_and(|c| c < 0)
    }

    /// True when `x < 10^{-exp10}`.
    pub fn below(&mut self, x: &BigFloat, exp10: u32) -> bool {
        let bound = BigFloat::parse(&format!("1e-{exp10}"), astro_float::Radix::Dec, self.p, RM, &mut self.cc);
        x.cmp(&bound).is_some_and(|c| c < 0)
    }

    /// Decimal rendering with the default `astro-float` formatting.
    pub fn render(&self, x: &BigFloat) -> String {
        x.to_string()
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

/// `a` evaluated at `e^{2πi/N}` with at least `digits` correct decimal digits.
pub fn embed_numeric(a: &CycloNum, digits: usize) -> Complex {
    FloatCtx::new(digits).embed(a)
}

/// The Verlinde sum evaluated directly with floating sines and bialternants.
///
/// Shares no arithmetic with the cyclotomic path; the result should be within
/// rounding of the exact integer.
pub fn verlinde_float(
    weights: &WeightSystem,
    g: u32,
    variant: Variant,
    ctx: &mut FloatCtx,
) -> Complex {
    let r = weights.rows();
    let l = weights.level();
    let n = (r + l) as u32;
    let total = weights.total_size() as i64;
    let zs: Vec<Complex> = (0..n as i64).map(|k| ctx.zeta(n, k)).collect();
    let mut acc = ctx.cint(0);
    for s in Subsets::new(n as usize, r) {
        let mut sines = ctx.int(1);
        for &a in &s {
            for t in (0..n as usize).filter(|t| !s.contains(t)) {
                let v = ctx.sin_pi_frac(a as i64 - t as i64, n as i64);
                sines = sines.mul(&v.abs().mul(&ctx.int(2), ctx.p, RM), ctx.p, RM);
            }
        }
        let sine_pow = ctx.real(sines);
        let mut term = ctx.powi(&sine_pow, g as i64 - 1);
        let pts: Vec<Complex> = s.iter().map(|&i| zs[i].clone()).collect();
        let det_exp: i64 = s.iter().map(|&i| i as i64).sum::<i64>() * (-total / r as i64);
        let twist = ctx.zeta(n, det_exp);
        term = ctx.mul(&term, &twist);
        for lam in weights.diagrams() {
            term = ctx.mul(&term, &ctx.schur(lam.parts(), &pts));
        }
        acc = ctx.add(&acc, &term);
    }
    let (num, den): (i64, i64) = match variant {
        Variant::Sl => (r as i64, n as i64),
        Variant::Gl => (l as i64, n as i64),
        Variant::Twisted => (1, 1),
    };
    let f = ctx.int(num).div(&ctx.int(den), ctx.p, RM);
    let f = f.powi(g as usize, ctx.p, RM);
    ctx.scale(&acc, &f)
}

/// The Vafa–Intriligator sum over `l`-subsets, evaluated in floating point.
pub fn intersection_float(mu: &WeightSystem, g: u32, ctx: &mut FloatCtx) -> Complex {
    let r = mu.rows();
    let l = mu.level();
    let n = (r + l) as u32;
    let zs: Vec<Complex> = (0..n as i64).map(|k| ctx.zeta(n, k)).collect();
    let transposed: Vec<YoungDiagram> = mu.diagrams().iter().map(|m| m.transpose()).collect();
    let mut acc = ctx.cint(0);
    for t in Subsets::new(n as usize, l) {
        let pts: Vec<Complex> = t.iter().map(|&i| zs[i].clone()).collect();
        let mut prod = ctx.cint(1);
        for (i, a) in pts.iter().enumerate() {
            prod = ctx.mul(&prod, a);
            for (j, b) in pts.iter().enumerate() {
                if i != j {
                    prod = ctx.mul(&prod, &ctx.sub(a, b));
                }
            }
        }
        let mut term = ctx.powi(&prod, 1 - g as i64);
        for m in &transposed {
            term = ctx.mul(&term, &ctx.schur(m.parts(), &pts));
        }
        acc = ctx.add(&acc, &term);
    }
    let e = l as i64 * (g as i64 - 1);
    let pre = ctx.powi(&ctx.cint(n as i64), e);
    ctx.mul(&acc, &pre)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycloNum;

    fn close(ctx: &mut FloatCtx, x: &Complex, re: f64, im: f64) -> bool {
        (ctx.to_f64(&x.re) - re).abs() < 1e-12 && (ctx.to_f64(&x.im) - im).abs() < 1e-12
    }

    #[test]
    fn embed_examples() {
        let mut ctx = FloatCtx::new(30);
        let i = ctx.embed(&CycloNum::zeta_pow(4, 1));
        assert!(close(&mut ctx, &i, 0.0, 1.0));
        let w = -(&CycloNum::one(3) + &CycloNum::zeta_pow(3, 1));
        let w = ctx.embed(&w);
        let t = 4.0 * std::f64::consts::PI / 3.0;
        assert!(close(&mut ctx, &w, t.cos(), t.sin()));
        let three = ctx.embed(&CycloNum::from_integer(7, 3));
        assert!(close(&mut ctx, &three, 3.0, 0.0));
    }

    #[test]
    fn embed_meets_requested_digits() {
        let mut ctx = FloatCtx::new(60);
        let a = &CycloNum::zeta_pow(12, 5) + &CycloNum::zeta_pow(12, 7);
        // e^{5πi/6} + e^{7πi/6} = 2cos(5π/6) = -√3
        let x = ctx.embed(&a);
        let sqrt3 = ctx.int(3).sqrt(ctx.precision(), RM);
        let err = x.re.add(&sqrt3, ctx.precision(), RM).abs();
        assert!(ctx.below(&err, 55));
        assert!(ctx.below(&x.im.abs(), 55));
    }

    #[test]
    fn chord_norms_match_sines() {
        // |ζ^s - ζ^t|^2 = 4 sin^2(π(s-t)/N)
        let mut ctx = FloatCtx::new(30);
        for n in 2..=12u32 {
            for s in 0..n as i64 {
                for t in 0..n as i64 {
                    if s == t {
                        continue;
                    }
                    let d = &CycloNum::zeta_pow(n, s) - &CycloNum::zeta_pow(n, t);
                    let sq = ctx.embed(&(&d * &d.conj()));
                    let sin = ctx.sin_pi_frac(s - t, n as i64);
                    let p = ctx.precision();
                    let want = sin.mul(&sin, p, RM).mul(&ctx.int(4), p, RM);
                    let err = sq.re.sub(&want, p, RM).abs();
                    assert!(ctx.below(&err, 20), "N={n} s={s} t={t}");
                    assert!(ctx.below(&sq.im.abs(), 20));
                    assert!(sq.re.is_positive());
                }
            }
        }
    }

    #[test]
    fn float_schur_small() {
        let mut ctx = FloatCtx::new(30);
        let pts = vec![ctx.zeta(3, 0), ctx.zeta(3, 1)];
        let s = ctx.schur(&[1, 1], &pts);
        let z = ctx.zeta(3, 1);
        let d = ctx.sub(&s, &z);
        let e = ctx.abs(&d);
        assert!(ctx.below(&e, 25));
    }

    #[test]
    fn rounding_window() {
        let mut ctx = FloatCtx::new(30);
        let x = ctx.real(ctx.int(7).div(&ctx.int(2), ctx.precision(), RM));
        assert!(!ctx.rounds_to(&x, &BigInt::from(4)));
        let y = ctx.real(ctx.int(41).div(&ctx.int(10), ctx.precision(), RM));
        assert!(ctx.rounds_to(&y, &BigInt::from(4)));
        assert!(!ctx.rounds_to(&y, &BigInt::from(5)));
    }
}
