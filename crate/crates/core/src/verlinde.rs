//! Verlinde numbers for `SL_r`, `GL_r` and the theta-twisted variant, as exact
//! sums over `r`-subsets of `Z/(r+l)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclo::CycloNum;
use crate::diagrams::{WeightSystem, YoungDiagram};
use crate::error::{Error, Result};
use crate::schur::{EvalPoint, SchurAt};
use crate::subsets::Subsets;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Sl,
    Gl,
    Twisted,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Sl, Variant::Gl, Variant::Twisted];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Sl => "sl",
            Variant::Gl => "gl",
            Variant::Twisted => "twisted",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sl" => Ok(Variant::Sl),
            "gl" => Ok(Variant::Gl),
            "twisted" => Ok(Variant::Twisted),
            other => Err(Error::Parse(format!("unknown variant {other:?}"))),
        }
    }
}

/// Genus plus a weight system whose total size is divisible by `rl`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerlindeInstance {
    g: u32,
    weights: WeightSystem,
}

impl VerlindeInstance {
    pub fn new(g: u32, weights: WeightSystem) -> Result<Self> {
        let rl = weights.rows() * weights.level();
        if !weights.total_size().is_multiple_of(rl) {
            return Err(Error::Divisibility { total: weights.total_size(), modulus: rl });
        }
        Ok(VerlindeInstance { g, weights })
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn r(&self) -> usize {
        self.weights.rows()
    }

    pub fn l(&self) -> usize {
        self.weights.level()
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    /// The instance on the other side of rank-level duality: `(l, r, λ⃗^T)`.
    pub fn transpose(&self) -> VerlindeInstance {
        VerlindeInstance { g: self.g, weights: self.weights.transpose() }
    }

    fn order(&self) -> u32 {
        (self.r() + self.l()) as u32
    }
}

/// Distinct diagrams with multiplicities, so each Schur value is computed once per subset.
pub(crate) fn multiplicities(diagrams: &[YoungDiagram]) -> Vec<(YoungDiagram, u32)> {
    let mut counts: BTreeMap<&YoungDiagram, u32> = BTreeMap::new();
    for d in diagrams {
        *counts.entry(d).or_default() += 1;
    }
    counts.into_iter().map(|(d, c)| (d.clone(), c)).collect()
}

pub(crate) fn check_root(power: i64, order: u32) -> Result<()> {
    if power.gcd(&(order as i64)) != 1 {
        return Err(Error::NotCoprime { power, order: order as i64 });
    }
    Ok(())
}

/// One subset's contribution to the unnormalized sum.
///
/// The sine product `∏_{s∈S, t∉S} |2 sin π(s-t)/N|^{g-1}` is carried as
/// `N^{r(g-1)} · |Vdm(ζ^S)|^{2(1-g)}`; the `N`-power is factored out of the sum.
fn summand(
    inst: &VerlindeInstance,
    subset: &[usize],
    root: i64,
    distinct: &[(YoungDiagram, u32)],
) -> Result<CycloNum> {
    let order = inst.order();
    let r = inst.r() as i64;
    let pts = EvalPoint::from_subset(order, subset).with_root_power(root);
    let at = SchurAt::new(pts)?;
    let gm = 1 - inst.g() as i64;
    let vdm_sq = if gm >= 0 {
        at.vandermonde() * &at.vandermonde().conj()
    } else {
        let inv = at.vandermonde().inverse()?;
        &inv * &inv.conj()
    };
    let mut term = vdm_sq.pow(gm.abs())?;
    let shift = -(inst.weights().total_size() as i64 / r) * at.points().exponent_sum();
    term = &term * &CycloNum::zeta_pow(order, shift);
    for (lam, mult) in distinct {
        if lam.is_empty() {
            continue;
        }
        term = &term * &at.eval(lam)?.pow(*mult as i64)?;
    }
    Ok(term)
}

/// Every subset with its exact summand, in lexicographic subset order.
pub fn summands(inst: &VerlindeInstance, root: i64) -> Result<Vec<(Vec<usize>, CycloNum)>> {
    check_root(root, inst.order())?;
    let distinct = multiplicities(inst.weights().diagrams());
    let subsets: Vec<Vec<usize>> = Subsets::new(inst.order() as usize, inst.r()).collect();
    subsets
        .into_par_iter()
        .map(|s| summand(inst, &s, root, &distinct).map(|t| (s, t)))
        .collect()
}

fn rational_pow(base: i64, exp: i64) -> BigRational {
    let b = BigRational::from_integer(BigInt::from(base));
    if exp >= 0 {
        num_traits::pow(b, exp as usize)
    } else {
        num_traits::pow(b.recip(), exp.unsigned_abs() as usize)
    }
}

fn dump(summands: &[(Vec<usize>, CycloNum)]) -> String {
    summands
        .iter()
        .map(|(s, t)| format!("S={s:?}: {t}"))
        .collect::<Vec<_>>()
        .join("; ")
}

/// The prefactor-free sum, i.e. the twisted Verlinde number as a rational,
/// evaluated with `ζ` replaced by `ζ^root`.
pub fn twisted_sum(inst: &VerlindeInstance, root: i64) -> Result<BigRational> {
    let terms = summands(inst, root)?;
    let order = inst.order();
    let total = terms
        .par_iter()
        .map(|(_, t)| t.clone())
        .reduce(|| CycloNum::zero(order), |a, b| &a + &b);
    let Some(q) = total.as_rational() else {
        return Err(Error::NonIntegral {
            what: "Verlinde sum".into(),
            value: format!("{total} from {}", dump(&terms)),
        });
    };
    let n = order as i64;
    Ok(q * rational_pow(n, inst.r() as i64 * (inst.g() as i64 - 1)))
}

fn prefactor(inst: &VerlindeInstance, variant: Variant) -> BigRational {
    let g = inst.g() as i64;
    let n = inst.order() as i64;
    match variant {
        Variant::Sl => rational_pow(inst.r() as i64, g) * rational_pow(n, -g),
        Variant::Gl => rational_pow(inst.l() as i64, g) * rational_pow(n, -g),
        Variant::Twisted => rational_pow(1, 0),
    }
}

fn to_count(value: BigRational, what: &str, inst: &VerlindeInstance, root: i64) -> Result<BigInt> {
    if !value.is_integer() || value.is_negative() {
        let detail = summands(inst, root).map(|t| dump(&t)).unwrap_or_default();
        return Err(Error::NonIntegral { what: what.into(), value: format!("{value} from {detail}") });
    }
    Ok(value.to_integer())
}

/// A Verlinde number of the given variant with `ζ = e^{2πi·root/(r+l)}`.
pub fn verlinde_with_root(inst: &VerlindeInstance, variant: Variant, root: i64) -> Result<BigInt> {
    let value = twisted_sum(inst, root)? * prefactor(inst, variant);
    to_count(value, &format!("{variant} Verlinde number"), inst, root)
}

pub fn verlinde(inst: &VerlindeInstance, variant: Variant) -> Result<BigInt> {
    verlinde_with_root(inst, variant, 1)
}

/// All three variants from one subset sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerlindeValues {
    pub sl: BigInt,
    pub gl: BigInt,
    pub twisted: BigInt,
}

impl VerlindeValues {
    pub fn get(&self, variant: Variant) -> &BigInt {
        match variant {
            Variant::Sl => &self.sl,
            Variant::Gl => &self.gl,
            Variant::Twisted => &self.twisted,
        }
    }

    /// `gl·r^g = sl·l^g` and `twisted·r^g = sl·(r+l)^g`.
    pub fn cross_relations_hold(&self, r: usize, l: usize, g: u32) -> bool {
        let pow = |b: usize| num_traits::pow(BigInt::from(b), g as usize);
        &self.gl * pow(r) == &self.sl * pow(l) && &self.twisted * pow(r) == &self.sl * pow(r + l)
    }
}

pub fn verlinde_all(inst: &VerlindeInstance, root: i64) -> Result<VerlindeValues> {
    let sum = twisted_sum(inst, root)?;
    let mut out = Vec::with_capacity(3);
    for v in Variant::ALL {
        let value = &sum * prefactor(inst, v);
        out.push(to_count(value, &format!("{v} Verlinde number"), inst, root)?);
    }
    let twisted = out.pop().unwrap_or_default();
    let gl = out.pop().unwrap_or_default();
    let sl = out.pop().unwrap_or_default();
    Ok(VerlindeValues { sl, gl, twisted })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankLevelReport {
    /// `sl(r, l, λ⃗)`
    pub sl: BigInt,
    /// `gl(l, r, λ⃗^T)`
    pub gl_transposed: BigInt,
    /// `twisted(r, l, λ⃗)`
    pub twisted: BigInt,
    /// `twisted(l, r, λ⃗^T)`
    pub twisted_transposed: BigInt,
}

impl RankLevelReport {
    pub fn untwisted_equal(&self) -> bool {
        self.sl == self.gl_transposed
    }

    pub fn twisted_equal(&self) -> bool {
        self.twisted == self.twisted_transposed
    }

    pub fn holds(&self) -> bool {
        self.untwisted_equal() && self.twisted_equal()
    }
}

/// Compares both sides of rank-level duality at the level of dimensions.
pub fn check_rank_level(inst: &VerlindeInstance) -> Result<RankLevelReport> {
    let here = verlinde_all(inst, 1)?;
    let there = verlinde_all(&inst.transpose(), 1)?;
    Ok(RankLevelReport {
        sl: here.sl,
        gl_transposed: there.gl,
        twisted: here.twisted,
        twisted_transposed: there.twisted,
    })
}

impl fmt::Display for VerlindeValues {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sl={} gl={} twisted={}", self.sl, self.gl, self.twisted)
    }
}
