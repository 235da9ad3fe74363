//! Vafa–Intriligator intersection numbers on Quot schemes, and a naive
//! Littlewood–Richardson oracle for the genus-zero degree-zero case.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;

use crate::cyclo::CycloNum;
use crate::diagrams::{WeightSystem, YoungDiagram};
use crate::error::{Error, Result};
use crate::schur::{EvalPoint, SchurAt};
use crate::subsets::Subsets;
use crate::verlinde::{self, check_root, multiplicities, Variant, VerlindeInstance};

/// `ld + rl(n + 1 - g)`.
pub fn quot_dimension(r: i64, l: i64, g: i64, n: i64, d: i64) -> i64 {
    l * d + r * l * (n + 1 - g)
}

/// Data of a top intersection `∫_Q a_μ⃗` on the Quot scheme of rank-`r`,
/// degree `d + rn` quotients of a rank `r + l` bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionInstance {
    g: u32,
    d: i64,
    mu: WeightSystem,
}

impl IntersectionInstance {
    pub fn new(g: u32, d: i64, mu: WeightSystem) -> Result<Self> {
        let r = mu.rows() as i64;
        let l = mu.level() as i64;
        let n = mu.len() as i64;
        let expected = quot_dimension(r, l, g as i64, n, d);
        let found = mu.total_size() as i64;
        if expected != found {
            return Err(Error::DimensionMismatch { expected, found });
        }
        let degree = d + r * n;
        if degree % (r + l) != 0 {
            return Err(Error::QuotDegree { degree, modulus: r + l });
        }
        Ok(IntersectionInstance { g, d, mu })
    }

    pub fn r(&self) -> usize {
        self.mu.rows()
    }

    pub fn l(&self) -> usize {
        self.mu.level()
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn n(&self) -> usize {
        self.mu.len()
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn mu(&self) -> &WeightSystem {
        &self.mu
    }

    pub fn dimension(&self) -> i64 {
        quot_dimension(self.r() as i64, self.l() as i64, self.g as i64, self.n() as i64, self.d)
    }
}

/// Contribution of one `l`-subset `T`:
/// `∏_p S_{μ_p^T}(ζ^T) · (∏ ζ^t · ∏_{t≠u} (ζ^t - ζ^u))^{1-g}`.
fn summand(
    inst: &IntersectionInstance,
    subset: &[usize],
    root: i64,
    distinct: &[(YoungDiagram, u32)],
) -> Result<CycloNum> {
    let order = (inst.r() + inst.l()) as u32;
    let l = inst.l() as i64;
    let at = SchurAt::new(EvalPoint::from_subset(order, subset).with_root_power(root))?;
    let gm = 1 - inst.g() as i64;
    // ∏_{t≠u} (ζ^t - ζ^u) over ordered pairs is (-1)^{l(l-1)/2} Vdm²
    let sign_odd = (l * (l - 1) / 2) % 2 == 1;
    let exps = at.points().exponent_sum();
    let base = if gm >= 0 {
        let v = at.vandermonde();
        &(v * v) * &CycloNum::zeta_pow(order, exps)
    } else {
        let inv = at.vandermonde().inverse()?;
        &(&inv * &inv) * &CycloNum::zeta_pow(order, -exps)
    };
    let base = if sign_odd { -base } else { base };
    let mut term = base.pow(gm.abs())?;
    for (m, mult) in distinct {
        if m.is_empty() {
            continue;
        }
        term = &term * &at.eval(m)?.pow(*mult as i64)?;
    }
    Ok(term)
}

/// `∫_Q a_μ⃗` with `ζ = e^{2πi·root/(r+l)}`.
pub fn intersection_number_with_root(inst: &IntersectionInstance, root: i64) -> Result<BigInt> {
    let r = inst.r();
    let l = inst.l();
    let order = (r + l) as u32;
    check_root(root, order)?;
    let transposed: Vec<YoungDiagram> = inst.mu().diagrams().iter().map(|m| m.transpose()).collect();
    let distinct = multiplicities(&transposed);
    let subsets: Vec<Vec<usize>> = Subsets::new(r + l, l).collect();
    let terms: Vec<CycloNum> = subsets
        .par_iter()
        .map(|t| summand(inst, t, root, &distinct))
        .collect::<Result<_>>()?;
    let total = terms.into_iter().fold(CycloNum::zero(order), |a, b| &a + &b);
    let Some(q) = total.as_rational() else {
        return Err(Error::NonIntegral { what: "intersection sum".into(), value: total.to_string() });
    };
    let e = l as i64 * (inst.g() as i64 - 1);
    let n = BigRational::from_integer(BigInt::from(order));
    let pre = if e >= 0 {
        num_traits::pow(n, e as usize)
    } else {
        num_traits::pow(n.recip(), e.unsigned_abs() as usize)
    };
    let value = q * pre;
    if !value.is_integer() || value.is_negative() {
        return Err(Error::NonIntegral { what: "intersection number".into(), value: value.to_string() });
    }
    Ok(value.to_integer())
}

pub fn intersection_number(inst: &IntersectionInstance) -> Result<BigInt> {
    intersection_number_with_root(inst, 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViReport {
    pub intersection: BigInt,
    /// `twisted(l, r, λ⃗^T)`
    pub verlinde: BigInt,
}

impl ViReport {
    pub fn holds(&self) -> bool {
        self.intersection == self.verlinde
    }
}

/// `∫_Q a_{λ⃗*}` against the twisted Verlinde number of `(l, r, λ⃗^T)`.
pub fn vi_equals_verlinde(g: u32, d: i64, lambdas: &WeightSystem) -> Result<ViReport> {
    let vi = IntersectionInstance::new(g, d, lambdas.conjugate())?;
    let intersection = intersection_number(&vi)?;
    let other = VerlindeInstance::new(g, lambdas.transpose())?;
    let verlinde = verlinde::verlinde(&other, Variant::Twisted)?;
    Ok(ViReport { intersection, verlinde })
}

type Poly = BTreeMap<Vec<usize>, i64>;

/// Diagrams obtained from `parts` by adding a horizontal strip of `k` boxes, inside the box.
fn pieri(parts: &[usize], k: usize, level: usize) -> Vec<Vec<usize>> {
    let r = parts.len();
    let mut out = Vec::new();
    let mut cur = parts.to_vec();
    fn rec(i: usize, left: usize, parts: &[usize], cur: &mut Vec<usize>, level: usize, out: &mut Vec<Vec<usize>>) {
        if i == parts.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // row i may grow up to the old length of row i-1 (horizontal strip) and the box width
        let cap = if i == 0 { level } else { parts[i - 1].min(level) };
        let room = cap.saturating_sub(parts[i]);
        for add in 0..=room.min(left) {
            cur[i] = parts[i] + add;
            rec(i + 1, left - add, parts, cur, level, out);
        }
        cur[i] = parts[i];
    }
    if r == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, k, parts, &mut cur, level, &mut out);
    out
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, sign) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // inserting at `pos` passes over `len - pos` larger-index slots
            let s = if (p.len() - pos) % 2 == 0 { sign } else { -sign };
            out.push((q, s));
        }
    }
    out
}

/// Littlewood–Richardson coefficient `c^{ν*}_{λ μ}` in the cohomology of the
/// Grassmannian whose Schubert classes are the diagrams of the `l × r` box.
///
/// `s_μ` is expanded by Jacobi–Trudi into products of `h_k`, and each `h_k`
/// acts on `s_λ` by the Pieri rule, discarding diagrams that leave the box.
pub fn lr_oracle(lambda: &YoungDiagram, mu: &YoungDiagram, nu: &YoungDiagram) -> u64 {
    let r = lambda.rows();
    let l = lambda.level();
    let m: Vec<usize> = mu.parts().to_vec();
    let mut total: Poly = BTreeMap::new();
    for (perm, sign) in permutations(r) {
        let mut ks = Vec::with_capacity(r);
        let mut ok = true;
        for (i, &p) in perm.iter().enumerate() {
            let k = m[i] as i64 - i as i64 + p as i64;
            if k < 0 || k as usize > l {
                ok = false;
                break;
            }
            ks.push(k as usize);
        }
        if !ok {
            continue;
        }
        let mut poly: Poly = BTreeMap::from([(lambda.parts().to_vec(), 1)]);
        for &k in &ks {
            let mut next: Poly = BTreeMap::new();
            for (shape, c) in &poly {
                for grown in pieri(shape, k, l) {
                    *next.entry(grown).or_default() += c;
                }
            }
            poly = next;
        }
        for (shape, c) in poly {
            *total.entry(shape).or_default() += sign * c;
        }
    }
    let target = nu.conjugate();
    let c = total.get(target.parts()).copied().unwrap_or(0);
    assert!(c >= 0, "negative Littlewood-Richardson coefficient");
    c as u64
}

/// The three-point genus-zero number `⟨σ_λ σ_μ σ_ν⟩` read off the Quot-scheme sum.
pub fn three_point_number(lambda: &YoungDiagram, mu: &YoungDiagram, nu: &YoungDiagram) -> Result<BigInt> {
    let r = lambda.rows();
    let w = WeightSystem::new(r, lambda.level(), vec![lambda.clone(), mu.clone(), nu.clone()])?;
    let inst = IntersectionInstance::new(0, -3 * r as i64, w)?;
    intersection_number(&inst)
}
