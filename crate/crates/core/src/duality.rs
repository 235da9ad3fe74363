//! Strange-duality instances: admissibility, parabolic degrees, the duality
//! and rotation actions, and the degree-normalization schedule.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::diagrams::{WeightSystem, YoungDiagram};
use crate::error::{Error, Result};
use crate::quot::IntersectionInstance;
use crate::verlinde::{self, Variant, VerlindeInstance};

/// `(r, l, g, n, d, đ, λ⃗)`: rank-`r` bundles of degree `d` against rank-`l`
/// bundles of degree `đ`, with parabolic weights at `n` points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InstanceRepr", into = "InstanceRepr")]
pub struct DualityInstance {
    g: u32,
    d: i64,
    dd: i64,
    weights: WeightSystem,
}

#[derive(Clone, Serialize, Deserialize)]
struct InstanceRepr {
    r: usize,
    l: usize,
    g: u32,
    n: usize,
    d: i64,
    dd: i64,
    diagrams: Vec<String>,
}

impl TryFrom<InstanceRepr> for DualityInstance {
    type Error = Error;
    fn try_from(repr: InstanceRepr) -> Result<Self> {
        if repr.n != repr.diagrams.len() {
            return Err(Error::Parse(format!("n = {} but {} diagrams given", repr.n, repr.diagrams.len())));
        }
        let weights = WeightSystem::parse(&repr.diagrams, repr.r, repr.l)?;
        Ok(DualityInstance::new(repr.g, repr.d, repr.dd, weights))
    }
}

impl From<DualityInstance> for InstanceRepr {
    fn from(inst: DualityInstance) -> Self {
        InstanceRepr {
            r: inst.r(),
            l: inst.l(),
            g: inst.g,
            n: inst.n(),
            d: inst.d,
            dd: inst.dd,
            diagrams: inst.weights.texts(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    R,
    L,
}

/// Integer data attached to an instance by the admissibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admissibility {
    /// `(|λ⃗| + ld + rđ) mod rl`
    pub residue: i64,
    /// `δ = |λ⃗| / (rl)`
    pub delta: BigRational,
    /// `g - 1 - (ld + rđ + |λ⃗|)/(rl)`, present when admissible
    pub line_degree: Option<i64>,
}

impl Admissibility {
    pub fn admissible(&self) -> bool {
        self.residue == 0
    }
}

/// `deg + |λ⃗|/l`.
pub fn parabolic_degree(deg: i64, weights: &WeightSystem) -> BigRational {
    BigRational::from_integer(deg.into())
        + BigRational::new(BigInt::from(weights.total_size()), BigInt::from(weights.level()))
}

/// `(deg + |λ⃗|/l) / r`, the ordinary slope shifted by `δ`.
pub fn parabolic_slope(deg: i64, weights: &WeightSystem) -> BigRational {
    parabolic_degree(deg, weights) / BigRational::from_integer(BigInt::from(weights.rows()))
}

impl DualityInstance {
    pub fn new(g: u32, d: i64, dd: i64, weights: WeightSystem) -> Self {
        DualityInstance { g, d, dd, weights }
    }

    pub fn r(&self) -> usize {
        self.weights.rows()
    }

    pub fn l(&self) -> usize {
        self.weights.level()
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn dd(&self) -> i64 {
        self.dd
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    pub fn total_weight(&self) -> i64 {
        self.weights.total_size() as i64
    }

    fn rl(&self) -> i64 {
        (self.r() * self.l()) as i64
    }

    /// `|λ⃗| + ld + rđ`.
    pub fn charge(&self) -> i64 {
        self.total_weight() + self.l() as i64 * self.d + self.r() as i64 * self.dd
    }

    pub fn admissibility(&self) -> Admissibility {
        let rl = self.rl();
        let charge = self.charge();
        let residue = charge.rem_euclid(rl);
        let delta = BigRational::new(BigInt::from(self.total_weight()), BigInt::from(rl));
        let line_degree = (residue == 0).then(|| self.g as i64 - 1 - charge / rl);
        Admissibility { residue, delta, line_degree }
    }

    pub fn is_admissible(&self) -> bool {
        self.admissibility().admissible()
    }

    fn require_admissible(&self) -> Result<()> {
        let adm = self.admissibility();
        if !adm.admissible() {
            return Err(Error::Inadmissible { value: self.charge(), modulus: self.rl() });
        }
        Ok(())
    }

    /// `λ_p ↦ λ_p*`, `d ↦ -d`, `đ ↦ -đ`.
    pub fn apply_duality(&self) -> DualityInstance {
        DualityInstance { g: self.g, d: -self.d, dd: -self.dd, weights: self.weights.conjugate() }
    }

    /// One elementary rotation at `point`.
    ///
    /// The r-side rotates `λ_p` (needs `a_r = 0`) and lowers `d`; the l-side
    /// rotates `λ_p^T`, i.e. adds a full column (needs `a_1 < l`), and lowers `đ`.
    pub fn apply_rotation(&self, point: usize, side: Side) -> Result<DualityInstance> {
        let lam = self.point(point)?;
        let mut out = self.clone();
        match side {
            Side::R => {
                out.weights.set(point, lam.rotate()?)?;
                out.d -= 1;
            }
            Side::L => {
                let t = lam.transpose().rotate().map_err(|_| {
                    Error::RotationPrecondition(format!("{lam} already has a full first row"))
                })?;
                out.weights.set(point, t.transpose())?;
                out.dd -= 1;
            }
        }
        Ok(out)
    }

    /// Inverse of [`DualityInstance::apply_rotation`].
    ///
    /// An empty diagram is read as the full column it is equivalent to, so it
    /// can always be rotated backwards.
    pub fn apply_inverse_rotation(&self, point: usize, side: Side) -> Result<DualityInstance> {
        let lam = self.point(point)?;
        let (r, l) = (self.r(), self.l());
        let mut out = self.clone();
        match side {
            Side::R => {
                let next = if lam.is_empty() {
                    let mut parts = vec![l; r - 1];
                    parts.push(0);
                    YoungDiagram::from_parts(&parts, r, l)?
                } else {
                    lam.unrotate()?
                };
                out.weights.set(point, next)?;
                out.d += 1;
            }
            Side::L => {
                let next = if lam.is_empty() {
                    YoungDiagram::from_parts(&vec![l - 1; r], r, l)?
                } else if lam.parts()[r - 1] > 0 {
                    let parts: Vec<usize> = lam.parts().iter().map(|a| a - 1).collect();
                    YoungDiagram::from_parts(&parts, r, l)?
                } else {
                    return Err(Error::RotationPrecondition(format!("{lam} has no full column to remove")));
                };
                out.weights.set(point, next)?;
                out.dd += 1;
            }
        }
        Ok(out)
    }

    /// Tensoring by a degree-`s` line bundle: `d ↦ d + rs`.
    pub fn twist(&self, s: i64) -> DualityInstance {
        DualityInstance { d: self.d + self.r() as i64 * s, ..self.clone() }
    }

    pub fn add_empty_point(&self) -> DualityInstance {
        let mut out = self.clone();
        out.weights
            .push(YoungDiagram::empty(self.r(), self.l()))
            .expect("same rectangle");
        out
    }

    fn point(&self, point: usize) -> Result<&YoungDiagram> {
        self.weights.diagrams().get(point).ok_or_else(|| {
            Error::RotationPrecondition(format!("point {point} out of range (n = {})", self.n()))
        })
    }
}

/// Replayable record of how [`normalize`] moved an instance.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationPlan {
    pub added_points: usize,
    /// Forward r-side rotations per point of the output instance.
    pub r_side_rotations: Vec<u32>,
    /// l-side rotations per point; negative counts are inverse rotations.
    pub l_side_rotations: Vec<i64>,
    pub twist: i64,
}

impl NormalizationPlan {
    pub fn is_identity(&self) -> bool {
        self.added_points == 0
            && self.twist == 0
            && self.r_side_rotations.iter().all(|&k| k == 0)
            && self.l_side_rotations.iter().all(|&k| k == 0)
    }

    /// Adds the points, then performs l-side rotations, r-side rotations and the twist.
    pub fn replay(&self, inst: &DualityInstance) -> Result<DualityInstance> {
        let n = inst.n() + self.added_points;
        if self.r_side_rotations.len() != n || self.l_side_rotations.len() != n {
            return Err(Error::Parse(format!(
                "plan covers {} / {} points, instance has {n} after additions",
                self.r_side_rotations.len(),
                self.l_side_rotations.len()
            )));
        }
        let mut out = inst.clone();
        for _ in 0..self.added_points {
            out = out.add_empty_point();
        }
        for (p, &k) in self.l_side_rotations.iter().enumerate() {
            for _ in 0..k.unsigned_abs() {
                out = if k > 0 {
                    out.apply_rotation(p, Side::L)?
                } else {
                    out.apply_inverse_rotation(p, Side::L)?
                };
            }
        }
        for (p, &k) in self.r_side_rotations.iter().enumerate() {
            for _ in 0..k {
                out = out.apply_rotation(p, Side::R)?;
            }
        }
        Ok(out.twist(self.twist))
    }
}

/// Which of the normalization postconditions an instance meets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Postconditions {
    /// `đ' = 0`
    pub dd_zero: bool,
    /// `d' + rn'` is a multiple of `r` above the threshold
    pub degree_multiple: bool,
    /// `|ν⃗*| = n'rl + ld' + rđ' + rl(1-g)`
    pub dimension_identity: bool,
    /// `d' + rn'` is a multiple of `r + l`
    pub quot_degree: bool,
}

impl Postconditions {
    pub fn all(&self) -> bool {
        self.dd_zero && self.degree_multiple && self.dimension_identity && self.quot_degree
    }
}

pub fn postconditions(inst: &DualityInstance, threshold: i64) -> Postconditions {
    let (r, l, n) = (inst.r() as i64, inst.l() as i64, inst.n() as i64);
    let g = inst.g() as i64;
    let deg = inst.d() + r * n;
    let conj_size = n * r * l - inst.total_weight();
    Postconditions {
        dd_zero: inst.dd() == 0,
        degree_multiple: deg % r == 0 && deg > threshold,
        dimension_identity: conj_size == n * r * l + l * inst.d() + r * inst.dd() + r * l * (1 - g),
        quot_degree: deg.rem_euclid(r + l) == 0,
    }
}

pub const DEFAULT_THRESHOLD: i64 = 0;

/// Brings an admissible instance to `đ' = 0`, `|ν⃗*| = n'rl + ld' + rl(1-g)`
/// and `d' + rn'` a multiple of both `r` and `r + l` above `threshold`.
///
/// Only freshly added empty points are rotated. The schedule is deterministic:
/// l-side rotations absorb `đ`, r-side rotations make `d ≡ 0 mod r`, the twist
/// fixes `d'` exactly, and trailing empty points adjust `d' + rn'`.
pub fn normalize(inst: &DualityInstance, threshold: i64) -> Result<(DualityInstance, NormalizationPlan)> {
    inst.require_admissible()?;
    let (r, l) = (inst.r() as i64, inst.l() as i64);
    let mut plan = NormalizationPlan {
        r_side_rotations: vec![0; inst.n()],
        l_side_rotations: vec![0; inst.n()],
        ..Default::default()
    };
    let add = |plan: &mut NormalizationPlan, rr: u32, ll: i64| {
        plan.added_points += 1;
        plan.r_side_rotations.push(rr);
        plan.l_side_rotations.push(ll);
    };

    let mut dd = inst.dd();
    let forward_cap = l;
    let inverse_cap = (l - 1).max(1);
    while dd > 0 {
        let k = dd.min(forward_cap);
        add(&mut plan, 0, k);
        dd -= k;
    }
    while dd < 0 {
        let k = (-dd).min(inverse_cap);
        add(&mut plan, 0, -k);
        dd += k;
    }

    let q = inst.d().rem_euclid(r);
    if q > 0 {
        add(&mut plan, q as u32, 0);
    }

    let staged = plan.replay(inst)?;
    let nu = staged.total_weight();
    let g = inst.g() as i64;
    let target = -nu / l - r * (1 - g);
    plan.twist = (target - staged.d()) / r;
    debug_assert_eq!((target - staged.d()) % r, 0);

    let mut n = staged.n() as i64;
    let step = (r + l) / num_integer::gcd(r, r + l);
    for _ in 0..=step + (threshold - target).max(0) / r + 1 {
        let deg = target + r * n;
        if deg > threshold && deg % (r + l) == 0 {
            break;
        }
        add(&mut plan, 0, 0);
        n += 1;
    }

    let out = plan.replay(inst)?;
    debug_assert!(postconditions(&out, threshold).all());
    Ok((out, plan))
}

/// The Quot-scheme instance `μ⃗ = ν⃗*` attached to a normalized instance.
pub fn intersection_instance(normalized: &DualityInstance) -> Result<IntersectionInstance> {
    IntersectionInstance::new(normalized.g(), normalized.d(), normalized.weights().conjugate())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub normalized: DualityInstance,
    pub plan: NormalizationPlan,
    /// `twisted(r, l, ν⃗)`
    pub r_side: BigInt,
    /// `twisted(l, r, ν⃗^T)`
    pub l_side: BigInt,
}

impl Verdict {
    pub fn equal(&self) -> bool {
        self.r_side == self.l_side
    }
}

/// Normalizes and compares the twisted Verlinde numbers of both sides.
pub fn dimension_verdict(inst: &DualityInstance, threshold: i64) -> Result<Verdict> {
    let (normalized, plan) = normalize(inst, threshold)?;
    let here = VerlindeInstance::new(normalized.g(), normalized.weights().clone())?;
    let r_side = verlinde::verlinde(&here, Variant::Twisted)?;
    let l_side = verlinde::verlinde(&here.transpose(), Variant::Twisted)?;
    Ok(Verdict { normalized, plan, r_side, l_side })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(r: usize, l: usize, g: u32, d: i64, dd: i64, diagrams: &[&str]) -> DualityInstance {
        let t: Vec<String> = diagrams.iter().map(|s| s.to_string()).collect();
        DualityInstance::new(g, d, dd, WeightSystem::parse(&t, r, l).unwrap())
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn admissibility_examples() {
        let a = inst(2, 2, 0, 0, 0, &["2,2"]).admissibility();
        assert!(a.admissible());
        assert_eq!(a.delta, q(1, 1));
        assert!(!inst(2, 1, 0, 0, 0, &["1,0"]).is_admissible());
        assert!(inst(2, 1, 0, 1, 0, &["1,0"]).is_admissible());
        let a = inst(2, 3, 1, 1, 1, &["1,0"]).admissibility();
        assert!(a.admissible());
        assert_eq!(a.line_degree, Some(-1));
    }

    #[test]
    fn parabolic_degree_examples() {
        assert_eq!(parabolic_degree(0, &WeightSystem::empty(2, 3)), q(0, 1));
        let w = WeightSystem::parse(&["2,1".to_string()], 2, 3).unwrap();
        assert_eq!(parabolic_degree(1, &w), q(2, 1));
        assert_eq!(parabolic_slope(1, &w), q(1, 1));
    }

    #[test]
    fn duality_is_an_involution() {
        let e = inst(2, 3, 1, 0, 0, &[]);
        assert_eq!(e.apply_duality(), e);
        let i = inst(2, 3, 1, 2, 3, &["1,0", "3,2"]);
        assert!(i.is_admissible());
        assert_eq!(i.apply_duality().apply_duality(), i);
        assert!(i.apply_duality().is_admissible());
    }

    #[test]
    fn rotation_examples() {
        let i = inst(2, 3, 1, 0, 0, &["0,0"]);
        let rot = i.apply_rotation(0, Side::R).unwrap();
        assert_eq!(rot.weights().texts(), vec!["3,0"]);
        assert_eq!(rot.d(), -1);
        assert_eq!(rot.apply_inverse_rotation(0, Side::R).unwrap(), i);
        let lrot = i.apply_rotation(0, Side::L).unwrap();
        assert_eq!(lrot.weights().texts(), vec!["1,1"]);
        assert_eq!(lrot.dd(), -1);
        assert_eq!(lrot.apply_inverse_rotation(0, Side::L).unwrap(), i);
        assert!(rot.apply_rotation(0, Side::R).is_ok());
        assert!(inst(2, 3, 1, 0, 0, &["1,1"]).apply_rotation(0, Side::R).is_err());
        assert!(inst(2, 3, 1, 0, 0, &["3,0"]).apply_rotation(0, Side::L).is_err());
    }

    #[test]
    fn rotations_preserve_residue_exhaustive() {
        for r in 1..=3 {
            for l in 1..=3 {
                for lam in YoungDiagram::all(r, l) {
                    let base = DualityInstance::new(1, 2, -1, WeightSystem::new(r, l, vec![lam]).unwrap());
                    let res = base.admissibility().residue;
                    for side in [Side::R, Side::L] {
                        if let Ok(x) = base.apply_rotation(0, side) {
                            assert_eq!(x.admissibility().residue, res);
                            assert_eq!(x.apply_inverse_rotation(0, side).unwrap(), base);
                        }
                        if let Ok(x) = base.apply_inverse_rotation(0, side) {
                            assert_eq!(x.admissibility().residue, res);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn normalize_identity_on_normalized_input() {
        let (out, plan) = normalize(&inst(2, 1, 1, 0, 0, &[]), 0).unwrap();
        let (again, plan2) = normalize(&out, 0).unwrap();
        assert!(!plan.is_identity());
        assert!(plan2.is_identity(), "{plan2:?}");
        assert_eq!(again, out);
    }

    #[test]
    fn normalize_small_case() {
        let i = inst(2, 1, 1, 0, 0, &[]);
        let (out, plan) = normalize(&i, 0).unwrap();
        assert!(postconditions(&out, 0).all(), "{out:?}");
        assert_eq!(plan.replay(&i).unwrap(), out);
        let vi = intersection_instance(&out).unwrap();
        assert_eq!(vi.dimension(), out.weights().conjugate().total_size() as i64);
    }

    #[test]
    fn normalize_rejects_inadmissible() {
        let err = normalize(&inst(2, 1, 0, 0, 0, &["1,0"]), 0).unwrap_err();
        assert_eq!(err, Error::Inadmissible { value: 1, modulus: 2 });
    }

    #[test]
    fn verdict_examples() {
        let v = dimension_verdict(&inst(2, 3, 2, 1, 1, &["1,0"]), 0).unwrap();
        assert!(v.equal(), "{v:?}");
        let v = dimension_verdict(&inst(2, 2, 1, 0, 0, &["2,1", "1,0"]), 0).unwrap();
        assert!(v.equal(), "{v:?}");
        assert!(matches!(
            dimension_verdict(&inst(2, 1, 0, 0, 0, &["1,0"]), 0),
            Err(Error::Inadmissible { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let i = inst(2, 3, 1, -2, 4, &["3,1", "0,0"]);
        let text = serde_json::to_string(&i).unwrap();
        assert_eq!(text, r#"{"r":2,"l":3,"g":1,"n":2,"d":-2,"dd":4,"diagrams":["3,1","0,0"]}"#);
        assert_eq!(serde_json::from_str::<DualityInstance>(&text).unwrap(), i);
    }
}
