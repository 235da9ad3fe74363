//! Alternants, Vandermonde determinants and Schur polynomials evaluated at
//! roots of unity.

use crate::cyclo::CycloNum;
use crate::diagrams::YoungDiagram;
use crate::error::{Error, Result};
use crate::subsets::complement;

/// A tuple of roots of unity `(ζ_N^{s})_{s ∈ exps}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvalPoint {
    order: u32,
    exps: Vec<i64>,
}

impl EvalPoint {
    pub fn new(order: u32, exps: Vec<i64>) -> Self {
        EvalPoint { order, exps }
    }

    pub fn from_subset(order: u32, subset: &[usize]) -> Self {
        EvalPoint { order, exps: subset.iter().map(|&s| s as i64).collect() }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    /// The same tuple read with `ζ` replaced by `ζ^a`.
    pub fn with_root_power(&self, a: i64) -> Self {
        EvalPoint { order: self.order, exps: self.exps.iter().map(|e| e * a).collect() }
    }

    pub fn values(&self) -> Vec<CycloNum> {
        self.exps.iter().map(|&e| CycloNum::zeta_pow(self.order, e)).collect()
    }

    pub fn distinct(&self) -> bool {
        let n = self.order as i64;
        let mut seen: Vec<i64> = self.exps.iter().map(|e| e.rem_euclid(n)).collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// Sum of the exponents, so that `∏ ζ^s = ζ^{sum}`.
    pub fn exponent_sum(&self) -> i64 {
        self.exps.iter().sum()
    }
}

/// Determinant over `Q(ζ_N)` by Gaussian elimination; each pivot is inverted once.
pub fn det(order: u32, mut m: Vec<Vec<CycloNum>>) -> CycloNum {
    let n = m.len();
    match n {
        0 => return CycloNum::one(order),
        1 => return m[0][0].clone(),
        2 => return &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {}
    }
    let mut acc = CycloNum::one(order);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return CycloNum::zero(order);
        };
        if piv != col {
            m.swap(piv, col);
            acc = -acc;
        }
        acc = &acc * &m[col][col];
        let inv = m[col][col].inverse().expect("nonzero pivot");
        for row in col + 1..n {
            if m[row][col].is_zero() {
                continue;
            }
            let f = &m[row][col] * &inv;
            for k in col + 1..n {
                let t = &f * &m[col][k];
                m[row][k] = &m[row][k] - &t;
            }
        }
    }
    acc
}

fn check_size(lambda: &YoungDiagram, pts: &EvalPoint) -> Result<()> {
    if pts.len() != lambda.rows() {
        return Err(Error::SizeMismatch { expected: lambda.rows(), found: pts.len() });
    }
    Ok(())
}

/// `Q_λ = det(x_i^{a_j + r - j})` at the points.
pub fn q_eval(lambda: &YoungDiagram, pts: &EvalPoint) -> Result<CycloNum> {
    check_size(lambda, pts)?;
    let r = lambda.rows();
    let m = pts
        .exps()
        .iter()
        .map(|&s| {
            (0..r)
                .map(|j| CycloNum::zeta_pow(pts.order(), s * (lambda.parts()[j] + r - 1 - j) as i64))
                .collect()
        })
        .collect();
    Ok(det(pts.order(), m))
}

/// `Vdm = Q_0 = ∏_{i<j} (x_i - x_j)`.
pub fn vandermonde(pts: &EvalPoint) -> CycloNum {
    let vals = pts.values();
    let mut acc = CycloNum::one(pts.order());
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            acc = &acc * &(&vals[i] - &vals[j]);
        }
    }
    acc
}

/// Schur polynomials at a fixed distinct-point tuple, sharing `1/Vdm`.
#[derive(Clone, Debug)]
pub struct SchurAt {
    pts: EvalPoint,
    vdm: CycloNum,
    vdm_inv: CycloNum,
}

impl SchurAt {
    pub fn new(pts: EvalPoint) -> Result<Self> {
        if !pts.distinct() {
            return Err(Error::RepeatedPoints(pts.order()));
        }
        let vdm = vandermonde(&pts);
        let vdm_inv = vdm.inverse()?;
        Ok(SchurAt { pts, vdm, vdm_inv })
    }

    pub fn points(&self) -> &EvalPoint {
        &self.pts
    }

    pub fn vandermonde(&self) -> &CycloNum {
        &self.vdm
    }

    pub fn eval(&self, lambda: &YoungDiagram) -> Result<CycloNum> {
        if lambda.is_empty() {
            check_size(lambda, &self.pts)?;
            return Ok(CycloNum::one(self.pts.order()));
        }
        Ok(&q_eval(lambda, &self.pts)? * &self.vdm_inv)
    }
}

/// `S_λ = Q_λ / Vdm` at pairwise distinct roots of unity.
pub fn schur_eval(lambda: &YoungDiagram, pts: &EvalPoint) -> Result<CycloNum> {
    check_size(lambda, pts)?;
    SchurAt::new(pts.clone())?.eval(lambda)
}

/// `e_0, ..., e_k` of the given values.
pub fn elementary_symmetric(order: u32, values: &[CycloNum]) -> Vec<CycloNum> {
    let mut e = vec![CycloNum::one(order)];
    for x in values {
        e.push(CycloNum::zero(order));
        for k in (1..e.len()).rev() {
            let t = &e[k - 1] * x;
            e[k] = &e[k] + &t;
        }
    }
    e
}

/// Dual Jacobi–Trudi determinant `det(e_{λ^T_i - i + j})`.
///
/// `e_values` is `(e_0, ..., e_m)`; indices outside that range count as zero.
pub fn jacobi_trudi_eval(lambda: &YoungDiagram, e_values: &[CycloNum]) -> CycloNum {
    let order = e_values[0].order();
    let cols = lambda.transpose();
    let k = cols.parts().iter().take_while(|&&c| c > 0).count();
    let e = |idx: i64| -> CycloNum {
        if idx < 0 || idx as usize >= e_values.len() {
            CycloNum::zero(order)
        } else {
            e_values[idx as usize].clone()
        }
    };
    let m = (0..k)
        .map(|i| (0..k).map(|j| e(cols.parts()[i] as i64 - i as i64 + j as i64)).collect())
        .collect();
    det(order, m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReciprocityReport {
    pub lhs: CycloNum,
    pub rhs: CycloNum,
}

impl ReciprocityReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Both sides of `S_λ(ζ^S) = (-1)^{|λ|} S_{λ^T}(ζ^T)`, `T` the complement of `S` in `Z/(r+l)`.
pub fn reciprocity_check(lambda: &YoungDiagram, subset: &[usize]) -> Result<ReciprocityReport> {
    let n = lambda.rows() + lambda.level();
    let order = n as u32;
    let lhs = schur_eval(lambda, &EvalPoint::from_subset(order, subset))?;
    let t = complement(subset, n);
    let mut rhs = schur_eval(&lambda.transpose(), &EvalPoint::from_subset(order, &t))?;
    if lambda.size() % 2 == 1 {
        rhs = -rhs;
    }
    Ok(ReciprocityReport { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subsets::Subsets;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dg(parts: &[usize], r: usize, l: usize) -> YoungDiagram {
        YoungDiagram::from_parts(parts, r, l).unwrap()
    }

    fn z(n: u32, e: i64) -> CycloNum {
        CycloNum::zeta_pow(n, e)
    }

    #[test]
    fn q_examples() {
        let pts = EvalPoint::new(7, vec![0, 2, 5]);
        assert_eq!(q_eval(&YoungDiagram::empty(3, 4), &pts).unwrap(), vandermonde(&pts));
        assert_eq!(q_eval(&dg(&[3], 1, 4), &EvalPoint::new(5, vec![2])).unwrap(), z(5, 6));
        assert!(q_eval(&dg(&[2, 1], 2, 2), &EvalPoint::new(5, vec![1, 1])).unwrap().is_zero());
        assert_eq!(
            q_eval(&dg(&[1], 1, 1), &EvalPoint::new(5, vec![1, 2])),
            Err(Error::SizeMismatch { expected: 1, found: 2 })
        );
    }

    #[test]
    fn schur_examples() {
        let pts = EvalPoint::new(3, vec![0, 1]);
        assert!(schur_eval(&YoungDiagram::empty(2, 4), &pts).unwrap().is_one());
        assert_eq!(schur_eval(&dg(&[1, 0], 2, 1), &pts).unwrap(), &CycloNum::one(3) + &z(3, 1));
        assert_eq!(schur_eval(&dg(&[1, 1], 2, 1), &pts).unwrap(), z(3, 1));
        assert_eq!(
            schur_eval(&dg(&[1, 0], 2, 1), &EvalPoint::new(3, vec![1, 4])),
            Err(Error::RepeatedPoints(3))
        );
    }

    #[test]
    fn vandermonde_matches_determinant() {
        for n in 2..=9u32 {
            for k in 1..=4.min(n as usize) {
                for s in Subsets::new(n as usize, k) {
                    let pts = EvalPoint::from_subset(n, &s);
                    let vals = pts.values();
                    let m = vals
                        .iter()
                        .map(|x| (0..k).map(|j| x.pow((k - 1 - j) as i64).unwrap()).collect())
                        .collect();
                    assert_eq!(det(n, m), vandermonde(&pts));
                    assert!(!vandermonde(&pts).is_zero());
                }
            }
        }
    }

    #[test]
    fn schur_is_symmetric_in_point_order() {
        let lam = dg(&[3, 1, 1], 3, 3);
        let a = schur_eval(&lam, &EvalPoint::new(6, vec![0, 2, 5])).unwrap();
        let b = schur_eval(&lam, &EvalPoint::new(6, vec![5, 0, 2])).unwrap();
        let c = schur_eval(&lam, &EvalPoint::new(6, vec![2, 5, 0])).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn schur_matches_monomial_expansion() {
        // independent oracle: S_λ as a sum over semistandard tableaux, enumerated via
        // the branching rule S_λ(x_1..x_k) = Σ_{μ ≺ λ} S_μ(x_1..x_{k-1}) x_k^{|λ|-|μ|}
        fn branch(parts: &[usize], xs: &[CycloNum], order: u32) -> CycloNum {
            if xs.is_empty() {
                return if parts.iter().all(|&p| p == 0) { CycloNum::one(order) } else { CycloNum::zero(order) };
            }
            let k = xs.len();
            if parts.len() > k && parts[k..].iter().any(|&p| p > 0) {
                return CycloNum::zero(order);
            }
            let parts: Vec<usize> = parts.iter().take(k).copied().collect();
            let mut acc = CycloNum::zero(order);
            // μ interlaces: parts[i+1] ≤ μ_i ≤ parts[i], length k-1
            let mut mu = vec![0usize; k.saturating_sub(1)];
            fn rec(i: usize, parts: &[usize], mu: &mut Vec<usize>, xs: &[CycloNum], order: u32, acc: &mut CycloNum) {
                if i == mu.len() {
                    let total: usize = parts.iter().sum::<usize>() - mu.iter().sum::<usize>();
                    let term = &branch(mu, &xs[..xs.len() - 1], order) * &xs[xs.len() - 1].pow(total as i64).unwrap();
                    *acc = &*acc + &term;
                    return;
                }
                let lo = parts.get(i + 1).copied().unwrap_or(0);
                for v in lo..=parts[i] {
                    mu[i] = v;
                    rec(i + 1, parts, mu, xs, order, acc);
                }
            }
            rec(0, &parts, &mut mu, xs, order, &mut acc);
            acc
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n: u32 = rng.gen_range(3..=8);
            let r = rng.gen_range(1..n as usize);
            let l = n as usize - r;
            let all = YoungDiagram::all(r, l);
            let lam = &all[rng.gen_range(0..all.len())];
            let subsets: Vec<_> = Subsets::new(n as usize, r).collect();
            let s = &subsets[rng.gen_range(0..subsets.len())];
            let pts = EvalPoint::from_subset(n, s);
            let exact = schur_eval(lam, &pts).unwrap();
            assert_eq!(exact, branch(lam.parts(), &pts.values(), n), "{lam:?} at {s:?} mod {n}");
        }
    }

    #[test]
    fn jacobi_trudi_examples() {
        let e = elementary_symmetric(5, &[z(5, 1), z(5, 3)]);
        assert!(jacobi_trudi_eval(&YoungDiagram::empty(3, 2), &e).is_one());
        // a single column of height 2
        assert_eq!(jacobi_trudi_eval(&dg(&[1, 1, 0], 3, 2), &e), e[2]);
        assert_eq!(jacobi_trudi_eval(&dg(&[1, 0, 0], 3, 2), &e), e[1]);
        // height beyond the alphabet vanishes
        assert!(jacobi_trudi_eval(&dg(&[1, 1, 1], 3, 2), &e).is_zero());
    }

    #[test]
    fn jacobi_trudi_agrees_with_bialternant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n: u32 = rng.gen_range(2..=8);
            let r = rng.gen_range(1..n as usize);
            let l = n as usize - r;
            let all = YoungDiagram::all(r, l);
            let lam = &all[rng.gen_range(0..all.len())];
            let subsets: Vec<_> = Subsets::new(n as usize, r).collect();
            let s = &subsets[rng.gen_range(0..subsets.len())];
            let pts = EvalPoint::from_subset(n, s);
            let e = elementary_symmetric(n, &pts.values());
            assert_eq!(jacobi_trudi_eval(lam, &e), schur_eval(lam, &pts).unwrap());
        }
    }

    #[test]
    fn reciprocity_examples() {
        let rep = reciprocity_check(&dg(&[1, 0], 2, 1), &[0, 1]).unwrap();
        assert_eq!(rep.lhs, &CycloNum::one(3) + &z(3, 1));
        assert_eq!(rep.rhs, -z(3, 2));
        assert!(rep.holds());
        let rep = reciprocity_check(&YoungDiagram::empty(2, 3), &[1, 4]).unwrap();
        assert!(rep.lhs.is_one() && rep.rhs.is_one());
    }

    #[test]
    fn reciprocity_small_exhaustive() {
        for n in 2..=5usize {
            for r in 1..n {
                for lam in YoungDiagram::all(r, n - r) {
                    for s in Subsets::new(n, r) {
                        assert!(reciprocity_check(&lam, &s).unwrap().holds(), "{lam:?} {s:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn schur_at_rational_point_is_integer_count() {
        // at the single point x = 1 with r = 1, S_(a) = 1
        let one = schur_eval(&dg(&[3], 1, 5), &EvalPoint::new(6, vec![0])).unwrap();
        assert_eq!(one.as_rational(), Some(BigRational::from_integer(1.into())));
    }
}
