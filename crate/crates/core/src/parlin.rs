//! Parabolic structures on rational vector spaces, checked by explicit linear
//! algebra: tensor subspaces, duals, parabolic morphisms and string filtrations.
//!
//! A morphism `E → F` with `dim E = m`, `dim F = k` is stored as the vector of
//! its coefficients, entry `α·k + β` being the `f_β`-coordinate of the image of
//! `e_α`. The same indexing is used for `E ⊗ F`, so `Hom(E, F) = E^∨ ⊗ F`
//! pairs with `E ⊗ F^∨` by the dot product.

pub mod linalg;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagrams::YoungDiagram;
use crate::error::{Error, Result};
use linalg::{kron, rref, Subspace, Vector};

/// A space `Q^m` with a decreasing filtration `F_1 ⊇ F_2 ⊇ ... ⊇ F_k` of type `λ`:
/// `m` is the number of rows of `λ`, `k` its level and `dim F_j = λ^T_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicSpace {
    kind: YoungDiagram,
    filtration: Vec<Subspace>,
}

/// `dim F_j` for `j = 1..k`.
fn filtration_dims(kind: &YoungDiagram) -> Vec<usize> {
    kind.transpose().parts().to_vec()
}

fn random_invertible(m: usize, rng: &mut ChaCha8Rng) -> Vec<Vector> {
    loop {
        let rows: Vec<Vector> = (0..m)
            .map(|_| (0..m).map(|_| BigRational::from_integer(rng.gen_range(-3i64..=3).into())).collect())
            .collect();
        if rref(rows.clone(), m).0.len() == m {
            return rows;
        }
    }
}

impl ParabolicSpace {
    /// Filtration by the first coordinates.
    pub fn standard(kind: &YoungDiagram) -> Self {
        let m = kind.rows();
        let filtration = filtration_dims(kind)
            .into_iter()
            .map(|b| Subspace::coordinates(m, 0..b))
            .collect();
        ParabolicSpace { kind: kind.clone(), filtration }
    }

    /// A filtration in general position, deterministic in `seed`.
    pub fn random(kind: &YoungDiagram, seed: u64) -> Self {
        let m = kind.rows();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let basis = random_invertible(m, &mut rng);
        let filtration = filtration_dims(kind)
            .into_iter()
            .map(|b| Subspace::span(m, basis[..b].to_vec()))
            .collect();
        ParabolicSpace { kind: kind.clone(), filtration }
    }

    /// Builds a space from explicit subspaces, checking dimensions and nesting.
    pub fn from_filtration(kind: &YoungDiagram, filtration: Vec<Subspace>) -> Result<Self> {
        let dims = filtration_dims(kind);
        if filtration.len() != dims.len() {
            return Err(Error::TypeMismatch(format!(
                "{} subspaces for a type with {} steps",
                filtration.len(),
                dims.len()
            )));
        }
        for (j, (sub, &b)) in filtration.iter().zip(&dims).enumerate() {
            if sub.ambient() != kind.rows() || sub.dim() != b {
                return Err(Error::TypeMismatch(format!("step {} has dimension {} instead of {b}", j + 1, sub.dim())));
            }
            if j > 0 && !sub.is_subspace_of(&filtration[j - 1]) {
                return Err(Error::TypeMismatch(format!("step {} is not contained in step {j}", j + 1)));
            }
        }
        Ok(ParabolicSpace { kind: kind.clone(), filtration })
    }

    pub fn kind(&self) -> &YoungDiagram {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.kind.rows()
    }

    pub fn filtration(&self) -> &[Subspace] {
        &self.filtration
    }

    /// `F_j` for `j ≥ 1`; indices past the end give the zero space.
    pub fn step(&self, j: usize) -> Subspace {
        match j {
            0 => Subspace::whole(self.dim()),
            _ => self.filtration.get(j - 1).cloned().unwrap_or_else(|| Subspace::zero(self.dim())),
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.filtration.iter().map(Subspace::dim).collect()
    }
}

/// The dual structure `(E_{k+1-i}^⊥)`, of type `λ*`.
pub fn dual_space(e: &ParabolicSpace) -> ParabolicSpace {
    let k = e.filtration.len();
    let filtration = (1..=k).map(|i| e.filtration[k - i].perp()).collect();
    ParabolicSpace { kind: e.kind.conjugate(), filtration }
}

/// `G = Σ_j E_j ⊗ F_{λ^T_j}` inside `E ⊗ F`, for `E` of type `λ` and `F` of type `λ^T`.
pub fn tensor_subspace(e: &ParabolicSpace, f: &ParabolicSpace) -> Result<Subspace> {
    if f.kind != e.kind.transpose() {
        return Err(Error::TypeMismatch(format!("{:?} is not the transpose of {:?}", f.kind, e.kind)));
    }
    let ambient = e.dim() * f.dim();
    let mut g = Subspace::zero(ambient);
    for (j, &b) in filtration_dims(&e.kind).iter().enumerate() {
        if b == 0 {
            continue;
        }
        g = g.sum(&e.filtration[j].tensor(&f.step(b)));
    }
    Ok(g)
}

/// Linear functionals cutting out `{φ : φ(A) ⊆ B}` in `Hom(Q^m, Q^k)`.
fn maps_into(a: &Subspace, b: &Subspace) -> Vec<Vector> {
    let b_perp = b.perp();
    a.basis()
        .iter()
        .flat_map(|v| b_perp.basis().iter().map(move |u| kron(v, u)))
        .collect()
}

/// `Hom_par(E, F) = {φ : φ(E_j) ⊆ F_{r+1-b_j} whenever b_j = λ^T_j > 0}`,
/// for `E` of type `λ` and `F` of type `(λ^T)*`.
pub fn parabolic_hom(e: &ParabolicSpace, f: &ParabolicSpace) -> Result<Subspace> {
    if f.kind != e.kind.transpose().conjugate() {
        return Err(Error::TypeMismatch(format!(
            "{:?} is not the conjugate transpose of {:?}",
            f.kind, e.kind
        )));
    }
    let r = e.dim();
    let ambient = r * f.dim();
    let mut functionals = Vec::new();
    let mut seen = Vec::new();
    for (j, &b) in filtration_dims(&e.kind).iter().enumerate() {
        // repeated dimensions give the same condition; the reduced filtration keeps one
        if b == 0 || seen.contains(&b) {
            continue;
        }
        seen.push(b);
        functionals.extend(maps_into(&e.filtration[j], &f.step(r + 1 - b)));
    }
    Ok(Subspace::solutions(ambient, functionals))
}

/// Whether `Hom_par(E, F)` is the annihilator of the tensor subspace of `E` and `F^∨`.
pub fn annihilator_check(e: &ParabolicSpace, f: &ParabolicSpace) -> Result<bool> {
    let hom = parabolic_hom(e, f)?;
    let g = tensor_subspace(e, &dual_space(f))?;
    Ok(hom == g.perp())
}

/// Fixed-point data of the Schubert cell of `λ` in `Gr(r, r+l)`: `E` spanned by
/// the coordinates `I_λ`, `F` the quotient in the coordinates `J`, both with the
/// filtrations induced by the standard flag.
pub fn schubert_fixed_point(lambda: &YoungDiagram) -> (ParabolicSpace, ParabolicSpace) {
    let (i_set, j_set) = lambda.index_sets();
    let r = lambda.rows();
    let l = lambda.level();
    let f_kind = lambda.transpose().conjugate();
    // E_j = E ∩ Γ_k picks the first coordinates of I, in increasing order.
    let e_steps = filtration_dims(lambda)
        .into_iter()
        .map(|b| Subspace::coordinates(r, 0..b))
        .collect();
    // F_i is the image of Γ_{i_{r+1-i}}: the coordinates of J below that index.
    let f_steps = (1..=r)
        .map(|i| {
            let bound = i_set[r - i];
            let count = j_set.iter().filter(|&&j| j < bound).count();
            Subspace::coordinates(l, 0..count)
        })
        .collect();
    let e = ParabolicSpace::from_filtration(lambda, e_steps).expect("consistent E filtration");
    let f = ParabolicSpace::from_filtration(&f_kind, f_steps).expect("consistent F filtration");
    (e, f)
}

/// `dim Hom_par(E, F)` at the torus-fixed point of the Schubert cell of `λ`.
pub fn schubert_tangent_dim(lambda: &YoungDiagram) -> usize {
    let (e, f) = schubert_fixed_point(lambda);
    parabolic_hom(&e, &f).expect("types match by construction").dim()
}

/// Increasing full flag `0 = V_0 ⊂ V_1 ⊂ ... ⊂ V_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullFlag {
    steps: Vec<Subspace>,
}

impl FullFlag {
    pub fn standard(m: usize) -> Self {
        FullFlag { steps: (0..=m).map(|k| Subspace::coordinates(m, 0..k)).collect() }
    }

    pub fn random(m: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let basis = random_invertible(m, &mut rng);
        FullFlag { steps: (0..=m).map(|k| Subspace::span(m, basis[..k].to_vec())).collect() }
    }

    pub fn dim(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn step(&self, k: usize) -> &Subspace {
        &self.steps[k]
    }
}

/// `G_k = Hom(F/F_{k_L}, E_{k_R})` inside `Hom(F, E)`, for `k = 0..=r+l`.
pub fn string_filtration(e: &FullFlag, f: &FullFlag, lambda: &YoungDiagram) -> Result<Vec<Subspace>> {
    if e.dim() != lambda.rows() || f.dim() != lambda.level() {
        return Err(Error::TypeMismatch(format!(
            "flags of dimension ({}, {}) for {:?}",
            e.dim(),
            f.dim(),
            lambda
        )));
    }
    let word = lambda.string_of();
    let (m, k_dim) = (f.dim(), e.dim());
    let ambient = m * k_dim;
    Ok((0..=word.len())
        .map(|k| {
            let mut functionals = maps_into(f.step(word.k_l(k)), &Subspace::zero(k_dim));
            functionals.extend(maps_into(&Subspace::whole(m), e.step(word.k_r(k))));
            Subspace::solutions(ambient, functionals)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dg(parts: &[usize], r: usize, l: usize) -> YoungDiagram {
        YoungDiagram::from_parts(parts, r, l).unwrap()
    }

    #[test]
    fn standard_examples() {
        assert_eq!(ParabolicSpace::standard(&YoungDiagram::empty(2, 3)).dims(), vec![0, 0, 0]);
        assert_eq!(ParabolicSpace::standard(&YoungDiagram::full(2, 3)).dims(), vec![2, 2, 2]);
        assert_eq!(ParabolicSpace::standard(&dg(&[2, 1], 2, 3)).dims(), vec![2, 1, 0]);
    }

    #[test]
    fn random_is_seeded() {
        let lam = dg(&[3, 1, 0], 3, 3);
        assert_eq!(ParabolicSpace::random(&lam, 5), ParabolicSpace::random(&lam, 5));
        assert_eq!(ParabolicSpace::random(&lam, 5).dims(), vec![2, 1, 1]);
        assert_ne!(ParabolicSpace::random(&lam, 5), ParabolicSpace::random(&lam, 6));
    }

    #[test]
    fn dual_examples() {
        let e = ParabolicSpace::random(&dg(&[2, 1], 2, 3), 3);
        let d = dual_space(&e);
        assert_eq!(d.kind(), &dg(&[2, 1], 2, 3));
        assert_eq!(dual_space(&d), e);
        let triv = ParabolicSpace::standard(&YoungDiagram::empty(2, 2));
        assert_eq!(dual_space(&triv).dims(), vec![2, 2]);
    }

    #[test]
    fn tensor_examples() {
        let lam = dg(&[2, 1], 2, 3);
        let g = tensor_subspace(&ParabolicSpace::standard(&lam), &ParabolicSpace::standard(&lam.transpose())).unwrap();
        assert_eq!(g.dim(), 3);
        let full = YoungDiagram::full(2, 3);
        let g = tensor_subspace(&ParabolicSpace::standard(&full), &ParabolicSpace::standard(&full.transpose())).unwrap();
        assert_eq!(g.dim(), 6);
        let wrong = tensor_subspace(&ParabolicSpace::standard(&lam), &ParabolicSpace::standard(&lam));
        assert!(matches!(wrong, Err(Error::TypeMismatch(_))));
    }

    #[test]
    fn hom_examples() {
        let lam = dg(&[2, 1], 2, 2);
        let f_kind = lam.transpose().conjugate();
        let h = parabolic_hom(&ParabolicSpace::standard(&lam), &ParabolicSpace::standard(&f_kind)).unwrap();
        assert_eq!(h.dim(), 1);
        let e = YoungDiagram::empty(2, 2);
        let h = parabolic_hom(&ParabolicSpace::standard(&e), &ParabolicSpace::standard(&e.transpose().conjugate()))
            .unwrap();
        assert_eq!(h.dim(), 4);
    }

    #[test]
    fn string_filtration_example() {
        let lam = dg(&[1, 0], 2, 1);
        let g = string_filtration(&FullFlag::standard(2), &FullFlag::standard(1), &lam).unwrap();
        let dims: Vec<usize> = g.iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![2, 1, 0, 0]);
        for w in g.windows(2) {
            assert!(w[1].is_subspace_of(&w[0]));
        }
    }

    #[test]
    fn schubert_examples() {
        assert_eq!(schubert_tangent_dim(&YoungDiagram::empty(2, 3)), 6);
        assert_eq!(schubert_tangent_dim(&YoungDiagram::full(2, 3)), 0);
        assert_eq!(schubert_tangent_dim(&dg(&[2, 1], 2, 2)), 1);
    }

    /// Tangent space of the Schubert cell at `e_I` via the Borel action: the pair
    /// `(α, β)` moves freely iff the quotient coordinate sits below the sub coordinate.
    fn borel_tangent_dim(lambda: &YoungDiagram) -> usize {
        let (i_set, j_set) = lambda.index_sets();
        i_set.iter().map(|&i| j_set.iter().filter(|&&j| j < i).count()).sum()
    }

    #[test]
    fn schubert_matches_borel_and_codimension() {
        for n in 2..=7 {
            for r in 1..n {
                let l = n - r;
                for lam in YoungDiagram::all(r, l) {
                    let dim = schubert_tangent_dim(&lam);
                    assert_eq!(dim, borel_tangent_dim(&lam), "{lam:?}");
                    assert_eq!(dim + lam.size(), r * l, "{lam:?}");
                }
            }
        }
    }

    #[test]
    fn exhaustive_small_rectangles() {
        for r in 1..=3 {
            for l in 1..=3 {
                for lam in YoungDiagram::all(r, l) {
                    let f_kind = lam.transpose().conjugate();
                    for (e, f, ft) in [
                        (
                            ParabolicSpace::standard(&lam),
                            ParabolicSpace::standard(&f_kind),
                            ParabolicSpace::standard(&lam.transpose()),
                        ),
                        (
                            ParabolicSpace::random(&lam, 11),
                            ParabolicSpace::random(&f_kind, 12),
                            ParabolicSpace::random(&lam.transpose(), 13),
                        ),
                    ] {
                        assert_eq!(tensor_subspace(&e, &ft).unwrap().dim(), lam.size(), "{lam:?}");
                        assert_eq!(parabolic_hom(&e, &f).unwrap().dim(), r * l - lam.size(), "{lam:?}");
                        assert!(annihilator_check(&e, &f).unwrap(), "{lam:?}");
                        assert_eq!(dual_space(&dual_space(&e)), e);
                    }
                    let g = string_filtration(&FullFlag::random(r, 1), &FullFlag::random(l, 2), &lam).unwrap();
                    let word = lam.string_of();
                    for (k, gk) in g.iter().enumerate() {
                        assert_eq!(gk.dim(), (l - word.k_l(k)) * word.k_r(k));
                    }
                }
            }
        }
    }
}
