//! Subspaces of `Q^m` stored as reduced row-echelon bases.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Vector = Vec<BigRational>;

pub fn zero_vector(m: usize) -> Vector {
    vec![BigRational::zero(); m]
}

pub fn unit_vector(m: usize, i: usize) -> Vector {
    let mut v = zero_vector(m);
    v[i] = BigRational::one();
    v
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Kronecker product, index `i * b.len() + j`.
pub fn kron(a: &[BigRational], b: &[BigRational]) -> Vector {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// Reduced row-echelon form; zero rows are dropped. Returns the pivot columns too.
pub fn rref(mut rows: Vec<Vector>, m: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..m {
        let Some(p) = (top..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(top, p);
        let inv = rows[top][col].recip();
        for x in rows[top].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[top].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == top || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        pivots.push(col);
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    rows.truncate(top);
    (rows, pivots)
}

/// A linear subspace with its canonical basis, so equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: Vec<Vector>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient));
        let (basis, _) = rref(vectors, ambient);
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn whole(ambient: usize) -> Self {
        Self::coordinates(ambient, 0..ambient)
    }

    pub fn coordinates(ambient: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        Self::span(ambient, idx.into_iter().map(|i| unit_vector(ambient, i)).collect())
    }

    /// Common zero set of the given linear functionals.
    pub fn solutions(ambient: usize, functionals: Vec<Vector>) -> Self {
        Self::span(ambient, functionals).perp()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Orthogonal complement for the standard dot product.
    pub fn perp(&self) -> Subspace {
        let m = self.ambient;
        let (rows, pivots) = rref(self.basis.clone(), m);
        let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
        let kernel = free
            .iter()
            .map(|&f| {
                let mut v = unit_vector(m, f);
                for (row, &p) in rows.iter().zip(&pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect();
        Subspace::span(m, kernel)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, vs)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.perp().sum(&other.perp()).perp()
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        rref(vs, self.ambient).0.len() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// `A ⊗ B` inside `Q^{m_A} ⊗ Q^{m_B}`.
    pub fn tensor(&self, other: &Subspace) -> Subspace {
        let vs = self
            .basis
            .iter()
            .flat_map(|a| other.basis.iter().map(move |b| kron(a, b)))
            .collect();
        Subspace::span(self.ambient * other.ambient, vs)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in Q^{})", self.dim(), self.ambient)
    }
}
