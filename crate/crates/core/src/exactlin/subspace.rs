use num_traits::Zero;

use super::{kernel, rref, Matrix, Rational, Vector};
use crate::error::LinAlgError;

/// A linear subspace of `ℚ^n` stored by its reduced row echelon basis.
///
/// The representation is canonical, so two subspaces are equal exactly when
/// their structs are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { ambient_dim: n, basis: Matrix::zeros(0, n), pivots: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Subspace { ambient_dim: n, basis: Matrix::identity(n), pivots: (0..n).collect() }
    }

    /// Span of the given vectors (each of length `n`).
    pub fn from_vectors(n: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Self::zero(n);
        }
        Self::from_matrix(&Matrix::from_rows(n, vectors))
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &Matrix) -> Self {
        let basis = rref(m);
        let pivots = (0..basis.rows())
            .map(|i| basis.row(i).iter().position(|x| !x.is_zero()).expect("rref row is nonzero"))
            .collect();
        Subspace { ambient_dim: m.cols(), basis, pivots }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vs: Vec<Vector> = indices.into_iter().map(|i| super::unit_vector(n, i)).collect();
        Self::from_vectors(n, &vs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// The RREF basis, one row per basis vector.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coefficients of `v` in the RREF basis, or `None` when `v` is outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        let coeffs: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, i) in coeffs.iter().zip(0..) {
            if c.is_zero() {
                continue;
            }
            for (r, b) in residual.iter_mut().zip(self.basis.row(i)) {
                if !b.is_zero() {
                    *r -= c * b;
                }
            }
        }
        residual.iter().all(Zero::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimension mismatch");
        self.dim() <= other.dim() && self.basis_vectors().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimension mismatch");
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        Subspace::from_matrix(&self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimension mismatch");
        let n = self.ambient_dim;
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(n);
        }
        // x·A + y·B = 0 ⟺ (x, y) ∈ ker [A; B]ᵀ, and then x·A spans A ∩ B.
        let stacked = self.basis.vstack(&other.basis);
        let relations = kernel(&stacked.transpose());
        let a = self.dim();
        let vectors: Vec<Vector> = relations
            .basis_vectors()
            .iter()
            .map(|rel| {
                let mut v = super::zero_vector(n);
                for (i, c) in rel[..a].iter().enumerate() {
                    if !c.is_zero() {
                        for (acc, b) in v.iter_mut().zip(self.basis.row(i)) {
                            *acc += c * b;
                        }
                    }
                }
                v
            })
            .collect();
        Subspace::from_vectors(n, &vectors)
    }

    /// Image under the operator `m` (acting on column vectors).
    pub fn image(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient_dim, "ambient dimension mismatch");
        let vs: Vec<Vector> = self.basis_vectors().iter().map(|v| m.mul_vec(v)).collect();
        Subspace::from_vectors(m.rows(), &vs)
    }

    /// Extends `self` to `within` greedily: walks `candidates` in order and
    /// keeps each one that is independent of what has been kept so far.
    /// Returns the span of the kept candidates.
    pub fn greedy_complement(&self, candidates: &[Vector]) -> Subspace {
        let mut acc = self.clone();
        let mut kept = Vec::new();
        for c in candidates {
            if !acc.contains(c) {
                acc = acc.sum(&Subspace::from_vectors(self.ambient_dim, std::slice::from_ref(c)));
                kept.push(c.clone());
            }
        }
        Subspace::from_vectors(self.ambient_dim, &kept)
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {}) ", self.dim(), self.ambient_dim)?;
        let rows: Vec<Vec<String>> =
            self.basis_vectors().iter().map(|v| super::format_vector(v)).collect();
        write!(f, "{rows:?}")
    }
}

fn check_dims(a: usize, b: usize) -> Result<(), LinAlgError> {
    if a == b {
        Ok(())
    } else {
        Err(LinAlgError::DimensionMismatch { expected: a, found: b })
    }
}

/// `a + b`, rejecting mismatched ambient dimensions.
pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace, LinAlgError> {
    check_dims(a.ambient_dim(), b.ambient_dim())?;
    Ok(a.sum(b))
}

/// `a ∩ b`, rejecting mismatched ambient dimensions.
pub fn subspace_intersect(a: &Subspace, b: &Subspace) -> Result<Subspace, LinAlgError> {
    check_dims(a.ambient_dim(), b.ambient_dim())?;
    Ok(a.intersect(b))
}

/// Membership test, rejecting a vector of the wrong length.
pub fn contains(a: &Subspace, v: &[Rational]) -> Result<bool, LinAlgError> {
    check_dims(a.ambient_dim(), v.len())?;
    Ok(a.contains(v))
}
