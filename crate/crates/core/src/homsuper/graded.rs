use crate::exactlin::{Subspace, Vector};

use super::{Parity, Superalgebra};

/// A graded subspace `A = A₀ ⊕ A₁` of an algebra with homogeneous basis.
///
/// Both parts and their sum are kept in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedSubspace {
    even: Subspace,
    odd: Subspace,
    total: Subspace,
}

impl GradedSubspace {
    /// Combines an even part and an odd part. The caller guarantees that the
    /// parts live in the even and odd coordinates respectively.
    pub fn from_parts(even: Subspace, odd: Subspace) -> Self {
        let total = even.sum(&odd);
        GradedSubspace { even, odd, total }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_parts(Subspace::zero(n), Subspace::zero(n))
    }

    pub fn full(alg: &Superalgebra) -> Self {
        Self::from_parts(alg.even_space(), alg.odd_space())
    }

    /// The graded subspace of `alg` split from `s`, or `None` when `s` is not
    /// graded (not the sum of its intersections with the parity spaces).
    pub fn split(alg: &Superalgebra, s: &Subspace) -> Option<Self> {
        let even = s.intersect(&alg.even_space());
        let odd = s.intersect(&alg.odd_space());
        let g = Self::from_parts(even, odd);
        (g.total == *s).then_some(g)
    }

    /// Smallest graded subspace containing the vectors: span of all their
    /// homogeneous components.
    pub fn hull(alg: &Superalgebra, vectors: &[Vector]) -> Self {
        let n = alg.dim();
        let (mut evens, mut odds) = (Vec::new(), Vec::new());
        for v in vectors {
            let (e, o) = alg.homogeneous_parts(v);
            evens.push(e);
            odds.push(o);
        }
        Self::from_parts(Subspace::from_vectors(n, &evens), Subspace::from_vectors(n, &odds))
    }

    /// Span of the basis vectors with the given indices.
    pub fn coordinate(alg: &Superalgebra, indices: &[usize]) -> Self {
        let n = alg.dim();
        let even = Subspace::coordinate(n, indices.iter().copied().filter(|&i| alg.parity(i) == Parity::Even));
        let odd = Subspace::coordinate(n, indices.iter().copied().filter(|&i| alg.parity(i) == Parity::Odd));
        Self::from_parts(even, odd)
    }

    pub fn even(&self) -> &Subspace {
        &self.even
    }

    pub fn odd(&self) -> &Subspace {
        &self.odd
    }

    pub fn part(&self, p: Parity) -> &Subspace {
        match p {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    pub fn total(&self) -> &Subspace {
        &self.total
    }

    pub fn dim(&self) -> usize {
        self.total.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.total.is_zero()
    }

    pub fn ambient_dim(&self) -> usize {
        self.total.ambient_dim()
    }

    pub fn sum(&self, other: &GradedSubspace) -> GradedSubspace {
        Self::from_parts(self.even.sum(&other.even), self.odd.sum(&other.odd))
    }

    pub fn intersect(&self, other: &GradedSubspace) -> GradedSubspace {
        Self::from_parts(self.even.intersect(&other.even), self.odd.intersect(&other.odd))
    }

    pub fn contains(&self, v: &[crate::exactlin::Rational]) -> bool {
        self.total.contains(v)
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> bool {
        self.total.is_subspace_of(&other.total)
    }

    /// Homogeneous basis: even basis rows then odd basis rows.
    pub fn homogeneous_basis(&self) -> Vec<(Parity, Vector)> {
        let mut out: Vec<(Parity, Vector)> =
            self.even.basis_vectors().into_iter().map(|v| (Parity::Even, v)).collect();
        out.extend(self.odd.basis_vectors().into_iter().map(|v| (Parity::Odd, v)));
        out
    }

    /// Image under an even operator (matrix acting on column vectors).
    pub fn image(&self, m: &crate::exactlin::Matrix) -> GradedSubspace {
        Self::from_parts(self.even.image(m), self.odd.image(m))
    }
}
