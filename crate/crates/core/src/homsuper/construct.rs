//! Building new algebras from old ones: Hom-deformation by an automorphism,
//! change of basis, direct sums and restriction to a stable subspace.

use num_traits::{One, Zero};

use super::{validate, BracketTensor, GradedSubspace, Parity, Superalgebra};
use crate::error::AlgebraError;
use crate::exactlin::{format_rational, is_zero_vector, Matrix, Rational, Vector};

/// Checks that `psi` is an even, invertible bracket homomorphism of `alg`.
pub fn check_automorphism(alg: &Superalgebra, psi: &Matrix) -> Result<(), String> {
    let n = alg.dim();
    if psi.rows() != n || psi.cols() != n {
        return Err(format!("expected a {n}x{n} matrix"));
    }
    if !psi.is_invertible() {
        return Err("not invertible".into());
    }
    for src in 0..n {
        for tgt in 0..n {
            if !psi[(tgt, src)].is_zero() && alg.parity(src) != alg.parity(tgt) {
                return Err(format!("maps {} outside its parity", alg.name(src)));
            }
        }
    }
    let images: Vec<Vector> = (0..n).map(|i| psi.column(i)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = psi.mul_vec(&alg.bracket_tensor().product(i, j));
            let rhs = alg.bracket(&images[i], &images[j]);
            if lhs != rhs {
                return Err(format!("does not preserve [{}, {}]", alg.name(i), alg.name(j)));
            }
        }
    }
    Ok(())
}

/// Yau twist of a Lie superalgebra: bracket `ψ∘[·,·]` and twist `ψ`.
pub fn yau_twist(lie: &Superalgebra, psi: &Matrix) -> Result<Superalgebra, AlgebraError> {
    if *lie.twist() != Matrix::identity(lie.dim()) {
        return Err(AlgebraError::NotIdentityTwist);
    }
    let report = validate(lie);
    if let Some(v) = report.violations.first() {
        return Err(AlgebraError::NotLie(format!("{} fails at {:?}", v.axiom, v.witness)));
    }
    twist_by(lie, psi)
}

/// Deforms a multiplicative Hom-Lie superalgebra by an automorphism `ψ`
/// commuting with its twist: bracket `ψ∘[·,·]`, twist `ψ∘φ`.
pub fn twist_by(alg: &Superalgebra, psi: &Matrix) -> Result<Superalgebra, AlgebraError> {
    check_automorphism(alg, psi).map_err(AlgebraError::NotAutomorphism)?;
    if psi.mul(alg.twist()) != alg.twist().mul(psi) {
        return Err(AlgebraError::NotAutomorphism("does not commute with the twist".into()));
    }
    let n = alg.dim();
    let mut t = BracketTensor::new(n);
    for ((i, j), _) in alg.bracket_tensor().pairs() {
        t.set_product(i, j, &psi.mul_vec(&alg.bracket_tensor().product(i, j)))?;
    }
    Superalgebra::new(
        alg.names().to_vec(),
        alg.parities().to_vec(),
        t,
        psi.mul(alg.twist()),
        alg.is_regular(),
    )
}

/// Rewrites `alg` in the basis given by the columns of `p` (old coordinates).
pub fn change_of_basis(alg: &Superalgebra, p: &Matrix) -> Result<Superalgebra, AlgebraError> {
    let n = alg.dim();
    if p.rows() != n || p.cols() != n {
        return Err(AlgebraError::DimensionMismatch { expected: n, found: p.rows() });
    }
    let p_inv = p.inverse().ok_or(AlgebraError::SingularChange)?;
    let columns: Vec<Vector> = (0..n).map(|j| p.column(j)).collect();
    let mut parities = Vec::with_capacity(n);
    for (j, col) in columns.iter().enumerate() {
        parities.push(alg.parity_of(col).ok_or(AlgebraError::ParityMixing { column: j })?);
    }
    let names = columns.iter().enumerate().map(|(j, c)| basis_name(alg, c, j)).collect();
    let mut t = BracketTensor::new(n);
    for i in 0..n {
        for j in 0..n {
            let v = alg.bracket(&columns[i], &columns[j]);
            if !is_zero_vector(&v) {
                t.set_product(i, j, &p_inv.mul_vec(&v))?;
            }
        }
    }
    let twist = p_inv.mul(alg.twist()).mul(p);
    Superalgebra::new(names, parities, t, twist, alg.is_regular())
}

fn basis_name(alg: &Superalgebra, v: &[Rational], fallback: usize) -> String {
    let support: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    match support.as_slice() {
        [k] if v[*k].is_one() => alg.name(*k).to_string(),
        [k] => format!("{}*{}", format_rational(&v[*k]), alg.name(*k)),
        [] => format!("v{fallback}"),
        _ => format!("({})", alg.describe(v)),
    }
}

/// Direct sum `a ⊕ b`: basis of `a` followed by basis of `b`.
pub fn direct_sum(a: &Superalgebra, b: &Superalgebra) -> Superalgebra {
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    let mut t = BracketTensor::new(n);
    for ((i, j), row) in a.bracket_tensor().pairs() {
        for (&k, c) in row {
            t.set(i, j, k, c.clone()).expect("indices in range");
        }
    }
    for ((i, j), row) in b.bracket_tensor().pairs() {
        for (&k, c) in row {
            t.set(na + i, na + j, na + k, c.clone()).expect("indices in range");
        }
    }
    let twist = Matrix::from_fn(n, n, |i, j| match (i < na, j < na) {
        (true, true) => a.twist()[(i, j)].clone(),
        (false, false) => b.twist()[(i - na, j - na)].clone(),
        _ => Rational::zero(),
    });
    let mut names = a.names().to_vec();
    names.extend(b.names().iter().cloned());
    let mut parities = a.parities().to_vec();
    parities.extend(b.parities().iter().copied());
    Superalgebra::new(names, parities, t, twist, a.is_regular() && b.is_regular())
        .expect("shapes agree by construction")
}

/// An algebra obtained by restricting bracket and twist to a graded subspace
/// closed under both.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub algebra: Superalgebra,
    /// Columns are the new basis vectors in the old coordinates.
    pub embedding: Matrix,
    pivots: Vec<usize>,
}

impl Restriction {
    /// New coordinates of an old vector, `None` when it lies outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        let coeffs: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        (self.embedding.mul_vec(&coeffs) == v).then_some(coeffs)
    }

    pub fn lift(&self, coords: &[Rational]) -> Vector {
        self.embedding.mul_vec(coords)
    }

    /// Transports a graded subspace contained in the restricted space.
    pub fn transport(&self, s: &GradedSubspace) -> Option<GradedSubspace> {
        let k = self.algebra.dim();
        let mut parts = Vec::new();
        for part in [s.even(), s.odd()] {
            let mut coords = Vec::new();
            for v in part.basis_vectors() {
                coords.push(self.coordinates(&v)?);
            }
            parts.push(crate::exactlin::Subspace::from_vectors(k, &coords));
        }
        let odd = parts.pop().expect("two parts");
        let even = parts.pop().expect("two parts");
        Some(GradedSubspace::from_parts(even, odd))
    }
}

/// Restricts `alg` to the graded subspace `sub`, which must be closed under
/// the bracket and mapped into itself by the twist.
pub fn restrict_to(alg: &Superalgebra, sub: &GradedSubspace) -> Result<Restriction, AlgebraError> {
    let n = alg.dim();
    let mut basis: Vec<(usize, Parity, Vector)> = sub
        .homogeneous_basis()
        .into_iter()
        .map(|(p, v)| {
            let pivot = v.iter().position(|c| !c.is_zero()).expect("basis rows are nonzero");
            (pivot, p, v)
        })
        .collect();
    basis.sort_by_key(|(pivot, _, _)| *pivot);
    let k = basis.len();
    let columns: Vec<Vector> = basis.iter().map(|(_, _, v)| v.clone()).collect();
    let embedding = if k == 0 { Matrix::zeros(n, 0) } else { Matrix::from_columns(n, &columns) };
    let restriction = Restriction {
        algebra: Superalgebra::abelian(vec![], vec![], Matrix::zeros(0, 0)).expect("empty algebra"),
        embedding,
        pivots: basis.iter().map(|(p, _, _)| *p).collect(),
    };
    let names: Vec<String> = columns.iter().enumerate().map(|(j, c)| basis_name(alg, c, j)).collect();
    let parities: Vec<Parity> = basis.iter().map(|(_, p, _)| *p).collect();
    let mut t = BracketTensor::new(k);
    for i in 0..k {
        for j in 0..k {
            let v = alg.bracket(&columns[i], &columns[j]);
            if is_zero_vector(&v) {
                continue;
            }
            let coords = restriction.coordinates(&v).ok_or(AlgebraError::NotStable("the bracket"))?;
            t.set_product(i, j, &coords)?;
        }
    }
    let mut twist = Matrix::zeros(k, k);
    for (j, c) in columns.iter().enumerate() {
        let coords = restriction.coordinates(&alg.apply_twist(c)).ok_or(AlgebraError::NotStable("the twist"))?;
        for (i, x) in coords.into_iter().enumerate() {
            twist[(i, j)] = x;
        }
    }
    let regular = alg.is_regular() && twist.is_invertible();
    let algebra = Superalgebra::new(names, parities, t, twist, regular)?;
    Ok(Restriction { algebra, ..restriction })
}
