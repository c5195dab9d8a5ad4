//! Hom-Lie superalgebras given by structure constants.
//!
//! An algebra is a `ℤ₂`-graded space with a homogeneous basis, a bilinear
//! bracket stored as a sparse tensor `[b_i, b_j] = Σ_k c(i,j,k) b_k`, and an
//! even twist map `φ` stored as a dense matrix.

mod construct;
mod graded;
mod validate;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_traits::{One, Zero};

pub use construct::{
    change_of_basis, check_automorphism, direct_sum, restrict_to, twist_by, yau_twist, Restriction,
};
pub use graded::GradedSubspace;
pub use validate::{validate, Axiom, ValidationReport, Violation};

use crate::error::AlgebraError;
use crate::exactlin::{Matrix, Rational, Subspace, Vector};

/// Element of `ℤ₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Option<Parity> {
        match bit {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^{ī j̄}`.
    pub fn sign(self, other: Parity) -> Rational {
        if self.is_odd() && other.is_odd() {
            -Rational::one()
        } else {
            Rational::one()
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

/// Sparse structure constants. Only nonzero coefficients are stored and
/// unlisted ordered pairs bracket to zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BracketTensor {
    dim: usize,
    entries: BTreeMap<(usize, usize), BTreeMap<usize, Rational>>,
}

impl BracketTensor {
    pub fn new(dim: usize) -> Self {
        BracketTensor { dim, entries: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check(&self, index: usize) -> Result<(), AlgebraError> {
        if index < self.dim {
            Ok(())
        } else {
            Err(AlgebraError::IndexOutOfRange { index, dim: self.dim })
        }
    }

    /// Overwrites `c(i,j,k)`.
    pub fn set(&mut self, i: usize, j: usize, k: usize, c: Rational) -> Result<(), AlgebraError> {
        self.check(i)?;
        self.check(j)?;
        self.check(k)?;
        let row = self.entries.entry((i, j)).or_default();
        if c.is_zero() {
            row.remove(&k);
        } else {
            row.insert(k, c);
        }
        if row.is_empty() {
            self.entries.remove(&(i, j));
        }
        Ok(())
    }

    /// Replaces the whole product `[b_i, b_j]`.
    pub fn set_product(&mut self, i: usize, j: usize, value: &[Rational]) -> Result<(), AlgebraError> {
        self.check(i)?;
        self.check(j)?;
        if value.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim, found: value.len() });
        }
        let row: BTreeMap<usize, Rational> =
            value.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect();
        if row.is_empty() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), row);
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Rational {
        self.entries.get(&(i, j)).and_then(|r| r.get(&k)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn has_pair(&self, i: usize, j: usize) -> bool {
        self.entries.contains_key(&(i, j))
    }

    /// `[b_i, b_j]` as a dense vector.
    pub fn product(&self, i: usize, j: usize) -> Vector {
        let mut v = crate::exactlin::zero_vector(self.dim);
        if let Some(row) = self.entries.get(&(i, j)) {
            for (&k, c) in row {
                v[k] = c.clone();
            }
        }
        v
    }

    /// Nonzero entries `((i, j), [(k, c)])` in ascending pair order.
    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), &BTreeMap<usize, Rational>)> {
        self.entries.iter().map(|(&p, r)| (p, r))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Fills every unlisted mirror pair `(j, i)` from `(i, j)` using
    /// `[x,y] = −(−1)^{ī j̄}[y,x]`, and checks listed mirror pairs agree.
    pub fn complete_skew(&mut self, parities: &[Parity]) -> Result<(), AlgebraError> {
        let listed: Vec<(usize, usize)> = self.entries.keys().copied().collect();
        for (i, j) in listed {
            let sign = -parities[i].sign(parities[j]);
            let expected: BTreeMap<usize, Rational> =
                self.entries[&(i, j)].iter().map(|(&k, c)| (k, &sign * c)).collect();
            match self.entries.get(&(j, i)) {
                Some(existing) if *existing != expected => {
                    return Err(AlgebraError::Consistency { left: i.min(j), right: i.max(j) });
                }
                Some(_) => {}
                None => {
                    self.entries.insert((j, i), expected);
                }
            }
        }
        Ok(())
    }
}

/// A (possibly non-regular) Hom-Lie superalgebra over `ℚ`.
///
/// Construction only checks shapes; the axioms are checked by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superalgebra {
    names: Vec<String>,
    parities: Vec<Parity>,
    bracket: BracketTensor,
    twist: Matrix,
    regular: bool,
}

impl Superalgebra {
    pub fn new(
        names: Vec<String>,
        parities: Vec<Parity>,
        bracket: BracketTensor,
        twist: Matrix,
        regular: bool,
    ) -> Result<Self, AlgebraError> {
        let n = parities.len();
        let mismatch = |found| AlgebraError::DimensionMismatch { expected: n, found };
        if names.len() != n {
            return Err(mismatch(names.len()));
        }
        if bracket.dim() != n {
            return Err(mismatch(bracket.dim()));
        }
        if twist.rows() != n {
            return Err(mismatch(twist.rows()));
        }
        if twist.cols() != n {
            return Err(mismatch(twist.cols()));
        }
        Ok(Superalgebra { names, parities, bracket, twist, regular })
    }

    /// Zero-bracket algebra with the given parities and twist.
    pub fn abelian(names: Vec<String>, parities: Vec<Parity>, twist: Matrix) -> Result<Self, AlgebraError> {
        let n = parities.len();
        Self::new(names, parities, BracketTensor::new(n), twist, true)
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn bracket_tensor(&self) -> &BracketTensor {
        &self.bracket
    }

    pub fn twist(&self) -> &Matrix {
        &self.twist
    }

    /// Whether the algebra claims `φ` is an automorphism.
    pub fn is_regular(&self) -> bool {
        self.regular
    }

    pub fn set_regular(&mut self, regular: bool) {
        self.regular = regular;
    }

    pub fn set_twist(&mut self, twist: Matrix) -> Result<(), AlgebraError> {
        if twist.rows() != self.dim() || twist.cols() != self.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim(), found: twist.rows() });
        }
        self.twist = twist;
        Ok(())
    }

    pub fn bracket_tensor_mut(&mut self) -> &mut BracketTensor {
        &mut self.bracket
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        crate::exactlin::unit_vector(self.dim(), i)
    }

    /// Bilinear extension of the structure constants. Panics on wrong length;
    /// see [`bracket_eval`] for the checked form.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let n = self.dim();
        assert!(x.len() == n && y.len() == n, "bracket arguments must have length {n}");
        let mut out = crate::exactlin::zero_vector(n);
        for ((i, j), row) in self.bracket.pairs() {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            let s = &x[i] * &y[j];
            for (&k, c) in row {
                out[k] += &s * c;
            }
        }
        out
    }

    pub fn apply_twist(&self, v: &[Rational]) -> Vector {
        self.twist.mul_vec(v)
    }

    pub fn twist_inverse(&self) -> Option<Matrix> {
        self.twist.inverse()
    }

    /// Matrix of `v ↦ [x, v]`.
    pub fn ad(&self, x: &[Rational]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.bracket(x, &self.basis_vector(j))).collect();
        Matrix::from_columns(n, &cols)
    }

    /// Span of all brackets `[a, b]` with `a ∈ A`, `b ∈ B`.
    pub fn bracket_spaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let n = self.dim();
        let bs = b.basis_vectors();
        let mut vs = Vec::new();
        for x in a.basis_vectors() {
            for y in &bs {
                let v = self.bracket(&x, y);
                if !crate::exactlin::is_zero_vector(&v) {
                    vs.push(v);
                }
            }
        }
        Subspace::from_vectors(n, &vs)
    }

    /// `[A, B]` for graded subspaces, itself graded.
    pub fn bracket_graded(&self, a: &GradedSubspace, b: &GradedSubspace) -> GradedSubspace {
        let bs = b.homogeneous_basis();
        let mut vs = Vec::new();
        for (_, x) in a.homogeneous_basis() {
            for (_, y) in &bs {
                let v = self.bracket(&x, y);
                if !crate::exactlin::is_zero_vector(&v) {
                    vs.push(v);
                }
            }
        }
        GradedSubspace::hull(self, &vs)
    }

    /// `[𝔏, 𝔏]`.
    pub fn derived_algebra(&self) -> Subspace {
        let vs: Vec<Vector> = self.bracket.pairs().map(|((i, j), _)| self.bracket.product(i, j)).collect();
        Subspace::from_vectors(self.dim(), &vs)
    }

    pub fn even_space(&self) -> Subspace {
        self.parity_space(Parity::Even)
    }

    pub fn odd_space(&self) -> Subspace {
        self.parity_space(Parity::Odd)
    }

    pub fn parity_space(&self, p: Parity) -> Subspace {
        let idx = (0..self.dim()).filter(|&i| self.parities[i] == p);
        Subspace::coordinate(self.dim(), idx)
    }

    /// Splits `v` into its even and odd components.
    pub fn homogeneous_parts(&self, v: &[Rational]) -> (Vector, Vector) {
        let mut even = v.to_vec();
        let mut odd = v.to_vec();
        for (i, p) in self.parities.iter().enumerate() {
            match p {
                Parity::Even => odd[i] = Rational::zero(),
                Parity::Odd => even[i] = Rational::zero(),
            }
        }
        (even, odd)
    }

    /// Parity of a nonzero homogeneous vector, `None` if mixed or zero.
    pub fn parity_of(&self, v: &[Rational]) -> Option<Parity> {
        let mut found = None;
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match found {
                None => found = Some(self.parities[i]),
                Some(p) if p != self.parities[i] => return None,
                _ => {}
            }
        }
        found
    }

    /// Human-readable linear combination of basis names.
    pub fn describe(&self, v: &[Rational]) -> String {
        let mut terms = Vec::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = &self.names[i];
            if c.is_one() {
                terms.push(name.clone());
            } else if (-c).is_one() {
                terms.push(format!("-{name}"));
            } else {
                terms.push(format!("{}*{name}", crate::exactlin::format_rational(c)));
            }
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        }
    }
}

/// `[x, y]` with length checks.
pub fn bracket_eval(alg: &Superalgebra, x: &[Rational], y: &[Rational]) -> Result<Vector, AlgebraError> {
    for v in [x, y] {
        if v.len() != alg.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: alg.dim(), found: v.len() });
        }
    }
    Ok(alg.bracket(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::q;

    fn tiny() -> Superalgebra {
        // [b1, b0] = b0, both even
        let mut t = BracketTensor::new(2);
        t.set(1, 0, 0, q(1)).unwrap();
        t.complete_skew(&[Parity::Even, Parity::Even]).unwrap();
        Superalgebra::new(
            vec!["a".into(), "b".into()],
            vec![Parity::Even, Parity::Even],
            t,
            Matrix::identity(2),
            true,
        )
        .unwrap()
    }

    #[test]
    fn parity_arithmetic() {
        assert_eq!(Parity::Odd + Parity::Odd, Parity::Even);
        assert_eq!(Parity::Odd + Parity::Even, Parity::Odd);
        assert_eq!(Parity::Odd.sign(Parity::Odd), q(-1));
        assert_eq!(Parity::Even.sign(Parity::Odd), q(1));
    }

    #[test]
    fn skew_completion_fills_the_mirror() {
        let alg = tiny();
        assert_eq!(alg.bracket(&alg.basis_vector(0), &alg.basis_vector(1)), vec![q(-1), q(0)]);
    }

    #[test]
    fn skew_completion_detects_conflicts() {
        let mut t = BracketTensor::new(2);
        t.set(0, 1, 0, q(1)).unwrap();
        t.set(1, 0, 0, q(1)).unwrap();
        assert_eq!(
            t.complete_skew(&[Parity::Even, Parity::Even]),
            Err(AlgebraError::Consistency { left: 0, right: 1 })
        );
    }

    #[test]
    fn bracket_with_zero_is_zero_and_lengths_are_checked() {
        let alg = tiny();
        let x = vec![q(3), q(-2)];
        assert_eq!(bracket_eval(&alg, &x, &[q(0), q(0)]).unwrap(), vec![q(0), q(0)]);
        assert!(bracket_eval(&alg, &x, &[q(1)]).is_err());
    }

    #[test]
    fn describe_formats_combinations() {
        let alg = tiny();
        assert_eq!(alg.describe(&[q(1), q(-2)]), "a - 2*b");
        assert_eq!(alg.describe(&[q(0), q(0)]), "0");
    }
}
