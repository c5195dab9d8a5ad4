use std::fmt;

use num_traits::Zero;

use super::{Parity, Superalgebra};
use crate::exactlin::{add_vectors, is_zero_vector, scale_vector, zero_vector, Vector};

/// The axiom a violation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// `c(i,j,k) ≠ 0 ⟹ |k| = |i| + |j|`.
    BracketGrading,
    /// `[x,y] = −(−1)^{ī j̄}[y,x]`.
    SkewSupersymmetry,
    /// `Σ_cyc (−1)^{ī k̄}[[x,y],φ(z)] = 0`.
    HomJacobi,
    /// `φ` preserves parity.
    TwistEven,
    /// `φ([x,y]) = [φ(x),φ(y)]`.
    TwistHomomorphism,
    /// `φ` invertible (only demanded of regular algebras).
    TwistInvertible,
}

impl Axiom {
    pub fn id(self) -> &'static str {
        match self {
            Axiom::BracketGrading => "bracket-grading",
            Axiom::SkewSupersymmetry => "skew-supersymmetry",
            Axiom::HomJacobi => "super-hom-jacobi",
            Axiom::TwistEven => "twist-even",
            Axiom::TwistHomomorphism => "twist-homomorphism",
            Axiom::TwistInvertible => "twist-invertible",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A failed axiom instance: the basis indices involved and both sides of the
/// identity as vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
    pub lhs: Vector,
    pub rhs: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn violations_of(&self, axiom: Axiom) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.axiom == axiom)
    }

    pub fn holds(&self, axiom: Axiom) -> bool {
        self.violations_of(axiom).next().is_none()
    }
}

/// Checks every axiom exhaustively on basis tuples.
pub fn validate(alg: &Superalgebra) -> ValidationReport {
    let mut violations = Vec::new();
    check_grading(alg, &mut violations);
    let skew_ok = check_skew(alg, &mut violations);
    check_jacobi(alg, skew_ok, &mut violations);
    check_twist(alg, &mut violations);
    ValidationReport { passed: violations.is_empty(), violations }
}

fn check_grading(alg: &Superalgebra, out: &mut Vec<Violation>) {
    for ((i, j), row) in alg.bracket_tensor().pairs() {
        let target = alg.parity(i) + alg.parity(j);
        for &k in row.keys() {
            if alg.parity(k) != target {
                let lhs = alg.bracket_tensor().product(i, j);
                let (even, odd) = alg.homogeneous_parts(&lhs);
                let rhs = if target == Parity::Even { even } else { odd };
                out.push(Violation { axiom: Axiom::BracketGrading, witness: vec![i, j, k], lhs, rhs });
            }
        }
    }
}

fn check_skew(alg: &Superalgebra, out: &mut Vec<Violation>) -> bool {
    let t = alg.bracket_tensor();
    let before = out.len();
    for i in 0..alg.dim() {
        for j in i..alg.dim() {
            if !t.has_pair(i, j) && !t.has_pair(j, i) {
                continue;
            }
            let lhs = t.product(i, j);
            let sign = -alg.parity(i).sign(alg.parity(j));
            let rhs = scale_vector(&sign, &t.product(j, i));
            if lhs != rhs {
                out.push(Violation { axiom: Axiom::SkewSupersymmetry, witness: vec![i, j], lhs, rhs });
            }
        }
    }
    out.len() == before
}

/// The cyclic super Hom-Jacobi sum on basis elements `(i, j, k)`.
pub(crate) fn jacobi_sum(alg: &Superalgebra, i: usize, j: usize, k: usize) -> Vector {
    let (pi, pj, pk) = (alg.parity(i), alg.parity(j), alg.parity(k));
    let phi = alg.twist();
    let term = |a: usize, b: usize, c: usize| -> Vector {
        let ab = alg.bracket_tensor().product(a, b);
        if is_zero_vector(&ab) {
            return zero_vector(alg.dim());
        }
        alg.bracket(&ab, &phi.column(c))
    };
    let t1 = scale_vector(&pi.sign(pk), &term(i, j, k));
    let t2 = scale_vector(&pi.sign(pj), &term(j, k, i));
    let t3 = scale_vector(&pj.sign(pk), &term(k, i, j));
    add_vectors(&add_vectors(&t1, &t2), &t3)
}

fn check_jacobi(alg: &Superalgebra, skew_ok: bool, out: &mut Vec<Violation>) {
    let n = alg.dim();
    if alg.bracket_tensor().is_zero() {
        return;
    }
    for i in 0..n {
        let j_start = if skew_ok { i } else { 0 };
        for j in j_start..n {
            let k_start = if skew_ok { j } else { 0 };
            for k in k_start..n {
                let s = jacobi_sum(alg, i, j, k);
                if !is_zero_vector(&s) {
                    out.push(Violation {
                        axiom: Axiom::HomJacobi,
                        witness: vec![i, j, k],
                        lhs: s,
                        rhs: zero_vector(n),
                    });
                }
            }
        }
    }
}

fn check_twist(alg: &Superalgebra, out: &mut Vec<Violation>) {
    let n = alg.dim();
    let phi = alg.twist();
    for src in 0..n {
        for tgt in 0..n {
            if !phi[(tgt, src)].is_zero() && alg.parity(src) != alg.parity(tgt) {
                let lhs = phi.column(src);
                let (even, odd) = alg.homogeneous_parts(&lhs);
                let rhs = if alg.parity(src) == Parity::Even { even } else { odd };
                out.push(Violation { axiom: Axiom::TwistEven, witness: vec![src, tgt], lhs, rhs });
            }
        }
    }
    let images: Vec<Vector> = (0..n).map(|i| phi.column(i)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = phi.mul_vec(&alg.bracket_tensor().product(i, j));
            let rhs = alg.bracket(&images[i], &images[j]);
            if lhs != rhs {
                out.push(Violation { axiom: Axiom::TwistHomomorphism, witness: vec![i, j], lhs, rhs });
            }
        }
    }
    if alg.is_regular() && !phi.is_invertible() {
        let kernel = crate::exactlin::kernel(phi);
        let lhs = kernel.basis_vectors().into_iter().next().unwrap_or_else(|| zero_vector(n));
        let rhs = phi.mul_vec(&lhs);
        let witness = lhs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect();
        out.push(Violation { axiom: Axiom::TwistInvertible, witness, lhs, rhs });
    }
}
