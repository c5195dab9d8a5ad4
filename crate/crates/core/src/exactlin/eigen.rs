//! Joint rational eigenspaces of a family of operators.
//!
//! Eigenvalues are the rational roots of the characteristic polynomial, found
//! with the rational root theorem on the integer-cleared polynomial. Anything
//! that does not diagonalize over `ℚ` is handed back as residue.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{kernel, Matrix, Rational, Subspace, Vector};

/// Coefficients of `det(xI − m)`, lowest degree first (monic).
///
/// Faddeev–LeVerrier recursion; exact over `ℚ`.
pub fn characteristic_polynomial(m: &Matrix) -> Vec<Rational> {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = Matrix::zeros(n, n);
    for k in 1..=n {
        let mut next = m.mul(&mk);
        let c = coeffs[n + 1 - k].clone();
        for i in 0..n {
            next[(i, i)] += &c;
        }
        mk = next;
        let tr = m.mul(&mk).trace();
        coeffs[n - k] = -tr / Rational::from_integer(BigInt::from(k));
    }
    coeffs
}

/// Rational roots of `poly` (lowest degree first) with multiplicities, in
/// ascending order.
pub fn rational_roots(poly: &[Rational]) -> Vec<(Rational, usize)> {
    let mut p = trim(poly.to_vec());
    let mut roots = Vec::new();
    if p.len() <= 1 {
        return roots;
    }
    let mut zero_mult = 0;
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
    }
    while p.len() > 1 {
        let ints = integer_coefficients(&p);
        let lead = ints.last().unwrap().abs();
        let constant = ints[0].abs();
        let mut found = None;
        'search: for num in divisors(&constant) {
            for den in divisors(&lead) {
                for sign in [1, -1] {
                    let cand = Rational::new(BigInt::from(sign) * &num, den.clone());
                    if eval(&p, &cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        let Some(root) = found else { break };
        let mut mult = 0;
        while p.len() > 1 && eval(&p, &root).is_zero() {
            p = divide_linear(&p, &root);
            mult += 1;
        }
        roots.push((root, mult));
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    roots
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Quotient of `p` by `(x − root)`; the remainder is discarded.
fn divide_linear(p: &[Rational], root: &Rational) -> Vec<Rational> {
    let deg = p.len() - 1;
    let mut q = vec![Rational::zero(); deg];
    let mut carry = Rational::zero();
    for i in (0..deg).rev() {
        carry = &p[i + 1] + carry * root;
        q[i] = carry.clone();
    }
    q
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient of `a` by the monic `b`.
fn poly_div_exact(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() <= db {
        return vec![Rational::one()];
    }
    let dq = rem.len() - 1 - db;
    let mut q = vec![Rational::zero(); dq + 1];
    for k in (0..=dq).rev() {
        let c = rem[k + db].clone() / &b[db];
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    q
}

fn eval_matrix(p: &[Rational], m: &Matrix) -> Matrix {
    let n = m.rows();
    let mut acc = Matrix::zeros(n, n);
    for c in p.iter().rev() {
        acc = acc.mul(m);
        for i in 0..n {
            acc[(i, i)] += c;
        }
    }
    acc
}

fn integer_coefficients(p: &[Rational]) -> Vec<BigInt> {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|c| c / &g).collect()
    }
}

/// Positive divisors of `n > 0`, ascending. Trial division; fine for the
/// coefficient sizes that desk-scale characteristic polynomials produce.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    if let Some(small) = n.to_u128() {
        let mut small_divs = Vec::new();
        let mut large = Vec::new();
        let mut d: u128 = 1;
        while d * d <= small {
            if small % d == 0 {
                small_divs.push(d);
                if d * d != small {
                    large.push(small / d);
                }
            }
            d += 1;
        }
        large.reverse();
        return small_divs.into_iter().chain(large).map(BigInt::from).collect();
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let co = n / &d;
            if co != d {
                out.push(co);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Why part of the space could not be split into rational eigenspaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResidueKind {
    /// The block is not invariant under the operator (non-commuting input).
    NotInvariant,
    /// A rational eigenvalue whose generalized eigenspace is larger than its
    /// eigenspace.
    Defective,
    /// The part of the block carried by irrational (or non-real) eigenvalues.
    Irrational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    pub space: Subspace,
    pub kind: ResidueKind,
    /// Index of the operator that failed to split the block.
    pub operator: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenBlock {
    /// One eigenvalue per input operator.
    pub values: Vec<Rational>,
    pub space: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenRefinement {
    /// Joint eigenspaces, sorted lexicographically by eigenvalue vector.
    pub blocks: Vec<EigenBlock>,
    pub residue: Vec<Residue>,
}

impl EigenRefinement {
    pub fn is_split(&self) -> bool {
        self.residue.iter().all(|r| r.space.is_zero())
    }

    pub fn residue_space(&self, n: usize) -> Subspace {
        self.residue.iter().fold(Subspace::zero(n), |acc, r| acc.sum(&r.space))
    }

    pub fn block(&self, values: &[Rational]) -> Option<&EigenBlock> {
        self.blocks.iter().find(|b| b.values == values)
    }
}

/// Refines `ℚ^dim` by the joint rational eigenspaces of `ops`.
///
/// Starts from the whole space and, operator by operator, splits each
/// current block into eigenspaces of the operator restricted to the block.
/// Parts of a block that the operator does not diagonalize over `ℚ` are moved
/// to the residue and not refined further.
pub fn simultaneous_eigenspaces(dim: usize, ops: &[Matrix]) -> EigenRefinement {
    for op in ops {
        assert!(op.is_square() && op.rows() == dim, "operators must be {dim}x{dim}");
    }
    let mut blocks = vec![EigenBlock { values: Vec::new(), space: Subspace::full(dim) }];
    let mut residue = Vec::new();
    for (k, op) in ops.iter().enumerate() {
        let mut next = Vec::new();
        for block in blocks {
            if block.space.is_zero() {
                continue;
            }
            split_block(k, op, block, &mut next, &mut residue);
        }
        blocks = next;
    }
    blocks.sort_by(|a, b| a.values.cmp(&b.values));
    EigenRefinement { blocks, residue }
}

fn split_block(
    k: usize,
    op: &Matrix,
    block: EigenBlock,
    out: &mut Vec<EigenBlock>,
    residue: &mut Vec<Residue>,
) {
    let basis = block.space.basis_vectors();
    let d = basis.len();
    let mut restricted = Matrix::zeros(d, d);
    for (j, b) in basis.iter().enumerate() {
        let Some(coords) = block.space.coordinates(&op.mul_vec(b)) else {
            residue.push(Residue { space: block.space, kind: ResidueKind::NotInvariant, operator: k });
            return;
        };
        for (i, c) in coords.into_iter().enumerate() {
            restricted[(i, j)] = c;
        }
    }
    let lift = |coords: &Subspace| -> Subspace {
        let vs: Vec<Vector> = coords
            .basis_vectors()
            .iter()
            .map(|c| {
                let mut v = super::zero_vector(block.space.ambient_dim());
                for (ci, b) in c.iter().zip(&basis) {
                    if !ci.is_zero() {
                        for (acc, x) in v.iter_mut().zip(b) {
                            *acc += ci * x;
                        }
                    }
                }
                v
            })
            .collect();
        Subspace::from_vectors(block.space.ambient_dim(), &vs)
    };

    let charpoly = characteristic_polynomial(&restricted);
    let roots = rational_roots(&charpoly);
    let mut rational_part = vec![Rational::one()];
    for (lambda, mult) in &roots {
        let shifted = restricted.sub(&Matrix::identity(d).scale(lambda));
        let linear = [-lambda.clone(), Rational::one()];
        for _ in 0..*mult {
            rational_part = poly_mul(&rational_part, &linear);
        }
        let eigen = kernel(&shifted);
        if eigen.dim() == *mult {
            let mut values = block.values.clone();
            values.push(lambda.clone());
            out.push(EigenBlock { values, space: lift(&eigen) });
        } else {
            let generalized = kernel(&shifted.pow(*mult));
            residue.push(Residue { space: lift(&generalized), kind: ResidueKind::Defective, operator: k });
        }
    }
    let rest = poly_div_exact(&charpoly, &rational_part);
    if rest.len() > 1 {
        let irrational = kernel(&eval_matrix(&rest, &restricted));
        residue.push(Residue { space: lift(&irrational), kind: ResidueKind::Irrational, operator: k });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{q, qf};

    #[test]
    fn charpoly_of_small_matrices() {
        let m = Matrix::from_i64_rows(&[&[2, 1], &[0, 3]]);
        assert_eq!(characteristic_polynomial(&m), vec![q(6), q(-5), q(1)]);
        assert_eq!(characteristic_polynomial(&Matrix::zeros(0, 0)), vec![q(1)]);
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (x - 1/2)^2 (x + 3) x = x^4 + 2x^3 - 11/4 x^2 + 3/4 x
        let p = vec![q(0), qf(3, 4), qf(-11, 4), q(2), q(1)];
        assert_eq!(rational_roots(&p), vec![(q(-3), 1), (q(0), 1), (qf(1, 2), 2)]);
        // x^2 - 2 has no rational roots
        assert!(rational_roots(&[q(-2), q(0), q(1)]).is_empty());
    }

    #[test]
    fn single_diagonal_operator() {
        let d = Matrix::diagonal(&[q(1), q(1), q(2)]);
        let r = simultaneous_eigenspaces(3, &[d]);
        assert!(r.is_split());
        assert_eq!(r.blocks.len(), 2);
        assert_eq!(r.blocks[0].values, vec![q(1)]);
        assert_eq!(r.blocks[0].space, Subspace::coordinate(3, [0, 1]));
        assert_eq!(r.blocks[1].values, vec![q(2)]);
        assert_eq!(r.blocks[1].space, Subspace::coordinate(3, [2]));
    }

    #[test]
    fn no_operators_gives_the_whole_space() {
        let r = simultaneous_eigenspaces(4, &[]);
        assert_eq!(r.blocks.len(), 1);
        assert!(r.blocks[0].values.is_empty());
        assert!(r.blocks[0].space.is_full());
    }

    #[test]
    fn nilpotent_and_irrational_parts_become_residue() {
        let jordan = Matrix::from_i64_rows(&[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 2], &[0, 0, 1, 0]]);
        let r = simultaneous_eigenspaces(4, &[jordan]);
        assert!(r.blocks.is_empty());
        let kinds: Vec<_> = r.residue.iter().map(|x| (x.kind, x.space.dim())).collect();
        assert_eq!(kinds, vec![(ResidueKind::Defective, 2), (ResidueKind::Irrational, 2)]);
        assert!(r.residue_space(4).is_full());
    }
}
