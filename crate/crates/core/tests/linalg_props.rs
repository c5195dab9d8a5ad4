//! Property tests for the exact linear algebra layer.

use num_traits::{One, Zero};
use proptest::prelude::*;
use splithom::exactlin::{
    format_rational, kernel, parse_rational, qf, rref, simultaneous_eigenspaces, Matrix, Rational, Subspace,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| qf(n, d))
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(rational(), r * c).prop_map(move |e| Matrix::from_fn(r, c, |i, j| e[i * c + j].clone()))
    })
}

/// A subspace of `ℚ^n` spanned by up to `n` random (often dependent) vectors.
fn subspace(n: usize) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, n), 0..=n).prop_map(move |rows| {
        let vs: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| qf(x, 1)).collect()).collect();
        Subspace::from_vectors(n, &vs)
    })
}

fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-2i64..=2, n * n)
        .prop_map(move |e| Matrix::from_fn(n, n, |i, j| qf(e[i * n + j], 1)))
        .prop_filter("singular", |m| m.is_invertible())
}

fn conj(p: &Matrix, d: &Matrix) -> Matrix {
    p.mul(d).mul(&p.inverse().unwrap())
}

fn is_rref(m: &Matrix) -> bool {
    let mut last: Option<usize> = None;
    let mut seen_zero_row = false;
    for i in 0..m.rows() {
        let row = m.row(i);
        match row.iter().position(|x| !x.is_zero()) {
            None => seen_zero_row = true,
            Some(p) => {
                if seen_zero_row || last.is_some_and(|l| p <= l) || !row[p].is_one() {
                    return false;
                }
                if (0..m.rows()).any(|k| k != i && !m[(k, p)].is_zero()) {
                    return false;
                }
                last = Some(p);
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent_and_canonical(m in matrix(5, 6)) {
        let r = rref(&m);
        prop_assert!(is_rref(&r));
        prop_assert_eq!(rref(&r), r.clone());
        prop_assert_eq!(r.rank(), m.rank());
    }

    #[test]
    fn kernel_is_exact(m in matrix(5, 6)) {
        let k = kernel(&m);
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
    }

    #[test]
    fn grassmann_identity(a in subspace(5), b in subspace(5)) {
        let s = a.sum(&b);
        let i = a.intersect(&b);
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        prop_assert!(i.is_subspace_of(&a) && i.is_subspace_of(&b));
        prop_assert!(a.is_subspace_of(&s) && b.is_subspace_of(&s));
    }

    #[test]
    fn rationals_round_trip(r in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    /// On diagonalizable commuting pairs the refinement equals the brute-force
    /// list of nonzero joint kernels over the candidate eigenvalues.
    #[test]
    fn eigen_refinement_matches_joint_kernels(
        p in invertible(4),
        d1 in prop::collection::vec(-2i64..=2, 4),
        d2 in prop::collection::vec(-2i64..=2, 4),
    ) {
        let diag = |d: &[i64]| Matrix::diagonal(&d.iter().map(|&x| qf(x, 1)).collect::<Vec<_>>());
        let (a, b) = (conj(&p, &diag(&d1)), conj(&p, &diag(&d2)));
        let refinement = simultaneous_eigenspaces(4, &[a.clone(), b.clone()]);
        prop_assert!(refinement.is_split());
        let mut brute = Vec::new();
        for x in -2i64..=2 {
            for y in -2i64..=2 {
                let shift = |m: &Matrix, c: i64| m.sub(&Matrix::identity(4).scale(&qf(c, 1)));
                let joint = kernel(&shift(&a, x).vstack(&shift(&b, y)));
                if !joint.is_zero() {
                    brute.push((vec![qf(x, 1), qf(y, 1)], joint));
                }
            }
        }
        let found: Vec<_> = refinement.blocks.iter().map(|blk| (blk.values.clone(), blk.space.clone())).collect();
        prop_assert_eq!(found, brute);
    }

    /// With Jordan blocks or irrational spectra, blocks and residue still
    /// account for the whole space and the blocks are independent.
    #[test]
    fn eigen_refinement_accounts_for_everything(
        p in invertible(4),
        shape in 0usize..3,
        c in -2i64..=2,
        s in -2i64..=2,
    ) {
        let q = |x| qf(x, 1);
        let core = match shape {
            0 => Matrix::from_i64_rows(&[&[c, 1, 0, 0], &[0, c, 0, 0], &[0, 0, s, 0], &[0, 0, 0, c]]),
            1 => Matrix::from_i64_rows(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, c, 0], &[0, 0, 0, s]]),
            _ => Matrix::from_i64_rows(&[&[0, 2, 0, 0], &[1, 0, 0, 0], &[0, 0, c, 1], &[0, 0, 0, c]]),
        };
        let a = conj(&p, &core);
        let b = a.mul(&a).add(&a.scale(&q(s)));
        let r = simultaneous_eigenspaces(4, &[a, b]);
        let mut total = Subspace::zero(4);
        let mut dims = 0;
        for blk in &r.blocks {
            dims += blk.space.dim();
            total = total.sum(&blk.space);
        }
        for res in &r.residue {
            dims += res.space.dim();
            total = total.sum(&res.space);
        }
        prop_assert_eq!(dims, 4);
        prop_assert!(total.is_full());
        prop_assert_eq!(r.is_split(), false);
    }
}
