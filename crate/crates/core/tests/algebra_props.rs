//! Structural invariants over fixtures and random changes of basis.

use proptest::prelude::*;
use splithom::catalog::{self, Fixture};
use splithom::connect::connection_classes;
use splithom::exactlin::{q, qf, Matrix, Vector};
use splithom::homsuper::{change_of_basis, validate, GradedSubspace, Superalgebra};
use splithom::oracle::{fuzz_instance, property_suite};
use splithom::rootspace::{root_decomposition, TwistMode};

fn fixture(which: usize) -> Fixture {
    match which {
        0 => catalog::example1(2).unwrap(),
        1 => catalog::osp12(),
        2 => catalog::build("sl2xsl2", None).unwrap().0,
        3 => catalog::twisted_sl2(qf(3, 2)).unwrap(),
        _ => catalog::graded_block(2).unwrap(),
    }
}

/// A parity-preserving change of basis from a flat list of small integers.
fn graded_change(alg: &Superalgebra, entries: &[i64]) -> Option<Matrix> {
    let n = alg.dim();
    let p = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            q(1 + entries[i * n + j].abs())
        } else if alg.parity(i) == alg.parity(j) {
            q(entries[i * n + j])
        } else {
            q(0)
        }
    });
    p.is_invertible().then_some(p)
}

fn transport(h: &GradedSubspace, p: &Matrix, alg: &Superalgebra) -> GradedSubspace {
    let inv = p.inverse().unwrap();
    let vs: Vec<Vector> = h.total().basis_vectors().iter().map(|v| inv.mul_vec(v)).collect();
    GradedSubspace::hull(alg, &vs)
}

fn corrupt(alg: &Superalgebra) -> Superalgebra {
    let mut bad = alg.clone();
    let ((i, j), row) = alg.bracket_tensor().pairs().next().map(|(k, r)| (k, r.clone())).unwrap();
    let (&k, c) = row.iter().next().unwrap();
    bad.bracket_tensor_mut().set(i, j, k, c + q(1)).unwrap();
    bad
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn validation_is_basis_independent(which in 0usize..5, entries in prop::collection::vec(-1i64..=1, 100)) {
        let fx = fixture(which);
        let Some(p) = graded_change(&fx.algebra, &entries) else { return Ok(()) };
        let moved = change_of_basis(&fx.algebra, &p).unwrap();
        prop_assert!(validate(&moved).passed);
        let bad = corrupt(&fx.algebra);
        prop_assert!(!validate(&bad).passed);
        prop_assert!(!validate(&change_of_basis(&bad, &p).unwrap()).passed);
    }

    #[test]
    fn roots_and_classes_are_basis_independent(which in 0usize..5, entries in prop::collection::vec(-1i64..=1, 100)) {
        let fx = fixture(which);
        let Some(p) = graded_change(&fx.algebra, &entries) else { return Ok(()) };
        let moved = change_of_basis(&fx.algebra, &p).unwrap();
        let h = transport(&fx.magsa, &p, &moved);
        let before = root_decomposition(&fx.algebra, &fx.magsa, TwistMode::Regular).unwrap();
        let after = root_decomposition(&moved, &h, TwistMode::Regular).unwrap();
        prop_assert_eq!(before.roots.len(), after.roots.len());
        let dims = |d: &splithom::rootspace::RootDecomposition| {
            let mut v: Vec<_> = d.spaces.iter().map(|s| (s.even().dim(), s.odd().dim())).collect();
            v.sort();
            v
        };
        prop_assert_eq!(dims(&before), dims(&after));
        prop_assert_eq!(connection_classes(&before).unwrap().len(), connection_classes(&after).unwrap().len());
    }

    #[test]
    fn yau_twists_validate(num in 1i64..=7, den in 1i64..=5, neg in any::<bool>()) {
        let t = qf(if neg { -num } else { num }, den);
        let fx = catalog::twisted_sl2(t).unwrap();
        prop_assert!(validate(&fx.algebra).passed);
        prop_assert_eq!(root_decomposition(&fx.algebra, &fx.magsa, TwistMode::Regular).unwrap().roots.len(), 2);
    }

    #[test]
    fn random_instances_satisfy_the_property_suite(seed in 1000u64..100_000) {
        let fx = fuzz_instance(seed, 8).unwrap();
        let report = property_suite(&fx);
        let failures: Vec<_> = report.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
        prop_assert!(failures.is_empty(), "seed {}: {:?}", seed, failures);
    }
}
