//! Every catalog entry reproduces its recorded expectations.

use splithom::catalog::{self, Expectations, Fixture, ENTRIES};
use splithom::connect::connection_classes;
use splithom::decomp::global_decomposition;
use splithom::homsuper::validate;
use splithom::rootspace::{root_decomposition, TwistMode};

fn observe(fx: &Fixture) -> (usize, usize, usize, Vec<usize>) {
    assert!(validate(&fx.algebra).passed);
    let mode = TwistMode::for_algebra(&fx.algebra);
    let dec = root_decomposition(&fx.algebra, &fx.magsa, mode).unwrap();
    let part = connection_classes(&dec).unwrap();
    let g = global_decomposition(&dec, &part).unwrap();
    let mut dims: Vec<usize> = g.ideals.iter().map(|i| i.total.dim()).collect();
    dims.sort_unstable();
    (dec.roots.len(), part.len(), g.u.dim(), dims)
}

fn check(name: &str, param: Option<u32>) {
    let (fx, Expectations { roots, classes, u_dim, ideal_dims, .. }) = catalog::build(name, param).unwrap();
    assert_eq!(observe(&fx), (roots, classes, u_dim, ideal_dims), "{name} {param:?}");
}

#[test]
fn defaults_match() {
    for e in ENTRIES {
        check(e.name, None);
    }
}

#[test]
fn parameters_match() {
    for n in 2..=5 {
        check("example1", Some(n));
        check("example1-nonregular", Some(n));
    }
    for t in [1, 3, 5] {
        check("sl2-twisted", Some(t));
    }
    for n in 1..=3 {
        check("block", Some(n));
    }
    for k in 0..=3 {
        check("abelian", Some(k));
    }
}

#[test]
fn family_scaling() {
    for n in 2..=5u32 {
        let (fx, _) = catalog::build("example1", Some(n)).unwrap();
        let (roots, classes, u_dim, dims) = observe(&fx);
        let n = n as usize;
        assert_eq!(roots, 4 * (n - 1) + 1);
        assert_eq!(classes, n);
        assert_eq!(u_dim, 2);
        assert_eq!(dims.iter().filter(|&&d| d == 5).count(), n - 1);
    }
}

#[test]
fn bad_requests() {
    assert!(catalog::build("nope", None).is_err());
    assert!(catalog::build("example1", Some(1)).is_err());
}
