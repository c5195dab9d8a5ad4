//! Built-in algebras: the graded family with generators `e₁, e₂, e₃` and
//! blocks `h_n, x_n, y_n | f_n, g_n` truncated at `n ≤ N`, its non-regular
//! variant, and the small classical templates used by the fuzzer.

use crate::decomp::ClassIdeal;
use crate::error::AlgebraError;
use crate::exactlin::{q, qf, Matrix, Rational, Subspace, Vector};
use crate::homsuper::{restrict_to, BracketTensor, GradedSubspace, Parity, Superalgebra};

/// An algebra together with its MAGSA.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub algebra: Superalgebra,
    pub magsa: GradedSubspace,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("parameter must be at least {min}, got {got}")]
    ParameterTooSmall { min: u32, got: u32 },
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

struct Builder {
    names: Vec<String>,
    parities: Vec<Parity>,
    products: Vec<(usize, usize, usize, Rational)>,
    twist: Vec<Rational>,
}

impl Builder {
    fn new() -> Self {
        Builder { names: Vec::new(), parities: Vec::new(), products: Vec::new(), twist: Vec::new() }
    }

    fn basis(&mut self, name: impl Into<String>, parity: Parity, twist: Rational) -> usize {
        self.names.push(name.into());
        self.parities.push(parity);
        self.twist.push(twist);
        self.names.len() - 1
    }

    fn product(&mut self, i: usize, j: usize, c: Rational, k: usize) {
        self.products.push((i, j, k, c));
    }

    fn build(self) -> Superalgebra {
        let n = self.names.len();
        let mut t = BracketTensor::new(n);
        for (i, j, k, c) in self.products {
            t.set(i, j, k, c).expect("indices in range");
        }
        t.complete_skew(&self.parities).expect("listed products are consistent");
        Superalgebra::new(self.names, self.parities, t, Matrix::diagonal(&self.twist), true)
            .expect("shapes agree")
    }
}

/// Installs the block `h, x, y | f, g` with parameter `n`; returns the index
/// of `h`. At `n = 1` the twist is the identity and the block is `osp(1|2)`.
fn install_block(b: &mut Builder, n: i64, suffix: &str) -> usize {
    let n2 = n * n;
    let h = b.basis(format!("h{suffix}"), Parity::Even, q(1));
    let x = b.basis(format!("x{suffix}"), Parity::Even, q(n2));
    let y = b.basis(format!("y{suffix}"), Parity::Even, qf(1, n2));
    let f = b.basis(format!("f{suffix}"), Parity::Odd, qf(1, n));
    let g = b.basis(format!("g{suffix}"), Parity::Odd, q(n));
    b.product(h, x, q(2 * n2), x);
    b.product(h, y, qf(-2, n2), y);
    b.product(x, y, q(1), h);
    b.product(y, g, qf(1, n), f);
    b.product(x, f, q(n), g);
    b.product(h, f, qf(-1, n), f);
    b.product(h, g, q(n), g);
    b.product(g, f, q(1), h);
    b.product(g, g, q(-2 * n2), x);
    b.product(f, f, qf(2, n2), y);
    h
}

fn check_truncation(n: u32) -> Result<(), CatalogError> {
    if n < 2 {
        Err(CatalogError::ParameterTooSmall { min: 2, got: n })
    } else {
        Ok(())
    }
}

/// The graded family truncated at `N`, with `H = ⟨e₂, h₂, …, h_N⟩ ⊕ ⟨e₃⟩`.
///
/// Basis order: `e1, e2, e3`, then `h_n, x_n, y_n, f_n, g_n` for each `n`.
pub fn example1(n_max: u32) -> Result<Fixture, CatalogError> {
    check_truncation(n_max)?;
    let mut b = Builder::new();
    let e1 = b.basis("e1", Parity::Even, q(1));
    let e2 = b.basis("e2", Parity::Even, q(1));
    let e3 = b.basis("e3", Parity::Odd, q(1));
    b.product(e2, e1, q(1), e1);
    let mut h_indices = vec![e2, e3];
    for n in 2..=n_max {
        h_indices.push(install_block(&mut b, i64::from(n), &n.to_string()));
    }
    let algebra = b.build();
    let magsa = GradedSubspace::coordinate(&algebra, &h_indices);
    Ok(Fixture { algebra, magsa })
}

/// Same bracket as [`example1`] with `φ′(e₃) = 0`; flagged non-regular.
pub fn example1_nonregular(n_max: u32) -> Result<Fixture, CatalogError> {
    let Fixture { mut algebra, magsa } = example1(n_max)?;
    let e3 = algebra.index_of("e3").expect("e3 present");
    let mut twist = algebra.twist().clone();
    twist[(e3, e3)] = q(0);
    algebra.set_twist(twist)?;
    algebra.set_regular(false);
    Ok(Fixture { algebra, magsa })
}

/// `sl(2)` with basis `h, e, f`, identity twist, `H = ⟨h⟩`.
pub fn sl2() -> Fixture {
    let mut b = Builder::new();
    let h = b.basis("h", Parity::Even, q(1));
    let e = b.basis("e", Parity::Even, q(1));
    let f = b.basis("f", Parity::Even, q(1));
    b.product(h, e, q(2), e);
    b.product(h, f, q(-2), f);
    b.product(e, f, q(1), h);
    let algebra = b.build();
    let magsa = GradedSubspace::coordinate(&algebra, &[h]);
    Fixture { algebra, magsa }
}

/// The five-dimensional block `h, x, y | f, g` with parameter `n ≥ 1`
/// standing alone, `H = ⟨h⟩`.
pub fn graded_block(n: u32) -> Result<Fixture, CatalogError> {
    if n < 1 {
        return Err(CatalogError::ParameterTooSmall { min: 1, got: n });
    }
    let mut b = Builder::new();
    let h = install_block(&mut b, i64::from(n), "");
    let algebra = b.build();
    let magsa = GradedSubspace::coordinate(&algebra, &[h]);
    Ok(Fixture { algebra, magsa })
}

/// `osp(1|2)` with basis `h, x, y | f, g`, identity twist, `H = ⟨h⟩`.
pub fn osp12() -> Fixture {
    graded_block(1).expect("parameter is positive")
}

/// Yau twist of `sl(2)` by `diag(1, t, 1/t)`.
pub fn twisted_sl2(t: Rational) -> Result<Fixture, AlgebraError> {
    let base = sl2();
    let psi = Matrix::diagonal(&[q(1), t.clone(), t.recip()]);
    let algebra = crate::homsuper::yau_twist(&base.algebra, &psi)?;
    Ok(Fixture { algebra, magsa: base.magsa })
}

/// Abelian algebra with `even` even and `odd` odd basis vectors, identity
/// twist, `H = 𝔏`.
pub fn abelian(even: usize, odd: usize) -> Fixture {
    let mut b = Builder::new();
    for i in 0..even {
        b.basis(format!("a{i}"), Parity::Even, q(1));
    }
    for i in 0..odd {
        b.basis(format!("z{i}"), Parity::Odd, q(1));
    }
    let algebra = b.build();
    let magsa = GradedSubspace::full(&algebra);
    Fixture { algebra, magsa }
}

/// Direct sum of fixtures with basis names suffixed by summand position.
pub fn sum_of(parts: &[Fixture]) -> Fixture {
    let mut acc: Option<Fixture> = None;
    for (idx, part) in parts.iter().enumerate() {
        let mut alg = part.algebra.clone();
        let renamed: Vec<String> = alg.names().iter().map(|n| format!("{n}_{idx}")).collect();
        alg = Superalgebra::new(renamed, alg.parities().to_vec(), alg.bracket_tensor().clone(), alg.twist().clone(), alg.is_regular())
            .expect("same shapes");
        acc = Some(match acc {
            None => Fixture { algebra: alg, magsa: part.magsa.clone() },
            Some(prev) => {
                let algebra = crate::homsuper::direct_sum(&prev.algebra, &alg);
                let magsa = embed_pair(&algebra, &prev.magsa, &part.magsa);
                Fixture { algebra, magsa }
            }
        });
    }
    acc.unwrap_or_else(|| abelian(0, 0))
}

fn embed_pair(sum: &Superalgebra, a: &GradedSubspace, b: &GradedSubspace) -> GradedSubspace {
    let n = sum.dim();
    let na = a.ambient_dim();
    let pad = |v: Vec<Rational>, front: bool| -> Vec<Rational> {
        let mut out = crate::exactlin::zero_vector(n);
        let off = if front { 0 } else { na };
        for (i, c) in v.into_iter().enumerate() {
            out[off + i] = c;
        }
        out
    };
    let mut vs: Vec<Vec<Rational>> = a.total().basis_vectors().into_iter().map(|v| pad(v, true)).collect();
    vs.extend(b.total().basis_vectors().into_iter().map(|v| pad(v, false)));
    GradedSubspace::hull(sum, &vs)
}

/// The ideal attached to a connection class, as a standalone algebra with
/// `H` restricted to the ideal's Cartan part.
pub fn component_restriction(alg: &Superalgebra, ideal: &ClassIdeal) -> Result<Fixture, AlgebraError> {
    let r = restrict_to(alg, &ideal.total)?;
    let magsa = r.transport(&ideal.h_part).ok_or(AlgebraError::NotStable("the restriction"))?;
    Ok(Fixture { algebra: r.algebra, magsa })
}

/// A MAGSA candidate built greedily from basis vectors, for documents that
/// do not name one. Even basis vectors whose operator `φ⁻¹∘ad` (or `ad` when
/// `φ` is singular) splits over ℚ are taken first; any further basis vector
/// keeping the span abelian and twist-closed is then added.
pub fn greedy_magsa(alg: &Superalgebra) -> GradedSubspace {
    let n = alg.dim();
    let phi = alg.twist();
    let phi_inv = phi.inverse();
    let closure = |h: &Subspace, v: &Vector| -> Subspace {
        let mut vs = h.basis_vectors();
        let mut x = v.clone();
        for _ in 0..=n {
            vs.push(x.clone());
            x = phi.mul_vec(&x);
        }
        Subspace::from_vectors(n, &vs)
    };
    let acceptable = |h: &Subspace| alg.bracket_spaces(h, h).is_zero();
    let mut h = Subspace::zero(n);
    for i in (0..n).filter(|&i| alg.parity(i) == Parity::Even) {
        let v = alg.basis_vector(i);
        let ad = alg.ad(&v);
        let op = match &phi_inv {
            Some(inv) => inv.mul(&ad),
            None => ad,
        };
        if !crate::exactlin::simultaneous_eigenspaces(n, &[op]).is_split() {
            continue;
        }
        let candidate = closure(&h, &v);
        if acceptable(&candidate) {
            h = candidate;
        }
    }
    for i in 0..n {
        let v = alg.basis_vector(i);
        if h.contains(&v) {
            continue;
        }
        let candidate = closure(&h, &v);
        if acceptable(&candidate) {
            h = candidate;
        }
    }
    GradedSubspace::hull(alg, &h.basis_vectors())
}

/// What the pipeline is expected to produce on a catalog entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectations {
    pub roots: usize,
    pub classes: usize,
    pub u_dim: usize,
    /// Dimensions of the class ideals, ascending.
    pub ideal_dims: Vec<usize>,
    pub notes: Vec<&'static str>,
}

/// A named built-in fixture.
#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    /// Parameter name, default and minimum, for parametrised entries.
    pub parameter: Option<(&'static str, u32, u32)>,
}

pub const ENTRIES: [CatalogEntry; 8] = [
    CatalogEntry { name: "example1", summary: "graded family truncated at N", parameter: Some(("N", 2, 2)) },
    CatalogEntry {
        name: "example1-nonregular",
        summary: "the graded family with the twist killing e3",
        parameter: Some(("N", 2, 2)),
    },
    CatalogEntry { name: "sl2", summary: "sl(2) with identity twist", parameter: None },
    CatalogEntry { name: "sl2-twisted", summary: "sl(2) twisted by diag(1, t, 1/t)", parameter: Some(("t", 2, 1)) },
    CatalogEntry { name: "osp12", summary: "osp(1|2) with identity twist", parameter: None },
    CatalogEntry { name: "block", summary: "the five-dimensional block with parameter n", parameter: Some(("n", 2, 1)) },
    CatalogEntry { name: "abelian", summary: "abelian algebra with k even and one odd vector", parameter: Some(("k", 2, 0)) },
    CatalogEntry { name: "sl2xsl2", summary: "two differently twisted copies of sl(2)", parameter: None },
];

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

/// Builds a catalog entry by name. `param` falls back to the entry default.
pub fn build(name: &str, param: Option<u32>) -> Result<(Fixture, Expectations), CatalogError> {
    let e = entry(name).ok_or_else(|| CatalogError::UnknownEntry(name.to_string()))?;
    let p = match e.parameter {
        Some((_, default, min)) => {
            let p = param.unwrap_or(default);
            if p < min {
                return Err(CatalogError::ParameterTooSmall { min, got: p });
            }
            p
        }
        None => 0,
    };
    let n = p as usize;
    let family = |notes| Expectations {
        roots: 4 * (n - 1) + 1,
        classes: n,
        u_dim: 2,
        ideal_dims: std::iter::once(1).chain(std::iter::repeat_n(5, n - 1)).collect(),
        notes,
    };
    let simple = |roots, dim| Expectations { roots, classes: 1, u_dim: 0, ideal_dims: vec![dim], notes: vec![] };
    Ok(match name {
        "example1" => (example1(p)?, family(vec![])),
        "example1-nonregular" => (
            example1_nonregular(p)?,
            family(vec![
                "the twist kills e3 inside H, so it is not injective on H",
                "the pipeline runs with the twist restricted to the even part of H, which is bijective",
            ]),
        ),
        "sl2" => (sl2(), simple(2, 3)),
        "sl2-twisted" => (twisted_sl2(q(i64::from(p)))?, simple(2, 3)),
        "osp12" => (osp12(), simple(4, 5)),
        "block" => (graded_block(p)?, simple(4, 5)),
        "abelian" => (
            abelian(n, 1),
            Expectations { roots: 0, classes: 0, u_dim: n + 1, ideal_dims: vec![], notes: vec![] },
        ),
        _ => (
            sum_of(&[twisted_sl2(q(2))?, twisted_sl2(q(3))?]),
            Expectations { roots: 4, classes: 2, u_dim: 0, ideal_dims: vec![3, 3], notes: vec![] },
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homsuper::validate;

    #[test]
    fn example1_dimensions() {
        let f = example1(2).unwrap();
        assert_eq!(f.algebra.dim(), 8);
        assert_eq!(f.algebra.even_space().dim(), 5);
        assert_eq!(f.algebra.odd_space().dim(), 3);
        assert_eq!(example1(4).unwrap().algebra.dim(), 18);
        assert_eq!(f.magsa.even().dim(), 2);
        assert_eq!(f.magsa.odd().dim(), 1);
        assert!(matches!(example1(1), Err(CatalogError::ParameterTooSmall { .. })));
        assert!(example1_nonregular(1).is_err());
    }

    #[test]
    fn greedy_magsa_recovers_known_choices() {
        for fx in [example1(3).unwrap(), sl2(), osp12(), abelian(1, 2), twisted_sl2(q(3)).unwrap()] {
            assert_eq!(greedy_magsa(&fx.algebra), fx.magsa);
        }
    }

    #[test]
    fn templates_validate() {
        for fx in [example1(3).unwrap(), sl2(), osp12(), abelian(2, 1), twisted_sl2(q(2)).unwrap()] {
            let r = validate(&fx.algebra);
            assert!(r.passed, "{:?}", r.violations.first());
        }
    }

    #[test]
    fn nonregular_variant_fails_only_invertibility_when_claimed_regular() {
        let mut f = example1_nonregular(3).unwrap();
        assert!(validate(&f.algebra).passed);
        f.algebra.set_regular(true);
        let r = validate(&f.algebra);
        assert!(!r.passed);
        assert!(r.violations.iter().all(|v| v.axiom == crate::homsuper::Axiom::TwistInvertible));
    }
}
