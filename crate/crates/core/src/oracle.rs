//! Brute-force checks that do not go through the connection machinery:
//! ideal generation by fixpoint, a simplicity oracle that is exact when root
//! spaces are at most one-dimensional per parity and the center vanishes,
//! and a seeded generator of random split instances with a property suite.

use num_traits::Zero;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{self, CatalogError, Fixture};
use crate::connect::{check_witness, connection_classes, connection_witness, are_connected};
use crate::decomp::{
    build_class_ideals, center, certify_simple, check_orthogonality, global_decomposition, ideal_support,
    is_maximal_length, Verdict,
};
use crate::error::DecompError;
use crate::exactlin::{q, qf, Matrix, Rational, Vector};
use crate::homsuper::{change_of_basis, twist_by, validate, GradedSubspace, Superalgebra};
use crate::rootspace::{
    check_transport, root_decomposition, verify_magsa, RootDecomposition, TwistMode,
};

/// The smallest graded ideal containing a seed vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedIdeal {
    pub seed: Vector,
    pub closure: GradedSubspace,
    pub rounds: usize,
}

/// Iterates `I ↦ I + [I, 𝔏] + φ(I) + φ⁻¹(I)` from the graded hull of the
/// seed until it stabilizes. `φ⁻¹` is used only when `φ` is invertible and
/// the mode is regular.
pub fn generate_ideal(alg: &Superalgebra, seed: &[Rational], mode: TwistMode) -> GeneratedIdeal {
    let full = GradedSubspace::full(alg);
    let phi = alg.twist();
    let phi_inv = match mode {
        TwistMode::Regular => phi.inverse(),
        TwistMode::NonRegular => None,
    };
    let mut current = GradedSubspace::hull(alg, &[seed.to_vec()]);
    let mut rounds = 0;
    loop {
        let mut next = current.sum(&alg.bracket_graded(&current, &full)).sum(&current.image(phi));
        if let Some(inv) = &phi_inv {
            next = next.sum(&current.image(inv));
        }
        rounds += 1;
        if next == current {
            return GeneratedIdeal { seed: seed.to_vec(), closure: current, rounds };
        }
        current = next;
    }
}

/// `[I, 𝔏] ⊆ I` and `φ(I) = I` (regular) or `φ(I) ⊆ I` (non-regular).
pub fn is_ideal(alg: &Superalgebra, ideal: &GradedSubspace, mode: TwistMode) -> bool {
    let image = ideal.image(alg.twist());
    let stable = match mode {
        TwistMode::Regular => image == *ideal,
        TwistMode::NonRegular => image.is_subspace_of(ideal),
    };
    stable && alg.bracket_graded(ideal, &GradedSubspace::full(alg)).is_subspace_of(ideal)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    Simple,
    NotSimple { witness: Box<GeneratedIdeal> },
    Inapplicable { reason: String },
}

impl OracleVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            OracleVerdict::Simple => "SIMPLE",
            OracleVerdict::NotSimple { .. } => "NOT_SIMPLE",
            OracleVerdict::Inapplicable { .. } => "ORACLE_INAPPLICABLE",
        }
    }
}

/// Under maximal length and trivial center every nonzero graded ideal
/// contains a whole one-dimensional `𝔏_{α,ī}`, so generating from one basis
/// vector of each such space decides simplicity.
pub fn brute_simplicity(dec: &RootDecomposition) -> OracleVerdict {
    let alg = &dec.algebra;
    if !is_maximal_length(dec) {
        return OracleVerdict::Inapplicable { reason: "some root space part has dimension above 1".into() };
    }
    if !center(alg).is_zero() {
        return OracleVerdict::Inapplicable { reason: "the center is nonzero".into() };
    }
    if alg.derived_algebra().is_zero() {
        // Only the zero algebra has trivial center and trivial bracket.
        return OracleVerdict::NotSimple {
            witness: Box::new(GeneratedIdeal { seed: vec![], closure: GradedSubspace::zero(alg.dim()), rounds: 0 }),
        };
    }
    for space in &dec.spaces {
        for (_, v) in space.homogeneous_basis() {
            let g = generate_ideal(alg, &v, dec.mode);
            if g.closure.dim() != alg.dim() {
                return OracleVerdict::NotSimple { witness: Box::new(g) };
            }
        }
    }
    OracleVerdict::Simple
}

/// An ideal inside `H` must be central.
pub fn ideal_in_h_is_central(dec: &RootDecomposition, ideal: &GradedSubspace) -> bool {
    !ideal.is_subspace_of(&dec.h) || ideal.is_subspace_of(&center(&dec.algebra))
}

/// An ideal is the sum of its intersections with `H` and the root spaces,
/// and every component of every ideal vector stays in the ideal.
pub fn ideal_decomposes(dec: &RootDecomposition, ideal: &GradedSubspace) -> bool {
    if ideal_support(dec, ideal).reconstruct(dec, ideal) != *ideal {
        return false;
    }
    ideal.total().basis_vectors().iter().all(|v| match dec.components(v) {
        Some((h, parts)) => ideal.contains(&h) && parts.iter().all(|p| ideal.contains(p)),
        None => false,
    })
}

/// An element `h₀ ∈ H₀` with `α(h₀) ≠ 0` and `α(h₀) ≠ β(h₀)`.
///
/// Probes the basis of `H₀` first, then the points `Σ_i r^i h_i` for
/// `r = 1, 2, …, 2m + 1`: both `α` and `α − β` are nonzero polynomials of
/// degree at most `m` in `r` without constant term, so one of these points
/// avoids all their roots.
pub fn separating_element(dec: &RootDecomposition, a: usize, b: usize) -> Option<Vector> {
    let m = dec.rank();
    let n = dec.algebra.dim();
    let mut probes: Vec<Vec<Rational>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { q(1) } else { q(0) }).collect())
        .collect();
    for r in 1..=(2 * m as i64 + 1) {
        let mut c = Vec::with_capacity(m);
        let mut power = q(r);
        for _ in 0..m {
            c.push(power.clone());
            power *= q(r);
        }
        probes.push(c);
    }
    let (fa, fb) = (&dec.roots[a].coords, &dec.roots[b].coords);
    for c in probes {
        let va: Rational = c.iter().zip(fa).map(|(x, y)| x * y).sum();
        let vb: Rational = c.iter().zip(fb).map(|(x, y)| x * y).sum();
        if !va.is_zero() && va != vb {
            let mut h = vec![q(0); n];
            for (ci, hi) in c.iter().zip(&dec.h_basis) {
                for (o, x) in h.iter_mut().zip(hi) {
                    *o += ci * x;
                }
            }
            return Some(h);
        }
    }
    None
}

const TWIST_PARAMETERS: [(i64, i64); 8] = [(1, 1), (2, 1), (3, 1), (-1, 1), (1, 2), (-2, 1), (2, 3), (3, 2)];

fn random_parameter(rng: &mut ChaCha8Rng) -> Rational {
    let &(a, b) = TWIST_PARAMETERS.choose(rng).expect("nonempty");
    qf(a, b)
}

fn twisted(fx: Fixture, psi: &Matrix) -> Fixture {
    let algebra = twist_by(&fx.algebra, psi).expect("diagonal torus elements are automorphisms");
    Fixture { algebra, ..fx }
}

fn random_sl2(rng: &mut ChaCha8Rng) -> Fixture {
    let base = catalog::sl2();
    if rng.random_bool(0.25) {
        // Chevalley involution h ↦ −h, e ↦ −f, f ↦ −e.
        let omega = Matrix::from_i64_rows(&[&[-1, 0, 0], &[0, 0, -1], &[0, -1, 0]]);
        return twisted(base, &omega);
    }
    let t = random_parameter(rng);
    twisted(base, &Matrix::diagonal(&[q(1), t.clone(), t.recip()]))
}

fn block_torus(t: &Rational) -> Matrix {
    let t2 = t * t;
    Matrix::diagonal(&[q(1), t2.clone(), t2.recip(), t.recip(), t.clone()])
}

fn random_block(rng: &mut ChaCha8Rng) -> Fixture {
    let n = rng.random_range(1..=3);
    let base = catalog::graded_block(n).expect("positive parameter");
    let t = random_parameter(rng);
    twisted(base, &block_torus(&t))
}

fn random_abelian(rng: &mut ChaCha8Rng) -> Fixture {
    let base = if rng.random_bool(0.5) { catalog::abelian(1, 0) } else { catalog::abelian(0, 1) };
    let t = random_parameter(rng);
    twisted(base, &Matrix::diagonal(&[t]))
}

/// Two equally twisted copies of `sl(2)` further twisted by the swap.
fn swapped_pair(rng: &mut ChaCha8Rng) -> Fixture {
    let t = random_parameter(rng);
    let d = Matrix::diagonal(&[q(1), t.clone(), t.recip()]);
    let one = twisted(catalog::sl2(), &d);
    let pair = catalog::sum_of(&[one.clone(), one]);
    let swap = Matrix::from_fn(6, 6, |i, j| if (i + 3) % 6 == j { q(1) } else { q(0) });
    twisted(pair, &swap)
}

fn random_block_matrix(rng: &mut ChaCha8Rng, alg: &Superalgebra) -> Matrix {
    let n = alg.dim();
    for _ in 0..32 {
        let p = Matrix::from_fn(n, n, |i, j| {
            if alg.parity(i) != alg.parity(j) {
                q(0)
            } else if i == j {
                q(rng.random_range(1..=2))
            } else {
                q(rng.random_range(-1..=1))
            }
        });
        if p.is_invertible() {
            return p;
        }
    }
    Matrix::identity(n)
}

/// A deterministic random split regular instance of dimension at most
/// `max_dim`, with its MAGSA.
pub fn fuzz_instance(seed: u64, max_dim: usize) -> Result<Fixture, CatalogError> {
    if max_dim < 3 {
        return Err(CatalogError::ParameterTooSmall { min: 3, got: max_dim as u32 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts: Vec<Fixture> = Vec::new();
    let mut remaining = max_dim;
    let summands = rng.random_range(1..=3);
    for _ in 0..summands {
        let mut options: Vec<(usize, u8)> = vec![(1, 0)];
        if remaining >= 3 {
            options.push((3, 1));
        }
        if remaining >= 5 {
            options.push((5, 2));
        }
        if remaining >= 6 {
            options.push((6, 3));
        }
        if remaining == 0 {
            break;
        }
        // Prefer non-abelian summands for the first slot.
        let &(dim, kind) = if parts.is_empty() && options.len() > 1 {
            options[1..].choose(&mut rng)
        } else {
            options.choose(&mut rng)
        }
        .expect("nonempty");
        let part = match kind {
            0 => random_abelian(&mut rng),
            1 => random_sl2(&mut rng),
            2 => random_block(&mut rng),
            _ => swapped_pair(&mut rng),
        };
        parts.push(part);
        remaining -= dim;
    }
    let fx = catalog::sum_of(&parts);
    if !rng.random_bool(0.5) {
        return Ok(fx);
    }
    let p = random_block_matrix(&mut rng, &fx.algebra);
    let algebra = change_of_basis(&fx.algebra, &p)?;
    let magsa = fx.magsa.image(&p.inverse().expect("invertible by construction"));
    Ok(Fixture { algebra, magsa })
}

/// One named property and its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub dim: usize,
    pub roots: usize,
    pub classes: usize,
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Checks(Vec<PropertyCheck>);

impl Checks {
    fn record(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.0.push(PropertyCheck { name, passed, detail: if passed { String::new() } else { detail.into() } });
    }
}

/// Runs every structural property on one instance.
pub fn property_suite(fx: &Fixture) -> PropertyReport {
    let alg = &fx.algebra;
    let mode = TwistMode::for_algebra(alg);
    let mut checks = Checks(Vec::new());
    let report = |checks: Checks, roots, classes| PropertyReport { dim: alg.dim(), roots, classes, checks: checks.0 };

    let v = validate(alg);
    checks.record("axioms", v.passed, format!("{:?}", v.violations.first().map(|x| (x.axiom, &x.witness))));
    let magsa = verify_magsa(alg, &fx.magsa, mode);
    checks.record("magsa", magsa.passed(), magsa.diagnostics.join("; "));
    let dec = match root_decomposition(alg, &fx.magsa, mode) {
        Ok(d) => d,
        Err(e) => {
            checks.record("split", false, e.to_string());
            return report(checks, 0, 0);
        }
    };
    let reconstructed = dec.h.dim() + dec.spaces.iter().map(|s| s.dim()).sum::<usize>();
    checks.record("split", reconstructed == alg.dim(), format!("dimensions add up to {reconstructed}"));
    let t = check_transport(&dec);
    checks.record("transport", t.passed(), format!("{:?}", t.violations.first()));

    let partition = match connection_classes(&dec) {
        Ok(p) => p,
        Err(e) => {
            checks.record("equivalence", false, e.to_string());
            return report(checks, dec.roots.len(), 0);
        }
    };
    checks.record("equivalence", true, "");
    let perm = dec.phi_perm.clone().unwrap_or_default();
    let orbit_ok = (0..dec.roots.len()).all(|a| are_connected(&dec, a, perm[a]).unwrap_or(false));
    checks.record("orbit-invariance", orbit_ok, "a root is not connected to its twist");
    let mut bad_witness = None;
    'pairs: for a in 0..dec.roots.len() {
        for b in 0..dec.roots.len() {
            if partition.class_of[a] != partition.class_of[b] {
                continue;
            }
            match connection_witness(&dec, a, b) {
                Ok(Some(w)) => {
                    if let Err(e) = check_witness(&dec, &w) {
                        bad_witness = Some(format!("({a}, {b}): {e}"));
                        break 'pairs;
                    }
                }
                _ => {
                    bad_witness = Some(format!("({a}, {b}): no witness"));
                    break 'pairs;
                }
            }
        }
    }
    checks.record("witnesses", bad_witness.is_none(), bad_witness.unwrap_or_default());

    match build_class_ideals(&dec, &partition) {
        Ok(ideals) => {
            let bad: Vec<usize> = ideals
                .iter()
                .filter(|i| !(i.certified_ideal && i.certified_subalgebra))
                .map(|i| i.class_id)
                .collect();
            checks.record("class-ideals", bad.is_empty(), format!("uncertified classes {bad:?}"));
            checks.record("orthogonality", check_orthogonality(alg, &ideals), "distinct class ideals bracket");
        }
        Err(e) => checks.record("class-ideals", false, e.to_string()),
    }
    match global_decomposition(&dec, &partition) {
        Ok(g) => {
            checks.record("reconstruction", g.spans, "U plus class ideals does not span");
            checks.record("direct-sum", true, "");
        }
        Err(DecompError::DirectSumViolation) => {
            checks.record("direct-sum", false, "center zero and H generated but sum not direct")
        }
        Err(e) => checks.record("reconstruction", false, e.to_string()),
    }

    let mut seeds: Vec<Vector> = dec.h.homogeneous_basis().into_iter().map(|(_, v)| v).collect();
    for s in &dec.spaces {
        seeds.extend(s.homogeneous_basis().into_iter().map(|(_, v)| v));
    }
    let mut ideal_problem = None;
    for s in &seeds {
        let g = generate_ideal(alg, s, mode);
        let problem = if !g.closure.contains(s) || !is_ideal(alg, &g.closure, mode) {
            Some("closure is not an ideal containing its seed")
        } else if !ideal_decomposes(&dec, &g.closure) {
            Some("ideal does not split along root spaces")
        } else if !ideal_in_h_is_central(&dec, &g.closure) {
            Some("ideal inside H is not central")
        } else {
            None
        };
        if let Some(p) = problem {
            ideal_problem = Some(format!("seed {}: {p}", alg.describe(s)));
            break;
        }
    }
    checks.record("generated-ideals", ideal_problem.is_none(), ideal_problem.unwrap_or_default());

    match certify_simple(&dec, &partition) {
        Ok(r) => {
            let consistent = r.verdict != Verdict::Simple || (r.flags.all_connected && r.flags.h_generated);
            checks.record("verdict-agreement", consistent, "simple but roots unconnected or H not generated");
        }
        Err(e) => checks.record("verdict-agreement", false, e.to_string()),
    }

    let mut unseparated = None;
    for a in 0..dec.roots.len() {
        for b in 0..dec.roots.len() {
            if a != b && separating_element(&dec, a, b).is_none() {
                unseparated = Some((a, b));
            }
        }
    }
    checks.record("separation", unseparated.is_none(), format!("no separating element for {unseparated:?}"));
    let (roots, classes) = (dec.roots.len(), partition.len());
    report(checks, roots, classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_ideals_in_example1() {
        let fx = catalog::example1(2).unwrap();
        let alg = &fx.algebra;
        let e1 = alg.basis_vector(alg.index_of("e1").unwrap());
        let g = generate_ideal(alg, &e1, TwistMode::Regular);
        assert_eq!(g.closure.dim(), 1);
        let x2 = alg.basis_vector(alg.index_of("x2").unwrap());
        assert_eq!(generate_ideal(alg, &x2, TwistMode::Regular).closure.dim(), 5);
        assert!(generate_ideal(alg, &vec![q(0); 8], TwistMode::Regular).closure.is_zero());
    }

    #[test]
    fn oracle_on_small_algebras() {
        let fx = catalog::twisted_sl2(q(2)).unwrap();
        let dec = root_decomposition(&fx.algebra, &fx.magsa, TwistMode::Regular).unwrap();
        assert_eq!(brute_simplicity(&dec), OracleVerdict::Simple);
        let fx = catalog::example1(2).unwrap();
        let dec = root_decomposition(&fx.algebra, &fx.magsa, TwistMode::Regular).unwrap();
        assert!(matches!(brute_simplicity(&dec), OracleVerdict::Inapplicable { .. }));
    }

    #[test]
    fn separation_in_example1() {
        let fx = catalog::example1(3).unwrap();
        let dec = root_decomposition(&fx.algebra, &fx.magsa, TwistMode::Regular).unwrap();
        for a in 0..dec.roots.len() {
            for b in 0..dec.roots.len() {
                if a == b {
                    continue;
                }
                let h = separating_element(&dec, a, b).unwrap();
                let va = dec.evaluate(&dec.roots[a], &h).unwrap();
                let vb = dec.evaluate(&dec.roots[b], &h).unwrap();
                assert!(!va.is_zero() && va != vb);
            }
        }
    }

    #[test]
    fn fuzz_is_deterministic_and_valid() {
        for seed in 0..12 {
            let a = fuzz_instance(seed, 10).unwrap();
            let b = fuzz_instance(seed, 10).unwrap();
            assert_eq!(a.algebra, b.algebra);
            assert!(a.algebra.dim() <= 10);
            let report = property_suite(&a);
            assert!(report.passed(), "seed {seed}: {:?}", report.failures().collect::<Vec<_>>());
        }
        assert!(fuzz_instance(0, 3).is_ok());
        assert!(fuzz_instance(0, 2).is_err());
    }
}
