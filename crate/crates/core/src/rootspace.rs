//! Root-space decomposition with respect to a maximal abelian graded
//! subalgebra `H`.
//!
//! A vector `v` lies in the root space of `α` when `[h, v] = α(h)·φ(v)` for
//! every `h ∈ H₀`. Where `φ` is invertible this is the eigen-equation
//! `φ⁻¹[h, v] = α(h)·v`, so the root spaces are the joint eigenspaces of the
//! commuting operators `T_h = φ⁻¹ ∘ ad_h` for `h` running over a basis of `H₀`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::RootError;
use crate::exactlin::{
    is_zero_vector, kernel, simultaneous_eigenspaces, zero_vector, Matrix, Rational, ResidueKind, Subspace,
    Vector,
};
use crate::homsuper::{GradedSubspace, Parity, Superalgebra};

/// Which invertibility `φ` is assumed to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwistMode {
    /// `φ` is an automorphism of the whole algebra.
    Regular,
    /// Only `φ|_{H₀}` is required to be bijective; the root equation is
    /// solved on the part of the algebra where `φ` is invertible.
    NonRegular,
}

impl TwistMode {
    pub fn for_algebra(alg: &Superalgebra) -> TwistMode {
        if alg.is_regular() {
            TwistMode::Regular
        } else {
            TwistMode::NonRegular
        }
    }
}

/// A linear functional on `H₀`, stored as its values on the fixed basis of
/// `H₀`. Ordering is lexicographic on the values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootFunctional {
    pub coords: Vector,
}

impl RootFunctional {
    pub fn new(coords: Vector) -> Self {
        RootFunctional { coords }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coords)
    }

    pub fn neg(&self) -> RootFunctional {
        RootFunctional { coords: crate::exactlin::neg_vector(&self.coords) }
    }

    pub fn add(&self, other: &RootFunctional) -> RootFunctional {
        RootFunctional { coords: crate::exactlin::add_vectors(&self.coords, &other.coords) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Maximality {
    /// The algebra is split with respect to `H`, so `H = 𝔏₀` and no abelian
    /// graded subalgebra can properly contain `H`.
    Confirmed,
    /// A homogeneous vector whose twist orbit enlarges `H` to a larger
    /// abelian graded subalgebra.
    Refuted { witness: Vector },
    Unknown,
}

/// Outcome of the MAGSA checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagsaReport {
    pub abelian: bool,
    /// Regular mode: `φ(H) = H`. Non-regular mode: `φ(H) ⊆ H`.
    pub twist_stable: bool,
    pub twist_injective_on_h: bool,
    pub twist_bijective_on_h0: bool,
    pub maximality: Maximality,
    pub diagnostics: Vec<String>,
    mode: TwistMode,
}

impl MagsaReport {
    /// Conditions required before a root decomposition can be attempted.
    pub fn preconditions_hold(&self) -> bool {
        let twist_ok = match self.mode {
            TwistMode::Regular => self.twist_injective_on_h,
            TwistMode::NonRegular => self.twist_bijective_on_h0,
        };
        self.abelian && self.twist_stable && twist_ok
    }

    pub fn passed(&self) -> bool {
        self.preconditions_hold() && self.maximality == Maximality::Confirmed
    }
}

/// Checks that `h` is an abelian, twist-stable graded subalgebra and reports
/// on its maximality.
pub fn verify_magsa(alg: &Superalgebra, h: &GradedSubspace, mode: TwistMode) -> MagsaReport {
    let mut diagnostics = Vec::new();
    let abelian = alg.bracket_spaces(h.total(), h.total()).is_zero();
    if !abelian {
        diagnostics.push("[H, H] ≠ 0".to_string());
    }
    let phi = alg.twist();
    let image = h.image(phi);
    let twist_stable = match mode {
        TwistMode::Regular => image == *h,
        TwistMode::NonRegular => image.is_subspace_of(h) && h.even().image(phi) == *h.even(),
    };
    if !twist_stable {
        diagnostics.push(match mode {
            TwistMode::Regular => "φ(H) ≠ H".to_string(),
            TwistMode::NonRegular => "φ(H) ⊄ H or φ(H₀) ≠ H₀".to_string(),
        });
    }
    let twist_injective_on_h = image.dim() == h.dim();
    let twist_bijective_on_h0 = h.even().image(phi) == *h.even();
    if !twist_injective_on_h {
        diagnostics.push("φ|_H is not injective".to_string());
    }
    if !twist_bijective_on_h0 {
        diagnostics.push("φ|_{H₀} is not a bijection onto H₀".to_string());
    }
    let mut report = MagsaReport {
        abelian,
        twist_stable,
        twist_injective_on_h,
        twist_bijective_on_h0,
        maximality: Maximality::Unknown,
        diagnostics,
        mode,
    };
    if !report.preconditions_hold() {
        return report;
    }
    match analyze(alg, h, mode) {
        Ok(a) if a.residue.is_zero() => report.maximality = Maximality::Confirmed,
        Ok(a) => {
            report.diagnostics.push(format!("not split: residue of dimension {}", a.residue.dim()));
            report.maximality = refute_maximality(alg, h);
        }
        Err(e) => {
            report.diagnostics.push(e.to_string());
            report.maximality = refute_maximality(alg, h);
        }
    }
    report
}

/// Looks for a homogeneous centralizer vector whose twist orbit together
/// with `H` still spans an abelian subalgebra.
fn refute_maximality(alg: &Superalgebra, h: &GradedSubspace) -> Maximality {
    let n = alg.dim();
    let mut stacked = Matrix::zeros(0, n);
    for (_, v) in h.homogeneous_basis() {
        stacked = stacked.vstack(&alg.ad(&v));
    }
    let centralizer = kernel(&stacked);
    let Some(graded) = GradedSubspace::split(alg, &centralizer) else {
        return Maximality::Unknown;
    };
    let phi = alg.twist();
    for (_, v) in graded.homogeneous_basis() {
        if h.contains(&v) {
            continue;
        }
        let mut orbit = vec![v.clone()];
        for _ in 0..n {
            let next = phi.mul_vec(orbit.last().expect("nonempty"));
            orbit.push(next);
        }
        let mut vectors = h.total().basis_vectors();
        vectors.extend(orbit);
        let enlarged = Subspace::from_vectors(n, &vectors);
        if alg.bracket_spaces(&enlarged, &enlarged).is_zero() && enlarged.image(phi).is_subspace_of(&enlarged) {
            return Maximality::Refuted { witness: v };
        }
    }
    Maximality::Unknown
}

/// Root decomposition `𝔏 = H ⊕ (⊕_α 𝔏_α)` together with the action of `φ`
/// on the roots.
#[derive(Clone, Debug)]
pub struct RootDecomposition {
    pub algebra: Superalgebra,
    pub mode: TwistMode,
    pub h: GradedSubspace,
    /// The canonical basis `h₁, …, h_m` of `H₀` on which functionals are
    /// evaluated.
    pub h_basis: Vec<Vector>,
    /// `Λ`, sorted lexicographically.
    pub roots: Vec<RootFunctional>,
    /// `𝔏_α` with its parity parts, parallel to `roots`.
    pub spaces: Vec<GradedSubspace>,
    /// `phi_perm[i] = j` when `roots[i]∘φ⁻¹ = roots[j]`.
    pub phi_perm: Option<Vec<usize>>,
    /// Whatever the joint eigenspaces and `H` fail to cover.
    pub residue: Subspace,
    /// Matrix of `φ|_{H₀}` in `h_basis`.
    twist_on_h0: Matrix,
    /// `(M⁻¹)ᵀ`, which maps the coordinates of `α` to those of `α∘φ⁻¹`.
    inverse_pullback: Matrix,
    index: BTreeMap<Vector, usize>,
}

impl RootDecomposition {
    pub fn rank(&self) -> usize {
        self.h_basis.len()
    }

    pub fn is_split(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn zero_functional(&self) -> RootFunctional {
        RootFunctional::new(zero_vector(self.rank()))
    }

    pub fn root_index(&self, f: &RootFunctional) -> Option<usize> {
        self.index.get(&f.coords).copied()
    }

    /// Index of `−α` when it is a root.
    pub fn negative(&self, i: usize) -> Option<usize> {
        self.root_index(&self.roots[i].neg())
    }

    /// `α ∘ φ⁻¹`.
    pub fn compose_inverse_twist(&self, f: &RootFunctional) -> RootFunctional {
        RootFunctional::new(self.inverse_pullback.mul_vec(&f.coords))
    }

    /// `α ∘ φ`.
    pub fn compose_twist(&self, f: &RootFunctional) -> RootFunctional {
        RootFunctional::new(self.twist_on_h0.transpose().mul_vec(&f.coords))
    }

    /// `α ∘ φ^{-k}` for `k ≥ 0`, by repeated composition.
    pub fn compose_inverse_twist_power(&self, f: &RootFunctional, k: usize) -> RootFunctional {
        (0..k).fold(f.clone(), |acc, _| self.compose_inverse_twist(&acc))
    }

    /// Matrix of `φ|_{H₀}` in `h_basis` (column `j` = coordinates of `φ(h_j)`).
    pub fn twist_on_h0(&self) -> &Matrix {
        &self.twist_on_h0
    }

    /// `α(h)` for `h ∈ H₀`; `None` when `h ∉ H₀`.
    pub fn evaluate(&self, f: &RootFunctional, h: &[Rational]) -> Option<Rational> {
        let coords = self.h.even().coordinates(h)?;
        Some(coords.iter().zip(&f.coords).map(|(a, b)| a * b).sum())
    }

    /// `𝔏_f`: `H` for the zero functional, the root space for a root, and
    /// zero otherwise.
    pub fn space_of(&self, f: &RootFunctional) -> GradedSubspace {
        if f.is_zero() {
            return self.h.clone();
        }
        match self.root_index(f) {
            Some(i) => self.spaces[i].clone(),
            None => GradedSubspace::zero(self.algebra.dim()),
        }
    }

    /// `Λ₀` or `Λ₁`: roots whose parity part is nonzero.
    pub fn roots_with_parity(&self, p: Parity) -> Vec<usize> {
        (0..self.roots.len()).filter(|&i| !self.spaces[i].part(p).is_zero()).collect()
    }

    /// Whether `Λ = −Λ`.
    pub fn is_symmetric(&self) -> bool {
        (0..self.roots.len()).all(|i| self.negative(i).is_some())
    }

    /// Cycles of `phi_perm`, each starting at its smallest index.
    pub fn orbits(&self) -> Option<Vec<Vec<usize>>> {
        let perm = self.phi_perm.as_ref()?;
        let mut seen = vec![false; perm.len()];
        let mut out = Vec::new();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = perm[i];
            }
            out.push(cycle);
        }
        Some(out)
    }

    /// Splits `v` along `H ⊕ (⊕_α 𝔏_α)`: returns the `H` component and one
    /// component per root. `None` when the decomposition is not split.
    pub fn components(&self, v: &[Rational]) -> Option<(Vector, Vec<Vector>)> {
        if !self.is_split() {
            return None;
        }
        let n = self.algebra.dim();
        let mut cols = self.h.total().basis_vectors();
        let mut ranges = vec![(0, cols.len())];
        for s in &self.spaces {
            let start = cols.len();
            cols.extend(s.total().basis_vectors());
            ranges.push((start, cols.len()));
        }
        let basis = Matrix::from_columns(n, &cols);
        let coeffs = basis.inverse()?.mul_vec(v);
        let part = |(a, b): (usize, usize)| -> Vector {
            let mut out = zero_vector(n);
            for k in a..b {
                if coeffs[k].is_zero() {
                    continue;
                }
                for (o, x) in out.iter_mut().zip(&cols[k]) {
                    *o += &coeffs[k] * x;
                }
            }
            out
        };
        let h_part = part(ranges[0]);
        let root_parts = ranges[1..].iter().map(|&r| part(r)).collect();
        Some((h_part, root_parts))
    }
}

/// Builds `T_h = φ⁻¹ ∘ ad_h` for each `h` in the basis of `H₀`, on the part
/// of the algebra where `φ` is invertible. The remaining (nilpotent) part of
/// `φ` must lie inside `H`, where every `T_h` is zero.
fn root_operators(alg: &Superalgebra, h: &GradedSubspace, h_basis: &[Vector], mode: TwistMode) -> Result<Vec<Matrix>, RootError> {
    let n = alg.dim();
    let phi = alg.twist();
    if mode == TwistMode::Regular {
        let inv = phi.inverse().ok_or_else(|| RootError::InvalidMagsa(vec!["φ is not invertible".into()]))?;
        return Ok(h_basis.iter().map(|x| inv.mul(&alg.ad(x))).collect());
    }
    let power = phi.pow(n);
    let invertible_part = Subspace::from_matrix(&power.transpose());
    let nilpotent_part = kernel(&power);
    if !nilpotent_part.is_subspace_of(h.total()) {
        return Err(RootError::NotSplit("the kernel part of φ is not contained in H".into()));
    }
    let mut q_cols = invertible_part.basis_vectors();
    let k = q_cols.len();
    q_cols.extend(nilpotent_part.basis_vectors());
    let q = Matrix::from_columns(n, &q_cols);
    let q_inv = q.inverse().expect("Fitting decomposition is direct");
    let to_q = |v: &Vector| q_inv.mul_vec(v);
    let mut phi_small = Matrix::zeros(k, k);
    for j in 0..k {
        let c = to_q(&phi.mul_vec(&q_cols[j]));
        for i in 0..k {
            phi_small[(i, j)] = c[i].clone();
        }
    }
    let phi_small_inv = phi_small.inverse().expect("φ is invertible on its Fitting image");
    let mut ops = Vec::new();
    for x in h_basis {
        let ad = alg.ad(x);
        let mut ad_small = Matrix::zeros(k, k);
        for j in 0..k {
            let c = to_q(&ad.mul_vec(&q_cols[j]));
            if c[k..].iter().any(|x| !x.is_zero()) {
                return Err(RootError::NotSplit("ad_h leaves the image of φ".into()));
            }
            for i in 0..k {
                ad_small[(i, j)] = c[i].clone();
            }
        }
        let t_small = phi_small_inv.mul(&ad_small);
        let t_q = Matrix::from_fn(n, n, |i, j| if i < k && j < k { t_small[(i, j)].clone() } else { Rational::zero() });
        ops.push(q.mul(&t_q).mul(&q_inv));
    }
    Ok(ops)
}

/// Computes the joint eigenspace decomposition without insisting on
/// splitness; `residue` records what is left over.
pub fn analyze(alg: &Superalgebra, h: &GradedSubspace, mode: TwistMode) -> Result<RootDecomposition, RootError> {
    let n = alg.dim();
    let h_basis = h.even().basis_vectors();
    let m = h_basis.len();
    let mut twist_on_h0 = Matrix::zeros(m, m);
    for (j, x) in h_basis.iter().enumerate() {
        let c = h
            .even()
            .coordinates(&alg.apply_twist(x))
            .ok_or_else(|| RootError::InvalidMagsa(vec!["φ(H₀) ⊄ H₀".into()]))?;
        for (i, x) in c.into_iter().enumerate() {
            twist_on_h0[(i, j)] = x;
        }
    }
    let inverse_pullback = twist_on_h0
        .inverse()
        .ok_or_else(|| RootError::InvalidMagsa(vec!["φ|_{H₀} is not invertible".into()]))?
        .transpose();
    let ops = root_operators(alg, h, &h_basis, mode)?;
    let refinement = simultaneous_eigenspaces(n, &ops);
    let irrational: usize = refinement
        .residue
        .iter()
        .filter(|r| r.kind == ResidueKind::Irrational)
        .map(|r| r.space.dim())
        .sum();
    if irrational > 0 {
        return Err(RootError::NonRationalSpectrum(irrational));
    }
    let mut residue = refinement.residue_space(n);
    let mut roots = Vec::new();
    let mut spaces = Vec::new();
    for block in &refinement.blocks {
        let f = RootFunctional::new(block.values.clone());
        if f.is_zero() {
            if block.space != *h.total() {
                // The zero block always contains H since H is abelian.
                let excess = h.total().greedy_complement(&block.space.basis_vectors());
                residue = residue.sum(&excess);
            }
            continue;
        }
        let graded = GradedSubspace::split(alg, &block.space)
            .ok_or_else(|| RootError::NotSplit("a root space is not graded".into()))?;
        roots.push(f);
        spaces.push(graded);
    }
    if refinement.block(&vec![Rational::zero(); m]).is_none() && !h.is_zero() {
        return Err(RootError::NotSplit("H is not inside the joint zero eigenspace".into()));
    }
    let index: BTreeMap<Vector, usize> = roots.iter().enumerate().map(|(i, r)| (r.coords.clone(), i)).collect();
    let mut dec = RootDecomposition {
        algebra: alg.clone(),
        mode,
        h: h.clone(),
        h_basis,
        roots,
        spaces,
        phi_perm: None,
        residue,
        twist_on_h0,
        inverse_pullback,
        index,
    };
    let perm: Option<Vec<usize>> = dec
        .roots
        .iter()
        .map(|r| dec.root_index(&dec.compose_inverse_twist(r)))
        .collect();
    dec.phi_perm = perm.filter(|p| {
        let mut seen = vec![false; p.len()];
        p.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    });
    Ok(dec)
}

/// Root decomposition of `alg` with respect to `h`. Fails unless `h` passes
/// the MAGSA preconditions and the algebra is split.
pub fn root_decomposition(alg: &Superalgebra, h: &GradedSubspace, mode: TwistMode) -> Result<RootDecomposition, RootError> {
    let n = alg.dim();
    if h.ambient_dim() != n {
        return Err(RootError::NotGraded);
    }
    let abelian = alg.bracket_spaces(h.total(), h.total()).is_zero();
    let phi = alg.twist();
    let mut problems = Vec::new();
    if !abelian {
        problems.push("[H, H] ≠ 0".to_string());
    }
    let image = h.image(phi);
    match mode {
        TwistMode::Regular if image != *h => problems.push("φ(H) ≠ H".into()),
        TwistMode::NonRegular if !image.is_subspace_of(h) => problems.push("φ(H) ⊄ H".into()),
        _ => {}
    }
    if !problems.is_empty() {
        return Err(RootError::InvalidMagsa(problems));
    }
    let dec = analyze(alg, h, mode)?;
    if !dec.is_split() {
        return Err(RootError::NotSplit(format!("residue of dimension {}", dec.residue.dim())));
    }
    Ok(dec)
}

/// Graded subspace from a subspace, rejecting non-graded input.
pub fn graded_candidate(alg: &Superalgebra, s: &Subspace) -> Result<GradedSubspace, RootError> {
    GradedSubspace::split(alg, s).ok_or(RootError::NotGraded)
}

/// A failed transport or containment check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportViolation {
    pub check: &'static str,
    /// Root indices involved (`None` for the zero functional).
    pub roots: Vec<Option<usize>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportReport {
    pub violations: Vec<TransportViolation>,
    pub orbits: Vec<Vec<usize>>,
}

impl TransportReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `φ(𝔏_{α,ī}) = 𝔏_{αφ⁻¹,ī}`, `φ⁻¹(𝔏_{α,ī}) = 𝔏_{αφ,ī}`, the bracket
/// containments `[𝔏_{α,ī}, 𝔏_{β,j̄}] ⊆ 𝔏_{αφ⁻¹+βφ⁻¹, ī+j̄}` (over `Λ ∪ {0}`),
/// and that `φ` permutes `Λ` in finite orbits.
pub fn check_transport(dec: &RootDecomposition) -> TransportReport {
    let alg = &dec.algebra;
    let phi = alg.twist();
    let mut violations = Vec::new();
    let Some(perm) = dec.phi_perm.clone() else {
        violations.push(TransportViolation {
            check: "root-permutation",
            roots: vec![],
            detail: "α ↦ αφ⁻¹ does not permute Λ".into(),
        });
        return TransportReport { violations, orbits: vec![] };
    };
    let mut inverse_perm = vec![0; perm.len()];
    for (i, &j) in perm.iter().enumerate() {
        inverse_perm[j] = i;
    }
    let phi_inv = match dec.mode {
        TwistMode::Regular => phi.inverse(),
        TwistMode::NonRegular => None,
    };
    for a in 0..dec.roots.len() {
        for p in [Parity::Even, Parity::Odd] {
            let part = dec.spaces[a].part(p);
            if part.image(phi) != *dec.spaces[perm[a]].part(p) {
                violations.push(TransportViolation {
                    check: "twist-image",
                    roots: vec![Some(a), Some(perm[a])],
                    detail: format!("φ(𝔏_{{α,{p}}}) ≠ 𝔏_{{αφ⁻¹,{p}}}"),
                });
            }
            let pre = inverse_perm[a];
            let ok = match &phi_inv {
                Some(inv) => part.image(inv) == *dec.spaces[pre].part(p),
                None => dec.spaces[pre].part(p).image(phi) == *part,
            };
            if !ok {
                violations.push(TransportViolation {
                    check: "twist-preimage",
                    roots: vec![Some(a), Some(pre)],
                    detail: format!("φ⁻¹(𝔏_{{α,{p}}}) ≠ 𝔏_{{αφ,{p}}}"),
                });
            }
        }
    }
    let mut labelled: Vec<(Option<usize>, RootFunctional, GradedSubspace)> =
        vec![(None, dec.zero_functional(), dec.h.clone())];
    labelled.extend((0..dec.roots.len()).map(|i| (Some(i), dec.roots[i].clone(), dec.spaces[i].clone())));
    for (ia, fa, sa) in &labelled {
        for (ib, fb, sb) in &labelled {
            let target_functional = dec.compose_inverse_twist(fa).add(&dec.compose_inverse_twist(fb));
            let target = dec.space_of(&target_functional);
            for p in [Parity::Even, Parity::Odd] {
                for q in [Parity::Even, Parity::Odd] {
                    let (xa, xb) = (sa.part(p), sb.part(q));
                    if xa.is_zero() || xb.is_zero() {
                        continue;
                    }
                    let br = alg.bracket_spaces(xa, xb);
                    if !br.is_subspace_of(target.part(p + q)) {
                        violations.push(TransportViolation {
                            check: "bracket-containment",
                            roots: vec![*ia, *ib],
                            detail: format!("[𝔏_{{α,{p}}}, 𝔏_{{β,{q}}}] ⊄ 𝔏_{{αφ⁻¹+βφ⁻¹,{}}}", p + q),
                        });
                    }
                }
            }
        }
    }
    let orbits = dec.orbits().unwrap_or_default();
    for cycle in &orbits {
        // Every αφ^z must be a root; along a cycle this is closure of perm.
        let start = &dec.roots[cycle[0]];
        let back = dec.compose_twist(start);
        if dec.root_index(&back).is_none() {
            violations.push(TransportViolation {
                check: "orbit-closure",
                roots: vec![Some(cycle[0])],
                detail: "αφ is not a root".into(),
            });
        }
    }
    TransportReport { violations, orbits }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactlin::q;

    #[test]
    fn abelian_algebra_has_no_roots() {
        let fx = catalog::abelian(2, 1);
        let dec = root_decomposition(&fx.algebra, &fx.magsa, TwistMode::Regular).unwrap();
        assert!(dec.roots.is_empty());
        assert!(check_transport(&dec).passed());
        assert_eq!(verify_magsa(&fx.algebra, &fx.magsa, TwistMode::Regular).maximality, Maximality::Confirmed);
    }

    #[test]
    fn twisted_sl2_roots_are_plus_minus_two() {
        // [h, e] = ψ(2e) = 4e and φ(e) = 2e, so α(h) = 2.
        let fx = catalog::twisted_sl2(q(2)).unwrap();
        let dec = root_decomposition(&fx.algebra, &fx.magsa, TwistMode::Regular).unwrap();
        let coords: Vec<Vector> = dec.roots.iter().map(|r| r.coords.clone()).collect();
        assert_eq!(coords, vec![vec![q(-2)], vec![q(2)]]);
        assert_eq!(dec.spaces[1].total(), &Subspace::coordinate(3, [1]));
        assert!(check_transport(&dec).passed());
    }

    #[test]
    fn nilpotent_h_is_not_split() {
        let fx = catalog::sl2();
        let e = GradedSubspace::coordinate(&fx.algebra, &[1]);
        assert!(matches!(
            root_decomposition(&fx.algebra, &e, TwistMode::Regular),
            Err(RootError::NotSplit(_))
        ));
    }

    #[test]
    fn non_abelian_candidate_is_rejected() {
        let fx = catalog::sl2();
        let all = GradedSubspace::full(&fx.algebra);
        assert!(matches!(
            root_decomposition(&fx.algebra, &all, TwistMode::Regular),
            Err(RootError::InvalidMagsa(_))
        ));
        assert!(!verify_magsa(&fx.algebra, &all, TwistMode::Regular).abelian);
    }

    fn coords(dec: &RootDecomposition) -> Vec<Vector> {
        dec.roots.iter().map(|r| r.coords.clone()).collect()
    }

    #[test]
    fn example1_roots_and_spaces() {
        let fx = catalog::example1(2).unwrap();
        let alg = &fx.algebra;
        let dec = root_decomposition(alg, &fx.magsa, TwistMode::Regular).unwrap();
        // h_basis = (e2, h2); roots sorted lexicographically.
        assert_eq!(coords(&dec), vec![vec![q(0), q(-2)], vec![q(0), q(-1)], vec![q(0), q(1)], vec![q(0), q(2)], vec![q(1), q(0)]]);
        let names: Vec<&str> = dec
            .spaces
            .iter()
            .map(|s| {
                let v = &s.total().basis_vectors()[0];
                alg.name(v.iter().position(|c| !c.is_zero()).unwrap())
            })
            .collect();
        assert_eq!(names, ["y2", "f2", "g2", "x2", "e1"]);
        assert_eq!(dec.roots_with_parity(Parity::Odd), vec![1, 2]);
        assert!(!dec.is_symmetric());
        let h2 = alg.basis_vector(alg.index_of("h2").unwrap());
        assert_eq!(dec.evaluate(&dec.roots[3], &h2), Some(q(2)));
        assert_eq!(dec.evaluate(&dec.roots[1], &h2), Some(q(-1)));
    }

    #[test]
    fn example1_transport_is_identity_on_roots() {
        let fx = catalog::example1(3).unwrap();
        let dec = root_decomposition(&fx.algebra, &fx.magsa, TwistMode::Regular).unwrap();
        assert_eq!(dec.roots.len(), 9);
        let perm = dec.phi_perm.clone().unwrap();
        assert!(perm.iter().enumerate().all(|(i, &j)| i == j));
        let report = check_transport(&dec);
        assert!(report.passed(), "{:?}", report.violations);
        let magsa = verify_magsa(&fx.algebra, &fx.magsa, TwistMode::Regular);
        assert!(magsa.passed());
    }

    #[test]
    fn small_h_is_refuted_as_maximal() {
        let fx = catalog::example1(2).unwrap();
        let h2 = GradedSubspace::coordinate(&fx.algebra, &[fx.algebra.index_of("h2").unwrap()]);
        let report = verify_magsa(&fx.algebra, &h2, TwistMode::Regular);
        assert!(report.preconditions_hold());
        let Maximality::Refuted { witness } = report.maximality else { panic!("{:?}", report.maximality) };
        assert!(!h2.contains(&witness));
        assert!(root_decomposition(&fx.algebra, &h2, TwistMode::Regular).is_err());
    }

    #[test]
    fn nonregular_variant_has_same_roots() {
        let reg = catalog::example1(3).unwrap();
        let non = catalog::example1_nonregular(3).unwrap();
        let a = root_decomposition(&reg.algebra, &reg.magsa, TwistMode::Regular).unwrap();
        let b = root_decomposition(&non.algebra, &non.magsa, TwistMode::NonRegular).unwrap();
        assert_eq!(a.roots, b.roots);
        assert_eq!(a.spaces, b.spaces);
        assert!(check_transport(&b).passed());
        let report = verify_magsa(&non.algebra, &non.magsa, TwistMode::NonRegular);
        assert!(report.passed());
        assert!(!report.twist_injective_on_h);
        assert!(root_decomposition(&non.algebra, &non.magsa, TwistMode::Regular).is_err());
    }

    #[test]
    fn components_reassemble_vector() {
        let fx = catalog::example1(2).unwrap();
        let dec = root_decomposition(&fx.algebra, &fx.magsa, TwistMode::Regular).unwrap();
        let v: Vector = (0..8).map(|i| q(i + 1)).collect();
        let (h, parts) = dec.components(&v).unwrap();
        let sum = parts.iter().fold(h, |acc, p| crate::exactlin::add_vectors(&acc, p));
        assert_eq!(sum, v);
    }
}
