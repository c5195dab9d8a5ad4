//! Ideals attached to connection classes, the global decomposition
//! `𝔏 = U + Σ 𝔏_[α]`, the center, the structural hypotheses of the
//! simplicity criterion, and simplicity certification.

use std::collections::BTreeSet;

use crate::connect::{connection_classes, RootPartition};
use crate::error::DecompError;
use crate::exactlin::{kernel, Matrix, Subspace};
use crate::homsuper::{restrict_to, GradedSubspace, Parity, Superalgebra};
use crate::oracle::{brute_simplicity, OracleVerdict};
use crate::rootspace::{root_decomposition, RootDecomposition, TwistMode};

/// `𝔏_[α] = H_[α] ⊕ V_[α]` for one connection class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassIdeal {
    pub class_id: usize,
    pub roots: Vec<usize>,
    pub h_part: GradedSubspace,
    pub v_part: GradedSubspace,
    pub total: GradedSubspace,
    /// `[𝔏_[α], 𝔏_[α]] ⊆ 𝔏_[α]` and `φ(𝔏_[α]) = 𝔏_[α]`.
    pub certified_subalgebra: bool,
    /// `[𝔏_[α], 𝔏] ⊆ 𝔏_[α]`.
    pub certified_ideal: bool,
}

impl ClassIdeal {
    pub fn require_certified(&self) -> Result<(), DecompError> {
        let what = match (self.certified_subalgebra, self.certified_ideal) {
            (true, true) => return Ok(()),
            (false, _) => "not a twist-stable subalgebra",
            (true, false) => "not an ideal",
        };
        Err(DecompError::Certification { class: self.class_id, what: what.into() })
    }
}

/// `Σ [𝔏_β, 𝔏_{−β}]` over the given roots whose negative is a root.
fn generated_cartan(dec: &RootDecomposition, roots: impl IntoIterator<Item = usize>) -> GradedSubspace {
    let alg = &dec.algebra;
    let mut acc = GradedSubspace::zero(alg.dim());
    for b in roots {
        if let Some(nb) = dec.negative(b) {
            acc = acc.sum(&alg.bracket_graded(&dec.spaces[b], &dec.spaces[nb]));
        }
    }
    acc
}

fn twist_preserves(dec: &RootDecomposition, s: &GradedSubspace) -> bool {
    let image = s.image(dec.algebra.twist());
    match dec.mode {
        TwistMode::Regular => image == *s,
        TwistMode::NonRegular => image.is_subspace_of(s),
    }
}

pub fn build_class_ideal(dec: &RootDecomposition, partition: &RootPartition, class_id: usize) -> Result<ClassIdeal, DecompError> {
    let roots = partition.classes.get(class_id).ok_or(DecompError::UnknownClass(class_id))?.clone();
    let alg = &dec.algebra;
    let h_part = generated_cartan(dec, roots.iter().copied());
    let v_part = roots
        .iter()
        .fold(GradedSubspace::zero(alg.dim()), |acc, &b| acc.sum(&dec.spaces[b]));
    let total = h_part.sum(&v_part);
    let certified_subalgebra =
        alg.bracket_graded(&total, &total).is_subspace_of(&total) && twist_preserves(dec, &total);
    let certified_ideal = alg.bracket_graded(&total, &GradedSubspace::full(alg)).is_subspace_of(&total);
    Ok(ClassIdeal { class_id, roots, h_part, v_part, total, certified_subalgebra, certified_ideal })
}

pub fn build_class_ideals(dec: &RootDecomposition, partition: &RootPartition) -> Result<Vec<ClassIdeal>, DecompError> {
    (0..partition.len()).map(|c| build_class_ideal(dec, partition, c)).collect()
}

/// Whether distinct class ideals bracket to zero.
pub fn check_orthogonality(alg: &Superalgebra, ideals: &[ClassIdeal]) -> bool {
    ideals.iter().enumerate().all(|(i, a)| {
        ideals[i + 1..].iter().all(|b| alg.bracket_graded(&a.total, &b.total).is_zero())
    })
}

/// `𝔏 = U + Σ 𝔏_[α]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealDecomposition {
    pub u: GradedSubspace,
    /// `Σ_α [𝔏_α, 𝔏_{−α}]`.
    pub generated: GradedSubspace,
    pub ideals: Vec<ClassIdeal>,
    pub spans: bool,
    pub direct_sum: bool,
    pub pairwise_orthogonal: bool,
}

/// The graded center `{v : [v, 𝔏] = 0}`.
pub fn center(alg: &Superalgebra) -> GradedSubspace {
    let n = alg.dim();
    let mut stacked = Matrix::zeros(0, n);
    for i in 0..n {
        // [e_i, v] = 0 iff [v, e_i] = 0 by skew-supersymmetry.
        stacked = stacked.vstack(&alg.ad(&alg.basis_vector(i)));
    }
    let z = kernel(&stacked);
    GradedSubspace::from_parts(z.intersect(&alg.even_space()), z.intersect(&alg.odd_space()))
}

pub fn global_decomposition(dec: &RootDecomposition, partition: &RootPartition) -> Result<IdealDecomposition, DecompError> {
    let alg = &dec.algebra;
    let ideals = build_class_ideals(dec, partition)?;
    for ideal in &ideals {
        ideal.require_certified()?;
    }
    let generated = generated_cartan(dec, 0..dec.roots.len());
    let u = GradedSubspace::from_parts(
        generated.even().greedy_complement(&dec.h.even().basis_vectors()),
        generated.odd().greedy_complement(&dec.h.odd().basis_vectors()),
    );
    let sum = ideals.iter().fold(u.clone(), |acc, i| acc.sum(&i.total));
    let spans = sum.dim() == alg.dim();
    let direct_sum = spans && u.dim() + ideals.iter().map(|i| i.total.dim()).sum::<usize>() == alg.dim();
    let pairwise_orthogonal = check_orthogonality(alg, &ideals);
    if center(alg).is_zero() && generated == dec.h && !direct_sum {
        return Err(DecompError::DirectSumViolation);
    }
    Ok(IdealDecomposition { u, generated, ideals, spans, direct_sum, pairwise_orthogonal })
}

/// The hypotheses of the simplicity criterion, each computed exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructureFlags {
    pub symmetric_roots: bool,
    pub maximal_length: bool,
    pub root_multiplicative: bool,
    pub center_zero: bool,
    pub h_generated: bool,
    pub all_connected: bool,
}

impl StructureFlags {
    /// Symmetric, maximal length, root multiplicative, trivial center.
    pub fn hypotheses_hold(&self) -> bool {
        self.symmetric_roots && self.maximal_length && self.root_multiplicative && self.center_zero
    }

    pub fn named(&self) -> [(&'static str, bool); 6] {
        [
            ("symmetric_roots", self.symmetric_roots),
            ("maximal_length", self.maximal_length),
            ("root_multiplicative", self.root_multiplicative),
            ("center_zero", self.center_zero),
            ("h_generated", self.h_generated),
            ("all_connected", self.all_connected),
        ]
    }
}

pub fn is_maximal_length(dec: &RootDecomposition) -> bool {
    dec.spaces.iter().all(|s| s.even().dim() <= 1 && s.odd().dim() <= 1)
}

/// `[𝔏_{α,ī}, 𝔏_{β,j̄}] ≠ 0` whenever `αφ⁻¹ + βφ⁻¹ ∈ Λ_{ī+j̄}`.
pub fn is_root_multiplicative(dec: &RootDecomposition) -> bool {
    let alg = &dec.algebra;
    let parities = [Parity::Even, Parity::Odd];
    for a in 0..dec.roots.len() {
        for b in 0..dec.roots.len() {
            let sigma = dec.compose_inverse_twist(&dec.roots[a]).add(&dec.compose_inverse_twist(&dec.roots[b]));
            let Some(target) = dec.root_index(&sigma) else { continue };
            for p in parities {
                for q in parities {
                    let (xa, xb) = (dec.spaces[a].part(p), dec.spaces[b].part(q));
                    if xa.is_zero() || xb.is_zero() || dec.spaces[target].part(p + q).is_zero() {
                        continue;
                    }
                    if alg.bracket_spaces(xa, xb).is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn structure_flags(dec: &RootDecomposition, partition: &RootPartition) -> StructureFlags {
    StructureFlags {
        symmetric_roots: dec.is_symmetric(),
        maximal_length: is_maximal_length(dec),
        root_multiplicative: is_root_multiplicative(dec),
        center_zero: center(&dec.algebra).is_zero(),
        h_generated: generated_cartan(dec, 0..dec.roots.len()) == dec.h,
        all_connected: partition.len() <= 1,
    }
}

/// Which roots and which parts of `H` an ideal meets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSupport {
    pub even_roots: BTreeSet<usize>,
    pub odd_roots: BTreeSet<usize>,
    pub h_even: Subspace,
    pub h_odd: Subspace,
}

pub fn ideal_support(dec: &RootDecomposition, ideal: &GradedSubspace) -> IdealSupport {
    let meets = |p: Parity| -> BTreeSet<usize> {
        (0..dec.roots.len())
            .filter(|&a| !ideal.part(p).intersect(dec.spaces[a].part(p)).is_zero())
            .collect()
    };
    IdealSupport {
        even_roots: meets(Parity::Even),
        odd_roots: meets(Parity::Odd),
        h_even: ideal.even().intersect(dec.h.even()),
        h_odd: ideal.odd().intersect(dec.h.odd()),
    }
}

impl IdealSupport {
    /// `(I ∩ H) ⊕ ⊕_α (I ∩ 𝔏_α)` rebuilt from the support.
    pub fn reconstruct(&self, dec: &RootDecomposition, ideal: &GradedSubspace) -> GradedSubspace {
        let mut even = self.h_even.clone();
        for &a in &self.even_roots {
            even = even.sum(&ideal.even().intersect(dec.spaces[a].even()));
        }
        let mut odd = self.h_odd.clone();
        for &a in &self.odd_roots {
            odd = odd.sum(&ideal.odd().intersect(dec.spaces[a].odd()));
        }
        GradedSubspace::from_parts(even, odd)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Simple,
    NotSimple,
    Inconclusive,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Simple => "SIMPLE",
            Verdict::NotSimple => "NOT_SIMPLE",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    pub verdict: Verdict,
    pub flags: StructureFlags,
    pub derived_nonzero: bool,
    /// The criterion's answer when its hypotheses hold.
    pub criterion: Option<bool>,
    pub oracle: OracleVerdict,
    /// A proper nonzero graded ideal when the verdict is `NotSimple`.
    pub witness: Option<GradedSubspace>,
    pub reasons: Vec<String>,
}

/// Smallest certified class ideal that is proper and nonzero.
fn proper_class_ideal(dec: &RootDecomposition, partition: &RootPartition) -> Result<Option<GradedSubspace>, DecompError> {
    let n = dec.algebra.dim();
    let ideals = build_class_ideals(dec, partition)?;
    Ok(ideals
        .into_iter()
        .filter(|i| i.certified_subalgebra && i.certified_ideal && !i.total.is_zero() && i.total.dim() < n)
        .min_by_key(|i| i.total.dim())
        .map(|i| i.total))
}

pub fn certify_simple(dec: &RootDecomposition, partition: &RootPartition) -> Result<SimplicityReport, DecompError> {
    let alg = &dec.algebra;
    let flags = structure_flags(dec, partition);
    let derived_nonzero = !alg.derived_algebra().is_zero();
    let oracle = brute_simplicity(dec);
    let mut reasons = Vec::new();
    let criterion = flags.hypotheses_hold().then_some(flags.all_connected && flags.h_generated);
    let mut report = SimplicityReport {
        verdict: Verdict::Inconclusive,
        flags,
        derived_nonzero,
        criterion,
        oracle: oracle.clone(),
        witness: None,
        reasons: Vec::new(),
    };
    if !derived_nonzero {
        reasons.push("[L, L] = 0".to_string());
        report.verdict = Verdict::NotSimple;
        report.reasons = reasons;
        return Ok(report);
    }
    match criterion {
        Some(true) => reasons.push("hypotheses hold, all roots connected and H generated".into()),
        Some(false) => reasons.push(format!(
            "hypotheses hold but {}",
            if flags.all_connected { "H is not generated by root brackets" } else { "roots are not all connected" }
        )),
        None => {
            let failed: Vec<&str> = flags.named()[..4].iter().filter(|(_, v)| !v).map(|(k, _)| *k).collect();
            reasons.push(format!("criterion not applicable: {} false", failed.join(", ")));
        }
    }
    let oracle_simple = match &oracle {
        OracleVerdict::Simple => Some(true),
        OracleVerdict::NotSimple { .. } => Some(false),
        OracleVerdict::Inapplicable { reason } => {
            reasons.push(format!("oracle abstains: {reason}"));
            None
        }
    };
    if let (Some(t), Some(o)) = (criterion, oracle_simple) {
        if t != o {
            return Err(DecompError::VerdictDisagreement(format!("criterion says {t}, oracle says {o}")));
        }
    }
    let simple = criterion.or(oracle_simple);
    match simple {
        Some(true) => report.verdict = Verdict::Simple,
        Some(false) | None => {
            let witness = match &oracle {
                OracleVerdict::NotSimple { witness } => Some(witness.closure.clone()),
                _ => None,
            };
            let witness = match proper_class_ideal(dec, partition)? {
                Some(w) => Some(w),
                None => witness,
            };
            if let Some(w) = witness {
                reasons.push(format!("proper ideal of dimension {}", w.dim()));
                report.witness = Some(w);
                report.verdict = Verdict::NotSimple;
            } else if simple == Some(false) {
                report.verdict = Verdict::NotSimple;
            }
        }
    }
    report.reasons = reasons;
    Ok(report)
}

/// One simple direct summand, re-entered as a standalone algebra.
#[derive(Clone, Debug)]
pub struct SimpleComponent {
    pub ideal: ClassIdeal,
    pub algebra: Superalgebra,
    pub magsa: GradedSubspace,
    pub report: SimplicityReport,
}

pub fn simple_components(dec: &RootDecomposition, partition: &RootPartition) -> Result<Vec<SimpleComponent>, DecompError> {
    let flags = structure_flags(dec, partition);
    let unmet: Vec<String> = flags
        .named()
        .iter()
        .filter(|(name, v)| *name != "all_connected" && !v)
        .map(|(name, _)| name.to_string())
        .collect();
    if !unmet.is_empty() {
        return Err(DecompError::PreconditionUnmet(unmet));
    }
    let global = global_decomposition(dec, partition)?;
    if !global.direct_sum {
        return Err(DecompError::DirectSumViolation);
    }
    let mut out = Vec::new();
    for ideal in global.ideals {
        let class = ideal.class_id;
        let fail = |reason: String| DecompError::ComponentNotSimple { class, reason };
        let restricted = restrict_to(&dec.algebra, &ideal.total).map_err(|e| fail(e.to_string()))?;
        let magsa = restricted.transport(&ideal.h_part).ok_or_else(|| fail("H part outside the ideal".into()))?;
        let sub = root_decomposition(&restricted.algebra, &magsa, dec.mode).map_err(|e| fail(e.to_string()))?;
        let sub_partition = connection_classes(&sub)?;
        let report = certify_simple(&sub, &sub_partition)?;
        if report.verdict != Verdict::Simple {
            return Err(fail(report.reasons.join("; ")));
        }
        out.push(SimpleComponent { ideal, algebra: restricted.algebra, magsa, report });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactlin::q;

    fn pipeline(fx: &catalog::Fixture) -> (RootDecomposition, RootPartition) {
        let dec = root_decomposition(&fx.algebra, &fx.magsa, TwistMode::for_algebra(&fx.algebra)).unwrap();
        let p = connection_classes(&dec).unwrap();
        (dec, p)
    }

    fn names(alg: &Superalgebra, s: &GradedSubspace) -> Vec<String> {
        s.total().basis_vectors().iter().map(|v| alg.describe(v)).collect()
    }

    #[test]
    fn example1_class_ideals() {
        let fx = catalog::example1(2).unwrap();
        let (dec, p) = pipeline(&fx);
        let alg = &fx.algebra;
        let ideals = build_class_ideals(&dec, &p).unwrap();
        assert_eq!(ideals.len(), 2);
        let beta = &ideals[0];
        assert_eq!(names(alg, &beta.h_part), ["h2"]);
        assert_eq!(beta.total.dim(), 5);
        assert!(beta.certified_ideal && beta.certified_subalgebra);
        let alpha = &ideals[1];
        assert!(alpha.h_part.is_zero());
        assert_eq!(names(alg, &alpha.total), ["e1"]);
        assert!(check_orthogonality(alg, &ideals));
    }

    #[test]
    fn example1_global_decomposition() {
        let fx = catalog::example1(2).unwrap();
        let (dec, p) = pipeline(&fx);
        let g = global_decomposition(&dec, &p).unwrap();
        assert_eq!(names(&fx.algebra, &g.u), ["e2", "e3"]);
        assert!(g.spans && g.direct_sum && g.pairwise_orthogonal);
        assert_eq!(names(&fx.algebra, &center(&fx.algebra)), ["e3"]);
    }

    #[test]
    fn example1_flags_and_verdict() {
        let fx = catalog::example1(2).unwrap();
        let (dec, p) = pipeline(&fx);
        let f = structure_flags(&dec, &p);
        assert!(!f.symmetric_roots && f.maximal_length && !f.center_zero && !f.h_generated && !f.all_connected);
        let r = certify_simple(&dec, &p).unwrap();
        assert_eq!(r.verdict, Verdict::NotSimple);
        assert_eq!(names(&fx.algebra, r.witness.as_ref().unwrap()), ["e1"]);
        assert!(matches!(r.oracle, OracleVerdict::Inapplicable { .. }));
    }

    #[test]
    fn standalone_component_is_simple() {
        let fx = catalog::example1(2).unwrap();
        let (dec, p) = pipeline(&fx);
        let ideal = build_class_ideal(&dec, &p, 0).unwrap();
        let comp = catalog::component_restriction(&fx.algebra, &ideal).unwrap();
        assert_eq!(comp.algebra.dim(), 5);
        assert!(center(&comp.algebra).is_zero());
        let (sub, sp) = pipeline(&comp);
        assert_eq!(sub.roots.len(), 4);
        let f = structure_flags(&sub, &sp);
        assert!(f.named().iter().all(|(_, v)| *v), "{f:?}");
        let r = certify_simple(&sub, &sp).unwrap();
        assert_eq!(r.verdict, Verdict::Simple);
        assert_eq!(r.criterion, Some(true));
        assert_eq!(r.oracle, OracleVerdict::Simple);
    }

    #[test]
    fn twisted_sl2_is_single_simple_ideal() {
        let fx = catalog::twisted_sl2(q(2)).unwrap();
        let (dec, p) = pipeline(&fx);
        let g = global_decomposition(&dec, &p).unwrap();
        assert!(g.u.is_zero() && g.direct_sum);
        assert_eq!(g.ideals[0].total.dim(), 3);
        assert_eq!(certify_simple(&dec, &p).unwrap().verdict, Verdict::Simple);
    }

    #[test]
    fn abelian_is_not_simple() {
        let fx = catalog::abelian(2, 1);
        let (dec, p) = pipeline(&fx);
        let f = structure_flags(&dec, &p);
        assert!(f.symmetric_roots && !f.h_generated);
        assert_eq!(certify_simple(&dec, &p).unwrap().verdict, Verdict::NotSimple);
        let g = global_decomposition(&dec, &p).unwrap();
        assert_eq!(g.u, fx.magsa);
        assert!(g.ideals.is_empty());
    }

    #[test]
    fn sum_of_simple_pieces_splits() {
        let a = catalog::twisted_sl2(q(2)).unwrap();
        let b = catalog::twisted_sl2(q(3)).unwrap();
        let fx = catalog::sum_of(&[a, b]);
        let (dec, p) = pipeline(&fx);
        let comps = simple_components(&dec, &p).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.report.verdict == Verdict::Simple));
        assert!(matches!(
            simple_components(&pipeline(&catalog::example1(2).unwrap()).0, &pipeline(&catalog::example1(2).unwrap()).1),
            Err(DecompError::PreconditionUnmet(_))
        ));
    }
}
