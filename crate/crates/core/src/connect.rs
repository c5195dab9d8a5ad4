//! Connections between roots and the resulting partition of `Λ`.
//!
//! A chain `α₁, …, α_k` in `±Λ` has partial sums `s₁ = α₁` and
//! `s_{i+1} = s_i∘φ⁻¹ + α_{i+1}∘φ⁻¹`. Every partial sum must stay in `±Λ`, so
//! connectivity is reachability over the finite state set `±Λ`, starting
//! from the forward twist orbit of the source root.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::ConnectError;
use crate::rootspace::{RootDecomposition, RootFunctional};

/// An element of `±Λ`: `sign · roots[root_index]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedRoot {
    pub root_index: usize,
    /// `+1` or `−1`.
    pub sign: i8,
}

impl SignedRoot {
    pub fn positive(root_index: usize) -> Self {
        SignedRoot { root_index, sign: 1 }
    }

    pub fn functional(&self, dec: &RootDecomposition) -> RootFunctional {
        let f = &dec.roots[self.root_index];
        if self.sign < 0 {
            f.neg()
        } else {
            f.clone()
        }
    }
}

impl fmt::Display for SignedRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign < 0 { "-" } else { "+" };
        write!(f, "{s}r{}", self.root_index)
    }
}

/// Canonical name of a functional in `±Λ`: positive when it is itself a root.
pub fn signed_root_of(dec: &RootDecomposition, f: &RootFunctional) -> Option<SignedRoot> {
    if let Some(i) = dec.root_index(f) {
        return Some(SignedRoot { root_index: i, sign: 1 });
    }
    dec.root_index(&f.neg()).map(|i| SignedRoot { root_index: i, sign: -1 })
}

/// A connection from `source` to `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionWitness {
    pub source: usize,
    pub target: usize,
    /// `α₁ = source∘φ^{-start_exponent}`.
    pub start_exponent: usize,
    pub chain: Vec<SignedRoot>,
    pub partial_sums: Vec<SignedRoot>,
    /// `s_k = terminal_sign · target∘φ^{-terminal_exponent}`.
    pub terminal_sign: i8,
    pub terminal_exponent: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPartition {
    /// Root indices of each class, classes ordered by their least root.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl RootPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// The twist orbit `i, φ·i, φ²·i, …` of a root index, with exponents.
fn orbit(perm: &[usize], start: usize) -> Vec<usize> {
    let mut out = vec![start];
    let mut i = perm[start];
    while i != start {
        out.push(i);
        i = perm[i];
    }
    out
}

fn permutation(dec: &RootDecomposition) -> Result<&[usize], ConnectError> {
    dec.phi_perm.as_deref().ok_or(ConnectError::NoRootPermutation)
}

fn check_index(dec: &RootDecomposition, i: usize) -> Result<(), ConnectError> {
    if i < dec.roots.len() {
        Ok(())
    } else {
        Err(ConnectError::UnknownRoot(i))
    }
}

/// Every element of `±Λ`, in canonical order.
fn signed_roots(dec: &RootDecomposition) -> Vec<SignedRoot> {
    let all: BTreeSet<SignedRoot> = (0..dec.roots.len())
        .flat_map(|i| [dec.roots[i].clone(), dec.roots[i].neg()])
        .filter_map(|f| signed_root_of(dec, &f))
        .collect();
    all.into_iter().collect()
}

struct Search {
    /// For each reached state: its predecessor and the chain element used,
    /// or the orbit exponent for start states.
    parent: BTreeMap<SignedRoot, Step>,
    order: Vec<SignedRoot>,
}

#[derive(Clone, Copy)]
enum Step {
    Start(usize),
    From(SignedRoot, SignedRoot),
}

fn search(dec: &RootDecomposition, alpha: usize) -> Result<Search, ConnectError> {
    check_index(dec, alpha)?;
    let perm = permutation(dec)?;
    let moves = signed_roots(dec);
    let mut parent = BTreeMap::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    for (n, i) in orbit(perm, alpha).into_iter().enumerate() {
        let s = SignedRoot::positive(i);
        if parent.insert(s, Step::Start(n)).is_none() {
            order.push(s);
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        let current = s.functional(dec);
        for &g in &moves {
            let sum = current.add(&g.functional(dec));
            if sum.is_zero() {
                continue;
            }
            let next = dec.compose_inverse_twist(&sum);
            let Some(t) = signed_root_of(dec, &next) else { continue };
            if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(t) {
                e.insert(Step::From(s, g));
                order.push(t);
                queue.push_back(t);
            }
        }
    }
    Ok(Search { parent, order })
}

/// States of `±Λ` reachable as partial sums of chains starting at `alpha`.
pub fn reachable_set(dec: &RootDecomposition, alpha: usize) -> Result<BTreeSet<SignedRoot>, ConnectError> {
    Ok(search(dec, alpha)?.parent.into_keys().collect())
}

/// `±β∘φ^{-m}` for all `m`, with sign and exponent.
fn targets(dec: &RootDecomposition, beta: usize) -> Result<BTreeMap<SignedRoot, (i8, usize)>, ConnectError> {
    check_index(dec, beta)?;
    let perm = permutation(dec)?;
    let mut out = BTreeMap::new();
    for (m, i) in orbit(perm, beta).into_iter().enumerate() {
        for sign in [1i8, -1] {
            let f = SignedRoot { root_index: i, sign }.functional(dec);
            if let Some(s) = signed_root_of(dec, &f) {
                out.entry(s).or_insert((sign, m));
            }
        }
    }
    Ok(out)
}

pub fn are_connected(dec: &RootDecomposition, alpha: usize, beta: usize) -> Result<bool, ConnectError> {
    let reach = reachable_set(dec, alpha)?;
    Ok(targets(dec, beta)?.keys().any(|t| reach.contains(t)))
}

/// A shortest connection from `alpha` to `beta`, if any.
pub fn connection_witness(
    dec: &RootDecomposition,
    alpha: usize,
    beta: usize,
) -> Result<Option<ConnectionWitness>, ConnectError> {
    let found = search(dec, alpha)?;
    let goals = targets(dec, beta)?;
    let Some(&end) = found.order.iter().find(|s| goals.contains_key(s)) else {
        return Ok(None);
    };
    let (terminal_sign, terminal_exponent) = goals[&end];
    let mut chain = Vec::new();
    let mut sums = Vec::new();
    let mut state = end;
    let start_exponent = loop {
        sums.push(state);
        match found.parent[&state] {
            Step::Start(n) => {
                chain.push(state);
                break n;
            }
            Step::From(prev, g) => {
                chain.push(g);
                state = prev;
            }
        }
    };
    chain.reverse();
    sums.reverse();
    Ok(Some(ConnectionWitness {
        source: alpha,
        target: beta,
        start_exponent,
        chain,
        partial_sums: sums,
        terminal_sign,
        terminal_exponent,
    }))
}

/// Re-checks a witness from scratch, expanding each partial sum by the closed
/// formula `s_i = α₁∘φ^{-(i-1)} + Σ_{j=2}^{i} α_j∘φ^{-(i-j+1)}` rather than
/// the recurrence used by the search.
pub fn check_witness(dec: &RootDecomposition, w: &ConnectionWitness) -> Result<(), String> {
    let k = w.chain.len();
    if k == 0 || w.partial_sums.len() != k {
        return Err("chain and partial sums must be nonempty and of equal length".into());
    }
    if w.source >= dec.roots.len() || w.target >= dec.roots.len() {
        return Err("unknown root".into());
    }
    let in_pm = |f: &RootFunctional| dec.root_index(f).is_some() || dec.root_index(&f.neg()).is_some();
    let elems: Vec<RootFunctional> = w.chain.iter().map(|s| s.functional(dec)).collect();
    if let Some(i) = elems.iter().position(|f| !in_pm(f)) {
        return Err(format!("chain element {} is not in ±Λ", i + 1));
    }
    let alpha = &dec.roots[w.source];
    if dec.compose_inverse_twist_power(alpha, w.start_exponent) != elems[0] {
        return Err("first element is not in the forward orbit of the source".into());
    }
    for i in 1..=k {
        let mut s = dec.compose_inverse_twist_power(&elems[0], i - 1);
        for (j, e) in elems.iter().enumerate().take(i).skip(1) {
            s = s.add(&dec.compose_inverse_twist_power(e, i - j));
        }
        if s != w.partial_sums[i - 1].functional(dec) {
            return Err(format!("partial sum {i} does not match"));
        }
        if s.is_zero() || !in_pm(&s) {
            return Err(format!("partial sum {i} leaves ±Λ"));
        }
    }
    let beta = dec.roots[w.target].clone();
    let mut expected = dec.compose_inverse_twist_power(&beta, w.terminal_exponent);
    if w.terminal_sign < 0 {
        expected = expected.neg();
    }
    if w.partial_sums[k - 1].functional(dec) != expected {
        return Err("last partial sum is not ±β∘φ^{-m}".into());
    }
    Ok(())
}

/// Pairwise connectivity, `m[a][b] = are_connected(a, b)`.
pub fn connectivity_matrix(dec: &RootDecomposition) -> Result<Vec<Vec<bool>>, ConnectError> {
    let n = dec.roots.len();
    let reach: Vec<BTreeSet<SignedRoot>> = (0..n).map(|a| reachable_set(dec, a)).collect::<Result<_, _>>()?;
    let goals: Vec<Vec<SignedRoot>> =
        (0..n).map(|b| targets(dec, b).map(|t| t.into_keys().collect())).collect::<Result<_, _>>()?;
    Ok((0..n)
        .map(|a| (0..n).map(|b| goals[b].iter().any(|t| reach[a].contains(t))).collect())
        .collect())
}

/// Partition of `Λ` into connection classes. Fails if the computed relation
/// is not an equivalence.
pub fn connection_classes(dec: &RootDecomposition) -> Result<RootPartition, ConnectError> {
    let n = dec.roots.len();
    let m = connectivity_matrix(dec)?;
    for a in 0..n {
        if !m[a][a] {
            return Err(ConnectError::EquivalenceViolation(format!("root {a} is not connected to itself")));
        }
        for b in 0..n {
            if m[a][b] != m[b][a] {
                return Err(ConnectError::EquivalenceViolation(format!("roots {a} and {b} are not symmetric")));
            }
            if !m[a][b] {
                continue;
            }
            if let Some(c) = (0..n).find(|&c| m[b][c] && !m[a][c]) {
                return Err(ConnectError::EquivalenceViolation(format!(
                    "roots {a} ~ {b} ~ {c} but {a} is not connected to {c}"
                )));
            }
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&b| m[a][b]).collect();
        for &b in &members {
            class_of[b] = classes.len();
        }
        classes.push(members);
    }
    Ok(RootPartition { classes, class_of })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rootspace::{root_decomposition, TwistMode};

    fn ex1(n: u32) -> RootDecomposition {
        let fx = catalog::example1(n).unwrap();
        root_decomposition(&fx.algebra, &fx.magsa, TwistMode::Regular).unwrap()
    }

    // example1(2) root order: −β₂, γ₂, −γ₂, β₂, α.
    const NEG_BETA: usize = 0;
    const GAMMA: usize = 1;
    const NEG_GAMMA: usize = 2;
    const BETA: usize = 3;
    const ALPHA: usize = 4;

    #[test]
    fn alpha_reaches_only_itself() {
        let dec = ex1(2);
        let reach = reachable_set(&dec, ALPHA).unwrap();
        assert_eq!(reach.into_iter().collect::<Vec<_>>(), vec![SignedRoot::positive(ALPHA)]);
        assert!(!are_connected(&dec, ALPHA, BETA).unwrap());
        assert!(are_connected(&dec, ALPHA, ALPHA).unwrap());
    }

    #[test]
    fn beta_reaches_minus_gamma() {
        let dec = ex1(2);
        let reach = reachable_set(&dec, BETA).unwrap();
        assert!(reach.contains(&SignedRoot::positive(BETA)));
        assert!(reach.contains(&SignedRoot::positive(NEG_GAMMA)));
    }

    #[test]
    fn beta_gamma_witness() {
        let dec = ex1(2);
        let w = connection_witness(&dec, BETA, GAMMA).unwrap().unwrap();
        check_witness(&dec, &w).unwrap();
        assert_eq!(w.partial_sums.last(), Some(&SignedRoot::positive(NEG_GAMMA)));
        assert_eq!((w.terminal_sign, w.terminal_exponent), (-1, 0));
        assert_eq!(w.chain.len(), 2);
        assert_eq!(w.chain[0], SignedRoot::positive(BETA));
        assert_eq!(w.chain[1].functional(&dec), dec.roots[GAMMA]);
        let w = connection_witness(&dec, ALPHA, ALPHA).unwrap().unwrap();
        assert_eq!(w.chain, vec![SignedRoot::positive(ALPHA)]);
        assert!(connection_witness(&dec, ALPHA, NEG_BETA).unwrap().is_none());
    }

    #[test]
    fn tampered_witness_is_rejected() {
        let dec = ex1(2);
        let mut w = connection_witness(&dec, BETA, GAMMA).unwrap().unwrap();
        w.terminal_sign = 1;
        assert!(check_witness(&dec, &w).is_err());
        let mut w = connection_witness(&dec, BETA, GAMMA).unwrap().unwrap();
        w.chain[1] = SignedRoot::positive(ALPHA);
        assert!(check_witness(&dec, &w).is_err());
    }

    #[test]
    fn example1_classes() {
        let dec = ex1(3);
        let p = connection_classes(&dec).unwrap();
        assert_eq!(p.len(), 3);
        let alpha = dec.roots.iter().position(|r| r.coords[0] != crate::exactlin::q(0)).unwrap();
        assert_eq!(p.classes[p.class_of[alpha]], vec![alpha]);
        assert!(p.classes.iter().filter(|c| c.len() == 4).count() == 2);
    }

    #[test]
    fn twisted_sl2_is_one_class() {
        let fx = catalog::twisted_sl2(crate::exactlin::q(2)).unwrap();
        let dec = root_decomposition(&fx.algebra, &fx.magsa, TwistMode::Regular).unwrap();
        let p = connection_classes(&dec).unwrap();
        assert_eq!(p.classes, vec![vec![0, 1]]);
    }

    #[test]
    fn empty_root_system() {
        let fx = catalog::abelian(1, 1);
        let dec = root_decomposition(&fx.algebra, &fx.magsa, TwistMode::Regular).unwrap();
        assert!(connection_classes(&dec).unwrap().is_empty());
    }
}
