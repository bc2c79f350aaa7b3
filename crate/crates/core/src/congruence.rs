//! Equivalence relations on arrows and the affine congruence axioms.
//!
//! A partition `λ` of the arrows is an affine congruence when
//!
//! * (congruence) `g1 λ g2`, `h1 λ h2`, `g1h1` and `g2h2` defined imply
//!   `g1h1 λ g2h2`;
//! * (parallelism) `g1 λ g2`, `h1 λ h2`, `g1h2` and `h1g2` defined imply
//!   `g1h2 λ h1g2`.
//!
//! Violations are reported as the lexicographically first tuple
//! `(g1, g2, h1, h2)` by arrow index.

use std::collections::HashMap;
use std::hash::Hash;

use thiserror::Error;

use crate::groupoid::{ArrowId, FiniteGroupoid, ObjectId};
use crate::hom::GroupoidHom;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("partition covers {got} arrows, groupoid has {expected}")]
    SizeMismatch { got: usize, expected: usize },
    #[error("arrow {0} is missing from the partition")]
    Uncovered(ArrowId),
    #[error("arrow {0} appears in more than one class")]
    Repeated(ArrowId),
    #[error("arrow {0} is out of range")]
    OutOfRange(ArrowId),
    #[error("empty class")]
    EmptyClass,
    #[error("not an affine congruence: {0}")]
    NotACongruence(Violation),
}

/// A partition of the arrow set with classes numbered by first member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    class_of: Vec<usize>,
    classes: Vec<Vec<ArrowId>>,
}

impl Partition {
    /// Groups arrow `i` with arrow `j` exactly when `keys[i] == keys[j]`.
    pub fn from_keys<K: Eq + Hash>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut seen: HashMap<K, usize> = HashMap::new();
        let mut class_of = Vec::new();
        let mut classes: Vec<Vec<ArrowId>> = Vec::new();
        for (i, key) in keys.into_iter().enumerate() {
            let next = classes.len();
            let c = *seen.entry(key).or_insert(next);
            if c == next {
                classes.push(Vec::new());
            }
            classes[c].push(ArrowId(i));
            class_of.push(c);
        }
        Partition { class_of, classes }
    }

    pub fn from_classes(arrow_count: usize, classes: Vec<Vec<ArrowId>>) -> Result<Self, CongruenceError> {
        let mut class_of = vec![usize::MAX; arrow_count];
        for (c, members) in classes.iter().enumerate() {
            if members.is_empty() {
                return Err(CongruenceError::EmptyClass);
            }
            for g in members {
                if g.0 >= arrow_count {
                    return Err(CongruenceError::OutOfRange(*g));
                }
                if class_of[g.0] != usize::MAX {
                    return Err(CongruenceError::Repeated(*g));
                }
                class_of[g.0] = c;
            }
        }
        if let Some(i) = class_of.iter().position(|c| *c == usize::MAX) {
            return Err(CongruenceError::Uncovered(ArrowId(i)));
        }
        Ok(Partition::from_keys(class_of))
    }

    pub fn discrete(arrow_count: usize) -> Self {
        Partition::from_keys(0..arrow_count)
    }

    pub fn single_class(arrow_count: usize) -> Self {
        Partition::from_keys(std::iter::repeat_n((), arrow_count))
    }

    pub fn arrow_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, g: ArrowId) -> usize {
        self.class_of[g.0]
    }

    /// Members of the class of `g`, ascending.
    pub fn class_members(&self, g: ArrowId) -> &[ArrowId] {
        &self.classes[self.class_of[g.0]]
    }

    pub fn classes(&self) -> &[Vec<ArrowId>] {
        &self.classes
    }

    pub fn related(&self, g: ArrowId, h: ArrowId) -> bool {
        self.class_of[g.0] == self.class_of[h.0]
    }

    /// The common refinement: related iff related in both.
    pub fn meet(&self, other: &Partition) -> Partition {
        Partition::from_keys(self.class_of.iter().zip(&other.class_of))
    }
}

/// The relation `g λ h ⟺ θ(g) = θ(h)`.
pub fn congruence_from_hom(theta: &GroupoidHom<'_>) -> Partition {
    Partition::from_keys(theta.values().iter())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Congruence,
    Parallelism,
}

/// A failing tuple `(g1, g2, h1, h2)` for one of the two axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub g1: ArrowId,
    pub g2: ArrowId,
    pub h1: ArrowId,
    pub h2: ArrowId,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{:?} fails at ({}, {}, {}, {})",
            self.axiom, self.g1, self.g2, self.h1, self.h2
        )
    }
}

/// Outcome of checking both axioms; `None` means the axiom holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CongruenceReport {
    pub congruence: Option<Violation>,
    pub parallelism: Option<Violation>,
}

impl CongruenceReport {
    pub fn passed(&self) -> bool {
        self.congruence.is_none() && self.parallelism.is_none()
    }

    pub fn first_violation(&self) -> Option<Violation> {
        self.congruence.or(self.parallelism)
    }
}

fn check_size(groupoid: &FiniteGroupoid, lambda: &Partition) -> Result<(), CongruenceError> {
    if lambda.arrow_count() != groupoid.arrow_count() {
        return Err(CongruenceError::SizeMismatch {
            got: lambda.arrow_count(),
            expected: groupoid.arrow_count(),
        });
    }
    Ok(())
}

/// Brute-force check of both axioms.
///
/// A first pass over composable pairs records which class pairs produce
/// more than one product class; only flagged class pairs are then searched
/// for the first witness tuple.
pub fn validate_affine_congruence(
    groupoid: &FiniteGroupoid,
    lambda: &Partition,
) -> Result<CongruenceReport, CongruenceError> {
    check_size(groupoid, lambda)?;
    // products[(class g, class h)] = distinct classes of gh
    let mut products: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for g in groupoid.arrows() {
        for &h in groupoid.composable_after(g) {
            let gh = groupoid.compose(g, h).expect("composable");
            let seen = products
                .entry((lambda.class_of(g), lambda.class_of(h)))
                .or_default();
            let k = lambda.class_of(gh);
            if !seen.contains(&k) {
                seen.push(k);
            }
        }
    }

    let congruence_flags: Vec<(usize, usize)> = products
        .iter()
        .filter(|(_, ks)| ks.len() > 1)
        .map(|(cd, _)| *cd)
        .collect();
    let congruence = if congruence_flags.is_empty() {
        None
    } else {
        Some(first_congruence_witness(groupoid, lambda, &congruence_flags))
    };

    let parallel_flags: Vec<(usize, usize)> = products
        .iter()
        .filter_map(|(&(c, d), s1)| {
            let s2 = products.get(&(d, c))?;
            let conflict = s1.iter().any(|x| s2.iter().any(|y| x != y));
            conflict.then_some((c, d))
        })
        .collect();
    let parallelism = if parallel_flags.is_empty() {
        None
    } else {
        Some(first_parallelism_witness(groupoid, lambda, &parallel_flags))
    };

    Ok(CongruenceReport {
        congruence,
        parallelism,
    })
}

fn first_congruence_witness(
    groupoid: &FiniteGroupoid,
    lambda: &Partition,
    flagged: &[(usize, usize)],
) -> Violation {
    let flagged: std::collections::HashSet<_> = flagged.iter().copied().collect();
    for g1 in groupoid.arrows() {
        let c = lambda.class_of(g1);
        for &g2 in lambda.class_members(g1) {
            for &h1 in groupoid.composable_after(g1) {
                let d = lambda.class_of(h1);
                if !flagged.contains(&(c, d)) {
                    continue;
                }
                let k1 = lambda.class_of(groupoid.compose(g1, h1).expect("composable"));
                for &h2 in lambda.class_members(h1) {
                    if let Some(g2h2) = groupoid.compose(g2, h2) {
                        if lambda.class_of(g2h2) != k1 {
                            return Violation {
                                axiom: Axiom::Congruence,
                                g1,
                                g2,
                                h1,
                                h2,
                            };
                        }
                    }
                }
            }
        }
    }
    unreachable!("flagged class pair must contain a witness")
}

fn first_parallelism_witness(
    groupoid: &FiniteGroupoid,
    lambda: &Partition,
    flagged: &[(usize, usize)],
) -> Violation {
    let flagged: std::collections::HashSet<_> = flagged.iter().copied().collect();
    let mut by_target = vec![Vec::new(); groupoid.object_count()];
    for h in groupoid.arrows() {
        by_target[groupoid.target(h).0].push(h);
    }
    for g1 in groupoid.arrows() {
        let c = lambda.class_of(g1);
        for &g2 in lambda.class_members(g1) {
            // h1 g2 defined: r(h1) = d(g2)
            for &h1 in &by_target[groupoid.source(g2).0] {
                let d = lambda.class_of(h1);
                if !flagged.contains(&(c, d)) {
                    continue;
                }
                let k = lambda.class_of(groupoid.compose(h1, g2).expect("composable"));
                for &h2 in lambda.class_members(h1) {
                    if let Some(g1h2) = groupoid.compose(g1, h2) {
                        if lambda.class_of(g1h2) != k {
                            return Violation {
                                axiom: Axiom::Parallelism,
                                g1,
                                g2,
                                h1,
                                h2,
                            };
                        }
                    }
                }
            }
        }
    }
    unreachable!("flagged class pair must contain a witness")
}

/// Completeness and simplicity of a congruence, with first `(g, p)`
/// witnesses in arrow-then-object order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CongruenceProfile {
    /// First `(g, p)` with `[g]_p` empty.
    pub incomplete_at: Option<(ArrowId, ObjectId)>,
    /// First `(g, p)` with more than one element in `[g]_p`.
    pub not_simple_at: Option<(ArrowId, ObjectId)>,
}

impl CongruenceProfile {
    pub fn complete(&self) -> bool {
        self.incomplete_at.is_none()
    }

    pub fn simple(&self) -> bool {
        self.not_simple_at.is_none()
    }

    pub fn efficient(&self) -> bool {
        self.complete() && self.simple()
    }

    pub fn inefficient_at(&self) -> Option<(ArrowId, ObjectId)> {
        match (self.incomplete_at, self.not_simple_at) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

/// Profile of any partition; the axioms are not re-checked here.
pub(crate) fn profile_of(groupoid: &FiniteGroupoid, lambda: &Partition) -> CongruenceProfile {
    let n = groupoid.object_count();
    let mut counts = vec![0usize; lambda.class_count() * n];
    for g in groupoid.arrows() {
        counts[lambda.class_of(g) * n + groupoid.source(g).0] += 1;
    }
    let mut incomplete_at = None;
    let mut not_simple_at = None;
    'scan: for g in groupoid.arrows() {
        let row = &counts[lambda.class_of(g) * n..][..n];
        for p in groupoid.objects() {
            if incomplete_at.is_none() && row[p.0] == 0 {
                incomplete_at = Some((g, p));
            }
            if not_simple_at.is_none() && row[p.0] > 1 {
                not_simple_at = Some((g, p));
            }
            if incomplete_at.is_some() && not_simple_at.is_some() {
                break 'scan;
            }
        }
    }
    CongruenceProfile {
        incomplete_at,
        not_simple_at,
    }
}

/// A partition known to satisfy both affine congruence axioms.
#[derive(Debug, Clone)]
pub struct AffineCongruence<'g> {
    groupoid: &'g FiniteGroupoid,
    partition: Partition,
}

impl<'g> AffineCongruence<'g> {
    pub fn new(groupoid: &'g FiniteGroupoid, partition: Partition) -> Result<Self, CongruenceError> {
        let report = validate_affine_congruence(groupoid, &partition)?;
        match report.first_violation() {
            Some(v) => Err(CongruenceError::NotACongruence(v)),
            None => Ok(AffineCongruence {
                groupoid,
                partition,
            }),
        }
    }

    /// The relation induced by a homomorphism, which always satisfies the
    /// axioms; they are still checked.
    pub fn from_hom(theta: &GroupoidHom<'g>) -> Result<Self, CongruenceError> {
        Self::new(theta.groupoid(), congruence_from_hom(theta))
    }

    pub fn groupoid(&self) -> &'g FiniteGroupoid {
        self.groupoid
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn profile(&self) -> CongruenceProfile {
        profile_of(self.groupoid, &self.partition)
    }

    /// `[g]_p`, the members of the class of `g` with source `p`.
    pub fn class_at(&self, g: ArrowId, p: ObjectId) -> Vec<ArrowId> {
        class_at(self.groupoid, &self.partition, g, p)
    }
}

/// Profile of `lambda` after checking that it is an affine congruence.
pub fn congruence_profile(
    groupoid: &FiniteGroupoid,
    lambda: &Partition,
) -> Result<CongruenceProfile, CongruenceError> {
    Ok(AffineCongruence::new(groupoid, lambda.clone())?.profile())
}

/// `[g]_p = [g] ∩ G_p`.
pub fn class_at(groupoid: &FiniteGroupoid, lambda: &Partition, g: ArrowId, p: ObjectId) -> Vec<ArrowId> {
    lambda
        .class_members(g)
        .iter()
        .copied()
        .filter(|k| groupoid.source(*k) == p)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::hom::{AbelianGroupSig, GroupoidHom};

    const E0: ArrowId = ArrowId(0);
    const E1: ArrowId = ArrowId(1);
    const A: ArrowId = ArrowId(2);
    const B: ArrowId = ArrowId(3);

    /// Reference check straight from the definition, over all 4-tuples.
    fn brute_force(g: &FiniteGroupoid, lambda: &Partition) -> CongruenceReport {
        let mut congruence = None;
        let mut parallelism = None;
        for g1 in g.arrows() {
            for g2 in g.arrows().filter(|x| lambda.related(g1, *x)) {
                for h1 in g.arrows() {
                    for h2 in g.arrows().filter(|x| lambda.related(h1, *x)) {
                        if congruence.is_none() {
                            if let (Some(x), Some(y)) = (g.compose(g1, h1), g.compose(g2, h2)) {
                                if !lambda.related(x, y) {
                                    congruence = Some(Violation { axiom: Axiom::Congruence, g1, g2, h1, h2 });
                                }
                            }
                        }
                        if parallelism.is_none() {
                            if let (Some(x), Some(y)) = (g.compose(g1, h2), g.compose(h1, g2)) {
                                if !lambda.related(x, y) {
                                    parallelism = Some(Violation { axiom: Axiom::Parallelism, g1, g2, h1, h2 });
                                }
                            }
                        }
                    }
                }
            }
        }
        CongruenceReport { congruence, parallelism }
    }

    #[test]
    fn hom_partition_on_p2() {
        let fam = families::pair(2).unwrap();
        let theta = GroupoidHom::new(&fam.groupoid, fam.homs[0].clone()).unwrap();
        let lambda = congruence_from_hom(&theta);
        assert_eq!(lambda.classes(), &[vec![E0, E1], vec![A], vec![B]]);
        let report = validate_affine_congruence(&fam.groupoid, &lambda).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn hom_partition_on_a3() {
        let fam = families::affine_cyclic(3).unwrap();
        let theta = GroupoidHom::new(&fam.groupoid, fam.homs[0].clone()).unwrap();
        let lambda = congruence_from_hom(&theta);
        assert_eq!(lambda.class_count(), 3);
        assert!(lambda.classes().iter().all(|c| c.len() == 3));
        let zero = GroupoidHom::zero(&fam.groupoid, AbelianGroupSig::integers());
        assert_eq!(congruence_from_hom(&zero).class_count(), 1);
    }

    #[test]
    fn parallelism_failure_witness() {
        let fam = families::pair(2).unwrap();
        let lambda = Partition::from_classes(4, vec![vec![A, E0], vec![B, E1]]).unwrap();
        let report = validate_affine_congruence(&fam.groupoid, &lambda).unwrap();
        assert_eq!(report.congruence, None);
        assert_eq!(
            report.parallelism,
            Some(Violation { axiom: Axiom::Parallelism, g1: A, g2: E0, h1: B, h2: E1 })
        );
        assert_eq!(report, brute_force(&fam.groupoid, &lambda));
    }

    #[test]
    fn discrete_partition_needs_identities_related() {
        // (0,1)(1,0) = e0 and (1,0)(0,1) = e1 force e0 λ e1
        let g = families::pair(1).unwrap().groupoid;
        assert!(validate_affine_congruence(&g, &Partition::discrete(1)).unwrap().passed());
        for n in 2..=4 {
            let g = families::pair(n).unwrap().groupoid;
            let lambda = Partition::discrete(g.arrow_count());
            let report = validate_affine_congruence(&g, &lambda).unwrap();
            let x = g.arrow_by_label("(0,1)").unwrap();
            let y = g.arrow_by_label("(1,0)").unwrap();
            assert_eq!(report.congruence, None);
            assert_eq!(
                report.parallelism,
                Some(Violation { axiom: Axiom::Parallelism, g1: x, g2: x, h1: y, h2: y })
            );
            assert_eq!(report, brute_force(&g, &lambda));
        }
    }

    #[test]
    fn fast_scan_matches_brute_force_on_all_p2_partitions() {
        let g = families::pair(2).unwrap().groupoid;
        // every set partition of 4 arrows via restricted growth strings
        let mut count = 0;
        for code in 0..4usize.pow(4) {
            let keys: Vec<usize> = (0..4).map(|i| (code / 4usize.pow(i)) % 4).collect();
            let lambda = Partition::from_keys(keys);
            let fast = validate_affine_congruence(&g, &lambda).unwrap();
            assert_eq!(fast, brute_force(&g, &lambda), "{:?}", lambda.classes());
            count += 1;
        }
        assert_eq!(count, 256);
    }

    #[test]
    fn fast_scan_matches_brute_force_on_a3_coarsenings() {
        let g = families::affine_cyclic(3).unwrap().groupoid;
        for code in 0..3usize.pow(6) {
            // merge classes by a key over (p, v) pairs projected to a few bits
            let keys: Vec<usize> = g
                .arrows()
                .map(|a| (code / 3usize.pow((a.0 % 6) as u32)) % 3)
                .collect();
            let lambda = Partition::from_keys(keys);
            let fast = validate_affine_congruence(&g, &lambda).unwrap();
            assert_eq!(fast, brute_force(&g, &lambda));
        }
    }

    #[test]
    fn profiles() {
        let a3 = families::affine_cyclic(3).unwrap();
        let theta = GroupoidHom::new(&a3.groupoid, a3.homs[0].clone()).unwrap();
        let lambda = AffineCongruence::from_hom(&theta).unwrap();
        assert!(lambda.profile().efficient());
        let g = a3.groupoid.arrow_by_label("(0,1)").unwrap();
        let at2 = lambda.class_at(g, ObjectId(2));
        assert_eq!(at2.len(), 1);
        assert_eq!(a3.groupoid.arrow_label(at2[0]), "(2,1)");

        let p2 = families::pair(2).unwrap();
        let theta = GroupoidHom::new(&p2.groupoid, p2.homs[0].clone()).unwrap();
        let lambda = AffineCongruence::from_hom(&theta).unwrap();
        let profile = lambda.profile();
        assert_eq!(profile.incomplete_at, Some((A, ObjectId(1))));
        assert!(profile.simple());
        assert!(!profile.efficient());
        assert!(lambda.class_at(A, ObjectId(1)).is_empty());
        assert!(lambda.class_at(A, ObjectId(0)).contains(&A));
    }

    #[test]
    fn profile_requires_a_congruence() {
        let g = families::pair(2).unwrap().groupoid;
        let lambda = Partition::from_classes(4, vec![vec![A, E0], vec![B, E1]]).unwrap();
        assert!(matches!(
            congruence_profile(&g, &lambda),
            Err(CongruenceError::NotACongruence(_))
        ));
    }

    #[test]
    fn partition_construction_errors() {
        assert_eq!(
            Partition::from_classes(3, vec![vec![E0], vec![E1]]),
            Err(CongruenceError::Uncovered(ArrowId(2)))
        );
        assert_eq!(
            Partition::from_classes(2, vec![vec![E0, E1], vec![E1]]),
            Err(CongruenceError::Repeated(E1))
        );
        let g = families::pair(2).unwrap().groupoid;
        assert!(matches!(
            validate_affine_congruence(&g, &Partition::discrete(3)),
            Err(CongruenceError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn meet_refines_both() {
        let p = Partition::from_keys([0, 0, 1, 1]);
        let q = Partition::from_keys([0, 1, 1, 1]);
        assert_eq!(p.meet(&q).classes(), &[vec![E0], vec![E1], vec![A, B]]);
    }
}
