//! Finite groupoids given by explicit composition tables.
//!
//! Composition is diagrammatic: `gh` is defined exactly when the target of
//! `g` is the source of `h`, and then `d(gh) = d(g)`, `r(gh) = r(h)`. For the
//! pair groupoid this reads `(x,y)(y,z) = (x,z)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on the number of objects.
pub const DEFAULT_MAX_OBJECTS: usize = 64;
/// Default cap on the number of arrows; `GRPD_MAX_ARROWS` overrides it.
pub const DEFAULT_MAX_ARROWS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ObjectId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArrowId(pub usize);

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for ArrowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error("{count} objects exceeds the cap of {cap}")]
    TooManyObjects { count: usize, cap: usize },
    #[error("{count} arrows exceeds the cap of {cap}")]
    TooManyArrows { count: usize, cap: usize },
    #[error("the base must contain at least one object")]
    EmptyBase,
    #[error("dangling reference: {0}")]
    DanglingReference(String),
    #[error("{f} and {g} are composed but the target of {f} is not the source of {g}")]
    BadCompositionDomain { f: String, g: String },
    #[error("{f}{g} = {h} has the wrong source or target")]
    CompositionEndpoints { f: String, g: String, h: String },
    #[error("{f}{g} is given two different values")]
    ConflictingComposition { f: String, g: String },
    #[error("{f}{g} is composable but missing from the table")]
    IncompleteTable { f: String, g: String },
    #[error("no identity arrow at object {0}")]
    MissingIdentity(String),
    #[error("declared identity {arrow} at object {object} is not neutral")]
    NotNeutral { object: String, arrow: String },
    #[error("composition is not associative on ({g}, {h}, {k})")]
    NotAssociative { g: String, h: String, k: String },
    #[error("{0} has no valid inverse")]
    BadInverse(String),
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("{g} and {h} are not composable")]
    NotComposable { g: String, h: String },
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
}

/// Size caps enforced at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_objects: usize,
    pub max_arrows: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_objects: DEFAULT_MAX_OBJECTS,
            max_arrows: DEFAULT_MAX_ARROWS,
        }
    }
}

impl Limits {
    /// Default limits with the arrow cap taken from `GRPD_MAX_ARROWS` when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = std::env::var("GRPD_MAX_ARROWS")
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            limits.max_arrows = cap;
        }
        limits
    }
}

/// Unvalidated groupoid data in index form.
///
/// `compose` lists triples `(f, g, h)` meaning `fg = h`. `inverse` and
/// `identity` are derived when absent and cross-checked when present.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawGroupoid {
    pub object_labels: Vec<String>,
    pub arrow_labels: Vec<String>,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub compose: Vec<(usize, usize, usize)>,
    pub inverse: Option<Vec<usize>>,
    pub identity: Option<Vec<usize>>,
}

/// A validated finite groupoid. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    object_labels: Vec<String>,
    arrow_labels: Vec<String>,
    source: Vec<ObjectId>,
    target: Vec<ObjectId>,
    // fibers[p] lists the arrows with source p in ascending order
    fibers: Vec<Vec<ArrowId>>,
    fiber_pos: Vec<usize>,
    // products[g][i] = g * fibers[r(g)][i]
    products: Vec<Vec<ArrowId>>,
    inverse: Vec<ArrowId>,
    identity: Vec<ArrowId>,
    is_identity: Vec<bool>,
}

/// A full subgroupoid together with its embedding into the parent.
#[derive(Debug, Clone)]
pub struct Subgroupoid {
    pub groupoid: FiniteGroupoid,
    /// `objects[i]` is the parent object of the subgroupoid's object `i`.
    pub objects: Vec<ObjectId>,
    /// `arrows[i]` is the parent arrow of the subgroupoid's arrow `i`.
    pub arrows: Vec<ArrowId>,
}

impl FiniteGroupoid {
    pub fn from_raw(raw: RawGroupoid) -> Result<Self, GroupoidError> {
        Self::from_raw_with_limits(raw, Limits::from_env())
    }

    pub fn from_raw_with_limits(raw: RawGroupoid, limits: Limits) -> Result<Self, GroupoidError> {
        Builder::new(raw, limits)?.build()
    }

    pub fn object_count(&self) -> usize {
        self.object_labels.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrow_labels.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> + Clone {
        (0..self.object_count()).map(ObjectId)
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> + Clone {
        (0..self.arrow_count()).map(ArrowId)
    }

    pub fn source(&self, g: ArrowId) -> ObjectId {
        self.source[g.0]
    }

    pub fn target(&self, g: ArrowId) -> ObjectId {
        self.target[g.0]
    }

    pub fn arrow_label(&self, g: ArrowId) -> &str {
        &self.arrow_labels[g.0]
    }

    pub fn object_label(&self, p: ObjectId) -> &str {
        &self.object_labels[p.0]
    }

    pub fn arrow_labels(&self) -> &[String] {
        &self.arrow_labels
    }

    pub fn object_labels(&self) -> &[String] {
        &self.object_labels
    }

    pub fn arrow_by_label(&self, label: &str) -> Option<ArrowId> {
        self.arrow_labels.iter().position(|l| l == label).map(ArrowId)
    }

    pub fn object_by_label(&self, label: &str) -> Option<ObjectId> {
        self.object_labels.iter().position(|l| l == label).map(ObjectId)
    }

    /// `gh`, or `None` when the target of `g` differs from the source of `h`.
    pub fn compose(&self, g: ArrowId, h: ArrowId) -> Option<ArrowId> {
        if self.target[g.0] == self.source[h.0] {
            Some(self.products[g.0][self.fiber_pos[h.0]])
        } else {
            None
        }
    }

    pub fn try_compose(&self, g: ArrowId, h: ArrowId) -> Result<ArrowId, GroupoidError> {
        self.compose(g, h).ok_or_else(|| GroupoidError::NotComposable {
            g: self.arrow_label(g).to_string(),
            h: self.arrow_label(h).to_string(),
        })
    }

    pub fn is_composable(&self, g: ArrowId, h: ArrowId) -> bool {
        self.target[g.0] == self.source[h.0]
    }

    pub fn inverse_of(&self, g: ArrowId) -> ArrowId {
        self.inverse[g.0]
    }

    pub fn identity_at(&self, p: ObjectId) -> ArrowId {
        self.identity[p.0]
    }

    pub fn is_identity(&self, g: ArrowId) -> bool {
        self.is_identity[g.0]
    }

    pub fn identities(&self) -> &[ArrowId] {
        &self.identity
    }

    /// Arrows with source `p`, ascending.
    pub fn source_fiber(&self, p: ObjectId) -> &[ArrowId] {
        &self.fibers[p.0]
    }

    /// Arrows `h` such that `gh` is defined.
    pub fn composable_after(&self, g: ArrowId) -> &[ArrowId] {
        &self.fibers[self.target[g.0].0]
    }

    /// Arrows with source in `sources` and target in `targets`, ascending.
    pub fn slice(
        &self,
        sources: &[ObjectId],
        targets: &[ObjectId],
    ) -> Result<Vec<ArrowId>, GroupoidError> {
        let n = self.object_count();
        let mut in_p = vec![false; n];
        let mut in_q = vec![false; n];
        for (set, marks) in [(sources, &mut in_p), (targets, &mut in_q)] {
            for p in set {
                if p.0 >= n {
                    return Err(GroupoidError::UnknownObject(p.to_string()));
                }
                marks[p.0] = true;
            }
        }
        Ok(self
            .arrows()
            .filter(|g| in_p[self.source(*g).0] && in_q[self.target(*g).0])
            .collect())
    }

    /// Arrows from `p` to `q`.
    pub fn hom_set(&self, p: ObjectId, q: ObjectId) -> Vec<ArrowId> {
        self.fibers[p.0]
            .iter()
            .copied()
            .filter(|g| self.target(*g) == q)
            .collect()
    }

    /// The isotropy group at `p`.
    pub fn isotropy(&self, p: ObjectId) -> Vec<ArrowId> {
        self.hom_set(p, p)
    }

    /// True when every ordered pair of objects is joined by an arrow.
    pub fn is_transitive(&self) -> bool {
        let n = self.object_count();
        self.objects().all(|p| {
            let mut reached = vec![false; n];
            for g in self.source_fiber(p) {
                reached[self.target(*g).0] = true;
            }
            reached.iter().all(|r| *r)
        })
    }

    /// Full subgroupoid on the objects `base`, re-validated.
    pub fn restrict(&self, base: &[ObjectId]) -> Result<Subgroupoid, GroupoidError> {
        if base.is_empty() {
            return Err(GroupoidError::EmptyBase);
        }
        let mut objects: Vec<ObjectId> = base.to_vec();
        objects.sort();
        objects.dedup();
        if let Some(p) = objects.iter().find(|p| p.0 >= self.object_count()) {
            return Err(GroupoidError::UnknownObject(p.to_string()));
        }
        let arrows = self.slice(&objects, &objects)?;
        let mut object_index = vec![usize::MAX; self.object_count()];
        for (i, p) in objects.iter().enumerate() {
            object_index[p.0] = i;
        }
        let mut arrow_index = vec![usize::MAX; self.arrow_count()];
        for (i, g) in arrows.iter().enumerate() {
            arrow_index[g.0] = i;
        }
        let mut compose = Vec::new();
        for (i, g) in arrows.iter().enumerate() {
            for h in self.composable_after(*g) {
                let j = arrow_index[h.0];
                if j != usize::MAX {
                    let gh = self.products[g.0][self.fiber_pos[h.0]];
                    compose.push((i, j, arrow_index[gh.0]));
                }
            }
        }
        let raw = RawGroupoid {
            object_labels: objects
                .iter()
                .map(|p| self.object_label(*p).to_string())
                .collect(),
            arrow_labels: arrows
                .iter()
                .map(|g| self.arrow_label(*g).to_string())
                .collect(),
            source: arrows.iter().map(|g| object_index[self.source(*g).0]).collect(),
            target: arrows.iter().map(|g| object_index[self.target(*g).0]).collect(),
            compose,
            inverse: Some(
                arrows
                    .iter()
                    .map(|g| arrow_index[self.inverse_of(*g).0])
                    .collect(),
            ),
            identity: Some(
                objects
                    .iter()
                    .map(|p| arrow_index[self.identity_at(*p).0])
                    .collect(),
            ),
        };
        let groupoid = FiniteGroupoid::from_raw_with_limits(
            raw,
            Limits {
                max_objects: usize::MAX,
                max_arrows: usize::MAX,
            },
        )?;
        Ok(Subgroupoid {
            groupoid,
            objects,
            arrows,
        })
    }

    /// Index-form data with every composable pair listed.
    pub fn to_raw(&self) -> RawGroupoid {
        let mut compose = Vec::new();
        for g in self.arrows() {
            for (h, gh) in self.composable_after(g).iter().zip(&self.products[g.0]) {
                compose.push((g.0, h.0, gh.0));
            }
        }
        RawGroupoid {
            object_labels: self.object_labels.clone(),
            arrow_labels: self.arrow_labels.clone(),
            source: self.source.iter().map(|p| p.0).collect(),
            target: self.target.iter().map(|p| p.0).collect(),
            compose,
            inverse: Some(self.inverse.iter().map(|g| g.0).collect()),
            identity: Some(self.identity.iter().map(|g| g.0).collect()),
        }
    }
}

struct Builder {
    raw: RawGroupoid,
    fibers: Vec<Vec<ArrowId>>,
    fiber_pos: Vec<usize>,
    products: Vec<Vec<Option<ArrowId>>>,
}

impl Builder {
    fn new(raw: RawGroupoid, limits: Limits) -> Result<Self, GroupoidError> {
        let n = raw.object_labels.len();
        let m = raw.arrow_labels.len();
        if n == 0 {
            return Err(GroupoidError::EmptyBase);
        }
        if n > limits.max_objects {
            return Err(GroupoidError::TooManyObjects {
                count: n,
                cap: limits.max_objects,
            });
        }
        if m > limits.max_arrows {
            return Err(GroupoidError::TooManyArrows {
                count: m,
                cap: limits.max_arrows,
            });
        }
        check_unique(&raw.object_labels)?;
        check_unique(&raw.arrow_labels)?;
        if raw.source.len() != m || raw.target.len() != m {
            return Err(GroupoidError::DanglingReference(
                "source/target maps must cover every arrow".into(),
            ));
        }
        for (g, (&d, &r)) in raw.source.iter().zip(&raw.target).enumerate() {
            if d >= n || r >= n {
                return Err(GroupoidError::DanglingReference(format!(
                    "arrow {} has an endpoint outside the base",
                    raw.arrow_labels[g]
                )));
            }
        }
        let mut fibers = vec![Vec::new(); n];
        let mut fiber_pos = vec![0; m];
        for g in 0..m {
            let fiber = &mut fibers[raw.source[g]];
            fiber_pos[g] = fiber.len();
            fiber.push(ArrowId(g));
        }
        let products = (0..m).map(|g| vec![None; fibers[raw.target[g]].len()]).collect();
        Ok(Builder {
            raw,
            fibers,
            fiber_pos,
            products,
        })
    }

    fn label(&self, g: usize) -> String {
        self.raw.arrow_labels[g].clone()
    }

    fn object_label(&self, p: usize) -> String {
        self.raw.object_labels[p].clone()
    }

    fn product(&self, g: usize, h: usize) -> Option<usize> {
        if self.raw.target[g] == self.raw.source[h] {
            self.products[g][self.fiber_pos[h]].map(|a| a.0)
        } else {
            None
        }
    }

    fn build(mut self) -> Result<FiniteGroupoid, GroupoidError> {
        self.fill_table()?;
        let identity = self.identities()?;
        self.check_associative()?;
        let inverse = self.inverses(&identity)?;

        let n = self.raw.object_labels.len();
        let m = self.raw.arrow_labels.len();
        let mut is_identity = vec![false; m];
        for e in &identity {
            is_identity[*e] = true;
        }
        let products = self
            .products
            .into_iter()
            .map(|row| row.into_iter().map(|x| x.expect("table filled")).collect())
            .collect();
        debug_assert_eq!(identity.len(), n);
        Ok(FiniteGroupoid {
            object_labels: self.raw.object_labels,
            arrow_labels: self.raw.arrow_labels,
            source: self.raw.source.into_iter().map(ObjectId).collect(),
            target: self.raw.target.into_iter().map(ObjectId).collect(),
            fibers: self.fibers,
            fiber_pos: self.fiber_pos,
            products,
            inverse: inverse.into_iter().map(ArrowId).collect(),
            identity: identity.into_iter().map(ArrowId).collect(),
            is_identity,
        })
    }

    fn fill_table(&mut self) -> Result<(), GroupoidError> {
        let m = self.raw.arrow_labels.len();
        let triples = std::mem::take(&mut self.raw.compose);
        for &(f, g, h) in &triples {
            if f >= m || g >= m || h >= m {
                return Err(GroupoidError::DanglingReference(format!(
                    "composition triple ({f}, {g}, {h}) refers to a missing arrow"
                )));
            }
            let (d, r) = (&self.raw.source, &self.raw.target);
            if r[f] != d[g] {
                return Err(GroupoidError::BadCompositionDomain {
                    f: self.label(f),
                    g: self.label(g),
                });
            }
            if d[h] != d[f] || r[h] != r[g] {
                return Err(GroupoidError::CompositionEndpoints {
                    f: self.label(f),
                    g: self.label(g),
                    h: self.label(h),
                });
            }
            let slot = &mut self.products[f][self.fiber_pos[g]];
            match slot {
                Some(existing) if existing.0 != h => {
                    return Err(GroupoidError::ConflictingComposition {
                        f: self.label(f),
                        g: self.label(g),
                    })
                }
                _ => *slot = Some(ArrowId(h)),
            }
        }
        self.raw.compose = triples;
        for f in 0..m {
            let r = self.raw.target[f];
            if let Some(i) = self.products[f].iter().position(Option::is_none) {
                return Err(GroupoidError::IncompleteTable {
                    f: self.label(f),
                    g: self.label(self.fibers[r][i].0),
                });
            }
        }
        Ok(())
    }

    fn is_neutral_at(&self, e: usize, p: usize) -> bool {
        let (d, r) = (&self.raw.source, &self.raw.target);
        if d[e] != p || r[e] != p {
            return false;
        }
        let left = self.fibers[p].iter().all(|h| self.product(e, h.0) == Some(h.0));
        let right = (0..self.raw.arrow_labels.len())
            .filter(|g| r[*g] == p)
            .all(|g| self.product(g, e) == Some(g));
        left && right
    }

    fn identities(&self) -> Result<Vec<usize>, GroupoidError> {
        let n = self.raw.object_labels.len();
        match &self.raw.identity {
            Some(declared) => {
                if declared.len() != n {
                    return Err(GroupoidError::DanglingReference(
                        "identity map must cover every object".into(),
                    ));
                }
                for (p, &e) in declared.iter().enumerate() {
                    if e >= self.raw.arrow_labels.len() {
                        return Err(GroupoidError::DanglingReference(format!(
                            "identity of {} is not an arrow",
                            self.object_label(p)
                        )));
                    }
                    if !self.is_neutral_at(e, p) {
                        return Err(GroupoidError::NotNeutral {
                            object: self.object_label(p),
                            arrow: self.label(e),
                        });
                    }
                }
                Ok(declared.clone())
            }
            None => (0..n)
                .map(|p| {
                    self.fibers[p]
                        .iter()
                        .map(|e| e.0)
                        .find(|e| self.is_neutral_at(*e, p))
                        .ok_or_else(|| GroupoidError::MissingIdentity(self.object_label(p)))
                })
                .collect(),
        }
    }

    fn check_associative(&self) -> Result<(), GroupoidError> {
        let m = self.raw.arrow_labels.len();
        for g in 0..m {
            for h in &self.fibers[self.raw.target[g]] {
                let gh = self.product(g, h.0).expect("filled");
                for k in &self.fibers[self.raw.target[h.0]] {
                    let left = self.product(gh, k.0);
                    let hk = self.product(h.0, k.0).expect("filled");
                    let right = self.product(g, hk);
                    if left != right {
                        return Err(GroupoidError::NotAssociative {
                            g: self.label(g),
                            h: self.label(h.0),
                            k: self.label(k.0),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn is_inverse_pair(&self, g: usize, h: usize, identity: &[usize]) -> bool {
        self.product(g, h) == Some(identity[self.raw.source[g]])
            && self.product(h, g) == Some(identity[self.raw.target[g]])
    }

    fn inverses(&self, identity: &[usize]) -> Result<Vec<usize>, GroupoidError> {
        let m = self.raw.arrow_labels.len();
        match &self.raw.inverse {
            Some(declared) => {
                if declared.len() != m {
                    return Err(GroupoidError::DanglingReference(
                        "inverse map must cover every arrow".into(),
                    ));
                }
                for (g, &h) in declared.iter().enumerate() {
                    if h >= m || !self.is_inverse_pair(g, h, identity) {
                        return Err(GroupoidError::BadInverse(self.label(g)));
                    }
                }
                Ok(declared.clone())
            }
            None => (0..m)
                .map(|g| {
                    self.fibers[self.raw.target[g]]
                        .iter()
                        .map(|h| h.0)
                        .find(|h| self.is_inverse_pair(g, *h, identity))
                        .ok_or_else(|| GroupoidError::BadInverse(self.label(g)))
                })
                .collect(),
        }
    }
}

fn check_unique(labels: &[String]) -> Result<(), GroupoidError> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(GroupoidError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The pair groupoid on {0, 1} with arrows e0, e1, a = (0,1), b = (1,0).
    pub(crate) fn p2_raw() -> RawGroupoid {
        RawGroupoid {
            object_labels: vec!["0".into(), "1".into()],
            arrow_labels: vec!["e0".into(), "e1".into(), "a".into(), "b".into()],
            source: vec![0, 1, 0, 1],
            target: vec![0, 1, 1, 0],
            compose: vec![
                (0, 0, 0),
                (0, 2, 2),
                (1, 1, 1),
                (1, 3, 3),
                (2, 1, 2),
                (2, 3, 0),
                (3, 0, 3),
                (3, 2, 1),
            ],
            inverse: None,
            identity: None,
        }
    }

    fn p2() -> FiniteGroupoid {
        FiniteGroupoid::from_raw(p2_raw()).unwrap()
    }

    const E0: ArrowId = ArrowId(0);
    const E1: ArrowId = ArrowId(1);
    const A: ArrowId = ArrowId(2);
    const B: ArrowId = ArrowId(3);

    #[test]
    fn p2_validates_with_derived_structure() {
        let g = p2();
        assert_eq!(g.identity_at(ObjectId(0)), E0);
        assert_eq!(g.identity_at(ObjectId(1)), E1);
        assert_eq!(g.inverse_of(A), B);
        assert_eq!(g.inverse_of(E0), E0);
    }

    #[test]
    fn composition_in_diagrammatic_order() {
        let g = p2();
        assert_eq!(g.compose(A, B), Some(E0));
        assert_eq!(g.compose(E0, A), Some(A));
        assert_eq!(g.compose(A, A), None);
        assert_eq!(
            g.try_compose(A, A),
            Err(GroupoidError::NotComposable {
                g: "a".into(),
                h: "a".into()
            })
        );
    }

    #[test]
    fn declared_inverse_must_compose_to_identities() {
        let mut raw = p2_raw();
        raw.inverse = Some(vec![0, 1, 2, 3]);
        assert_eq!(
            FiniteGroupoid::from_raw(raw),
            Err(GroupoidError::BadInverse("a".into()))
        );
    }

    #[test]
    fn trivial_groupoid() {
        let raw = RawGroupoid {
            object_labels: vec!["*".into()],
            arrow_labels: vec!["e".into()],
            source: vec![0],
            target: vec![0],
            compose: vec![(0, 0, 0)],
            ..Default::default()
        };
        let g = FiniteGroupoid::from_raw(raw).unwrap();
        assert_eq!(g.arrow_count(), 1);
        assert!(g.is_transitive());
    }

    #[test]
    fn table_defects_are_reported() {
        let mut raw = p2_raw();
        raw.compose.push((2, 2, 2));
        assert_eq!(
            FiniteGroupoid::from_raw(raw),
            Err(GroupoidError::BadCompositionDomain {
                f: "a".into(),
                g: "a".into()
            })
        );

        let mut raw = p2_raw();
        raw.compose.retain(|t| *t != (3, 2, 1));
        assert!(matches!(
            FiniteGroupoid::from_raw(raw),
            Err(GroupoidError::IncompleteTable { .. })
        ));

        let mut raw = p2_raw();
        raw.compose.push((2, 3, 9));
        assert!(matches!(
            FiniteGroupoid::from_raw(raw),
            Err(GroupoidError::DanglingReference(_))
        ));

        let mut raw = p2_raw();
        raw.compose[0] = (0, 0, 2);
        assert!(matches!(
            FiniteGroupoid::from_raw(raw),
            Err(GroupoidError::CompositionEndpoints { .. })
        ));
    }

    #[test]
    fn missing_identity_detected() {
        // one object, two loops, composition x*y = x for all: no two-sided unit
        let raw = RawGroupoid {
            object_labels: vec!["*".into()],
            arrow_labels: vec!["x".into(), "y".into()],
            source: vec![0, 0],
            target: vec![0, 0],
            compose: vec![(0, 0, 0), (0, 1, 0), (1, 0, 1), (1, 1, 1)],
            ..Default::default()
        };
        assert_eq!(
            FiniteGroupoid::from_raw(raw),
            Err(GroupoidError::MissingIdentity("*".into()))
        );
    }

    #[test]
    fn non_associative_table_detected() {
        // a loop table on {e, x, y} with a unit but x(xy) != (xx)y
        let mut compose = Vec::new();
        let table = [[0, 1, 2], [1, 0, 0], [2, 0, 0]];
        for (i, row) in table.iter().enumerate() {
            for (j, &k) in row.iter().enumerate() {
                compose.push((i, j, k));
            }
        }
        // x(xy) = x*0 = x, (xx)y = 0*y = y
        let raw = RawGroupoid {
            object_labels: vec!["*".into()],
            arrow_labels: vec!["e".into(), "x".into(), "y".into()],
            source: vec![0; 3],
            target: vec![0; 3],
            compose,
            ..Default::default()
        };
        assert!(matches!(
            FiniteGroupoid::from_raw(raw),
            Err(GroupoidError::NotAssociative { .. })
        ));
    }

    #[test]
    fn caps_enforced() {
        let limits = Limits {
            max_objects: 64,
            max_arrows: 3,
        };
        assert_eq!(
            FiniteGroupoid::from_raw_with_limits(p2_raw(), limits),
            Err(GroupoidError::TooManyArrows { count: 4, cap: 3 })
        );
        let empty = RawGroupoid::default();
        assert_eq!(FiniteGroupoid::from_raw(empty), Err(GroupoidError::EmptyBase));
    }

    #[test]
    fn slices_and_isotropy() {
        let g = p2();
        let all = [ObjectId(0), ObjectId(1)];
        assert_eq!(g.slice(&[ObjectId(0)], &all).unwrap(), vec![E0, A]);
        assert_eq!(g.slice(&[ObjectId(0)], &[ObjectId(0)]).unwrap(), vec![E0]);
        assert!(g.slice(&[], &all).unwrap().is_empty());
        assert_eq!(g.isotropy(ObjectId(1)), vec![E1]);
        assert!(matches!(
            g.slice(&[ObjectId(7)], &all),
            Err(GroupoidError::UnknownObject(_))
        ));
    }

    #[test]
    fn restriction_to_one_object_is_trivial() {
        let g = p2();
        let sub = g.restrict(&[ObjectId(0)]).unwrap();
        assert_eq!(sub.groupoid.arrow_count(), 1);
        assert_eq!(sub.arrows, vec![E0]);
        assert_eq!(g.restrict(&[]).unwrap_err(), GroupoidError::EmptyBase);
    }

    #[test]
    fn raw_round_trip() {
        let g = p2();
        assert_eq!(FiniteGroupoid::from_raw(g.to_raw()).unwrap(), g);
    }
}
