//! Bihomomorphisms `B: G x G -> F` (F = R or C), the semi-inner product
//! conditions, and the relations and scalar sets derived from `B`.
//!
//! `B` is always fully tabulated. All conditions are checked by exhaustive
//! scans; witnesses are the first failing arrows in index order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::congruence::{
    congruence_from_hom, profile_of, validate_affine_congruence, CongruenceProfile, CongruenceReport,
    Partition,
};
use crate::groupoid::{ArrowId, FiniteGroupoid, ObjectId};
use crate::hom::{product_hom, GroupoidHom};
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// Which argument of `B` lost additivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    /// `B(gh, k) != B(g, k) + B(h, k)`
    First,
    /// `B(k, gh) != B(k, g) + B(k, h)`
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BihomViolation {
    pub slot: Slot,
    pub g: ArrowId,
    pub h: ArrowId,
    pub k: ArrowId,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SipError {
    #[error("table has {got} entries, expected {expected}")]
    TableSize { got: usize, expected: usize },
    #[error("real table has a non-real entry at ({0}, {1})")]
    NotReal(ArrowId, ArrowId),
    #[error("not a bihomomorphism: {0:?}")]
    NotBihom(BihomViolation),
    #[error("the family of homomorphisms is empty")]
    EmptyFamily,
    #[error("homomorphism {0} is not scalar valued")]
    NotScalar(usize),
    #[error("homomorphisms are defined on different groupoids")]
    MixedGroupoids,
    #[error("every homomorphism vanishes on the non-identity arrow {0}")]
    NotSeparating(ArrowId),
    #[error("construction did not give a semi-inner product: {0:?}")]
    NotSip(SipReport),
    #[error("scalar set meets the source fiber of {p} in {k1} and {k2}")]
    FiberNotSimple { p: ObjectId, k1: ArrowId, k2: ArrowId },
}

/// A validated bihomomorphism.
#[derive(Debug, Clone)]
pub struct Bihom<'g> {
    groupoid: &'g FiniteGroupoid,
    field: Field,
    table: Vec<GaussianRational>,
    thetas: Vec<GroupoidHom<'g>>,
}

/// Checks additivity of a raw table in each argument.
///
/// Vanishing on identities follows from additivity (`B(e,k) = 2 B(e,k)`).
pub fn validate_bihom<'g>(
    groupoid: &'g FiniteGroupoid,
    field: Field,
    table: Vec<GaussianRational>,
) -> Result<Bihom<'g>, SipError> {
    let n = groupoid.arrow_count();
    if table.len() != n * n {
        return Err(SipError::TableSize {
            got: table.len(),
            expected: n * n,
        });
    }
    if field == Field::Real {
        if let Some(i) = table.iter().position(|z| !z.is_real()) {
            return Err(SipError::NotReal(ArrowId(i / n), ArrowId(i % n)));
        }
    }
    let at = |g: ArrowId, h: ArrowId| &table[g.0 * n + h.0];
    for slot in [Slot::First, Slot::Second] {
        for g in groupoid.arrows() {
            for &h in groupoid.composable_after(g) {
                let gh = groupoid.compose(g, h).expect("composable");
                for k in groupoid.arrows() {
                    let ok = match slot {
                        Slot::First => *at(gh, k) == at(g, k).clone() + at(h, k),
                        Slot::Second => *at(k, gh) == at(k, g).clone() + at(k, h),
                    };
                    if !ok {
                        return Err(SipError::NotBihom(BihomViolation { slot, g, h, k }));
                    }
                }
            }
        }
    }
    Ok(Bihom {
        groupoid,
        field,
        table,
        thetas: Vec::new(),
    })
}

/// `B(g, h) = Σ θ_i(g) conj(θ_i(h))` for a family that separates identities.
pub fn sip_from_thetas<'g>(thetas: Vec<GroupoidHom<'g>>) -> Result<Bihom<'g>, SipError> {
    let groupoid = thetas.first().ok_or(SipError::EmptyFamily)?.groupoid();
    if thetas.iter().any(|t| !std::ptr::eq(t.groupoid(), groupoid)) {
        return Err(SipError::MixedGroupoids);
    }
    if let Some(i) = thetas.iter().position(|t| !t.target().is_scalar()) {
        return Err(SipError::NotScalar(i));
    }
    if let Some(g) = groupoid
        .arrows()
        .find(|g| !groupoid.is_identity(*g) && thetas.iter().all(|t| t.scalar(*g).is_zero()))
    {
        return Err(SipError::NotSeparating(g));
    }
    let field = if thetas.iter().all(|t| t.target().is_real()) {
        Field::Real
    } else {
        Field::Complex
    };
    let conj: Vec<Vec<GaussianRational>> = thetas
        .iter()
        .map(|t| groupoid.arrows().map(|h| t.scalar(h).conj()).collect())
        .collect();
    let mut table = Vec::with_capacity(groupoid.arrow_count().pow(2));
    for g in groupoid.arrows() {
        for h in groupoid.arrows() {
            table.push(
                thetas
                    .iter()
                    .zip(&conj)
                    .map(|(t, c)| t.scalar(g).clone() * &c[h.0])
                    .sum(),
            );
        }
    }
    let mut b = validate_bihom(groupoid, field, table)?;
    let report = b.sip_report();
    if !report.is_sip() {
        return Err(SipError::NotSip(report));
    }
    b.thetas = thetas;
    Ok(b)
}

/// Per-condition results; each field holds the first failing arrows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SipReport {
    /// `B(g, h) != conj(B(h, g))`
    pub conjugate_symmetry: Option<(ArrowId, ArrowId)>,
    /// A non-identity `g` with real `B(g, g) <= 0`.
    pub positive_definiteness: Option<ArrowId>,
    /// `|B(g, h)|^2 > B(g, g) B(h, h)`
    pub cauchy_schwarz: Option<(ArrowId, ArrowId)>,
}

impl SipReport {
    pub fn is_sip(&self) -> bool {
        self.conjugate_symmetry.is_none()
            && self.positive_definiteness.is_none()
            && self.cauchy_schwarz.is_none()
    }
}

/// The three relations between two arrows induced by `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BRelation {
    /// Equal rows.
    pub congruent: bool,
    /// Negated rows.
    pub opposite: bool,
    /// `B(g1, g2) = 0`.
    pub orthogonal: bool,
}

/// The `↑↑` partition with its verified properties.
#[derive(Debug, Clone)]
pub struct BPartition {
    pub partition: Partition,
    pub axioms: CongruenceReport,
    pub profile: CongruenceProfile,
    /// Complete and `B` is a semi-inner product.
    pub b_affine: bool,
    /// For θ-derived `B` whose family has Kronecker arrows `θ_i(h_j) = δ_ij`:
    /// whether `↑↑` equals the relation induced by the product homomorphism.
    pub theta_characterization: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitiveReport {
    NotApplicable,
    Checked {
        /// First `(g, p)` where `B(g, ·)` vanishes on `G_p` but not on `G`.
        vanishing_extension: Option<(ArrowId, ObjectId)>,
        /// First `s` whose fiber-restricted row test differs from `↑↑`.
        fiber_reduction: Option<ObjectId>,
    },
}

impl TransitiveReport {
    pub fn passed(&self) -> bool {
        matches!(
            self,
            TransitiveReport::Checked {
                vanishing_extension: None,
                fiber_reduction: None
            }
        )
    }
}

impl<'g> Bihom<'g> {
    pub fn groupoid(&self) -> &'g FiniteGroupoid {
        self.groupoid
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn value(&self, g: ArrowId, h: ArrowId) -> &GaussianRational {
        &self.table[g.0 * self.groupoid.arrow_count() + h.0]
    }

    pub fn row(&self, g: ArrowId) -> &[GaussianRational] {
        let n = self.groupoid.arrow_count();
        &self.table[g.0 * n..(g.0 + 1) * n]
    }

    pub fn table(&self) -> &[GaussianRational] {
        &self.table
    }

    /// The generating homomorphisms when built by [`sip_from_thetas`].
    pub fn thetas(&self) -> &[GroupoidHom<'g>] {
        &self.thetas
    }

    pub fn sip_report(&self) -> SipReport {
        let g = self.groupoid;
        let conjugate_symmetry = g
            .arrows()
            .flat_map(|x| g.arrows().map(move |y| (x, y)))
            .find(|&(x, y)| *self.value(x, y) != self.value(y, x).conj());
        // a non-real diagonal already fails conjugate symmetry
        let positive_definiteness = g.arrows().find(|&x| {
            let d = self.value(x, x);
            !g.is_identity(x) && d.is_real() && !d.re.is_positive()
        });
        let cauchy_schwarz = g
            .arrows()
            .flat_map(|x| g.arrows().map(move |y| (x, y)))
            .find(|&(x, y)| {
                let bound = self.value(x, x).re.clone() * &self.value(y, y).re;
                self.value(x, y).abs_sq().value() > &bound
            });
        SipReport {
            conjugate_symmetry,
            positive_definiteness,
            cauchy_schwarz,
        }
    }

    pub fn relate(&self, g1: ArrowId, g2: ArrowId) -> BRelation {
        let (r1, r2) = (self.row(g1), self.row(g2));
        BRelation {
            congruent: r1 == r2,
            opposite: r1.iter().zip(r2).all(|(x, y)| *x == -y),
            orthogonal: self.value(g1, g2).is_zero(),
        }
    }

    /// Arrows grouped by equal rows.
    pub fn congruence_partition(&self) -> Partition {
        Partition::from_keys(self.groupoid.arrows().map(|g| self.row(g)))
    }

    pub fn b_partition(&self) -> BPartition {
        let partition = self.congruence_partition();
        let axioms = validate_affine_congruence(self.groupoid, &partition).expect("sizes agree");
        let profile = profile_of(self.groupoid, &partition);
        let b_affine = profile.complete() && self.sip_report().is_sip();
        let theta_characterization = if self.has_kronecker_arrows() {
            let theta = product_hom(&self.thetas).expect("same groupoid, nonempty");
            Some(congruence_from_hom(&theta) == partition)
        } else {
            None
        };
        BPartition {
            partition,
            axioms,
            profile,
            b_affine,
            theta_characterization,
        }
    }

    /// True when every `θ_j` has an arrow `h_j` with `θ_i(h_j) = δ_ij`.
    pub fn has_kronecker_arrows(&self) -> bool {
        let (zero, one) = (GaussianRational::zero(), GaussianRational::one());
        !self.thetas.is_empty()
            && (0..self.thetas.len()).all(|j| {
                self.groupoid.arrows().any(|h| {
                    self.thetas
                        .iter()
                        .enumerate()
                        .all(|(i, t)| *t.scalar(h) == if i == j { one.clone() } else { zero.clone() })
                })
            })
    }

    /// `c • g = {k : B(k, h) = c B(g, h) for all h}`, optionally cut down to
    /// the source fiber of `at`.
    ///
    /// Errors if the set meets some source fiber twice, which cannot happen
    /// for a semi-inner product.
    pub fn scalar_set(
        &self,
        c: &GaussianRational,
        g: ArrowId,
        at: Option<ObjectId>,
    ) -> Result<Vec<ArrowId>, SipError> {
        let wanted: Vec<GaussianRational> = self.row(g).iter().map(|x| c.clone() * x).collect();
        let members: Vec<ArrowId> = self
            .groupoid
            .arrows()
            .filter(|k| self.row(*k) == wanted.as_slice())
            .collect();
        let mut seen: Vec<Option<ArrowId>> = vec![None; self.groupoid.object_count()];
        for &k in &members {
            let p = self.groupoid.source(k);
            if let Some(k1) = seen[p.0] {
                return Err(SipError::FiberNotSimple { p, k1, k2: k });
            }
            seen[p.0] = Some(k);
        }
        Ok(match at {
            Some(p) => members
                .into_iter()
                .filter(|k| self.groupoid.source(*k) == p)
                .collect(),
            None => members,
        })
    }

    /// First `(g, k)` with `k ∈ c • h` and `B(g, k) != conj(c) B(g, h)`.
    pub fn conjugate_scalar_witness(
        &self,
        c: &GaussianRational,
        h: ArrowId,
    ) -> Result<Option<(ArrowId, ArrowId)>, SipError> {
        let members = self.scalar_set(c, h, None)?;
        let cbar = c.conj();
        Ok(self.groupoid.arrows().find_map(|g| {
            let expected = cbar.clone() * self.value(g, h);
            members
                .iter()
                .find(|k| *self.value(g, **k) != expected)
                .map(|k| (g, *k))
        }))
    }

    /// First `(g1, g2, g3)` with `g1 ↑↓ g2`, `g2 ↑↓ g3` but not `g1 ↑↑ g3`.
    pub fn opposite_composition_witness(&self) -> Option<(ArrowId, ArrowId, ArrowId)> {
        let g = self.groupoid;
        let opposites: Vec<Vec<ArrowId>> = g
            .arrows()
            .map(|x| g.arrows().filter(|y| self.relate(x, *y).opposite).collect())
            .collect();
        for g1 in g.arrows() {
            for &g2 in &opposites[g1.0] {
                for &g3 in &opposites[g2.0] {
                    if !self.relate(g1, g3).congruent {
                        return Some((g1, g2, g3));
                    }
                }
            }
        }
        None
    }

    /// Exhaustive check of the two statements that hold on transitive
    /// groupoids: a row vanishing on one source fiber vanishes everywhere,
    /// and row equality may be tested on a single source fiber.
    pub fn transitive_props_check(&self) -> TransitiveReport {
        let g = self.groupoid;
        if !g.is_transitive() {
            return TransitiveReport::NotApplicable;
        }
        let vanishing_extension = g
            .arrows()
            .flat_map(|x| g.objects().map(move |p| (x, p)))
            .find(|&(x, p)| {
                let on_fiber = g.source_fiber(p).iter().all(|h| self.value(x, *h).is_zero());
                on_fiber && !self.row(x).iter().all(GaussianRational::is_zero)
            });
        let global = self.congruence_partition();
        let fiber_reduction = g.objects().find(|&s| {
            let fiber = g.source_fiber(s);
            let local = Partition::from_keys(
                g.arrows()
                    .map(|x| fiber.iter().map(|h| self.value(x, *h)).collect::<Vec<_>>()),
            );
            local != global
        });
        TransitiveReport::Checked {
            vanishing_extension,
            fiber_reduction,
        }
    }
}
