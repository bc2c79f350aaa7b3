//! Groupoid norms stored as exact squares.
//!
//! A groupoid norm vanishes exactly on identities, is subadditive over
//! composition and invariant under inversion. Everything here is quadratic
//! in the norm except the triangle inequalities, which go through
//! [`sqrt_leq`].

use thiserror::Error;

use crate::congruence::AffineCongruence;
use crate::groupoid::{ArrowId, FiniteGroupoid};
use crate::scalar::{sqrt_leq, GaussianRational, Rational, SqValue};
use crate::sip::{validate_bihom, Bihom, BihomViolation, Field, SipError, SipReport, Slot};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormError {
    #[error("norm table has {got} entries for {expected} arrows")]
    Size { got: usize, expected: usize },
    #[error("bihomomorphism is not a semi-inner product")]
    NotSip(SipReport),
    #[error("partition and norm live on different groupoids")]
    MixedGroupoids,
    #[error("norm is not consistent with the congruence")]
    NotConsistent(ConsistencyReport),
    #[error("no witness quadruple for ({0}, {1})")]
    NoWitness(ArrowId, ArrowId),
    #[error("witnesses for ({g}, {h}) give different values {values:?}")]
    WitnessDisagreement {
        g: ArrowId,
        h: ArrowId,
        values: Vec<Rational>,
    },
    #[error("parallelogram identity fails for ({g}, {h})")]
    ParallelogramFails { g: ArrowId, h: ArrowId },
    #[error("polarized form is not a bihomomorphism: {0:?}")]
    ResultNotBihom(BihomViolation),
    #[error("polarized form is not a semi-inner product")]
    ResultNotSip(PolarizedSipReport),
    #[error(transparent)]
    Sip(#[from] SipError),
}

/// Squared norms `‖g‖²`, one per arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormTable<'g> {
    groupoid: &'g FiniteGroupoid,
    sq: Vec<SqValue>,
}

/// Results of the norm axioms plus the reverse triangle inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormReport {
    /// First `g` where `‖g‖ = 0` and "g is an identity" disagree.
    pub identity_vanishing: Option<ArrowId>,
    /// First composable `(g, h)` with `‖gh‖ > ‖g‖ + ‖h‖`.
    pub triangle: Option<(ArrowId, ArrowId)>,
    /// First `g` with `‖g⁻¹‖ != ‖g‖`.
    pub inverse_symmetry: Option<ArrowId>,
    /// First `(g, h)` with a common source and `|‖h‖ - ‖g‖| > ‖g⁻¹h‖`.
    pub reverse_triangle: Option<(ArrowId, ArrowId)>,
}

impl NormReport {
    pub fn passed(&self) -> bool {
        self.identity_vanishing.is_none()
            && self.triangle.is_none()
            && self.inverse_symmetry.is_none()
            && self.reverse_triangle.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Doubling {
    /// Every composable pair of class-mates doubles; `instances` counts the
    /// pairs that are not identities.
    Holds { instances: usize },
    /// Only identity arrows are composable with their class-mates.
    Vacuous,
    /// `‖g1 g2‖ != 2 ‖g1‖`.
    Fails(ArrowId, ArrowId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConsistencyReport {
    /// First related pair with different norms.
    pub constant_on_classes: Option<(ArrowId, ArrowId)>,
    pub doubling: Doubling,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.constant_on_classes.is_none() && !matches!(self.doubling, Doubling::Fails(..))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParallelogramStatus {
    Holds,
    Fails {
        g1: ArrowId,
        g2: ArrowId,
        h1: ArrowId,
        h2: ArrowId,
    },
    NoWitness,
}

/// Outcome of the parallelogram identity for one pair `(g, h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Parallelogram {
    pub status: ParallelogramStatus,
    /// Number of quadruples `(g1, g2, h1, h2)` with `g1h1`, `g2⁻¹h2` defined.
    pub witnesses_checked: usize,
}

impl<'g> NormTable<'g> {
    pub fn new(groupoid: &'g FiniteGroupoid, sq: Vec<SqValue>) -> Result<Self, NormError> {
        if sq.len() != groupoid.arrow_count() {
            return Err(NormError::Size {
                got: sq.len(),
                expected: groupoid.arrow_count(),
            });
        }
        Ok(NormTable { groupoid, sq })
    }

    pub fn groupoid(&self) -> &'g FiniteGroupoid {
        self.groupoid
    }

    pub fn sq(&self, g: ArrowId) -> &SqValue {
        &self.sq[g.0]
    }

    pub fn values(&self) -> &[SqValue] {
        &self.sq
    }

    pub fn validate(&self) -> NormReport {
        let g = self.groupoid;
        let identity_vanishing = g.arrows().find(|&x| self.sq(x).is_zero() != g.is_identity(x));
        let triangle = g
            .arrows()
            .flat_map(|x| g.composable_after(x).iter().map(move |y| (x, *y)))
            .find(|&(x, y)| {
                let xy = g.compose(x, y).expect("composable");
                !sqrt_leq(self.sq(xy), self.sq(x), self.sq(y))
            });
        let inverse_symmetry = g.arrows().find(|&x| self.sq(g.inverse_of(x)) != self.sq(x));
        let reverse_triangle = g
            .arrows()
            .flat_map(|x| {
                g.source_fiber(g.source(x))
                    .iter()
                    .map(move |y| (x, *y))
            })
            .find(|&(x, y)| {
                let gap = self.sq(g.compose(g.inverse_of(x), y).expect("common source"));
                !(sqrt_leq(self.sq(y), self.sq(x), gap) && sqrt_leq(self.sq(x), self.sq(y), gap))
            });
        NormReport {
            identity_vanishing,
            triangle,
            inverse_symmetry,
            reverse_triangle,
        }
    }

    /// Checks `g1 λ g2 ⇒ ‖g1‖ = ‖g2‖` and `‖g1g2‖ = 2‖g1‖` for composable
    /// class-mates, the latter as `‖g1g2‖² = 4‖g1‖²`.
    pub fn consistency(&self, lambda: &AffineCongruence<'_>) -> Result<ConsistencyReport, NormError> {
        let g = self.groupoid;
        if !std::ptr::eq(lambda.groupoid(), g) {
            return Err(NormError::MixedGroupoids);
        }
        let partition = lambda.partition();
        let constant_on_classes = g
            .arrows()
            .flat_map(|x| partition.class_members(x).iter().map(move |y| (x, *y)))
            .find(|&(x, y)| self.sq(x) != self.sq(y));
        let four = SqValue::from_integer(4);
        let mut instances = 0;
        let mut doubling = None;
        'scan: for x in g.arrows() {
            for &y in partition.class_members(x) {
                if let Some(xy) = g.compose(x, y) {
                    if *self.sq(xy) != self.sq(x).scaled(&four) {
                        doubling = Some(Doubling::Fails(x, y));
                        break 'scan;
                    }
                    if !g.is_identity(x) {
                        instances += 1;
                    }
                }
            }
        }
        let doubling = doubling.unwrap_or(if instances == 0 {
            Doubling::Vacuous
        } else {
            Doubling::Holds { instances }
        });
        Ok(ConsistencyReport {
            constant_on_classes,
            doubling,
        })
    }

    /// Pairs this norm with a congruence it is consistent with.
    pub fn consistent_with<'a>(
        &'a self,
        lambda: &'a AffineCongruence<'g>,
    ) -> Result<ConsistentNorm<'a, 'g>, NormError> {
        let report = self.consistency(lambda)?;
        if !report.is_consistent() {
            return Err(NormError::NotConsistent(report));
        }
        Ok(ConsistentNorm { norm: self, lambda })
    }
}

/// `‖g‖² = B(g, g)` for a semi-inner product `B`.
pub fn norm_from_sip<'g>(b: &Bihom<'g>) -> Result<NormTable<'g>, NormError> {
    let report = b.sip_report();
    if !report.is_sip() {
        return Err(NormError::NotSip(report));
    }
    let g = b.groupoid();
    let sq = g
        .arrows()
        .map(|x| SqValue::new(b.value(x, x).re.clone()).expect("positive definite"))
        .collect();
    NormTable::new(g, sq)
}

/// A norm known to be consistent with an affine congruence.
#[derive(Debug, Clone, Copy)]
pub struct ConsistentNorm<'a, 'g> {
    norm: &'a NormTable<'g>,
    lambda: &'a AffineCongruence<'g>,
}

struct Witnesses {
    // (g1, h1) with g1 h1 defined, and ‖g1h1‖²
    sums: Vec<(ArrowId, ArrowId, SqValue)>,
    // (g2, h2) with g2⁻¹ h2 defined, and ‖g2⁻¹h2‖²
    differences: Vec<(ArrowId, ArrowId, SqValue)>,
}

fn all_equal<'x>(mut values: impl Iterator<Item = &'x SqValue>) -> Option<&'x SqValue> {
    let first = values.next()?;
    values.all(|v| v == first).then_some(first)
}

impl<'a, 'g> ConsistentNorm<'a, 'g> {
    pub fn norm(&self) -> &'a NormTable<'g> {
        self.norm
    }

    pub fn lambda(&self) -> &'a AffineCongruence<'g> {
        self.lambda
    }

    fn witnesses(&self, g: ArrowId, h: ArrowId) -> Witnesses {
        let grp = self.norm.groupoid;
        let class = |x| self.lambda.partition().class_members(x);
        let mut sums = Vec::new();
        let mut differences = Vec::new();
        for &x in class(g) {
            for &y in class(h) {
                if let Some(xy) = grp.compose(x, y) {
                    sums.push((x, y, self.norm.sq(xy).clone()));
                }
                if let Some(d) = grp.compose(grp.inverse_of(x), y) {
                    differences.push((x, y, self.norm.sq(d).clone()));
                }
            }
        }
        Witnesses { sums, differences }
    }

    /// Checks `‖g1h1‖² + ‖g2⁻¹h2‖² = 2‖g‖² + 2‖h‖²` on every witness
    /// quadruple; holds only if at least one witness exists and all agree.
    pub fn parallelogram(&self, g: ArrowId, h: ArrowId) -> Parallelogram {
        let w = self.witnesses(g, h);
        let witnesses_checked = w.sums.len() * w.differences.len();
        if witnesses_checked == 0 {
            return Parallelogram {
                status: ParallelogramStatus::NoWitness,
                witnesses_checked,
            };
        }
        let target = (self.norm.sq(g).value() + self.norm.sq(h).value()) * Rational::from(2);
        let uniform = match (
            all_equal(w.sums.iter().map(|s| &s.2)),
            all_equal(w.differences.iter().map(|d| &d.2)),
        ) {
            (Some(s), Some(d)) => s.value() + d.value() == target,
            _ => false,
        };
        if uniform {
            return Parallelogram {
                status: ParallelogramStatus::Holds,
                witnesses_checked,
            };
        }
        // first failing quadruple in (g1, g2, h1, h2) order
        let mut first = None;
        'scan: for (g1, h1, s) in &w.sums {
            for (g2, h2, d) in &w.differences {
                if s.value() + d.value() != target {
                    let key = (*g1, *g2, *h1, *h2);
                    if first.is_none_or(|f| key < f) {
                        first = Some(key);
                    }
                    if w.sums.len() == 1 {
                        break 'scan;
                    }
                }
            }
        }
        let (g1, g2, h1, h2) = first.expect("non-uniform witnesses include a failure");
        Parallelogram {
            status: ParallelogramStatus::Fails { g1, g2, h1, h2 },
            witnesses_checked,
        }
    }

    /// `¼(‖g1h1‖² - ‖g2⁻¹h2‖²)`, or `None` when no witness exists.
    pub fn polarize_pair(&self, g: ArrowId, h: ArrowId) -> Result<Option<Rational>, NormError> {
        let w = self.witnesses(g, h);
        if w.sums.is_empty() || w.differences.is_empty() {
            return Ok(None);
        }
        let quarter = Rational::new(1, 4);
        match (
            all_equal(w.sums.iter().map(|s| &s.2)),
            all_equal(w.differences.iter().map(|d| &d.2)),
        ) {
            (Some(s), Some(d)) => Ok(Some((s.value() - d.value()) * &quarter)),
            _ => {
                let mut values: Vec<Rational> = w
                    .sums
                    .iter()
                    .flat_map(|s| {
                        w.differences
                            .iter()
                            .map(|d| (s.2.value() - d.2.value()) * &quarter)
                    })
                    .collect();
                values.sort();
                values.dedup();
                Err(NormError::WitnessDisagreement { g, h, values })
            }
        }
    }

    /// Polarizes every pair that admits a witness.
    pub fn polarize_partial(&self) -> Result<PolarizedForm<'g>, NormError> {
        let grp = self.norm.groupoid;
        let mut values = Vec::with_capacity(grp.arrow_count().pow(2));
        for g in grp.arrows() {
            for h in grp.arrows() {
                let value = self.polarize_pair(g, h)?;
                if value.is_some()
                    && matches!(self.parallelogram(g, h).status, ParallelogramStatus::Fails { .. })
                {
                    return Err(NormError::ParallelogramFails { g, h });
                }
                values.push(value);
            }
        }
        Ok(PolarizedForm {
            groupoid: grp,
            sq: self.norm.sq.clone(),
            values,
        })
    }

    /// The polarized real semi-inner product; every pair needs a witness.
    pub fn polarize(&self) -> Result<Bihom<'g>, NormError> {
        self.polarize_partial()?.into_bihom()
    }
}

/// Checks `λ`-consistency, then the parallelogram identity for `(g, h)`.
pub fn parallelogram_check(
    norm: &NormTable<'_>,
    lambda: &AffineCongruence<'_>,
    g: ArrowId,
    h: ArrowId,
) -> Result<Parallelogram, NormError> {
    if !std::ptr::eq(norm.groupoid(), lambda.groupoid()) {
        return Err(NormError::MixedGroupoids);
    }
    let report = norm.consistency(lambda)?;
    if !report.is_consistent() {
        return Err(NormError::NotConsistent(report));
    }
    Ok(ConsistentNorm { norm, lambda }.parallelogram(g, h))
}

/// Strict polarization of a norm against a congruence.
pub fn polarize<'g>(norm: &NormTable<'g>, lambda: &AffineCongruence<'g>) -> Result<Bihom<'g>, NormError> {
    norm.consistent_with(lambda)?.polarize()
}

/// A real form defined on the pairs that admit witnesses.
#[derive(Debug, Clone)]
pub struct PolarizedForm<'g> {
    groupoid: &'g FiniteGroupoid,
    sq: Vec<SqValue>,
    values: Vec<Option<Rational>>,
}

/// Semi-inner product conditions restricted to defined entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolarizedSipReport {
    /// `B(g, h) != B(h, g)` with both defined.
    pub symmetry: Option<(ArrowId, ArrowId)>,
    /// `B(g, g) != ‖g‖²`.
    pub diagonal: Option<ArrowId>,
    /// Non-identity `g` with `B(g, g) <= 0`.
    pub positive_definiteness: Option<ArrowId>,
    /// `B(g, h) > ‖g‖‖h‖` or `-B(g, h) > ‖g‖‖h‖`.
    pub cauchy_schwarz: Option<(ArrowId, ArrowId)>,
}

impl PolarizedSipReport {
    pub fn is_sip(&self) -> bool {
        self.symmetry.is_none()
            && self.diagonal.is_none()
            && self.positive_definiteness.is_none()
            && self.cauchy_schwarz.is_none()
    }
}

/// `x <= ‖g‖‖h‖` for the signed real `x`, decided on squares.
fn bounded_by_product(x: &Rational, sq_g: &SqValue, sq_h: &SqValue) -> bool {
    !x.is_positive() || x.square() <= sq_g.value() * sq_h.value()
}

impl<'g> PolarizedForm<'g> {
    pub fn groupoid(&self) -> &'g FiniteGroupoid {
        self.groupoid
    }

    pub fn value(&self, g: ArrowId, h: ArrowId) -> Option<&Rational> {
        self.values[g.0 * self.groupoid.arrow_count() + h.0].as_ref()
    }

    /// `(defined pairs, all pairs)`.
    pub fn coverage(&self) -> (usize, usize) {
        (self.values.iter().filter(|v| v.is_some()).count(), self.values.len())
    }

    pub fn first_missing(&self) -> Option<(ArrowId, ArrowId)> {
        let n = self.groupoid.arrow_count();
        self.values
            .iter()
            .position(Option::is_none)
            .map(|i| (ArrowId(i / n), ArrowId(i % n)))
    }

    fn defined_pairs(&self) -> impl Iterator<Item = (ArrowId, ArrowId, &Rational)> + '_ {
        let n = self.groupoid.arrow_count();
        self.values
            .iter()
            .enumerate()
            .filter_map(move |(i, v)| v.as_ref().map(|v| (ArrowId(i / n), ArrowId(i % n), v)))
    }

    pub fn sip_report(&self) -> PolarizedSipReport {
        let grp = self.groupoid;
        let sq = |g: ArrowId| &self.sq[g.0];
        let symmetry = self
            .defined_pairs()
            .find(|(g, h, v)| self.value(*h, *g).is_some_and(|w| w != *v))
            .map(|(g, h, _)| (g, h));
        let diagonal = grp
            .arrows()
            .find(|g| self.value(*g, *g).is_some_and(|v| v != sq(*g).value()));
        let positive_definiteness = grp.arrows().find(|g| {
            !grp.is_identity(*g) && self.value(*g, *g).is_some_and(|v| !v.is_positive())
        });
        let cauchy_schwarz = self
            .defined_pairs()
            .find(|(g, h, v)| {
                !bounded_by_product(v, sq(*g), sq(*h)) || !bounded_by_product(&-*v, sq(*g), sq(*h))
            })
            .map(|(g, h, _)| (g, h));
        PolarizedSipReport {
            symmetry,
            diagonal,
            positive_definiteness,
            cauchy_schwarz,
        }
    }

    /// Additivity in each argument wherever all three entries are defined.
    pub fn additivity(&self) -> Option<BihomViolation> {
        let grp = self.groupoid;
        for slot in [Slot::First, Slot::Second] {
            for g in grp.arrows() {
                for &h in grp.composable_after(g) {
                    let gh = grp.compose(g, h).expect("composable");
                    for k in grp.arrows() {
                        let entries = match slot {
                            Slot::First => (self.value(gh, k), self.value(g, k), self.value(h, k)),
                            Slot::Second => (self.value(k, gh), self.value(k, g), self.value(k, h)),
                        };
                        if let (Some(whole), Some(x), Some(y)) = entries {
                            if *whole != x + y {
                                return Some(BihomViolation { slot, g, h, k });
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// Pairs checked by [`Self::additivity`].
    pub fn additivity_instances(&self) -> usize {
        let grp = self.groupoid;
        let mut count = 0;
        for g in grp.arrows() {
            for &h in grp.composable_after(g) {
                let gh = grp.compose(g, h).expect("composable");
                for k in grp.arrows() {
                    if self.value(gh, k).is_some() && self.value(g, k).is_some() && self.value(h, k).is_some() {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    /// A fully defined form as a validated real bihomomorphism.
    pub fn into_bihom(self) -> Result<Bihom<'g>, NormError> {
        if let Some((g, h)) = self.first_missing() {
            return Err(NormError::NoWitness(g, h));
        }
        let report = self.sip_report();
        let table = self
            .values
            .iter()
            .map(|v| GaussianRational::real(v.clone().expect("all defined")))
            .collect();
        let b = validate_bihom(self.groupoid, Field::Real, table).map_err(|e| match e {
            SipError::NotBihom(v) => NormError::ResultNotBihom(v),
            other => NormError::Sip(other),
        })?;
        if !report.is_sip() || !b.sip_report().is_sip() {
            return Err(NormError::ResultNotSip(report));
        }
        Ok(b)
    }
}

/// Members of `c • g` and the first one violating `‖h‖² = |c|²‖g‖²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleReport {
    pub members: Vec<ArrowId>,
    pub failure: Option<ArrowId>,
}

pub fn scale_check(
    norm: &NormTable<'_>,
    b: &Bihom<'_>,
    c: &GaussianRational,
    g: ArrowId,
) -> Result<ScaleReport, NormError> {
    let members = b.scalar_set(c, g, None)?;
    let expected = norm.sq(g).scaled(&c.abs_sq());
    let failure = members.iter().copied().find(|h| *norm.sq(*h) != expected);
    Ok(ScaleReport { members, failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::Partition;
    use crate::families;
    use crate::hom::GroupoidHom;
    use crate::sip::sip_from_thetas;

    fn sq(n: u32) -> SqValue {
        SqValue::from_integer(n)
    }

    fn canonical(fam: &families::Generated) -> Bihom<'_> {
        let theta = GroupoidHom::new(&fam.groupoid, fam.homs[0].clone()).unwrap();
        sip_from_thetas(vec![theta]).unwrap()
    }

    #[test]
    fn norms_from_canonical_products() {
        let p2 = families::pair(2).unwrap();
        let n = norm_from_sip(&canonical(&p2)).unwrap();
        assert_eq!(n.values(), &[sq(0), sq(0), sq(1), sq(1)]);
        assert!(n.validate().passed());

        let p5 = families::pair(5).unwrap();
        let n = norm_from_sip(&canonical(&p5)).unwrap();
        let a = p5.groupoid.arrow_by_label("(0,3)").unwrap();
        assert_eq!(n.sq(a), &sq(9));

        let c4 = families::complex_pair(2).unwrap();
        let n = norm_from_sip(&canonical(&c4)).unwrap();
        let diag = c4.groupoid.arrow_by_label("((1,1),(0,0))").unwrap();
        assert_eq!(n.sq(diag), &sq(2));
    }

    #[test]
    fn zero_bihom_has_no_norm() {
        let p2 = families::pair(2).unwrap();
        let zero = validate_bihom(&p2.groupoid, Field::Real, vec![GaussianRational::zero(); 16]).unwrap();
        assert!(matches!(norm_from_sip(&zero), Err(NormError::NotSip(_))));
    }

    #[test]
    fn identity_must_have_norm_zero() {
        let p2 = families::pair(2).unwrap();
        let n = NormTable::new(&p2.groupoid, vec![sq(1), sq(0), sq(1), sq(1)]).unwrap();
        assert_eq!(n.validate().identity_vanishing, Some(ArrowId(0)));
        assert!(NormTable::new(&p2.groupoid, vec![sq(0)]).is_err());
    }

    #[test]
    fn triangle_and_inverse_failures() {
        let p3 = families::pair(3).unwrap();
        let g = &p3.groupoid;
        let mut values = vec![sq(1); g.arrow_count()];
        for e in g.identities() {
            values[e.0] = sq(0);
        }
        // (0,2) = (0,1)(1,2) but ‖(0,2)‖ = 3 > 1 + 1
        let long = g.arrow_by_label("(0,2)").unwrap();
        values[long.0] = sq(9);
        let n = NormTable::new(g, values).unwrap();
        let report = n.validate();
        assert_eq!(report.inverse_symmetry, Some(long));
        let (x, y) = report.triangle.unwrap();
        assert_eq!(g.compose(x, y), Some(long));
    }

    #[test]
    fn reverse_triangle_boundary_on_p5() {
        let p5 = families::pair(5).unwrap();
        let g = &p5.groupoid;
        let n = norm_from_sip(&canonical(&p5)).unwrap();
        let x = g.arrow_by_label("(0,1)").unwrap();
        let y = g.arrow_by_label("(0,3)").unwrap();
        let gap = g.compose(g.inverse_of(x), y).unwrap();
        assert_eq!(g.arrow_label(gap), "(1,3)");
        // |3 - 1| = 2 = ‖(1,3)‖
        assert!(sqrt_leq(n.sq(y), n.sq(x), n.sq(gap)));
        assert!(!sqrt_leq(n.sq(y), n.sq(x), &SqValue::new(Rational::new(399, 100)).unwrap()));
    }

    fn up_up<'g>(b: &Bihom<'g>) -> AffineCongruence<'g> {
        AffineCongruence::new(b.groupoid(), b.congruence_partition()).unwrap()
    }

    #[test]
    fn consistency_examples() {
        let p5 = families::pair(5).unwrap();
        let b = canonical(&p5);
        let n = norm_from_sip(&b).unwrap();
        let report = n.consistency(&up_up(&b)).unwrap();
        assert!(report.is_consistent());
        assert!(matches!(report.doubling, Doubling::Holds { .. }));

        let p2 = families::pair(2).unwrap();
        let b = canonical(&p2);
        let n = norm_from_sip(&b).unwrap();
        let report = n.consistency(&up_up(&b)).unwrap();
        assert_eq!(report.doubling, Doubling::Vacuous);
        assert_eq!(report.constant_on_classes, None);

        let single = AffineCongruence::new(&p2.groupoid, Partition::single_class(4)).unwrap();
        let report = n.consistency(&single).unwrap();
        assert_eq!(report.constant_on_classes, Some((ArrowId(0), ArrowId(2))));
        assert!(matches!(
            parallelogram_check(&n, &single, ArrowId(0), ArrowId(0)),
            Err(NormError::NotConsistent(_))
        ));
    }

    #[test]
    fn parallelogram_examples() {
        let p5 = families::pair(5).unwrap();
        let g = &p5.groupoid;
        let b = canonical(&p5);
        let n = norm_from_sip(&b).unwrap();
        let lambda = up_up(&b);
        let x = g.arrow_by_label("(0,1)").unwrap();
        let result = parallelogram_check(&n, &lambda, x, x).unwrap();
        assert_eq!(result.status, ParallelogramStatus::Holds);
        assert!(result.witnesses_checked > 0);
        let e0 = g.identity_at(crate::groupoid::ObjectId(0));
        assert_eq!(parallelogram_check(&n, &lambda, x, e0).unwrap().status, ParallelogramStatus::Holds);

        let p2 = families::pair(2).unwrap();
        let b = canonical(&p2);
        let n = norm_from_sip(&b).unwrap();
        let lambda = up_up(&b);
        let a = ArrowId(2);
        let result = parallelogram_check(&n, &lambda, a, a).unwrap();
        assert_eq!(result.status, ParallelogramStatus::NoWitness);
        assert_eq!(result.witnesses_checked, 0);
    }

    #[test]
    fn parallelogram_failure_is_reported() {
        // consistent with the θ-classes but not quadratic at |θ| = 3
        let p5 = families::pair(5).unwrap();
        let g = &p5.groupoid;
        let b = canonical(&p5);
        let lambda = up_up(&b);
        let values: Vec<SqValue> = g
            .arrows()
            .map(|x| {
                let t = (g.source(x).0 as i64 - g.target(x).0 as i64).unsigned_abs() as u32;
                if t == 3 { sq(10) } else { sq(t * t) }
            })
            .collect();
        let n = NormTable::new(g, values).unwrap();
        assert!(n.consistency(&lambda).unwrap().is_consistent());
        let x = g.arrow_by_label("(0,1)").unwrap();
        let y = g.arrow_by_label("(1,3)").unwrap();
        let z = g.arrow_by_label("(0,2)").unwrap();
        let result = parallelogram_check(&n, &lambda, x, y).unwrap();
        assert_eq!(result.status, ParallelogramStatus::Fails { g1: x, g2: x, h1: y, h2: z });
        assert_eq!(result.witnesses_checked, 6);
        let cn = n.consistent_with(&lambda).unwrap();
        assert_eq!(cn.polarize_partial().unwrap_err(), NormError::ParallelogramFails { g: x, h: z });
    }

    #[test]
    fn polarization_round_trip_on_p5() {
        let p5 = families::pair(5).unwrap();
        let g = &p5.groupoid;
        let b = canonical(&p5);
        let n = norm_from_sip(&b).unwrap();
        let lambda = up_up(&b);
        let form = n.consistent_with(&lambda).unwrap().polarize_partial().unwrap();
        let x = g.arrow_by_label("(0,1)").unwrap();
        assert_eq!(form.value(x, x), Some(&Rational::from(1)));
        for p in g.arrows() {
            for q in g.arrows() {
                if let Some(v) = form.value(p, q) {
                    assert_eq!(GaussianRational::real(v.clone()), *b.value(p, q));
                }
            }
        }
        assert!(form.sip_report().is_sip());
        assert_eq!(form.additivity(), None);
        let (defined, total) = form.coverage();
        assert!(defined < total);
        assert!(matches!(polarize(&n, &lambda), Err(NormError::NoWitness(..))));
    }

    #[test]
    fn polarization_against_identities_vanishes() {
        let p5 = families::pair(5).unwrap();
        let g = &p5.groupoid;
        let b = canonical(&p5);
        let n = norm_from_sip(&b).unwrap();
        let lambda = up_up(&b);
        let cn = n.consistent_with(&lambda).unwrap();
        for x in g.arrows() {
            for p in g.objects() {
                assert_eq!(cn.polarize_pair(x, g.identity_at(p)).unwrap(), Some(Rational::zero()));
            }
        }
    }

    #[test]
    fn polarization_reports_first_missing_pair_on_p2() {
        let p2 = families::pair(2).unwrap();
        let b = canonical(&p2);
        let n = norm_from_sip(&b).unwrap();
        let lambda = up_up(&b);
        assert_eq!(
            polarize(&n, &lambda).unwrap_err(),
            NormError::NoWitness(ArrowId(2), ArrowId(2))
        );
    }

    #[test]
    fn strict_polarization_on_trivial_groupoid() {
        let g = families::pair(1).unwrap().groupoid;
        let n = NormTable::new(&g, vec![sq(0)]).unwrap();
        let lambda = AffineCongruence::new(&g, Partition::discrete(1)).unwrap();
        let b = polarize(&n, &lambda).unwrap();
        assert!(b.value(ArrowId(0), ArrowId(0)).is_zero());
    }

    #[test]
    fn inconsistent_norm_is_rejected() {
        let p3 = families::pair(3).unwrap();
        let g = &p3.groupoid;
        let b = canonical(&p3);
        let lambda = up_up(&b);
        // (0,1)(1,2) = (0,2) must have twice the norm of (0,1)
        let mut values = norm_from_sip(&b).unwrap().values().to_vec();
        let long = g.arrow_by_label("(0,2)").unwrap();
        values[long.0] = sq(3);
        let n = NormTable::new(g, values).unwrap();
        let report = n.consistency(&lambda).unwrap();
        assert!(matches!(report.doubling, Doubling::Fails(..)));
        assert!(matches!(n.consistent_with(&lambda), Err(NormError::NotConsistent(_))));
    }

    #[test]
    fn scaling_examples() {
        let c4 = families::complex_pair(2).unwrap();
        let g = &c4.groupoid;
        let b = canonical(&c4);
        let n = norm_from_sip(&b).unwrap();
        let one = g.arrow_by_label("((1,0),(0,0))").unwrap();
        let r = scale_check(&n, &b, &GaussianRational::i(), one).unwrap();
        assert_eq!(r.members.len(), 2);
        assert_eq!(r.failure, None);
        let r = scale_check(&n, &b, &GaussianRational::zero(), one).unwrap();
        assert_eq!(r.members, g.identities());

        let p2 = families::pair(2).unwrap();
        let b = canonical(&p2);
        let n = norm_from_sip(&b).unwrap();
        let r = scale_check(&n, &b, &GaussianRational::from(-1), ArrowId(2)).unwrap();
        assert_eq!(r.members, vec![ArrowId(3)]);
        assert_eq!(r.failure, None);
    }
}
