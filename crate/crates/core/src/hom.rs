//! Homomorphisms from a finite groupoid into commutative groups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groupoid::{ArrowId, FiniteGroupoid};
use crate::scalar::{GaussianRational, Rational};

/// One factor of a product of commutative groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    #[serde(rename = "int")]
    Integer,
    #[serde(rename = "mod")]
    Modular(u64),
    Rational,
    Gaussian,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentKind::Integer => write!(f, "Z"),
            ComponentKind::Modular(m) => write!(f, "Z_{m}"),
            ComponentKind::Rational => write!(f, "Q"),
            ComponentKind::Gaussian => write!(f, "Q(i)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("target group has no components")]
    EmptySignature,
    #[error("value {value} is not an element of {kind}")]
    NotInComponent { value: String, kind: ComponentKind },
    #[error("element has {got} components, expected {expected}")]
    Arity { got: usize, expected: usize },
    #[error("no value for arrow {0}")]
    MissingArrow(String),
    #[error("map has {got} values for {expected} arrows")]
    WrongLength { got: usize, expected: usize },
    #[error("not additive: theta({g}{h}) != theta({g}) + theta({h})")]
    NotAdditive { g: String, h: String },
    #[error("cannot combine an empty list of homomorphisms")]
    EmptyList,
    #[error("homomorphisms are defined on different groupoids")]
    MixedGroupoids,
}

/// A finite product of integer, modular, rational and Gaussian-rational groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianGroupSig {
    components: Vec<ComponentKind>,
}

/// An element of an [`AbelianGroupSig`], one canonical value per component.
///
/// Every component is stored as a Gaussian rational; the signature pins
/// which subset is allowed (integers, residues `0..m`, reals, or all).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianElement(Vec<GaussianRational>);

impl AbelianElement {
    pub fn components(&self) -> &[GaussianRational] {
        &self.0
    }
}

impl fmt::Display for AbelianElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [only] = self.0.as_slice() {
            return write!(f, "{only}");
        }
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl AbelianGroupSig {
    pub fn new(components: Vec<ComponentKind>) -> Result<Self, HomError> {
        if components.is_empty() {
            return Err(HomError::EmptySignature);
        }
        for c in &components {
            if let ComponentKind::Modular(m) = c {
                if *m < 2 {
                    return Err(HomError::BadModulus(*m));
                }
            }
        }
        Ok(AbelianGroupSig { components })
    }

    pub fn single(kind: ComponentKind) -> Result<Self, HomError> {
        Self::new(vec![kind])
    }

    pub fn integers() -> Self {
        AbelianGroupSig {
            components: vec![ComponentKind::Integer],
        }
    }

    pub fn gaussian() -> Self {
        AbelianGroupSig {
            components: vec![ComponentKind::Gaussian],
        }
    }

    pub fn cyclic(m: u64) -> Result<Self, HomError> {
        Self::single(ComponentKind::Modular(m))
    }

    pub fn components(&self) -> &[ComponentKind] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// True when every component sits inside the real line.
    pub fn is_real(&self) -> bool {
        self.components
            .iter()
            .all(|c| matches!(c, ComponentKind::Integer | ComponentKind::Rational))
    }

    /// True for a single integer, rational or Gaussian component.
    pub fn is_scalar(&self) -> bool {
        matches!(
            self.components.as_slice(),
            [ComponentKind::Integer | ComponentKind::Rational | ComponentKind::Gaussian]
        )
    }

    pub fn zero(&self) -> AbelianElement {
        AbelianElement(vec![GaussianRational::zero(); self.len()])
    }

    /// Checks membership and reduces modular components into `0..m`.
    pub fn element(&self, values: Vec<GaussianRational>) -> Result<AbelianElement, HomError> {
        if values.len() != self.len() {
            return Err(HomError::Arity {
                got: values.len(),
                expected: self.len(),
            });
        }
        let values = values
            .into_iter()
            .zip(&self.components)
            .map(|(v, kind)| canonical(v, *kind))
            .collect::<Result<_, _>>()?;
        Ok(AbelianElement(values))
    }

    pub fn add(&self, a: &AbelianElement, b: &AbelianElement) -> AbelianElement {
        AbelianElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.components)
                .map(|((x, y), kind)| reduce(x.clone() + y, *kind))
                .collect(),
        )
    }

    pub fn neg(&self, a: &AbelianElement) -> AbelianElement {
        AbelianElement(
            a.0.iter()
                .zip(&self.components)
                .map(|(x, kind)| reduce(-x, *kind))
                .collect(),
        )
    }

    pub fn is_zero(&self, a: &AbelianElement) -> bool {
        a.0.iter().all(GaussianRational::is_zero)
    }

    /// The product of several groups, factors concatenated in order.
    pub fn product<'a>(sigs: impl IntoIterator<Item = &'a AbelianGroupSig>) -> Result<Self, HomError> {
        let components: Vec<_> = sigs
            .into_iter()
            .flat_map(|s| s.components.iter().copied())
            .collect();
        Self::new(components)
    }
}

impl fmt::Display for AbelianGroupSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

fn canonical(v: GaussianRational, kind: ComponentKind) -> Result<GaussianRational, HomError> {
    let ok = match kind {
        ComponentKind::Integer | ComponentKind::Modular(_) => v.is_real() && v.re.is_integer(),
        ComponentKind::Rational => v.is_real(),
        ComponentKind::Gaussian => true,
    };
    if !ok {
        return Err(HomError::NotInComponent {
            value: v.to_string(),
            kind,
        });
    }
    Ok(reduce(v, kind))
}

fn reduce(v: GaussianRational, kind: ComponentKind) -> GaussianRational {
    match kind {
        ComponentKind::Modular(m) => {
            let r = v.re.numer().mod_floor(&BigInt::from(m));
            GaussianRational::real(Rational::from_bigint(r))
        }
        _ => v,
    }
}

/// Unvalidated homomorphism data: one target element per arrow index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomValues {
    pub target: AbelianGroupSig,
    pub values: Vec<AbelianElement>,
}

/// A validated homomorphism `theta: G -> A` into a commutative group.
#[derive(Debug, Clone)]
pub struct GroupoidHom<'g> {
    groupoid: &'g FiniteGroupoid,
    target: AbelianGroupSig,
    values: Vec<AbelianElement>,
}

impl<'g> GroupoidHom<'g> {
    /// Checks `theta(gh) = theta(g) + theta(h)` on every composable pair.
    ///
    /// Identities going to zero and inverses going to negatives follow from
    /// additivity, so they are not checked separately.
    pub fn new(groupoid: &'g FiniteGroupoid, raw: HomValues) -> Result<Self, HomError> {
        let HomValues { target, values } = raw;
        if values.len() != groupoid.arrow_count() {
            if values.len() < groupoid.arrow_count() {
                let g = ArrowId(values.len());
                return Err(HomError::MissingArrow(groupoid.arrow_label(g).to_string()));
            }
            return Err(HomError::WrongLength {
                got: values.len(),
                expected: groupoid.arrow_count(),
            });
        }
        for v in &values {
            if v.0.len() != target.len() {
                return Err(HomError::Arity {
                    got: v.0.len(),
                    expected: target.len(),
                });
            }
        }
        for g in groupoid.arrows() {
            for &h in groupoid.composable_after(g) {
                let gh = groupoid.compose(g, h).expect("composable");
                if values[gh.0] != target.add(&values[g.0], &values[h.0]) {
                    return Err(HomError::NotAdditive {
                        g: groupoid.arrow_label(g).to_string(),
                        h: groupoid.arrow_label(h).to_string(),
                    });
                }
            }
        }
        Ok(GroupoidHom {
            groupoid,
            target,
            values,
        })
    }

    /// The homomorphism sending every arrow to zero.
    pub fn zero(groupoid: &'g FiniteGroupoid, target: AbelianGroupSig) -> Self {
        let values = vec![target.zero(); groupoid.arrow_count()];
        GroupoidHom {
            groupoid,
            target,
            values,
        }
    }

    pub fn groupoid(&self) -> &'g FiniteGroupoid {
        self.groupoid
    }

    pub fn target(&self) -> &AbelianGroupSig {
        &self.target
    }

    pub fn value(&self, g: ArrowId) -> &AbelianElement {
        &self.values[g.0]
    }

    pub fn values(&self) -> &[AbelianElement] {
        &self.values
    }

    /// The single component of a scalar-valued homomorphism.
    pub fn scalar(&self, g: ArrowId) -> &GaussianRational {
        &self.values[g.0].0[0]
    }

    pub fn is_zero_at(&self, g: ArrowId) -> bool {
        self.target.is_zero(&self.values[g.0])
    }

    pub fn to_values(&self) -> HomValues {
        HomValues {
            target: self.target.clone(),
            values: self.values.clone(),
        }
    }

    /// `None` when the kernel holds only identities (the groupoid-sense
    /// monomorphism), otherwise the first non-identity arrow sent to zero.
    ///
    /// This is kernel triviality, not injectivity on arrows.
    pub fn monomorphism_witness(&self) -> Option<ArrowId> {
        self.groupoid
            .arrows()
            .find(|g| !self.groupoid.is_identity(*g) && self.is_zero_at(*g))
    }

    pub fn is_monomorphism(&self) -> bool {
        self.monomorphism_witness().is_none()
    }
}

/// Combines a family `theta_i: G -> A_i` into `theta: G -> prod A_i`.
pub fn product_hom<'g>(thetas: &[GroupoidHom<'g>]) -> Result<GroupoidHom<'g>, HomError> {
    let first = thetas.first().ok_or(HomError::EmptyList)?;
    let groupoid = first.groupoid;
    if thetas.iter().any(|t| !std::ptr::eq(t.groupoid, groupoid)) {
        return Err(HomError::MixedGroupoids);
    }
    let target = AbelianGroupSig::product(thetas.iter().map(|t| &t.target))?;
    let values = groupoid
        .arrows()
        .map(|g| {
            AbelianElement(
                thetas
                    .iter()
                    .flat_map(|t| t.values[g.0].0.iter().cloned())
                    .collect(),
            )
        })
        .collect();
    Ok(GroupoidHom {
        groupoid,
        target,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::groupoid::ObjectId;

    fn ints(sig: &AbelianGroupSig, xs: &[i64]) -> AbelianElement {
        sig.element(xs.iter().map(|x| GaussianRational::from(*x)).collect())
            .unwrap()
    }

    #[test]
    fn modular_components_reduce() {
        let sig = AbelianGroupSig::cyclic(3).unwrap();
        assert_eq!(ints(&sig, &[-2]), ints(&sig, &[1]));
        let x = ints(&sig, &[2]);
        assert_eq!(sig.add(&x, &x), ints(&sig, &[1]));
        assert_eq!(sig.neg(&x), ints(&sig, &[1]));
        assert!(AbelianGroupSig::cyclic(1).is_err());
        assert!(sig
            .element(vec![GaussianRational::new(Rational::new(1, 2), Rational::zero())])
            .is_err());
    }

    #[test]
    fn canonical_pair_hom_is_valid() {
        let fam = families::pair(2).unwrap();
        let theta = GroupoidHom::new(&fam.groupoid, fam.homs[0].clone()).unwrap();
        assert!(theta.is_monomorphism());
    }

    #[test]
    fn non_additive_map_rejected() {
        let fam = families::pair(2).unwrap();
        let g = &fam.groupoid;
        let sig = AbelianGroupSig::integers();
        // identities, then (0,1), (1,0)
        let values = vec![ints(&sig, &[0]), ints(&sig, &[0]), ints(&sig, &[1]), ints(&sig, &[1])];
        let err = GroupoidHom::new(g, HomValues { target: sig, values }).unwrap_err();
        assert_eq!(
            err,
            HomError::NotAdditive {
                g: "(0,1)".into(),
                h: "(1,0)".into()
            }
        );
    }

    #[test]
    fn zero_hom_is_valid_but_not_mono() {
        let fam = families::pair(2).unwrap();
        let g = &fam.groupoid;
        let zero = GroupoidHom::zero(g, AbelianGroupSig::integers());
        assert!(GroupoidHom::new(g, zero.to_values()).is_ok());
        assert_eq!(zero.monomorphism_witness(), Some(ArrowId(2)));
    }

    #[test]
    fn missing_arrow_reported() {
        let fam = families::pair(2).unwrap();
        let mut raw = fam.homs[0].clone();
        raw.values.pop();
        assert_eq!(
            GroupoidHom::new(&fam.groupoid, raw).unwrap_err(),
            HomError::MissingArrow("(1,0)".into())
        );
    }

    #[test]
    fn affine_hom_is_mono() {
        let fam = families::affine_cyclic(3).unwrap();
        let theta = GroupoidHom::new(&fam.groupoid, fam.homs[0].clone()).unwrap();
        assert!(theta.is_monomorphism());
    }

    #[test]
    fn product_of_coordinate_homs() {
        let fam = families::complex_pair(2).unwrap();
        let g = &fam.groupoid;
        let t1 = GroupoidHom::new(g, fam.homs[1].clone()).unwrap();
        let t2 = GroupoidHom::new(g, fam.homs[2].clone()).unwrap();
        let both = product_hom(&[t1.clone(), t2]).unwrap();
        assert_eq!(both.target().components(), &[ComponentKind::Integer; 2]);
        let arrow = g.hom_set(ObjectId(2), ObjectId(0))[0];
        assert_eq!(g.arrow_label(arrow), "((1,0),(0,0))");
        assert_eq!(both.value(arrow), &ints(both.target(), &[1, 0]));

        let single = product_hom(std::slice::from_ref(&t1)).unwrap();
        assert_eq!(single.values(), t1.values());

        let with_zero = product_hom(&[t1.clone(), GroupoidHom::zero(g, AbelianGroupSig::integers())]).unwrap();
        assert!(g.arrows().all(|a| with_zero.value(a).components()[1].is_zero()));
        assert_eq!(product_hom(&[]).unwrap_err(), HomError::EmptyList);

        let other = families::pair(2).unwrap();
        let foreign = GroupoidHom::zero(&other.groupoid, AbelianGroupSig::integers());
        assert_eq!(product_hom(&[t1, foreign]).unwrap_err(), HomError::MixedGroupoids);
    }
}
