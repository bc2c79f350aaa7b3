//! Generators for standard groupoid families and their canonical
//! homomorphisms.
//!
//! | family | objects | arrows | canonical homs |
//! |---|---|---|---|
//! | `pair(n)` | `0..n` | `(x,y)` | `x - y` into Z |
//! | `cyclic_group(n)` | one | `k` in Z_n | identity into Z_n |
//! | `affine_cyclic(n)` | `0..n` | `(p,v)`, `d = p`, `r = p+v` | `v` into Z_n |
//! | `complex_pair(n)` | `n x n` grid | `(x,y)` | `(x1-y1) + i(x2-y2)`, then each coordinate into Z |
//!
//! Identity arrows come first for the pair families so that the first
//! non-identity arrow of `pair(n)` is `(0,1)`.

use thiserror::Error;

use crate::groupoid::{FiniteGroupoid, GroupoidError, Limits, RawGroupoid};
use crate::hom::{AbelianElement, AbelianGroupSig, HomValues};
use crate::scalar::{GaussianRational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

/// A generated groupoid with its canonical homomorphisms (possibly none).
#[derive(Debug, Clone)]
pub struct Generated {
    pub groupoid: FiniteGroupoid,
    pub homs: Vec<HomValues>,
}

/// The family names accepted by [`generate`].
pub const FAMILY_NAMES: [&str; 4] = ["pair", "group", "affine_cyclic", "complex_pair"];

/// Dispatches on a family name; `group` with a size means the cyclic group.
pub fn generate(kind: &str, size: usize) -> Result<Generated, FamilyError> {
    match kind {
        "pair" => pair(size),
        "group" => cyclic_group(size),
        "affine_cyclic" => affine_cyclic(size),
        "complex_pair" => complex_pair(size),
        other => Err(FamilyError::BadParams(format!("unknown family {other:?}"))),
    }
}

struct ArrowSpec {
    label: String,
    source: usize,
    target: usize,
}

fn assemble(
    object_labels: Vec<String>,
    arrows: Vec<ArrowSpec>,
    compose: impl Fn(usize, usize) -> usize,
) -> Result<FiniteGroupoid, FamilyError> {
    let limits = Limits::from_env();
    if object_labels.len() > limits.max_objects || arrows.len() > limits.max_arrows {
        return Err(FamilyError::BadParams(format!(
            "{} objects / {} arrows exceed the caps ({} / {})",
            object_labels.len(),
            arrows.len(),
            limits.max_objects,
            limits.max_arrows
        )));
    }
    let mut triples = Vec::new();
    for (f, a) in arrows.iter().enumerate() {
        for (g, b) in arrows.iter().enumerate() {
            if a.target == b.source {
                triples.push((f, g, compose(f, g)));
            }
        }
    }
    let raw = RawGroupoid {
        object_labels,
        source: arrows.iter().map(|a| a.source).collect(),
        target: arrows.iter().map(|a| a.target).collect(),
        arrow_labels: arrows.into_iter().map(|a| a.label).collect(),
        compose: triples,
        inverse: None,
        identity: None,
    };
    Ok(FiniteGroupoid::from_raw_with_limits(raw, limits)?)
}

fn require_positive(n: usize) -> Result<(), FamilyError> {
    if n == 0 {
        Err(FamilyError::BadParams("size must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Ordered pairs over `n` points, identities first, the rest lexicographic.
fn pair_endpoints(n: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<_> = (0..n).map(|x| (x, x)).collect();
    for x in 0..n {
        for y in 0..n {
            if x != y {
                out.push((x, y));
            }
        }
    }
    out
}

fn endpoint_index(ends: &[(usize, usize)], n: usize) -> Vec<usize> {
    let mut index = vec![usize::MAX; n * n];
    for (i, (x, y)) in ends.iter().enumerate() {
        index[x * n + y] = i;
    }
    index
}

fn scalar_hom(target: AbelianGroupSig, values: impl Iterator<Item = GaussianRational>) -> HomValues {
    let values = values
        .map(|v| target.element(vec![v]).expect("value lies in the target"))
        .collect::<Vec<AbelianElement>>();
    HomValues { target, values }
}

/// The pair groupoid on `n` objects with `theta(x,y) = x - y` into Z.
pub fn pair(n: usize) -> Result<Generated, FamilyError> {
    require_positive(n)?;
    let ends = pair_endpoints(n);
    let lookup = endpoint_index(&ends, n);
    let index = |x: usize, y: usize| lookup[x * n + y];
    let arrows = ends
        .iter()
        .map(|&(x, y)| ArrowSpec {
            label: format!("({x},{y})"),
            source: x,
            target: y,
        })
        .collect();
    let objects = (0..n).map(|x| x.to_string()).collect();
    let groupoid = assemble(objects, arrows, |f, g| index(ends[f].0, ends[g].1))?;
    let theta = scalar_hom(
        AbelianGroupSig::integers(),
        ends.iter().map(|&(x, y)| GaussianRational::from(x as i64 - y as i64)),
    );
    Ok(Generated {
        groupoid,
        homs: vec![theta],
    })
}

/// A one-object groupoid from a group multiplication table.
///
/// `table[a][b]` is the product `ab`; group axioms are checked by the
/// groupoid validator.
pub fn group(table: &[Vec<usize>]) -> Result<Generated, FamilyError> {
    let n = table.len();
    require_positive(n)?;
    if table.iter().any(|row| row.len() != n || row.iter().any(|x| *x >= n)) {
        return Err(FamilyError::BadParams(
            "multiplication table must be square with entries in range".into(),
        ));
    }
    let arrows = (0..n)
        .map(|a| ArrowSpec {
            label: a.to_string(),
            source: 0,
            target: 0,
        })
        .collect();
    let groupoid = assemble(vec!["*".into()], arrows, |a, b| table[a][b])?;
    Ok(Generated {
        groupoid,
        homs: Vec::new(),
    })
}

/// The cyclic group Z_n as a one-object groupoid, with the identity map
/// into Z_n.
pub fn cyclic_group(n: usize) -> Result<Generated, FamilyError> {
    require_positive(n)?;
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let mut out = group(&table)?;
    if n >= 2 {
        let target = AbelianGroupSig::cyclic(n as u64).expect("n >= 2");
        out.homs.push(scalar_hom(
            target,
            (0..n).map(|k| GaussianRational::from(k as i64)),
        ));
    }
    Ok(out)
}

/// Points of Z_n acted on by the vectors of Z_n: arrows `(p, v)` from `p`
/// to `p + v`, composed by adding vectors. Canonical hom `theta(p,v) = v`.
pub fn affine_cyclic(n: usize) -> Result<Generated, FamilyError> {
    if n < 2 {
        return Err(FamilyError::BadParams("affine_cyclic needs n >= 2".into()));
    }
    let arrows = (0..n)
        .flat_map(|p| (0..n).map(move |v| (p, v)))
        .map(|(p, v)| ArrowSpec {
            label: format!("({p},{v})"),
            source: p,
            target: (p + v) % n,
        })
        .collect();
    let objects = (0..n).map(|p| p.to_string()).collect();
    let groupoid = assemble(objects, arrows, |f, g| {
        let (p, v) = (f / n, f % n);
        let w = g % n;
        p * n + (v + w) % n
    })?;
    let target = AbelianGroupSig::cyclic(n as u64).expect("n >= 2");
    let theta = scalar_hom(
        target,
        (0..n * n).map(|f| GaussianRational::from((f % n) as i64)),
    );
    Ok(Generated {
        groupoid,
        homs: vec![theta],
    })
}

/// The pair groupoid over the `n x n` integer grid.
///
/// Homs, in order: `(x1-y1) + i(x2-y2)` into Q(i), `x1 - y1` into Z,
/// `x2 - y2` into Z.
pub fn complex_pair(n: usize) -> Result<Generated, FamilyError> {
    require_positive(n)?;
    let points: Vec<(i64, i64)> = (0..n as i64)
        .flat_map(|a| (0..n as i64).map(move |b| (a, b)))
        .collect();
    let ends = pair_endpoints(points.len());
    let lookup = endpoint_index(&ends, points.len());
    let index = |s: usize, t: usize| lookup[s * points.len() + t];
    let show = |p: (i64, i64)| format!("({},{})", p.0, p.1);
    let arrows = ends
        .iter()
        .map(|&(s, t)| ArrowSpec {
            label: format!("({},{})", show(points[s]), show(points[t])),
            source: s,
            target: t,
        })
        .collect();
    let objects = points.iter().map(|p| show(*p)).collect();
    let groupoid = assemble(objects, arrows, |f, g| index(ends[f].0, ends[g].1))?;
    let diff = |(s, t): (usize, usize)| {
        let (x, y) = (points[s], points[t]);
        (x.0 - y.0, x.1 - y.1)
    };
    let complex = scalar_hom(
        AbelianGroupSig::gaussian(),
        ends.iter().map(|e| {
            let (re, im) = diff(*e);
            GaussianRational::new(Rational::from(re), Rational::from(im))
        }),
    );
    let first = scalar_hom(
        AbelianGroupSig::integers(),
        ends.iter().map(|e| GaussianRational::from(diff(*e).0)),
    );
    let second = scalar_hom(
        AbelianGroupSig::integers(),
        ends.iter().map(|e| GaussianRational::from(diff(*e).1)),
    );
    Ok(Generated {
        groupoid,
        homs: vec![complex, first, second],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{ArrowId, ObjectId};
    use crate::hom::GroupoidHom;

    #[test]
    fn family_sizes() {
        let p2 = pair(2).unwrap().groupoid;
        assert_eq!((p2.object_count(), p2.arrow_count()), (2, 4));
        let a3 = affine_cyclic(3).unwrap().groupoid;
        assert_eq!((a3.object_count(), a3.arrow_count()), (3, 9));
        assert!(a3.is_transitive());
        let c4 = complex_pair(2).unwrap().groupoid;
        assert_eq!((c4.object_count(), c4.arrow_count()), (4, 16));
        let z4 = cyclic_group(4).unwrap().groupoid;
        assert_eq!((z4.object_count(), z4.arrow_count()), (1, 4));
    }

    #[test]
    fn complex_hom_values() {
        let c4 = complex_pair(2).unwrap();
        let g = &c4.groupoid;
        let theta = GroupoidHom::new(g, c4.homs[0].clone()).unwrap();
        let x = g.arrow_by_label("((1,0),(0,0))").unwrap();
        let y = g.arrow_by_label("((0,1),(0,0))").unwrap();
        assert_eq!(theta.scalar(x), &GaussianRational::one());
        assert_eq!(theta.scalar(y), &GaussianRational::i());
    }

    #[test]
    fn affine_inverse_and_identity() {
        let a3 = affine_cyclic(3).unwrap().groupoid;
        let g = a3.arrow_by_label("(1,2)").unwrap();
        assert_eq!(a3.arrow_label(a3.inverse_of(g)), "(0,1)");
        assert_eq!(a3.arrow_label(a3.identity_at(ObjectId(2))), "(2,0)");
    }

    #[test]
    fn affine_restriction_to_one_point_is_trivial() {
        let a3 = affine_cyclic(3).unwrap().groupoid;
        let sub = a3.restrict(&[ObjectId(0)]).unwrap();
        assert_eq!(sub.groupoid.arrow_count(), 1);
        assert_eq!(sub.groupoid.arrow_label(ArrowId(0)), "(0,0)");
    }

    #[test]
    fn pair_restriction_matches_smaller_pair() {
        let p3 = pair(3).unwrap().groupoid;
        let p2 = pair(2).unwrap().groupoid;
        let sub = p3.restrict(&[ObjectId(0), ObjectId(1)]).unwrap().groupoid;
        // pair groupoids have one arrow per (source, target); match on endpoints
        let matching = |a: ArrowId| {
            p2.hom_set(sub.source(a), sub.target(a))
                .first()
                .copied()
                .expect("arrow with these endpoints")
        };
        assert_eq!(sub.arrow_count(), p2.arrow_count());
        for f in sub.arrows() {
            for h in sub.composable_after(f) {
                let fh = sub.compose(f, *h).unwrap();
                assert_eq!(p2.compose(matching(f), matching(*h)), Some(matching(fh)));
            }
        }
    }

    #[test]
    fn pair_groupoids_transitive_with_trivial_isotropy() {
        for n in 1..=6 {
            let g = pair(n).unwrap().groupoid;
            assert!(g.is_transitive());
            assert!(g.objects().all(|p| g.isotropy(p).len() == 1));
        }
    }

    #[test]
    fn bad_params() {
        assert!(matches!(pair(0), Err(FamilyError::BadParams(_))));
        assert!(matches!(affine_cyclic(1), Err(FamilyError::BadParams(_))));
        assert!(matches!(generate("torus", 2), Err(FamilyError::BadParams(_))));
        // 65 objects is over the default object cap
        assert!(matches!(pair(65), Err(FamilyError::BadParams(_))));
        assert!(matches!(
            group(&[vec![0, 1], vec![1]]),
            Err(FamilyError::BadParams(_))
        ));
    }

    #[test]
    fn non_group_table_rejected() {
        // {0, 1} under max: 0 is a unit but 1 has no inverse
        let table = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            group(&table),
            Err(FamilyError::Groupoid(GroupoidError::BadInverse(_)))
        ));
    }

    #[test]
    fn generated_families_validate_from_raw() {
        for kind in FAMILY_NAMES {
            for n in 2..=4 {
                let g = generate(kind, n).unwrap().groupoid;
                assert_eq!(FiniteGroupoid::from_raw(g.to_raw()).unwrap(), g);
            }
        }
    }
}
