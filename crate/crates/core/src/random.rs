//! Seeded random groupoids, homomorphisms and separating θ-families.
//!
//! Groupoids are disjoint unions of `pair(n) × H` with `H` a small abelian
//! group, stored with shuffled object and arrow orders.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::families::Generated;
use crate::groupoid::{FiniteGroupoid, RawGroupoid};
use crate::hom::{AbelianElement, AbelianGroupSig, ComponentKind, HomValues};
use crate::scalar::{GaussianRational, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Isotropy group of one block: `ℤ_m1 × ℤ_m2 × ...` (empty for trivial).
#[derive(Debug, Clone, PartialEq, Eq)]
struct Isotropy(Vec<u64>);

impl Isotropy {
    fn order(&self) -> usize {
        self.0.iter().product::<u64>() as usize
    }

    fn element(&self, mut index: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.0.len());
        for &m in self.0.iter().rev() {
            out.push((index % m as usize) as u64);
            index /= m as usize;
        }
        out.reverse();
        out
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.0.iter().zip(a.iter().zip(b)).map(|(&m, (&x, &y))| (x + y) % m).collect()
    }
}

#[derive(Debug, Clone)]
struct Block {
    size: usize,
    isotropy: Isotropy,
}

/// Where an arrow sits: block, local source, local target, isotropy part.
#[derive(Debug, Clone)]
struct Coord {
    block: usize,
    x: usize,
    y: usize,
    h: Vec<u64>,
}

struct Layout {
    blocks: Vec<Block>,
    coords: Vec<Coord>,
    groupoid: FiniteGroupoid,
}

fn build(blocks: Vec<Block>, rng: &mut impl Rng) -> Layout {
    let object_total: usize = blocks.iter().map(|b| b.size).sum();
    let mut object_perm: Vec<usize> = (0..object_total).collect();
    object_perm.shuffle(rng);
    let mut object_of = Vec::new();
    let mut object_labels = vec![String::new(); object_total];
    let mut next = 0;
    for (bi, b) in blocks.iter().enumerate() {
        let mut ids = Vec::new();
        for x in 0..b.size {
            let id = object_perm[next];
            next += 1;
            object_labels[id] = format!("b{bi}.{x}");
            ids.push(id);
        }
        object_of.push(ids);
    }

    let mut coords = Vec::new();
    for (bi, b) in blocks.iter().enumerate() {
        for x in 0..b.size {
            for y in 0..b.size {
                for k in 0..b.isotropy.order() {
                    coords.push(Coord { block: bi, x, y, h: b.isotropy.element(k) });
                }
            }
        }
    }
    coords.shuffle(rng);

    let mut lookup = std::collections::HashMap::new();
    for (i, c) in coords.iter().enumerate() {
        lookup.insert((c.block, c.x, c.y, c.h.clone()), i);
    }
    let mut compose = Vec::new();
    for (i, f) in coords.iter().enumerate() {
        let iso = &blocks[f.block].isotropy;
        for (j, g) in coords.iter().enumerate() {
            if g.block == f.block && g.x == f.y {
                let h = iso.add(&f.h, &g.h);
                compose.push((i, j, lookup[&(f.block, f.x, g.y, h)]));
            }
        }
    }
    let arrow_labels = coords
        .iter()
        .map(|c| {
            let h: Vec<String> = c.h.iter().map(u64::to_string).collect();
            format!("b{}.({},{})[{}]", c.block, c.x, c.y, h.join(","))
        })
        .collect();
    let raw = RawGroupoid {
        object_labels,
        arrow_labels,
        source: coords.iter().map(|c| object_of[c.block][c.x]).collect(),
        target: coords.iter().map(|c| object_of[c.block][c.y]).collect(),
        compose,
        inverse: None,
        identity: None,
    };
    let groupoid = FiniteGroupoid::from_raw(raw).expect("product of pair groupoid and group");
    Layout { blocks, coords, groupoid }
}

fn random_blocks(rng: &mut impl Rng, max_objects: usize, trivial_isotropy: bool) -> Vec<Block> {
    let max_objects = max_objects.max(1);
    let mut blocks = Vec::new();
    let mut left = max_objects;
    let wanted = rng.gen_range(1..=3);
    while left > 0 && blocks.len() < wanted {
        let size = rng.gen_range(1..=left.min(4));
        left -= size;
        let isotropy = if trivial_isotropy {
            Isotropy(Vec::new())
        } else {
            match rng.gen_range(0..5) {
                0 => Isotropy(Vec::new()),
                1 => Isotropy(vec![2]),
                2 => Isotropy(vec![3]),
                3 => Isotropy(vec![4]),
                _ => Isotropy(vec![2, 2]),
            }
        };
        blocks.push(Block { size, isotropy });
    }
    blocks
}

fn small_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

/// One target component together with per-object potentials and
/// per-block isotropy characters.
fn random_component(rng: &mut impl Rng, layout: &Layout) -> (ComponentKind, Vec<Vec<GaussianRational>>, Vec<Vec<i64>>) {
    let modulus_options: Vec<u64> = layout
        .blocks
        .iter()
        .flat_map(|b| b.isotropy.0.iter().copied())
        .collect();
    let kind = match rng.gen_range(0..4) {
        0 => ComponentKind::Integer,
        1 => ComponentKind::Rational,
        2 => ComponentKind::Gaussian,
        _ => ComponentKind::Modular(modulus_options.choose(rng).copied().unwrap_or(5)),
    };
    let potentials = layout
        .blocks
        .iter()
        .map(|b| {
            (0..b.size)
                .map(|_| match kind {
                    ComponentKind::Integer => GaussianRational::from_ints(rng.gen_range(-4..=4), 0),
                    ComponentKind::Modular(m) => GaussianRational::from_ints(rng.gen_range(0..m as i64), 0),
                    ComponentKind::Rational => GaussianRational::real(small_rational(rng)),
                    ComponentKind::Gaussian => GaussianRational::new(small_rational(rng), small_rational(rng)),
                })
                .collect()
        })
        .collect();
    // a character ℤ_k → ℤ_m sends the generator to a multiple of m / gcd(m, k)
    let characters = layout
        .blocks
        .iter()
        .map(|b| {
            b.isotropy
                .0
                .iter()
                .map(|&k| match kind {
                    ComponentKind::Modular(m) => {
                        let step = m / num_integer::gcd(m, k);
                        (step * rng.gen_range(0..m)) as i64 % m as i64
                    }
                    _ => 0,
                })
                .collect()
        })
        .collect();
    (kind, potentials, characters)
}

/// `θ((x, y), h) = f(x) - f(y) + φ(h)` componentwise.
fn random_hom(rng: &mut impl Rng, layout: &Layout) -> HomValues {
    let arity = if rng.gen_bool(0.25) { 2 } else { 1 };
    let parts: Vec<_> = (0..arity).map(|_| random_component(rng, layout)).collect();
    let target = AbelianGroupSig::new(parts.iter().map(|p| p.0).collect()).expect("valid components");
    let values = layout
        .coords
        .iter()
        .map(|c| {
            let raw = parts
                .iter()
                .map(|(_, f, chi)| {
                    let twist: i64 = chi[c.block].iter().zip(&c.h).map(|(a, &h)| a * h as i64).sum();
                    f[c.block][c.x].clone() - f[c.block][c.y].clone() + GaussianRational::from_ints(twist, 0)
                })
                .collect();
            target.element(raw).expect("values lie in their components")
        })
        .collect::<Vec<AbelianElement>>();
    HomValues { target, values }
}

/// A random groupoid with at most `max_objects` objects and one random
/// homomorphism on it.
pub fn hom_sample(rng: &mut impl Rng, max_objects: usize) -> Generated {
    let blocks = random_blocks(rng, max_objects, false);
    let layout = build(blocks, rng);
    let hom = random_hom(rng, &layout);
    Generated { groupoid: layout.groupoid, homs: vec![hom] }
}

/// A random groupoid with trivial isotropy and a separating family of one
/// to three scalar homomorphisms, all real or all Gaussian.
pub fn sip_sample(rng: &mut impl Rng, max_objects: usize) -> Generated {
    let blocks = random_blocks(rng, max_objects, true);
    let layout = build(blocks, rng);
    let complex = rng.gen_bool(0.5);
    let kind = if complex { ComponentKind::Gaussian } else { ComponentKind::Rational };
    let target = AbelianGroupSig::single(kind).expect("scalar target");
    loop {
        let count = rng.gen_range(1..=3);
        let potentials: Vec<Vec<Vec<GaussianRational>>> = (0..count)
            .map(|_| {
                layout
                    .blocks
                    .iter()
                    .map(|b| {
                        (0..b.size)
                            .map(|_| {
                                let im = if complex { small_rational(rng) } else { Rational::zero() };
                                GaussianRational::new(small_rational(rng), im)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let separating = layout
            .coords
            .iter()
            .all(|c| c.x == c.y || potentials.iter().any(|f| f[c.block][c.x] != f[c.block][c.y]));
        if !separating {
            continue;
        }
        let homs = potentials
            .iter()
            .map(|f| HomValues {
                target: target.clone(),
                values: layout
                    .coords
                    .iter()
                    .map(|c| {
                        target
                            .element(vec![f[c.block][c.x].clone() - f[c.block][c.y].clone()])
                            .expect("scalar")
                    })
                    .collect(),
            })
            .collect();
        return Generated { groupoid: layout.groupoid, homs };
    }
}

pub fn hom_corpus(seed: u64, count: usize, max_objects: usize) -> Vec<Generated> {
    let mut rng = rng(seed);
    (0..count).map(|_| hom_sample(&mut rng, max_objects)).collect()
}

pub fn sip_corpus(seed: u64, count: usize, max_objects: usize) -> Vec<Generated> {
    let mut rng = rng(seed);
    (0..count).map(|_| sip_sample(&mut rng, max_objects)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::GroupoidHom;
    use crate::sip::sip_from_thetas;

    #[test]
    fn hom_samples_are_valid_and_bounded() {
        for sample in hom_corpus(7, 40, 8) {
            assert!(sample.groupoid.object_count() <= 8);
            GroupoidHom::new(&sample.groupoid, sample.homs[0].clone()).unwrap();
        }
    }

    #[test]
    fn sip_samples_separate() {
        for sample in sip_corpus(11, 30, 8) {
            let thetas = sample
                .homs
                .iter()
                .map(|h| GroupoidHom::new(&sample.groupoid, h.clone()).unwrap())
                .collect();
            assert!(sip_from_thetas(thetas).is_ok());
            assert!(sample.groupoid.objects().all(|p| sample.groupoid.isotropy(p).len() == 1));
        }
    }

    #[test]
    fn corpus_is_reproducible() {
        let a = hom_corpus(3, 5, 8);
        let b = hom_corpus(3, 5, 8);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.groupoid.to_raw(), y.groupoid.to_raw());
            assert_eq!(x.homs, y.homs);
        }
    }
}
