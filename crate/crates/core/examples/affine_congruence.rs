// Affine congruences from homomorphisms, and their completeness profile.

use grpd::congruence::{congruence_from_hom, validate_affine_congruence, AffineCongruence, Partition};
use grpd::families;
use grpd::hom::GroupoidHom;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // affine maps of Z_3 with θ(p, v) = v
    let a3 = families::affine_cyclic(3)?;
    let theta = GroupoidHom::new(&a3.groupoid, a3.homs[0].clone())?;
    let lambda = AffineCongruence::from_hom(&theta)?;
    let profile = lambda.profile();
    println!(
        "A3: {} classes, complete {}, simple {}, efficient {}",
        lambda.partition().class_count(),
        profile.complete(),
        profile.simple(),
        profile.efficient()
    );

    // the pair groupoid on two points with θ(x, y) = x - y is simple but not complete
    let p2 = families::pair(2)?;
    let g = &p2.groupoid;
    let theta = GroupoidHom::new(g, p2.homs[0].clone())?;
    println!("P2 θ monomorphism: {}", theta.is_monomorphism());
    let lambda = AffineCongruence::from_hom(&theta)?;
    if let Some((arrow, object)) = lambda.profile().incomplete_at {
        println!(
            "P2 incomplete: class of {} misses object {}",
            g.arrow_label(arrow),
            g.object_label(object)
        );
    }

    // a partition that breaks parallelism
    let by_hand = Partition::from_keys(g.arrows().map(|x| g.source(x) == g.target(x) || g.arrow_label(x) == "(0,1)"));
    let report = validate_affine_congruence(g, &by_hand)?;
    match report.first_violation() {
        Some(v) => println!(
            "{:?} fails at ({}, {}, {}, {})",
            v.axiom,
            g.arrow_label(v.g1),
            g.arrow_label(v.g2),
            g.arrow_label(v.h1),
            g.arrow_label(v.h2)
        ),
        None => println!("partition is an affine congruence"),
    }
    assert_eq!(congruence_from_hom(&theta).class_count(), 3);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
