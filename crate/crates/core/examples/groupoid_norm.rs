// The norm ‖g‖² = B(g, g), its axioms, and consistency with ↑↑.

use grpd::congruence::AffineCongruence;
use grpd::families;
use grpd::hom::GroupoidHom;
use grpd::norm::{norm_from_sip, ParallelogramStatus};
use grpd::scalar::sqrt_leq;
use grpd::sip::sip_from_thetas;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p5 = families::pair(5)?;
    let g = &p5.groupoid;
    let b = sip_from_thetas(vec![GroupoidHom::new(g, p5.homs[0].clone())?])?;
    let norm = norm_from_sip(&b)?;
    let x = g.arrow_by_label("(0,1)").ok_or("missing arrow")?;
    let y = g.arrow_by_label("(0,3)").ok_or("missing arrow")?;
    println!("‖(0,1)‖² = {}, ‖(0,3)‖² = {}", norm.sq(x), norm.sq(y));
    println!("norm axioms hold: {}", norm.validate().passed());

    // |‖h‖ - ‖g‖| <= ‖g⁻¹h‖ decided without square roots
    let gap = g.try_compose(g.inverse_of(x), y)?;
    println!(
        "‖(0,3)‖ <= ‖(0,1)‖ + ‖{}‖: {}",
        g.arrow_label(gap),
        sqrt_leq(norm.sq(y), norm.sq(x), norm.sq(gap))
    );

    let lambda = AffineCongruence::new(g, b.congruence_partition())?;
    let consistent = norm.consistent_with(&lambda)?;
    let (mut holds, mut missing) = (0, 0);
    for p in g.arrows() {
        for q in g.arrows() {
            match consistent.parallelogram(p, q).status {
                ParallelogramStatus::Holds => holds += 1,
                ParallelogramStatus::NoWitness => missing += 1,
                ParallelogramStatus::Fails { .. } => return Err("parallelogram failed".into()),
            }
        }
    }
    println!("parallelogram: {holds} pairs hold, {missing} have no witness");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
