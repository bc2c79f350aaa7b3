// A complex semi-inner product B(g, h) = θ(g) conj(θ(h)) on a grid pair groupoid.

use grpd::families;
use grpd::hom::GroupoidHom;
use grpd::sip::sip_from_thetas;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c4 = families::complex_pair(2)?;
    let g = &c4.groupoid;
    let theta = GroupoidHom::new(g, c4.homs[0].clone())?;
    let b = sip_from_thetas(vec![theta])?;
    println!("field: {:?}, semi-inner product: {}", b.field(), b.sip_report().is_sip());

    let one = g.arrow_by_label("((1,0),(0,0))").ok_or("missing arrow")?;
    let i = g.arrow_by_label("((0,1),(0,0))").ok_or("missing arrow")?;
    println!("B(one, i) = {}, B(i, one) = {}", b.value(one, i), b.value(i, one));

    let r = b.relate(one, g.inverse_of(one));
    println!("one vs its inverse: congruent {}, opposite {}, orthogonal {}", r.congruent, r.opposite, r.orthogonal);

    let bp = b.b_partition();
    println!(
        "↑↑ has {} classes, affine congruence {}, simple {}, B-affine {}",
        bp.partition.class_count(),
        bp.axioms.passed(),
        bp.profile.simple(),
        bp.b_affine
    );
    println!("fiber propositions hold: {}", b.transitive_props_check().passed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
