// Check the homomorphism propositions on seeded random groupoids.

use grpd::congruence::{congruence_from_hom, congruence_profile, validate_affine_congruence};
use grpd::hom::GroupoidHom;
use grpd::random;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (mut monos, mut arrows) = (0, 0);
    for sample in random::hom_corpus(2024, 20, 8) {
        let g = &sample.groupoid;
        arrows += g.arrow_count();
        let theta = GroupoidHom::new(g, sample.homs[0].clone())?;
        let lambda = congruence_from_hom(&theta);
        assert!(validate_affine_congruence(g, &lambda)?.passed());
        if theta.is_monomorphism() {
            monos += 1;
            assert!(congruence_profile(g, &lambda)?.simple());
        }
    }
    println!("20 random homomorphisms over {arrows} arrows: all congruences, {monos} monomorphisms simple");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
