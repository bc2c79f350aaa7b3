// Recover a real semi-inner product from its norm by polarization.

use grpd::congruence::AffineCongruence;
use grpd::families;
use grpd::hom::GroupoidHom;
use grpd::norm::{norm_from_sip, polarize};
use grpd::scalar::GaussianRational;
use grpd::sip::sip_from_thetas;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p5 = families::pair(5)?;
    let g = &p5.groupoid;
    let b = sip_from_thetas(vec![GroupoidHom::new(g, p5.homs[0].clone())?])?;
    let norm = norm_from_sip(&b)?;
    let lambda = AffineCongruence::new(g, b.congruence_partition())?;

    let form = norm.consistent_with(&lambda)?.polarize_partial()?;
    let (defined, total) = form.coverage();
    println!("polarized {defined} of {total} pairs");
    let agree = g.arrows().all(|x| {
        g.arrows().all(|y| {
            form.value(x, y)
                .is_none_or(|v| GaussianRational::real(v.clone()) == *b.value(x, y))
        })
    });
    println!("agrees with B where defined: {agree}");
    println!("semi-inner product on defined pairs: {}", form.sip_report().is_sip());
    println!("additive on defined pairs: {}", form.additivity().is_none());

    match polarize(&norm, &lambda) {
        Ok(_) => println!("strict polarization succeeded"),
        Err(e) => println!("strict polarization: {e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
