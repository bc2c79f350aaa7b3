// The sets c • g = {k : B(k, h) = c B(g, h) for all h}.

use grpd::families;
use grpd::groupoid::FiniteGroupoid;
use grpd::hom::GroupoidHom;
use grpd::scalar::GaussianRational;
use grpd::sip::sip_from_thetas;

fn labels(g: &FiniteGroupoid, xs: &[grpd::groupoid::ArrowId]) -> Vec<String> {
    xs.iter().map(|x| g.arrow_label(*x).to_string()).collect()
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c4 = families::complex_pair(2)?;
    let g = &c4.groupoid;
    let b = sip_from_thetas(vec![GroupoidHom::new(g, c4.homs[0].clone())?])?;
    let one = g.arrow_by_label("((1,0),(0,0))").ok_or("missing arrow")?;
    for c in [GaussianRational::zero(), GaussianRational::i(), GaussianRational::from_ints(-1, 0)] {
        let members = b.scalar_set(&c, one, None)?;
        println!("({c}) • one = {:?}", labels(g, &members));
        assert_eq!(b.conjugate_scalar_witness(&c, one)?, None);
    }
    let at = g.object_by_label("(1,1)").ok_or("missing object")?;
    println!("i • one at (1,1) = {:?}", labels(g, &b.scalar_set(&GaussianRational::i(), one, Some(at))?));

    // a real semi-inner product has no i-multiples
    let p2 = families::pair(2)?;
    let real = sip_from_thetas(vec![GroupoidHom::new(&p2.groupoid, p2.homs[0].clone())?])?;
    let a = p2.groupoid.arrow_by_label("(0,1)").ok_or("missing arrow")?;
    println!("P2: i • (0,1) = {:?}", real.scalar_set(&GaussianRational::i(), a, None)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
