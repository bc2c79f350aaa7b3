// Build the pair groupoid on two points by hand and query it.

use grpd::groupoid::{FiniteGroupoid, ObjectId, RawGroupoid};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // arrows: e0, e1, a: 0 -> 1, b: 1 -> 0
    let raw = RawGroupoid {
        object_labels: vec!["0".into(), "1".into()],
        arrow_labels: ["e0", "e1", "a", "b"].map(String::from).to_vec(),
        source: vec![0, 1, 0, 1],
        target: vec![0, 1, 1, 0],
        compose: vec![
            (0, 0, 0),
            (0, 2, 2),
            (1, 1, 1),
            (1, 3, 3),
            (2, 1, 2),
            (2, 3, 0),
            (3, 0, 3),
            (3, 2, 1),
        ],
        inverse: None,
        identity: None,
    };
    let g = FiniteGroupoid::from_raw(raw)?;
    let a = g.arrow_by_label("a").ok_or("no arrow a")?;
    let b = g.arrow_by_label("b").ok_or("no arrow b")?;

    println!("{} objects, {} arrows", g.object_count(), g.arrow_count());
    println!("ab = {}", g.arrow_label(g.try_compose(a, b)?));
    println!("aa composable: {}", g.is_composable(a, a));
    println!("inverse of a = {}", g.arrow_label(g.inverse_of(a)));
    let fiber: Vec<&str> = g.source_fiber(ObjectId(0)).iter().map(|x| g.arrow_label(*x)).collect();
    println!("source fiber of 0: {fiber:?}");
    println!("transitive: {}", g.is_transitive());

    let sub = g.restrict(&[ObjectId(1)])?;
    println!("restricted to {{1}}: {} arrow(s)", sub.groupoid.arrow_count());

    // a table that is not a groupoid
    let mut broken = g.to_raw();
    broken.compose.retain(|&(f, h, _)| (f, h) != (2, 3));
    match FiniteGroupoid::from_raw(broken) {
        Ok(_) => println!("unexpectedly valid"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
