//! Group orders by Schreier-Sims and block systems of transitive groups.

use monodromy::perm::{is_primitive, PermGroup, Permutation, Primitivity};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 8;
    let cycle = Permutation::from_one_based_cycles(n, &[(1..=n).collect()])?;
    let swap = Permutation::transposition(n, 0, 1);
    let flip = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;

    for (name, gens) in [
        ("S_8", vec![cycle.clone(), swap]),
        ("D_8", vec![cycle.clone(), flip]),
        ("C_8", vec![cycle.clone()]),
    ] {
        let g = PermGroup::new(n, gens)?;
        let blocks = match is_primitive(&g)? {
            Primitivity::Primitive => "primitive".to_string(),
            Primitivity::Imprimitive(b) => format!("blocks of size {}", b.block_size()),
        };
        println!("{name}: order {}, base {:?}, {blocks}", g.order(), g.chain().base());
    }
    Ok(())
}
