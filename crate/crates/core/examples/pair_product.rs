//! A random genus-2 cover of an elliptic curve and its fiber square.

use monodromy::cover::{classify_ramification, diagonal_component, pair_product, random_cover, RamificationCase};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for case in RamificationCase::ALL {
        let n = 5;
        let rep = random_cover(n, case, 1)?;
        let z = pair_product(&rep)?;
        let d = diagonal_component(&z)?;
        println!("{case:?} (classified {:?}), degree {n}", classify_ramification(&rep)?);
        for b in rep.branch() {
            println!("  {} = {} with cycle type {}", b.label, b.perm, b.perm.cycle_type());
        }
        for (k, c) in z.components.iter().enumerate() {
            let tag = if k == d { " (diagonal)" } else { "" };
            println!("  component {k}: degree {}, genus {}{tag}", c.degree, c.genus);
        }
        println!("  total genus {}", z.total_genus);
    }
    Ok(())
}
