//! Galois group classification, including the exceptional degree-6 case.

use monodromy::cover::{galois_report, random_cover, MonodromyRep, RamificationCase};
use monodromy::perm::Permutation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // PGL(2, 5) acting on the six points of P¹(F₅)
    let a = Permutation::from_one_based_cycles(6, &[vec![3, 5, 4, 6]])?;
    let b = Permutation::from_one_based_cycles(6, &[vec![1, 6, 2], vec![3, 4, 5]])?;
    let c = a.compose(&b).inverse();
    let rep = MonodromyRep::over_p1(6, vec![("a", a), ("b", b), ("c", c)])?;
    let r = galois_report(&rep)?;
    println!("degree-6 rep: {} of order {}", r.class, r.order);

    for case in RamificationCase::ALL {
        let rep = random_cover(6, case, 7)?;
        let r = galois_report(&rep)?;
        println!(
            "{case:?}: {} of order {}, structural prediction {:?}",
            r.class, r.order, r.structural_order
        );
    }
    Ok(())
}
