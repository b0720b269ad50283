//! Genus of the complementary curve for generic data over P¹.

use monodromy::cover::{complementary_genus, random_generic_p1_pair};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [3, 5, 7, 9] {
        let (phi, x) = random_generic_p1_pair(n, 0)?;
        let r = complementary_genus(&phi, &x)?;
        println!(
            "n = {n}: |G| = {}, |H_W| = {}, W has degree {} and genus {}",
            r.group_order, r.hw_order, r.index, r.genus
        );
    }
    Ok(())
}
