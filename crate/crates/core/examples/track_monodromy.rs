//! Numerical monodromy of a degree-3 map over P¹ and the fiber square it
//! induces over the elliptic curve `y² = 27x³ + 1`.

use monodromy::analytic::{track_monodromy, CoverModel, QPoly, RationalMap};
use monodromy::cover::{complementary_genus, fiber_square_over_p1};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    env_logger::init();
    let phi = RationalMap::from_ints(&[0, 0, 1], &[-4, 0, 0, 1])?;
    let model = CoverModel::new(phi, QPoly::from_ints(&[1, 0, 0, 27]), 128)?;
    let t = track_monodromy(&model)?;
    println!("base point {:.4}, refinement checked: {}", t.base_point, t.refinement_checked);
    for l in &t.loops {
        println!("  {:>4} {:?}: phi {:?} x {:?} ({} steps)", l.label, l.kind, l.phi_perm, l.x_perm, l.steps);
    }
    let z = fiber_square_over_p1(&t.rep_phi, &t.rep_x)?;
    println!("fiber square genera {:?}", z.genera());
    println!("complementary genus {}", complementary_genus(&t.rep_phi, &t.rep_x)?.genus);
    Ok(())
}
