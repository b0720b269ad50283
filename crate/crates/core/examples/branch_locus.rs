//! Exact discriminant and numerical branch locus of a cover model.

use monodromy::analytic::{branch_locus, t_discriminant, CoverModel, QPoly, RationalMap, DEFAULT_PRECISION};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let phi = RationalMap::from_ints(&[0, 0, 1], &[-4, 0, 0, 1])?;
    let f = QPoly::from_ints(&[1, 0, 0, 27]);
    println!("discriminant in t: {}", t_discriminant(phi.num(), phi.den()));
    let model = CoverModel::new(phi, f, DEFAULT_PRECISION)?;
    for p in branch_locus(&model)?.points {
        let at = match p.value {
            Some(z) => format!("{z:.6}"),
            None => "inf".into(),
        };
        println!("{at}: phi {}, x {}", p.phi_profile, p.x_profile);
    }
    Ok(())
}
