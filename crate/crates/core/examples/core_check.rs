//! Clump iteration for a few correspondences `P¹ ← P¹ → P¹`.

use monodromy::analytic::RationalMap;
use monodromy::clump::{clump_iterate, core_verdict, ClumpOptions, Correspondence, ProjPoint};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cubic = Correspondence::new(
        RationalMap::from_ints(&[0, 0, 1], &[-4, 0, 0, 1])?,
        RationalMap::from_ints(&[0, -9, 24, -16], &[-256, 0, 0, 256])?,
    )?;
    let powers = Correspondence::new(RationalMap::from_ints(&[0, 0, 1], &[1])?, RationalMap::from_ints(&[0, 0, 0, 1], &[1])?)?;
    let opts = ClumpOptions { stop_on_certificate: false, ..Default::default() };

    for (name, corr, start) in [("cubic", &cubic, "2"), ("powers", &powers, "0.7+0.2i")] {
        let r = clump_iterate(corr, ProjPoint::parse(start)?, &opts)?;
        println!("{name} from {start}: sizes {:?}, {:?}", r.sizes, r.verdict);
        let v = core_verdict(corr, 8, &ClumpOptions::default(), 5)?;
        println!("  over 8 random starts: {:?}", v.verdict);
    }
    Ok(())
}
