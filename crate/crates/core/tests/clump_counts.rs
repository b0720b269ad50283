use std::time::Instant;

use monodromy::clump::{clump_iterate, ClumpOptions, Correspondence, CorrespondenceJson, ProjPoint, Verdict};

fn load(text: &str) -> Correspondence {
    let j: CorrespondenceJson = serde_json::from_str(text).unwrap();
    Correspondence::from_json(&j).unwrap()
}

#[test]
fn degree3_counts() {
    let corr = load(include_str!("../fixtures/degree3_correspondence.json"));
    for tol in [1e-7, 1e-8, 1e-9] {
        let t = Instant::now();
        let opts = ClumpOptions { tolerance: tol, budget: 9, stop_on_certificate: false, ..Default::default() };
        let r = clump_iterate(&corr, ProjPoint::parse("2").unwrap(), &opts).unwrap();
        eprintln!("tol {tol:e}: {:?} {:?} in {:?} margins {:?}", r.sizes, r.verdict, t.elapsed(), r.margins);
        assert_eq!(r.verdict, Verdict::NoCoreCertified);
        assert_eq!(r.certified_at, Some(2));
    }
}

#[test]
fn sizes_respect_the_fiber_growth_bound() {
    // a point entering through one leg's fiber adds at most two new points
    // through the other leg, so #F_i ≤ 1 + 4(2^i − 1) for two cubic legs
    let corr = load(include_str!("../fixtures/degree3_correspondence.json"));
    let opts = ClumpOptions { budget: 9, stop_on_certificate: false, ..Default::default() };
    let r = clump_iterate(&corr, ProjPoint::parse("2").unwrap(), &opts).unwrap();
    for (i, &s) in r.sizes.iter().enumerate() {
        assert!(s <= (1usize << (i + 2)) - 3, "#F_{i} = {s}");
    }
}

#[test]
fn controls() {
    let pm = load(include_str!("../fixtures/power_maps.json"));
    let opts = ClumpOptions { budget: 20, ..Default::default() };
    let r = clump_iterate(&pm, ProjPoint::parse("0.7+0.2i").unwrap(), &opts).unwrap();
    eprintln!("{:?} {:?} {:?}", r.sizes, r.verdict, r.saturation);
    assert_eq!(r.verdict, Verdict::BoundedAtBudget);
    let sq = load(include_str!("../fixtures/shifted_squares.json"));
    let opts = ClumpOptions { budget: 10, stop_on_certificate: false, ..Default::default() };
    let r = clump_iterate(&sq, ProjPoint::parse("0.3+0.1i").unwrap(), &opts).unwrap();
    eprintln!("{:?} {:?}", r.sizes, r.verdict);
    let fixed = clump_iterate(&pm, ProjPoint::parse("0").unwrap(), &opts).unwrap();
    eprintln!("{:?} {:?}", fixed.sizes, fixed.verdict);
}
