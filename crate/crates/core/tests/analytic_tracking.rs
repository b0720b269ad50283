use std::time::Instant;

use monodromy::analytic::{branch_locus, track_monodromy, CoverModel, CoverModelJson};
use monodromy::cover::{build_base_p1_rep, complementary_genus, fiber_square_over_p1, rh_genus};
use monodromy::perm::CycleType;

fn example_model() -> CoverModel {
    let text = include_str!("../fixtures/t2_over_t3_minus_4.json");
    let j: CoverModelJson = serde_json::from_str(text).unwrap();
    CoverModel::from_json(&j).unwrap()
}

#[test]
fn example_locus() {
    let locus = branch_locus(&example_model()).unwrap();
    let phi: Vec<_> = locus.points.iter().filter(|p| p.branches_phi()).collect();
    assert_eq!(phi.len(), 4);
    for p in &phi {
        let v = p.value.unwrap();
        // oracle: x = 0 or 27x³ + 1 = 0
        assert!(v.norm() < 1e-12 || (v * v * v * 27.0 + 1.0).norm() < 1e-10, "{v}");
        assert_eq!(p.phi_profile, CycleType::new(vec![2, 1]));
    }
    let x: Vec<_> = locus.points.iter().filter(|p| p.branches_x()).collect();
    assert_eq!(x.len(), 4);
    assert!(x.last().unwrap().is_infinite());
}

#[test]
fn example_monodromy_end_to_end() {
    let t = Instant::now();
    let model = example_model();
    let res = track_monodromy(&model).unwrap();
    eprintln!("tracked in {:?}, base {}", t.elapsed(), res.base_point);
    assert!(res.refinement_checked);
    let phi = &res.rep_phi;
    assert_eq!(phi.degree(), 3);
    assert_eq!(phi.branch().len(), 4);
    assert!(phi.branch().iter().all(|b| b.perm.cycle_type() == CycleType::new(vec![2, 1])));
    assert!(phi.relation_product().is_identity());
    assert_eq!(rh_genus(phi).unwrap(), 0);
    assert_eq!(rh_genus(&res.rep_x).unwrap(), 1);

    let y = build_base_p1_rep(phi, &res.rep_x).unwrap();
    assert_eq!(y.group().order().to_string(), "12");
    let z = fiber_square_over_p1(phi, &res.rep_x).unwrap();
    let mut g = z.genera();
    g.sort();
    assert_eq!(g, vec![2, 4]);
    for l in &res.loops {
        eprintln!("{} r={:.4} steps={} rejected={} corr={:e}", l.label, l.radius, l.steps, l.rejected, l.max_correction);
    }
    let comp = complementary_genus(phi, &res.rep_x).unwrap();
    assert_eq!(comp.genus, 1);
}
