use monodromy::cover::{
    complementary_genus, diagonal_component, pair_product, random_cover, random_generic_p1_pair, CoverError,
    RamificationCase,
};

#[test]
fn fiber_square_genus_laws() {
    for case in RamificationCase::ALL {
        for n in case.min_degree()..=7 {
            for seed in 0..10 {
                let rep = random_cover(n, case, seed).unwrap();
                let z = pair_product(&rep).unwrap();
                let d = diagonal_component(&z).unwrap();
                assert_eq!(z.components.len(), 2, "{case:?} n={n} seed={seed}");
                assert_eq!(z.components[d].genus, 2);
                assert_eq!(z.total_genus as usize, case.fiber_square_genus(n));
                assert_eq!(z.components[1 - d].genus as usize, case.off_diagonal_genus(n));
            }
        }
    }
}

#[test]
fn complementary_genus_is_one() {
    for n in [3usize, 5, 7, 9] {
        let mut passed = 0;
        for seed in 0..5 {
            let (phi, x) = random_generic_p1_pair(n, seed).unwrap();
            match complementary_genus(&phi, &x) {
                Ok(r) => {
                    assert_eq!(r.genus, 1, "n={n} seed={seed}");
                    assert_eq!(r.index, n * (n - 1));
                    passed += 1;
                }
                Err(CoverError::NonGenericGaloisGroup { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
        eprintln!("n={n}: {passed}/5 passed the gate");
    }
}
