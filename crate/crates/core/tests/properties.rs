use std::collections::HashSet;

use num_complex::Complex64;
use proptest::prelude::*;

use monodromy::clump::{clump_iterate, ClumpOptions, Correspondence, ProjPoint};
use monodromy::analytic::RationalMap;
use monodromy::cover::{
    genus_of, local_law_holds, local_law_prediction, tensor_perm, validate, BranchPoint, CoverError, MonodromyRep,
};
use monodromy::perm::{is_primitive, orbits, CycleType, PermGroup, Permutation};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

fn perms(n: usize, k: usize) -> impl Strategy<Value = Vec<Permutation>> {
    prop::collection::vec(perm(n), 1..=k)
}

/// Cycle type of `(i, j) ↦ (p(i), q(j))` by walking the pairs directly.
fn pair_cycle_type(p: &Permutation, q: &Permutation) -> CycleType {
    let (n, m) = (p.degree(), q.degree());
    let mut seen = vec![false; n * m];
    let mut parts = Vec::new();
    for start in 0..n * m {
        if seen[start] {
            continue;
        }
        let (mut i, mut j, mut len) = (start / m, start % m, 0);
        while !seen[i * m + j] {
            seen[i * m + j] = true;
            i = p.apply(i);
            j = q.apply(j);
            len += 1;
        }
        parts.push(len);
    }
    CycleType::new(parts)
}

fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    // restricted growth strings
    let mut out = Vec::new();
    let mut a = vec![0usize; n];
    loop {
        out.push(a.clone());
        let mut i = n;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let max = a[..i].iter().copied().max().unwrap_or(0);
            if a[i] <= max {
                a[i] += 1;
                for x in a.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// Exhaustive primitivity: no partition into blocks other than the trivial
/// ones is preserved by every generator.
fn primitive_by_partitions(gens: &[Permutation], n: usize) -> bool {
    for labels in set_partitions(n) {
        let blocks = labels.iter().copied().max().unwrap() + 1;
        if blocks == 1 || blocks == n {
            continue;
        }
        let preserved = gens.iter().all(|g| {
            (0..n).all(|x| (0..n).all(|y| labels[x] != labels[y] || labels[g.apply(x)] == labels[g.apply(y)]))
        });
        if preserved {
            return false;
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn conjugation_preserves_cycle_type_and_order(n in 2usize..9, seed in any::<u64>()) {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let gens: Vec<Permutation> = (0..3).map(|_| monodromy::cover::random_perm(n, &mut rng)).collect();
        let h = monodromy::cover::random_perm(n, &mut rng);
        let conj: Vec<Permutation> = gens.iter().map(|g| g.conjugate_by(&h)).collect();
        for (g, c) in gens.iter().zip(&conj) {
            prop_assert_eq!(g.cycle_type(), c.cycle_type());
        }
        prop_assert_eq!(PermGroup::new(n, gens).unwrap().order(), PermGroup::new(n, conj).unwrap().order());
    }

    #[test]
    fn orbits_partition_and_are_closed(gens in (1usize..10).prop_flat_map(|n| perms(n, 3))) {
        let n = gens[0].degree();
        let orbs = orbits(&gens, n);
        let mut seen = HashSet::new();
        for o in &orbs {
            for &x in o {
                prop_assert!(seen.insert(x));
                for g in &gens {
                    prop_assert!(o.contains(&g.apply(x)));
                }
            }
        }
        prop_assert_eq!(seen.len(), n);
    }

    #[test]
    fn primitivity_matches_exhaustive_partitions(gens in (2usize..=8).prop_flat_map(|n| perms(n, 2))) {
        let n = gens[0].degree();
        let g = PermGroup::new(n, gens.clone()).unwrap();
        if g.is_transitive() {
            prop_assert_eq!(is_primitive(&g).unwrap().is_primitive(), primitive_by_partitions(&gens, n));
        } else {
            prop_assert!(is_primitive(&g).is_err());
        }
    }

    #[test]
    fn pair_action_follows_gcd_lcm_law(p in (1usize..=10).prop_flat_map(perm), q in (1usize..=10).prop_flat_map(perm)) {
        let pq = tensor_perm(&[&p, &q]);
        prop_assert_eq!(pq.cycle_type(), pair_cycle_type(&p, &q));
        prop_assert_eq!(pq.cycle_type(), local_law_prediction(&p, &q));
        prop_assert!(local_law_holds(&p, &q, &pq));
    }

    #[test]
    fn odd_total_ramification_is_rejected(n in 3usize..8, seed in any::<u64>()) {
        // a single transposition over a genus-1 base has ramification 1
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let t = Permutation::transposition(n, 0, 1).conjugate_by(&monodromy::cover::random_perm(n, &mut rng));
        let a = Permutation::identity(n);
        let rep = MonodromyRep::new_unchecked(1, n, vec![a.clone(), a], vec![BranchPoint::new("p", t)]).unwrap();
        let is_parity_error = matches!(genus_of(&rep), Err(CoverError::NonIntegerGenus { .. }));
        prop_assert!(is_parity_error);
        prop_assert!(validate(&rep).is_err());
    }

    #[test]
    fn clumps_grow_monotonically_and_ignore_leg_order(re in -1.5f64..1.5, im in -1.5f64..1.5) {
        let left = RationalMap::from_ints(&[0, 0, 1], &[-4, 0, 0, 1]).unwrap();
        let right = RationalMap::from_ints(&[0, -9, 24, -16], &[-256, 0, 0, 256]).unwrap();
        let corr = Correspondence::new(left, right).unwrap();
        let start = ProjPoint::affine(Complex64::new(re, im));
        let mut prev: Option<monodromy::clump::PointCloud> = None;
        for budget in 1..=4 {
            let opts = ClumpOptions { budget, stop_on_certificate: false, ..Default::default() };
            let a = clump_iterate(&corr, start, &opts).unwrap();
            let b = clump_iterate(&corr.swapped(), start, &opts).unwrap();
            prop_assert!(a.sizes.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(a.cloud.same_set(&b.cloud));
            if let Some(p) = &prev {
                prop_assert!(p.is_subset_of(&a.cloud));
            }
            prev = Some(a.cloud);
        }
    }
}

/// Over a genus-1 base of degree 3 the commutator is even, so it can never
/// cancel a single transposition. Checked over all of `S₃ × S₃ × {transpositions}`.
#[test]
fn single_transposition_over_genus_one_is_impossible_in_degree_three() {
    let s3: Vec<Permutation> = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
        .iter()
        .map(|v| Permutation::from_images(v.to_vec()).unwrap())
        .collect();
    let transpositions: Vec<&Permutation> = s3.iter().filter(|p| p.cycle_type() == CycleType::new(vec![2, 1])).collect();
    assert_eq!(transpositions.len(), 3);
    let mut tried = 0;
    for a in &s3 {
        for b in &s3 {
            for t in &transpositions {
                let r = MonodromyRep::new(1, 3, vec![a.clone(), b.clone()], vec![BranchPoint::new("p", (*t).clone())]);
                assert!(matches!(r, Err(CoverError::RelationViolation { .. })));
                tried += 1;
            }
        }
    }
    assert_eq!(tried, 108);
}

#[test]
fn set_partition_oracle_counts_bell_numbers() {
    let bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140];
    for (n, &b) in bell.iter().enumerate().skip(1) {
        assert_eq!(set_partitions(n).len(), b);
    }
}
