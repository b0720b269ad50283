use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BranchPoint, CoverError, MonodromyRep, RamificationCase};
use crate::perm::{is_primitive, Permutation};

/// Rejection-sampling budget shared by the generators.
pub const SEARCH_BUDGET: u64 = 1_000_000;

/// Uniform element of `S_n`.
pub fn random_perm<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).expect("shuffle is a bijection")
}

/// `k` disjoint transpositions on random points.
fn random_involution<R: Rng>(n: usize, k: usize, rng: &mut R) -> Permutation {
    let mut pts: Vec<usize> = (0..n).collect();
    pts.shuffle(rng);
    let cycles: Vec<Vec<usize>> = (0..k).map(|i| vec![pts[2 * i], pts[2 * i + 1]]).collect();
    Permutation::from_cycles(n, &cycles).expect("disjoint")
}

fn random_cycle<R: Rng>(n: usize, len: usize, rng: &mut R) -> Permutation {
    let mut pts: Vec<usize> = (0..n).collect();
    pts.shuffle(rng);
    Permutation::from_cycles(n, &[pts[..len].to_vec()]).expect("distinct points")
}

/// A random `h` with `x^h = y` for the given permutations of equal cycle type,
/// so that `x.conjugate_by(h) == y`.
fn random_conjugator<R: Rng>(x: &Permutation, y: &Permutation, rng: &mut R) -> Permutation {
    let n = x.degree();
    let mut cx = x.cycles();
    let mut cy = y.cycles();
    cx.shuffle(rng);
    cy.shuffle(rng);
    cx.sort_by_key(|c| std::cmp::Reverse(c.len()));
    cy.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut images = vec![0; n];
    for (a, b) in cx.iter().zip(&cy) {
        debug_assert_eq!(a.len(), b.len());
        let shift = rng.random_range(0..a.len());
        for (k, &p) in a.iter().enumerate() {
            images[p] = b[(k + shift) % b.len()];
        }
    }
    Permutation::from_images(images).expect("cycle types agree")
}

/// Genus-2 cover of a genus-1 curve with the requested branch configuration.
///
/// Branch data is drawn first; handles `(a, b)` are sampled uniformly until
/// `[a, b]` has the cycle type forced by the relation, then conjugated onto
/// the exact target. Intransitive and imprimitive outcomes are rejected, so
/// the cover does not factor through an intermediate curve.
pub fn random_cover(n: usize, case: RamificationCase, seed: u64) -> Result<MonodromyRep, CoverError> {
    if n < case.min_degree() {
        return Err(CoverError::Precondition(format!("{case:?} needs degree at least {}, got {n}", case.min_degree())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let branch = match case {
        RamificationCase::CaseI => {
            let t1 = random_involution(n, 1, &mut rng);
            let mut t2 = random_involution(n, 1, &mut rng);
            while t2 == t1 {
                t2 = random_involution(n, 1, &mut rng);
            }
            vec![BranchPoint::new("x1", t1), BranchPoint::new("x2", t2)]
        }
        RamificationCase::CaseII => vec![BranchPoint::new("x0", random_involution(n, 2, &mut rng))],
        RamificationCase::CaseIII => vec![BranchPoint::new("x0", random_cycle(n, 3, &mut rng))],
    };
    let target = branch.iter().fold(Permutation::identity(n), |acc, b| acc.compose(&b.perm)).inverse();
    let target_type = target.cycle_type();
    for _ in 0..SEARCH_BUDGET {
        let a = random_perm(n, &mut rng);
        let b = random_perm(n, &mut rng);
        let c = Permutation::commutator(&a, &b);
        if c.cycle_type() != target_type {
            continue;
        }
        let h = random_conjugator(&c, &target, &mut rng);
        let rep = MonodromyRep::new(1, n, vec![a.conjugate_by(&h), b.conjugate_by(&h)], branch.clone())?;
        let group = rep.group();
        if !group.is_transitive() || !is_primitive(&group)?.is_primitive() {
            continue;
        }
        return Ok(rep);
    }
    Err(CoverError::SearchExhausted { trials: SEARCH_BUDGET })
}

/// Generic data `(φ, x)` over P¹ for odd `n`: `φ` has three branch points of
/// type `[2^{(n-1)/2}, 1]` and one of type `[2^{(n-3)/2}, 1^3]` over the
/// branch points `e₁…e₄` of `x`, and a single transposition over `x₀`. The
/// group of `φ` is required to be `S_n`.
pub fn random_generic_p1_pair(n: usize, seed: u64) -> Result<(MonodromyRep, MonodromyRep), CoverError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(CoverError::Precondition(format!("generic data needs odd n >= 3, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = (n - 1) / 2;
    let full: BigUint = (1..=n).map(BigUint::from).product();
    let mut transpositions: Vec<Permutation> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).map(|(a, b)| Permutation::transposition(n, a, b)).collect();
    for _ in 0..SEARCH_BUDGET {
        let s: Vec<Permutation> = (0..3).map(|_| random_involution(n, half, &mut rng)).collect();
        let prod_inv = s[0].compose(&s[1]).compose(&s[2]).inverse();
        transpositions.shuffle(&mut rng);
        for tau in &transpositions {
            let s4 = prod_inv.compose(tau);
            let ct = s4.cycle_type();
            if ct.ramification() != half - 1 || ct.parts().iter().any(|&p| p > 2) {
                continue;
            }
            let rep_phi = MonodromyRep::over_p1(
                n,
                vec![
                    ("e1", s[0].clone()),
                    ("e2", s[1].clone()),
                    ("e3", s[2].clone()),
                    ("e4", s4),
                    ("x0", tau.clone()),
                ],
            )?;
            if rep_phi.group().order() != full {
                break;
            }
            let t = Permutation::transposition(2, 0, 1);
            let rep_x = MonodromyRep::over_p1(
                2,
                vec![("e1", t.clone()), ("e2", t.clone()), ("e3", t.clone()), ("e4", t)],
            )?;
            return Ok((rep_phi, rep_x));
        }
    }
    Err(CoverError::SearchExhausted { trials: SEARCH_BUDGET })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{classify_galois, classify_ramification, rh_genus, GaloisClass};

    #[test]
    fn each_case_has_its_shape() {
        for case in RamificationCase::ALL {
            for n in case.min_degree()..=6 {
                let rep = random_cover(n, case, 3).unwrap();
                assert_eq!(rh_genus(&rep).unwrap(), 2);
                assert_eq!(classify_ramification(&rep).unwrap(), case);
            }
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let a = random_cover(5, RamificationCase::CaseIII, 42).unwrap();
        let b = random_cover(5, RamificationCase::CaseIII, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn case_two_needs_four_points() {
        assert!(matches!(random_cover(3, RamificationCase::CaseII, 0), Err(CoverError::Precondition(_))));
    }

    #[test]
    fn case_one_is_symmetric() {
        let rep = random_cover(7, RamificationCase::CaseI, 9).unwrap();
        assert_eq!(classify_galois(&rep).unwrap(), GaloisClass::FullSymmetric);
    }

    #[test]
    fn generic_pair_shape() {
        for n in [3, 5, 7] {
            let (phi, x) = random_generic_p1_pair(n, 1).unwrap();
            assert_eq!(rh_genus(&phi).unwrap(), 0);
            assert_eq!(rh_genus(&x).unwrap(), 1);
            assert_eq!(phi.branch().len(), if n == 3 { 4 } else { 5 });
        }
    }
}
