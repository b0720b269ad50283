use std::collections::HashMap;

use num_bigint::BigUint;
use serde::Serialize;

use super::product::tensor_perm;
use super::{rh_genus, tensor_product, BranchPoint, CoverError, MonodromyRep};
use crate::perm::{orbits, Permutation, StabChain};

/// The cover `Y → P¹` obtained as the fiber product of `φ: P¹ → P¹` and the
/// double cover `x`. Point `(i, s)` has index `2i + s`.
pub fn build_base_p1_rep(rep_phi: &MonodromyRep, rep_x: &MonodromyRep) -> Result<MonodromyRep, CoverError> {
    if rep_phi.base_genus() != 0 || rep_x.base_genus() != 0 {
        return Err(CoverError::Precondition("both factors must be covers of P1".into()));
    }
    if rep_x.degree() != 2 {
        return Err(CoverError::Precondition(format!("x must have degree 2, got {}", rep_x.degree())));
    }
    tensor_product(&[rep_phi, rep_x])
}

/// Graph subgroup `{(σ, a(σ))}` of `S₂ × S_{n-2}` inside `S_n × Z/2`, where
/// `a(σ)` flips the sign exactly when `σ` swaps the first two points.
#[derive(Clone, Debug)]
pub struct HwSubgroup {
    pub n: usize,
    /// Generators as `(σ, flips sign)`.
    pub pairs: Vec<(Permutation, bool)>,
    /// The same generators acting on `2n` points, `(i, s) ↦ (σ(i), s ⊕ ε)`.
    pub embedded: Vec<Permutation>,
}

impl HwSubgroup {
    pub fn embed(sigma: &Permutation, flip: bool) -> Permutation {
        let eps = if flip { Permutation::transposition(2, 0, 1) } else { Permutation::identity(2) };
        tensor_perm(&[sigma, &eps])
    }

    pub fn contains(&self, sigma: &Permutation, flip: bool) -> bool {
        let swaps = sigma.apply(0) == 1 && sigma.apply(1) == 0;
        let fixes = sigma.apply(0) == 0 && sigma.apply(1) == 1;
        sigma.degree() == self.n && (swaps || fixes) && flip == swaps
    }

    pub fn order(&self) -> BigUint {
        StabChain::new(2 * self.n, &self.embedded).expect("uniform degree").order()
    }
}

pub fn build_hw(n: usize) -> Result<HwSubgroup, CoverError> {
    if n < 3 {
        return Err(CoverError::Precondition(format!("H_W needs n >= 3, got {n}")));
    }
    let mut pairs = vec![(Permutation::transposition(n, 0, 1), true)];
    for k in 2..n - 1 {
        pairs.push((Permutation::transposition(n, k, k + 1), false));
    }
    let embedded = pairs.iter().map(|(s, f)| HwSubgroup::embed(s, *f)).collect();
    Ok(HwSubgroup { n, pairs, embedded })
}

/// Action of the monodromy group on right cosets `Hg` of `subgroup`.
///
/// Cosets are enumerated by breadth-first search from `H`. Equality
/// `Hg₁ = Hg₂` is tested as `g₁g₂⁻¹ ∈ H` through a stabilizer chain of `H`;
/// the images of the `H`-orbits under `g` are a coset invariant used to
/// bucket candidates first.
pub fn coset_action_cover(rep: &MonodromyRep, subgroup: &[Permutation]) -> Result<MonodromyRep, CoverError> {
    let deg = rep.degree();
    let group = rep.group();
    for h in subgroup {
        if h.degree() != deg || !group.contains(h) {
            return Err(CoverError::NotASubgroup(h.to_string()));
        }
    }
    let h_chain = StabChain::new(deg, subgroup)?;
    let h_orbits = orbits(subgroup, deg);
    let key = |g: &Permutation| -> Vec<Vec<usize>> {
        h_orbits
            .iter()
            .map(|o| {
                let mut img: Vec<usize> = o.iter().map(|&x| g.apply(x)).collect();
                img.sort_unstable();
                img
            })
            .collect()
    };

    let gens = rep.generators();
    let mut reps: Vec<Permutation> = vec![Permutation::identity(deg)];
    let mut buckets: HashMap<Vec<Vec<usize>>, Vec<usize>> = HashMap::new();
    buckets.entry(key(&reps[0])).or_default().push(0);
    let mut table: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
    let mut c = 0;
    while c < reps.len() {
        for (s, g) in gens.iter().enumerate() {
            let x = reps[c].compose(g);
            let k = key(&x);
            let bucket = buckets.entry(k).or_default();
            let found = bucket.iter().copied().find(|&j| h_chain.contains(&x.compose(&reps[j].inverse())));
            let j = match found {
                Some(j) => j,
                None => {
                    let j = reps.len();
                    bucket.push(j);
                    reps.push(x);
                    j
                }
            };
            table[s].push(j);
        }
        c += 1;
    }
    let index = reps.len();
    if BigUint::from(index) * h_chain.order() != group.order() {
        return Err(CoverError::NotASubgroup("coset count does not match the group order".into()));
    }
    let mut perms = table.into_iter().map(|images| Permutation::from_images(images).expect("coset action is a bijection"));
    let handles: Vec<Permutation> = perms.by_ref().take(rep.handles().len()).collect();
    let branch = rep
        .branch()
        .iter()
        .zip(perms)
        .map(|(b, p)| BranchPoint { label: b.label.clone(), perm: p, position: b.position })
        .collect();
    MonodromyRep::new(rep.base_genus(), index, handles, branch)
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplementaryReport {
    pub n: usize,
    pub y_degree: usize,
    pub group_order: String,
    pub hw_order: String,
    pub index: usize,
    pub genus: i64,
    pub y_rep: MonodromyRep,
    pub w_rep: MonodromyRep,
}

/// Genus of the complementary curve, from the coset action of `H_W` on the
/// Galois group of `Y → P¹`. Refuses groups other than `S_n × Z/2`.
pub fn complementary_genus(rep_phi: &MonodromyRep, rep_x: &MonodromyRep) -> Result<ComplementaryReport, CoverError> {
    let n = rep_phi.degree();
    let y = build_base_p1_rep(rep_phi, rep_x)?;
    let order = y.group().order();
    let expected: BigUint = BigUint::from(2u32) * (1..=n).map(BigUint::from).product::<BigUint>();
    if order != expected {
        return Err(CoverError::NonGenericGaloisGroup { n, order: order.to_string(), expected: expected.to_string() });
    }
    let hw = build_hw(n)?;
    let w = coset_action_cover(&y, &hw.embedded)?;
    let genus = rh_genus(&w)?;
    Ok(ComplementaryReport {
        n,
        y_degree: y.degree(),
        group_order: order.to_string(),
        hw_order: hw.order().to_string(),
        index: w.degree(),
        genus,
        y_rep: y,
        w_rep: w,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_based(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_one_based_cycles(n, &cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn hw_orders_and_membership() {
        let h3 = build_hw(3).unwrap();
        assert_eq!(h3.order(), BigUint::from(2u32));
        let h7 = build_hw(7).unwrap();
        assert_eq!(h7.order(), BigUint::from(240u32));
        assert!(h7.contains(&one_based(7, &[&[1, 2], &[3, 4]]), true));
        assert!(!h7.contains(&one_based(7, &[&[1, 2]]), false));
        assert!(!h7.contains(&one_based(7, &[&[1, 3]]), false));
        assert!(matches!(build_hw(2), Err(CoverError::Precondition(_))));
    }

    #[test]
    fn whole_group_and_trivial_subgroup() {
        let t = Permutation::transposition(3, 0, 1);
        let u = Permutation::transposition(3, 1, 2);
        let rep = MonodromyRep::over_p1(3, vec![("a", t.clone()), ("b", u.clone()), ("c", u), ("d", t)]).unwrap();
        let whole = coset_action_cover(&rep, &rep.generators()).unwrap();
        assert_eq!(whole.degree(), 1);
        assert_eq!(rh_genus(&whole).unwrap(), 0);
        let regular = coset_action_cover(&rep, &[]).unwrap();
        assert_eq!(regular.degree(), 6);
        assert!(regular.is_connected());
    }

    #[test]
    fn foreign_generator_is_rejected() {
        let c = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let rep = MonodromyRep::over_p1(3, vec![("a", c.clone()), ("b", c.clone()), ("c", c)]).unwrap();
        let e = coset_action_cover(&rep, &[Permutation::transposition(3, 0, 1)]);
        assert!(matches!(e, Err(CoverError::NotASubgroup(_))));
    }
}
