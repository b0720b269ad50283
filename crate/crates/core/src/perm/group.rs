use std::collections::VecDeque;
use std::sync::OnceLock;

use num_bigint::BigUint;

use super::{PermError, Permutation};

/// Orbit partition of `{0, …, domain_size-1}` under `gens`.
///
/// Each orbit is sorted ascending and orbits are listed by least element.
pub fn orbits(gens: &[Permutation], domain_size: usize) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; domain_size];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in 0..domain_size {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut orbit = vec![start];
        label[start] = id;
        let mut k = 0;
        while k < orbit.len() {
            let p = orbit[k];
            k += 1;
            for g in gens {
                let q = g.apply(p);
                if label[q] == usize::MAX {
                    label[q] = id;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// `|⟨gens⟩|` via a stabilizer chain.
pub fn group_order(gens: &[Permutation]) -> Result<BigUint, PermError> {
    match gens.first() {
        None => Ok(BigUint::from(1u32)),
        Some(g) => Ok(StabChain::new(g.degree(), gens)?.order()),
    }
}

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    /// Indices into `StabChain::strong` of generators fixing all earlier base points.
    gens: Vec<usize>,
    orbit: Vec<usize>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Permutation>>,
}

/// Base and strong generating set, built by deterministic Schreier–Sims.
///
/// New base points are always the smallest point moved by the element that
/// forces the extension, so the chain depends only on the generator list.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Permutation]) -> Result<Self, PermError> {
        for g in gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        let mut strong: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut chain = Self { degree, strong, levels: Vec::new() };
        let mut base: Vec<usize> = Vec::new();
        for g in &chain.strong {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.smallest_moved_point().expect("non-identity"));
            }
        }
        chain.levels = base
            .iter()
            .map(|&b| Level { base_point: b, gens: Vec::new(), orbit: Vec::new(), transversal: Vec::new() })
            .collect();
        for l in 0..chain.levels.len() {
            chain.rebuild_level(l);
        }
        chain.complete();
        Ok(chain)
    }

    fn rebuild_level(&mut self, l: usize) {
        let fixed: Vec<usize> = self.levels[..l].iter().map(|lv| lv.base_point).collect();
        let gens: Vec<usize> = (0..self.strong.len())
            .filter(|&i| fixed.iter().all(|&b| self.strong[i].apply(b) == b))
            .collect();
        let b = self.levels[l].base_point;
        let mut transversal: Vec<Option<Permutation>> = vec![None; self.degree];
        transversal[b] = Some(Permutation::identity(self.degree));
        let mut orbit = vec![b];
        let mut queue = VecDeque::from([b]);
        while let Some(p) = queue.pop_front() {
            for &gi in &gens {
                let g = &self.strong[gi];
                let q = g.apply(p);
                if transversal[q].is_none() {
                    let u = transversal[p].as_ref().unwrap().compose(g);
                    transversal[q] = Some(u);
                    orbit.push(q);
                    queue.push_back(q);
                }
            }
        }
        let level = &mut self.levels[l];
        level.gens = gens;
        level.orbit = orbit;
        level.transversal = transversal;
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` when it passed every level).
    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let beta = h.apply(level.base_point);
            match &level.transversal[beta] {
                Some(u) => h = h.compose(&u.inverse()),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let l = i as usize;
            let mut restart: Option<usize> = None;
            'scan: for &b in &self.levels[l].orbit.clone() {
                let gens = self.levels[l].gens.clone();
                for gi in gens {
                    let s = &self.strong[gi];
                    let level = &self.levels[l];
                    let bs = s.apply(b);
                    let ub = level.transversal[b].as_ref().unwrap();
                    let ubs = level.transversal[bs].as_ref().unwrap();
                    let h = ub.compose(s).compose(&ubs.inverse());
                    if h.is_identity() {
                        continue;
                    }
                    let (res, j) = self.strip(&h, l + 1);
                    if j < self.levels.len() || !res.is_identity() {
                        if j == self.levels.len() {
                            let bp = res.smallest_moved_point().expect("non-identity residue");
                            self.levels.push(Level {
                                base_point: bp,
                                gens: Vec::new(),
                                orbit: Vec::new(),
                                transversal: Vec::new(),
                            });
                        }
                        self.strong.push(res);
                        for m in (l + 1)..=j {
                            self.rebuild_level(m);
                        }
                        restart = Some(j);
                        break 'scan;
                    }
                }
            }
            match restart {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (res, j) = self.strip(g, 0);
        j == self.levels.len() && res.is_identity()
    }

    /// Every element, as products of transversal elements. Only for small groups.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &b in &level.orbit {
                let u = level.transversal[b].as_ref().unwrap();
                for g in &out {
                    next.push(g.compose(u));
                }
            }
            out = next;
        }
        out
    }
}

/// A permutation group given by generators, with its stabilizer chain computed
/// on first use.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        Self { degree: self.degree, generators: self.generators.clone(), chain }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        Ok(Self { degree, generators, chain: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        Self { degree, generators: Vec::new(), chain: OnceLock::new() }
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::transposition(n, 0, 1));
        }
        if n >= 3 {
            gens.push(Permutation::from_images((1..n).chain([0]).collect()).unwrap());
        }
        Self { degree: n, generators: gens, chain: OnceLock::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::new(self.degree, &self.generators).expect("degrees checked at construction"))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits(&self.generators, self.degree)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].compose(&g[j]) == g[j].compose(&g[i])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn closure(gens: &[Permutation], n: usize) -> usize {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let id = Permutation::identity(n);
        let mut queue = vec![id.clone()];
        seen.insert(id);
        while let Some(g) = queue.pop() {
            for s in gens {
                let h = g.compose(s);
                if seen.insert(h.clone()) {
                    queue.push(h);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn order_examples() {
        let s5 = [perm(5, &[&[0, 1]]), perm(5, &[&[0, 1, 2, 3, 4]])];
        assert_eq!(group_order(&s5).unwrap(), BigUint::from(120u32));
        let exceptional = [
            Permutation::from_one_based_cycles(6, &[vec![3, 5, 4, 6]]).unwrap(),
            Permutation::from_one_based_cycles(6, &[vec![1, 6, 2], vec![3, 4, 5]]).unwrap(),
        ];
        assert_eq!(group_order(&exceptional).unwrap(), BigUint::from(120u32));
        assert_eq!(group_order(&[Permutation::identity(4)]).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let gens = [Permutation::identity(3), Permutation::identity(4)];
        assert!(matches!(group_order(&gens), Err(PermError::DegreeMismatch { .. })));
    }

    #[test]
    fn large_symmetric_orders() {
        for n in 2..=11usize {
            let g = PermGroup::symmetric(n);
            let fact: BigUint = (1..=n).map(BigUint::from).product();
            assert_eq!(g.order(), fact, "S_{n}");
        }
    }

    #[test]
    fn membership_and_elements() {
        let a4 = [perm(4, &[&[0, 1, 2]]), perm(4, &[&[1, 2, 3]])];
        let chain = StabChain::new(4, &a4).unwrap();
        assert_eq!(chain.order(), BigUint::from(12u32));
        assert!(chain.contains(&perm(4, &[&[0, 1], &[2, 3]])));
        assert!(!chain.contains(&perm(4, &[&[0, 1]])));
        let elems: HashSet<_> = chain.elements().into_iter().collect();
        assert_eq!(elems.len(), 12);
        assert!(elems.iter().all(|g| g.is_even()));
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbits(&[Permutation::identity(3)], 3), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(orbits(&[perm(3, &[&[0, 1, 2]])], 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn random_transposition_groups_match_closure() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.random_range(2..=7);
            let k = rng.random_range(1..=4);
            let gens: Vec<Permutation> = (0..k)
                .map(|_| {
                    let a = rng.random_range(0..n);
                    let mut b = rng.random_range(0..n);
                    while b == a {
                        b = rng.random_range(0..n);
                    }
                    Permutation::transposition(n, a, b)
                })
                .collect();
            let expected = closure(&gens, n);
            assert_eq!(group_order(&gens).unwrap(), BigUint::from(expected));
        }
    }
}
