use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::{genus_of, BranchPoint, CoverError, MonodromyRep};
use crate::perm::{CycleType, Permutation};

/// One connected component of a (possibly disconnected) cover.
#[derive(Clone, Debug, Serialize)]
pub struct Component {
    /// Points as 1-based coordinate tuples, sorted.
    pub orbit: Vec<Vec<usize>>,
    #[serde(skip)]
    pub points: Vec<usize>,
    pub degree: usize,
    pub genus: i64,
    pub rep: MonodromyRep,
}

#[derive(Clone, Debug, Serialize)]
pub struct RamificationProfile {
    pub label: String,
    /// Cycle type on each component, in component order.
    pub per_component: Vec<CycleType>,
}

/// How a source cover sits inside a product as its diagonal.
#[derive(Clone, Debug)]
pub struct DiagonalEmbedding {
    /// `embedding[i]` is the product point corresponding to source point `i`.
    pub embedding: Vec<usize>,
    pub source: MonodromyRep,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverAnalysis {
    pub degree: usize,
    /// Mixed-radix shape of the point set, first factor most significant.
    pub factor_degrees: Vec<usize>,
    pub components: Vec<Component>,
    pub total_genus: i64,
    pub ramification_profiles: Vec<RamificationProfile>,
    #[serde(skip)]
    pub diagonal: Option<DiagonalEmbedding>,
}

impl CoverAnalysis {
    pub fn genera(&self) -> Vec<i64> {
        self.components.iter().map(|c| c.genus).collect()
    }

    pub fn component_of(&self, point: usize) -> Option<usize> {
        self.components.iter().position(|c| c.points.binary_search(&point).is_ok())
    }
}

fn decode(mut index: usize, shape: &[usize]) -> Vec<usize> {
    let mut out = vec![0; shape.len()];
    for (k, &d) in shape.iter().enumerate().rev() {
        out[k] = index % d;
        index /= d;
    }
    out
}

fn encode(coords: &[usize], shape: &[usize]) -> usize {
    coords.iter().zip(shape).fold(0, |acc, (&c, &d)| acc * d + c)
}

/// Product action of `perms` on the mixed-radix product of their domains.
pub fn tensor_perm(perms: &[&Permutation]) -> Permutation {
    let shape: Vec<usize> = perms.iter().map(|p| p.degree()).collect();
    let total: usize = shape.iter().product();
    let images = (0..total)
        .map(|i| {
            let c = decode(i, &shape);
            let img: Vec<usize> = c.iter().zip(perms).map(|(&x, p)| p.apply(x)).collect();
            encode(&img, &shape)
        })
        .collect();
    Permutation::from_images(images).expect("product of bijections")
}

/// Merged label order: a linear extension of every rep's label order.
fn merge_labels(reps: &[&MonodromyRep]) -> Result<Vec<String>, CoverError> {
    let lists: Vec<Vec<&str>> = reps.iter().map(|r| r.labels()).collect();
    if lists.windows(2).all(|w| w[0] == w[1]) {
        return Ok(lists[0].iter().map(|s| s.to_string()).collect());
    }
    let mut order: Vec<&str> = Vec::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    for list in &lists {
        let unique: BTreeSet<&str> = list.iter().copied().collect();
        if unique.len() != list.len() {
            return Err(CoverError::BranchLabelMismatch("repeated label within one rep".into()));
        }
        for &l in list {
            if !index.contains_key(l) {
                index.insert(l, order.len());
                order.push(l);
            }
        }
    }
    let m = order.len();
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m];
    let mut indeg = vec![0usize; m];
    for list in &lists {
        for w in list.windows(2) {
            let (a, b) = (index[w[0]], index[w[1]]);
            if succ[a].insert(b) {
                indeg[b] += 1;
            }
        }
    }
    let mut ready: BTreeSet<usize> = (0..m).filter(|&i| indeg[i] == 0).collect();
    let mut out = Vec::with_capacity(m);
    while let Some(&i) = ready.iter().next() {
        ready.remove(&i);
        out.push(order[i].to_string());
        for &j in &succ[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                ready.insert(j);
            }
        }
    }
    if out.len() != m {
        return Err(CoverError::BranchLabelMismatch("label orders are contradictory".into()));
    }
    Ok(out)
}

/// Fiber product of covers of the same base, over shared branch labels.
///
/// A label missing from a factor contributes the identity there. Handles are
/// paired position by position, so all factors must use the same handle basis.
pub fn tensor_product(reps: &[&MonodromyRep]) -> Result<MonodromyRep, CoverError> {
    let first = reps.first().ok_or_else(|| CoverError::Precondition("empty tensor product".into()))?;
    let g = first.base_genus();
    if let Some(r) = reps.iter().find(|r| r.base_genus() != g) {
        return Err(CoverError::Precondition(format!(
            "factors live over bases of genus {g} and {}",
            r.base_genus()
        )));
    }
    let degree: usize = reps.iter().map(|r| r.degree()).product();
    let handles = (0..2 * g)
        .map(|k| tensor_perm(&reps.iter().map(|r| &r.handles()[k]).collect::<Vec<_>>()))
        .collect();
    let labels = merge_labels(reps)?;
    let ids: Vec<Permutation> = reps.iter().map(|r| Permutation::identity(r.degree())).collect();
    let same_lists = reps.windows(2).all(|w| w[0].labels() == w[1].labels());
    let branch = labels
        .iter()
        .enumerate()
        .map(|(k, label)| {
            let perms: Vec<&Permutation> = reps
                .iter()
                .zip(&ids)
                .map(|(r, id)| if same_lists { &r.branch()[k].perm } else { r.branch_perm(label).unwrap_or(id) })
                .collect();
            let position = reps.iter().find_map(|r| r.branch().iter().find(|b| &b.label == label).and_then(|b| b.position));
            BranchPoint { label: label.clone(), perm: tensor_perm(&perms), position }
        })
        .collect();
    MonodromyRep::new(g, degree, handles, branch)
}

/// Splits a rep into connected components with their genera.
pub fn analyze(rep: &MonodromyRep) -> Result<CoverAnalysis, CoverError> {
    analyze_shaped(rep, vec![rep.degree()])
}

fn analyze_shaped(rep: &MonodromyRep, shape: Vec<usize>) -> Result<CoverAnalysis, CoverError> {
    let orbits = rep.orbits();
    let components = orbits
        .into_par_iter()
        .map(|points| {
            let mut local = vec![usize::MAX; rep.degree()];
            for (k, &p) in points.iter().enumerate() {
                local[p] = k;
            }
            let d = points.len();
            let sub = rep.map_perms(d, |g| {
                Permutation::from_images(points.iter().map(|&p| local[g.apply(p)]).collect())
                    .expect("orbit is invariant")
            })?;
            let genus = genus_of(&sub)?;
            let orbit = points.iter().map(|&p| decode(p, &shape).into_iter().map(|c| c + 1).collect()).collect();
            Ok(Component { orbit, points, degree: d, genus, rep: sub })
        })
        .collect::<Result<Vec<_>, CoverError>>()?;
    let ramification_profiles = rep
        .branch()
        .iter()
        .map(|b| RamificationProfile {
            label: b.label.clone(),
            per_component: components
                .iter()
                .map(|c| c.rep.branch_perm(&b.label).map_or_else(|| CycleType::new(vec![1; c.degree]), |p| p.cycle_type()))
                .collect(),
        })
        .collect();
    let total_genus = components.iter().map(|c| c.genus).sum();
    Ok(CoverAnalysis {
        degree: rep.degree(),
        factor_degrees: shape,
        components,
        total_genus,
        ramification_profiles,
        diagonal: None,
    })
}

/// Cycle type of `p × q` predicted from the cycle types of `p` and `q`:
/// an `m`-cycle against a `k`-cycle gives `gcd(m,k)` cycles of length `lcm(m,k)`.
pub fn local_law_prediction(p: &Permutation, q: &Permutation) -> CycleType {
    let mut parts = Vec::new();
    for &m in p.cycle_type().parts() {
        for &k in q.cycle_type().parts() {
            let g = num_integer::gcd(m, k);
            parts.extend(std::iter::repeat_n(m * k / g, g));
        }
    }
    CycleType::new(parts)
}

/// Checks `p × q` against the gcd/lcm law cycle by cycle: every cycle of the
/// product lies over one pair of cycles `(C, D)` and has length `lcm(|C|,|D|)`,
/// and there are exactly `gcd(|C|,|D|)` of them.
pub fn local_law_holds(p: &Permutation, q: &Permutation, pq: &Permutation) -> bool {
    let cp = p.cycles();
    let cq = q.cycles();
    let mut which_p = vec![0; p.degree()];
    for (k, c) in cp.iter().enumerate() {
        for &x in c {
            which_p[x] = k;
        }
    }
    let mut which_q = vec![0; q.degree()];
    for (k, c) in cq.iter().enumerate() {
        for &x in c {
            which_q[x] = k;
        }
    }
    let mut count: HashMap<(usize, usize), usize> = HashMap::new();
    let m = q.degree();
    for cycle in pq.cycles() {
        let (i, j) = (cycle[0] / m, cycle[0] % m);
        let key = (which_p[i], which_q[j]);
        let (a, b) = (cp[key.0].len(), cq[key.1].len());
        if cycle.len() != num_integer::lcm(a, b) {
            return false;
        }
        if cycle.iter().any(|&x| which_p[x / m] != key.0 || which_q[x % m] != key.1) {
            return false;
        }
        *count.entry(key).or_default() += 1;
    }
    count.len() == cp.len() * cq.len()
        && count.iter().all(|(&(a, b), &c)| c == num_integer::gcd(cp[a].len(), cq[b].len()))
}

/// The fiber square `Y ×_X Y` of a connected cover `Y → X`.
pub fn pair_product(rep: &MonodromyRep) -> Result<CoverAnalysis, CoverError> {
    let components = rep.orbits().len();
    if components != 1 {
        return Err(CoverError::Disconnected { components });
    }
    let n = rep.degree();
    let z = tensor_product(&[rep, rep])?;
    for (b, zb) in rep.branch().iter().zip(z.branch()) {
        if !local_law_holds(&b.perm, &b.perm, &zb.perm) {
            return Err(CoverError::LocalLawViolation { label: b.label.clone() });
        }
    }
    let mut analysis = analyze_shaped(&z, vec![n, n])?;
    analysis.diagonal = Some(DiagonalEmbedding { embedding: (0..n).map(|i| i * n + i).collect(), source: rep.clone() });
    Ok(analysis)
}

/// Fiber square of `Y → X` when `Y` is presented as the product of
/// `φ: P¹ → P¹` and the double cover `x: X → P¹`. Points are `(t₁, t₂, s)`
/// and the diagonal is `t₁ = t₂`.
pub fn fiber_square_over_p1(rep_phi: &MonodromyRep, rep_x: &MonodromyRep) -> Result<CoverAnalysis, CoverError> {
    let n = rep_phi.degree();
    let y = tensor_product(&[rep_phi, rep_x])?;
    let z = tensor_product(&[rep_phi, rep_phi, rep_x])?;
    let mut analysis = analyze_shaped(&z, vec![n, n, 2])?;
    let embedding = (0..2 * n).map(|p| (p / 2 * n + p / 2) * 2 + p % 2).collect();
    analysis.diagonal = Some(DiagonalEmbedding { embedding, source: y });
    Ok(analysis)
}

/// Index of the diagonal component, after checking that it restricts to the
/// source cover exactly under the diagonal embedding.
pub fn diagonal_component(analysis: &CoverAnalysis) -> Result<usize, CoverError> {
    let diag = analysis
        .diagonal
        .as_ref()
        .ok_or_else(|| CoverError::Precondition("analysis does not come from a fiber square".into()))?;
    let idx = analysis
        .component_of(diag.embedding[0])
        .ok_or_else(|| CoverError::DiagonalNotInvariant("diagonal point missing".into()))?;
    let comp = &analysis.components[idx];
    if comp.degree != diag.source.degree() {
        return Err(CoverError::DiagonalNotInvariant(format!(
            "component has degree {}, source has degree {}",
            comp.degree,
            diag.source.degree()
        )));
    }
    let mut local = Vec::with_capacity(diag.embedding.len());
    for &p in &diag.embedding {
        match comp.points.binary_search(&p) {
            Ok(k) => local.push(k),
            Err(_) => return Err(CoverError::DiagonalNotInvariant("diagonal spans several components".into())),
        }
    }
    let relabel = |g: &Permutation| -> Permutation {
        let mut images = vec![0; g.degree()];
        for (i, &li) in local.iter().enumerate() {
            images[li] = local[g.apply(i)];
        }
        Permutation::from_images(images).expect("relabeling")
    };
    let src = &diag.source;
    let handles_ok = src.handles().iter().zip(comp.rep.handles()).all(|(h, ch)| relabel(h) == *ch);
    let id = Permutation::identity(comp.degree);
    let mut labels: Vec<&str> = src.labels();
    labels.extend(comp.rep.labels());
    let branch_ok = labels.iter().all(|l| {
        let s = src.branch_perm(l).map_or_else(|| id.clone(), relabel);
        let c = comp.rep.branch_perm(l).unwrap_or(&id);
        s == *c
    });
    if handles_ok && branch_ok {
        Ok(idx)
    } else {
        Err(CoverError::DiagonalNotInvariant("restricted monodromy differs".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_law_examples() {
        let t = Permutation::transposition(2, 0, 1);
        assert_eq!(local_law_prediction(&t, &t).parts(), &[2, 2]);
        let c = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(local_law_prediction(&t, &c).parts(), &[6]);
        let tc = tensor_perm(&[&t, &c]);
        assert_eq!(tc.cycle_type().parts(), &[6]);
        assert!(local_law_holds(&t, &c, &tc));
    }

    #[test]
    fn label_merge_is_a_linear_extension() {
        let t = Permutation::transposition(2, 0, 1);
        let a = MonodromyRep::over_p1(2, vec![("e1", t.clone()), ("e2", t.clone()), ("e3", t.clone()), ("e4", t.clone())]).unwrap();
        let c = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let b = MonodromyRep::over_p1(3, vec![("x0", c.clone()), ("e2", c.clone()), ("e4", c)]).unwrap();
        let reps = [&a, &b];
        assert_eq!(merge_labels(&reps).unwrap(), vec!["e1", "x0", "e2", "e3", "e4"]);
        let swapped = MonodromyRep::over_p1(2, vec![("e4", t.clone()), ("e2", t.clone())]).unwrap();
        assert!(matches!(merge_labels(&[&a, &swapped]), Err(CoverError::BranchLabelMismatch(_))));
    }

    #[test]
    fn degree_two_splits_into_diagonal_and_antidiagonal() {
        let t = Permutation::transposition(2, 0, 1);
        let rep = MonodromyRep::over_p1(2, vec![("a", t.clone()), ("b", t.clone()), ("c", t.clone()), ("d", t)]).unwrap();
        let z = pair_product(&rep).unwrap();
        assert_eq!(z.components.len(), 2);
        assert!(z.components.iter().all(|c| c.degree == 2));
        let d = diagonal_component(&z).unwrap();
        assert_eq!(z.components[d].orbit, vec![vec![1, 1], vec![2, 2]]);
    }

    #[test]
    fn cyclic_cover_splits_into_copies() {
        let c = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let rep = MonodromyRep::over_p1(3, vec![("a", c.clone()), ("b", c.clone()), ("c", c)]).unwrap();
        let z = pair_product(&rep).unwrap();
        assert_eq!(z.components.len(), 3);
        assert!(z.components.iter().all(|c| c.degree == 3 && c.genus == 1));
        diagonal_component(&z).unwrap();
    }
}
