use serde::{Deserialize, Serialize};

use super::{PermError, PermGroup, Permutation};

/// A partition of the domain into blocks, each sorted, listed by least element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn block_size(&self) -> usize {
        self.blocks.first().map_or(0, Vec::len)
    }

    pub fn is_trivial(&self, degree: usize) -> bool {
        self.blocks.len() <= 1 || self.block_size() == 1 || degree <= 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primitivity {
    Primitive,
    Imprimitive(BlockSystem),
}

impl Primitivity {
    pub fn is_primitive(&self) -> bool {
        matches!(self, Primitivity::Primitive)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Finest block system in which `a` and `b` share a block.
pub fn minimal_block_system(gens: &[Permutation], degree: usize, a: usize, b: usize) -> BlockSystem {
    let mut uf = UnionFind::new(degree);
    let mut edges = Vec::new();
    if uf.union(a, b) {
        edges.push((a, b));
    }
    while let Some((x, y)) = edges.pop() {
        for g in gens {
            let (gx, gy) = (g.apply(x), g.apply(y));
            if uf.union(gx, gy) {
                edges.push((gx, gy));
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; degree];
    for p in 0..degree {
        let r = uf.find(p);
        if index[r] == usize::MAX {
            index[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[index[r]].push(p);
    }
    BlockSystem { blocks }
}

/// Primitivity of a transitive group, with a witness block system of minimal
/// block size when imprimitive. Seeds the block search with each pair `(0, i)`.
pub fn is_primitive(group: &PermGroup) -> Result<Primitivity, PermError> {
    let n = group.degree();
    if !group.is_transitive() {
        return Err(PermError::Intransitive { degree: n });
    }
    let mut best: Option<BlockSystem> = None;
    for i in 1..n {
        let sys = minimal_block_system(group.generators(), n, 0, i);
        if sys.blocks.len() > 1 && best.as_ref().is_none_or(|b| sys.block_size() < b.block_size()) {
            best = Some(sys);
        }
    }
    Ok(match best {
        Some(sys) => Primitivity::Imprimitive(sys),
        None => Primitivity::Primitive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_is_primitive() {
        assert!(is_primitive(&PermGroup::symmetric(4)).unwrap().is_primitive());
    }

    #[test]
    fn four_cycle_has_antipodal_blocks() {
        let g = PermGroup::new(4, vec![Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap()]).unwrap();
        match is_primitive(&g).unwrap() {
            Primitivity::Imprimitive(sys) => assert_eq!(sys.blocks, vec![vec![0, 2], vec![1, 3]]),
            Primitivity::Primitive => panic!("cyclic group of order 4 is imprimitive"),
        }
    }

    #[test]
    fn exceptional_degree_six_group_is_primitive() {
        let g = PermGroup::new(
            6,
            vec![
                Permutation::from_one_based_cycles(6, &[vec![3, 5, 4, 6]]).unwrap(),
                Permutation::from_one_based_cycles(6, &[vec![1, 6, 2], vec![3, 4, 5]]).unwrap(),
            ],
        )
        .unwrap();
        assert!(is_primitive(&g).unwrap().is_primitive());
    }

    #[test]
    fn intransitive_is_rejected() {
        let g = PermGroup::new(3, vec![Permutation::transposition(3, 0, 1)]).unwrap();
        assert!(matches!(is_primitive(&g), Err(PermError::Intransitive { .. })));
    }
}
