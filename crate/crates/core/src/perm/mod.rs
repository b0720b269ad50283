//! Permutations of `{0, …, n-1}` and the group-theoretic machinery built on them.
//!
//! Permutations act on the right: `i^(p·q) = (i^p)^q`, so [`Permutation::compose`]
//! applies `self` first. This is the convention used for path lifting, where the
//! loop traversed first contributes the leftmost factor.
//!
//! Indices are 0-based in memory. Everything that is printed or serialized uses
//! 1-based cycle notation, e.g. `[[3,5,4,6]]` for the 4-cycle `(3546)`.

mod blocks;
mod group;

pub use blocks::{is_primitive, minimal_block_system, BlockSystem, Primitivity};
pub use group::{group_order, orbits, PermGroup, StabChain};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a bijection: {0}")]
    NotABijection(String),
    #[error("group is not transitive on {degree} points")]
    Intransitive { degree: usize },
}

/// A bijection of `{0, …, n-1}` stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(PermError::NotABijection(format!("image {i} out of range for degree {n}")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(PermError::NotABijection(format!("image {i} repeated")));
            }
        }
        Ok(Self { images: images.into_iter().map(|i| i as u32).collect() })
    }

    /// Builds a permutation from 0-based disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= n {
                    return Err(PermError::NotABijection(format!("point {} out of range for degree {n}", a + 1)));
                }
                if std::mem::replace(&mut used[a], true) {
                    return Err(PermError::NotABijection(format!("point {} appears in two cycles", a + 1)));
                }
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    /// Builds a permutation from 1-based cycles.
    pub fn from_one_based_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let zero: Vec<Vec<usize>> = cycles
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&a| a.checked_sub(1).ok_or_else(|| PermError::NotABijection("point 0 in 1-based cycle".into())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        Self::from_cycles(n, &zero)
    }

    /// A transposition `(a b)`, 0-based.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<u32> = (0..n as u32).collect();
        images.swap(a, b);
        Self { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Self { images }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity(self.degree());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `a·b·a⁻¹·b⁻¹`, read left to right.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.compose(b).compose(&a.inverse()).compose(&b.inverse())
    }

    /// `h⁻¹·self·h`; relabels every cycle `(x y …)` to `(x^h y^h …)`.
    pub fn conjugate_by(&self, h: &Self) -> Self {
        h.inverse().compose(self).compose(h)
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &j)| *i as u32 != j).map(|(i, _)| i)
    }

    /// All cycles including fixed points, each starting at its least element,
    /// listed by least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.apply(start);
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.apply(j);
            }
            out.push(cycle);
        }
        out
    }

    pub fn nontrivial_cycles(&self) -> Vec<Vec<usize>> {
        self.cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::new(self.cycles().iter().map(Vec::len).collect())
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles().len()
    }

    pub fn is_even(&self) -> bool {
        (self.degree() - self.num_cycles()).is_multiple_of(2)
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }

    pub fn to_one_based_cycles(&self) -> Vec<Vec<usize>> {
        self.nontrivial_cycles().into_iter().map(|c| c.into_iter().map(|a| a + 1).collect()).collect()
    }
}

/// Free-function form of [`Permutation::cycle_type`].
pub fn cycle_type(p: &Permutation) -> CycleType {
    p.cycle_type()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.to_one_based_cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|a| a.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// Multiset of cycle lengths, sorted descending.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        assert!(parts.iter().all(|&p| p >= 1), "cycle lengths must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `Σ (len − 1)`, the contribution to the ramification divisor.
    pub fn ramification(&self) -> usize {
        self.parts.iter().map(|p| p - 1).sum()
    }

    /// `[k, 1, …, 1]` padded to degree `n`.
    pub fn cycle_with_fixed(k: usize, n: usize) -> Self {
        let mut parts = vec![k];
        parts.extend(std::iter::repeat_n(1, n - k));
        Self::new(parts)
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
