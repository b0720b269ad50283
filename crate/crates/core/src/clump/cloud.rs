use std::collections::HashMap;

use serde::Serialize;

use super::point::ProjPoint;

/// Separations below this multiple of the tolerance are tracked as margins.
const MARGIN_WINDOW: f64 = 10.0;

type Cell = [i64; 3];

/// Points of `P¹` deduplicated at a chordal tolerance. Inserting a point
/// within the tolerance of an existing one raises that point's multiplicity.
#[derive(Clone, Debug)]
pub struct PointCloud {
    points: Vec<ProjPoint>,
    multiplicities: Vec<usize>,
    tolerance: f64,
    cell: f64,
    grid: HashMap<Cell, Vec<usize>>,
    margins: Margins,
}

/// How close the tolerance came to mattering.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Margins {
    /// Largest distance between two inserted points that were merged.
    pub max_merged: f64,
    /// Smallest distance between two distinct points, if any pair came within
    /// ten times the tolerance.
    pub min_distinct: Option<f64>,
}

impl Margins {
    pub fn combine(&mut self, o: &Margins) {
        self.max_merged = self.max_merged.max(o.max_merged);
        self.min_distinct = match (self.min_distinct, o.min_distinct) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }
}

impl PointCloud {
    pub fn new(tolerance: f64) -> Self {
        assert!(tolerance > 0.0 && tolerance < 0.1, "tolerance {tolerance} out of range");
        let cell = 2.0 * MARGIN_WINDOW * tolerance;
        Self { points: Vec::new(), multiplicities: Vec::new(), tolerance, cell, grid: HashMap::new(), margins: Margins::default() }
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn margins(&self) -> Margins {
        self.margins
    }

    fn cell_of(&self, p: &ProjPoint) -> Cell {
        let s = p.sphere();
        [(s[0] / self.cell).floor() as i64, (s[1] / self.cell).floor() as i64, (s[2] / self.cell).floor() as i64]
    }

    /// Index of the nearest point within the tolerance.
    pub fn find(&self, p: &ProjPoint) -> Option<usize> {
        self.nearest(p).filter(|&(_, d)| d < self.tolerance).map(|(i, _)| i)
    }

    fn nearest(&self, p: &ProjPoint) -> Option<(usize, f64)> {
        let c = self.cell_of(p);
        let mut best: Option<(usize, f64)> = None;
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    if let Some(ids) = self.grid.get(&[c[0] + dx, c[1] + dy, c[2] + dz]) {
                        for &i in ids {
                            let d = self.points[i].chordal(p);
                            if best.is_none_or(|(_, b)| d < b) {
                                best = Some((i, d));
                            }
                        }
                    }
                }
            }
        }
        best
    }

    /// Adds `p`; returns `true` when it is new.
    pub fn insert(&mut self, p: ProjPoint) -> bool {
        match self.nearest(&p) {
            Some((i, d)) if d < self.tolerance => {
                self.multiplicities[i] += 1;
                self.margins.max_merged = self.margins.max_merged.max(d);
                return false;
            }
            Some((_, d)) if d < MARGIN_WINDOW * self.tolerance => {
                self.margins.min_distinct = Some(self.margins.min_distinct.map_or(d, |m| m.min(d)));
            }
            _ => {}
        }
        let c = self.cell_of(&p);
        self.grid.entry(c).or_default().push(self.points.len());
        self.points.push(p);
        self.multiplicities.push(1);
        true
    }

    /// Every point of `self` lies within the tolerance of a point of `other`.
    pub fn is_subset_of(&self, other: &PointCloud) -> bool {
        self.points.iter().all(|p| other.find(p).is_some())
    }

    pub fn same_set(&self, other: &PointCloud) -> bool {
        self.len() == other.len() && self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// Reorders points by their position on the sphere.
    pub fn canonical_sort(&mut self) {
        let mut idx: Vec<usize> = (0..self.points.len()).collect();
        idx.sort_by(|&a, &b| {
            let (x, y) = (self.points[a].sphere(), self.points[b].sphere());
            x[0].total_cmp(&y[0]).then(x[1].total_cmp(&y[1])).then(x[2].total_cmp(&y[2]))
        });
        self.points = idx.iter().map(|&i| self.points[i]).collect();
        self.multiplicities = idx.iter().map(|&i| self.multiplicities[i]).collect();
        self.grid.clear();
        for i in 0..self.points.len() {
            let c = self.cell_of(&self.points[i]);
            self.grid.entry(c).or_default().push(i);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn dedup_and_multiplicity() {
        let mut c = PointCloud::new(1e-8);
        assert!(c.insert(ProjPoint::affine(Complex64::new(1.0, 0.0))));
        assert!(!c.insert(ProjPoint::affine(Complex64::new(1.0 + 1e-10, 0.0))));
        assert!(c.insert(ProjPoint::affine(Complex64::new(1.0 + 1e-7, 0.0))));
        assert!(c.insert(ProjPoint::infinity()));
        assert!(!c.insert(ProjPoint::affine(Complex64::new(1e10, 0.0))));
        assert_eq!(c.len(), 3);
        assert_eq!(c.multiplicities().iter().sum::<usize>(), 5);
        let m = c.margins();
        assert!(m.max_merged > 0.0 && m.max_merged < 1e-8);
        assert!(m.min_distinct.unwrap() > 1e-8);
    }

    #[test]
    fn sort_keeps_lookup() {
        let mut c = PointCloud::new(1e-9);
        for k in 0..50 {
            c.insert(ProjPoint::affine(Complex64::from_polar(1.0 + k as f64 * 0.1, k as f64)));
        }
        let before = c.clone();
        c.canonical_sort();
        assert!(c.same_set(&before));
        assert!(c.find(&ProjPoint::affine(Complex64::from_polar(1.5, 5.0))).is_some());
    }
}
