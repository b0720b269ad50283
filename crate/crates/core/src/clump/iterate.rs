use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cloud::{Margins, PointCloud};
use super::point::ProjPoint;
use super::ClumpError;
use crate::analytic::{all_roots, RationalMap, RationalMapJson};

pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_MAX_POINTS: usize = 1_000_000;
/// Random starts are drawn from `|t| ≤ SAMPLE_RADIUS`.
pub const SAMPLE_RADIUS: f64 = 2.0;
/// Random starts keep this distance from every critical point.
const CRITICAL_AVOIDANCE: f64 = 1e-3;

/// Two rational maps `P¹ ← P¹ → P¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct Correspondence {
    pub left: RationalMap,
    pub right: RationalMap,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrespondenceJson {
    pub left: RationalMapJson,
    pub right: RationalMapJson,
    /// Allow legs of degree 1.
    #[serde(default)]
    pub degenerate: bool,
}

impl Correspondence {
    pub fn new(left: RationalMap, right: RationalMap) -> Result<Self, ClumpError> {
        if left.degree() < 2 || right.degree() < 2 {
            return Err(ClumpError::InvalidCorrespondence(format!(
                "legs have degrees {} and {}; both must be at least 2",
                left.degree(),
                right.degree()
            )));
        }
        Ok(Self { left, right })
    }

    pub fn new_degenerate(left: RationalMap, right: RationalMap) -> Self {
        Self { left, right }
    }

    pub fn from_json(j: &CorrespondenceJson) -> Result<Self, ClumpError> {
        let (l, r) = (RationalMap::from_json(&j.left)?, RationalMap::from_json(&j.right)?);
        if j.degenerate {
            Ok(Self::new_degenerate(l, r))
        } else {
            Self::new(l, r)
        }
    }

    pub fn to_json(&self) -> CorrespondenceJson {
        CorrespondenceJson { left: self.left.to_json(), right: self.right.to_json(), degenerate: false }
    }

    /// Largest clump size compatible with a core.
    pub fn bound(&self) -> usize {
        self.left.degree() * self.right.degree()
    }

    pub fn swapped(&self) -> Self {
        Self { left: self.right.clone(), right: self.left.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Some clump exceeds the bound, so no core exists.
    NoCoreCertified,
    /// Every clump saturated within the bound. Evidence for a core, not a proof.
    BoundedAtBudget,
    /// Growth within the bound that did not saturate in the budget.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClumpOptions {
    pub tolerance: f64,
    pub budget: usize,
    pub max_points: usize,
    /// Stop as soon as a size exceeds the bound.
    pub stop_on_certificate: bool,
}

impl Default for ClumpOptions {
    fn default() -> Self {
        Self { tolerance: DEFAULT_TOLERANCE, budget: 9, max_points: DEFAULT_MAX_POINTS, stop_on_certificate: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClumpReport {
    pub start: ProjPoint,
    pub bound: usize,
    /// `#F_0, #F_1, …`
    pub sizes: Vec<usize>,
    pub verdict: Verdict,
    /// First `i` with `#F_i > bound`.
    pub certified_at: Option<usize>,
    /// First `i` with `F_{i+1} = F_i`.
    pub saturation: Option<usize>,
    pub tolerance: f64,
    pub margins: Margins,
    #[serde(skip)]
    pub cloud: PointCloud,
}

/// `φ((u : v))`.
pub fn image(map: &RationalMap, p: &ProjPoint) -> Option<ProjPoint> {
    let (u, v) = p.coords();
    let (a, b) = map.eval_homogeneous(u, v);
    ProjPoint::new(a, b)
}

/// All `deg φ` preimages of `w`, clustered at `tolerance` with multiplicity.
/// Roots are found in the chart `t` when the leading coefficient dominates
/// and in `s = 1/t` otherwise; exact zeros at either end give roots at `0`
/// and `∞`.
pub fn preimages(map: &RationalMap, w: &ProjPoint, tolerance: f64) -> Result<PointCloud, ClumpError> {
    let mut cloud = PointCloud::new(tolerance);
    for p in preimage_points(map, w)? {
        cloud.insert(p);
    }
    Ok(cloud)
}

fn preimage_points(map: &RationalMap, w: &ProjPoint) -> Result<Vec<ProjPoint>, ClumpError> {
    let (a, b) = w.coords();
    let c = map.preimage_poly(a, b);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let hi = c.iter().rev().take_while(|z| **z == zero).count();
    let lo = c.iter().take_while(|z| **z == zero).count();
    let mut out = Vec::with_capacity(c.len() - 1);
    out.extend(std::iter::repeat_n(ProjPoint::infinity(), hi));
    out.extend(std::iter::repeat_n(ProjPoint::affine(zero), lo));
    if lo + hi < c.len() {
        let mid = &c[lo..c.len() - hi];
        if mid.len() >= 2 {
            if mid[mid.len() - 1].norm() >= mid[0].norm() {
                for t in all_roots(mid)? {
                    out.push(ProjPoint::affine(t));
                }
            } else {
                let rev: Vec<Complex64> = mid.iter().rev().copied().collect();
                for s in all_roots(&rev)? {
                    out.push(ProjPoint::new(one, s).expect("finite root"));
                }
            }
        }
    }
    Ok(out)
}

/// `α⁻¹(α(z))` for both legs.
fn expand(corr: &Correspondence, z: &ProjPoint) -> Result<Vec<ProjPoint>, ClumpError> {
    let mut out = Vec::new();
    for leg in [&corr.left, &corr.right] {
        let w = image(leg, z).ok_or_else(|| ClumpError::Numeric(format!("image of {z} overflowed")))?;
        out.extend(preimage_points(leg, &w)?);
    }
    Ok(out)
}

/// Adds `expand(z)` for every `z` in `frontier`; returns the new points.
/// Expansions run in parallel and are merged in frontier order.
fn grow(corr: &Correspondence, cloud: &mut PointCloud, frontier: &[ProjPoint], cap: usize) -> Result<Vec<ProjPoint>, ClumpError> {
    let batches: Vec<Vec<ProjPoint>> = frontier.par_iter().map(|z| expand(corr, z)).collect::<Result<_, _>>()?;
    let mut fresh = Vec::new();
    for p in batches.into_iter().flatten() {
        if cloud.insert(p) {
            fresh.push(p);
            if cloud.len() > cap {
                return Err(ClumpError::CloudExplosion { size: cloud.len(), cap });
            }
        }
    }
    Ok(fresh)
}

/// Iterates `F_{i+1} = α_X⁻¹α_X(F_i) ∪ α_W⁻¹α_W(F_i)` from `F_0 = {start}`.
///
/// Since `F_i ⊆ F_{i+1}`, only points new in `F_i` are expanded. On
/// saturation the whole cloud is expanded once more to confirm closure.
pub fn clump_iterate(corr: &Correspondence, start: ProjPoint, opts: &ClumpOptions) -> Result<ClumpReport, ClumpError> {
    if opts.budget == 0 {
        return Err(ClumpError::Precondition("budget must be at least 1".into()));
    }
    let bound = corr.bound();
    let mut cloud = PointCloud::new(opts.tolerance);
    cloud.insert(start);
    let mut sizes = vec![1];
    let mut frontier = vec![start];
    let mut certified_at = None;
    let mut saturation = None;
    for i in 0..opts.budget {
        let mut fresh = grow(corr, &mut cloud, &frontier, opts.max_points)?;
        if fresh.is_empty() {
            let all = cloud.points().to_vec();
            fresh = grow(corr, &mut cloud, &all, opts.max_points)?;
            if fresh.is_empty() {
                saturation = Some(i);
                break;
            }
            log::warn!("closure check at iteration {} found {} more points", i + 1, fresh.len());
        }
        cloud.canonical_sort();
        sizes.push(cloud.len());
        frontier = fresh;
        if certified_at.is_none() && cloud.len() > bound {
            certified_at = Some(i + 1);
            if opts.stop_on_certificate {
                break;
            }
        }
    }
    let verdict = if certified_at.is_some() {
        Verdict::NoCoreCertified
    } else if saturation.is_some() {
        Verdict::BoundedAtBudget
    } else {
        Verdict::Inconclusive
    };
    Ok(ClumpReport {
        start,
        bound,
        sizes,
        verdict,
        certified_at,
        saturation,
        tolerance: opts.tolerance,
        margins: cloud.margins(),
        cloud,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoreVerdict {
    pub verdict: Verdict,
    pub seed: u64,
    pub reports: Vec<ClumpReport>,
}

fn critical_points(map: &RationalMap) -> Result<Vec<Complex64>, ClumpError> {
    Ok(map.critical_points()?)
}

/// Random starts, uniform on `|t| ≤ SAMPLE_RADIUS` away from every critical
/// point of both legs.
pub fn random_starts(corr: &Correspondence, samples: usize, seed: u64) -> Result<Vec<ProjPoint>, ClumpError> {
    let mut crit = critical_points(&corr.left)?;
    crit.extend(critical_points(&corr.right)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let t = Complex64::new(rng.random_range(-SAMPLE_RADIUS..SAMPLE_RADIUS), rng.random_range(-SAMPLE_RADIUS..SAMPLE_RADIUS));
        if t.norm() > SAMPLE_RADIUS || crit.iter().any(|c| (c - t).norm() < CRITICAL_AVOIDANCE) {
            continue;
        }
        out.push(ProjPoint::affine(t));
    }
    Ok(out)
}

/// Runs [`clump_iterate`] from each start. One certificate decides; all
/// saturating within the bound is reported as evidence for a core.
pub fn core_verdict_from(corr: &Correspondence, starts: &[ProjPoint], opts: &ClumpOptions, seed: u64) -> Result<CoreVerdict, ClumpError> {
    if starts.is_empty() {
        return Err(ClumpError::Precondition("at least one sample is required".into()));
    }
    let reports: Vec<ClumpReport> = starts.iter().map(|&s| clump_iterate(corr, s, opts)).collect::<Result<_, _>>()?;
    let verdict = if reports.iter().any(|r| r.verdict == Verdict::NoCoreCertified) {
        Verdict::NoCoreCertified
    } else if reports.iter().all(|r| r.verdict == Verdict::BoundedAtBudget) {
        Verdict::BoundedAtBudget
    } else {
        Verdict::Inconclusive
    };
    Ok(CoreVerdict { verdict, seed, reports })
}

pub fn core_verdict(corr: &Correspondence, samples: usize, opts: &ClumpOptions, seed: u64) -> Result<CoreVerdict, ClumpError> {
    if samples == 0 {
        return Err(ClumpError::Precondition("at least one sample is required".into()));
    }
    let starts = random_starts(corr, samples, seed)?;
    core_verdict_from(corr, &starts, opts, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(num: &[i64], den: &[i64]) -> RationalMap {
        RationalMap::from_ints(num, den).unwrap()
    }

    #[test]
    fn preimages_of_squaring() {
        let c = preimages(&map(&[0, 0, 1], &[1]), &ProjPoint::affine(Complex64::new(1.0, 0.0)), 1e-8).unwrap();
        assert_eq!(c.len(), 2);
        let mut xs: Vec<f64> = c.points().iter().map(|p| p.to_affine().unwrap().re).collect();
        xs.sort_by(f64::total_cmp);
        assert!((xs[0] + 1.0).abs() < 1e-14 && (xs[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn preimages_with_double_root_and_infinity() {
        let phi = map(&[0, 0, 1], &[-4, 0, 0, 1]);
        let c = preimages(&phi, &ProjPoint::affine(Complex64::new(0.0, 0.0)), 1e-8).unwrap();
        assert_eq!(c.len(), 2);
        let zero = c.find(&ProjPoint::affine(Complex64::new(0.0, 0.0))).unwrap();
        let inf = c.find(&ProjPoint::infinity()).unwrap();
        assert_eq!(c.multiplicities()[zero], 2);
        assert_eq!(c.multiplicities()[inf], 1);
    }

    #[test]
    fn preimages_contain_the_point() {
        let phi = map(&[0, -9, 24, -16], &[-256, 0, 0, 256]);
        for t in [Complex64::new(0.3, 0.8), Complex64::new(-5.0, 2.0), Complex64::new(40.0, -1.0)] {
            let p = ProjPoint::affine(t);
            let c = preimages(&phi, &image(&phi, &p).unwrap(), 1e-8).unwrap();
            assert_eq!(c.multiplicities().iter().sum::<usize>(), 3);
            assert!(c.find(&p).is_some(), "{t}");
        }
    }

    #[test]
    fn near_infinity_uses_other_chart() {
        let phi = map(&[0, 0, 0, 1], &[1]);
        let w = ProjPoint::new(Complex64::new(1.0, 0.0), Complex64::new(1e-30, 0.0)).unwrap();
        let c = preimages(&phi, &w, 1e-8).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.multiplicities()[0], 3);
    }
}
