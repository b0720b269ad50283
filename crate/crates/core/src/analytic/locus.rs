use num_complex::Complex64;
use serde::Serialize;

use super::model::CoverModel;
use super::qpoly::t_discriminant;
use super::roots::{all_roots, cluster_roots, ser_complex};
use super::NumericError;
use crate::perm::CycleType;

/// Candidates closer than this (relative) are one point of the base.
pub const CANDIDATE_TOL: f64 = 1e-9;
/// Root clustering for fiber profiles. Coarser than [`CLUSTER_TOL`](super::CLUSTER_TOL): a root
/// of multiplicity `e` is only resolved to about `ε^(1/e)` in `f64`.
pub const PROFILE_TOL: f64 = 1e-3;

#[derive(Clone, Debug, Serialize)]
pub struct BranchValue {
    /// `None` is the point at infinity.
    #[serde(serialize_with = "ser_opt_complex")]
    pub value: Option<Complex64>,
    /// Fiber of `φ` as ramification indices.
    pub phi_profile: CycleType,
    /// Fiber of the double cover.
    pub x_profile: CycleType,
}

fn ser_opt_complex<S: serde::Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
    match z {
        Some(z) => ser_complex(z, s),
        None => s.serialize_str("inf"),
    }
}

impl BranchValue {
    pub fn branches_phi(&self) -> bool {
        !self.phi_profile.is_trivial()
    }

    pub fn branches_x(&self) -> bool {
        !self.x_profile.is_trivial()
    }

    pub fn is_infinite(&self) -> bool {
        self.value.is_none()
    }
}

/// Points of the `x`-line over which `φ` or the double cover branches;
/// finite points sorted by real then imaginary part, infinity last.
#[derive(Clone, Debug, Serialize)]
pub struct BranchLocus {
    pub points: Vec<BranchValue>,
}

impl BranchLocus {
    pub fn finite(&self) -> impl Iterator<Item = &BranchValue> {
        self.points.iter().filter(|p| p.value.is_some())
    }

    pub fn min_separation(&self) -> f64 {
        let pts: Vec<Complex64> = self.finite().filter_map(|p| p.value).collect();
        let mut best = f64::INFINITY;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                best = best.min((pts[i] - pts[j]).norm());
            }
        }
        best
    }
}

/// Ramification indices of `φ` over `(u : v)`, from the multiplicities of
/// the roots of `v·N − u·D` plus the degree drop at `t = ∞`.
pub fn phi_profile(model: &CoverModel, u: Complex64, v: Complex64) -> Result<CycleType, NumericError> {
    let coeffs = model.phi.preimage_poly(u, v);
    let n = coeffs.len() - 1;
    let scale: f64 = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut top = n;
    while top > 0 && coeffs[top].norm() <= 1e-12 * scale {
        top -= 1;
    }
    let mut parts: Vec<usize> = if top == 0 {
        Vec::new()
    } else {
        cluster_roots(&all_roots(&coeffs[..=top])?, PROFILE_TOL).iter().map(|c| c.multiplicity).collect()
    };
    if top < n {
        parts.push(n - top);
    }
    Ok(CycleType::new(parts))
}

fn x_profile(model: &CoverModel, x: Option<Complex64>) -> CycleType {
    let deg = model.f.degree().unwrap_or(0);
    let ramified = match x {
        None => deg % 2 == 1,
        Some(x) => {
            let c = model.f.to_complex();
            let (val, _) = super::roots::horner(&c, x);
            let scale: f64 = c.iter().enumerate().map(|(k, a)| a.norm() * x.norm().max(1.0).powi(k as i32)).sum();
            val.norm() <= 1e-9 * scale
        }
    };
    if ramified {
        CycleType::new(vec![2])
    } else {
        CycleType::new(vec![1, 1])
    }
}

pub fn branch_locus(model: &CoverModel) -> Result<BranchLocus, NumericError> {
    let disc = t_discriminant(model.phi.num(), model.phi.den()).squarefree_part();
    let mut candidates: Vec<Complex64> = Vec::new();
    if disc.degree().unwrap_or(0) > 0 {
        candidates.extend(all_roots(&disc.to_complex())?);
    }
    if let Some(v) = model.phi.value_at_infinity() {
        candidates.push(v);
    }
    candidates.extend(all_roots(&model.f.to_complex())?);

    let mut unique: Vec<Complex64> = Vec::new();
    for c in candidates {
        if !unique.iter().any(|u| (u - c).norm() <= CANDIDATE_TOL * c.norm().max(1.0)) {
            unique.push(c);
        }
    }
    unique.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));

    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut points = Vec::new();
    for x in unique {
        let p = BranchValue { value: Some(x), phi_profile: phi_profile(model, x, one)?, x_profile: x_profile(model, Some(x)) };
        if p.branches_phi() || p.branches_x() {
            points.push(p);
        }
    }
    let inf = BranchValue { value: None, phi_profile: phi_profile(model, one, zero)?, x_profile: x_profile(model, None) };
    if inf.branches_phi() || inf.branches_x() {
        points.push(inf);
    }
    Ok(BranchLocus { points })
}
