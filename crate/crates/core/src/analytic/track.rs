//! Fiber tracking along loops in the `x`-line.
//!
//! Loops are polygons with `f64` vertices, so runs at different precisions
//! follow the same path. Each finite branch point `p` gets a lollipop: the
//! segment from the base point `b` to the circle of radius `r` around `p`,
//! the circle counterclockwise, and the segment back. Lollipops are ordered
//! by argument around `b`, counterclockwise from the middle `θ₀` of the
//! widest angular gap. The loop around `∞` runs out along the ray at `θ₀`
//! past every branch point, once clockwise around `b`, and back. With these
//! choices `γ₁⋯γ_m·γ_∞ = id`.
//!
//! Each root lives in the chart `t` or `s = 1/t` and switches when its
//! modulus exceeds 2, so roots passing through `t = ∞` are tracked without
//! trouble. Separations are measured in the chordal metric.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::locus::{branch_locus, BranchLocus};
use super::model::CoverModel;
use super::qpoly::QPoly;
use super::real::{horner, Big, Cx, Real};
use super::roots::{all_roots, ser_complex};
use super::NumericError;
use crate::cover::{BranchPoint, MonodromyRep};
use crate::perm::{CycleType, Permutation};

const MAX_NEWTON: usize = 12;
const BASE_GRID: usize = 40;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrackOptions {
    pub precision_bits: usize,
    /// Step length as a fraction of the distance to the nearest branch point.
    pub step_fraction: f64,
    /// Multiplier on the default loop radius.
    pub radius_scale: f64,
    /// Vertices on each small circle; the circle at infinity gets twice as many.
    pub polygon_sides: usize,
    /// Shortest step before the tracker reports a collision.
    pub min_step: f64,
    /// Repeat at doubled precision with halved steps and radii and require
    /// identical permutations.
    pub verify_refinement: bool,
}

impl TrackOptions {
    pub fn for_model(model: &CoverModel) -> Self {
        Self {
            precision_bits: model.precision_bits,
            step_fraction: 0.1,
            radius_scale: 1.0,
            polygon_sides: 64,
            min_step: 1e-10,
            verify_refinement: true,
        }
    }

    pub fn refined(&self) -> Self {
        Self {
            precision_bits: 2 * self.precision_bits,
            step_fraction: self.step_fraction / 2.0,
            radius_scale: self.radius_scale / 2.0,
            verify_refinement: false,
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LoopKind {
    Finite,
    Infinity,
}

/// Provenance of one loop.
#[derive(Clone, Debug, Serialize)]
pub struct LoopRecord {
    pub label: String,
    pub kind: LoopKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center: Option<[f64; 2]>,
    pub radius: f64,
    /// Accepted steps, both families together.
    pub steps: usize,
    /// Steps retried with half the length.
    pub rejected: usize,
    /// Largest final Newton correction, relative to `max(1, |z|)`.
    pub max_correction: f64,
    /// One-based cycles.
    pub phi_perm: Vec<Vec<usize>>,
    pub x_perm: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrackResult {
    #[serde(skip)]
    pub rep_phi: MonodromyRep,
    #[serde(skip)]
    pub rep_x: MonodromyRep,
    #[serde(serialize_with = "ser_complex")]
    pub base_point: Complex64,
    pub precision_bits: usize,
    pub locus: BranchLocus,
    pub loops: Vec<LoopRecord>,
    pub refinement_checked: bool,
}

#[derive(Clone, Debug)]
struct LoopPath {
    label: String,
    kind: LoopKind,
    center: Option<Complex64>,
    radius: f64,
    vertices: Vec<Complex64>,
    phi_profile: CycleType,
    x_profile: CycleType,
}

/// A family `Σ c_k(x) t^k` with exact coefficients converted to `R`.
struct Family<R: Real> {
    coeffs: Vec<Vec<Cx<R>>>,
    prec: usize,
}

/// The `t`-coefficients at one value of `x` and their `x`-derivatives, in
/// both charts.
struct Fiber<R: Real> {
    fwd: Vec<Cx<R>>,
    dfwd: Vec<Cx<R>>,
    rev: Vec<Cx<R>>,
    drev: Vec<Cx<R>>,
}

impl<R: Real> Fiber<R> {
    fn chart(&self, inverted: bool) -> (&[Cx<R>], &[Cx<R>]) {
        if inverted {
            (&self.rev, &self.drev)
        } else {
            (&self.fwd, &self.dfwd)
        }
    }
}

impl<R: Real> Family<R> {
    fn new(polys: &[QPoly], prec: usize) -> Self {
        let zero = R::from_f64(0.0, prec);
        let coeffs = polys
            .iter()
            .map(|p| {
                let mut c: Vec<Cx<R>> =
                    p.coeffs().iter().map(|r| Cx::real(R::from_rational(r, prec), prec)).collect();
                if c.is_empty() {
                    c.push(Cx::new(zero.clone(), zero.clone()));
                }
                c
            })
            .collect();
        Self { coeffs, prec }
    }

    /// `N(t) − x·D(t)` at formal degree `deg φ`.
    fn phi(model: &CoverModel, prec: usize) -> Self {
        let (num, den) = (model.phi.num(), model.phi.den());
        let polys: Vec<QPoly> =
            (0..=model.phi.degree()).map(|k| QPoly::new(vec![num.coeff(k), -den.coeff(k)])).collect();
        Self::new(&polys, prec)
    }

    /// `t² − f(x)`.
    fn double_cover(model: &CoverModel, prec: usize) -> Self {
        let minus_f = model.f.scale(&super::qpoly::q(-1));
        Self::new(&[minus_f, QPoly::zero(), QPoly::from_ints(&[1])], prec)
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn at(&self, x: &Cx<R>) -> Fiber<R> {
        let (fwd, dfwd): (Vec<_>, Vec<_>) = self.coeffs.iter().map(|c| horner(c, x, self.prec)).unzip();
        let rev = fwd.iter().rev().cloned().collect();
        let drev = dfwd.iter().rev().cloned().collect();
        Fiber { fwd, dfwd, rev, drev }
    }
}

#[derive(Clone, Debug)]
struct Root<R: Real> {
    inverted: bool,
    z: Cx<R>,
}

impl<R: Real> Root<R> {
    fn homogeneous(&self) -> (Complex64, Complex64) {
        let z = self.z.to_c64();
        if self.inverted {
            (Complex64::new(1.0, 0.0), z)
        } else {
            (z, Complex64::new(1.0, 0.0))
        }
    }

    fn normalized(self, prec: usize) -> Self {
        if self.z.norm() > 2.0 {
            let one = Cx::real(R::from_f64(1.0, prec), prec);
            Self { inverted: !self.inverted, z: one.div(&self.z) }
        } else {
            self
        }
    }
}

fn chordal<R: Real>(p: &Root<R>, q: &Root<R>) -> f64 {
    let (a1, b1) = p.homogeneous();
    let (a2, b2) = q.homogeneous();
    (a1 * b2 - a2 * b1).norm() / ((a1.norm_sqr() + b1.norm_sqr()).sqrt() * (a2.norm_sqr() + b2.norm_sqr()).sqrt())
}

fn min_separation<R: Real>(fiber: &[Root<R>]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..fiber.len() {
        for j in i + 1..fiber.len() {
            best = best.min(chordal(&fiber[i], &fiber[j]));
        }
    }
    best
}

/// Newton from `z0`; returns the root and the last correction relative to
/// `max(1, |z|)`.
fn newton<R: Real>(coeffs: &[Cx<R>], z0: Cx<R>, prec: usize) -> Option<(Cx<R>, f64)> {
    let tol = 2f64.powi(-(prec as i32 - 6));
    let loose = 2f64.powf(-(prec as f64) / 2.0);
    let mut z = z0;
    let mut last = f64::INFINITY;
    for it in 0..MAX_NEWTON {
        let (g, gz) = horner(coeffs, &z, prec);
        if gz.is_zero() {
            return None;
        }
        let dz = g.div(&gz);
        let d = dz.norm() / z.norm().max(1.0);
        if !d.is_finite() {
            return None;
        }
        z = z.sub(&dz);
        if d <= tol || (it >= 3 && d <= loose && d > 0.5 * last) {
            return Some((z, d));
        }
        last = d;
    }
    None
}

struct Walk<'a> {
    label: &'a str,
    points: &'a [Complex64],
    opts: &'a TrackOptions,
}

struct WalkStats {
    steps: usize,
    rejected: usize,
    max_correction: f64,
}

fn try_step<R: Real>(
    fiber: &[Root<R>],
    here: &Fiber<R>,
    there: &Fiber<R>,
    dx: &Cx<R>,
    prec: usize,
) -> Option<(Vec<Root<R>>, f64)> {
    let sep = min_separation(fiber);
    let mut out = Vec::with_capacity(fiber.len());
    let mut worst = 0.0f64;
    for r in fiber {
        let (c, dc) = here.chart(r.inverted);
        let (_, gz) = horner(c, &r.z, prec);
        if gz.is_zero() {
            return None;
        }
        let (gx, _) = horner(dc, &r.z, prec);
        let pred = Root { inverted: r.inverted, z: r.z.sub(&gx.div(&gz).mul(dx)) };
        let (z, d) = newton(there.chart(r.inverted).0, pred.z.clone(), prec)?;
        let corr = Root { inverted: r.inverted, z };
        if chordal(&corr, &pred) >= 0.25 * sep || chordal(&corr, r) >= 0.4 * sep {
            return None;
        }
        worst = worst.max(d);
        out.push(corr.normalized(prec));
    }
    Some((out, worst))
}

fn walk_edge<R: Real>(
    family: &Family<R>,
    mut fiber: Vec<Root<R>>,
    xa: Complex64,
    xb: Complex64,
    walk: &Walk<'_>,
    stats: &mut WalkStats,
) -> Result<Vec<Root<R>>, NumericError> {
    let prec = family.prec;
    let len = (xb - xa).norm();
    if len == 0.0 {
        return Ok(fiber);
    }
    let mut s = 0.0f64;
    let mut x_cur = Cx::from_c64(xa, prec);
    let mut co_cur = family.at(&x_cur);
    let mut h_prev = f64::INFINITY;
    while s < 1.0 {
        let here = xa + (xb - xa) * s;
        let dist = walk.points.iter().map(|p| (p - here).norm()).fold(f64::INFINITY, f64::min);
        let mut h = (walk.opts.step_fraction * dist).min(1.5 * h_prev).min((1.0 - s) * len);
        loop {
            let s_new = if s + h / len >= 1.0 - 1e-12 { 1.0 } else { s + h / len };
            let x_new_f = if s_new == 1.0 { xb } else { xa + (xb - xa) * s_new };
            let x_new = Cx::from_c64(x_new_f, prec);
            let co_new = family.at(&x_new);
            let dx = x_new.sub(&x_cur);
            if let Some((next, corr)) = try_step(&fiber, &co_cur, &co_new, &dx, prec) {
                fiber = next;
                stats.steps += 1;
                stats.max_correction = stats.max_correction.max(corr);
                s = s_new;
                x_cur = x_new;
                co_cur = co_new;
                h_prev = h;
                break;
            }
            stats.rejected += 1;
            h *= 0.5;
            if h < walk.opts.min_step {
                return Err(NumericError::TrackingCollision {
                    label: walk.label.to_string(),
                    min_step: walk.opts.min_step,
                    at: [here.re, here.im],
                });
            }
        }
    }
    Ok(fiber)
}

fn start_fiber<R: Real>(family: &Family<R>, base: Complex64) -> Result<Vec<Root<R>>, NumericError> {
    let prec = family.prec;
    let co = family.at(&Cx::from_c64(base, prec));
    let c64: Vec<Complex64> = co.fwd.iter().map(Cx::to_c64).collect();
    let mut roots = all_roots(&c64)?;
    if roots.len() != family.degree() {
        return Err(NumericError::InvalidModel(format!("fiber over base point {base} has {} points", roots.len())));
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let one = Complex64::new(1.0, 0.0);
    let mut fiber = Vec::with_capacity(roots.len());
    for r in roots {
        let inverted = r.norm() > 2.0;
        let z0 = if inverted { one / r } else { r };
        let (z, d) = newton(co.chart(inverted).0, Cx::from_c64(z0, prec), prec)
            .ok_or(NumericError::NonConvergence { iterations: MAX_NEWTON, residual: f64::NAN })?;
        log::debug!("start root {r} refined, last correction {d:e}");
        fiber.push(Root { inverted, z });
    }
    if min_separation(&fiber) <= 1e-9 {
        return Err(NumericError::InvalidModel(format!("base point {base} lies over a branch point")));
    }
    Ok(fiber)
}

fn closure_perm<R: Real>(start: &[Root<R>], end: &[Root<R>], label: &str) -> Result<Permutation, NumericError> {
    let threshold = 0.5 * min_separation(start);
    let mut images = Vec::with_capacity(end.len());
    for (i, e) in end.iter().enumerate() {
        let (j, d) = start
            .iter()
            .map(|s| chordal(e, s))
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty fiber");
        if d >= threshold {
            return Err(NumericError::NonClosedLoop { label: label.to_string(), root: i, distance: d, threshold });
        }
        images.push(j);
    }
    Permutation::from_images(images).map_err(|e| NumericError::Cover(e.into()))
}

fn lift<R: Real>(
    family: &Family<R>,
    start: &[Root<R>],
    vertices: &[Complex64],
    walk: &Walk<'_>,
    stats: &mut WalkStats,
) -> Result<Permutation, NumericError> {
    let mut fiber = start.to_vec();
    for w in vertices.windows(2) {
        fiber = walk_edge(family, fiber, w[0], w[1], walk, stats)?;
    }
    closure_perm(start, &fiber, walk.label)
}

struct LoopTrace {
    phi: Permutation,
    x: Permutation,
    stats: WalkStats,
}

fn trace_all<R: Real>(
    model: &CoverModel,
    loops: &[(String, Vec<Complex64>)],
    points: &[Complex64],
    base: Complex64,
    opts: &TrackOptions,
) -> Result<Vec<LoopTrace>, NumericError> {
    let prec = opts.precision_bits;
    let phi = Family::<R>::phi(model, prec);
    let dc = Family::<R>::double_cover(model, prec);
    let phi0 = start_fiber(&phi, base)?;
    let x0 = start_fiber(&dc, base)?;
    loops
        .par_iter()
        .map(|(label, vertices)| {
            let walk = Walk { label, points, opts };
            let mut stats = WalkStats { steps: 0, rejected: 0, max_correction: 0.0 };
            let p = lift(&phi, &phi0, vertices, &walk, &mut stats)?;
            let x = lift(&dc, &x0, vertices, &walk, &mut stats)?;
            Ok(LoopTrace { phi: p, x, stats })
        })
        .collect()
}

fn trace_dispatch(
    model: &CoverModel,
    loops: &[(String, Vec<Complex64>)],
    points: &[Complex64],
    base: Complex64,
    opts: &TrackOptions,
) -> Result<Vec<LoopTrace>, NumericError> {
    if opts.precision_bits <= 53 {
        trace_all::<f64>(model, loops, points, base, opts)
    } else {
        trace_all::<Big>(model, loops, points, base, opts)
    }
}

fn angular_gaps(base: Complex64, points: &[Complex64]) -> Vec<(f64, f64)> {
    let mut args: Vec<f64> = points.iter().map(|p| (p - base).arg()).collect();
    args.sort_by(f64::total_cmp);
    (0..args.len())
        .map(|i| {
            let a = args[i];
            let b = if i + 1 < args.len() { args[i + 1] } else { args[0] + 2.0 * PI };
            (a, b - a)
        })
        .collect()
}

fn base_score(b: Complex64, points: &[Complex64], avoid: &[Complex64]) -> f64 {
    let d = points.iter().chain(avoid).map(|p| (p - b).norm()).fold(f64::INFINITY, f64::min);
    let gap = if points.len() < 2 {
        2.0 * PI
    } else {
        angular_gaps(b, points).iter().map(|g| g.1).fold(f64::INFINITY, f64::min)
    };
    d * gap.min(1.0)
}

/// Grid search for a base point far from the branch points and from lines
/// through two of them.
fn choose_base(points: &[Complex64], avoid: &[Complex64]) -> Complex64 {
    let all: Vec<Complex64> = points.iter().chain(avoid).copied().collect();
    if all.is_empty() {
        return Complex64::new(0.1234, 0.0567);
    }
    let (mut lo, mut hi) = (all[0], all[0]);
    for p in &all {
        lo = Complex64::new(lo.re.min(p.re), lo.im.min(p.im));
        hi = Complex64::new(hi.re.max(p.re), hi.im.max(p.im));
    }
    let c = (lo + hi) * 0.5;
    let w = (0.5 * (hi.re - lo.re)).max(0.5 * (hi.im - lo.im)).max(1.0);
    let offset = Complex64::new(0.0123, 0.0071) * w;
    let mut best = (f64::NEG_INFINITY, c + offset);
    for i in 0..=BASE_GRID {
        for j in 0..=BASE_GRID {
            let step = 3.0 * w / BASE_GRID as f64;
            let b = c + offset + Complex64::new(-1.5 * w + step * i as f64, -1.5 * w + step * j as f64);
            let score = base_score(b, points, avoid);
            if score > best.0 {
                best = (score, b);
            }
        }
    }
    best.1
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let s = (((p - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + d * s)).norm()
}

fn build_loops(locus: &BranchLocus, base: Complex64, opts: &TrackOptions) -> Result<Vec<LoopPath>, NumericError> {
    let finite: Vec<_> = locus.finite().collect();
    let points: Vec<Complex64> = finite.iter().filter_map(|p| p.value).collect();
    for p in &points {
        if (p - base).norm() <= 1e-6 * p.norm().max(1.0) {
            return Err(NumericError::InvalidModel(format!("base point {base} is too close to branch point {p}")));
        }
    }
    let theta0 = if points.is_empty() {
        0.0
    } else {
        let (a, g) = angular_gaps(base, &points).into_iter().max_by(|x, y| x.1.total_cmp(&y.1)).expect("nonempty");
        a + 0.5 * g
    };
    let maxdist = points.iter().map(|p| (p - base).norm()).fold(0.0, f64::max);
    let big_r = 2.0 * maxdist + 1.0;
    let ray_end = base + Complex64::from_polar(big_r, theta0);

    let mut order: Vec<usize> = (0..points.len()).collect();
    let rel = |p: Complex64| ((p - base).arg() - theta0).rem_euclid(2.0 * PI);
    order.sort_by(|&i, &j| rel(points[i]).total_cmp(&rel(points[j])));

    let n = opts.polygon_sides.max(8);
    let mut loops = Vec::new();
    for (k, &i) in order.iter().enumerate() {
        let p = points[i];
        let mut limit = (p - base).norm().min(segment_distance(p, base, ray_end));
        for (j, &q) in points.iter().enumerate() {
            if j != i {
                limit = limit.min((p - q).norm()).min(segment_distance(p, base, q));
            }
        }
        let r = 0.5 * limit * opts.radius_scale;
        let u = (p - base) / (p - base).norm();
        let alpha0 = (-u).arg();
        let mut vertices = vec![base];
        let first = p - u * r;
        vertices.push(first);
        for j in 1..n {
            vertices.push(p + Complex64::from_polar(r, alpha0 + 2.0 * PI * j as f64 / n as f64));
        }
        vertices.push(first);
        vertices.push(base);
        loops.push(LoopPath {
            label: format!("b{}", k + 1),
            kind: LoopKind::Finite,
            center: Some(p),
            radius: r,
            vertices,
            phi_profile: finite[i].phi_profile.clone(),
            x_profile: finite[i].x_profile.clone(),
        });
    }
    if let Some(inf) = locus.points.iter().find(|p| p.is_infinite()) {
        let m = 2 * n;
        let mut vertices = vec![base, ray_end];
        for j in 1..m {
            vertices.push(base + Complex64::from_polar(big_r, theta0 - 2.0 * PI * j as f64 / m as f64));
        }
        vertices.push(ray_end);
        vertices.push(base);
        loops.push(LoopPath {
            label: "inf".into(),
            kind: LoopKind::Infinity,
            center: None,
            radius: big_r,
            vertices,
            phi_profile: inf.phi_profile.clone(),
            x_profile: inf.x_profile.clone(),
        });
    }
    Ok(loops)
}

fn avoid_points(model: &CoverModel) -> Vec<Complex64> {
    model.phi.value_at_infinity().into_iter().collect()
}

fn run(
    model: &CoverModel,
    locus: &BranchLocus,
    base: Complex64,
    opts: &TrackOptions,
) -> Result<(Vec<LoopPath>, Vec<LoopTrace>), NumericError> {
    let loops = build_loops(locus, base, opts)?;
    let points: Vec<Complex64> = locus.finite().filter_map(|p| p.value).collect();
    let paths: Vec<(String, Vec<Complex64>)> = loops.iter().map(|l| (l.label.clone(), l.vertices.clone())).collect();
    let traces = trace_dispatch(model, &paths, &points, base, opts)?;
    for (l, t) in loops.iter().zip(&traces) {
        for (tracked, expected) in [(&t.phi, &l.phi_profile), (&t.x, &l.x_profile)] {
            if tracked.cycle_type() != *expected {
                return Err(NumericError::ProfileMismatch {
                    label: l.label.clone(),
                    tracked: tracked.cycle_type().to_string(),
                    expected: expected.to_string(),
                });
            }
        }
    }
    Ok((loops, traces))
}

/// Monodromy of `φ` and of the double cover, with default options at the
/// model's precision. Each rep keeps only the loops around which its own
/// monodromy is nontrivial.
pub fn track_monodromy(model: &CoverModel) -> Result<TrackResult, NumericError> {
    track_monodromy_with(model, &TrackOptions::for_model(model))
}

pub fn track_monodromy_with(model: &CoverModel, opts: &TrackOptions) -> Result<TrackResult, NumericError> {
    let locus = branch_locus(model)?;
    let points: Vec<Complex64> = locus.finite().filter_map(|p| p.value).collect();
    let base = model.base_point.unwrap_or_else(|| choose_base(&points, &avoid_points(model)));
    let (loops, traces) = run(model, &locus, base, opts)?;

    if opts.verify_refinement {
        let (_, fine) = run(model, &locus, base, &opts.refined())?;
        for ((l, a), b) in loops.iter().zip(&traces).zip(&fine) {
            for (coarse, refined) in [(&a.phi, &b.phi), (&a.x, &b.x)] {
                if coarse != refined {
                    return Err(NumericError::RefinementMismatch {
                        label: l.label.clone(),
                        coarse: coarse.to_string(),
                        fine: refined.to_string(),
                    });
                }
            }
        }
    }

    let branch = |pick: fn(&LoopTrace) -> &Permutation| -> Vec<BranchPoint> {
        loops
            .iter()
            .zip(&traces)
            .filter(|(_, t)| !pick(t).is_identity())
            .map(|(l, t)| BranchPoint {
                label: l.label.clone(),
                perm: pick(t).clone(),
                position: l.center.map(|c| [c.re, c.im]),
            })
            .collect()
    };
    let rep_phi = MonodromyRep::new(0, model.phi.degree(), Vec::new(), branch(|t| &t.phi))?;
    let rep_x = MonodromyRep::new(0, 2, Vec::new(), branch(|t| &t.x))?;
    let records = loops
        .iter()
        .zip(&traces)
        .map(|(l, t)| LoopRecord {
            label: l.label.clone(),
            kind: l.kind,
            center: l.center.map(|c| [c.re, c.im]),
            radius: l.radius,
            steps: t.stats.steps,
            rejected: t.stats.rejected,
            max_correction: t.stats.max_correction,
            phi_perm: t.phi.to_one_based_cycles(),
            x_perm: t.x.to_one_based_cycles(),
        })
        .collect();
    Ok(TrackResult {
        rep_phi,
        rep_x,
        base_point: base,
        precision_bits: opts.precision_bits,
        locus,
        loops: records,
        refinement_checked: opts.verify_refinement,
    })
}

/// Monodromy of both families along a closed polygon starting and ending
/// at its first vertex.
pub fn lift_loop(
    model: &CoverModel,
    vertices: &[Complex64],
    opts: &TrackOptions,
) -> Result<(Permutation, Permutation), NumericError> {
    if vertices.len() < 2 || vertices.first() != vertices.last() {
        return Err(NumericError::InvalidModel("loop must start and end at the same vertex".into()));
    }
    let locus = branch_locus(model)?;
    let points: Vec<Complex64> = locus.finite().filter_map(|p| p.value).collect();
    let paths = vec![("loop".to_string(), vertices.to_vec())];
    let mut t = trace_dispatch(model, &paths, &points, vertices[0], opts)?;
    let t = t.pop().expect("one loop");
    Ok((t.phi, t.x))
}
