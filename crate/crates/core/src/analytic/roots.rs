use num_complex::Complex64;
use serde::Serialize;

use super::NumericError;

const MAX_ITER: usize = 1000;
/// Roots closer than this (relative to `max(1, |z|)`) are reported as one cluster.
pub const CLUSTER_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RootCluster {
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    pub multiplicity: usize,
}

pub(crate) fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&z.re)?;
    t.serialize_element(&z.im)?;
    t.end()
}

/// `p(z)` and `p'(z)` by Horner; coefficients low degree first.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn trim(coeffs: &[Complex64]) -> &[Complex64] {
    let mut end = coeffs.len();
    while end > 0 && coeffs[end - 1] == Complex64::new(0.0, 0.0) {
        end -= 1;
    }
    &coeffs[..end]
}

/// All roots with repetition, by Aberth–Ehrlich iteration followed by a
/// Newton polish. Exact zero low coefficients are split off as roots at 0.
pub fn all_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>, NumericError> {
    let c = trim(coeffs);
    if c.is_empty() {
        return Err(NumericError::InvalidModel("zero polynomial has no finite root set".into()));
    }
    let zeros = c.iter().take_while(|z| **z == Complex64::new(0.0, 0.0)).count();
    let c = &c[zeros..];
    let n = c.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if n == 0 {
        return Ok(roots);
    }
    if n == 1 {
        roots.push(-c[0] / c[1]);
        return Ok(roots);
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|&a| a / lead).collect();
    let scale: f64 = monic[..n]
        .iter()
        .enumerate()
        .map(|(k, a)| a.norm().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-300);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(scale, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let coeff_mag: f64 = monic.iter().map(|a| a.norm()).sum();
    let mut converged = vec![false; n];
    for _ in 0..MAX_ITER {
        let mut all = true;
        for k in 0..n {
            if converged[k] {
                continue;
            }
            let (p, dp) = horner(&monic, z[k]);
            let radius = z[k].norm().max(1.0);
            if p.norm() <= 4.0 * f64::EPSILON * coeff_mag * radius.powi(n as i32) {
                converged[k] = true;
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                z[k] += Complex64::new(1e-8 * radius, 1e-8 * radius);
                all = false;
                continue;
            }
            z[k] -= w;
            if w.norm() <= 1e-15 * z[k].norm().max(1e-300) {
                converged[k] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&monic, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            let cand = *r - step;
            if horner(&monic, cand).0.norm() < p.norm() {
                *r = cand;
            } else {
                break;
            }
        }
    }
    let worst = z
        .iter()
        .map(|&r| horner(&monic, r).0.norm() / (coeff_mag * r.norm().max(1.0).powi(n as i32)))
        .fold(0.0, f64::max);
    if !worst.is_finite() || worst > 1e-8 {
        return Err(NumericError::NonConvergence { iterations: MAX_ITER, residual: worst });
    }
    roots.extend(z);
    Ok(roots)
}

/// Groups roots within [`CLUSTER_TOL`] and reports multiplicities, ordered
/// by real part then imaginary part.
pub fn cluster_roots(roots: &[Complex64], tol: f64) -> Vec<RootCluster> {
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for &r in roots {
        match clusters.iter_mut().find(|(c, m)| (*c / *m as f64 - r).norm() <= tol * r.norm().max(1.0)) {
            Some((c, m)) => {
                *c += r;
                *m += 1;
            }
            None => clusters.push((r, 1)),
        }
    }
    let mut out: Vec<RootCluster> =
        clusters.into_iter().map(|(c, m)| RootCluster { value: c / m as f64, multiplicity: m }).collect();
    out.sort_by(|a, b| a.value.re.total_cmp(&b.value.re).then(a.value.im.total_cmp(&b.value.im)));
    out
}

/// Roots of `Σ cₖ tᵏ` with multiplicity clusters.
pub fn poly_roots(coeffs: &[Complex64]) -> Result<Vec<RootCluster>, NumericError> {
    Ok(cluster_roots(&all_roots(coeffs)?, CLUSTER_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(c: &[f64]) -> Vec<Complex64> {
        c.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn quadratic() {
        let r = poly_roots(&re(&[-1.0, 0.0, 1.0])).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0].value + 1.0).norm() < 1e-14);
        assert!((r[1].value - 1.0).norm() < 1e-14);
    }

    #[test]
    fn cube_roots_of_four() {
        // bisection oracle for the real root of t³ − 4
        let (mut lo, mut hi) = (1.0f64, 2.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid * mid * mid > 4.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let r = poly_roots(&re(&[-4.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!(r.len(), 3);
        let real: Vec<_> = r.iter().filter(|c| c.value.im.abs() < 1e-12).collect();
        assert_eq!(real.len(), 1);
        assert!((real[0].value.re - lo).abs() < 1e-14);
        let complex: Vec<_> = r.iter().filter(|c| c.value.im.abs() > 1e-3).collect();
        assert_eq!(complex.len(), 2);
        assert!((complex[0].value - complex[1].value.conj()).norm() < 1e-13);
    }

    #[test]
    fn double_root_clusters() {
        let r = poly_roots(&re(&[4.0, -4.0, 1.0])).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].multiplicity, 2);
        assert!((r[0].value - 2.0).norm() < 1e-7);
    }

    #[test]
    fn zero_low_coefficients() {
        let r = all_roots(&re(&[0.0, 0.0, 1.0, 1.0])).unwrap();
        assert_eq!(r.iter().filter(|z| z.norm() == 0.0).count(), 2);
        assert!(r.iter().any(|z| (*z + 1.0).norm() < 1e-14));
    }

    #[test]
    fn high_degree_roots_of_unity() {
        let mut c = vec![Complex64::new(0.0, 0.0); 31];
        c[0] = Complex64::new(-1.0, 0.0);
        c[30] = Complex64::new(1.0, 0.0);
        let r = all_roots(&c).unwrap();
        assert_eq!(r.len(), 30);
        assert!(r.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
    }
}
