use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

/// A point `(u : v)` of `P¹` stored with `|u|² + |v|² = 1` and its first
/// nonzero coordinate real and positive.
#[derive(Clone, Copy, PartialEq)]
pub struct ProjPoint {
    u: Complex64,
    v: Complex64,
}

impl ProjPoint {
    /// `None` for `(0 : 0)` or non-finite input.
    pub fn new(u: Complex64, v: Complex64) -> Option<Self> {
        let n = (u.norm_sqr() + v.norm_sqr()).sqrt();
        if n == 0.0 || !n.is_finite() {
            return None;
        }
        let (u, v) = (u / n, v / n);
        let lead = if u != Complex64::new(0.0, 0.0) { u } else { v };
        let phase = lead.conj() / lead.norm();
        Some(Self { u: u * phase, v: v * phase })
    }

    pub fn affine(t: Complex64) -> Self {
        Self::new(t, Complex64::new(1.0, 0.0)).expect("finite affine coordinate")
    }

    pub fn infinity() -> Self {
        Self { u: Complex64::new(1.0, 0.0), v: Complex64::new(0.0, 0.0) }
    }

    pub fn coords(&self) -> (Complex64, Complex64) {
        (self.u, self.v)
    }

    /// `u/v`, or `None` at infinity.
    pub fn to_affine(&self) -> Option<Complex64> {
        if self.v == Complex64::new(0.0, 0.0) {
            None
        } else {
            Some(self.u / self.v)
        }
    }

    /// Chordal distance `|u₁v₂ − u₂v₁|`, at most 1.
    pub fn chordal(&self, other: &Self) -> f64 {
        (self.u * other.v - other.u * self.v).norm()
    }

    /// Image on the unit sphere under the Hopf map; Euclidean distance there
    /// is twice the chordal distance.
    pub fn sphere(&self) -> [f64; 3] {
        let w = self.u * self.v.conj();
        [2.0 * w.re, 2.0 * w.im, self.u.norm_sqr() - self.v.norm_sqr()]
    }

    /// Parses `"inf"`, `"2"`, `"-1.5"`, `"1+2i"`, `"0.5-i"`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Self::infinity());
        }
        parse_complex(s).map(Self::affine).ok_or_else(|| format!("cannot parse point {s:?}"))
    }
}

fn parse_complex(s: &str) -> Option<Complex64> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(body) = s.strip_suffix('i') {
        // split at the last sign that is not an exponent sign or leading
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'e' && bytes[k - 1] != b'E');
        let (re, im) = match split {
            Some(k) => (body[..k].parse().ok()?, &body[k..]),
            None => (0.0, body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            x => x.parse().ok()?,
        };
        Some(Complex64::new(re, im))
    } else {
        Some(Complex64::new(s.parse().ok()?, 0.0))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_affine() {
            None => write!(f, "inf"),
            Some(t) => write!(f, "{t}"),
        }
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.to_affine() {
            None => s.serialize_str("inf"),
            Some(t) => (t.re, t.im).serialize(s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_is_canonical() {
        let p = ProjPoint::new(Complex64::new(0.0, 2.0), Complex64::new(2.0, 0.0)).unwrap();
        let q = ProjPoint::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0)).unwrap();
        assert!(p.chordal(&q) < 1e-15);
        assert!((p.coords().0.im).abs() < 1e-15 && p.coords().0.re > 0.0);
        let again = ProjPoint::new(p.u, p.v).unwrap();
        assert!((again.u - p.u).norm() < 1e-15 && (again.v - p.v).norm() < 1e-15);
        assert!(ProjPoint::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)).is_none());
    }

    #[test]
    fn infinity_and_parsing() {
        assert_eq!(ProjPoint::parse("inf").unwrap().to_affine(), None);
        assert_eq!(ProjPoint::parse("2").unwrap().to_affine(), Some(Complex64::new(2.0, 0.0)));
        let z = ProjPoint::parse("1.5-2i").unwrap().to_affine().unwrap();
        assert!((z - Complex64::new(1.5, -2.0)).norm() < 1e-14);
        let z = ProjPoint::parse("-i").unwrap().to_affine().unwrap();
        assert!((z - Complex64::new(0.0, -1.0)).norm() < 1e-14);
        let z = ProjPoint::parse("1e-3+1e-3i").unwrap().to_affine().unwrap();
        assert!((z - Complex64::new(1e-3, 1e-3)).norm() < 1e-16);
        assert!(ProjPoint::parse("abc").is_err());
        let big = ProjPoint::affine(Complex64::new(1e12, 0.0));
        assert!(big.chordal(&ProjPoint::infinity()) < 1e-11);
    }

    #[test]
    fn sphere_distance_is_twice_chordal() {
        let p = ProjPoint::affine(Complex64::new(0.3, -0.7));
        let q = ProjPoint::affine(Complex64::new(-2.0, 1.1));
        let (a, b) = (p.sphere(), q.sphere());
        let e = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt();
        assert!((e - 2.0 * p.chordal(&q)).abs() < 1e-14);
    }
}
