use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::qpoly::{resultant, QPoly};
use super::NumericError;

/// `φ = N/D` with exact rational coefficients and no common root.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap {
    num: QPoly,
    den: QPoly,
    num_c: Vec<Complex64>,
    den_c: Vec<Complex64>,
}

/// JSON form: coefficient strings, low degree first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalMapJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

impl RationalMap {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self, NumericError> {
        if den.is_zero() {
            return Err(NumericError::InvalidModel("denominator is zero".into()));
        }
        if num.is_zero() {
            return Err(NumericError::InvalidModel("numerator is zero, map is constant".into()));
        }
        if num.degree() > Some(0) && den.degree() > Some(0) && resultant(&num, &den).is_zero() {
            return Err(NumericError::InvalidModel(format!("numerator {num} and denominator {den} share a root")));
        }
        if num.degree() == Some(0) && den.degree() == Some(0) {
            return Err(NumericError::InvalidModel("map is constant".into()));
        }
        let (num_c, den_c) = (num.to_complex(), den.to_complex());
        Ok(Self { num, den, num_c, den_c })
    }

    pub fn from_ints(num: &[i64], den: &[i64]) -> Result<Self, NumericError> {
        Self::new(QPoly::from_ints(num), QPoly::from_ints(den))
    }

    pub fn from_json(j: &RationalMapJson) -> Result<Self, NumericError> {
        Self::new(QPoly::parse(&j.num)?, QPoly::parse(&j.den)?)
    }

    pub fn to_json(&self) -> RationalMapJson {
        RationalMapJson {
            num: self.num.coeffs().iter().map(ToString::to_string).collect(),
            den: self.den.coeffs().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    /// `φ(∞)` as a finite value, or `None` when it is `∞`.
    pub fn value_at_infinity(&self) -> Option<Complex64> {
        let (dn, dd) = (self.num.degree().unwrap_or(0), self.den.degree().unwrap_or(0));
        if dn > dd {
            None
        } else if dn < dd {
            Some(Complex64::zero())
        } else {
            Some(Complex64::new(super::qpoly::rational_to_f64(&(self.num.leading() / self.den.leading())), 0.0))
        }
    }

    /// Homogeneous image of `(a : b)`: `(N_h(a,b) : D_h(a,b))` with both
    /// forms of degree `deg φ`.
    pub fn eval_homogeneous(&self, a: Complex64, b: Complex64) -> (Complex64, Complex64) {
        let d = self.degree();
        let form = |c: &[Complex64]| -> Complex64 {
            let mut acc = Complex64::zero();
            let mut apow = Complex64::new(1.0, 0.0);
            let mut bpows = vec![Complex64::new(1.0, 0.0); d + 1];
            for k in 1..=d {
                bpows[k] = bpows[k - 1] * b;
            }
            for k in 0..=d {
                if let Some(&ck) = c.get(k) {
                    acc += ck * apow * bpows[d - k];
                }
                apow *= a;
            }
            acc
        };
        (form(&self.num_c), form(&self.den_c))
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        let (n, d) = self.eval_homogeneous(t, Complex64::new(1.0, 0.0));
        n / d
    }

    /// Coefficients of `v·N(t) − u·D(t)` padded to formal degree `deg φ`; its
    /// roots are the finite preimages of `(u : v)`, and the drop from formal
    /// degree counts preimages at `∞`.
    pub fn preimage_poly(&self, u: Complex64, v: Complex64) -> Vec<Complex64> {
        let d = self.degree();
        (0..=d)
            .map(|k| {
                let n = self.num_c.get(k).copied().unwrap_or_default();
                let m = self.den_c.get(k).copied().unwrap_or_default();
                v * n - u * m
            })
            .collect()
    }

    /// Finite critical points: roots of `N'D − ND'`.
    pub fn critical_points(&self) -> Result<Vec<Complex64>, NumericError> {
        let w = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        if w.degree().unwrap_or(0) == 0 {
            return Ok(Vec::new());
        }
        super::roots::all_roots(&w.to_complex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn common_root_is_rejected() {
        assert!(RationalMap::from_ints(&[-1, 0, 1], &[-1, 1]).is_err());
        assert!(RationalMap::from_ints(&[0, 0, 1], &[-4, 0, 0, 1]).is_ok());
        assert!(RationalMap::from_ints(&[1], &[0]).is_err());
    }

    #[test]
    fn values() {
        let phi = RationalMap::from_ints(&[0, 0, 1], &[-4, 0, 0, 1]).unwrap();
        assert_eq!(phi.degree(), 3);
        assert_eq!(phi.value_at_infinity(), Some(Complex64::zero()));
        let v = phi.eval(Complex64::new(2.0, 0.0));
        assert!((v - 1.0).norm() < 1e-15);
        let sq = RationalMap::from_ints(&[0, 0, 1], &[1]).unwrap();
        assert_eq!(sq.value_at_infinity(), None);
        assert_eq!(sq.preimage_poly(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)).len(), 3);
    }
}
