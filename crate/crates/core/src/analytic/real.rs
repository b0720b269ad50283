//! Scalar types for path tracking: `f64` when 53 bits suffice, binary
//! big floats otherwise. Every value carries the working precision.

use std::fmt::Debug;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use num_complex::Complex64;
use num_rational::BigRational;

use super::qpoly::rational_to_f64;

pub type Big = FBig<HalfEven, 2>;

pub trait Real: Clone + Debug + Send + Sync + 'static {
    fn from_f64(x: f64, prec: usize) -> Self;
    fn from_rational(r: &BigRational, prec: usize) -> Self;
    fn to_f64(&self) -> f64;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Real for f64 {
    fn from_f64(x: f64, _: usize) -> Self {
        x
    }
    fn from_rational(r: &BigRational, _: usize) -> Self {
        rational_to_f64(r)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

fn big_int(i: &num_bigint::BigInt, prec: usize) -> Big {
    let s = i.to_str_radix(2);
    let v: Big = s.parse().expect("binary digits parse");
    v.with_precision(prec.max(1)).value()
}

impl Real for Big {
    fn from_f64(x: f64, prec: usize) -> Self {
        Big::try_from(x).expect("finite f64").with_precision(prec).value()
    }
    fn from_rational(r: &BigRational, prec: usize) -> Self {
        let n = big_int(r.numer(), prec);
        let d = big_int(r.denom(), prec);
        &n / &d
    }
    fn to_f64(&self) -> f64 {
        Big::to_f64(self).value()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn sqrt(&self) -> Self {
        dashu_float::FBig::sqrt(self)
    }
    fn is_zero(&self) -> bool {
        *self == Big::ZERO
    }
}

/// Complex number over a [`Real`].
#[derive(Clone, Debug)]
pub struct Cx<R: Real> {
    pub re: R,
    pub im: R,
}

impl<R: Real> Cx<R> {
    pub fn new(re: R, im: R) -> Self {
        Self { re, im }
    }

    pub fn from_c64(z: Complex64, prec: usize) -> Self {
        Self { re: R::from_f64(z.re, prec), im: R::from_f64(z.im, prec) }
    }

    pub fn real(r: R, prec: usize) -> Self {
        Self { re: r, im: R::from_f64(0.0, prec) }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, r: &R) -> Self {
        Self { re: self.re.mul(r), im: self.im.mul(r) }
    }

    pub fn norm_sqr(&self) -> R {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn div(&self, o: &Self) -> Self {
        let d = o.norm_sqr();
        let num = self.mul(&Self { re: o.re.clone(), im: o.im.neg() });
        Self { re: num.re.div(&d), im: num.im.div(&d) }
    }

    pub fn norm(&self) -> f64 {
        self.to_c64().norm()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// Evaluates `Σ cₖ tᵏ` and its derivative by Horner.
pub fn horner<R: Real>(coeffs: &[Cx<R>], t: &Cx<R>, prec: usize) -> (Cx<R>, Cx<R>) {
    let zero = Cx::from_c64(Complex64::new(0.0, 0.0), prec);
    let mut p = zero.clone();
    let mut dp = zero;
    for c in coeffs.iter().rev() {
        dp = dp.mul(t).add(&p);
        p = p.mul(t).add(c);
    }
    (p, dp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn big_arithmetic_keeps_precision() {
        let third = Big::from_rational(&BigRational::new(BigInt::from(1), BigInt::from(3)), 200);
        let back = third.mul(&Big::from_f64(3.0, 200));
        assert!((Real::to_f64(&back) - 1.0).abs() < 1e-55);
        let two = Big::from_f64(2.0, 200);
        let s = Real::sqrt(&two);
        let err = Real::to_f64(&s.mul(&s).sub(&two)).abs();
        assert!(err < 1e-55, "{err}");
    }

    #[test]
    fn complex_division() {
        let a = Cx::<Big>::from_c64(Complex64::new(1.0, 2.0), 128);
        let b = Cx::<Big>::from_c64(Complex64::new(3.0, -1.0), 128);
        let q = a.div(&b).to_c64();
        let expect = Complex64::new(1.0, 2.0) / Complex64::new(3.0, -1.0);
        assert!((q - expect).norm() < 1e-15);
    }
}
