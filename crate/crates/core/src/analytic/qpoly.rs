use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::NumericError;

/// Univariate polynomial with exact rational coefficients, low degree first.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"-p/q"` or a decimal like `"0.25"`.
pub fn parse_rational(s: &str) -> Result<BigRational, NumericError> {
    let s = s.trim();
    let bad = || NumericError::InvalidModel(format!("cannot parse {s:?} as a rational number"));
    if let Some((p, d)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, d));
    }
    if let Some((i, f)) = s.split_once('.') {
        let neg = i.starts_with('-');
        let digits = format!("{}{}", i.trim_start_matches(['-', '+']), f);
        let num: BigInt = digits.parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), f.len());
        let r = BigRational::new(num, den);
        return Ok(if neg { -r } else { r });
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn parse(c: &[impl AsRef<str>]) -> Result<Self, NumericError> {
        Ok(Self::new(c.iter().map(|s| parse_rational(s.as_ref())).collect::<Result<_, _>>()?))
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| Complex64::new(rational_to_f64(c), 0.0)).collect()
    }

    /// Coefficients padded with zeros to length `len`.
    pub fn padded(&self, len: usize) -> Vec<BigRational> {
        (0..len).map(|k| self.coeff(k)).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * q(k as i64)).collect())
    }

    /// Euclidean division: `(quotient, remainder)`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dj;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&(BigRational::one() / self.leading()))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    /// Newton interpolation through `(xs[i], ys[i])`.
    pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Self {
        let m = xs.len();
        let mut dd: Vec<BigRational> = ys.to_vec();
        for level in 1..m {
            for i in (level..m).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
            }
        }
        let mut out = Self::zero();
        for i in (0..m).rev() {
            out = out.mul(&Self::new(vec![-xs[i].clone(), BigRational::one()])).add(&Self::constant(dd[i].clone()));
        }
        out
    }
}

/// Determinant over the rationals by Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            let (top, bottom) = m.split_at_mut(r);
            for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// Resultant of coefficient vectors of formal degrees `len-1`, via the
/// Sylvester matrix. Vanishing leading coefficients are kept as given.
pub fn sylvester_resultant(a: &[BigRational], b: &[BigRational]) -> BigRational {
    let (da, db) = (a.len() - 1, b.len() - 1);
    let size = da + db;
    if size == 0 {
        return BigRational::one();
    }
    let mut m = vec![vec![BigRational::zero(); size]; size];
    for r in 0..db {
        for (k, c) in a.iter().rev().enumerate() {
            m[r][r + k] = c.clone();
        }
    }
    for r in 0..da {
        for (k, c) in b.iter().rev().enumerate() {
            m[db + r][r + k] = c.clone();
        }
    }
    determinant(m)
}

pub fn resultant(a: &QPoly, b: &QPoly) -> BigRational {
    if a.is_zero() || b.is_zero() {
        return BigRational::zero();
    }
    sylvester_resultant(a.coeffs(), b.coeffs())
}

/// The pencil `N(t) − x·D(t)` of formal degree `n = max(deg N, deg D)`, as
/// coefficient vectors of `t` whose entries are linear in `x`.
fn pencil_at(num: &QPoly, den: &QPoly, n: usize, x: &BigRational) -> Vec<BigRational> {
    (0..=n).map(|k| num.coeff(k) - x * den.coeff(k)).collect()
}

/// `Res_t(P, ∂P/∂t)` for `P = N − x·D` of formal degree `n`, as a polynomial
/// in `x`. Degree at most `2n − 1`; computed by exact evaluation at `2n`
/// integer points and interpolation. Its roots contain every finite branch
/// value, together with `φ(∞)` when the leading coefficient of `P` can vanish.
pub fn t_discriminant(num: &QPoly, den: &QPoly) -> QPoly {
    let n = num.degree().unwrap_or(0).max(den.degree().unwrap_or(0));
    if n <= 1 {
        return QPoly::constant(BigRational::one());
    }
    let xs: Vec<BigRational> = (0..2 * n as i64).map(q).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|x| {
            let p = pencil_at(num, den, n, x);
            let dp: Vec<BigRational> = (1..=n).map(|k| &p[k] * q(k as i64)).collect();
            sylvester_resultant(&p, &dp)
        })
        .collect();
    QPoly::interpolate(&xs, &ys)
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            let body = match (k, a.is_one()) {
                (0, _) => a.to_string(),
                (1, true) => "t".to_string(),
                (1, false) => format!("{a}*t"),
                (_, true) => format!("t^{k}"),
                (_, false) => format!("{a}*t^{k}"),
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, " {sign} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("-3/6").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert_eq!(parse_rational("0.25").unwrap(), BigRational::new(1.into(), 4.into()));
        assert_eq!(parse_rational("-1.5").unwrap(), BigRational::new((-3).into(), 2.into()));
        assert_eq!(parse_rational(" 7 ").unwrap(), q(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn resultant_detects_common_roots() {
        let a = QPoly::from_ints(&[-1, 0, 1]);
        let b = QPoly::from_ints(&[-1, 1]);
        assert!(resultant(&a, &b).is_zero());
        let c = QPoly::from_ints(&[-2, 1]);
        // Res(t² − 1, t − 2) = 2² − 1
        assert_eq!(resultant(&a, &c), q(3));
    }

    #[test]
    fn cubic_pencil_discriminant() {
        // t² − x(t³ − 4): discriminant −16x − 432x⁴, resultant differs by −lc = x
        let num = QPoly::from_ints(&[0, 0, 1]);
        let den = QPoly::from_ints(&[-4, 0, 0, 1]);
        let r = t_discriminant(&num, &den);
        let disc = QPoly::from_ints(&[0, -16, 0, 0, -432]);
        let ratio = r.div_rem(&disc);
        assert!(ratio.1.is_zero(), "{r}");
        assert_eq!(ratio.0.degree(), Some(1));
        assert_eq!(r.squarefree_part(), QPoly::parse(&["0", "1/27", "0", "0", "1"]).unwrap());
    }

    #[test]
    fn gcd_and_interpolation() {
        let a = QPoly::from_ints(&[-1, 0, 1]).mul(&QPoly::from_ints(&[3, 1]));
        let b = QPoly::from_ints(&[-1, 0, 1]).mul(&QPoly::from_ints(&[5, 1]));
        assert_eq!(a.gcd(&b), QPoly::from_ints(&[-1, 0, 1]));
        let xs: Vec<_> = (0..4).map(q).collect();
        let ys: Vec<_> = xs.iter().map(|x| a.eval(x)).collect();
        assert_eq!(QPoly::interpolate(&xs, &ys), a);
        assert_eq!(a.to_string(), "t^3 + 3*t^2 - t - 3");
    }
}
