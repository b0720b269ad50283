use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::map::{RationalMap, RationalMapJson};
use super::qpoly::{resultant, QPoly};
use super::NumericError;

pub const DEFAULT_PRECISION: usize = 128;

/// A cover `φ: P¹ → P¹` together with the double cover `y² = f(x)`, both
/// over the same `x`-line.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverModel {
    pub phi: RationalMap,
    pub f: QPoly,
    pub precision_bits: usize,
    pub base_point: Option<Complex64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverModelJson {
    pub phi: RationalMapJson,
    pub f: Vec<String>,
    #[serde(default = "default_precision")]
    pub precision_bits: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_point: Option<[f64; 2]>,
}

fn default_precision() -> usize {
    DEFAULT_PRECISION
}

impl CoverModel {
    pub fn new(phi: RationalMap, f: QPoly, precision_bits: usize) -> Result<Self, NumericError> {
        match f.degree() {
            Some(3) | Some(4) => {}
            d => return Err(NumericError::InvalidModel(format!("f must have degree 3 or 4, got {d:?}"))),
        }
        if resultant(&f, &f.derivative()).is_zero() {
            return Err(NumericError::InvalidModel(format!("f = {f} is not squarefree")));
        }
        if precision_bits < 24 {
            return Err(NumericError::InvalidModel(format!("precision {precision_bits} bits is too small")));
        }
        Ok(Self { phi, f, precision_bits, base_point: None })
    }

    pub fn with_base_point(mut self, b: Complex64) -> Self {
        self.base_point = Some(b);
        self
    }

    pub fn with_precision(mut self, bits: usize) -> Self {
        self.precision_bits = bits;
        self
    }

    pub fn from_json(j: &CoverModelJson) -> Result<Self, NumericError> {
        let m = Self::new(RationalMap::from_json(&j.phi)?, QPoly::parse(&j.f)?, j.precision_bits)?;
        Ok(match j.base_point {
            Some([re, im]) => m.with_base_point(Complex64::new(re, im)),
            None => m,
        })
    }

    pub fn to_json(&self) -> CoverModelJson {
        CoverModelJson {
            phi: self.phi.to_json(),
            f: self.f.coeffs().iter().map(ToString::to_string).collect(),
            precision_bits: self.precision_bits,
            base_point: self.base_point.map(|z| [z.re, z.im]),
        }
    }
}
