use std::ops::{Add, Mul, Sub};

use num::{One, Zero};
use serde::Serialize;

use super::{Scalar, UniPoly};
use crate::error::{Error, Result};

/// Truncated series `c_0 + c_1 u^{-1} + … + c_T u^{-T}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvSeries {
    #[serde(with = "super::scalar_vec_serde")]
    coeffs: Vec<Scalar>,
}

impl InvSeries {
    /// Coefficients `c_0, …, c_T`; the truncation order is `coeffs.len() - 1`.
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Scalar::zero());
        }
        InvSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        InvSeries {
            coeffs: vec![Scalar::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = InvSeries::zero(order);
        s.coeffs[0] = Scalar::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn constant(&self) -> &Scalar {
        &self.coeffs[0]
    }

    /// Coefficient of `u^{-t}`; zero beyond the truncation order.
    pub fn coeff(&self, t: usize) -> Scalar {
        self.coeffs.get(t).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Scalar::zero());
        InvSeries { coeffs }
    }

    /// Expansion of `num / den` in `u^{-1}`, requiring `deg num ≤ deg den`.
    pub fn from_rational(num: &UniPoly, den: &UniPoly, order: usize) -> Result<Self> {
        let dd = den
            .degree()
            .ok_or_else(|| Error::DegreeMismatch("zero denominator".into()))?;
        let Some(nd) = num.degree() else {
            return Ok(InvSeries::zero(order));
        };
        if nd > dd {
            return Err(Error::DegreeMismatch(format!(
                "numerator degree {nd} exceeds denominator degree {dd}"
            )));
        }
        // In x = 1/u: num/den = x^{dd-nd} · rev(num)(x) / rev(den)(x).
        let lead = den.coeff(dd);
        let rev_num: Vec<Scalar> = (0..=nd).map(|t| num.coeff(nd - t)).collect();
        let rev_den: Vec<Scalar> = (0..=dd).map(|t| den.coeff(dd - t)).collect();
        let shift = dd - nd;
        let mut q = vec![Scalar::zero(); order + 1];
        for t in 0..=order {
            if t < shift {
                continue;
            }
            let s = t - shift;
            let mut acc = rev_num.get(s).cloned().unwrap_or_else(Scalar::zero);
            for m in 1..=s.min(dd) {
                acc -= &rev_den[m] * &q[t - m];
            }
            q[t] = acc / &lead;
        }
        Ok(InvSeries { coeffs: q })
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NonInvertibleSeries);
        }
        let n = self.coeffs.len();
        let mut inv = vec![Scalar::zero(); n];
        inv[0] = Scalar::one() / &self.coeffs[0];
        for t in 1..n {
            let mut acc = Scalar::zero();
            for m in 1..=t {
                acc += &self.coeffs[m] * &inv[t - m];
            }
            inv[t] = -acc * &inv[0];
        }
        Ok(InvSeries { coeffs: inv })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        InvSeries {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }
}

impl Mul for &InvSeries {
    type Output = InvSeries;
    fn mul(self, rhs: &InvSeries) -> InvSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut out = vec![Scalar::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        InvSeries { coeffs: out }
    }
}

impl Add for &InvSeries {
    type Output = InvSeries;
    fn add(self, rhs: &InvSeries) -> InvSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        InvSeries {
            coeffs: (0..n).map(|t| &self.coeffs[t] + &rhs.coeffs[t]).collect(),
        }
    }
}

impl Sub for &InvSeries {
    type Output = InvSeries;
    fn sub(self, rhs: &InvSeries) -> InvSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        InvSeries {
            coeffs: (0..n).map(|t| &self.coeffs[t] - &rhs.coeffs[t]).collect(),
        }
    }
}

/// Expansion `1 + Σ c_t u^{-t}` of a quotient of monic polynomials of equal degree.
pub fn series_quotient(num: &UniPoly, den: &UniPoly, order: usize) -> Result<InvSeries> {
    if num.degree() != den.degree() {
        return Err(Error::DegreeMismatch(format!(
            "deg num = {:?}, deg den = {:?}",
            num.degree(),
            den.degree()
        )));
    }
    if !num.is_monic() || !den.is_monic() {
        return Err(Error::NotMonic);
    }
    InvSeries::from_rational(num, den, order)
}
