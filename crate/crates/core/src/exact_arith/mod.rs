//! Exact rationals, univariate polynomials in `u` and truncated series in `u^{-1}`.

mod generic;
mod poly;
mod series;

pub use generic::{generic_instantiate, lagrange_coefficient, GenericAssignment};
pub use poly::UniPoly;
pub use series::{series_quotient, InvSeries};

use num::{BigInt, BigRational, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_integer(x: &Scalar) -> bool {
    x.is_integer()
}

/// `Some(n)` when `x` is an integer that fits in `i64`.
pub fn to_i64(x: &Scalar) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.numer()).ok()
}

/// Canonical text form: `"p/q"`, or `"p"` for integers.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Floor of a rational as a big integer.
pub fn floor(x: &Scalar) -> BigInt {
    x.floor().to_integer()
}

/// Fractional part in `[0, 1)`.
pub fn fract(x: &Scalar) -> Scalar {
    x - x.floor()
}

/// Serde adapter writing scalars as strings.
pub mod scalar_serde {
    use super::{format_scalar, parse_scalar, Scalar};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let raw = String::deserialize(d)?;
        parse_scalar(&raw).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Scalar>`.
pub mod scalar_vec_serde {
    use super::{format_scalar, parse_scalar, Scalar};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
        xs.iter()
            .map(format_scalar)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Scalar>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|r| parse_scalar(r).map_err(serde::de::Error::custom))
            .collect()
    }
}
