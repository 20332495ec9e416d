//! Scalar abstraction for diagram coordinates.
//!
//! Every geometric predicate in this crate is a sign test or a comparison, so
//! the coordinate type only needs exact field arithmetic and a total order.
//! Arbitrary-precision rationals are the default; `Ratio<i64>` works as long
//! as the denominators stay small (every fork halves a gap).

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Exact ordered field used for coordinates.
pub trait Scalar:
    Num + Signed + Ord + Clone + Debug + Display + ToPrimitive + FromPrimitive + Send + Sync + 'static
{
    fn half(&self) -> Self {
        self.clone() / (Self::one() + Self::one())
    }

    /// Lossy conversion used only by the renderers.
    fn approx_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Integer + Signed + Clone + Debug + Display + ToPrimitive + Send + Sync + 'static,
    Ratio<T>: ToPrimitive + FromPrimitive,
{
}

/// Scalars with a lossless `"numerator/denominator"` text form.
pub trait RationalText: Scalar {
    fn to_ratio_string(&self) -> String;
    fn parse_ratio(text: &str) -> Result<Self, RatioParseError>;
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatioParseError {
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("malformed rational {0:?}")]
    Malformed(String),
}

impl<T> RationalText for Ratio<T>
where
    T: Integer + Signed + Clone + Debug + Display + FromStr + ToPrimitive + Send + Sync + 'static,
    Ratio<T>: ToPrimitive + FromPrimitive,
{
    fn to_ratio_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse_ratio(text: &str) -> Result<Self, RatioParseError> {
        let malformed = || RatioParseError::Malformed(text.to_string());
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text.trim(), "1"),
        };
        let num: T = num.parse().map_err(|_| malformed())?;
        let den: T = den.parse().map_err(|_| malformed())?;
        if den.is_zero() {
            return Err(RatioParseError::ZeroDenominator(text.to_string()));
        }
        Ok(Ratio::new(num, den))
    }
}

/// Builds a scalar from a small integer.
pub fn from_int<S: Scalar>(value: i64) -> S {
    S::from_i64(value).expect("every exact scalar holds small integers")
}
