//! Numeric abstractions shared by the model, theory and enumeration code.
//!
//! [`Scalar`] is the minimal field-like interface needed to resolve model
//! parameters and to carry exact outcome probabilities; it is implemented for
//! `f32`, `f64` and the exact rationals. [`Real`] adds the transcendental
//! functions required by the closed-form predictions.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Float, FromPrimitive, Num, ToPrimitive, Zero};

pub trait Scalar:
    Num + Clone + PartialOrd + Debug + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Equality used for boundary detection. Exact for rationals, a few ulps
    /// of relative slack for floats.
    fn near(&self, other: &Self) -> bool;

    /// Whether the value is a usable finite number (rules out NaN/inf).
    fn is_finite_value(&self) -> bool;

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn near(&self, other: &Self) -> bool {
                let scale = self.abs().max(other.abs()).max(1.0);
                (self - other).abs() <= 8.0 * <$t>::EPSILON * scale
            }

            fn is_finite_value(&self) -> bool {
                self.is_finite()
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

impl Scalar for BigRational {
    fn near(&self, other: &Self) -> bool {
        self == other
    }

    fn is_finite_value(&self) -> bool {
        true
    }
}

impl Scalar for Ratio<i64> {
    fn near(&self, other: &Self) -> bool {
        self == other
    }

    fn is_finite_value(&self) -> bool {
        true
    }
}

/// Floating-point scalar for the closed-form predictions.
pub trait Real: Scalar + Float + Sum + Display + Copy {
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Exact rational from a decimal literal such as `"0.3"` or `"-1.25"`.
pub fn rational_from_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let r = BigRational::new(numer, denom);
    Some(if neg { -r } else { r })
}
