//! Scalar abstractions.
//!
//! Exact kernels are generic over [`ExactInt`] (machine integers or
//! [`num_bigint::BigInt`]); numeric routines are generic over [`Real`]
//! (`f32` or `f64`).

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Float, FloatConst, FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer ring element: `i64`, `i128` or `BigInt`.
///
/// Machine widths are only safe when the caller has bounded intermediate
/// growth (see [`crate::linalg::hadamard_fits`]).
pub trait ExactInt:
    Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn to_bigint(&self) -> BigInt;
}

impl ExactInt for i64 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Floating-point scalar for periods, measures and fits.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static {
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("representable literal")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Serde adapter writing big integers as decimal strings.
pub mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}
