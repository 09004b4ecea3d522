//! Truncated formal power series with exact rational coefficients.
//!
//! [`USeries`] is a dense univariate series; [`MSeries`] is a sparse multivariate
//! series truncated by total degree and stored as homogeneous components. All
//! transcendental builders (exp, sqrt, inverse, the circular and hyperbolic
//! functions) solve the defining differential relation one degree at a time, so
//! each costs about one multiplication and is exact up to the truncation order.

mod multivariate;
mod univariate;

pub use multivariate::{MSeries, Monomial};
pub use univariate::USeries;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    BigRational::from_integer(n.into())
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}
