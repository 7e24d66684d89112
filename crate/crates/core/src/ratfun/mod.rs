//! Exact arithmetic on multivariate polynomials, rational functions and
//! Laurent expansions over the rationals.
//!
//! All types are kept in canonical form: two equal values always have the
//! same representation, so zero-testing and equality are structural.

mod gcd;
mod laurent;
mod modp;
mod monomial;
mod poly;
mod rational;
mod sum;
mod var;

pub use laurent::{expand_at_infinity, laurent_coeff, LaurentPoly};
pub use monomial::Monomial;
pub use poly::Poly;
pub use rational::RatFun;
pub use sum::RatFunSum;
pub use var::Var;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p/q` (or `p` for integers).
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
