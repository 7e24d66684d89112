//! Exact symbolic verification of Lie bialgebra structures on the loop
//! algebra `g[u]`, the classical doubles they come from, and quasi-rational
//! solutions of the classical Yang–Baxter equation.
//!
//! Every computation runs over arbitrary-precision rationals. An identity
//! "holds" only when the canonical form of its residual is literally zero.

pub mod cybe;
pub mod doubles;
pub mod error;
pub mod frobenius;
pub mod gauge;
pub mod lie;
pub mod linalg;
pub mod ratfun;
pub mod tensor;
pub mod text;

pub use error::{Error, Result};
pub use ratfun::{Var, Q};
