//! KU-local zeta functions of finite CW-complexes.
//!
//! A finite CW-complex with even-concentrated K-theory and square-free
//! K-theoretic torsion determines a zeta function: a product of shifted
//! Riemann zeta factors ζ(s−w) coming from the free part of K-theory, and
//! Dirichlet L-factors L(s−w, χ) coming from order-ℓ characters of conductor
//! ℓ² attached to the torsion. Denominators of its special values at
//! non-positive integers give orders of KU-local stable homotopy groups of
//! the Spanier-Whitehead dual, away from 2 and a chosen set of primes.
//!
//! The crate computes these factorizations and special values exactly
//! (arbitrary-precision rationals, cyclotomic field arithmetic, generalized
//! Bernoulli numbers), and provides numeric verifiers for Euler-product
//! truncations and functional equations.

pub mod arith;
pub mod bernoulli;
pub mod characters;
pub mod cyclotomic;
pub mod error;
pub mod ku;
pub mod lfunctions;
pub mod numeric;
pub mod zeta;

pub use error::{Error, Result};

/// Arbitrary-precision signed integers.
pub type Int = num::BigInt;
/// Arbitrary-precision non-negative integers.
pub type Nat = num::BigUint;
/// Arbitrary-precision reduced fractions; the value type for all special values.
pub type Rational = num::BigRational;
/// Double-precision complex numbers; the value type for all numeric paths.
pub type C64 = num::complex::Complex64;
