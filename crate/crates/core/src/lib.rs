//! Exact arithmetic for periodic components of algebraic groups whose
//! identity component is a torus.
//!
//! A connected component is *periodic* when every element in it has finite
//! order. The crate works entirely with exact integers and with torsion
//! points of tori written as vectors over `Q/Z`, so every order it reports
//! is computed, not estimated.
//!
//! * [`linalg`]: integer matrices, determinants, characteristic polynomials,
//!   ranks and Smith normal forms over arbitrary-precision integers.
//! * [`torus`]: cyclic extensions `T ∪ gT ∪ … ∪ g^{m-1}T` restricted to
//!   torsion points, periodicity test, fixed-point subgroups, element orders
//!   and the order bounds.
//! * [`monomial`]: monomial matrices whose nonzero entries are roots of
//!   unity, used for explicit elements of normalizers of tori.
//! * [`weyl`]: root system tables, Weyl group enumeration, the census of
//!   periodic components of `N_G(T)` and explicit normalizer lifts.

pub mod error;
pub mod exec;
pub mod json;
pub mod linalg;
pub mod monomial;
pub mod qz;
pub mod torus;
pub mod weyl;

pub use error::{Error, Result};
pub use exec::Execution;
pub use linalg::{IntMatrix, IntPolynomial, SmithForm};
pub use monomial::MonomialMatrix;
pub use qz::Qz;
pub use torus::{CyclicExtension, ExtElement, FixedSubgroup, TorsionPoint, TorusAutomorphism};
pub use weyl::{CensusReport, Family, RootSystemType, SignedPermutation, WeylElement};
