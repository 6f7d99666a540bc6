//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers. Determinant and
//! rank use fraction-free (Bareiss) elimination, the characteristic
//! polynomial uses the division-exact Faddeev–LeVerrier recurrence, and the
//! Smith normal form tracks both unimodular transforms.

pub(crate) mod matrix;
mod poly;
mod smith;

pub use matrix::IntMatrix;
pub use poly::IntPolynomial;
pub use smith::{smith_normal_form, SmithForm};

use num_bigint::BigInt;

/// Determinant.
pub fn det(a: &IntMatrix) -> BigInt {
    a.det()
}

/// Characteristic polynomial `det(λI − A)`.
pub fn char_poly(a: &IntMatrix) -> IntPolynomial {
    a.char_poly()
}

/// Rank over `Q`.
pub fn rank(a: &IntMatrix) -> usize {
    a.rank()
}

/// `Σ_{j=0}^{m-1} A^j`.
pub fn power_sum(a: &IntMatrix, m: u64) -> IntMatrix {
    a.power_sum(m)
}

/// Exact evaluation of `p` at an integer.
pub fn eval_poly(p: &IntPolynomial, t: &BigInt) -> BigInt {
    p.eval(t)
}
