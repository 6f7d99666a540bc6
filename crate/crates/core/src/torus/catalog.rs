//! Concrete cyclic extensions: tori of `SL_n` normalised by a monomial
//! matrix, and the worked families used in the tests and the CLI.

use num_bigint::BigInt;

use super::extension::CyclicExtension;
use super::point::TorsionPoint;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::monomial::{self, MonomialMatrix};
use crate::qz::Qz;

/// Extension of the diagonal torus `{diag(t_1..t_n) : ∏ t = 1}` of `SL_n`
/// generated by a monomial matrix `g` with `g^m` diagonal.
///
/// Coordinates are `t_1..t_{n-1}`. Since `g⁻¹·diag(t)·g = diag(t_{σ(1)}, …)`,
/// row `j` of `B` is `e_{σ(j)}`, or all `-1` when `σ(j) = n`.
pub fn sl_torus_extension(g: &MonomialMatrix, m: u64) -> Result<CyclicExtension> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidExtension("SL_1 has a trivial torus".into()));
    }
    let r = n - 1;
    let b = IntMatrix::from_fn(r, |j, c| {
        let s = g.sigma()[j];
        let v = if s == r {
            -1
        } else if s == c {
            1
        } else {
            0
        };
        BigInt::from(v)
    });
    let gm = g.pow(m);
    if !gm.is_diagonal() {
        return Err(Error::InvalidExtension(format!(
            "g^{m} is not diagonal, so it does not lie in the torus"
        )));
    }
    let total = gm
        .exponents()
        .iter()
        .fold(Qz::zero(), |acc, q| acc + q.clone());
    if !total.is_zero() {
        return Err(Error::InvalidExtension(format!(
            "det(g^{m}) = exp(2πi·{total}) ≠ 1"
        )));
    }
    let tau0 = TorsionPoint::new(gm.exponents()[..r].to_vec());
    CyclicExtension::new(b, m, tau0)
}

/// `(k-1)×(k-1)` block with ones on the subdiagonal and `-1` down the last
/// column; characteristic polynomial `1 + λ + … + λ^{k-1}`.
pub fn cyclic_character_matrix(k: usize) -> IntMatrix {
    assert!(k >= 2, "k must be at least 2");
    IntMatrix::from_fn(k - 1, |i, j| {
        let v = if j == k - 2 {
            -1
        } else if i == j + 1 {
            1
        } else {
            0
        };
        BigInt::from(v)
    })
}

/// Extension of the `SL_k` torus by the cyclic shift carrying a primitive
/// `k`-th root of unity `ξ`, with `r·k` components and `g^{rk} = ξ^r·E`.
pub fn shift_extension(k: usize, r: u64) -> Result<CyclicExtension> {
    if k < 2 || r == 0 {
        return Err(Error::InvalidExtension(format!(
            "need k ≥ 2 and r ≥ 1, got k = {k}, r = {r}"
        )));
    }
    // exponent action is the transpose of the character matrix
    let b = cyclic_character_matrix(k).transpose();
    let tau0 = TorsionPoint::constant(k - 1, Qz::from_frac(r as i64, k as i64));
    CyclicExtension::new(b, r * k as u64, tau0)
}

/// Companion matrix of a monic integer polynomial (coefficients low first).
pub fn companion(coeffs: &[i64]) -> IntMatrix {
    let d = coeffs.len() - 1;
    assert!(
        d >= 1 && coeffs[d] == 1,
        "monic polynomial of positive degree"
    );
    IntMatrix::from_fn(d, |i, j| {
        let v = if j == d - 1 {
            -coeffs[i]
        } else if i == j + 1 {
            1
        } else {
            0
        };
        BigInt::from(v)
    })
}

/// Coefficients of `(λ^r + 1)/(λ + 1)` for odd `r`.
pub fn alternating_cyclotomic(r: usize) -> Vec<i64> {
    assert!(r % 2 == 1, "λ + 1 divides λ^r + 1 only for odd r");
    (0..r).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect()
}

/// Torus of dimension `r - 1` acted on by the companion matrix of
/// `(λ^r + 1)/(λ + 1)`, with `m` components and `g^m = e`.
///
/// `χ(1) = 1`, so the fixed-point subgroup is trivial; the extension only
/// exists when the order `2r` of the companion matrix divides `m`.
pub fn unit_chi_extension(r: usize, m: u64) -> Result<CyclicExtension> {
    if r < 3 || r.is_multiple_of(2) {
        return Err(Error::InvalidExtension(format!(
            "r must be odd and at least 3, got {r}"
        )));
    }
    let b = companion(&alternating_cyclotomic(r));
    CyclicExtension::new(b, m, TorsionPoint::zero(r - 1))
}

/// Extension of the `SL_n` torus by the `Σ` block of the two-block
/// generator `g₀`, with `n` components.
pub fn shift_block_extension(n: usize, k: usize) -> Result<CyclicExtension> {
    let sigma = monomial::example2_sigma(n, k)?;
    sl_torus_extension(&sigma, n as u64)
}
