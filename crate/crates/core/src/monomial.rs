//! Monomial matrices whose nonzero entries are roots of unity.
//!
//! A matrix is stored as a permutation `σ` together with one `Q/Z` exponent
//! per column: column `j` has its single nonzero entry `exp(2πi·q_j)` in row
//! `σ(j)`. Products, inverses, transposes and orders are all exact.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntPolynomial};
use crate::qz::Qz;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    sigma: Vec<usize>,
    q: Vec<Qz>,
}

/// One cycle of the underlying permutation together with the product of
/// the matrix entries along it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub support: Vec<usize>,
    pub length: usize,
    pub product: Qz,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleFactorization {
    pub cycles: Vec<Cycle>,
}

impl CycleFactorization {
    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(|c| c.length).collect()
    }
}

/// Symmetric form `Ω` (ones on the antidiagonal) or symplectic form
/// `Λ = [[0, J], [-J, 0]]` with `J` the antidiagonal identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Omega,
    Lambda,
}

impl Form {
    pub fn matrix(self, dim: usize) -> Result<MonomialMatrix> {
        let sigma: Vec<usize> = (0..dim).map(|j| dim - 1 - j).collect();
        match self {
            Form::Omega => MonomialMatrix::new(sigma, vec![Qz::zero(); dim]),
            Form::Lambda => {
                if !dim.is_multiple_of(2) {
                    return Err(Error::DimensionMismatch {
                        expected: dim + 1,
                        found: dim,
                    });
                }
                let half = dim / 2;
                let q = (0..dim)
                    .map(|j| if j < half { Qz::half() } else { Qz::zero() })
                    .collect();
                MonomialMatrix::new(sigma, q)
            }
        }
    }
}

impl MonomialMatrix {
    pub fn new(sigma: Vec<usize>, q: Vec<Qz>) -> Result<Self> {
        let n = sigma.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("empty monomial matrix".into()));
        }
        if q.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: q.len(),
            });
        }
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidMatrix(format!(
                    "{sigma:?} is not a permutation of 0..{n}"
                )));
            }
        }
        Ok(MonomialMatrix { sigma, q })
    }

    pub fn identity(n: usize) -> Self {
        MonomialMatrix {
            sigma: (0..n).collect(),
            q: vec![Qz::zero(); n],
        }
    }

    pub fn from_permutation(sigma: Vec<usize>) -> Result<Self> {
        let n = sigma.len();
        Self::new(sigma, vec![Qz::zero(); n])
    }

    pub fn diagonal(q: Vec<Qz>) -> Self {
        MonomialMatrix {
            sigma: (0..q.len()).collect(),
            q,
        }
    }

    /// `e_j ↦ e_{j+1}` for `j < n-1` and `e_{n-1} ↦ exp(2πi·last)·e_0`.
    pub fn shift(n: usize, last: Qz) -> Self {
        let mut q = vec![Qz::zero(); n];
        q[n - 1] = last;
        MonomialMatrix {
            sigma: (0..n).map(|j| (j + 1) % n).collect(),
            q,
        }
    }

    pub fn with_exponent(mut self, col: usize, q: Qz) -> Self {
        self.q[col] = q;
        self
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn exponents(&self) -> &[Qz] {
        &self.q
    }

    /// Exponent of the entry at `(row, col)`, if nonzero.
    pub fn entry(&self, row: usize, col: usize) -> Option<&Qz> {
        (self.sigma[col] == row).then(|| &self.q[col])
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        // (ab)e_j = a(ζ^{qb_j} e_{σb(j)}) = ζ^{qb_j + qa_{σb(j)}} e_{σa(σb(j))}
        let (sigma, q) = other
            .sigma
            .iter()
            .zip(&other.q)
            .map(|(&s, qb)| (self.sigma[s], qb + &self.q[s]))
            .unzip();
        Ok(MonomialMatrix { sigma, q })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&base).expect("same dimension");
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base).expect("same dimension");
            }
        }
        acc
    }

    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut sigma = vec![0; n];
        let mut q = vec![Qz::zero(); n];
        for j in 0..n {
            sigma[self.sigma[j]] = j;
            q[self.sigma[j]] = -&self.q[j];
        }
        MonomialMatrix { sigma, q }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n();
        let mut sigma = vec![0; n];
        let mut q = vec![Qz::zero(); n];
        for j in 0..n {
            sigma[self.sigma[j]] = j;
            q[self.sigma[j]] = self.q[j].clone();
        }
        MonomialMatrix { sigma, q }
    }

    pub fn is_identity(&self) -> bool {
        self.is_diagonal() && self.q.iter().all(Qz::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        self.sigma.iter().enumerate().all(|(j, &s)| j == s)
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.n();
        let sigma = self
            .sigma
            .iter()
            .copied()
            .chain(other.sigma.iter().map(|s| s + n))
            .collect();
        let q = self.q.iter().chain(&other.q).cloned().collect();
        MonomialMatrix { sigma, q }
    }

    pub fn cycles(&self) -> CycleFactorization {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut support = Vec::new();
            let mut product = Qz::zero();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                support.push(j);
                product += &self.q[j];
                j = self.sigma[j];
            }
            cycles.push(Cycle {
                length: support.len(),
                support,
                product,
            });
        }
        CycleFactorization { cycles }
    }

    /// `lcm_j (s_j · ord(P_j))` over the cycles: a cycle of length `s` with
    /// entry product `P` satisfies `S^s = P·I` on its support.
    pub fn order(&self) -> u64 {
        let l = self
            .cycles()
            .cycles
            .iter()
            .map(|c| BigInt::from(c.length) * c.product.order())
            .fold(BigInt::one(), |acc, x| acc.lcm(&x));
        l.to_u64().expect("monomial order fits in u64")
    }

    /// Smallest `N ≤ cap` with `a^N = I`, by repeated multiplication.
    pub fn order_by_iteration(&self, cap: u64) -> Option<u64> {
        let mut p = self.clone();
        for k in 1..=cap {
            if p.is_identity() {
                return Some(k);
            }
            p = p.multiply(self).expect("same dimension");
        }
        None
    }

    /// Per-cycle `(s_j, P_j)`.
    pub fn char_poly_blocks(&self) -> Vec<(usize, Qz)> {
        self.cycles()
            .cycles
            .into_iter()
            .map(|c| (c.length, c.product))
            .collect()
    }

    /// `∏ (λ^{s_j} − P_j)`, available when every `P_j = ±1`.
    pub fn char_poly(&self) -> Result<IntPolynomial> {
        let blocks = self.char_poly_blocks();
        let bad: Vec<String> = blocks
            .iter()
            .filter(|(_, p)| !(p.is_zero() || p.is_half()))
            .map(|(_, p)| p.to_string())
            .collect();
        if !bad.is_empty() {
            return Err(Error::NonRealEntries(bad));
        }
        Ok(blocks.iter().fold(IntPolynomial::one(), |acc, (s, p)| {
            let sign = if p.is_zero() { 1 } else { -1 };
            &acc * &IntPolynomial::binomial(*s, &BigInt::from(sign))
        }))
    }

    /// Eigenvalue 1 occurs iff some cycle product equals 1.
    pub fn has_eigenvalue_one(&self) -> bool {
        self.cycles().cycles.iter().any(|c| c.product.is_zero())
    }

    pub fn is_sign_matrix(&self) -> bool {
        self.q.iter().all(|q| q.is_zero() || q.is_half())
    }

    /// Dense `0, ±1` matrix; only for exponents in `{0, 1/2}`.
    pub fn to_sign_matrix(&self) -> Result<IntMatrix> {
        if !self.is_sign_matrix() {
            return Err(Error::NonRealEntries(
                self.q
                    .iter()
                    .filter(|q| !(q.is_zero() || q.is_half()))
                    .map(|q| q.to_string())
                    .collect(),
            ));
        }
        let n = self.n();
        Ok(IntMatrix::from_fn(n, |i, j| match self.entry(i, j) {
            Some(q) if q.is_zero() => BigInt::one(),
            Some(_) => BigInt::from(-1),
            None => BigInt::zero(),
        }))
    }

    pub fn permutation_is_odd(&self) -> bool {
        self.cycles()
            .cycles
            .iter()
            .filter(|c| c.length % 2 == 0)
            .count()
            % 2
            == 1
    }

    /// `det = sign(σ)·∏ ζ^{q_j}`, as an exponent in `Q/Z`.
    pub fn det_exponent(&self) -> Qz {
        let total = self.q.iter().fold(Qz::zero(), |acc, q| acc + q.clone());
        if self.permutation_is_odd() {
            total + Qz::half()
        } else {
            total
        }
    }

    /// Exact test of `gᵀ·F·g = F`.
    pub fn preserves_form(&self, form: Form) -> Result<bool> {
        let f = form.matrix(self.n())?;
        let lhs = self.transpose().multiply(&f)?.multiply(self)?;
        Ok(lhs == f)
    }
}

impl fmt::Debug for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial[")?;
        for (j, (s, q)) in self.sigma.iter().zip(&self.q).enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}->{}:{}", j + 1, s + 1, q)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let cell = |i: usize, j: usize| match self.entry(i, j) {
            None => "0".to_string(),
            Some(q) if q.is_zero() => "1".to_string(),
            Some(q) if q.is_half() => "-1".to_string(),
            Some(q) => format!("ζ({q})"),
        };
        let cells: Vec<Vec<String>> = (0..n)
            .map(|i| (0..n).map(|j| cell(i, j)).collect())
            .collect();
        let w = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let row: Vec<String> = row.iter().map(|c| format!("{c:>w$}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MonomialJson {
    n: usize,
    sigma: Vec<usize>,
    q: Vec<Qz>,
}

impl Serialize for MonomialMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MonomialJson {
            n: self.n(),
            sigma: self.sigma.iter().map(|s| s + 1).collect(),
            q: self.q.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MonomialJson::deserialize(d)?;
        if j.sigma.len() != j.n {
            return Err(serde::de::Error::custom(format!(
                "\"n\" is {} but sigma has {} entries",
                j.n,
                j.sigma.len()
            )));
        }
        let sigma = j
            .sigma
            .iter()
            .map(|&s| {
                s.checked_sub(1)
                    .ok_or_else(|| serde::de::Error::custom("sigma images are 1-based"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        MonomialMatrix::new(sigma, j.q).map_err(serde::de::Error::custom)
    }
}

/// The `n×n` block `Σ`: shift with `ξ^{n-1}` in the corner, `ξ` a primitive
/// `k`-th root of unity.
pub fn example2_sigma(n: usize, k: usize) -> Result<MonomialMatrix> {
    if n == 0 || k == 0 || !n.is_multiple_of(k) {
        return Err(Error::InvalidDivisor {
            n: n as u64,
            divisor: k as u64,
        });
    }
    Ok(MonomialMatrix::shift(
        n,
        Qz::from_frac(n as i64 - 1, k as i64),
    ))
}

/// `g₀ = diag(Σ, Σ·D)` with `D = diag(ξ, 1, …, 1)`; expected order `n·k`.
pub fn build_example2_g0(n: usize, k: usize) -> Result<MonomialMatrix> {
    let sigma = example2_sigma(n, k)?;
    let mut d = vec![Qz::zero(); n];
    d[0] = Qz::from_frac(1, k as i64);
    let sigma_d = sigma.multiply(&MonomialMatrix::diagonal(d))?;
    Ok(sigma.direct_sum(&sigma_d))
}

type Dense = Vec<Vec<BigRational>>;

fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn dense_is_identity(a: &Dense) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}

/// Second-component matrix `[[0, t⁻¹], [t, 0]] ⊕ [[1, s], [0, -1]]` of the
/// extension of `k* × k`.
pub fn prop3_matrix(t: &BigRational, s: &BigRational) -> Result<Dense> {
    if t.is_zero() {
        return Err(Error::InvalidMatrix("t must be nonzero".into()));
    }
    let z = BigRational::zero;
    let one = BigRational::one;
    Ok(vec![
        vec![z(), t.recip(), z(), z()],
        vec![t.clone(), z(), z(), z()],
        vec![z(), z(), one(), s.clone()],
        vec![z(), z(), z(), -one()],
    ])
}

/// Order of the `k* × k` example matrix by exact iteration.
pub fn check_prop3_family(t: &BigRational, s: &BigRational) -> Result<u64> {
    const CAP: u64 = 64;
    let m = prop3_matrix(t, s)?;
    let mut p = m.clone();
    for k in 1..=CAP {
        if dense_is_identity(&p) {
            return Ok(k);
        }
        p = dense_mul(&p, &m);
    }
    Err(Error::Inconsistent(format!(
        "no power up to {CAP} of the (t, s) = ({t}, {s}) matrix is the identity"
    )))
}
