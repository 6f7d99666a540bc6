use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::IntPolynomial;
use crate::error::{Error, Result};
use crate::qz::Qz;

/// Square matrix with arbitrary-precision integer entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("empty matrix".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(IntMatrix { n, data })
    }

    /// Convenience constructor for small literals; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(rows).expect("square literal")
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    pub fn diagonal(d: &[BigInt]) -> Self {
        let n = d.len();
        Self::from_fn(n, |i, j| if i == j { d[i].clone() } else { BigInt::zero() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let v = self.get(i, j);
                if i == j {
                    v.is_one()
                } else {
                    v.is_zero()
                }
            })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// `A − I`.
    pub fn minus_identity(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m.data[i * self.n + i] -= 1;
        }
        m
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative order, if finite and at most `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let mut p = self.clone();
        for k in 1..=limit {
            if p.is_identity() {
                return Some(k);
            }
            p = &p * self;
        }
        None
    }

    /// `Σ_{j=0}^{m-1} A^j`; the identity for `m = 1` and zero for `m = 0`.
    pub fn power_sum(&self, m: u64) -> Self {
        let mut acc = Self::zero(self.n);
        let mut p = Self::identity(self.n);
        for j in 0..m {
            acc = &acc + &p;
            if j + 1 < m {
                p = &p * self;
            }
        }
        acc
    }

    /// Exact determinant by Bareiss elimination with row pivoting.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        let mut m = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if m[k * n + k].is_zero() {
                match (k + 1..n).find(|&i| !m[i * n + k].is_zero()) {
                    Some(p) => {
                        swap_rows(&mut m, n, k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            let pivot = m[k * n + k].clone();
            for i in k + 1..n {
                let lead = m[i * n + k].clone();
                for j in k + 1..n {
                    let v = (&m[i * n + j] * &pivot - &lead * &m[k * n + j]) / &prev;
                    m[i * n + j] = v;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = pivot;
        }
        sign * &m[n * n - 1]
    }

    /// Rank over the rationals, fraction-free.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut m = self.data.clone();
        let mut r = 0;
        let mut prev = BigInt::one();
        for c in 0..n {
            if r == n {
                break;
            }
            let Some(p) = (r..n).find(|&i| !m[i * n + c].is_zero()) else {
                continue;
            };
            swap_rows(&mut m, n, r, p);
            let pivot = m[r * n + c].clone();
            for i in r + 1..n {
                let lead = m[i * n + c].clone();
                for j in c + 1..n {
                    let v = (&pivot * &m[i * n + j] - &lead * &m[r * n + j]) / &prev;
                    m[i * n + j] = v;
                }
                m[i * n + c] = BigInt::zero();
            }
            prev = pivot;
            r += 1;
        }
        r
    }

    /// `det(λI − A)` via Faddeev–LeVerrier; every division by the step
    /// index is exact over the integers.
    pub fn char_poly(&self) -> IntPolynomial {
        let n = self.n;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = Self::zero(n);
        for k in 1..=n {
            let mut next = self * &m;
            for i in 0..n {
                next.data[i * n + i] += &coeffs[n - k + 1];
            }
            m = next;
            let am = self * &m;
            let t = am.trace();
            debug_assert!((&t % BigInt::from(k)).is_zero());
            coeffs[n - k] = -t / BigInt::from(k);
        }
        IntPolynomial::new(coeffs)
    }

    /// `x ↦ A·x` on a vector of `Q/Z` exponents.
    pub fn act(&self, x: &[Qz]) -> Vec<Qz> {
        assert_eq!(x.len(), self.n, "vector length");
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Qz::zero(), |acc, (a, q)| acc + q.scale(a))
            })
            .collect()
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

fn swap_rows(m: &mut [BigInt], n: usize, a: usize, b: usize) {
    if a != b {
        for j in 0..n {
            m.swap(a * n + j, b * n + j);
        }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_mul(rhs).expect("matrix dimensions")
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimensions");
        IntMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimensions");
        IntMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.n).map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            }))
            .finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let w = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.n {
            let row: Vec<String> = cells[i * self.n..(i + 1) * self.n]
                .iter()
                .map(|c| format!("{c:>w$}"))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixLiteral {
    n: usize,
    rows: Vec<Vec<BigIntJson>>,
}

/// Integer that serializes as a JSON number when it fits in `i64` and as
/// a decimal string otherwise; both forms are accepted on input.
#[derive(Clone)]
pub(crate) struct BigIntJson(pub BigInt);

impl Serialize for BigIntJson {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for BigIntJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(BigIntJson(v.into())),
            Raw::Str(s) => s
                .trim()
                .parse()
                .map(BigIntJson)
                .map_err(serde::de::Error::custom),
        }
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixLiteral {
            n: self.n,
            rows: (0..self.n)
                .map(|i| self.row(i).iter().cloned().map(BigIntJson).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let lit = MatrixLiteral::deserialize(d)?;
        if lit.rows.len() != lit.n {
            return Err(serde::de::Error::custom(format!(
                "\"n\" is {} but {} rows given",
                lit.n,
                lit.rows.len()
            )));
        }
        let rows = lit
            .rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.0).collect())
            .collect();
        IntMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}
