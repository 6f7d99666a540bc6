use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use super::types::RootSystemType;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

pub(crate) const MAX_RANK: usize = 8;

/// An element of a Weyl group as its matrix on the root lattice, in the
/// basis of simple roots (column `j` holds the coordinates of `w(α_j)`).
///
/// Entries of Weyl group matrices in the root basis are tiny, so they are
/// kept inline as `i8`. That gives a fixed-width byte encoding that is used
/// directly as the hash key during enumeration.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    n: u8,
    entries: [i8; MAX_RANK * MAX_RANK],
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_RANK, "rank {n} exceeds {MAX_RANK}");
        let mut e = WeylElement {
            n: n as u8,
            entries: [0; MAX_RANK * MAX_RANK],
        };
        for i in 0..n {
            e.entries[i * MAX_RANK + i] = 1;
        }
        e
    }

    pub fn from_matrix(m: &IntMatrix) -> Result<Self> {
        let n = m.n();
        if n > MAX_RANK {
            return Err(Error::InvalidElement(format!(
                "rank {n} exceeds the supported maximum {MAX_RANK}"
            )));
        }
        let mut e = WeylElement::identity(n);
        for i in 0..n {
            for j in 0..n {
                let v: i8 = m.get(i, j).try_into().map_err(|_| {
                    Error::InvalidElement(format!("entry {} does not fit", m.get(i, j)))
                })?;
                e.entries[i * MAX_RANK + j] = v;
            }
        }
        Ok(e)
    }

    pub fn rank(&self) -> usize {
        self.n as usize
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * MAX_RANK + j] as i64
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rank(), |i, j| BigInt::from(self.get(i, j)))
    }

    pub fn max_abs(&self) -> i64 {
        let n = self.rank();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j).abs())
            .max()
            .unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.rank())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "rank mismatch");
        let n = self.rank();
        let mut out = WeylElement::identity(n);
        for i in 0..n {
            for j in 0..n {
                let s: i64 = (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum();
                out.entries[i * MAX_RANK + j] = narrow(s);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = WeylElement::identity(self.rank());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order; `None` if it exceeds `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let mut p = *self;
        for k in 1..=limit {
            if p.is_identity() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }

    /// Inverse via the order (Weyl group elements have finite order).
    pub fn inverse(&self) -> Self {
        let ord = self.order(10_000).expect("finite order");
        self.pow(ord - 1)
    }

    /// `s_i · w`. Row `i` becomes `row_i − Σ_k C_ik row_k`; other rows stay.
    pub fn left_reflect(&self, i: usize, cartan: &[Vec<i64>]) -> Self {
        let n = self.rank();
        let mut out = *self;
        for j in 0..n {
            let mut v = self.get(i, j);
            for (k, c) in cartan[i].iter().enumerate() {
                v -= c * self.get(k, j);
            }
            out.entries[i * MAX_RANK + j] = narrow(v);
        }
        out
    }

    /// `w · s_i`. Column `j` becomes `col_j − C_ij col_i`.
    pub fn right_reflect(&self, i: usize, cartan: &[Vec<i64>]) -> Self {
        let n = self.rank();
        let mut out = *self;
        for (j, &c) in cartan[i].iter().enumerate().take(n) {
            if c == 0 {
                continue;
            }
            for r in 0..n {
                let v = self.get(r, j) - c * self.get(r, i);
                out.entries[r * MAX_RANK + j] = narrow(v);
            }
        }
        out
    }

    /// `rank(w − I)`, the codimension of the fixed subspace.
    pub fn fixed_codimension(&self) -> usize {
        self.matrix().minus_identity().rank()
    }

    /// `det(w − I) ≠ 0`: the component of `N_G(T)` over `w` is periodic.
    pub fn is_periodic_component(&self) -> bool {
        use num_traits::Zero;
        !self.matrix().minus_identity().det().is_zero()
    }
}

fn narrow(v: i64) -> i8 {
    i8::try_from(v).unwrap_or_else(|_| panic!("Weyl matrix entry {v} out of i8 range"))
}

pub fn is_periodic_component(w: &WeylElement) -> bool {
    w.is_periodic_component()
}

/// `s_i` for each simple root, with `s_i(α_j) = α_j − C_ij·α_i`.
pub fn simple_reflections(t: &RootSystemType) -> Vec<WeylElement> {
    let c = t.cartan_i64();
    let id = WeylElement::identity(t.rank());
    (0..t.rank()).map(|i| id.left_reflect(i, &c)).collect()
}

/// `c = s_1 s_2 ⋯ s_n`.
pub fn coxeter_element(t: &RootSystemType) -> WeylElement {
    let c = t.cartan_i64();
    (0..t.rank()).fold(WeylElement::identity(t.rank()), |w, i| {
        w.right_reflect(i, &c)
    })
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rank();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j)).collect())
            .collect();
        write!(f, "WeylElement{rows:?}")
    }
}

impl Serialize for WeylElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::types::Family;
    use num_traits::Zero;

    fn types() -> Vec<RootSystemType> {
        let mut v = RootSystemType::table_types();
        v.extend([RootSystemType::b(1), RootSystemType::c(1)]);
        v
    }

    #[test]
    fn a1_reflection() {
        let s = simple_reflections(&RootSystemType::a(1));
        assert_eq!(s[0].matrix(), IntMatrix::from_i64(&[&[-1]]));
    }

    #[test]
    fn reflection_sends_own_root_to_negative() {
        for t in types() {
            for (i, s) in simple_reflections(&t).iter().enumerate() {
                for r in 0..t.rank() {
                    let expect = if r == i { -1 } else { 0 };
                    assert_eq!(s.get(r, i), expect, "{t}");
                }
            }
        }
    }

    #[test]
    fn generator_relations() {
        for t in types() {
            let s = simple_reflections(&t);
            for i in 0..t.rank() {
                assert!(s[i].mul(&s[i]).is_identity(), "{t} s_{i}^2");
                for j in 0..t.rank() {
                    let m = t.coxeter_matrix_entry(i, j);
                    assert_eq!(s[i].mul(&s[j]).order(12), Some(m), "{t} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn left_and_right_multiplication_agree_with_matrices() {
        let t = RootSystemType::exceptional(Family::F4);
        let c = t.cartan_i64();
        let s = simple_reflections(&t);
        let w = coxeter_element(&t).mul(&s[2]);
        for i in 0..4 {
            assert_eq!(w.left_reflect(i, &c), s[i].mul(&w));
            assert_eq!(w.right_reflect(i, &c), w.mul(&s[i]));
            assert_eq!(
                WeylElement::from_matrix(&(&s[i].matrix() * &w.matrix())).unwrap(),
                s[i].mul(&w)
            );
        }
    }

    #[test]
    fn coxeter_order_is_h() {
        for t in types() {
            let c = coxeter_element(&t);
            assert_eq!(c.order(100), Some(t.coxeter_number()), "{t}");
            assert!(!c.matrix().minus_identity().det().is_zero());
            assert!(c.is_periodic_component());
        }
    }

    #[test]
    fn g2_coxeter_char_poly() {
        let c = coxeter_element(&RootSystemType::exceptional(Family::G2));
        assert_eq!(
            c.matrix().char_poly(),
            crate::linalg::IntPolynomial::from_i64(&[1, -1, 1])
        );
    }

    #[test]
    fn periodicity_examples() {
        assert!(!WeylElement::identity(3).is_periodic_component());
        for t in types().into_iter().filter(|t| t.rank() >= 2) {
            for s in simple_reflections(&t) {
                assert!(!s.is_periodic_component());
                assert_eq!(s.fixed_codimension(), 1);
            }
        }
    }

    #[test]
    fn inverse() {
        let t = RootSystemType::exceptional(Family::E6);
        let c = coxeter_element(&t);
        assert!(c.mul(&c.inverse()).is_identity());
    }
}
