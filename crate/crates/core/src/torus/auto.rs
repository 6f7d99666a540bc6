use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::point::TorsionPoint;
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::qz::Qz;

/// Automorphism of a torus, acting on exponent vectors by `x ↦ B·x mod 1`.
///
/// The induced map on the character lattice is `Bᵀ`; periodicity tests,
/// determinants and `χ(1)` are the same for both.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct TorusAutomorphism {
    matrix: IntMatrix,
}

impl TorusAutomorphism {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if !matrix.is_unimodular() {
            return Err(Error::InvalidMatrix(format!(
                "automorphism matrix must be unimodular, det = {}",
                matrix.det()
            )));
        }
        Ok(TorusAutomorphism { matrix })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.n()
    }

    /// `χ_B(1) = det(I − B)`.
    pub fn chi_at_one(&self) -> BigInt {
        self.matrix.char_poly().eval(&BigInt::one())
    }

    /// The component `gT` is periodic iff `B` has no eigenvalue 1.
    pub fn is_periodic(&self) -> bool {
        !self.chi_at_one().is_zero()
    }

    pub fn apply(&self, x: &TorsionPoint) -> TorsionPoint {
        x.apply(&self.matrix)
    }

    pub fn fixes(&self, x: &TorsionPoint) -> bool {
        self.apply(x) == *x
    }

    /// Multiplicative order of the matrix, if it is at most `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        self.matrix.order(limit)
    }

    pub fn fixed_subgroup(&self) -> Result<FixedSubgroup> {
        fixed_subgroup(self)
    }
}

/// The finite subgroup `T^φ` of torsion points fixed by a periodic
/// automorphism, as a direct sum of cyclic factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedSubgroup {
    pub dim: usize,
    pub generators: Vec<TorsionPoint>,
    pub orders: Vec<u64>,
    pub cardinality: u64,
}

impl FixedSubgroup {
    /// Exponent of the group: the largest element order.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().copied().fold(1, num_integer::lcm)
    }

    /// Every element, enumerated as integer combinations of the generators.
    pub fn elements(&self) -> Vec<TorsionPoint> {
        let mut out = vec![TorsionPoint::zero(self.dim)];
        for (g, &ord) in self.generators.iter().zip(&self.orders) {
            let mut next = Vec::with_capacity(out.len() * ord as usize);
            for base in &out {
                let mut p = base.clone();
                for _ in 0..ord {
                    next.push(p.clone());
                    p = &p + g;
                }
            }
            out = next;
        }
        out
    }
}

/// Solves `(B − I)·x ≡ 0 (mod 1)` through the Smith normal form of
/// `B − I`: with `U(B − I)V = diag(d)`, the solutions are `x = V·z`,
/// `z_i ∈ (1/d_i)Z`.
pub fn fixed_subgroup(auto: &TorusAutomorphism) -> Result<FixedSubgroup> {
    let b = auto.matrix().minus_identity();
    let snf = smith_normal_form(&b);
    if snf.d.iter().any(Zero::is_zero) {
        return Err(Error::NonPeriodic(
            "det(B - I) = 0, the fixed-point subgroup is infinite".into(),
        ));
    }
    let n = b.n();
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    for (i, d) in snf.d.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let coords = (0..n)
            .map(|r| {
                Qz::new(num_rational::BigRational::new(
                    snf.v.get(r, i).clone(),
                    d.clone(),
                ))
            })
            .collect();
        generators.push(TorsionPoint::new(coords));
        orders.push(
            d.to_u64().ok_or_else(|| {
                Error::Inconsistent(format!("fixed subgroup factor {d} too large"))
            })?,
        );
    }
    let cardinality = orders.iter().product();
    debug_assert_eq!(BigInt::from(cardinality), b.det().abs());
    Ok(FixedSubgroup {
        dim: n,
        generators,
        orders,
        cardinality,
    })
}
