use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::linalg::IntMatrix;
use crate::qz::{lcm_of_orders, Qz};

/// A torsion point of an `n`-dimensional torus in exponent coordinates:
/// `(exp 2πi·x_1, …, exp 2πi·x_n)` with each `x_j ∈ Q/Z`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TorsionPoint {
    coords: Vec<Qz>,
}

impl TorsionPoint {
    pub fn new(coords: Vec<Qz>) -> Self {
        TorsionPoint { coords }
    }

    pub fn zero(n: usize) -> Self {
        TorsionPoint {
            coords: vec![Qz::zero(); n],
        }
    }

    /// All coordinates equal to `q`.
    pub fn constant(n: usize, q: Qz) -> Self {
        TorsionPoint { coords: vec![q; n] }
    }

    pub fn from_fracs(fracs: &[(i64, i64)]) -> Self {
        TorsionPoint {
            coords: fracs.iter().map(|&(p, q)| Qz::from_frac(p, q)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Qz] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Qz::is_zero)
    }

    /// Order in the torus: lcm of coordinate denominators.
    pub fn order(&self) -> BigInt {
        lcm_of_orders(&self.coords)
    }

    /// Image under the automorphism with exponent matrix `b`.
    pub fn apply(&self, b: &IntMatrix) -> TorsionPoint {
        TorsionPoint {
            coords: b.act(&self.coords),
        }
    }

    pub fn scale(&self, k: &BigInt) -> TorsionPoint {
        TorsionPoint {
            coords: self.coords.iter().map(|q| q.scale(k)).collect(),
        }
    }

    pub fn neg(&self) -> TorsionPoint {
        TorsionPoint {
            coords: self.coords.iter().map(|q| -q).collect(),
        }
    }
}

impl Add for &TorsionPoint {
    type Output = TorsionPoint;
    fn add(self, rhs: &TorsionPoint) -> TorsionPoint {
        assert_eq!(self.dim(), rhs.dim(), "torsion point dimensions");
        TorsionPoint {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Debug for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coords).finish()
    }
}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|q| q.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}
