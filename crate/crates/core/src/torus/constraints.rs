//! Orders of elements in the components of `N_G(T)` lying over powers of a
//! Coxeter element, pinned down from divisibility constraints alone.
//!
//! Let `g` lie over a Coxeter element `c` of order `h`. Then `ord(g) = h·a`
//! with `a | h`. For every `d` such that `c^d` has no eigenvalue 1, the
//! element `g^d` lies in a periodic component of the cyclic extension
//! generated by `g^d`, which has `k_d = h / gcd(h, d)` components and an
//! automorphism of order `k_d`, so `ord(g^d) | k_d²`.

use num_integer::Integer;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Resolution {
    /// `a` is unique; `orders[d-1] = ord(g^d)` for `d = 1..h-1`.
    Resolved {
        multiplier: u64,
        orders: Vec<u64>,
        periodic_powers: Vec<u64>,
    },
    /// Several values of `a` survive every constraint.
    Unresolved {
        candidates: Vec<u64>,
        periodic_powers: Vec<u64>,
    },
}

impl Resolution {
    pub fn orders(&self) -> Option<&[u64]> {
        match self {
            Resolution::Resolved { orders, .. } => Some(orders),
            Resolution::Unresolved { .. } => None,
        }
    }

    /// `ord(g), …, ord(g^len)`.
    pub fn orders_up_to(&self, len: usize) -> Option<&[u64]> {
        self.orders().map(|o| &o[..len.min(o.len())])
    }
}

/// `c^d` has eigenvalues `ζ^{d·m_i}`; it avoids 1 iff `h ∤ d·m_i` for all i.
pub fn power_is_periodic(h: u64, exponents: &[u64], d: u64) -> bool {
    exponents.iter().all(|&m| !(d * m).is_multiple_of(h))
}

pub fn resolve_order_constraints(h: u64, exponents: &[u64]) -> Resolution {
    assert!(h >= 2, "Coxeter number must be at least 2");
    let periodic_powers: Vec<u64> = (1..h)
        .filter(|&d| power_is_periodic(h, exponents, d))
        .collect();

    let candidates: Vec<u64> = (1..=h)
        .filter(|a| h.is_multiple_of(*a))
        .filter(|&a| {
            let ord = h * a;
            periodic_powers.iter().all(|&d| {
                let k = h / h.gcd(&d);
                let ord_d = ord / ord.gcd(&d);
                (k * k).is_multiple_of(ord_d)
            })
        })
        .collect();

    match candidates.as_slice() {
        [a] => {
            let ord = h * a;
            Resolution::Resolved {
                multiplier: *a,
                orders: (1..h).map(|d| ord / ord.gcd(&d)).collect(),
                periodic_powers,
            }
        }
        _ => Resolution::Unresolved {
            candidates,
            periodic_powers,
        },
    }
}
