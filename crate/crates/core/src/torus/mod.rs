//! Cyclic extensions of tori, restricted to torsion points.
//!
//! The torus `T ≅ (k*)^n` is modelled by its torsion subgroup `(Q/Z)^n`;
//! `g` acts on it by an integer unimodular matrix. A component `gT` is
//! periodic exactly when that matrix has no eigenvalue 1, and then all of
//! its elements share one order.

mod auto;
pub mod catalog;
mod constraints;
mod extension;
mod point;

pub use auto::{fixed_subgroup, FixedSubgroup, TorusAutomorphism};
pub use constraints::{power_is_periodic, resolve_order_constraints, Resolution};
pub use extension::{random_points, CyclicExtension, ExtElement};
pub use point::TorsionPoint;

use crate::error::Result;
use crate::exec::Execution;

pub fn is_periodic(auto: &TorusAutomorphism) -> bool {
    auto.is_periodic()
}

/// Exact order, closed form cross-checked by iteration.
pub fn element_order(e: &ExtElement<'_>) -> Result<u64> {
    e.order_checked()
}

pub fn component_order(ext: &CyclicExtension, i: u64) -> Result<u64> {
    ext.component_order(i, Execution::default())
}

pub fn order_bound_cor5(ext: &CyclicExtension) -> u64 {
    ext.order_bound_cor5()
}

pub fn order_bound_prop7(ext: &CyclicExtension) -> Result<u64> {
    ext.order_bound_prop7()
}

pub fn find_mk_representative(ext: &CyclicExtension) -> Result<ExtElement<'_>> {
    ext.find_mk_representative()
}
