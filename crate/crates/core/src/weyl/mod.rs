//! Root systems, Weyl groups and the periodic components of `N_G(T)`.
//!
//! Weyl group elements act on the root lattice in the basis of simple
//! roots, with `s_i(α_j) = α_j − C_ij·α_i` for the Cartan matrix
//! `C_ij = 2(α_i, α_j)/(α_i, α_i)`. The component of `N_G(T)` over `w` is
//! periodic exactly when `det(w − I) ≠ 0`.

mod census;
mod element;
mod signed;
mod types;

pub use census::{
    census, census_auto, coxeter_class, coxeter_class_size, enumerate_weyl, render_table,
    CensusReport, CensusSource, EnumerationOptions,
};
pub use element::{coxeter_element, is_periodic_component, simple_reflections, WeylElement};
pub use signed::{
    check_condition2, lift_order_rule, lift_to_normalizer, parse_cycles, parse_signs,
    permutation_from_cycles, permutations, weyl_image, ClassicalElement, SignedPermutation,
};
pub use types::{Family, RootSystemType};
