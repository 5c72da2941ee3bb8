//! Builders for standard families: companion actions, free class-2 groups,
//! automorphism lifts, semidirect products and their finite-index subgroups.

mod automorphism;
mod groups;
mod semidirect;

pub use automorphism::AutomorphismAction;
pub use groups::{
    companion_cyclotomic, cyclic, direct_with_cyclic, free_abelian, free_nilpotent_class2, heisenberg,
    lift_automorphism_class2,
};
pub use semidirect::{
    central_extension_check, companion_semidirect, derived_intersection_check, intersect_with_normal,
    product_condition_exponent, semidirect_by_automorphisms, sub_semidirect_inclusion, Fiber, Semidirect,
    SubSemidirect, PRODUCT_SEARCH_BOUND,
};
