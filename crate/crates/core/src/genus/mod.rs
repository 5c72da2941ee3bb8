//! Certificates for lower central comparisons between groups: induced maps on
//! nilpotent quotients, `τ`-monomorphisms, para checks, Hirsch-length checks,
//! quotients by upper central terms of isolators, and annihilating polynomials.

mod annihilator;
mod hirsch;
mod maps;

pub use annihilator::{annihilator_polynomials, apply_polynomial, characteristic_polynomial, Annihilators, IntPoly};
pub use hirsch::{prop26_pair, thm34_hirsch_check, HirschMode, Prop26Pair};
pub use maps::{
    check_cor23_fastpath, check_para, check_tau_monomorphism, induced_quotient_map, layer_exponents,
    replay_exponents, InducedMap, MapKind, DEFAULT_DEPTH,
};

#[cfg(test)]
mod tests;
