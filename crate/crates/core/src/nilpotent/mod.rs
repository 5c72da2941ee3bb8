//! Series machinery for polycyclic and nilpotent groups: subgroups, quotients,
//! abelian sections, lower and upper central series, isolators and `τ`.

mod center;
mod exponent;
mod isolator;
mod primes;
mod quotient;
mod section;
mod series;
mod subgroup;

pub use center::{center, upper_central_series, upper_central_term_of};
pub use exponent::{
    core_in, element_order, enumerate_elements, exponent_of_finite, power_exponent_search, relative_exponent,
    PowerExponents, ENUMERATION_LIMIT,
};
pub use isolator::{abelianization, hirsch_length, isolator, tau, tau_with_index, torsion_pi_subgroup, torsion_primes};
pub use primes::PrimeSet;
pub use quotient::{quotient_presentation, Quotient};
pub use section::AbelianSection;
pub use series::{
    class_bound, lower_central_series, next_lower_central, nilpotency_class, series_of, subgroup_lower_central_terms,
    tensor_epi_check, SeriesTable, DEFAULT_CLASS_BOUND,
};
pub use subgroup::{image, kernel, preimage, Subgroup};
