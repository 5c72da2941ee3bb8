//! Exact integer linear algebra: matrices, Hermite/Smith normal forms,
//! lattice membership and abelian group invariants.

mod abelian;
mod lattice;
mod matrix;
mod normal_forms;
mod numtheory;

pub use abelian::AbelianInvariants;
pub use lattice::{lattice_membership, left_kernel, LatticeMembership};
pub use matrix::IntMatrix;
pub use normal_forms::{hermite_normal_form, hnf_rank, smith_normal_form, SmithForm};
pub use numtheory::{is_prime, lcm, prime_divisors, xgcd};

/// Arbitrary-precision signed integer used for every exponent, entry and index.
pub type Integer = num_bigint::BigInt;
