use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::Zero;

use super::{hermite_normal_form, IntMatrix, Integer};

/// Outcome of an integer-span membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeMembership {
    /// `v = Σ coefficients[i] · generators[i]`.
    Member(Vec<Integer>),
    NonMember,
}

impl LatticeMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, LatticeMembership::Member(_))
    }
}

/// Decides whether `v` lies in the integer span of `generators`.
pub fn lattice_membership(generators: &[Vec<Integer>], v: &[Integer]) -> LatticeMembership {
    let dim = v.len();
    assert!(generators.iter().all(|g| g.len() == dim), "generator dimension mismatch");
    if generators.is_empty() {
        return if v.iter().all(Zero::is_zero) {
            LatticeMembership::Member(Vec::new())
        } else {
            LatticeMembership::NonMember
        };
    }
    let m = IntMatrix::from_rows(dim, generators.to_vec());
    let (h, u) = hermite_normal_form(&m);
    let mut rest = v.to_vec();
    let mut along_h = vec![BigInt::zero(); h.rows()];
    for (i, coeff) in along_h.iter_mut().enumerate() {
        let Some(c) = (0..dim).find(|&c| !h[(i, c)].is_zero()) else { break };
        let (q, r) = rest[c].div_rem(&h[(i, c)]);
        if !r.is_zero() {
            return LatticeMembership::NonMember;
        }
        for (j, x) in rest.iter_mut().enumerate() {
            *x -= &q * &h[(i, j)];
        }
        *coeff = q;
    }
    if rest.iter().any(|x| !x.is_zero()) {
        return LatticeMembership::NonMember;
    }
    LatticeMembership::Member(u.left_apply(&along_h))
}

/// Basis (as rows) of `{ x : x·M = 0 }`.
pub fn left_kernel(m: &IntMatrix) -> Vec<Vec<Integer>> {
    let (h, u) = hermite_normal_form(m);
    (0..h.rows())
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .map(|i| u.row_vec(i))
        .collect()
}
