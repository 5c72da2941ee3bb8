use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{prime_divisors, smith_normal_form, IntMatrix, Integer, SmithForm};

/// Invariants of a finitely generated abelian group `Z^rank ⊕ C_{d1} ⊕ ... ⊕ C_{dk}`
/// with `d1 | d2 | ... | dk` and every `di ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub divisors: Vec<Integer>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants { rank: 0, divisors: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianInvariants { rank, divisors: Vec::new() }
    }

    /// Invariants of `Z^n / (row span of relations)`, where `n = relations.cols()`.
    pub fn from_relations(relations: &IntMatrix) -> Self {
        Self::from_smith(&smith_normal_form(relations), relations.cols())
    }

    pub(crate) fn from_smith(snf: &SmithForm, ngens: usize) -> Self {
        let diag = snf.diagonal();
        let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
        AbelianInvariants {
            rank: ngens - nonzero,
            divisors: diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.divisors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> Integer {
        self.divisors.iter().fold(BigInt::one(), |acc, d| acc * d)
    }

    /// Primes dividing the torsion order.
    pub fn torsion_primes(&self) -> BTreeSet<u64> {
        prime_divisors(&self.torsion_order()).expect("torsion order exceeds 64 bits")
    }

    /// Direct sum of two groups.
    pub fn direct_sum(&self, other: &AbelianInvariants) -> AbelianInvariants {
        let k = self.divisors.len() + other.divisors.len();
        let mut rel = IntMatrix::zeros(k, k);
        for (i, d) in self.divisors.iter().chain(&other.divisors).enumerate() {
            rel[(i, i)] = d.clone();
        }
        let mut out = AbelianInvariants::from_relations(&rel);
        out.rank = self.rank + other.rank;
        out
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "trivial");
        }
        write!(f, "rank {}", self.rank)?;
        if !self.divisors.is_empty() {
            let ds: Vec<String> = self.divisors.iter().map(|d| d.to_string()).collect();
            write!(f, ", divisors ({})", ds.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use num_integer::Integer as _;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    use super::*;

    /// Brute-force oracle: for `G = (Z/D)^k / L̄`, counts `#{x in G : m·x = 0}`.
    fn brute_force_counts(rows: &[Vec<i64>], k: usize, d: i64, ms: &[i64]) -> Vec<i64> {
        let reduce = |v: &Vec<i64>| v.iter().map(|x| x.rem_euclid(d)).collect::<Vec<_>>();
        let mut lattice: HashSet<Vec<i64>> = HashSet::new();
        let zero = vec![0i64; k];
        lattice.insert(zero.clone());
        let mut frontier = vec![zero];
        let gens: Vec<Vec<i64>> = rows
            .iter()
            .cloned()
            .chain((0..k).map(|i| (0..k).map(|j| if i == j { d } else { 0 }).collect()))
            .collect();
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = reduce(&x.iter().zip(g).map(|(a, b)| a + b).collect());
                if lattice.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let all: Vec<Vec<i64>> = (0..d.pow(k as u32))
            .map(|mut n| {
                (0..k)
                    .map(|_| {
                        let r = n % d;
                        n /= d;
                        r
                    })
                    .collect()
            })
            .collect();
        ms.iter()
            .map(|&m| {
                let hits = all
                    .iter()
                    .filter(|y| lattice.contains(&reduce(&y.iter().map(|v| v * m).collect())))
                    .count() as i64;
                hits / lattice.len() as i64
            })
            .collect()
    }

    #[test]
    fn direct_sum_combines_torsion() {
        let a = AbelianInvariants { rank: 1, divisors: vec![BigInt::from(2)] };
        let b = AbelianInvariants { rank: 0, divisors: vec![BigInt::from(3)] };
        let s = a.direct_sum(&b);
        assert_eq!(s, AbelianInvariants { rank: 1, divisors: vec![BigInt::from(6)] });
        assert_eq!(s.to_string(), "rank 1, divisors (6)");
    }

    proptest! {
        #[test]
        fn smith_invariants_match_enumeration(
            entries in proptest::collection::vec(-6i64..=6, 4),
        ) {
            let rows = vec![entries[0..2].to_vec(), entries[2..4].to_vec()];
            let det = (rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]).abs();
            prop_assume!(det > 0 && det * det <= 10_000);
            let m = IntMatrix::from_i64(&[&rows[0], &rows[1]]);
            let inv = AbelianInvariants::from_relations(&m);
            prop_assert_eq!(inv.rank, 0);
            prop_assert_eq!(inv.torsion_order(), BigInt::from(det));
            let ms: Vec<i64> = (1..=det).collect();
            let brute = brute_force_counts(&rows, 2, det, &ms);
            for (m, count) in ms.iter().zip(brute) {
                let predicted: i64 = inv
                    .divisors
                    .iter()
                    .map(|d| d.gcd(&BigInt::from(*m)).to_i64().unwrap())
                    .product();
                prop_assert_eq!(predicted, count);
            }
        }
    }
}
