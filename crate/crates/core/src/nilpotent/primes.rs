use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::arith::{is_prime, prime_divisors, Integer};
use crate::error::{Error, Result};

/// A finite set of primes, or the complement of one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeSet {
    cofinite: bool,
    primes: BTreeSet<u64>,
}

impl PrimeSet {
    pub fn empty() -> Self {
        PrimeSet { cofinite: false, primes: BTreeSet::new() }
    }

    pub fn finite(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let primes: BTreeSet<u64> = primes.into_iter().collect();
        if let Some(p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(PrimeSet { cofinite: false, primes })
    }

    /// The primes dividing `n` (`n ≠ 0`).
    pub fn of_integer(n: &Integer) -> Self {
        PrimeSet { cofinite: false, primes: prime_divisors(n).unwrap_or_default() }
    }

    /// `π′`
    pub fn complement(&self) -> Self {
        PrimeSet { cofinite: !self.cofinite, primes: self.primes.clone() }
    }

    pub fn is_finite(&self) -> bool {
        !self.cofinite
    }

    pub fn is_empty(&self) -> bool {
        !self.cofinite && self.primes.is_empty()
    }

    /// The finite set itself, or the excluded primes of a cofinite set.
    pub fn listed(&self) -> &BTreeSet<u64> {
        &self.primes
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.contains(&p) != self.cofinite
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        match (self.cofinite, other.cofinite) {
            (false, false) => PrimeSet { cofinite: false, primes: &self.primes | &other.primes },
            (true, true) => PrimeSet { cofinite: true, primes: &self.primes & &other.primes },
            (true, false) => PrimeSet { cofinite: true, primes: &self.primes - &other.primes },
            (false, true) => PrimeSet { cofinite: true, primes: &other.primes - &self.primes },
        }
    }

    /// Whether every prime divisor of `n` lies in the set (`n ≠ 0`).
    pub fn is_pi_number(&self, n: &Integer) -> bool {
        match prime_divisors(n) {
            Some(ps) => ps.iter().all(|&p| self.contains(p)),
            None => false,
        }
    }

    /// Largest divisor of `n` that is a π-number.
    pub fn pi_part(&self, n: &Integer) -> Integer {
        let mut n = n.clone();
        let mut out = Integer::from(1);
        if let Some(ps) = prime_divisors(&n) {
            for p in ps {
                if self.contains(p) {
                    let pb = Integer::from(p);
                    while (&n % &pb) == Integer::from(0) {
                        n /= &pb;
                        out *= &pb;
                    }
                }
            }
        }
        out
    }
}

/// `{}`, `{2, 3}`; cofinite sets render as `primes except {..}`.
impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        if self.cofinite {
            write!(f, "primes except {{{}}}", list.join(", "))
        } else {
            write!(f, "{{{}}}", list.join(", "))
        }
    }
}
