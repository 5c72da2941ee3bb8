use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::Integer;

/// Normal-form element of a pc presentation: one exponent per pc generator.
/// Finite relative orders keep their exponent in `[0, order)`; infinite ones are signed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentVector(pub Vec<Integer>);

impl ExponentVector {
    pub fn identity(n: usize) -> Self {
        ExponentVector(vec![BigInt::zero(); n])
    }

    pub fn generator(n: usize, i: usize) -> Self {
        Self::generator_power(n, i, BigInt::from(1))
    }

    pub fn generator_power(n: usize, i: usize, e: Integer) -> Self {
        let mut v = Self::identity(n);
        v.0[i] = e;
        v
    }

    pub fn from_i64(xs: &[i64]) -> Self {
        ExponentVector(xs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero exponent, or `len()` for the identity.
    pub fn depth(&self) -> usize {
        self.0.iter().position(|e| !e.is_zero()).unwrap_or(self.0.len())
    }

    pub fn leading_exponent(&self) -> Option<&Integer> {
        self.0.get(self.depth())
    }

    pub fn exponents(&self) -> &[Integer] {
        &self.0
    }

    /// Letters `(generator, exponent)` of the normal-form word, skipping zeros.
    pub fn letters(&self) -> Vec<(usize, Integer)> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(i, e)| (i, e.clone()))
            .collect()
    }

    /// Word in generator names, `1` for the identity.
    pub fn to_word(&self, names: &[String]) -> String {
        let letters = self.letters();
        if letters.is_empty() {
            return "1".to_string();
        }
        letters
            .iter()
            .map(|(i, e)| if *e == BigInt::from(1) { names[*i].clone() } else { format!("{}^{}", names[*i], e) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
