use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use super::collect::Collector;
use super::element::ExponentVector;
use crate::arith::Integer;
use crate::error::{Error, Result};

/// Default number of generator-power rewrite steps a single operation may take.
pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

/// A word as a sequence of `(generator index, exponent)` letters.
pub type Word = Vec<(usize, Integer)>;

/// Convenience constructor for words with small exponents.
pub fn word(letters: &[(usize, i64)]) -> Word {
    letters.iter().map(|&(g, e)| (g, Integer::from(e))).collect()
}

pub(crate) struct PcData {
    pub(crate) names: Vec<String>,
    /// 0 encodes an infinite relative order.
    pub(crate) orders: Vec<Integer>,
    /// `powers[i]` is the normal form of `g_i^{o_i}` (identity when `o_i = 0`).
    pub(crate) powers: Vec<Vec<Integer>>,
    /// `conj[i][j]` is the normal form of `g_j^{g_i}` for `j > i`; `g_j` itself otherwise.
    pub(crate) conj: Vec<Vec<Vec<Integer>>>,
    /// `conj_inv[i][j]` is `g_j^{g_i^{-1}}`, present exactly for infinite `o_i`.
    pub(crate) conj_inv: Vec<Option<Vec<Vec<Integer>>>>,
    pub(crate) step_budget: u64,
    consistent: OnceLock<bool>,
}

impl PcData {
    pub(crate) fn n(&self) -> usize {
        self.names.len()
    }

    fn same_relations(&self, other: &PcData) -> bool {
        self.orders == other.orders
            && self.powers == other.powers
            && self.conj == other.conj
            && self.conj_inv == other.conj_inv
    }
}

/// A polycyclic presentation. Cloning is cheap; the relation data is shared and immutable.
#[derive(Clone)]
pub struct PcPresentation {
    inner: Arc<PcData>,
}

impl PartialEq for PcPresentation {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.names == other.inner.names && self.inner.same_relations(&other.inner))
    }
}

impl Eq for PcPresentation {}

impl fmt::Debug for PcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PcPresentation({})", self.inner.names.join(","))
    }
}

impl PcPresentation {
    pub fn builder<S: Into<String>>(names: impl IntoIterator<Item = S>) -> PcPresentationBuilder {
        PcPresentationBuilder::new(names.into_iter().map(Into::into).collect())
    }

    pub(crate) fn data(&self) -> &PcData {
        &self.inner
    }

    pub(crate) fn collector(&self) -> Collector<'_> {
        Collector::new(&self.inner)
    }

    pub fn num_gens(&self) -> usize {
        self.inner.n()
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.inner.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.inner.names.iter().position(|n| n == name)
    }

    pub fn relative_orders(&self) -> &[Integer] {
        &self.inner.orders
    }

    pub fn relative_order(&self, i: usize) -> &Integer {
        &self.inner.orders[i]
    }

    pub fn is_infinite_gen(&self, i: usize) -> bool {
        self.inner.orders[i].is_zero()
    }

    pub fn step_budget(&self) -> u64 {
        self.inner.step_budget
    }

    /// Number of infinite relative orders.
    pub fn hirsch_length(&self) -> usize {
        self.inner.orders.iter().filter(|o| o.is_zero()).count()
    }

    /// Group order when every relative order is finite.
    pub fn order(&self) -> Option<Integer> {
        if self.hirsch_length() > 0 {
            return None;
        }
        Some(self.inner.orders.iter().product())
    }

    /// `g_i^{o_i}`, for finite `o_i`.
    pub fn power_relation(&self, i: usize) -> Option<ExponentVector> {
        (!self.is_infinite_gen(i)).then(|| ExponentVector(self.inner.powers[i].clone()))
    }

    /// `g_j^{g_i}` for `i < j`.
    pub fn conjugate_relation(&self, j: usize, i: usize) -> ExponentVector {
        assert!(i < j);
        ExponentVector(self.inner.conj[i][j].clone())
    }

    /// `g_j^{g_i^{-1}}` for `i < j` with `g_i` of infinite relative order.
    pub fn conjugate_inverse_relation(&self, j: usize, i: usize) -> Option<ExponentVector> {
        assert!(i < j);
        self.inner.conj_inv[i].as_ref().map(|rows| ExponentVector(rows[j].clone()))
    }

    /// Same relations under a different step budget.
    pub fn with_step_budget(&self, budget: u64) -> PcPresentation {
        let d = &self.inner;
        PcPresentation::from_parts(
            d.names.clone(),
            d.orders.clone(),
            d.powers.clone(),
            d.conj.clone(),
            d.conj_inv.clone(),
            budget,
        )
    }

    /// Same relations with new generator names.
    pub fn renamed(&self, names: Vec<String>) -> PcPresentation {
        assert_eq!(names.len(), self.num_gens());
        let d = &self.inner;
        PcPresentation::from_parts(
            names,
            d.orders.clone(),
            d.powers.clone(),
            d.conj.clone(),
            d.conj_inv.clone(),
            d.step_budget,
        )
    }

    pub(crate) fn from_parts(
        names: Vec<String>,
        orders: Vec<Integer>,
        powers: Vec<Vec<Integer>>,
        conj: Vec<Vec<Vec<Integer>>>,
        conj_inv: Vec<Option<Vec<Vec<Integer>>>>,
        step_budget: u64,
    ) -> PcPresentation {
        PcPresentation {
            inner: Arc::new(PcData { names, orders, powers, conj, conj_inv, step_budget, consistent: OnceLock::new() }),
        }
    }

    pub fn identity(&self) -> ExponentVector {
        ExponentVector::identity(self.num_gens())
    }

    pub fn generator(&self, i: usize) -> ExponentVector {
        ExponentVector::generator(self.num_gens(), i)
    }

    pub fn generators(&self) -> Vec<ExponentVector> {
        (0..self.num_gens()).map(|i| self.generator(i)).collect()
    }

    fn check_len(&self, u: &ExponentVector) {
        assert_eq!(u.len(), self.num_gens(), "exponent vector length does not match presentation");
    }

    /// Normal form of a word.
    pub fn collect(&self, w: &[(usize, Integer)]) -> Result<ExponentVector> {
        if let Some((g, _)) = w.iter().find(|(g, _)| *g >= self.num_gens()) {
            return Err(Error::InvalidPresentation(format!("generator index {g} out of range")));
        }
        let mut c = self.collector();
        let mut u = c.identity();
        c.mul_word(&mut u, w)?;
        Ok(ExponentVector(u))
    }

    pub fn multiply(&self, u: &ExponentVector, v: &ExponentVector) -> Result<ExponentVector> {
        self.check_len(u);
        self.check_len(v);
        Ok(ExponentVector(self.collector().product(&u.0, &v.0)?))
    }

    /// Product of a sequence of elements, left to right.
    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a ExponentVector>) -> Result<ExponentVector> {
        let mut c = self.collector();
        let mut acc = c.identity();
        for u in items {
            c.mul(&mut acc, &u.0)?;
        }
        Ok(ExponentVector(acc))
    }

    pub fn invert(&self, u: &ExponentVector) -> Result<ExponentVector> {
        self.check_len(u);
        Ok(ExponentVector(self.collector().inv(&u.0)?))
    }

    pub fn power(&self, u: &ExponentVector, k: &Integer) -> Result<ExponentVector> {
        self.check_len(u);
        Ok(ExponentVector(self.collector().pow(&u.0, k)?))
    }

    /// `[u, v] = u⁻¹ v⁻¹ u v`
    pub fn commutator(&self, u: &ExponentVector, v: &ExponentVector) -> Result<ExponentVector> {
        self.check_len(u);
        self.check_len(v);
        Ok(ExponentVector(self.collector().commutator(&u.0, &v.0)?))
    }

    /// `u^x = x⁻¹ u x`
    pub fn conjugate(&self, u: &ExponentVector, x: &ExponentVector) -> Result<ExponentVector> {
        self.check_len(u);
        self.check_len(x);
        Ok(ExponentVector(self.collector().conjugate_by(&u.0, &x.0)?))
    }

    /// Runs (once) the overlap tests; see [`super::check_consistency`].
    pub fn is_consistent(&self) -> bool {
        *self.inner.consistent.get_or_init(|| super::check_consistency(self).passed())
    }

    /// Presentation of the subgroup `<g_from, ..., g_n>` with generators renumbered from 0.
    pub(crate) fn tail(&self, from: usize) -> PcPresentation {
        let d = &self.inner;
        let cut = |v: &Vec<Integer>| v[from..].to_vec();
        let n = d.n();
        let conj = (from..n).map(|i| (from..n).map(|j| cut(&d.conj[i][j])).collect()).collect();
        let conj_inv = (from..n)
            .map(|i| d.conj_inv[i].as_ref().map(|rows| (from..n).map(|j| cut(&rows[j])).collect()))
            .collect();
        PcPresentation::from_parts(
            d.names[from..].to_vec(),
            d.orders[from..].to_vec(),
            d.powers[from..].iter().map(cut).collect(),
            conj,
            conj_inv,
            d.step_budget,
        )
    }
}

/// Assembles a presentation from relation words. Missing conjugation relations
/// default to the trivial action and missing power relations to the identity.
/// For generators of infinite relative order whose inverse conjugation relations
/// are not supplied, these are derived by inverting the action on the tail.
#[derive(Clone, Debug)]
pub struct PcPresentationBuilder {
    names: Vec<String>,
    orders: Vec<Integer>,
    powers: BTreeMap<usize, Word>,
    conj: BTreeMap<(usize, usize), Word>,
    conj_inv: BTreeMap<(usize, usize), Word>,
    step_budget: u64,
}

impl PcPresentationBuilder {
    pub fn new(names: Vec<String>) -> Self {
        let n = names.len();
        PcPresentationBuilder {
            names,
            orders: vec![Integer::zero(); n],
            powers: BTreeMap::new(),
            conj: BTreeMap::new(),
            conj_inv: BTreeMap::new(),
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }

    pub fn relative_order(mut self, i: usize, order: impl Into<Integer>) -> Self {
        self.orders[i] = order.into();
        self
    }

    pub fn relative_orders(mut self, orders: &[i64]) -> Self {
        assert_eq!(orders.len(), self.names.len());
        self.orders = orders.iter().map(|&o| Integer::from(o)).collect();
        self
    }

    /// `g_i^{o_i} = w`
    pub fn power(mut self, i: usize, w: Word) -> Self {
        self.powers.insert(i, w);
        self
    }

    /// `g_j^{g_i} = w`
    pub fn conjugate(mut self, j: usize, i: usize, w: Word) -> Self {
        self.conj.insert((i, j), w);
        self
    }

    /// `g_j^{g_i^{-1}} = w`
    pub fn conjugate_inverse(mut self, j: usize, i: usize, w: Word) -> Self {
        self.conj_inv.insert((i, j), w);
        self
    }

    pub fn step_budget(mut self, budget: u64) -> Self {
        self.step_budget = budget;
        self
    }

    fn check_word(&self, what: &str, w: &Word, above: usize) -> Result<()> {
        let n = self.names.len();
        for (g, _) in w {
            if *g >= n {
                return Err(Error::InvalidPresentation(format!("{what}: generator index {g} out of range")));
            }
            if *g <= above {
                return Err(Error::InvalidPresentation(format!(
                    "{what}: uses {} but may only use generators after {}",
                    self.names[*g], self.names[above]
                )));
            }
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        let n = self.names.len();
        for (i, name) in self.names.iter().enumerate() {
            if self.names[..i].contains(name) {
                return Err(Error::InvalidPresentation(format!("duplicate generator name {name}")));
            }
        }
        for (i, o) in self.orders.iter().enumerate() {
            if !o.is_zero() && *o < Integer::from(2) {
                return Err(Error::InvalidPresentation(format!(
                    "relative order of {} must be 0 (infinite) or at least 2, got {o}",
                    self.names[i]
                )));
            }
        }
        for (&i, w) in &self.powers {
            if i >= n {
                return Err(Error::InvalidPresentation(format!("power relation for unknown generator {i}")));
            }
            if self.orders[i].is_zero() {
                return Err(Error::InvalidPresentation(format!(
                    "power relation given for {} of infinite relative order",
                    self.names[i]
                )));
            }
            self.check_word(&format!("{}^{}", self.names[i], self.orders[i]), w, i)?;
        }
        for (map, inv) in [(&self.conj, false), (&self.conj_inv, true)] {
            for (&(i, j), w) in map {
                if i >= j || j >= n {
                    return Err(Error::InvalidPresentation(format!(
                        "conjugation relation needs i < j < {n}, got ({i}, {j})"
                    )));
                }
                if inv && !self.orders[i].is_zero() {
                    return Err(Error::InvalidPresentation(format!(
                        "inverse conjugation relation given for {} of finite relative order",
                        self.names[i]
                    )));
                }
                let what = format!("{}^{}{}", self.names[j], self.names[i], if inv { "^-1" } else { "" });
                self.check_word(&what, w, i)?;
            }
        }
        Ok(())
    }

    /// Builds the presentation without running the consistency tests.
    pub fn build(self) -> Result<PcPresentation> {
        self.validate()?;
        let n = self.names.len();
        let zero = || vec![Integer::zero(); n];
        let unit = |j: usize| {
            let mut v = zero();
            v[j] = Integer::one();
            v
        };
        let mut data = PcData {
            names: self.names.clone(),
            orders: self.orders.clone(),
            powers: vec![zero(); n],
            conj: (0..n).map(|_| (0..n).map(unit).collect()).collect(),
            conj_inv: vec![None; n],
            step_budget: self.step_budget,
            consistent: OnceLock::new(),
        };
        // Relations for g_i only involve generators after i, so filling rows from
        // the bottom up lets each word be collected with already-final data.
        for i in (0..n).rev() {
            let (power, conj, conj_inv) = {
                let mut c = Collector::new(&data);
                let power = match self.powers.get(&i) {
                    Some(w) => {
                        let mut u = c.identity();
                        c.mul_word(&mut u, w)?;
                        u
                    }
                    None => c.identity(),
                };
                let mut conj = data.conj[i].clone();
                for (j, slot) in conj.iter_mut().enumerate().skip(i + 1) {
                    if let Some(w) = self.conj.get(&(i, j)) {
                        let mut u = c.identity();
                        c.mul_word(&mut u, w)?;
                        *slot = u;
                    }
                }
                let mut conj_inv = None;
                if self.orders[i].is_zero() {
                    let given: Vec<usize> = (i + 1..n).filter(|j| self.conj_inv.contains_key(&(i, *j))).collect();
                    let rows = if given.len() == n - i - 1 {
                        let mut rows: Vec<Vec<Integer>> = (0..n).map(unit).collect();
                        for (j, row) in rows.iter_mut().enumerate().skip(i + 1) {
                            let mut u = c.identity();
                            c.mul_word(&mut u, &self.conj_inv[&(i, j)])?;
                            *row = u;
                        }
                        rows
                    } else if (i + 1..n).all(|j| conj[j] == unit(j)) {
                        (0..n).map(unit).collect()
                    } else {
                        derive_inverse_action(&data, i, &conj, &self.names)?
                    };
                    conj_inv = Some(rows);
                }
                (power, conj, conj_inv)
            };
            data.powers[i] = power;
            data.conj[i] = conj;
            data.conj_inv[i] = conj_inv;
        }
        Ok(PcPresentation { inner: Arc::new(data) })
    }
}

/// Inverts the action `g_k ↦ g_k^{g_i}` on `T = <g_{i+1}, ..., g_n>`.
///
/// The graph `{(φ(x), x)}` of the action is a subgroup of `T × T`; sifting
/// `(g_k, 1)` through it leaves `(1, w)` with `φ(w⁻¹) = g_k`.
fn derive_inverse_action(
    data: &PcData,
    i: usize,
    images: &[Vec<Integer>],
    names: &[String],
) -> Result<Vec<Vec<Integer>>> {
    let n = data.n();
    let partial = PcPresentation {
        inner: Arc::new(PcData {
            names: data.names.clone(),
            orders: data.orders.clone(),
            powers: data.powers.clone(),
            conj: data.conj.clone(),
            conj_inv: data.conj_inv.clone(),
            step_budget: data.step_budget,
            consistent: OnceLock::new(),
        }),
    };
    let tail = partial.tail(i + 1);
    let m = tail.num_gens();
    let prod = super::direct_product(&tail, &tail);
    let pair = |first: &[Integer], second: &[Integer]| {
        let mut v: Vec<Integer> = first[i + 1..].to_vec();
        v.extend_from_slice(&second[i + 1..]);
        v
    };
    let mut unit = vec![Integer::zero(); n];
    let graph_gens: Vec<Vec<Integer>> = (i + 1..n)
        .map(|k| {
            unit.iter_mut().for_each(|x| x.set_zero());
            unit[k] = Integer::one();
            pair(&images[k], &unit)
        })
        .collect();
    let igs = super::igs::Igs::closure(&prod, &graph_gens, &[])?;
    let mut rows: Vec<Vec<Integer>> = (0..n)
        .map(|j| {
            let mut v = vec![Integer::zero(); n];
            v[j] = Integer::one();
            v
        })
        .collect();
    let mut c = prod.collector();
    for k in 0..m {
        let mut target = vec![Integer::zero(); 2 * m];
        target[k] = Integer::one();
        let rem = igs.sift_remainder(&prod, &target, m)?;
        if rem[..m].iter().any(|x| !x.is_zero()) {
            return Err(Error::InvalidPresentation(format!(
                "conjugation by {} is not surjective on the later generators; supply {}^{}^-1 relations",
                names[i], names[i + 1 + k], names[i]
            )));
        }
        let w = c.inv(&rem)?;
        let mut row = vec![Integer::zero(); n];
        for (t, e) in w[m..].iter().enumerate() {
            row[i + 1 + t] = e.clone();
        }
        rows[i + 1 + k] = row;
    }
    Ok(rows)
}
