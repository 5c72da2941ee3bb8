//! Induced generating sequences: one echelon element per pc depth.
//!
//! A subgroup `U` of a pc group is stored as elements `s_d` with `depth(s_d) = d`
//! for the depths `d` where `U` meets the series; every element of `U` is then
//! a unique product `s_{d1}^{q1} s_{d2}^{q2} ...` with bounded exponents at
//! finite depths. Canonical form: positive leading exponents dividing the
//! relative order, and every slot reduced at later slot depths into `[0, lead)`.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::collect::Collector;
use super::presentation::PcPresentation;
use crate::arith::{xgcd, Integer};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Igs {
    pub(crate) slots: Vec<Option<Vec<Integer>>>,
}

pub(crate) fn depth_of(v: &[Integer]) -> usize {
    v.iter().position(|x| !x.is_zero()).unwrap_or(v.len())
}

impl Igs {
    pub(crate) fn empty(n: usize) -> Self {
        Igs { slots: vec![None; n] }
    }

    /// Closure of `gens` under products, inverses and conjugation by `conjugators^{±1}`.
    pub(crate) fn closure(p: &PcPresentation, gens: &[Vec<Integer>], conjugators: &[Vec<Integer>]) -> Result<Igs> {
        Igs::empty(p.num_gens()).extended(p, gens, conjugators)
    }

    /// Closure of this subgroup together with `gens`.
    pub(crate) fn extended(&self, p: &PcPresentation, gens: &[Vec<Integer>], conjugators: &[Vec<Integer>]) -> Result<Igs> {
        let mut igs = self.clone();
        let mut c = p.collector();
        let orders = p.relative_orders().to_vec();
        for g in gens {
            igs.insert(&mut c, &orders, g.clone())?;
        }
        let mut conj_all: Vec<Vec<Integer>> = Vec::new();
        for x in conjugators {
            if x.iter().all(Zero::is_zero) {
                continue;
            }
            conj_all.push(x.clone());
            conj_all.push(c.inv(x)?);
        }
        loop {
            let mut changed = false;
            let elems = igs.elements();
            for (a, sa) in elems.iter().enumerate() {
                let da = depth_of(sa);
                let sa_inv = if orders[da].is_zero() { Some(c.inv(sa)?) } else { None };
                for sb in &elems[a + 1..] {
                    let t = c.conjugate_by(sb, sa)?;
                    changed |= igs.absorb(&mut c, &orders, t)?;
                    if let Some(inv) = &sa_inv {
                        let t = c.conjugate_by(sb, inv)?;
                        changed |= igs.absorb(&mut c, &orders, t)?;
                    }
                }
                for x in &conj_all {
                    let t = c.conjugate_by(sa, x)?;
                    changed |= igs.absorb(&mut c, &orders, t)?;
                }
            }
            if !changed {
                break;
            }
        }
        igs.canonicalize(p)?;
        Ok(igs)
    }

    /// Sifts `u`; inserts the remainder if it is not the identity.
    fn absorb(&mut self, c: &mut Collector, orders: &[Integer], u: Vec<Integer>) -> Result<bool> {
        let r = self.sift_with(c, u, orders.len())?;
        if r.iter().all(Zero::is_zero) {
            return Ok(false);
        }
        self.insert(c, orders, r)?;
        Ok(true)
    }

    fn insert(&mut self, c: &mut Collector, orders: &[Integer], u: Vec<Integer>) -> Result<()> {
        let n = orders.len();
        let mut queue = vec![u];
        while let Some(mut u) = queue.pop() {
            loop {
                let d = depth_of(&u);
                if d == n {
                    break;
                }
                let o = &orders[d];
                let e = u[d].clone();
                match self.slots[d].take() {
                    None => {
                        let z = if o.is_zero() {
                            if e.is_negative() {
                                c.inv(&u)?
                            } else {
                                u
                            }
                        } else {
                            let (g, s, _) = xgcd(&e, o);
                            let z = if g == e { u.clone() } else { c.pow(&u, &s)? };
                            if g != e {
                                let zq = c.pow(&z, &-(&e / &g))?;
                                queue.push(c.product(&u, &zq)?);
                            }
                            queue.push(c.pow(&z, &(o / &g))?);
                            z
                        };
                        self.slots[d] = Some(z);
                        break;
                    }
                    Some(y) => {
                        let f = y[d].clone();
                        if e.is_multiple_of(&f) {
                            let yq = c.pow(&y, &-(&e / &f))?;
                            c.mul(&mut u, &yq)?;
                            self.slots[d] = Some(y);
                            continue;
                        }
                        let (g, s, t) = xgcd(&f, &e);
                        let ys = c.pow(&y, &s)?;
                        let ut = c.pow(&u, &t)?;
                        let z = c.product(&ys, &ut)?;
                        let zf = c.pow(&z, &-(&f / &g))?;
                        queue.push(c.product(&y, &zf)?);
                        let ze = c.pow(&z, &-(&e / &g))?;
                        queue.push(c.product(&u, &ze)?);
                        if !o.is_zero() {
                            queue.push(c.pow(&z, &(o / &g))?);
                        }
                        self.slots[d] = Some(z);
                        break;
                    }
                }
            }
        }
        Ok(())
    }

    /// Slot elements in depth order.
    pub(crate) fn elements(&self) -> Vec<Vec<Integer>> {
        self.slots.iter().flatten().cloned().collect()
    }

    pub(crate) fn depths(&self) -> Vec<usize> {
        (0..self.slots.len()).filter(|&d| self.slots[d].is_some()).collect()
    }

    pub(crate) fn leading(&self, d: usize) -> Option<&Integer> {
        self.slots[d].as_ref().map(|s| &s[d])
    }

    pub(crate) fn is_trivial(&self) -> bool {
        self.slots.iter().all(Option::is_none)
    }

    fn sift_with(&self, c: &mut Collector, mut u: Vec<Integer>, stop: usize) -> Result<Vec<Integer>> {
        for d in 0..stop.min(u.len()) {
            if u[d].is_zero() {
                continue;
            }
            let Some(y) = &self.slots[d] else { break };
            let f = &y[d];
            if !u[d].is_multiple_of(f) {
                break;
            }
            let yq = c.pow(y, &-(&u[d] / f))?;
            c.mul(&mut u, &yq)?;
        }
        Ok(u)
    }

    /// Exact sift through the slots at depths below `stop`; the identity remainder
    /// (for `stop = n`) means membership.
    pub(crate) fn sift_remainder(&self, p: &PcPresentation, u: &[Integer], stop: usize) -> Result<Vec<Integer>> {
        self.sift_with(&mut p.collector(), u.to_vec(), stop)
    }

    /// Writes a member `u` as `s_{d1}^{q1} s_{d2}^{q2} ...` (depths increasing);
    /// `None` for non-members.
    pub(crate) fn express(&self, p: &PcPresentation, u: &[Integer]) -> Result<Option<Vec<(usize, Integer)>>> {
        let mut c = p.collector();
        let mut u = u.to_vec();
        let mut out = Vec::new();
        for d in 0..u.len() {
            if u[d].is_zero() {
                continue;
            }
            let Some(y) = &self.slots[d] else { return Ok(None) };
            let f = &y[d];
            if !u[d].is_multiple_of(f) {
                return Ok(None);
            }
            let q = &u[d] / f;
            let yq = c.pow(y, &-&q)?;
            u = c.product(&yq, &u)?;
            out.push((d, q));
        }
        Ok(Some(out))
    }

    pub(crate) fn contains(&self, p: &PcPresentation, u: &[Integer]) -> Result<bool> {
        Ok(self.sift_remainder(p, u, u.len())?.iter().all(Zero::is_zero))
    }

    /// Canonical representative of the left coset `u·U`.
    pub(crate) fn coset_rep(&self, p: &PcPresentation, u: &[Integer]) -> Result<Vec<Integer>> {
        let mut c = p.collector();
        let mut u = u.to_vec();
        for d in 0..u.len() {
            let Some(y) = &self.slots[d] else { continue };
            let q = u[d].div_floor(&y[d]);
            if !q.is_zero() {
                let yq = c.pow(y, &-q)?;
                c.mul(&mut u, &yq)?;
            }
        }
        Ok(u)
    }

    pub(crate) fn canonicalize(&mut self, p: &PcPresentation) -> Result<()> {
        let mut c = p.collector();
        let depths = self.depths();
        for (a, &da) in depths.iter().enumerate() {
            let mut s = self.slots[da].take().expect("slot");
            if p.is_infinite_gen(da) && s[da].is_negative() {
                s = c.inv(&s)?;
            }
            for &db in &depths[a + 1..] {
                let y = self.slots[db].as_ref().expect("slot");
                let q = s[db].div_floor(&y[db]);
                if !q.is_zero() {
                    let yq = c.pow(y, &-q)?;
                    c.mul(&mut s, &yq)?;
                }
            }
            self.slots[da] = Some(s);
        }
        Ok(())
    }

    /// Index of the subgroup in the whole group, `None` when infinite.
    pub(crate) fn index_in_ambient(&self, p: &PcPresentation) -> Option<Integer> {
        let mut idx = Integer::one();
        for d in 0..self.slots.len() {
            match (&self.slots[d], p.is_infinite_gen(d)) {
                (Some(y), true) => idx *= &y[d],
                (Some(y), false) => idx *= p.relative_order(d) / &y[d],
                (None, true) => return None,
                (None, false) => idx *= p.relative_order(d),
            }
        }
        Some(idx)
    }
}
