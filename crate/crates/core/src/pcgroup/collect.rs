//! Collection from the left.
//!
//! An element is kept in normal form `g_1^{e_1} ... g_n^{e_n}`. Multiplying by a
//! generator power `g_i^e` moves `g_i^e` left past the tail `w` over `g_{i+1}..g_n`
//! using `w · g_i^e = g_i^e · w^{g_i^e}`; the conjugate of the tail is obtained by
//! applying the conjugation relations as an endomorphism of `<g_{i+1},...,g_n>`,
//! which only ever touches generators of larger index. Finite relative orders are
//! reduced with the power relations. Every generator-power step is charged against
//! the step budget.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::presentation::PcData;
use crate::arith::Integer;
use crate::error::{Error, Result};

/// Exponent of conjugating powers above which the action map is squared instead of iterated.
const ITERATE_LIMIT: u32 = 12;

pub(crate) struct Collector<'a> {
    p: &'a PcData,
    steps: u64,
}

impl<'a> Collector<'a> {
    pub(crate) fn new(p: &'a PcData) -> Self {
        Collector { p, steps: 0 }
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.p.step_budget {
            return Err(Error::StepBudget { budget: self.p.step_budget });
        }
        Ok(())
    }

    pub(crate) fn identity(&self) -> Vec<Integer> {
        vec![Integer::zero(); self.p.n()]
    }

    /// `u ← u · g_i^e`
    pub(crate) fn mul_gen_pow(&mut self, u: &mut [Integer], i: usize, e: &Integer) -> Result<()> {
        if e.is_zero() {
            return Ok(());
        }
        self.tick()?;
        let p = self.p;
        let n = p.n();
        let tail = if u[i + 1..].iter().any(|x| !x.is_zero()) {
            let mut t = self.identity();
            for j in i + 1..n {
                t[j] = std::mem::take(&mut u[j]);
            }
            Some(t)
        } else {
            None
        };
        let total = &u[i] + e;
        let order = &p.orders[i];
        let new_tail = if order.is_zero() {
            u[i] = total;
            match tail {
                Some(t) => Some(self.conj_by_gen_power(&t, i, e)?),
                None => None,
            }
        } else {
            let (q, r) = total.div_mod_floor(order);
            u[i] = r;
            let conj = match tail {
                Some(t) => {
                    // g_i^e = g_i^re · (g_i^order)^qe
                    let (qe, re) = e.div_mod_floor(order);
                    let mut c = if re.is_zero() { t } else { self.conj_by_gen_power(&t, i, &re)? };
                    if !qe.is_zero() {
                        let x = self.pow(&p.powers[i], &qe)?;
                        c = self.conjugate_by(&c, &x)?;
                    }
                    Some(c)
                }
                None => None,
            };
            let lead = if q.is_zero() { None } else { Some(self.pow(&p.powers[i], &q)?) };
            match (lead, conj) {
                (None, c) => c,
                (Some(a), None) => Some(a),
                (Some(mut a), Some(c)) => {
                    self.mul(&mut a, &c)?;
                    Some(a)
                }
            }
        };
        if let Some(mut t) = new_tail {
            for j in i + 1..n {
                u[j] = std::mem::take(&mut t[j]);
            }
        }
        Ok(())
    }

    /// `u ← u · v` for a normal-form `v`.
    pub(crate) fn mul(&mut self, u: &mut [Integer], v: &[Integer]) -> Result<()> {
        for (j, e) in v.iter().enumerate() {
            if !e.is_zero() {
                self.mul_gen_pow(u, j, e)?;
            }
        }
        Ok(())
    }

    pub(crate) fn mul_word(&mut self, u: &mut [Integer], word: &[(usize, Integer)]) -> Result<()> {
        for (j, e) in word {
            self.mul_gen_pow(u, *j, e)?;
        }
        Ok(())
    }

    pub(crate) fn product(&mut self, u: &[Integer], v: &[Integer]) -> Result<Vec<Integer>> {
        let mut w = u.to_vec();
        self.mul(&mut w, v)?;
        Ok(w)
    }

    pub(crate) fn inv(&mut self, u: &[Integer]) -> Result<Vec<Integer>> {
        let mut acc = self.identity();
        for j in (0..u.len()).rev() {
            if !u[j].is_zero() {
                self.mul_gen_pow(&mut acc, j, &-&u[j])?;
            }
        }
        Ok(acc)
    }

    pub(crate) fn pow(&mut self, u: &[Integer], k: &Integer) -> Result<Vec<Integer>> {
        if k.is_zero() || u.iter().all(Zero::is_zero) {
            return Ok(self.identity());
        }
        // single-letter fast path
        let letters: Vec<usize> = (0..u.len()).filter(|&j| !u[j].is_zero()).collect();
        if letters.len() == 1 {
            let j = letters[0];
            let mut acc = self.identity();
            self.mul_gen_pow(&mut acc, j, &(&u[j] * k))?;
            return Ok(acc);
        }
        let (mut base, mut k) = if k.is_negative() { (self.inv(u)?, -k) } else { (u.to_vec(), k.clone()) };
        let mut acc: Option<Vec<Integer>> = None;
        let two = Integer::from(2);
        loop {
            if k.is_odd() {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(mut a) => {
                        self.mul(&mut a, &base)?;
                        a
                    }
                });
            }
            k /= &two;
            if k.is_zero() {
                break;
            }
            let b2 = base.clone();
            self.mul(&mut base, &b2)?;
        }
        Ok(acc.unwrap_or_else(|| self.identity()))
    }

    /// `x⁻¹ · w · x`
    pub(crate) fn conjugate_by(&mut self, w: &[Integer], x: &[Integer]) -> Result<Vec<Integer>> {
        let mut r = self.inv(x)?;
        self.mul(&mut r, w)?;
        self.mul(&mut r, x)?;
        Ok(r)
    }

    /// `u⁻¹ v⁻¹ u v`
    pub(crate) fn commutator(&mut self, u: &[Integer], v: &[Integer]) -> Result<Vec<Integer>> {
        let mut r = self.inv(u)?;
        let vi = self.inv(v)?;
        self.mul(&mut r, &vi)?;
        self.mul(&mut r, u)?;
        self.mul(&mut r, v)?;
        Ok(r)
    }

    /// Conjugate of `t` (supported on generators after `i`) by `g_i^e`.
    fn conj_by_gen_power(&mut self, t: &[Integer], i: usize, e: &Integer) -> Result<Vec<Integer>> {
        let p = self.p;
        let (images, k) = if e.is_positive() {
            (&p.conj[i], e.clone())
        } else {
            let inv = p.conj_inv[i].as_ref().ok_or_else(|| {
                Error::InvalidPresentation(format!(
                    "no inverse conjugation relations for generator {}",
                    p.names[i]
                ))
            })?;
            (inv, -e)
        };
        if k <= Integer::from(ITERATE_LIMIT) {
            let mut w = t.to_vec();
            let mut c = Integer::zero();
            while c < k {
                w = self.apply_map(images, &w, i)?;
                c += 1;
            }
            return Ok(w);
        }
        // square-and-multiply on the action map itself
        let mut base: Vec<Vec<Integer>> = images.clone();
        let mut acc: Option<Vec<Vec<Integer>>> = None;
        let mut k = k;
        let two = Integer::from(2);
        loop {
            if k.is_odd() {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => self.compose_maps(&base, &a, i)?,
                });
            }
            k /= &two;
            if k.is_zero() {
                break;
            }
            base = self.compose_maps(&base, &base, i)?;
        }
        let map = acc.expect("positive exponent");
        self.apply_map(&map, t, i)
    }

    /// `(outer ∘ inner)(g_j) = outer(inner(g_j))` for `j > i`.
    fn compose_maps(
        &mut self,
        outer: &[Vec<Integer>],
        inner: &[Vec<Integer>],
        i: usize,
    ) -> Result<Vec<Vec<Integer>>> {
        let n = self.p.n();
        let mut out = vec![self.identity(); n];
        for j in i + 1..n {
            out[j] = self.apply_map(outer, &inner[j], i)?;
        }
        Ok(out)
    }

    /// Evaluates the normal-form word `w` (supported after `i`) with `g_j ↦ images[j]`.
    pub(crate) fn apply_map(&mut self, images: &[Vec<Integer>], w: &[Integer], i: usize) -> Result<Vec<Integer>> {
        let mut acc = self.identity();
        for j in i + 1..w.len() {
            if w[j].is_zero() {
                continue;
            }
            let img = &images[j];
            let mut nz = img.iter().enumerate().filter(|(_, x)| !x.is_zero());
            match (nz.next(), nz.next()) {
                (None, _) => {}
                (Some((k, a)), None) => {
                    let e = if a.is_one() { w[j].clone() } else { a * &w[j] };
                    self.mul_gen_pow(&mut acc, k, &e)?;
                }
                _ => {
                    let pw = self.pow(img, &w[j])?;
                    self.mul(&mut acc, &pw)?;
                }
            }
        }
        Ok(acc)
    }
}
