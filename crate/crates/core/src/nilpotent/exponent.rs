//! Relative exponents: the least `n` with `x^n ∈ B` for every `x ∈ A`.

use std::collections::{HashMap, VecDeque};

use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

use super::quotient::Quotient;
use super::section::AbelianSection;
use super::series::{class_bound, nilpotency_class, subgroup_lower_central_terms};
use super::subgroup::Subgroup;
use crate::arith::{prime_divisors, Integer};
use crate::error::{Error, Result};
use crate::pcgroup::{ExponentVector, PcPresentation};

/// Largest finite quotient that is enumerated element by element.
pub const ENUMERATION_LIMIT: usize = 1_000_000;

/// Least `n ≥ 1` with `x^n ∈ b` for all `x ∈ a`, for `b ≤ a`; `None` when
/// `|a : b|` is infinite (then no such `n` exists).
///
/// `x^n ∈ b` for all `x` is the same as `x^n` lying in the core of `b` in `a`,
/// so the answer is the exponent of the finite group `a/core`.
pub fn relative_exponent(a: &Subgroup, b: &Subgroup) -> Result<Option<Integer>> {
    if !b.is_subgroup_of(a)? {
        return Err(Error::Precondition("relative exponent needs B ≤ A".into()));
    }
    if a.index_of(b).is_none() {
        return Ok(None);
    }
    let core = if b.is_normalized_by(&a.gens())?.is_none() { b.clone() } else { core_in(a, b)? };
    let (pres, _) = a.as_presentation()?;
    let inner = a.pull_into(&pres, &core)?;
    // abelian quotient: the exponent is the largest invariant
    if commutators_inside(&pres, &inner)? {
        let sec = AbelianSection::new(&Subgroup::whole(&pres), &inner)?;
        return Ok(Some(sec.invariants().divisors.last().cloned().unwrap_or_else(Integer::one)));
    }
    let q = Quotient::new(&inner)?;
    Ok(Some(exponent_of_finite(q.presentation())?))
}

fn commutators_inside(p: &PcPresentation, n: &Subgroup) -> Result<bool> {
    let gens = p.generators();
    for (i, x) in gens.iter().enumerate() {
        for y in &gens[i + 1..] {
            if !n.contains(&p.commutator(x, y)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Kernel of the action of `a` on the left cosets of `b` (finite index),
/// via a chain of point stabilizers.
pub fn core_in(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    let p = a.ambient();
    let points = coset_orbit(b, &a.gens(), &b.coset_rep(&p.identity())?)?.0;
    let mut s = a.clone();
    for w in &points {
        let gens = s.gens();
        let mut moved = false;
        for g in &gens {
            if b.coset_rep(&p.multiply(g, w)?)? != *w {
                moved = true;
                break;
            }
        }
        if !moved {
            continue;
        }
        s = stabilizer(b, &s, w)?;
    }
    Ok(s)
}

/// Orbit of the coset `wB` under left multiplication, with a transversal.
fn coset_orbit(
    b: &Subgroup,
    gens: &[ExponentVector],
    w: &ExponentVector,
) -> Result<(Vec<ExponentVector>, HashMap<ExponentVector, ExponentVector>)> {
    let p = b.ambient();
    let mut transversal = HashMap::new();
    transversal.insert(w.clone(), p.identity());
    let mut order = vec![w.clone()];
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(d) = queue.pop_front() {
        for g in gens {
            let e = b.coset_rep(&p.multiply(g, &d)?)?;
            if !transversal.contains_key(&e) {
                if transversal.len() >= ENUMERATION_LIMIT {
                    return Err(Error::QuotientTooLarge { limit: ENUMERATION_LIMIT });
                }
                let t = p.multiply(g, &transversal[&d])?;
                transversal.insert(e.clone(), t);
                order.push(e.clone());
                queue.push_back(e);
            }
        }
    }
    Ok((order, transversal))
}

/// Stabilizer of the coset `wB` in `s` (Schreier generators).
fn stabilizer(b: &Subgroup, s: &Subgroup, w: &ExponentVector) -> Result<Subgroup> {
    let p = b.ambient();
    let gens = s.gens();
    let (orbit, tr) = coset_orbit(b, &gens, w)?;
    let mut schreier = Vec::new();
    for d in &orbit {
        for g in &gens {
            let e = b.coset_rep(&p.multiply(g, d)?)?;
            // t_e⁻¹ g t_d fixes w
            let x = p.multiply(&p.invert(&tr[&e])?, &p.multiply(g, &tr[d])?)?;
            if !x.is_identity() {
                schreier.push(x);
            }
        }
    }
    Subgroup::generated(p, &schreier)
}

/// All elements of a finite pc group, in odometer order.
pub fn enumerate_elements(p: &PcPresentation) -> Result<Vec<ExponentVector>> {
    let order = p
        .order()
        .ok_or_else(|| Error::Precondition("cannot enumerate an infinite group".into()))?;
    match order.to_usize() {
        Some(n) if n <= ENUMERATION_LIMIT => {}
        _ => return Err(Error::QuotientTooLarge { limit: ENUMERATION_LIMIT }),
    }
    let orders = p.relative_orders().to_vec();
    let mut out = Vec::new();
    let mut cur = p.identity();
    loop {
        out.push(cur.clone());
        let mut i = orders.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            cur.0[i] += 1;
            if cur.0[i] < orders[i] {
                break;
            }
            cur.0[i] = Integer::zero();
        }
    }
}

/// Order of an element of a finite group of order `n`.
pub fn element_order(p: &PcPresentation, u: &ExponentVector, n: &Integer) -> Result<Integer> {
    let mut m = n.clone();
    for q in prime_divisors(n).unwrap_or_default() {
        let q = Integer::from(q);
        while m.is_multiple_of(&q) && p.power(u, &(&m / &q))?.is_identity() {
            m /= &q;
        }
    }
    Ok(m)
}

pub fn exponent_of_finite(p: &PcPresentation) -> Result<Integer> {
    let n = p.order().ok_or_else(|| Error::Precondition("exponent of an infinite group".into()))?;
    let mut e = Integer::one();
    for u in enumerate_elements(p)? {
        let o = element_order(p, &u, &n)?;
        e = e.lcm(&o);
    }
    Ok(e)
}

/// Exponents `n_i` with `γ_i(G)^{n_i} ≤ γ_i(N)`, each the least possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerExponents {
    /// `n_i` for `i = 1..=class`; `n_1` is the exponent `n` with `G^n ≤ N`.
    pub n_i: Vec<Integer>,
}

impl PowerExponents {
    pub fn n(&self) -> &Integer {
        &self.n_i[0]
    }

    /// `n_i`, 1-based; 1 beyond the class.
    pub fn at(&self, i: usize) -> Integer {
        self.n_i.get(i - 1).cloned().unwrap_or_else(Integer::one)
    }
}

/// For `G` nilpotent and `N ≤ G` with `G^m ≤ N·G'`, the least exponents
/// carrying each `γ_i(G)` into `γ_i(N)`.
pub fn power_exponent_search(n: &Subgroup, m: &Integer) -> Result<PowerExponents> {
    let p = n.ambient();
    let whole = Subgroup::whole(p);
    let class = nilpotency_class(&whole, class_bound())?;
    let ng = n.join(&whole.derived()?)?;
    for g in p.generators() {
        let x = p.power(&g, m)?;
        if !ng.contains(&x)? {
            return Err(Error::Precondition(format!(
                "G^{m} is not contained in N·G': {} = {} lies outside",
                format_args!("{}^{m}", g.to_word(p.names())),
                x.to_word(p.names())
            )));
        }
    }
    let count = class.max(1);
    let gamma_g = subgroup_lower_central_terms(&whole, count)?;
    let gamma_n = subgroup_lower_central_terms(n, count)?;
    let mut n_i = Vec::with_capacity(count);
    for i in 0..count {
        let e = relative_exponent(&gamma_g[i], &gamma_n[i])?.ok_or_else(|| {
            Error::Precondition(format!("gamma_{}(N) has infinite index in gamma_{}(G)", i + 1, i + 1))
        })?;
        n_i.push(e);
    }
    Ok(PowerExponents { n_i })
}
