use super::section::AbelianSection;
use super::subgroup::Subgroup;
use crate::arith::{hermite_normal_form, AbelianInvariants, IntMatrix, Integer};
use crate::error::{Error, Result};
use crate::pcgroup::PcPresentation;
use crate::report::{CheckReport, Witness};

use num_traits::{One, Zero};

/// Default bound on the nilpotency class searched for; overridable by `PARANIL_CLASS_BOUND`.
pub const DEFAULT_CLASS_BOUND: usize = 16;

/// The class bound in effect for this process.
pub fn class_bound() -> usize {
    std::env::var("PARANIL_CLASS_BOUND")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_CLASS_BOUND)
}

/// `γ_1 ⊇ γ_2 ⊇ ... ⊇ γ_{depth+1}` with the invariants of each step.
#[derive(Clone, Debug)]
pub struct SeriesTable {
    /// `terms[i]` is `γ_{i+1}`.
    pub terms: Vec<Subgroup>,
    /// `step_invariants[i]` describes `γ_{i+1}/γ_{i+2}`.
    pub step_invariants: Vec<AbelianInvariants>,
    /// Smallest `k` with `h(γ_k) = h(γ_{k+1})`, if reached within the table.
    pub stabilized_at: Option<usize>,
}

impl SeriesTable {
    pub fn depth(&self) -> usize {
        self.step_invariants.len()
    }

    /// `γ_i`, 1-based.
    pub fn term(&self, i: usize) -> &Subgroup {
        &self.terms[i - 1]
    }

    /// Invariants of `γ_i/γ_{i+1}`, 1-based.
    pub fn step(&self, i: usize) -> &AbelianInvariants {
        &self.step_invariants[i - 1]
    }

    pub fn section(&self, i: usize) -> Result<AbelianSection> {
        AbelianSection::new(self.term(i), self.term(i + 1))
    }

    /// Index of the first trivial term, i.e. class + 1, if the table reaches it.
    pub fn first_trivial(&self) -> Option<usize> {
        self.terms.iter().position(Subgroup::is_trivial).map(|k| k + 1)
    }
}

/// `γ_{i+1}(U) = [γ_i(U), U]`, computed inside `U`.
pub fn next_lower_central(gamma: &Subgroup, u: &Subgroup) -> Result<Subgroup> {
    let p = u.ambient();
    let ugens = u.gens();
    let mut comms = Vec::new();
    for x in gamma.gens() {
        for g in &ugens {
            let c = p.commutator(&x, g)?;
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    Subgroup::closure_under(p, &comms, &ugens)
}

/// Terms `γ_1(U), ..., γ_{count}(U)`.
pub fn subgroup_lower_central_terms(u: &Subgroup, count: usize) -> Result<Vec<Subgroup>> {
    let mut terms = vec![u.clone()];
    while terms.len() < count {
        let last = terms.last().expect("nonempty");
        let next = if last.is_trivial() { last.clone() } else { next_lower_central(last, u)? };
        terms.push(next);
    }
    Ok(terms)
}

pub fn lower_central_series(p: &PcPresentation, depth: usize) -> Result<SeriesTable> {
    series_of(&Subgroup::whole(p), depth)
}

/// Lower central series of a subgroup, viewed as a group in its own right.
pub fn series_of(u: &Subgroup, depth: usize) -> Result<SeriesTable> {
    let terms = subgroup_lower_central_terms(u, depth + 1)?;
    let mut step_invariants = Vec::with_capacity(depth);
    for i in 0..depth {
        step_invariants.push(AbelianSection::new(&terms[i], &terms[i + 1])?.invariants().clone());
    }
    let stabilized_at =
        (0..depth).find(|&i| terms[i].hirsch_length() == terms[i + 1].hirsch_length()).map(|i| i + 1);
    Ok(SeriesTable { terms, step_invariants, stabilized_at })
}

/// Nilpotency class (0 for the trivial group), or an error beyond the bound.
pub fn nilpotency_class(u: &Subgroup, bound: usize) -> Result<usize> {
    let mut gamma = u.clone();
    for c in 0..=bound {
        if gamma.is_trivial() {
            return Ok(c);
        }
        let next = next_lower_central(&gamma, u)?;
        if next == gamma {
            break;
        }
        gamma = next;
    }
    Err(Error::ClassBound { bound })
}

/// Whether commutation `γ_i/γ_{i+1} ⊗ G_ab → γ_{i+1}/γ_{i+2}` is onto: the
/// classes of `[x, g]` over generators `x` of `γ_i` and `g` of `G` must span the
/// target section.
pub fn tensor_epi_check(t: &SeriesTable, i: usize) -> Result<CheckReport> {
    if i == 0 || t.terms.len() < i + 2 {
        return Err(Error::Precondition(format!("series table too shallow for layer {i}")));
    }
    let target = AbelianSection::new(t.term(i + 1), t.term(i + 2))?;
    let p = t.term(1).ambient();
    let moduli = target.moduli();
    let k = moduli.len();
    let mut rows = Vec::new();
    for x in t.term(i).gens() {
        for g in t.term(1).gens() {
            let c = p.commutator(&x, &g)?;
            rows.push(target.image(&c)?);
        }
    }
    for (j, m) in moduli.iter().enumerate() {
        if !m.is_zero() {
            let mut r = vec![Integer::zero(); k];
            r[j] = m.clone();
            rows.push(r);
        }
    }
    let report = |ok: bool| {
        let s = format!("layer {i}: commutator map onto {} is {}", target.invariants(), if ok { "surjective" } else { "not surjective" });
        (if ok { CheckReport::pass(s) } else { CheckReport::fail(s) })
            .with("target", Witness::Text(target.invariants().to_string()))
    };
    if k == 0 {
        return Ok(report(true));
    }
    let (h, _) = hermite_normal_form(&IntMatrix::from_rows(k, rows));
    let ok = (0..k).all(|r| r < h.rows() && h[(r, r)].is_one() && (0..k).all(|c| c == r || h[(r, c)].is_zero()));
    let index: Integer = (0..k).map(|r| if r < h.rows() { h[(r, r)].clone() } else { Integer::zero() }).product();
    Ok(report(ok).with("cokernel_diagonal_product", Witness::Int(index)))
}
