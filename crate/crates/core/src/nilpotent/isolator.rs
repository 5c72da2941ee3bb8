use num_traits::{One, Zero};

use super::center::center;
use super::primes::PrimeSet;
use super::quotient::Quotient;
use super::section::AbelianSection;
use super::series::{class_bound, next_lower_central, nilpotency_class};
use super::subgroup::Subgroup;
use crate::arith::AbelianInvariants;
use crate::error::{Error, Result};
use crate::pcgroup::{GroupHom, PcPresentation};

/// `I_π(K) = {x : x^n ∈ K for some π-number n}` for `K` normal with `P/K` nilpotent.
pub fn isolator(k: &Subgroup, pi: &PrimeSet) -> Result<Subgroup> {
    if !pi.is_finite() {
        return Err(Error::Unsupported("isolators are computed for finite prime sets only".into()));
    }
    if pi.is_empty() {
        return Ok(k.clone());
    }
    let q = Quotient::new(k)?;
    nilpotency_class(&Subgroup::whole(q.presentation()), class_bound())?;
    let t = torsion_pi_subgroup(q.presentation(), pi)?;
    q.preimage(&t)
}

/// The π-torsion subgroup of a nilpotent group. A nontrivial normal π-subgroup
/// meets the center, so peel off central π-torsion until none is left.
pub fn torsion_pi_subgroup(p: &PcPresentation, pi: &PrimeSet) -> Result<Subgroup> {
    let z = center(p)?;
    let sec = AbelianSection::new(&z, &Subgroup::trivial(p))?;
    let mut gens = Vec::new();
    for (k, s) in sec.moduli().iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        let part = pi.pi_part(s);
        if !part.is_one() {
            gens.push(p.power(&sec.basis_element(k)?, &(s / &part))?);
        }
    }
    if gens.is_empty() {
        return Ok(Subgroup::trivial(p));
    }
    let zpi = Subgroup::generated(p, &gens)?;
    let q = Quotient::new(&zpi)?;
    let t = torsion_pi_subgroup(q.presentation(), pi)?;
    q.preimage(&t)
}

/// `τ(P)` together with the index `k` at which `h(γ_k) = h(γ_{k+1})`.
///
/// Beyond that index the series has finite steps whose primes divide
/// `|γ_k/γ_{k+1}|`, so the union over layers `1..=k` is all of `τ`.
pub fn tau_with_index(p: &PcPresentation) -> Result<(PrimeSet, usize)> {
    let whole = Subgroup::whole(p);
    let mut primes = PrimeSet::empty();
    let mut gamma = whole.clone();
    let mut k = 1;
    loop {
        let next = next_lower_central(&gamma, &whole)?;
        let inv = AbelianSection::new(&gamma, &next)?.invariants().clone();
        primes = primes.union(&PrimeSet::finite(inv.torsion_primes())?);
        if gamma.hirsch_length() == next.hirsch_length() {
            return Ok((primes, k));
        }
        gamma = next;
        k += 1;
    }
}

pub fn tau(p: &PcPresentation) -> Result<PrimeSet> {
    Ok(tau_with_index(p)?.0)
}

pub fn hirsch_length(p: &PcPresentation) -> usize {
    p.hirsch_length()
}

/// Invariants of `P/γ_2(P)` and the projection onto a presentation of it.
pub fn abelianization(p: &PcPresentation) -> Result<(AbelianInvariants, GroupHom)> {
    let whole = Subgroup::whole(p);
    let derived = whole.derived()?;
    let inv = AbelianSection::new(&whole, &derived)?.invariants().clone();
    let q = Quotient::new(&derived)?;
    Ok((inv, q.projection().clone()))
}

/// `π(|Tor|)` of a finitely generated abelian group.
pub fn torsion_primes(inv: &AbelianInvariants) -> Result<PrimeSet> {
    PrimeSet::finite(inv.torsion_primes())
}
