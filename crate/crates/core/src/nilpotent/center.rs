//! Centers and upper central series of nilpotent pc groups.
//!
//! With `D_i = {x : [x, G] ⊆ γ_i}` we have `D_2 = G` and `D_{c+1} = Z(G)` for a
//! group of class `c`. For each generator `g`, `x ↦ [x, g]γ_{i+1}` is a
//! homomorphism `D_i → γ_i/γ_{i+1}`, so `D_{i+1}` is the intersection of kernels:
//! an integer kernel computation in section coordinates, plus `[D_i, D_i]`
//! (which always lies in the kernel but is invisible to coordinates).

use num_traits::Zero;

use super::quotient::Quotient;
use super::section::AbelianSection;
use super::series::{class_bound, nilpotency_class, subgroup_lower_central_terms};
use super::subgroup::Subgroup;
use crate::arith::{left_kernel, IntMatrix, Integer};
use crate::error::Result;
use crate::pcgroup::{ExponentVector, PcPresentation};

/// Center of a nilpotent group; errors if nilpotency is not established within the class bound.
pub fn center(p: &PcPresentation) -> Result<Subgroup> {
    let whole = Subgroup::whole(p);
    let c = nilpotency_class(&whole, class_bound())?;
    if c <= 1 {
        return Ok(whole);
    }
    let gamma = subgroup_lower_central_terms(&whole, c + 1)?;
    let gens = p.generators();
    let mut d = whole;
    // d = D_i; gamma[i-1] = γ_i
    for i in 2..=c {
        let section = AbelianSection::new(&gamma[i - 1], &gamma[i])?;
        let moduli = section.moduli();
        let k = moduli.len();
        let dgens = d.gens();
        let m = dgens.len();
        if m == 0 {
            break;
        }
        if k == 0 {
            continue;
        }
        let width = k * gens.len();
        let mut rows: Vec<Vec<Integer>> = Vec::new();
        for x in &dgens {
            let mut row = Vec::with_capacity(width);
            for g in &gens {
                row.extend(section.image(&p.commutator(x, g)?)?);
            }
            rows.push(row);
        }
        // torsion relations of the target, one block per generator
        for b in 0..gens.len() {
            for (j, s) in moduli.iter().enumerate() {
                if !s.is_zero() {
                    let mut r = vec![Integer::zero(); width];
                    r[b * k + j] = s.clone();
                    rows.push(r);
                }
            }
        }
        let mat = IntMatrix::from_rows(width, rows);
        let ker = left_kernel(&mat);
        let mut new_gens: Vec<ExponentVector> = Vec::new();
        for v in ker {
            let mut acc = p.identity();
            for (x, e) in dgens.iter().zip(&v[..m]) {
                if !e.is_zero() {
                    acc = p.multiply(&acc, &p.power(x, e)?)?;
                }
            }
            if !acc.is_identity() {
                new_gens.push(acc);
            }
        }
        for (a, x) in dgens.iter().enumerate() {
            for y in &dgens[a + 1..] {
                let cm = p.commutator(x, y)?;
                if !cm.is_identity() {
                    new_gens.push(cm);
                }
            }
        }
        d = Subgroup::closure_under(p, &new_gens, &dgens)?;
    }
    Ok(d)
}

/// `Z_1 ⊆ Z_2 ⊆ ... ⊆ Z_j` of a nilpotent group.
pub fn upper_central_series(p: &PcPresentation, j: usize) -> Result<Vec<Subgroup>> {
    let mut out: Vec<Subgroup> = Vec::with_capacity(j);
    let mut current = Subgroup::trivial(p);
    for _ in 0..j {
        let next = if current == Subgroup::whole(p) {
            current.clone()
        } else {
            let q = Quotient::new(&current)?;
            let z = center(q.presentation())?;
            q.preimage(&z)?
        };
        out.push(next.clone());
        current = next;
    }
    Ok(out)
}

/// `Z_j(U)` for a nilpotent subgroup `U`, returned in ambient coordinates.
pub fn upper_central_term_of(u: &Subgroup, j: usize) -> Result<Subgroup> {
    let (pres, emb) = u.as_presentation()?;
    let terms = upper_central_series(&pres, j)?;
    let z = terms.last().cloned().unwrap_or_else(|| Subgroup::trivial(&pres));
    super::subgroup::image(&emb, &z)
}
