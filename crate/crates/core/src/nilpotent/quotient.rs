use num_traits::{One, Zero};

use super::subgroup::Subgroup;
use crate::arith::Integer;
use crate::error::Result;
use crate::pcgroup::{ExponentVector, GroupHom, PcPresentation};

/// `G/K` for a normal subgroup `K`, with the maps both ways.
///
/// The quotient keeps the pc generators of `G` at depths where `K` does not
/// contain a generator with leading exponent 1; the new relative order at such a
/// depth is the leading exponent of `K` there (or the old relative order when `K`
/// has no generator at that depth).
#[derive(Clone, Debug)]
pub struct Quotient {
    presentation: PcPresentation,
    kernel: Subgroup,
    kept: Vec<usize>,
    projection: GroupHom,
}

impl Quotient {
    pub fn new(kernel: &Subgroup) -> Result<Quotient> {
        kernel.require_normal("quotient")?;
        let g = kernel.ambient().clone();
        let n = g.num_gens();
        let kept: Vec<usize> = (0..n).filter(|&d| kernel.leading_at(d).is_none_or(|f| !f.is_one())).collect();
        let orders: Vec<Integer> = kept
            .iter()
            .map(|&d| kernel.leading_at(d).cloned().unwrap_or_else(|| g.relative_order(d).clone()))
            .collect();
        let m = kept.len();
        let proj = |u: &ExponentVector| -> Result<Vec<Integer>> {
            let r = kernel.coset_rep(u)?;
            Ok(kept.iter().map(|&d| r.0[d].clone()).collect())
        };
        let unit = |j: usize| {
            let mut v = vec![Integer::zero(); m];
            v[j] = Integer::one();
            v
        };
        let mut powers = vec![vec![Integer::zero(); m]; m];
        let mut conj: Vec<Vec<Vec<Integer>>> = (0..m).map(|_| (0..m).map(unit).collect()).collect();
        let mut conj_inv: Vec<Option<Vec<Vec<Integer>>>> = vec![None; m];
        for (a, &da) in kept.iter().enumerate() {
            let ga = g.generator(da);
            if !orders[a].is_zero() {
                powers[a] = proj(&g.power(&ga, &orders[a])?)?;
            }
            let ga_inv = if orders[a].is_zero() { Some(g.invert(&ga)?) } else { None };
            let mut inv_rows: Vec<Vec<Integer>> = (0..m).map(unit).collect();
            for (b, &db) in kept.iter().enumerate().skip(a + 1) {
                let gb = g.generator(db);
                conj[a][b] = proj(&g.conjugate(&gb, &ga)?)?;
                if let Some(inv) = &ga_inv {
                    inv_rows[b] = proj(&g.conjugate(&gb, inv)?)?;
                }
            }
            if ga_inv.is_some() {
                conj_inv[a] = Some(inv_rows);
            }
        }
        let names = kept.iter().map(|&d| g.name(d).to_string()).collect();
        let presentation = PcPresentation::from_parts(names, orders, powers, conj, conj_inv, g.step_budget());
        let images = (0..n)
            .map(|d| proj(&g.generator(d)).map(ExponentVector))
            .collect::<Result<Vec<_>>>()?;
        let projection = GroupHom::new(g.clone(), presentation.clone(), images)?.mark_verified();
        Ok(Quotient { presentation, kernel: kernel.clone(), kept, projection })
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.presentation
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn projection(&self) -> &GroupHom {
        &self.projection
    }

    /// Ambient depth of each quotient generator.
    pub fn kept_depths(&self) -> &[usize] {
        &self.kept
    }

    pub fn project(&self, u: &ExponentVector) -> Result<ExponentVector> {
        let r = self.kernel.coset_rep(u)?;
        Ok(ExponentVector(self.kept.iter().map(|&d| r.0[d].clone()).collect()))
    }

    /// A preimage of a quotient element.
    pub fn lift(&self, v: &ExponentVector) -> ExponentVector {
        let mut u = self.kernel.ambient().identity();
        for (k, &d) in self.kept.iter().enumerate() {
            u.0[d] = v.0[k].clone();
        }
        u
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, s: &Subgroup) -> Result<Subgroup> {
        let lifts: Vec<ExponentVector> = s.gens().iter().map(|v| self.lift(v)).collect();
        self.kernel.with_elements(&lifts)
    }

    pub fn image(&self, s: &Subgroup) -> Result<Subgroup> {
        let imgs = s.gens().iter().map(|u| self.project(u)).collect::<Result<Vec<_>>>()?;
        Subgroup::generated(&self.presentation, &imgs)
    }
}

/// Presentation of `P/K` with its projection.
pub fn quotient_presentation(k: &Subgroup) -> Result<(PcPresentation, GroupHom)> {
    let q = Quotient::new(k)?;
    Ok((q.presentation.clone(), q.projection.clone()))
}
