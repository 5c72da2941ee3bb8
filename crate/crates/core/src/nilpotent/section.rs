use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::subgroup::Subgroup;
use crate::arith::{smith_normal_form, AbelianInvariants, IntMatrix, Integer, SmithForm};
use crate::error::{Error, Result};
use crate::pcgroup::ExponentVector;

/// The abelian group `U/V` for `V ⊴ U` with `U/V` abelian, with coordinates.
///
/// Elements of `U` are written over the canonical generators of `U`; the relation
/// lattice collects relative powers, conjugation relations and the generators of
/// `V`. Its Smith form gives the cyclic decomposition: coordinates are `c·V_s`
/// reduced modulo the diagonal.
#[derive(Clone, Debug)]
pub struct AbelianSection {
    upper: Subgroup,
    lower: Subgroup,
    smith: SmithForm,
    /// `(column of the Smith basis, modulus)`; modulus 0 for free components.
    components: Vec<(usize, Integer)>,
    invariants: AbelianInvariants,
}

impl AbelianSection {
    pub fn new(upper: &Subgroup, lower: &Subgroup) -> Result<AbelianSection> {
        let p = upper.ambient();
        let gens = upper.gens();
        let m = gens.len();
        let orders = upper.relative_orders();
        let coords = |u: &ExponentVector| -> Result<Vec<Integer>> {
            upper
                .express(u)?
                .ok_or_else(|| Error::Precondition("section element outside the upper subgroup".into()))
        };
        let mut rows: Vec<Vec<Integer>> = Vec::new();
        for k in 0..m {
            if !orders[k].is_zero() {
                let mut r = coords(&p.power(&gens[k], &orders[k])?)?;
                r.iter_mut().for_each(|x| *x = -&*x);
                r[k] += &orders[k];
                rows.push(r);
            }
        }
        for i in 0..m {
            let inv = if orders[i].is_zero() { Some(p.invert(&gens[i])?) } else { None };
            for j in i + 1..m {
                let mut conjugators = vec![gens[i].clone()];
                conjugators.extend(inv.clone());
                for x in &conjugators {
                    let mut r = coords(&p.conjugate(&gens[j], x)?)?;
                    r[j] -= 1;
                    if r.iter().any(|x| !x.is_zero()) {
                        rows.push(r);
                    }
                }
            }
        }
        for v in lower.gens() {
            rows.push(coords(&v)?);
        }
        if rows.is_empty() {
            rows.push(vec![Integer::zero(); m]);
        }
        let rel = IntMatrix::from_rows(m, rows);
        let smith = smith_normal_form(&rel);
        let diag = smith.diagonal();
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for k in 0..m {
            let s = diag.get(k).cloned().unwrap_or_else(Integer::zero);
            if s.is_zero() {
                free.push((k, s));
            } else if !s.is_one() {
                torsion.push((k, s));
            }
        }
        let invariants = AbelianInvariants {
            rank: free.len(),
            divisors: torsion.iter().map(|(_, s)| s.clone()).collect(),
        };
        torsion.extend(free);
        Ok(AbelianSection { upper: upper.clone(), lower: lower.clone(), smith, components: torsion, invariants })
    }

    pub fn invariants(&self) -> &AbelianInvariants {
        &self.invariants
    }

    pub fn upper(&self) -> &Subgroup {
        &self.upper
    }

    pub fn lower(&self) -> &Subgroup {
        &self.lower
    }

    /// Moduli of the coordinates returned by [`Self::image`]; 0 for free ones.
    pub fn moduli(&self) -> Vec<Integer> {
        self.components.iter().map(|(_, s)| s.clone()).collect()
    }

    /// Coordinates of `uV`: torsion components (reduced) then free components.
    pub fn image(&self, u: &ExponentVector) -> Result<Vec<Integer>> {
        let c = self
            .upper
            .express(u)?
            .ok_or_else(|| Error::Precondition("section element outside the upper subgroup".into()))?;
        let y = self.smith.v.left_apply(&c);
        Ok(self
            .components
            .iter()
            .map(|(k, s)| if s.is_zero() { y[*k].clone() } else { y[*k].mod_floor(s) })
            .collect())
    }

    /// An element of `U` mapping to the `k`-th basis coordinate.
    pub fn basis_element(&self, k: usize) -> Result<ExponentVector> {
        let (col, _) = &self.components[k];
        let c = self.smith.v_inv.row(*col).to_vec();
        let p = self.upper.ambient();
        let gens = self.upper.gens();
        let mut acc = p.identity();
        for (g, e) in gens.iter().zip(&c) {
            if !e.is_zero() {
                acc = p.multiply(&acc, &p.power(g, e)?)?;
            }
        }
        Ok(acc)
    }
}
