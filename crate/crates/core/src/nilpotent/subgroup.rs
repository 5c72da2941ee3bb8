use std::fmt;

use num_traits::{One, Zero};

use crate::arith::Integer;
use crate::error::{Error, Result};
use crate::pcgroup::igs::{depth_of, Igs};
use crate::pcgroup::{direct_product, ExponentVector, GroupHom, PcPresentation, Word};

/// A subgroup of a pc group, stored as a canonical induced generating sequence.
#[derive(Clone)]
pub struct Subgroup {
    ambient: PcPresentation,
    igs: Igs,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.igs == other.igs
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens().iter().map(|g| g.to_word(self.ambient.names())).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

fn raw(gens: &[ExponentVector]) -> Vec<Vec<Integer>> {
    gens.iter().map(|g| g.0.clone()).collect()
}

impl Subgroup {
    pub fn whole(p: &PcPresentation) -> Self {
        let mut igs = Igs::empty(p.num_gens());
        for i in 0..p.num_gens() {
            igs.slots[i] = Some(p.generator(i).0);
        }
        Subgroup { ambient: p.clone(), igs }
    }

    pub fn trivial(p: &PcPresentation) -> Self {
        Subgroup { ambient: p.clone(), igs: Igs::empty(p.num_gens()) }
    }

    /// Subgroup generated by `gens`.
    pub fn generated(p: &PcPresentation, gens: &[ExponentVector]) -> Result<Self> {
        Ok(Subgroup { ambient: p.clone(), igs: Igs::closure(p, &raw(gens), &[])? })
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(p: &PcPresentation, gens: &[ExponentVector]) -> Result<Self> {
        Ok(Subgroup { ambient: p.clone(), igs: Igs::closure(p, &raw(gens), &raw(&p.generators()))? })
    }

    /// Closure of `gens` under conjugation by the elements of `by`.
    pub fn closure_under(p: &PcPresentation, gens: &[ExponentVector], by: &[ExponentVector]) -> Result<Self> {
        Ok(Subgroup { ambient: p.clone(), igs: Igs::closure(p, &raw(gens), &raw(by))? })
    }

    pub fn ambient(&self) -> &PcPresentation {
        &self.ambient
    }

    /// Canonical generators in increasing depth.
    pub fn gens(&self) -> Vec<ExponentVector> {
        self.igs.elements().into_iter().map(ExponentVector).collect()
    }

    pub fn depths(&self) -> Vec<usize> {
        self.igs.depths()
    }

    /// Leading exponent of the generator at pc depth `d`, if any.
    pub fn leading_at(&self, d: usize) -> Option<&Integer> {
        self.igs.leading(d)
    }

    /// Relative order of each canonical generator inside the subgroup (0 = infinite).
    pub fn relative_orders(&self) -> Vec<Integer> {
        self.depths()
            .into_iter()
            .map(|d| {
                let o = self.ambient.relative_order(d);
                if o.is_zero() {
                    Integer::zero()
                } else {
                    o / self.igs.leading(d).expect("slot")
                }
            })
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.igs.is_trivial()
    }

    pub fn hirsch_length(&self) -> usize {
        self.depths().into_iter().filter(|&d| self.ambient.is_infinite_gen(d)).count()
    }

    /// Order when finite.
    pub fn order(&self) -> Option<Integer> {
        if self.hirsch_length() > 0 {
            return None;
        }
        Some(self.relative_orders().iter().product())
    }

    pub fn contains(&self, u: &ExponentVector) -> Result<bool> {
        self.igs.contains(&self.ambient, &u.0)
    }

    /// Exponents `q` with `u = s_1^{q_1} s_2^{q_2} ...` over [`Self::gens`], or `None`.
    pub fn express(&self, u: &ExponentVector) -> Result<Option<Vec<Integer>>> {
        let depths = self.depths();
        let Some(parts) = self.igs.express(&self.ambient, &u.0)? else { return Ok(None) };
        let mut q = vec![Integer::zero(); depths.len()];
        for (d, e) in parts {
            let k = depths.binary_search(&d).expect("slot depth");
            q[k] = e;
        }
        Ok(Some(q))
    }

    /// Canonical representative of the left coset `u·self`.
    pub fn coset_rep(&self, u: &ExponentVector) -> Result<ExponentVector> {
        Ok(ExponentVector(self.igs.coset_rep(&self.ambient, &u.0)?))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> Result<bool> {
        for g in self.gens() {
            if !other.contains(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `|self : sub|` for `sub ≤ self`; `None` when infinite.
    pub fn index_of(&self, sub: &Subgroup) -> Option<Integer> {
        let mut idx = Integer::one();
        for d in 0..self.ambient.num_gens() {
            let o = self.ambient.relative_order(d);
            match (self.igs.leading(d), sub.igs.leading(d)) {
                (None, _) => {}
                (Some(f), Some(e)) => idx *= e / f,
                (Some(f), None) => {
                    if o.is_zero() {
                        return None;
                    }
                    idx *= o / f;
                }
            }
        }
        Some(idx)
    }

    /// Index in the ambient group.
    pub fn index(&self) -> Option<Integer> {
        self.igs.index_in_ambient(&self.ambient)
    }

    /// Whether `x⁻¹ s x ∈ self` for every generator `s` and every `x` in `by` and its inverse.
    pub fn is_normalized_by(&self, by: &[ExponentVector]) -> Result<Option<(ExponentVector, ExponentVector)>> {
        let p = &self.ambient;
        for x in by {
            let xi = p.invert(x)?;
            for s in self.gens() {
                for y in [x, &xi] {
                    let t = p.conjugate(&s, y)?;
                    if !self.contains(&t)? {
                        return Ok(Some((s, y.clone())));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_normal(&self) -> Result<bool> {
        Ok(self.is_normalized_by(&self.ambient.generators())?.is_none())
    }

    /// Errors with a witness unless the subgroup is normal.
    pub fn require_normal(&self, what: &str) -> Result<()> {
        if let Some((s, x)) = self.is_normalized_by(&self.ambient.generators())? {
            let names = self.ambient.names();
            return Err(Error::NotNormal(format!(
                "{what}: conjugate of {} by {} leaves the subgroup",
                s.to_word(names),
                x.to_word(names)
            )));
        }
        Ok(())
    }

    /// `<self, other>`
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        self.with_elements(&other.gens())
    }

    /// `<self, extra>`
    pub fn with_elements(&self, extra: &[ExponentVector]) -> Result<Subgroup> {
        Ok(Subgroup { ambient: self.ambient.clone(), igs: self.igs.extended(&self.ambient, &raw(extra), &[])? })
    }

    /// `[self, other]` for normal subgroups: normal closure of generator commutators.
    pub fn commutator_with(&self, other: &Subgroup) -> Result<Subgroup> {
        let p = &self.ambient;
        let mut comms = Vec::new();
        for a in self.gens() {
            for b in other.gens() {
                let c = p.commutator(&a, &b)?;
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        Subgroup::normal_closure(p, &comms)
    }

    /// Derived subgroup `[self, self]`, computed inside `self` (no normality needed).
    pub fn derived(&self) -> Result<Subgroup> {
        let p = &self.ambient;
        let gens = self.gens();
        let mut comms = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let c = p.commutator(a, b)?;
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        Subgroup::closure_under(p, &comms, &gens)
    }

    /// Subgroup generated by `x^n` for the generators `x` together with the
    /// closure under the subgroup itself; equals `self^n` when `self` is abelian.
    pub fn power_subgroup_of_generators(&self, n: &Integer) -> Result<Subgroup> {
        let p = &self.ambient;
        let pows = self.gens().iter().map(|g| p.power(g, n)).collect::<Result<Vec<_>>>()?;
        Subgroup::closure_under(p, &pows, &self.gens())
    }

    /// Presentation on the canonical generators, with the embedding into the ambient group.
    /// A generator equal to an ambient generator keeps its name; others are `s1, s2, ...`.
    pub fn as_presentation(&self) -> Result<(PcPresentation, GroupHom)> {
        let p = &self.ambient;
        let gens = self.gens();
        let depths = self.depths();
        let m = gens.len();
        let names: Vec<String> = gens
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let d = depths[k];
                if g.letters().len() == 1 && g.0[d].is_one() {
                    p.name(d).to_string()
                } else {
                    format!("s{}", k + 1)
                }
            })
            .collect();
        let orders = self.relative_orders();
        let to_word = |u: &ExponentVector| -> Result<Word> {
            let q = self.express(u)?.ok_or_else(|| {
                Error::InvalidPresentation("subgroup generators are not closed (inconsistent ambient presentation?)".into())
            })?;
            Ok(q.into_iter().enumerate().filter(|(_, e)| !e.is_zero()).collect())
        };
        let mut b = PcPresentation::builder(names).step_budget(p.step_budget());
        for (k, o) in orders.iter().enumerate() {
            b = b.relative_order(k, o.clone());
            if !o.is_zero() {
                let r = p.power(&gens[k], o)?;
                b = b.power(k, to_word(&r)?);
            }
        }
        for i in 0..m {
            let inv = if orders[i].is_zero() { Some(p.invert(&gens[i])?) } else { None };
            for j in i + 1..m {
                let c = p.conjugate(&gens[j], &gens[i])?;
                b = b.conjugate(j, i, to_word(&c)?);
                if let Some(inv) = &inv {
                    let c = p.conjugate(&gens[j], inv)?;
                    b = b.conjugate_inverse(j, i, to_word(&c)?);
                }
            }
        }
        let sub = b.build()?;
        let emb = GroupHom::new(sub.clone(), p.clone(), gens)?.mark_verified();
        Ok((sub, emb))
    }

    /// Re-expresses a subgroup of `self` (given in ambient coordinates) inside the
    /// presentation returned by [`Self::as_presentation`].
    pub fn pull_into(&self, pres: &PcPresentation, sub: &Subgroup) -> Result<Subgroup> {
        let mut gens = Vec::new();
        for g in sub.gens() {
            let q = self.express(&g)?.ok_or_else(|| Error::Precondition("subgroup is not contained in the target".into()))?;
            gens.push(pres.collect(&q.into_iter().enumerate().collect::<Vec<_>>())?);
        }
        Subgroup::generated(pres, &gens)
    }
}

/// `f(U)`
pub fn image(f: &GroupHom, u: &Subgroup) -> Result<Subgroup> {
    let imgs = u.gens().iter().map(|g| f.apply(g)).collect::<Result<Vec<_>>>()?;
    Subgroup::generated(f.codomain(), &imgs)
}

/// `{g : f(g) ∈ V}` for `V` normalized by `f(G)` (the kernel when `V` is trivial).
///
/// Works in `codomain × domain`: the subgroup generated by the pairs
/// `(f(g_k), g_k)` and `V × 1` meets `1 × domain` exactly in the preimage.
pub fn preimage(f: &GroupHom, v: &Subgroup) -> Result<Subgroup> {
    let h = f.codomain();
    let g = f.domain();
    let (nh, ng) = (h.num_gens(), g.num_gens());
    let prod = direct_product(h, g);
    let mut gens = Vec::new();
    for k in 0..ng {
        let mut x = f.images()[k].0.clone();
        x.extend(g.generator(k).0);
        gens.push(x);
    }
    for w in v.gens() {
        let mut x = w.0;
        x.extend(vec![Integer::zero(); ng]);
        gens.push(x);
    }
    let igs = Igs::closure(&prod, &gens, &[])?;
    let mut out = Vec::new();
    for s in igs.elements() {
        if depth_of(&s) >= nh {
            out.push(ExponentVector(s[nh..].to_vec()));
        }
    }
    Subgroup::generated(g, &out)
}

pub fn kernel(f: &GroupHom) -> Result<Subgroup> {
    preimage(f, &Subgroup::trivial(f.codomain()))
}
