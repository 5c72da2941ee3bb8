use num_integer::Integer as _;
use num_traits::Zero;

use super::automorphism::AutomorphismAction;
use super::groups::{companion_cyclotomic, free_abelian, free_nilpotent_class2, lift_automorphism_class2};
use crate::arith::Integer;
use crate::error::{Error, Result};
use crate::nilpotent::{class_bound, kernel, nilpotency_class, quotient_presentation, relative_exponent, Subgroup};
use crate::pcgroup::{ExponentVector, GroupHom, PcPresentation, Word};
use crate::report::{CheckReport, Witness};

/// Default search bound for the exponent `a` with `x·α(x)···α^{a-1}(x) ∈ N'`.
pub const PRODUCT_SEARCH_BOUND: u64 = 64;

/// `N ⋊ A` for `A` free abelian, with the data needed to certify its properties.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub presentation: PcPresentation,
    pub base: PcPresentation,
    pub actions: Vec<AutomorphismAction>,
    /// Least `a_i` per action, `None` when the search bound was hit.
    pub exponents: Vec<Option<u64>>,
}

impl Semidirect {
    pub fn rank(&self) -> usize {
        self.actions.len()
    }

    /// Whether every action satisfied the product condition within the bound.
    pub fn certified(&self) -> bool {
        self.exponents.iter().all(Option::is_some)
    }

    /// `gcd(a_i)`
    pub fn a(&self) -> Option<u64> {
        self.certified().then(|| self.exponents.iter().flatten().fold(0, |g, &x| g.gcd(&x)))
    }

    /// `lcm(a_i)`
    pub fn b(&self) -> Option<u64> {
        self.certified().then(|| self.exponents.iter().flatten().fold(1, |l, &x| l.lcm(&x)))
    }

    /// An element of `N` as an element of the product.
    pub fn embed(&self, x: &ExponentVector) -> ExponentVector {
        let mut v = vec![Integer::zero(); self.rank()];
        v.extend(x.0.iter().cloned());
        ExponentVector(v)
    }

    /// The fiber `N` as a subgroup of the product.
    pub fn fiber(&self) -> Subgroup {
        let gens: Vec<ExponentVector> = self.base.generators().iter().map(|x| self.embed(x)).collect();
        Subgroup::generated(&self.presentation, &gens).expect("fiber generators")
    }

    /// A subgroup of `N` carried into the product.
    pub fn embed_subgroup(&self, m: &Subgroup) -> Result<Subgroup> {
        let gens: Vec<ExponentVector> = m.gens().iter().map(|x| self.embed(x)).collect();
        Subgroup::generated(&self.presentation, &gens)
    }

    pub fn report(&self) -> CheckReport {
        let exps: Vec<Integer> = self.exponents.iter().map(|e| Integer::from(e.unwrap_or(0))).collect();
        let mut r = if self.certified() {
            CheckReport::pass(format!(
                "certified-by-construction (a = {}, b = {})",
                self.a().unwrap_or(0),
                self.b().unwrap_or(0)
            ))
        } else {
            CheckReport::fail("product condition not found within the search bound")
        };
        r.insert("exponents", Witness::Ints(exps));
        r
    }
}

fn shift(v: &ExponentVector, r: usize) -> Word {
    v.letters().into_iter().map(|(g, e)| (g + r, e)).collect()
}

/// Least `a ≤ bound` with `x·α(x)···α^{a-1}(x) ∈ N'` for every generator `x`.
pub fn product_condition_exponent(alpha: &AutomorphismAction, bound: u64) -> Result<Option<u64>> {
    let n = alpha.base();
    let derived = Subgroup::whole(n).derived()?;
    let mut products = n.generators();
    let mut terms = n.generators();
    for a in 1..=bound {
        let mut all = true;
        for p in &products {
            if !derived.contains(p)? {
                all = false;
                break;
            }
        }
        if all {
            return Ok(Some(a));
        }
        for (p, t) in products.iter_mut().zip(terms.iter_mut()) {
            *t = alpha.apply(t)?;
            *p = n.multiply(p, t)?;
        }
    }
    Ok(None)
}

/// `N ⋊ <t_1, ..., t_r>` with `x^{t_k} = α_k(x)`; generators `t` (or `t1..tr`) come first.
pub fn semidirect_by_automorphisms(
    n: &PcPresentation,
    actions: &[AutomorphismAction],
    bound: u64,
) -> Result<Semidirect> {
    let r = actions.len();
    if actions.iter().any(|a| a.base() != n) {
        return Err(Error::Precondition("actions must be automorphisms of the given group".into()));
    }
    for i in 0..r {
        for j in i + 1..r {
            if !actions[i].commutes_with(&actions[j])? {
                return Err(Error::Precondition(format!("actions {} and {} do not commute", i + 1, j + 1)));
            }
        }
    }
    let mut names: Vec<String> = if r == 1 { vec!["t".into()] } else { (1..=r).map(|k| format!("t{k}")).collect() };
    for nm in n.names() {
        if names.contains(nm) {
            return Err(Error::InvalidPresentation(format!("generator name {nm} is reserved for the acting group")));
        }
        names.push(nm.clone());
    }
    let m = n.num_gens();
    let mut b = PcPresentation::builder(names).step_budget(n.step_budget());
    for j in 0..m {
        b = b.relative_order(r + j, n.relative_order(j).clone());
        if let Some(w) = n.power_relation(j) {
            b = b.power(r + j, shift(&w, r));
        }
        for k in j + 1..m {
            b = b.conjugate(r + k, r + j, shift(&n.conjugate_relation(k, j), r));
            if let Some(w) = n.conjugate_inverse_relation(k, j) {
                b = b.conjugate_inverse(r + k, r + j, shift(&w, r));
            }
        }
    }
    for (i, alpha) in actions.iter().enumerate() {
        for j in 0..m {
            b = b.conjugate(r + j, i, shift(&alpha.images()[j], r));
            b = b.conjugate_inverse(r + j, i, shift(&alpha.inverse_images()[j], r));
        }
    }
    let presentation = b.build()?;
    let exponents = actions.iter().map(|a| product_condition_exponent(a, bound)).collect::<Result<Vec<_>>>()?;
    Ok(Semidirect { presentation, base: n.clone(), actions: actions.to_vec(), exponents })
}

/// The fiber of a companion semidirect product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fiber {
    /// `Z^{p-1}` on `x1..x_{p-1}`
    Abelian,
    /// free nilpotent class 2 of rank `p-1`, with the lifted action
    Class2,
}

/// `N ⋊ <t>` with `t` acting through the cyclotomic companion matrix for `p`.
pub fn companion_semidirect(p: u64, fiber: Fiber) -> Result<Semidirect> {
    let mu = companion_cyclotomic(p)?;
    let r = mu.rows();
    let (n, alpha) = match fiber {
        Fiber::Abelian => {
            let n = free_abelian(r);
            let images = (0..r)
                .map(|i| ExponentVector(mu.col_vec(i)))
                .collect();
            let alpha = AutomorphismAction::new(&n, images)?;
            (n, alpha)
        }
        Fiber::Class2 => {
            let n = free_nilpotent_class2(r);
            let alpha = lift_automorphism_class2(&n, &mu)?;
            (n, alpha)
        }
    };
    semidirect_by_automorphisms(&n, &[alpha], PRODUCT_SEARCH_BOUND)
}

/// `G = <t>M` inside `H = N ⋊ <t>`, with its inclusion into `H`.
#[derive(Clone, Debug)]
pub struct SubSemidirect {
    pub presentation: PcPresentation,
    pub inclusion: GroupHom,
    /// Least `n` with `x^n ∈ M` for all `x ∈ N`, if `M` has finite index.
    pub index_exponent: Option<Integer>,
}

pub fn sub_semidirect_inclusion(h: &Semidirect, m: &Subgroup) -> Result<SubSemidirect> {
    if h.rank() != 1 {
        return Err(Error::Precondition("sub-semidirect inclusions need a single acting generator".into()));
    }
    if m.ambient() != &h.base {
        return Err(Error::Precondition("M must be a subgroup of the fiber".into()));
    }
    let alpha = &h.actions[0];
    let names = h.base.names();
    for x in m.gens() {
        for (img, sign) in [(alpha.apply(&x)?, ""), (alpha.apply_inverse(&x)?, "^-1")] {
            if !m.contains(&img)? {
                return Err(Error::NotInvariant(format!(
                    "{}^t{} = {} is not in M",
                    x.to_word(names),
                    sign,
                    img.to_word(names)
                )));
            }
        }
    }
    m.require_normal("M in N")?;
    let mut gens = vec![h.presentation.generator(0)];
    gens.extend(m.gens().iter().map(|x| h.embed(x)));
    let u = Subgroup::generated(&h.presentation, &gens)?;
    let (presentation, mut inclusion) = u.as_presentation()?;
    let check = inclusion.verify();
    if !check.passed() {
        return Err(Error::InvalidPresentation(format!("inclusion is not a homomorphism: {}", check.summary)));
    }
    let index_exponent = relative_exponent(&Subgroup::whole(&h.base), m)?;
    Ok(SubSemidirect { presentation, inclusion, index_exponent })
}

/// `M ∩ K` for `K` normal: the kernel of `M → P/K`.
pub fn intersect_with_normal(m: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    let p = m.ambient();
    let (_, proj) = quotient_presentation(k)?;
    let (_, emb) = m.as_presentation()?;
    let f = emb.then(&proj)?;
    let ker = kernel(&f)?;
    let gens = ker.gens().iter().map(|x| emb.apply(x)).collect::<Result<Vec<_>>>()?;
    Subgroup::generated(p, &gens)
}

/// Whether `M ∩ N' = M'` for `M ≤ N`.
pub fn derived_intersection_check(m: &Subgroup) -> Result<CheckReport> {
    let n = Subgroup::whole(m.ambient());
    let meet = intersect_with_normal(m, &n.derived()?)?;
    let md = m.derived()?;
    let names = m.ambient().names();
    if meet == md {
        return Ok(CheckReport::pass("M ∩ N' = M'"));
    }
    let witness = meet
        .gens()
        .into_iter()
        .find(|x| !md.contains(x).unwrap_or(true))
        .map(|x| x.to_word(names))
        .unwrap_or_default();
    Ok(CheckReport::fail("M ∩ N' is larger than M'").with("outside_derived", Witness::Text(witness)))
}

/// Builds `G ⋊ <t>` for an action trivial on `G_ab` and checks the class does not grow.
pub fn central_extension_check(g: &PcPresentation, action: &AutomorphismAction) -> Result<CheckReport> {
    let ab = action.abelianized();
    if *ab != crate::arith::IntMatrix::identity(ab.rows()) {
        return Err(Error::Precondition(format!("action on the abelianization is {ab}, not the identity")));
    }
    let c = nilpotency_class(&Subgroup::whole(g), class_bound())?;
    let ext = semidirect_by_automorphisms(g, std::slice::from_ref(action), 1)?;
    let whole = Subgroup::whole(&ext.presentation);
    let terms = crate::nilpotent::subgroup_lower_central_terms(&whole, c.max(1) + 1)?;
    let top = &terms[c.max(1)];
    let report = if top.is_trivial() {
        CheckReport::pass(format!("extension has class {}", c.max(1)))
    } else {
        CheckReport::fail(format!("gamma_{} of the extension is nontrivial", c.max(1) + 1))
            .with("generators", Witness::Texts(top.gens().iter().map(|x| x.to_word(ext.presentation.names())).collect()))
    };
    Ok(report.with("class", Witness::Int(Integer::from(c))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::heisenberg;
    use crate::nilpotent::{abelianization, isolator, tau, PrimeSet};
    use crate::pcgroup::check_consistency;
    use num_traits::One;

    fn p3() -> Semidirect {
        companion_semidirect(3, Fiber::Abelian).unwrap()
    }

    #[test]
    fn p3_instance_relations() {
        let h = p3();
        let p = &h.presentation;
        assert_eq!(p.names(), &["t", "x1", "x2"]);
        assert_eq!(p.conjugate_relation(1, 0), ExponentVector::from_i64(&[0, 0, 1]));
        assert_eq!(p.conjugate_relation(2, 0), ExponentVector::from_i64(&[0, -1, -1]));
        assert!(check_consistency(p).passed());
        assert_eq!(h.exponents, vec![Some(3)]);
        assert_eq!((h.a(), h.b()), (Some(3), Some(3)));
    }

    #[test]
    fn p3_instance_invariants() {
        let h = p3();
        let p = &h.presentation;
        let (inv, _) = abelianization(p).unwrap();
        assert_eq!(inv.to_string(), "rank 1, divisors (3)");
        assert_eq!(tau(p).unwrap(), PrimeSet::finite([3]).unwrap());
        let g2 = Subgroup::whole(p).derived().unwrap();
        assert_eq!(isolator(&g2, &PrimeSet::finite([3]).unwrap()).unwrap(), h.fiber());
        assert_eq!(p.hirsch_length(), h.base.hirsch_length() + 1);
    }

    #[test]
    fn trivial_action_is_direct() {
        let n = heisenberg();
        let h = semidirect_by_automorphisms(&n, &[AutomorphismAction::identity(&n)], 8).unwrap();
        assert_eq!(h.exponents, vec![None]);
        assert!(!h.certified());
        assert!(check_consistency(&h.presentation).passed());
        assert_eq!(h.presentation.hirsch_length(), 4);
    }

    #[test]
    fn two_commuting_actions() {
        let h = p3();
        let mu = h.actions[0].clone();
        let mu2 = mu.compose(&mu).unwrap();
        let s = semidirect_by_automorphisms(&h.base, &[mu, mu2], PRODUCT_SEARCH_BOUND).unwrap();
        assert_eq!(s.presentation.names()[..2], ["t1".to_string(), "t2".to_string()]);
        assert!(check_consistency(&s.presentation).passed());
        assert_eq!(s.a(), Some(3));
    }

    #[test]
    fn noncommuting_actions_rejected() {
        let n = free_abelian(2);
        let a = AutomorphismAction::new(&n, vec![ExponentVector::from_i64(&[1, 0]), ExponentVector::from_i64(&[1, 1])]).unwrap();
        let b = AutomorphismAction::new(&n, vec![ExponentVector::from_i64(&[1, 1]), ExponentVector::from_i64(&[0, 1])]).unwrap();
        assert!(semidirect_by_automorphisms(&n, &[a, b], 4).is_err());
    }

    #[test]
    fn class2_fiber_is_consistent() {
        let h = companion_semidirect(3, Fiber::Class2).unwrap();
        assert!(check_consistency(&h.presentation).passed());
        assert_eq!(h.presentation.hirsch_length(), 4);
        let h5 = companion_semidirect(5, Fiber::Abelian).unwrap();
        assert!(check_consistency(&h5.presentation).passed());
        assert_eq!(h5.exponents, vec![Some(5)]);
    }

    #[test]
    fn sub_semidirect_examples() {
        let h = p3();
        let n = &h.base;
        let whole = sub_semidirect_inclusion(&h, &Subgroup::whole(n)).unwrap();
        assert_eq!(whole.presentation.hirsch_length(), 3);
        assert_eq!(whole.index_exponent, Some(Integer::one()));

        let two = Subgroup::generated(n, &[ExponentVector::from_i64(&[2, 0]), ExponentVector::from_i64(&[0, 2])]).unwrap();
        let g = sub_semidirect_inclusion(&h, &two).unwrap();
        assert_eq!(g.index_exponent, Some(Integer::from(2)));
        let (inv, _) = abelianization(&g.presentation).unwrap();
        assert_eq!(inv.to_string(), "rank 1, divisors (3)");
        assert!(g.inclusion.is_verified());

        let x1 = Subgroup::generated(n, &[ExponentVector::from_i64(&[1, 0])]).unwrap();
        let err = sub_semidirect_inclusion(&h, &x1).unwrap_err().to_string();
        assert!(err.contains("x1^t = x2"), "{err}");
    }

    #[test]
    fn derived_intersection() {
        let n = heisenberg();
        let g = |v: &[i64]| ExponentVector::from_i64(v);
        let m = Subgroup::generated(&n, &[g(&[2, 0, 0]), g(&[0, 2, 0])]).unwrap();
        assert!(derived_intersection_check(&m).unwrap().passed());
        let m2 = Subgroup::generated(&n, &[g(&[2, 0, 0]), g(&[0, 2, 0]), g(&[0, 0, 1])]).unwrap();
        assert!(!derived_intersection_check(&m2).unwrap().passed());
    }

    #[test]
    fn central_extension_of_heisenberg() {
        let n = heisenberg();
        let g = |v: &[i64]| ExponentVector::from_i64(v);
        let alpha = AutomorphismAction::new(&n, vec![g(&[1, 0, 1]), g(&[0, 1, 0]), g(&[0, 0, 1])]).unwrap();
        let r = central_extension_check(&n, &alpha).unwrap();
        assert!(r.passed(), "{}", r.summary);
        let swap = AutomorphismAction::new(&n, vec![g(&[0, 1, 0]), g(&[1, 0, 0]), g(&[0, 0, -1])]).unwrap();
        assert!(central_extension_check(&n, &swap).is_err());
        let ab = free_abelian(2);
        let r = central_extension_check(&ab, &AutomorphismAction::identity(&ab)).unwrap();
        assert_eq!(r.summary, "extension has class 1");
    }
}
