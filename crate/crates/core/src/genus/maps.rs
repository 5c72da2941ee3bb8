use std::fmt;

use num_traits::One;

use crate::arith::Integer;
use crate::error::{Error, Result};
use crate::nilpotent::{
    class_bound, image, kernel, lower_central_series, nilpotency_class, quotient_presentation, relative_exponent,
    subgroup_lower_central_terms, tau, tau_with_index, PrimeSet, Subgroup,
};
use crate::pcgroup::GroupHom;
use crate::report::{CheckReport, Verdict, Witness};

/// Depth used when none is given.
pub const DEFAULT_DEPTH: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Iso,
    Mono,
    Epi,
    Neither,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::Iso => "iso",
            MapKind::Mono => "mono",
            MapKind::Epi => "epi",
            MapKind::Neither => "neither",
        })
    }
}

/// `φ_i : G/γ_i(G) → H/γ_i(H)` induced by `f`.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub i: usize,
    pub map: GroupHom,
    pub surjective: bool,
    pub injective: bool,
}

impl InducedMap {
    pub fn kind(&self) -> MapKind {
        match (self.injective, self.surjective) {
            (true, true) => MapKind::Iso,
            (true, false) => MapKind::Mono,
            (false, true) => MapKind::Epi,
            (false, false) => MapKind::Neither,
        }
    }
}

fn gamma(u: &Subgroup, i: usize) -> Result<Subgroup> {
    Ok(subgroup_lower_central_terms(u, i)?.pop().expect("at least one term"))
}

pub(crate) fn ensure_verified(f: &GroupHom) -> Result<()> {
    if f.is_verified() {
        return Ok(());
    }
    let mut g = f.clone();
    let r = g.verify();
    if r.passed() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("not a homomorphism: {}", r.summary)))
    }
}

/// Surjective iff `f(G)γ_i(H) = H`; injective iff the kernel of `G → H/γ_i(H)` is `γ_i(G)`.
pub fn induced_quotient_map(f: &GroupHom, i: usize) -> Result<InducedMap> {
    if i == 0 {
        return Err(Error::Precondition("layer index starts at 1".into()));
    }
    ensure_verified(f)?;
    let g_whole = Subgroup::whole(f.domain());
    let h_whole = Subgroup::whole(f.codomain());
    let gi = gamma(&g_whole, i)?;
    let hi = gamma(&h_whole, i)?;
    let surjective = image(f, &g_whole)?.join(&hi)? == h_whole;
    let (_, proj_h) = quotient_presentation(&hi)?;
    let composite = f.then(&proj_h)?;
    let injective = kernel(&composite)? == gi;
    let (_, proj_g) = quotient_presentation(&gi)?;
    // φ_i on generators of G/γ_i(G): each generator lifts to a generator of G
    let q_gens = proj_g.codomain().num_gens();
    let mut images = Vec::with_capacity(q_gens);
    let q = crate::nilpotent::Quotient::new(&gi)?;
    for k in 0..q_gens {
        let lift = q.lift(&proj_g.codomain().generator(k));
        images.push(composite.apply(&lift)?);
    }
    let map = GroupHom::new_verified(proj_g.codomain().clone(), proj_h.codomain().clone(), images)?;
    Ok(InducedMap { i, map, surjective, injective })
}

/// `n_i = min{n : γ_i(H)^n ≤ f(γ_i(G))}` for `i` in `from..=to`, `None` for infinite index.
pub fn layer_exponents(f: &GroupHom, from: usize, to: usize) -> Result<Vec<Option<Integer>>> {
    let g_terms = subgroup_lower_central_terms(&Subgroup::whole(f.domain()), to)?;
    let h_terms = subgroup_lower_central_terms(&Subgroup::whole(f.codomain()), to)?;
    let mut out = Vec::new();
    for i in from..=to {
        let img = image(f, &g_terms[i - 1])?;
        out.push(relative_exponent(&h_terms[i - 1], &img)?);
    }
    Ok(out)
}

fn render_exponents(ns: &[Integer]) -> String {
    match ns.first() {
        Some(first) if ns.iter().all(|n| n == first) => first.to_string(),
        _ => ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", "),
    }
}

fn abelianization_iso(f: &GroupHom) -> Result<InducedMap> {
    induced_quotient_map(f, 2)
}

/// Lower central `τ`-monomorphism check to `depth`: `φ_2` is an isomorphism and
/// each `n_i` (`2 ≤ i ≤ depth`) exists and is a `τ′`-number.
pub fn check_tau_monomorphism(f: &GroupHom, tau_set: &PrimeSet, depth: usize) -> Result<CheckReport> {
    let phi2 = abelianization_iso(f)?;
    if phi2.kind() != MapKind::Iso {
        return Err(Error::Precondition(format!("abelianization map is {}, not an isomorphism", phi2.kind())));
    }
    let tau_prime = tau_set.complement();
    let exps = layer_exponents(f, 2, depth.max(2))?;
    let mut found = Vec::new();
    for (k, e) in exps.into_iter().enumerate() {
        let i = k + 2;
        let Some(n) = e else {
            return Ok(CheckReport::fail(format!("fail at i = {i}: f(gamma_{i}(G)) has infinite index"))
                .with("n_i", Witness::Ints(found))
                .with_depth(i));
        };
        if !tau_prime.is_pi_number(&n) {
            return Ok(CheckReport::fail(format!("fail at i = {i}: n_{i} = {n} is not a tau'-number"))
                .with("n_i", Witness::Ints({
                    found.push(n);
                    found
                }))
                .with_depth(i));
        }
        found.push(n);
    }
    let k = tau_with_index(f.codomain())?.1;
    Ok(CheckReport::pass(format!("pass (depth {depth}, stabilized at k={k}), n_i = {}", render_exponents(&found)))
        .with("n_i", Witness::Ints(found))
        .with("stabilized_at", Witness::Int(Integer::from(k)))
        .with("tau", Witness::Text(tau_set.to_string()))
        .with_depth(depth))
}

/// `φ_i` is an isomorphism for every `i ≤ depth`, with matching step invariants,
/// `τ(G) = τ(H)`, and matching derived-subgroup class when that is computable.
pub fn check_para(f: &GroupHom, depth: usize) -> Result<CheckReport> {
    ensure_verified(f)?;
    let depth = depth.max(1);
    let tg = lower_central_series(f.domain(), depth)?;
    let th = lower_central_series(f.codomain(), depth)?;
    for i in 2..=depth {
        let phi = induced_quotient_map(f, i)?;
        if phi.kind() != MapKind::Iso {
            return Ok(CheckReport::fail(format!("fail at i = {i}: phi_{i} is {}, not iso", phi.kind()))
                .with("layer", Witness::Int(Integer::from(i)))
                .with_depth(i));
        }
    }
    let mut steps = Vec::new();
    for i in 1..=depth {
        if tg.step(i) != th.step(i) {
            return Ok(CheckReport::fail(format!(
                "fail at i = {i}: step invariants differ ({} vs {})",
                tg.step(i),
                th.step(i)
            ))
            .with_depth(i));
        }
        steps.push(tg.step(i).to_string());
    }
    let (tau_g, tau_h) = (tau(f.domain())?, tau(f.codomain())?);
    if tau_g != tau_h {
        return Ok(CheckReport::fail(format!("tau differs: {tau_g} vs {tau_h}")).with_depth(depth));
    }
    let exps: Vec<Integer> = layer_exponents(f, 2, depth.max(2))?
        .into_iter()
        .map(|e| e.unwrap_or_else(|| Integer::from(0)))
        .collect();
    let k = tau_with_index(f.codomain())?.1;
    let mut summary = format!("pass (depth {depth}, stabilized at k={k})");
    if depth >= 2 {
        summary.push_str(&format!(", n_i = {}", render_exponents(&exps)));
    }
    let mut report = CheckReport::pass(summary)
        .with("n_i", Witness::Ints(exps))
        .with("stabilized_at", Witness::Int(Integer::from(k)))
        .with("step_invariants", Witness::Texts(steps))
        .with("tau", Witness::Text(tau_g.to_string()))
        .with_depth(depth);
    let bound = class_bound();
    let cg = nilpotency_class(&Subgroup::whole(f.domain()).derived()?, bound);
    let ch = nilpotency_class(&Subgroup::whole(f.codomain()).derived()?, bound);
    match (cg, ch) {
        (Ok(a), Ok(b)) if a != b => {
            report.verdict = Verdict::Fail;
            report.summary = format!("derived subgroups have classes {a} and {b}");
        }
        (Ok(a), Ok(_)) => report.insert("derived_class", Witness::Int(Integer::from(a))),
        _ => report.insert("derived_class", Witness::Text("not nilpotent within bound".into())),
    }
    Ok(report)
}

/// Single-layer para certificate when `H'` has class at most 2: `φ_2` iso and
/// `γ_2(H)^n ≤ f(γ_2(G))` for a `τ(G)′`-number `n`.
pub fn check_cor23_fastpath(f: &GroupHom) -> Result<CheckReport> {
    ensure_verified(f)?;
    let h_derived = Subgroup::whole(f.codomain()).derived()?;
    let c = nilpotency_class(&h_derived, 2).map_err(|_| Error::Precondition("H' has class greater than 2".into()))?;
    let phi2 = abelianization_iso(f)?;
    if phi2.kind() != MapKind::Iso {
        return Ok(CheckReport::fail(format!("fail: abelianization map is {}, not iso", phi2.kind())));
    }
    let tau_g = tau(f.domain())?;
    let n = match layer_exponents(f, 2, 2)?.pop().flatten() {
        Some(n) => n,
        None => return Ok(CheckReport::fail("fail: f(gamma_2(G)) has infinite index in gamma_2(H)")),
    };
    if !tau_g.complement().is_pi_number(&n) {
        return Ok(CheckReport::fail(format!("fail: n = {n} is not a tau'-number for tau = {tau_g}"))
            .with("n", Witness::Int(n)));
    }
    // bound for the next layer: n when H' is abelian, a^3 n^4 (a = 2 for even n) at class 2
    let next = if c <= 1 {
        n.clone()
    } else {
        let a = if n.bit(0) { Integer::one() } else { Integer::from(2) };
        a.pow(3) * n.pow(4)
    };
    Ok(CheckReport::pass(format!("pass (para certificate from layer 2), n = {n}"))
        .with("n", Witness::Int(n))
        .with("next_layer_bound", Witness::Int(next))
        .with("derived_class", Witness::Int(Integer::from(c)))
        .with("tau", Witness::Text(tau_g.to_string()))
        .with_depth(2))
}

/// Re-checks the exponents of a passing `τ`-monomorphism or para report by
/// membership: `x^{n_i} ∈ f(γ_i(G))` for generators of `γ_i(H)` and their pairwise products.
pub fn replay_exponents(f: &GroupHom, report: &CheckReport) -> Result<bool> {
    let Some(Witness::Ints(ns)) = report.witness("n_i") else {
        return Ok(false);
    };
    let h = f.codomain();
    let to = ns.len() + 1;
    let g_terms = subgroup_lower_central_terms(&Subgroup::whole(f.domain()), to)?;
    let h_terms = subgroup_lower_central_terms(&Subgroup::whole(h), to)?;
    for (k, n) in ns.iter().enumerate() {
        let img = image(f, &g_terms[k + 1])?;
        let gens = h_terms[k + 1].gens();
        let mut elems = gens.clone();
        for (a, x) in gens.iter().enumerate() {
            for y in &gens[a + 1..] {
                elems.push(h.multiply(x, y)?);
            }
        }
        for x in &elems {
            if !img.contains(&h.power(x, n)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
