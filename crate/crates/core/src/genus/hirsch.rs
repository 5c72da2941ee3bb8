use crate::arith::Integer;
use crate::error::{Error, Result};
use crate::nilpotent::{
    class_bound, isolator, nilpotency_class, preimage, subgroup_lower_central_terms, upper_central_term_of, PrimeSet,
    Quotient, Subgroup,
};
use crate::pcgroup::{GroupHom, PcPresentation};
use crate::report::{CheckReport, Verdict, Witness};

use super::maps::{check_para, ensure_verified};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HirschMode {
    /// `G/G''` and `H/H''` residually nilpotent
    MetabelianQuotient,
    /// `|Z_{c-1}(G') : G''|` and `|Z_{c-1}(H') : H''|` finite
    FiniteCenterIndex,
}

struct DerivedData {
    h: usize,
    h_second: usize,
    second_trivial: bool,
    center_index_finite: Option<bool>,
}

fn derived_data(p: &PcPresentation, mode: HirschMode) -> Result<DerivedData> {
    let whole = Subgroup::whole(p);
    let d1 = whole.derived()?;
    let d2 = d1.derived()?;
    let center_index_finite = match mode {
        HirschMode::MetabelianQuotient => None,
        HirschMode::FiniteCenterIndex => {
            let c = nilpotency_class(&d1, class_bound())?;
            let z = if c <= 1 { Subgroup::trivial(p) } else { upper_central_term_of(&d1, c - 1)? };
            Some(d2.is_subgroup_of(&z)? && z.index_of(&d2).is_some())
        }
    };
    Ok(DerivedData {
        h: p.hirsch_length(),
        h_second: d2.hirsch_length(),
        second_trivial: d2.is_trivial(),
        center_index_finite,
    })
}

/// Compares `h(G)` and `h(H)` for `f : G → H`, recording the metabelian
/// quotients and the hypothesis data of the chosen mode.
///
/// Residual nilpotence of `G/G''` is not decidable here; in mode (i) the report
/// records whether `G'' = 1`, in which case the quotient is `G` itself.
pub fn thm34_hirsch_check(f: &GroupHom, mode: HirschMode) -> Result<CheckReport> {
    ensure_verified(f)?;
    let g = derived_data(f.domain(), mode)?;
    let h = derived_data(f.codomain(), mode)?;
    let mut report = if g.h == h.h {
        CheckReport::pass(format!("h(G) = h(H) = {}", g.h))
    } else {
        CheckReport::fail(format!("h(G) = {}, h(H) = {}", g.h, h.h))
    };
    report.insert("h_G", Witness::Int(Integer::from(g.h)));
    report.insert("h_H", Witness::Int(Integer::from(h.h)));
    report.insert("h_G_mod_G2", Witness::Int(Integer::from(g.h - g.h_second)));
    report.insert("h_H_mod_H2", Witness::Int(Integer::from(h.h - h.h_second)));
    report.insert("G2_trivial", Witness::Flag(g.second_trivial));
    report.insert("H2_trivial", Witness::Flag(h.second_trivial));
    match mode {
        HirschMode::MetabelianQuotient => report.insert("mode", Witness::Text("i".into())),
        HirschMode::FiniteCenterIndex => {
            report.insert("mode", Witness::Text("ii".into()));
            let ok = g.center_index_finite == Some(true) && h.center_index_finite == Some(true);
            report.insert("center_index_finite", Witness::Flag(ok));
            if !ok && report.verdict == Verdict::Pass {
                report.verdict = Verdict::Indeterminate;
                report.summary = format!("{} (mode ii hypothesis not met)", report.summary);
            }
        }
    }
    Ok(report)
}

/// Output of [`prop26_pair`].
#[derive(Clone, Debug)]
pub struct Prop26Pair {
    /// `G/Z_j(M)`
    pub r: PcPresentation,
    /// `H/Z_j(N)`
    pub s: PcPresentation,
    pub mu: GroupHom,
    pub report: CheckReport,
}

/// Passes to `R = G/Z_j(M)` and `S = H/Z_j(N)` for `M = I_π(γ_k(G))`,
/// `N = I_π(γ_k(H))`, and checks the induced map `μ : R → S` to `depth`.
pub fn prop26_pair(f: &GroupHom, k: usize, pi: &PrimeSet, j: usize, depth: usize) -> Result<Prop26Pair> {
    ensure_verified(f)?;
    let (gp, hp) = (f.domain(), f.codomain());
    let gk = subgroup_lower_central_terms(&Subgroup::whole(gp), k.max(1))?.pop().expect("term");
    let hk = subgroup_lower_central_terms(&Subgroup::whole(hp), k.max(1))?.pop().expect("term");
    let m = isolator(&gk, pi)?;
    let n = isolator(&hk, pi)?;
    let bound = class_bound();
    nilpotency_class(&m, bound).map_err(|_| Error::Precondition(format!("M = I_pi(gamma_{k}(G)) is not nilpotent within the class bound")))?;
    nilpotency_class(&n, bound).map_err(|_| Error::Precondition(format!("N = I_pi(gamma_{k}(H)) is not nilpotent within the class bound")))?;
    let zm = upper_central_term_of(&m, j)?;
    let zn = upper_central_term_of(&n, j)?;
    let preimage_ok = preimage(f, &zn)? == zm;
    let qr = Quotient::new(&zm)?;
    let qs = Quotient::new(&zn)?;
    let r = qr.presentation().clone();
    let s = qs.presentation().clone();
    let images = r
        .generators()
        .iter()
        .map(|x| qs.project(&f.apply(&qr.lift(x))?))
        .collect::<Result<Vec<_>>>()?;
    let mu = GroupHom::new_verified(r.clone(), s.clone(), images)?;
    let mut report = check_para(&mu, depth)?;
    report.insert("preimage_identity", Witness::Flag(preimage_ok));
    report.insert("h_R", Witness::Int(Integer::from(r.hirsch_length())));
    report.insert("h_S", Witness::Int(Integer::from(s.hirsch_length())));
    if !preimage_ok && report.passed() {
        report.verdict = Verdict::Fail;
        report.summary = "preimage of Z_j(N) differs from Z_j(M)".into();
    }
    Ok(Prop26Pair { r, s, mu, report })
}
