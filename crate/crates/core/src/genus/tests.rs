use super::*;
use crate::arith::{IntMatrix, Integer};
use crate::constructions::{companion_cyclotomic, companion_semidirect, free_abelian, heisenberg, sub_semidirect_inclusion, Fiber};
use crate::nilpotent::{PrimeSet, Subgroup};
use crate::pcgroup::{ExponentVector, GroupHom};

fn ev(v: &[i64]) -> ExponentVector {
    ExponentVector::from_i64(v)
}

/// `G = <t, 2N>` inside `H = Z^2 ⋊ <t>` for the p = 3 companion action.
fn p3_pair() -> GroupHom {
    let h = companion_semidirect(3, Fiber::Abelian).unwrap();
    let m = Subgroup::generated(&h.base, &[ev(&[2, 0]), ev(&[0, 2])]).unwrap();
    sub_semidirect_inclusion(&h, &m).unwrap().inclusion
}

fn doubling() -> GroupHom {
    let z = free_abelian(1);
    GroupHom::new_verified(z.clone(), z, vec![ev(&[2])]).unwrap()
}

fn ints(xs: &[i64]) -> Vec<Integer> {
    xs.iter().map(|&x| Integer::from(x)).collect()
}

#[test]
fn induced_maps() {
    let h = heisenberg();
    for i in 1..=3 {
        assert_eq!(induced_quotient_map(&GroupHom::identity(&h), i).unwrap().kind(), MapKind::Iso);
    }
    assert_eq!(induced_quotient_map(&doubling(), 2).unwrap().kind(), MapKind::Mono);
    let f = p3_pair();
    let phi = induced_quotient_map(&f, 2).unwrap();
    assert_eq!(phi.kind(), MapKind::Iso);
    assert_eq!(phi.map.domain().hirsch_length(), 1);
}

#[test]
fn tau_monomorphism_p3() {
    let f = p3_pair();
    let r = check_tau_monomorphism(&f, &PrimeSet::finite([3]).unwrap(), 8).unwrap();
    assert!(r.passed(), "{}", r.summary);
    assert_eq!(r.summary, "pass (depth 8, stabilized at k=2), n_i = 2");
    assert_eq!(r.witness("n_i"), Some(&crate::report::Witness::Ints(ints(&[2; 7]))));
    assert!(replay_exponents(&f, &r).unwrap());
    let bad = check_tau_monomorphism(&f, &PrimeSet::finite([2, 3]).unwrap(), 8).unwrap();
    assert!(!bad.passed());
    assert!(bad.summary.starts_with("fail at i = 2"), "{}", bad.summary);
    let id = check_tau_monomorphism(&GroupHom::identity(&heisenberg()), &PrimeSet::empty(), 4).unwrap();
    assert!(id.summary.ends_with("n_i = 1"), "{}", id.summary);
    assert!(check_tau_monomorphism(&doubling(), &PrimeSet::empty(), 3).is_err());
}

#[test]
fn para_checks() {
    let f = p3_pair();
    let r = check_para(&f, 8).unwrap();
    assert_eq!(r.summary, "pass (depth 8, stabilized at k=2), n_i = 2");
    assert_eq!(r.witness("tau").unwrap().to_string(), "{3}");
    assert!(check_para(&GroupHom::identity(&heisenberg()), 5).unwrap().passed());
    let d = check_para(&doubling(), 4).unwrap();
    assert_eq!(d.summary, "fail at i = 2: phi_2 is mono, not iso");
}

#[test]
fn cor23_fastpath() {
    let r = check_cor23_fastpath(&p3_pair()).unwrap();
    assert!(r.passed());
    assert_eq!(r.witness("n").unwrap().to_string(), "2");
    let id = check_cor23_fastpath(&GroupHom::identity(&heisenberg())).unwrap();
    assert_eq!(id.witness("n").unwrap().to_string(), "1");
    assert!(!check_cor23_fastpath(&doubling()).unwrap().passed());
}

#[test]
fn hirsch_checks() {
    let f = p3_pair();
    let r = thm34_hirsch_check(&f, HirschMode::MetabelianQuotient).unwrap();
    assert_eq!(r.summary, "h(G) = h(H) = 3");
    assert_eq!(r.witness("G2_trivial").unwrap().to_string(), "true");
    let r2 = thm34_hirsch_check(&f, HirschMode::FiniteCenterIndex).unwrap();
    assert!(r2.passed(), "{}", r2.summary);
    // class-2 fiber: h = 3 + 1 on both sides
    let h = companion_semidirect(3, Fiber::Class2).unwrap();
    let m = Subgroup::generated(&h.base, &[ev(&[2, 0, 0]), ev(&[0, 2, 0]), ev(&[0, 0, 1])]).unwrap();
    let g = sub_semidirect_inclusion(&h, &m).unwrap();
    let r3 = thm34_hirsch_check(&g.inclusion, HirschMode::MetabelianQuotient).unwrap();
    assert_eq!(r3.summary, "h(G) = h(H) = 4");
}

#[test]
fn prop26_quotients() {
    let f = p3_pair();
    let pair = prop26_pair(&f, 2, &PrimeSet::finite([3]).unwrap(), 1, 4).unwrap();
    assert_eq!(pair.r.hirsch_length(), 1);
    assert_eq!(pair.s.hirsch_length(), 1);
    assert!(pair.report.passed(), "{}", pair.report.summary);
    assert_eq!(pair.report.witness("preimage_identity").unwrap().to_string(), "true");
    let deeper = prop26_pair(&f, 2, &PrimeSet::finite([3]).unwrap(), 5, 4).unwrap();
    assert_eq!(deeper.r.hirsch_length(), 1);
}

#[test]
fn characteristic_polynomials() {
    let mu = companion_cyclotomic(5).unwrap();
    assert_eq!(characteristic_polynomial(&mu).to_string(), "t^4 + t^3 + t^2 + t + 1");
    let m = IntMatrix::from_i64(&[&[2, 1], &[0, 3]]);
    // (t - 2)(t - 3)
    assert_eq!(characteristic_polynomial(&m), IntPoly(ints(&[6, -5, 1])));
    assert_eq!(IntPoly(ints(&[5, 0, 0, -2])).to_string(), "-2*t^3 + 5");
}

#[test]
fn annihilators_p3() {
    let h = companion_semidirect(3, Fiber::Abelian).unwrap();
    let a = annihilator_polynomials(&h.fiber(), &h.presentation.generator(0)).unwrap();
    assert_eq!(a.alpha.to_string(), "t^2 + t + 1");
    assert_eq!(a.beta, a.alpha);
    assert!(a.report.passed());
    assert_eq!(a.report.witness("conjugates_used").unwrap().to_string(), "[3, 3]");
    assert_eq!(a.report.witness("closure_of_first_generator_is_A").unwrap().to_string(), "true");
}

#[test]
fn annihilator_trivial_action() {
    let h = heisenberg();
    let c = Subgroup::generated(&h, &[ev(&[0, 0, 1])]).unwrap();
    let a = annihilator_polynomials(&c, &ev(&[1, 0, 0])).unwrap();
    assert_eq!(a.alpha.to_string(), "t - 1");
    let not_normal = Subgroup::generated(&h, &[ev(&[0, 1, 0]), ev(&[0, 0, 1])]).unwrap();
    assert!(annihilator_polynomials(&not_normal, &ev(&[0, 0, 1])).is_ok());
    let b = Subgroup::generated(&h, &[ev(&[0, 1, 0])]).unwrap();
    assert!(annihilator_polynomials(&b, &ev(&[1, 0, 0])).is_err());
}

