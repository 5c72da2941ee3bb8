use num_bigint::BigInt;

use paranil::constructions::{companion_semidirect, sub_semidirect_inclusion, Fiber};
use paranil::genus::{check_para, check_tau_monomorphism, replay_exponents, thm34_hirsch_check, HirschMode};
use paranil::nilpotent::{lower_central_series, tau, PrimeSet, Subgroup};
use paranil::pcgroup::{ExponentVector, GroupHom};
use paranil::report::Witness;

const DEPTH: usize = 6;

/// `(label, inclusion of <t, M> into N ⋊ <t>)` for a few invariant lattices `M`.
fn pairs() -> Vec<(String, GroupHom)> {
    let mut out = Vec::new();
    for (p, fiber, scale, extra) in [
        (3u64, Fiber::Abelian, 2i64, None),
        (3, Fiber::Abelian, 3, None),
        (3, Fiber::Abelian, 5, None),
        (5, Fiber::Abelian, 2, None),
        (3, Fiber::Class2, 2, Some(1i64)),
    ] {
        let h = companion_semidirect(p, fiber).unwrap();
        let n = h.base.num_gens();
        let rank = (p - 1) as usize;
        let mut gens = Vec::new();
        for i in 0..rank {
            let mut v = vec![0i64; n];
            v[i] = scale;
            gens.push(ExponentVector::from_i64(&v));
        }
        if let Some(e) = extra {
            for i in rank..n {
                let mut v = vec![0i64; n];
                v[i] = e;
                gens.push(ExponentVector::from_i64(&v));
            }
        }
        let m = Subgroup::generated(&h.base, &gens).unwrap();
        let label = format!("p = {p}, {fiber:?} fiber, M = {scale}N");
        out.push((label, sub_semidirect_inclusion(&h, &m).unwrap().inclusion));
    }
    out
}

#[test]
fn tau_monomorphism_implies_para() {
    let mut seen_pass = 0;
    for (label, f) in pairs() {
        let t = tau(f.codomain()).unwrap();
        let tau_report = check_tau_monomorphism(&f, &t, DEPTH);
        let para = check_para(&f, DEPTH).unwrap();
        if let Ok(r) = tau_report {
            if r.passed() {
                seen_pass += 1;
                assert!(para.passed(), "{label}: tau passes but para fails: {}", para.summary);
                assert!(replay_exponents(&f, &r).unwrap(), "{label}");
            }
        }
    }
    assert!(seen_pass >= 2, "too few positive instances");
}

#[test]
fn para_pass_means_equal_layers() {
    for (label, f) in pairs() {
        let para = check_para(&f, DEPTH).unwrap();
        if !para.passed() {
            continue;
        }
        let tg = lower_central_series(f.domain(), DEPTH).unwrap();
        let th = lower_central_series(f.codomain(), DEPTH).unwrap();
        for i in 1..=DEPTH {
            assert_eq!(tg.step(i), th.step(i), "{label}: layer {i}");
        }
        assert!(replay_exponents(&f, &para).unwrap(), "{label}");
        let hirsch = thm34_hirsch_check(&f, HirschMode::MetabelianQuotient).unwrap();
        assert!(hirsch.passed(), "{label}: {}", hirsch.summary);
    }
}

#[test]
fn exponents_of_certified_pairs_have_bounded_primes() {
    for (label, f) in pairs() {
        let para = check_para(&f, DEPTH).unwrap();
        if !para.passed() {
            continue;
        }
        let Some(Witness::Ints(ns)) = para.witness("n_i") else { panic!("{label}: no n_i") };
        let mut primes = PrimeSet::empty();
        for n in ns {
            primes = primes.union(&PrimeSet::of_integer(n));
        }
        // all M here are scalar lattices, so only the scale's prime can appear
        assert!(primes.listed().len() <= 1, "{label}: {primes}");
        assert!(ns.iter().all(|n| *n >= BigInt::from(1)));
    }
}

#[test]
fn a_tau_prime_in_the_index_breaks_the_monomorphism_check() {
    // M = 3N: the index is a power of 3, and 3 lies in tau(H)
    let (_, f) = pairs().into_iter().nth(1).unwrap();
    let r = check_tau_monomorphism(&f, &PrimeSet::finite([3]).unwrap(), DEPTH);
    assert!(r.map(|r| !r.passed()).unwrap_or(true));
}
