//! Acceptance criteria. Each criterion prints one `pass`/`fail` line; the
//! process exits non-zero if any fails.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use paranil::constructions::{
    companion_semidirect, direct_with_cyclic, free_nilpotent_class2, heisenberg, semidirect_by_automorphisms,
    sub_semidirect_inclusion, AutomorphismAction, Fiber,
};
use paranil::genus::{annihilator_polynomials, apply_polynomial, check_cor23_fastpath, check_para, thm34_hirsch_check, HirschMode};
use paranil::nilpotent::{
    abelianization, image, isolator, lower_central_series, power_exponent_search, tau, tensor_epi_check, PrimeSet, Subgroup,
};
use paranil::pcgroup::{check_consistency, ExponentVector, GroupHom};
use paranil::report::Witness;

fn ev(v: &[i64]) -> ExponentVector {
    ExponentVector::from_i64(v)
}

fn to_i64(u: &ExponentVector) -> Vec<i64> {
    u.0.iter().map(|x| i64::try_from(x).expect("small exponent")).collect()
}

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// `H = Z^2 ⋊ <t>` with the order-3 companion action, `G = <t, 2Z^2>`.
fn p3_pair() -> (paranil::constructions::Semidirect, GroupHom) {
    let h = companion_semidirect(3, Fiber::Abelian).unwrap();
    let m = Subgroup::generated(&h.base, &[ev(&[2, 0]), ev(&[0, 2])]).unwrap();
    let f = sub_semidirect_inclusion(&h, &m).unwrap().inclusion;
    (h, f)
}

// Heisenberg oracle: a^x b^y c^z as the upper unitriangular matrix with
// entries x, y and xy + z, stored as (x, y, top-right).
type Tri = (i128, i128, i128);

fn tri_mul(g: Tri, h: Tri) -> Tri {
    (g.0 + h.0, g.1 + h.1, g.2 + h.2 + g.0 * h.1)
}

fn heis_tri(u: &[i64]) -> Tri {
    let (x, y, z) = (u[0] as i128, u[1] as i128, u[2] as i128);
    (x, y, x * y + z)
}

fn criterion_1() {
    let h = heisenberg();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    for _ in 0..1000 {
        let u: Vec<i64> = (0..3).map(|_| rng.gen_range(-20..=20)).collect();
        let v: Vec<i64> = (0..3).map(|_| rng.gen_range(-20..=20)).collect();
        let w = h.multiply(&ev(&u), &ev(&v)).unwrap();
        assert_eq!(heis_tri(&to_i64(&w)), tri_mul(heis_tri(&u), heis_tri(&v)), "{u:?} * {v:?}");
    }
    assert!(start.elapsed() < Duration::from_secs(1), "took {:?}", start.elapsed());
}

fn criterion_2() {
    assert!(check_consistency(&heisenberg()).passed());
    let (h, f) = p3_pair();
    assert!(check_consistency(&h.presentation).passed());
    assert!(check_consistency(f.domain()).passed());
    let text = std::fs::read_to_string(data("bad25.grp")).unwrap();
    let file = paranil::cli::parse_file(&text).unwrap();
    let report = check_consistency(&file.last_group().unwrap().presentation);
    assert!(!report.passed());
    assert_eq!(report.summary, "inconsistent: overlap g2^(g1^2)");
}

fn criterion_3() {
    let start = Instant::now();
    let h = companion_semidirect(3, Fiber::Abelian).unwrap();
    let (inv, _) = abelianization(&h.presentation).unwrap();
    assert_eq!(inv.to_string(), "rank 1, divisors (3)");
    assert_eq!(tau(&h.presentation).unwrap(), PrimeSet::finite([3]).unwrap());
    let t = lower_central_series(&h.presentation, 2).unwrap();
    let iso = isolator(t.term(2), &PrimeSet::finite([3]).unwrap()).unwrap();
    assert_eq!(iso, h.fiber());
    assert!(start.elapsed() < Duration::from_secs(1), "took {:?}", start.elapsed());
}

/// Hermite basis `[[a, b], [0, d]]` (rows, `0 <= b < d`) of the lattice spanned
/// by full-rank vectors in `Z^2`.
fn lattice2(vs: &[[i128; 2]]) -> [i128; 3] {
    let mut rows = vs.to_vec();
    loop {
        let live: Vec<usize> = (0..rows.len()).filter(|&k| rows[k][0] != 0).collect();
        if live.len() <= 1 {
            break;
        }
        let piv = *live.iter().min_by_key(|&&k| rows[k][0].abs()).unwrap();
        for &k in &live {
            if k != piv {
                let q = rows[k][0].div_euclid(rows[piv][0]);
                rows[k] = [rows[k][0] - q * rows[piv][0], rows[k][1] - q * rows[piv][1]];
            }
        }
    }
    let mut top = *rows.iter().find(|r| r[0] != 0).expect("full rank");
    if top[0] < 0 {
        top = [-top[0], -top[1]];
    }
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 { a.abs() } else { gcd(b, a % b) }
    }
    let d = rows.iter().filter(|r| r[0] == 0).fold(0, |acc, r| gcd(acc, r[1]));
    [top[0], top[1].rem_euclid(d), d]
}

fn criterion_4() {
    let start = Instant::now();
    let (h, f) = p3_pair();
    let cor = check_cor23_fastpath(&f).unwrap();
    assert!(cor.passed(), "{}", cor.summary);
    assert_eq!(cor.witness("n").unwrap().to_string(), "2");
    let para = check_para(&f, 8).unwrap();
    assert!(para.passed(), "{}", para.summary);
    assert_eq!(para.depth_checked, 8);
    match para.witness("n_i") {
        Some(Witness::Ints(v)) => assert!(!v.is_empty() && v.iter().all(|x| *x == BigInt::from(2)), "{v:?}"),
        other => panic!("n_i witness {other:?}"),
    }
    let tg = lower_central_series(f.domain(), 8).unwrap();
    let th = lower_central_series(&h.presentation, 8).unwrap();
    for i in 1..=8 {
        assert_eq!(tg.step(i), th.step(i), "step {i}");
    }
    // gamma_i(H) = (A - 1)^{i-1} Z^2 and gamma_i(G) = 2 (A - 1)^{i-1} Z^2 for i >= 2
    let a_minus_1 = [[-1i128, -1], [1, -2]];
    let mut power = [[1i128, 0], [0, 1]];
    for i in 2..=8 {
        power = [
            [power[0][0] * a_minus_1[0][0] + power[0][1] * a_minus_1[1][0], power[0][0] * a_minus_1[0][1] + power[0][1] * a_minus_1[1][1]],
            [power[1][0] * a_minus_1[0][0] + power[1][1] * a_minus_1[1][0], power[1][0] * a_minus_1[0][1] + power[1][1] * a_minus_1[1][1]],
        ];
        let cols = [[power[0][0], power[1][0]], [power[0][1], power[1][1]]];
        let fiber_coords = |s: &Subgroup| -> Vec<[i128; 2]> {
            s.gens()
                .iter()
                .map(|g| {
                    let e = to_i64(g);
                    assert_eq!(e[0], 0, "gamma_{i} leaves the fiber");
                    [e[1] as i128, e[2] as i128]
                })
                .collect()
        };
        assert_eq!(lattice2(&fiber_coords(th.term(i))), lattice2(&cols), "gamma_{i}(H)");
        let img = image(&f, tg.term(i)).unwrap();
        let doubled: Vec<[i128; 2]> = cols.iter().map(|c| [2 * c[0], 2 * c[1]]).collect();
        assert_eq!(lattice2(&fiber_coords(&img)), lattice2(&doubled), "gamma_{i}(G)");
    }
    assert!(start.elapsed() < Duration::from_secs(5), "took {:?}", start.elapsed());
}

fn criterion_5() {
    let (_, f) = p3_pair();
    let r = thm34_hirsch_check(&f, HirschMode::MetabelianQuotient).unwrap();
    assert!(r.passed(), "{}", r.summary);
    assert_eq!(r.summary, "h(G) = h(H) = 3");
    assert_eq!(f.domain().hirsch_length(), 3);
    assert_eq!(f.codomain().hirsch_length(), 3);
    assert_eq!(r.witness("G2_trivial"), Some(&Witness::Flag(true)));
    assert_eq!(r.witness("H2_trivial"), Some(&Witness::Flag(true)));
}

fn criterion_6() {
    let h = companion_semidirect(3, Fiber::Abelian).unwrap();
    let p = &h.presentation;
    let t = p.generator(0);
    let a = annihilator_polynomials(&h.fiber(), &t).unwrap();
    assert!(a.report.passed(), "{}", a.report.summary);
    assert_eq!(a.alpha.to_string(), "t^2 + t + 1");
    assert_eq!(a.beta.to_string(), "t^2 + t + 1");
    for x in [p.generator(1), p.generator(2)] {
        assert!(apply_polynomial(p, &x, &t, &a.alpha).unwrap().is_identity());
        // x (x^t) (x^{t^2}) directly
        let x1 = p.conjugate(&x, &t).unwrap();
        let x2 = p.conjugate(&x1, &t).unwrap();
        assert!(p.product([&x, &x1, &x2]).unwrap().is_identity());
        let t_inv = p.invert(&t).unwrap();
        let closure = Subgroup::generated(
            p,
            &[p.conjugate(&x, &t_inv).unwrap(), x.clone(), x1.clone()],
        )
        .unwrap();
        assert_eq!(closure, h.fiber());
    }
    assert_eq!(a.report.witness("conjugates_used").unwrap().to_string(), "[3, 3]");
}

/// Heisenberg group over `Z/8`, as a set of `Tri` reduced mod 8.
fn mod8(g: Tri) -> Tri {
    (g.0.rem_euclid(8), g.1.rem_euclid(8), g.2.rem_euclid(8))
}

fn tri_inv(g: Tri) -> Tri {
    mod8((-g.0, -g.1, -g.2 + g.0 * g.1))
}

fn closure(gens: &[Tri]) -> HashSet<Tri> {
    let mut set: HashSet<Tri> = HashSet::from([(0, 0, 0)]);
    let mut frontier = vec![(0, 0, 0)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = mod8(tri_mul(x, *g));
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

fn derived(set: &HashSet<Tri>) -> HashSet<Tri> {
    let mut comms = HashSet::new();
    for &x in set {
        for &y in set {
            comms.insert(mod8(tri_mul(tri_mul(tri_inv(x), tri_inv(y)), tri_mul(x, y))));
        }
    }
    closure(&comms.into_iter().collect::<Vec<_>>())
}

fn tri_pow(g: Tri, n: u32) -> Tri {
    (0..n).fold((0, 0, 0), |acc, _| mod8(tri_mul(acc, g)))
}

fn least_exponent(big: &HashSet<Tri>, small: &HashSet<Tri>) -> u32 {
    (1..=8).find(|&n| big.iter().all(|&g| small.contains(&tri_pow(g, n)))).unwrap()
}

fn criterion_7() {
    let h = heisenberg();
    let two = BigInt::from(2);
    let whole8 = closure(&[(1, 0, 0), (0, 1, 0), (0, 0, 1)]);
    let g2 = derived(&whole8);
    for (gens, expected_n2) in [
        (vec![[2, 0, 0], [0, 2, 0], [0, 0, 1]], 4u32),
        (vec![[1, 0, 0], [0, 2, 0], [0, 0, 1]], 2u32),
    ] {
        let n = Subgroup::generated(&h, &gens.iter().map(|g| ev(g)).collect::<Vec<_>>()).unwrap();
        let e = power_exponent_search(&n, &two).unwrap();
        let n8 = closure(&gens.iter().map(|g| heis_tri(g)).map(mod8).collect::<Vec<_>>());
        let n1 = least_exponent(&whole8, &n8);
        let n2 = least_exponent(&g2, &derived(&n8));
        assert_eq!(n2, expected_n2);
        assert_eq!(e.at(1), BigInt::from(n1), "n_1 for {gens:?}");
        assert_eq!(e.at(2), BigInt::from(n2), "n_2 for {gens:?}");
        assert_eq!(e.at(1), two);
    }
}

fn criterion_8() {
    let heis = heisenberg();
    let alpha = AutomorphismAction::new(&heis, vec![ev(&[1, 0, 1]), ev(&[0, 1, 0]), ev(&[0, 0, 1])]).unwrap();
    let ext = semidirect_by_automorphisms(&heis, &[alpha], 1).unwrap();
    let p = &ext.presentation;
    let t = lower_central_series(p, 3).unwrap();
    assert!(t.term(3).is_trivial());
    assert!(!t.term(2).is_trivial());
    // every commutator of generators is central
    let gens = p.generators();
    for x in &gens {
        for y in &gens {
            let c = p.commutator(x, y).unwrap();
            for z in &gens {
                assert!(p.commutator(&c, z).unwrap().is_identity());
            }
        }
    }
}

fn criterion_9() {
    for r in 1..=4usize {
        let f = free_nilpotent_class2(r);
        assert_eq!(f.hirsch_length(), r + r * (r - 1) / 2);
        let t = lower_central_series(&f, 3).unwrap();
        assert_eq!(t.step(1).rank, r);
        assert!(t.step(1).divisors.is_empty());
        assert_eq!(t.step(2).rank, r * (r - 1) / 2);
        assert!(t.term(3).is_trivial());
        let rep = tensor_epi_check(&t, 1).unwrap();
        assert!(rep.passed(), "rank {r}: {}", rep.summary);
    }
    assert_eq!(
        (1..=4).map(|r| free_nilpotent_class2(r).hirsch_length()).collect::<Vec<_>>(),
        vec![1, 3, 6, 10]
    );
    // the rest of the suite's groups
    let (h, f) = p3_pair();
    let heis = heisenberg();
    let others = [
        heis.clone(),
        h.presentation.clone(),
        f.domain().clone(),
        direct_with_cyclic(&heis, 3).unwrap(),
        direct_with_cyclic(&h.presentation, 2).unwrap(),
        companion_semidirect(3, Fiber::Class2).unwrap().presentation,
    ];
    for p in &others {
        let t = lower_central_series(p, 3).unwrap();
        let rep = tensor_epi_check(&t, 1).unwrap();
        assert!(rep.passed(), "{:?}: {}", p.names(), rep.summary);
    }
}

fn criterion_10() {
    let g = direct_with_cyclic(&heisenberg(), 3).unwrap();
    assert_eq!(tau(&g).unwrap(), PrimeSet::finite([3]).unwrap());
    let h = companion_semidirect(3, Fiber::Abelian).unwrap();
    let g2 = direct_with_cyclic(&h.presentation, 2).unwrap();
    assert_eq!(tau(&g2).unwrap(), PrimeSet::finite([2, 3]).unwrap());
    assert_eq!(tau(&g2).unwrap().to_string(), "{2, 3}");
}

fn criterion_11() {
    let bin = env!("CARGO_BIN_EXE_paranil");
    let runs: &[&[&str]] = &[
        &["consistency", "heis.grp"],
        &["consistency", "pair_p3.grp", "--group", "H"],
        &["consistency", "bad25.grp"],
        &["lcs", "heis.grp", "--depth", "4"],
        &["lcs", "pair_p3.grp", "--depth", "8"],
        &["tau", "heis.grp"],
        &["tau", "pair_p3.grp", "--group", "H"],
        &["hirsch", "pair_p3.grp"],
        &["isolator", "pair_p3.grp", "--group", "H", "--k", "2", "--primes", "3"],
        &["check-cor23", "pair_p3.grp"],
        &["check-para", "pair_p3.grp", "--depth", "8"],
        &["check-tau", "pair_p3.grp", "--tau", "3", "--depth", "8"],
        &["check-thm34", "pair_p3.grp", "--mode", "i"],
        &["annihilator", "pair_p3.grp", "--group", "H", "--subgroup", "x1,x2", "--element", "t"],
        &["tau", "suite.grp", "--group", "C3xHeis"],
        &["tau", "suite.grp", "--group", "C2xH"],
        &["lcs", "suite.grp", "--group", "F4", "--depth", "3"],
        &["hirsch", "suite.grp", "--group", "F4"],
        &["check-para", "pair_p3.grp", "--json"],
        &["selftest", "--seed", "11"],
    ];
    for args in runs {
        let run = || {
            let mut cmd = Command::new(bin);
            cmd.arg(args[0]).arg(data(args[1]));
            cmd.args(&args[2..]);
            if args[0] == "selftest" {
                cmd = Command::new(bin);
                cmd.args(*args);
            }
            cmd.output().unwrap()
        };
        let (a, b) = (run(), run());
        assert!(!a.stdout.is_empty(), "{args:?} printed nothing");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code(), "{args:?}");
    }
}

fn main() {
    let criteria: [(&str, fn()); 11] = [
        ("collection agrees with the matrix model on 1000 random pairs in under 1 s", criterion_1),
        ("consistency: heisenberg and p = 3 pass, (2, 5) fails at g2^(g1^2)", criterion_2),
        ("p = 3 semidirect: abelianization, tau and I_{3}(gamma_2) in under 1 s", criterion_3),
        ("M = 2Z^2: fast path n = 2, para to depth 8, lattice oracle, under 5 s", criterion_4),
        ("h(G) = h(H) = 3 in mode (i) with G'' = H'' = 1", criterion_5),
        ("annihilators t^2 + t + 1 and closure by three conjugates", criterion_6),
        ("power exponents in the heisenberg group match the mod-8 quotient", criterion_7),
        ("heisenberg extended by a -> ac keeps class 2", criterion_8),
        ("free class-2 groups of rank 1 to 4", criterion_9),
        ("tau of direct products with cyclic groups", criterion_10),
        ("CLI reports are byte-identical across runs", criterion_11),
    ];
    std::panic::set_hook(Box::new(|info| eprintln!("    {info}")));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(check)).is_ok();
        if !ok {
            failed += 1;
        }
        println!("criterion {:>2}: {} ({:.2?}) {name}", i + 1, if ok { "pass" } else { "FAIL" }, start.elapsed());
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
