//! Overlap tests for pc presentations.
//!
//! A presentation is consistent exactly when the following words collect to the
//! same normal form whichever way they are bracketed:
//!
//! * `g_k g_j g_i` for `k > j > i`
//! * `g_j^{o_j} g_i` for `j > i`, `o_j` finite
//! * `g_j g_i^{o_i}` for `j > i`, `o_i` finite
//! * `g_i^{o_i + 1}` for `o_i` finite
//! * `g_j = (g_j g_i^{-1}) g_i = (g_j g_i) g_i^{-1}` for `j > i`, `o_i` infinite

use num_traits::One;

use super::presentation::PcPresentation;
use crate::arith::Integer;
use crate::error::{Error, Result};
use crate::report::{CheckReport, Witness};

enum Outcome {
    Agree,
    Differ(Vec<Integer>, Vec<Integer>),
}

fn compare(a: Result<Vec<Integer>>, b: Result<Vec<Integer>>) -> Result<Outcome> {
    let (a, b) = (a?, b?);
    Ok(if a == b { Outcome::Agree } else { Outcome::Differ(a, b) })
}

type OverlapTest = Box<dyn Fn(&PcPresentation) -> Result<Outcome>>;

/// Runs every overlap test; the first disagreement is reported as the witness.
pub fn check_consistency(p: &PcPresentation) -> CheckReport {
    let names = p.names();
    let n = p.num_gens();
    let mut tests: Vec<(String, OverlapTest)> = Vec::new();

    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                tests.push((
                    format!("{} {} {}", names[k], names[j], names[i]),
                    Box::new(move |p| {
                        let mut c = p.collector();
                        let gi = gen(p, i);
                        let gj = gen(p, j);
                        let gk = gen(p, k);
                        let left = c.product(&gk, &gj).and_then(|x| c.product(&x, &gi));
                        let mut c2 = p.collector();
                        let right = c2.product(&gj, &gi).and_then(|x| c2.product(&gk, &x));
                        compare(left, right)
                    }),
                ));
            }
        }
    }
    for j in 0..n {
        if p.is_infinite_gen(j) {
            continue;
        }
        for i in 0..j {
            tests.push((
                format!("{}^{} {}", names[j], p.relative_order(j), names[i]),
                Box::new(move |p| {
                    let o = p.relative_order(j).clone();
                    let mut c = p.collector();
                    let rj = p.data().powers[j].clone();
                    let gi = gen(p, i);
                    let left = c.product(&rj, &gi);
                    let mut c2 = p.collector();
                    let right = (|| {
                        let mut u = c2.identity();
                        c2.mul_gen_pow(&mut u, j, &(o - 1))?;
                        let gj_gi = c2.product(&gen(p, j), &gi)?;
                        c2.mul(&mut u, &gj_gi)?;
                        Ok(u)
                    })();
                    compare(left, right)
                }),
            ));
        }
    }
    for i in 0..n {
        if p.is_infinite_gen(i) {
            continue;
        }
        for j in i + 1..n {
            tests.push((
                format!("{}^({}^{})", names[j], names[i], p.relative_order(i)),
                Box::new(move |p| {
                    let o = p.relative_order(i).clone();
                    let mut c = p.collector();
                    let ri = p.data().powers[i].clone();
                    let left = c.product(&gen(p, j), &ri);
                    let mut c2 = p.collector();
                    let right = (|| {
                        let mut u = gen(p, j);
                        let mut k = Integer::from(0);
                        while k < o {
                            c2.mul_gen_pow(&mut u, i, &Integer::one())?;
                            k += 1;
                        }
                        Ok(u)
                    })();
                    compare(left, right)
                }),
            ));
        }
        tests.push((
            format!("{}^{}", names[i], p.relative_order(i) + 1),
            Box::new(move |p| {
                let mut c = p.collector();
                let ri = p.data().powers[i].clone();
                let left = c.product(&ri, &gen(p, i));
                let right = c.product(&gen(p, i), &ri);
                compare(left, right)
            }),
        ));
    }
    for i in 0..n {
        if !p.is_infinite_gen(i) {
            continue;
        }
        for j in i + 1..n {
            tests.push((
                format!("{}^({}^-1)", names[j], names[i]),
                Box::new(move |p| {
                    let mut c = p.collector();
                    let gj = gen(p, j);
                    let mut u = gj.clone();
                    c.mul_gen_pow(&mut u, i, &Integer::from(-1))?;
                    c.mul_gen_pow(&mut u, i, &Integer::one())?;
                    let mut v = gj.clone();
                    c.mul_gen_pow(&mut v, i, &Integer::one())?;
                    c.mul_gen_pow(&mut v, i, &Integer::from(-1))?;
                    match compare(Ok(u), Ok(gj.clone()))? {
                        Outcome::Agree => compare(Ok(v), Ok(gj)),
                        d => Ok(d),
                    }
                }),
            ));
        }
    }

    let total = tests.len();
    for (label, test) in &tests {
        match test(p) {
            Ok(Outcome::Agree) => {}
            Ok(Outcome::Differ(a, b)) => {
                return CheckReport::fail(format!("inconsistent: overlap {label}"))
                    .with("overlap", Witness::Text(label.clone()))
                    .with("collected", Witness::Vectors(vec![a, b]));
            }
            Err(Error::StepBudget { budget }) => {
                return CheckReport::fail(format!("inconsistent: overlap {label}"))
                    .with("overlap", Witness::Text(label.clone()))
                    .with("step_budget_exhausted", Witness::Int(budget.into()));
            }
            Err(e) => {
                return CheckReport::fail(format!("inconsistent: overlap {label}"))
                    .with("overlap", Witness::Text(label.clone()))
                    .with("error", Witness::Text(e.to_string()));
            }
        }
    }
    CheckReport::pass("consistent").with("overlaps_checked", Witness::Int(total.into()))
}

fn gen(p: &PcPresentation, i: usize) -> Vec<Integer> {
    p.generator(i).0
}
