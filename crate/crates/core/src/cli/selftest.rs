//! Seeded randomized checks against independent oracles.

use num_integer::Integer as _;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{smith_normal_form, IntMatrix, Integer};
use crate::constructions::{companion_semidirect, free_nilpotent_class2, heisenberg, Fiber};
use crate::pcgroup::{ExponentVector, PcPresentation};
use crate::Result;

/// `a^x b^y c^z ↦ [[1, x, xy + z], [0, 1, y], [0, 0, 1]]`
fn heis_matrix(u: &ExponentVector) -> IntMatrix {
    let (x, y, z) = (&u.0[0], &u.0[1], &u.0[2]);
    let one = Integer::from(1);
    let zero = Integer::zero();
    IntMatrix::from_rows(
        3,
        vec![
            vec![one.clone(), x.clone(), x * y + z],
            vec![zero.clone(), one.clone(), y.clone()],
            vec![zero.clone(), zero, one],
        ],
    )
}

fn random_element(rng: &mut ChaCha8Rng, p: &PcPresentation, range: i64) -> ExponentVector {
    ExponentVector(
        p.relative_orders()
            .iter()
            .map(|o| {
                let e = rng.gen_range(-range..=range);
                if o.is_zero() { Integer::from(e) } else { Integer::from(e).mod_floor(o) }
            })
            .collect(),
    )
}

/// Runs every check; returns one line per family and whether all passed.
pub fn run(seed: u64) -> Result<(Vec<String>, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines = Vec::new();
    let mut ok = true;

    let h = heisenberg();
    let mut bad = 0;
    for _ in 0..200 {
        let u = random_element(&mut rng, &h, 20);
        let v = random_element(&mut rng, &h, 20);
        if heis_matrix(&h.multiply(&u, &v)?) != heis_matrix(&u).mul(&heis_matrix(&v)) {
            bad += 1;
        }
    }
    lines.push(format!("collect vs matrix: {} of 200 agree", 200 - bad));
    ok &= bad == 0;

    let groups = [
        ("heisenberg", h.clone()),
        ("free class 2 rank 3", free_nilpotent_class2(3)),
        ("p=3 semidirect", companion_semidirect(3, Fiber::Abelian)?.presentation),
        ("p=5 semidirect", companion_semidirect(5, Fiber::Abelian)?.presentation),
    ];
    for (name, p) in &groups {
        let mut bad = 0;
        for _ in 0..50 {
            let (x, y, z) = (random_element(&mut rng, p, 6), random_element(&mut rng, p, 6), random_element(&mut rng, p, 6));
            let left = p.multiply(&p.multiply(&x, &y)?, &z)?;
            let right = p.multiply(&x, &p.multiply(&y, &z)?)?;
            let inv = p.multiply(&x, &p.invert(&x)?)?;
            if left != right || !inv.is_identity() {
                bad += 1;
            }
        }
        lines.push(format!("associativity and inverses in {name}: {} of 50 agree", 50 - bad));
        ok &= bad == 0;
    }

    let mut bad = 0;
    for _ in 0..50 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let m = IntMatrix::from_rows(
            cols,
            (0..rows).map(|_| (0..cols).map(|_| Integer::from(rng.gen_range(-9..=9))).collect()).collect(),
        );
        let sf = smith_normal_form(&m);
        let d = sf.diagonal();
        let divides = d.windows(2).all(|w| w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        if sf.u.mul(&m).mul(&sf.v) != sf.s || !divides || sf.v.mul(&sf.v_inv) != IntMatrix::identity(cols) {
            bad += 1;
        }
    }
    lines.push(format!("smith normal form: {} of 50 agree", 50 - bad));
    ok &= bad == 0;
    Ok((lines, ok))
}
