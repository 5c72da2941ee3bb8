use num_traits::{One, Zero};

use super::automorphism::AutomorphismAction;
use crate::arith::{is_prime, IntMatrix, Integer};
use crate::error::{Error, Result};
use crate::pcgroup::{direct_product, word, ExponentVector, PcPresentation, Word};

/// Companion matrix of `1 + x + ... + x^{p-1}`: ones below the diagonal, last column `-1`.
pub fn companion_cyclotomic(p: u64) -> Result<IntMatrix> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let n = (p - 1) as usize;
    let mut m = IntMatrix::zeros(n, n);
    let mut rows = m.to_rows();
    for i in 1..n {
        rows[i][i - 1] = Integer::one();
    }
    for row in rows.iter_mut() {
        row[n - 1] = -Integer::one();
    }
    m = IntMatrix::from_rows(n, rows);
    Ok(m)
}

/// `Z^r` on generators `x1..xr`.
pub fn free_abelian(r: usize) -> PcPresentation {
    PcPresentation::builder((1..=r).map(|i| format!("x{i}")))
        .build()
        .expect("free abelian presentation")
}

/// The cyclic group of order `p` (`p ≥ 2`) on one generator.
pub fn cyclic(name: &str, p: u64) -> Result<PcPresentation> {
    if p < 2 {
        return Err(Error::InvalidPresentation(format!("cyclic order {p} must be at least 2")));
    }
    PcPresentation::builder([name]).relative_order(0, Integer::from(p)).build()
}

/// `a, b, c` with `b^a = b c^-1` (so `[a, b] = c`) and `c` central.
pub fn heisenberg() -> PcPresentation {
    PcPresentation::builder(["a", "b", "c"])
        .conjugate(1, 0, word(&[(1, 1), (2, -1)]))
        .build()
        .expect("Heisenberg presentation")
}

fn pair_index(r: usize, i: usize, j: usize) -> usize {
    // position of c_ij (i < j) among the commutator generators
    i * (2 * r - i - 1) / 2 + (j - i - 1)
}

/// Free nilpotent group of class 2 and rank `r`: `g1..gr`, then central
/// `c_ij = [g_i, g_j]` for `i < j` in lexicographic order.
pub fn free_nilpotent_class2(r: usize) -> PcPresentation {
    let sep = if r >= 10 { "_" } else { "" };
    let mut names: Vec<String> = (1..=r).map(|i| format!("g{i}")).collect();
    for i in 1..=r {
        for j in i + 1..=r {
            names.push(format!("c{i}{sep}{j}"));
        }
    }
    let mut b = PcPresentation::builder(names);
    for i in 0..r {
        for j in i + 1..r {
            let c = r + pair_index(r, i, j);
            b = b.conjugate(j, i, word(&[(j, 1), (c, -1)]));
        }
    }
    b.build().expect("free nilpotent presentation")
}

/// Rank of a free nilpotent class-2 presentation built by [`free_nilpotent_class2`].
pub(crate) fn class2_rank(n: &PcPresentation) -> Option<usize> {
    let m = n.num_gens();
    let r = (0..=m).find(|&r| r + r * r.saturating_sub(1) / 2 == m)?;
    let free = free_nilpotent_class2(r);
    (n.renamed(free.names().to_vec()) == free).then_some(r)
}

/// Extends a unimodular `M` on `N/N' = Z^r` to an automorphism of the free
/// nilpotent class-2 group `N`: `g_i ↦ g_1^{M_1i} ... g_r^{M_ri}` and
/// `c_ij ↦ [α(g_i), α(g_j)]`.
pub fn lift_automorphism_class2(n: &PcPresentation, m: &IntMatrix) -> Result<AutomorphismAction> {
    let r = class2_rank(n).ok_or_else(|| {
        Error::Precondition("lifting needs a free nilpotent class-2 presentation".into())
    })?;
    if m.rows() != r || m.cols() != r {
        return Err(Error::Precondition(format!("matrix must be {r}x{r}")));
    }
    if !m.is_unimodular() {
        return Err(Error::NotUnimodular(m.to_string()));
    }
    let mut images: Vec<ExponentVector> = Vec::with_capacity(n.num_gens());
    for i in 0..r {
        let w: Word = (0..r).map(|k| (k, m.row(k)[i].clone())).filter(|(_, e)| !e.is_zero()).collect();
        images.push(n.collect(&w)?);
    }
    for i in 0..r {
        for j in i + 1..r {
            images.push(n.commutator(&images[i], &images[j])?);
        }
    }
    AutomorphismAction::new(n, images)
}

/// `C_p × G`, the cyclic factor first on generator `z`.
pub fn direct_with_cyclic(g: &PcPresentation, p: u64) -> Result<PcPresentation> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let mut name = "z".to_string();
    while g.index_of(&name).is_some() {
        name.push('_');
    }
    Ok(direct_product(&cyclic(&name, p)?, g))
}
