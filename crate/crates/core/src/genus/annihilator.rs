use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{lattice_membership, IntMatrix, Integer, LatticeMembership};
use crate::error::{Error, Result};
use crate::nilpotent::{AbelianSection, Subgroup};
use crate::pcgroup::{ExponentVector, PcPresentation};
use crate::report::{CheckReport, Witness};

/// Integer polynomial, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly(pub Vec<Integer>);

impl IntPoly {
    pub fn degree(&self) -> usize {
        self.0.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = vec![Integer::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly(out)
    }

    /// `Σ c_k M^k`
    pub fn eval_matrix(&self, m: &IntMatrix) -> IntMatrix {
        let n = m.rows();
        let mut acc = IntMatrix::zeros(n, n);
        let mut power = IntMatrix::identity(n);
        for c in &self.0 {
            acc = acc.add(&power.scale(c));
            power = power.mul(m);
        }
        acc
    }
}

/// `t^2 + t + 1`, `t - 1`, `-2*t^3 + 5`
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in (0..self.0.len()).rev() {
            let c = &self.0[k];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coeff = if mag.is_one() && k > 0 { String::new() } else if k > 0 { format!("{mag}*") } else { mag.to_string() };
            match k {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}t")?,
                _ => write!(f, "{coeff}t^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `det(tI - M)` by Faddeev-LeVerrier; all divisions are exact.
pub fn characteristic_polynomial(m: &IntMatrix) -> IntPoly {
    let n = m.rows();
    let mut coeffs = vec![Integer::zero(); n + 1];
    coeffs[n] = Integer::one();
    let mut mk = IntMatrix::zeros(n, n);
    for k in 1..=n {
        let prev = &coeffs[n - k + 1];
        mk = m.mul(&mk).add(&IntMatrix::identity(n).scale(prev));
        let am = m.mul(&mk);
        let tr: Integer = (0..n).map(|i| am[(i, i)].clone()).sum();
        coeffs[n - k] = -tr / Integer::from(k);
    }
    IntPoly(coeffs)
}

/// Result of [`annihilator_polynomials`].
#[derive(Clone, Debug)]
pub struct Annihilators {
    /// annihilates `A` under `a ↦ a^x`
    pub alpha: IntPoly,
    /// annihilates `A` under `a ↦ a^{x^{-1}}`
    pub beta: IntPoly,
    /// action of `x` on `A` in section coordinates (columns are images)
    pub action: IntMatrix,
    pub report: CheckReport,
}

/// `a^{p(x)} = Π (a^{x^k})^{c_k}` for `A` abelian.
pub fn apply_polynomial(p: &PcPresentation, a: &ExponentVector, x: &ExponentVector, poly: &IntPoly) -> Result<ExponentVector> {
    let mut acc = p.identity();
    let mut conj = a.clone();
    for c in &poly.0 {
        if !c.is_zero() {
            acc = p.multiply(&acc, &p.power(&conj, c)?)?;
        }
        conj = p.conjugate(&conj, x)?;
    }
    Ok(acc)
}

fn action_matrix(sec: &AbelianSection, x: &ExponentVector) -> Result<IntMatrix> {
    let p = sec.upper().ambient();
    let k = sec.moduli().len();
    let mut cols = Vec::with_capacity(k);
    for j in 0..k {
        let b = sec.basis_element(j)?;
        cols.push(sec.image(&p.conjugate(&b, x)?)?);
    }
    Ok(IntMatrix::from_rows(k, cols).transpose())
}

/// Monic relation `a^{x^m} = Π_{k<m} (a^{x^k})^{c_k}`, found by growing the span of conjugates.
fn cyclic_annihilator(sec: &AbelianSection, a: &ExponentVector, x: &ExponentVector) -> Result<IntPoly> {
    let p = sec.upper().ambient();
    let moduli = sec.moduli();
    let k = moduli.len();
    let torsion_rows: Vec<Vec<Integer>> = moduli
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(j, s)| {
            let mut r = vec![Integer::zero(); k];
            r[j] = s.clone();
            r
        })
        .collect();
    let mut span: Vec<Vec<Integer>> = Vec::new();
    let mut conj = a.clone();
    for m in 0..=k + 1 {
        let v = sec.image(&conj)?;
        let mut gens = span.clone();
        gens.extend(torsion_rows.iter().cloned());
        if let LatticeMembership::Member(coeffs) = lattice_membership(&gens, &v) {
            let mut poly: Vec<Integer> = coeffs[..m].iter().map(|c| -c).collect();
            poly.push(Integer::one());
            return Ok(IntPoly(poly));
        }
        span.push(v);
        conj = p.conjugate(&conj, x)?;
    }
    Err(Error::Precondition("conjugates of a generator did not close".into()))
}

/// Annihilating polynomials of `A` under conjugation by `x` and by `x^{-1}`,
/// with a check that `⟨a⟩^{⟨x⟩}` is generated by the conjugates
/// `a^{x^{-(n-1)}}, ..., a^{x^{m-1}}` for every generator `a` of `A`.
pub fn annihilator_polynomials(a_sub: &Subgroup, x: &ExponentVector) -> Result<Annihilators> {
    let p = a_sub.ambient().clone();
    let gens = a_sub.gens();
    for (i, u) in gens.iter().enumerate() {
        for v in &gens[i + 1..] {
            if !p.commutator(u, v)?.is_identity() {
                return Err(Error::Precondition("A is not abelian".into()));
            }
        }
    }
    let x_inv = p.invert(x)?;
    if let Some((s, y)) = a_sub.is_normalized_by(&[x.clone(), x_inv.clone()])? {
        return Err(Error::NotInvariant(format!(
            "{}^({}) leaves A",
            y.to_word(p.names()),
            s.to_word(p.names())
        )));
    }
    let sec = AbelianSection::new(a_sub, &Subgroup::trivial(&p))?;
    let action = action_matrix(&sec, x)?;
    let inverse_action = action_matrix(&sec, &x_inv)?;
    let alpha = characteristic_polynomial(&action);
    let beta = characteristic_polynomial(&inverse_action);
    let (m, n) = (alpha.degree(), beta.degree());

    let mut failures = Vec::new();
    let mut closure_counts = Vec::new();
    let mut cross_check = IntPoly(vec![Integer::one()]);
    for a in &gens {
        if !apply_polynomial(&p, a, x, &alpha)?.is_identity() {
            failures.push(format!("{}^alpha", a.to_word(p.names())));
        }
        if !apply_polynomial(&p, a, &x_inv, &beta)?.is_identity() {
            failures.push(format!("{}^beta", a.to_word(p.names())));
        }
        cross_check = cross_check.mul(&cyclic_annihilator(&sec, a, x)?);
        let mut conjs = Vec::new();
        for e in -(n as i64 - 1)..=(m as i64 - 1) {
            conjs.push(p.conjugate(a, &p.power(x, &Integer::from(e))?)?);
        }
        closure_counts.push(Integer::from(conjs.len()));
        let span = Subgroup::generated(&p, &conjs)?;
        if span.is_normalized_by(&[x.clone(), x_inv.clone()])?.is_some() {
            failures.push(format!("conjugates of {} do not close", a.to_word(p.names())));
        }
    }
    let matrix_zero = alpha.eval_matrix(&action).is_zero() && beta.eval_matrix(&inverse_action).is_zero();
    let cross_zero = cross_check.eval_matrix(&action).is_zero();
    let first_closure = match gens.first() {
        Some(a) => {
            let mut conjs = Vec::new();
            for e in -(n as i64 - 1)..=(m as i64 - 1) {
                conjs.push(p.conjugate(a, &p.power(x, &Integer::from(e))?)?);
            }
            Subgroup::generated(&p, &conjs)? == *a_sub
        }
        None => true,
    };
    let ok = failures.is_empty() && matrix_zero && cross_zero;
    let summary = format!("alpha = {alpha}, beta = {beta}");
    let mut report = if ok { CheckReport::pass(summary) } else { CheckReport::fail(summary) };
    report.insert("alpha", Witness::Text(alpha.to_string()));
    report.insert("beta", Witness::Text(beta.to_string()));
    report.insert("conjugates_used", Witness::Ints(closure_counts));
    report.insert("closure_of_first_generator_is_A", Witness::Flag(first_closure));
    report.insert("matrix_annihilated", Witness::Flag(matrix_zero));
    report.insert("product_cross_check", Witness::Text(cross_check.to_string()));
    if !failures.is_empty() {
        report.insert("failures", Witness::Texts(failures));
    }
    Ok(Annihilators { alpha, beta, action, report })
}
