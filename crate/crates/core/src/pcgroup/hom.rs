use num_traits::Zero;

use super::element::ExponentVector;
use super::presentation::PcPresentation;
use crate::error::{Error, Result};
use crate::report::{CheckReport, Witness};

/// Homomorphism between pc groups given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    domain: PcPresentation,
    codomain: PcPresentation,
    images: Vec<ExponentVector>,
    verified: bool,
}

impl GroupHom {
    pub fn new(domain: PcPresentation, codomain: PcPresentation, images: Vec<ExponentVector>) -> Result<Self> {
        if images.len() != domain.num_gens() {
            return Err(Error::InvalidPresentation(format!(
                "homomorphism needs {} images, got {}",
                domain.num_gens(),
                images.len()
            )));
        }
        if let Some(bad) = images.iter().find(|v| v.len() != codomain.num_gens()) {
            return Err(Error::InvalidPresentation(format!(
                "image {bad} does not have {} exponents",
                codomain.num_gens()
            )));
        }
        Ok(GroupHom { domain, codomain, images, verified: false })
    }

    /// Builds the map and checks every relation; errors if one fails.
    pub fn new_verified(domain: PcPresentation, codomain: PcPresentation, images: Vec<ExponentVector>) -> Result<Self> {
        let mut f = Self::new(domain, codomain, images)?;
        let r = f.verify();
        if !r.passed() {
            return Err(Error::Precondition(format!("not a homomorphism: {}", r.summary)));
        }
        Ok(f)
    }

    pub fn identity(p: &PcPresentation) -> Self {
        GroupHom { domain: p.clone(), codomain: p.clone(), images: p.generators(), verified: true }
    }

    pub fn domain(&self) -> &PcPresentation {
        &self.domain
    }

    pub fn codomain(&self) -> &PcPresentation {
        &self.codomain
    }

    pub fn images(&self) -> &[ExponentVector] {
        &self.images
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub(crate) fn mark_verified(mut self) -> Self {
        self.verified = true;
        self
    }

    /// Image of a domain element.
    pub fn apply(&self, u: &ExponentVector) -> Result<ExponentVector> {
        let mut c = self.codomain.collector();
        let mut acc = c.identity();
        for (i, e) in u.0.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let x = c.pow(&self.images[i].0, e)?;
            c.mul(&mut acc, &x)?;
        }
        Ok(ExponentVector(acc))
    }

    /// `g ∘ self`
    pub fn then(&self, g: &GroupHom) -> Result<GroupHom> {
        if g.domain != self.codomain {
            return Err(Error::Precondition("composition of maps with mismatched groups".into()));
        }
        let images = self.images.iter().map(|x| g.apply(x)).collect::<Result<Vec<_>>>()?;
        Ok(GroupHom { domain: self.domain.clone(), codomain: g.codomain.clone(), images, verified: self.verified && g.verified })
    }

    /// Checks that every defining relation of the domain maps to a true relation.
    pub fn verify(&mut self) -> CheckReport {
        let r = verify_hom(self);
        self.verified = r.passed();
        r
    }
}

/// Evaluates every power and conjugation relation of the domain in the codomain.
pub fn verify_hom(f: &GroupHom) -> CheckReport {
    match verify_inner(f) {
        Ok(None) => CheckReport::pass("homomorphism verified"),
        Ok(Some((label, lhs, rhs))) => CheckReport::fail(format!("relation {label} fails"))
            .with("relation", Witness::Text(label))
            .with("images", Witness::Vectors(vec![lhs.0, rhs.0])),
        Err(e) => CheckReport::fail(format!("relation evaluation failed: {e}")).with("error", Witness::Text(e.to_string())),
    }
}

type Failure = Option<(String, ExponentVector, ExponentVector)>;

fn verify_inner(f: &GroupHom) -> Result<Failure> {
    let d = &f.domain;
    let h = &f.codomain;
    let names = d.names();
    let img = |i: usize| &f.images[i];
    for i in 0..d.num_gens() {
        if let Some(rel) = d.power_relation(i) {
            let lhs = h.power(img(i), d.relative_order(i))?;
            let rhs = f.apply(&rel)?;
            if lhs != rhs {
                return Ok(Some((format!("{}^{}", names[i], d.relative_order(i)), lhs, rhs)));
            }
        }
        for j in i + 1..d.num_gens() {
            let lhs = h.conjugate(img(j), img(i))?;
            let rhs = f.apply(&d.conjugate_relation(j, i))?;
            if lhs != rhs {
                return Ok(Some((format!("{}^{}", names[j], names[i]), lhs, rhs)));
            }
            if let Some(rel) = d.conjugate_inverse_relation(j, i) {
                let inv = h.invert(img(i))?;
                let lhs = h.conjugate(img(j), &inv)?;
                let rhs = f.apply(&rel)?;
                if lhs != rhs {
                    return Ok(Some((format!("{}^{}^-1", names[j], names[i]), lhs, rhs)));
                }
            }
        }
    }
    Ok(None)
}
