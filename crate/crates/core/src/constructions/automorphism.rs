use num_traits::{One, Zero};

use crate::arith::{IntMatrix, Integer};
use crate::error::{Error, Result};
use crate::nilpotent::{AbelianSection, Subgroup};
use crate::pcgroup::igs::Igs;
use crate::pcgroup::{direct_product, ExponentVector, GroupHom, PcPresentation};

/// An automorphism of a pc group `N`, given by generator images, together with
/// its action on `N/N'` in section coordinates (column `j` is the image of basis element `j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismAction {
    base: PcPresentation,
    images: Vec<ExponentVector>,
    inverse_images: Vec<ExponentVector>,
    abelianized: IntMatrix,
}

impl AutomorphismAction {
    /// Checks that the images define an automorphism and computes the inverse.
    pub fn new(base: &PcPresentation, images: Vec<ExponentVector>) -> Result<Self> {
        let hom = GroupHom::new_verified(base.clone(), base.clone(), images.clone())?;
        let inverse_images = invert_automorphism(&hom)?;
        let abelianized = abelianized_matrix(base, &images)?;
        Ok(AutomorphismAction { base: base.clone(), images, inverse_images, abelianized })
    }

    pub fn identity(base: &PcPresentation) -> Self {
        let images = base.generators();
        let n = AbelianSection::new(&Subgroup::whole(base), &Subgroup::whole(base).derived().expect("derived"))
            .map(|s| s.moduli().len())
            .unwrap_or(0);
        AutomorphismAction { base: base.clone(), inverse_images: images.clone(), images, abelianized: IntMatrix::identity(n) }
    }

    pub fn base(&self) -> &PcPresentation {
        &self.base
    }

    pub fn images(&self) -> &[ExponentVector] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[ExponentVector] {
        &self.inverse_images
    }

    pub fn abelianized(&self) -> &IntMatrix {
        &self.abelianized
    }

    pub fn as_hom(&self) -> GroupHom {
        GroupHom::new(self.base.clone(), self.base.clone(), self.images.clone())
            .expect("images sized at construction")
    }

    pub fn apply(&self, u: &ExponentVector) -> Result<ExponentVector> {
        self.as_hom().apply(u)
    }

    pub fn apply_inverse(&self, u: &ExponentVector) -> Result<ExponentVector> {
        GroupHom::new(self.base.clone(), self.base.clone(), self.inverse_images.clone())?.apply(u)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &AutomorphismAction) -> Result<AutomorphismAction> {
        let images = other.images.iter().map(|x| self.apply(x)).collect::<Result<Vec<_>>>()?;
        let inverse_images = self.inverse_images.iter().map(|x| other.apply_inverse(x)).collect::<Result<Vec<_>>>()?;
        Ok(AutomorphismAction {
            base: self.base.clone(),
            images,
            inverse_images,
            abelianized: self.abelianized.mul(&other.abelianized),
        })
    }

    /// `self^k` for `k ≥ 0`.
    pub fn power(&self, k: u64) -> Result<AutomorphismAction> {
        let mut acc = AutomorphismAction::identity(&self.base);
        acc.abelianized = IntMatrix::identity(self.abelianized.rows());
        for _ in 0..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.images == self.base.generators()
    }

    pub fn commutes_with(&self, other: &AutomorphismAction) -> Result<bool> {
        for g in self.base.generators() {
            if self.apply(&other.apply(&g)?)? != other.apply(&self.apply(&g)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Matrix of the induced map on `N/N'` in the section's own coordinates.
fn abelianized_matrix(base: &PcPresentation, images: &[ExponentVector]) -> Result<IntMatrix> {
    let whole = Subgroup::whole(base);
    let sec = AbelianSection::new(&whole, &whole.derived()?)?;
    let k = sec.moduli().len();
    let hom = GroupHom::new(base.clone(), base.clone(), images.to_vec())?;
    let mut cols = Vec::with_capacity(k);
    for j in 0..k {
        let x = sec.basis_element(j)?;
        cols.push(sec.image(&hom.apply(&x)?)?);
    }
    Ok(IntMatrix::from_rows(k, cols).transpose())
}

/// Generator preimages under a bijective endomorphism. In `N × N` the pairs
/// `(f(x), x)` form a subgroup; sifting `(g, 1)` through it leaves `(1, w)` with `f(w⁻¹) = g`.
pub(crate) fn invert_automorphism(f: &GroupHom) -> Result<Vec<ExponentVector>> {
    let n = f.domain();
    let m = n.num_gens();
    let prod = direct_product(n, n);
    let gens: Vec<Vec<Integer>> = (0..m)
        .map(|k| {
            let mut v = f.images()[k].0.clone();
            v.extend(n.generator(k).0);
            v
        })
        .collect();
    let igs = Igs::closure(&prod, &gens, &[])?;
    let mut out = Vec::with_capacity(m);
    for k in 0..m {
        let mut target = vec![Integer::zero(); 2 * m];
        target[k] = Integer::one();
        let rem = igs.sift_remainder(&prod, &target, m)?;
        if rem[..m].iter().any(|x| !x.is_zero()) {
            return Err(Error::Precondition(format!("map is not surjective: {} has no preimage", n.name(k))));
        }
        let w = prod.invert(&ExponentVector(rem))?;
        out.push(ExponentVector(w.0[m..].to_vec()));
    }
    // injectivity: the kernel is the part of the graph inside N × 1
    let kernel_part = igs.elements().into_iter().any(|s| s[m..].iter().all(Zero::is_zero) && s.iter().any(|x| !x.is_zero()));
    if kernel_part {
        return Err(Error::Precondition("map is not injective".into()));
    }
    Ok(out)
}
