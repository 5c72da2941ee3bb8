//! Polycyclic presentations and collection arithmetic.

mod collect;
mod consistency;
mod element;
mod hom;
pub(crate) mod igs;
mod presentation;

pub use consistency::check_consistency;
pub use element::ExponentVector;
pub use hom::{verify_hom, GroupHom};
pub use presentation::{word, PcPresentation, PcPresentationBuilder, Word, DEFAULT_STEP_BUDGET};

use num_traits::{One, Zero};

use crate::arith::Integer;

/// `A × B` with the generators of `A` first. Names of `B` that clash with
/// names of `A` get a `_2` suffix.
pub fn direct_product(a: &PcPresentation, b: &PcPresentation) -> PcPresentation {
    let (na, nb) = (a.num_gens(), b.num_gens());
    let n = na + nb;
    let mut names: Vec<String> = a.names().to_vec();
    for nm in b.names() {
        let mut nm = nm.clone();
        while names.contains(&nm) {
            nm.push_str("_2");
        }
        names.push(nm);
    }
    let embed = |v: &[Integer], offset: usize| {
        let mut out = vec![Integer::zero(); n];
        out[offset..offset + v.len()].clone_from_slice(v);
        out
    };
    let unit = |j: usize| {
        let mut v = vec![Integer::zero(); n];
        v[j] = Integer::one();
        v
    };
    let (da, db) = (a.data(), b.data());
    let mut orders = da.orders.clone();
    orders.extend(db.orders.iter().cloned());
    let mut powers: Vec<Vec<Integer>> = da.powers.iter().map(|v| embed(v, 0)).collect();
    powers.extend(db.powers.iter().map(|v| embed(v, na)));
    let mut conj = Vec::with_capacity(n);
    let mut conj_inv = Vec::with_capacity(n);
    for i in 0..na {
        conj.push((0..n).map(|j| if j < na { embed(&da.conj[i][j], 0) } else { unit(j) }).collect());
        conj_inv.push(
            da.conj_inv[i]
                .as_ref()
                .map(|rows| (0..n).map(|j| if j < na { embed(&rows[j], 0) } else { unit(j) }).collect()),
        );
    }
    for i in 0..nb {
        conj.push((0..n).map(|j| if j < na { unit(j) } else { embed(&db.conj[i][j - na], na) }).collect());
        conj_inv.push(
            db.conj_inv[i]
                .as_ref()
                .map(|rows| (0..n).map(|j| if j < na { unit(j) } else { embed(&rows[j - na], na) }).collect()),
        );
    }
    PcPresentation::from_parts(names, orders, powers, conj, conj_inv, da.step_budget.max(db.step_budget))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `b^a = b c^-1`, so that `[a,b] = c`.
    fn heisenberg() -> PcPresentation {
        PcPresentation::builder(["a", "b", "c"])
            .conjugate(1, 0, word(&[(1, 1), (2, -1)]))
            .build()
            .unwrap()
    }

    fn ev(xs: &[i64]) -> ExponentVector {
        ExponentVector::from_i64(xs)
    }

    #[test]
    fn heisenberg_products() {
        let h = heisenberg();
        assert_eq!(h.collect(&word(&[(0, 2), (1, 3), (0, 1), (1, 1)])).unwrap(), ev(&[3, 4, -3]));
        assert_eq!(h.collect(&word(&[(1, 1), (0, 1)])).unwrap(), ev(&[1, 1, -1]));
        assert_eq!(h.collect(&[]).unwrap(), ev(&[0, 0, 0]));
    }

    #[test]
    fn heisenberg_inverse_power_commutator() {
        let h = heisenberg();
        assert_eq!(h.invert(&ev(&[1, 1, 0])).unwrap(), ev(&[-1, -1, -1]));
        assert_eq!(h.invert(&ev(&[0, 0, 5])).unwrap(), ev(&[0, 0, -5]));
        assert_eq!(h.power(&ev(&[1, 1, 0]), &2.into()).unwrap(), ev(&[2, 2, -1]));
        assert_eq!(h.power(&ev(&[1, 1, 0]), &0.into()).unwrap(), ev(&[0, 0, 0]));
        assert_eq!(h.commutator(&ev(&[1, 0, 0]), &ev(&[0, 1, 0])).unwrap(), ev(&[0, 0, 1]));
        assert_eq!(h.commutator(&ev(&[2, 0, 0]), &ev(&[0, 2, 0])).unwrap(), ev(&[0, 0, 4]));
        let u = ev(&[3, -2, 7]);
        assert!(h.commutator(&u, &u).unwrap().is_identity());
    }

    #[test]
    fn derived_inverse_relations() {
        let h = heisenberg();
        assert_eq!(h.conjugate_inverse_relation(1, 0).unwrap(), ev(&[0, 1, 1]));
        assert_eq!(h.conjugate_inverse_relation(2, 0).unwrap(), ev(&[0, 0, 1]));
        assert!(h.is_consistent());
    }

    #[test]
    fn derived_inverse_of_nontriangular_action() {
        // Z^2 x| Z with x1^t = x2, x2^t = x1^-1 x2^-1
        let p = PcPresentation::builder(["t", "x1", "x2"])
            .conjugate(1, 0, word(&[(2, 1)]))
            .conjugate(2, 0, word(&[(1, -1), (2, -1)]))
            .build()
            .unwrap();
        assert_eq!(p.conjugate_inverse_relation(1, 0).unwrap(), ev(&[0, -1, -1]));
        assert_eq!(p.conjugate_inverse_relation(2, 0).unwrap(), ev(&[0, 1, 0]));
        assert!(p.is_consistent());
    }

    #[test]
    fn large_exponents_use_map_powering() {
        let h = heisenberg();
        let u = h.collect(&word(&[(1, 1), (0, 1000)])).unwrap();
        assert_eq!(u, ev(&[1000, 1, -1000]));
        let v = h.collect(&word(&[(1, -7), (0, -300)])).unwrap();
        assert_eq!(v, ev(&[-300, -7, -2100]));
    }

    #[test]
    fn identity_hom_verifies_and_collapse_fails() {
        let h = heisenberg();
        let mut id = GroupHom::new(h.clone(), h.clone(), h.generators()).unwrap();
        assert!(id.verify().passed());
        // a -> a, b -> b, c -> 1 breaks the relation b^a = b c^-1
        let mut f = GroupHom::new(h.clone(), h.clone(), vec![ev(&[1, 0, 0]), ev(&[0, 1, 0]), ev(&[0, 0, 0])]).unwrap();
        let r = f.verify();
        assert!(!r.passed());
        assert!(!f.is_verified());
    }

    #[test]
    fn invalid_words_rejected() {
        let e = PcPresentation::builder(["a", "b"]).conjugate(1, 0, word(&[(0, 1)])).build();
        assert!(e.is_err());
        let e = PcPresentation::builder(["a", "b"]).relative_orders(&[1, 0]).build();
        assert!(e.is_err());
    }

    #[test]
    fn direct_product_of_cyclics() {
        let c2 = PcPresentation::builder(["x"]).relative_orders(&[2]).build().unwrap();
        let c3 = PcPresentation::builder(["x"]).relative_orders(&[3]).build().unwrap();
        let p = direct_product(&c2, &c3);
        assert_eq!(p.names(), &["x".to_string(), "x_2".to_string()]);
        assert_eq!(p.order(), Some(6.into()));
        assert!(p.is_consistent());
    }
}
