use blobcell::fock::{self, Charge, FockVector};
use blobcell::{Bipartition, BlobWeight, LaurentPoly};
use proptest::prelude::*;

proptest! {
    /// `ẽ_i` undoes `f̃_i` along any residue sequence that stays in the crystal.
    #[test]
    fn crystal_operators_invert(seq in proptest::collection::vec(0u32..3, 0..12), s1 in -4i64..12) {
        let s = Charge::new(s1, 0, 3);
        let mut b = Bipartition::empty();
        for &i in &seq {
            let Some(next) = fock::crystal_f(i, &b, &s) else { break };
            prop_assert_eq!(fock::crystal_e(i, &next, &s), Some(b.clone()));
            b = next;
        }
        let path = fock::crystal_path(&b, &s).unwrap();
        prop_assert_eq!(fock::apply_crystal_path(&path, &s), Some(b));
    }

    /// Any admissible asymptotic charge gives the same Kleshchev labels.
    #[test]
    fn asymptotic_charges_agree(lam in -10i64..=10, k in 0i64..3) {
        prop_assume!(lam % 2 == 0);
        for (e, m) in [(3, 2), (5, 3)] {
            let w = BlobWeight::new(10, lam).unwrap();
            let base = fock::kleshchev_convert(10, e, m, w).unwrap();
            let s1 = fock::asymptotic_charge(10, e, m) + k * e;
            prop_assert_eq!(fock::kleshchev_convert_at(10, e, m, w, s1).unwrap(), base);
        }
    }

    /// `f_i` and `e_j` commute for `i != j` on random basis vectors.
    #[test]
    fn e_f_commute(a in proptest::collection::vec(1usize..4, 0..3), b in proptest::collection::vec(1usize..4, 0..3), i in 0u32..5, j in 0u32..5, s1 in -5i64..5) {
        prop_assume!(i != j);
        let mut a = a; a.sort_unstable_by(|x, y| y.cmp(x));
        let mut b = b; b.sort_unstable_by(|x, y| y.cmp(x));
        let lam = Bipartition::new(blobcell::Partition::new(a).unwrap(), blobcell::Partition::new(b).unwrap());
        let s = Charge::new(s1, 0, 5);
        let x = FockVector::basis(lam);
        prop_assert_eq!(fock::e_action(i, &fock::f_action(j, &x, &s), &s), fock::f_action(j, &fock::e_action(i, &x, &s), &s));
    }
}

#[test]
fn canonical_basis_sizes_match_crystal() {
    for e in [3u32, 5] {
        let s = Charge::new(-((e as i64 - 1) / 2), 0, e);
        for n in 0..=7 {
            let g = fock::canonical_basis(n, &s).unwrap();
            assert_eq!(g.len(), fock::reachable(n, &s).len());
            for (mu, x) in &g {
                assert!(x.coeff(mu).is_one());
                assert!(x.terms().iter().all(|(b, c)| b == mu || c.min_exp().is_some_and(|d| d > 0)));
            }
        }
    }
}

#[test]
fn divided_power_of_nonzero_string() {
    let s = Charge::new(-1, 0, 3);
    let x = FockVector::basis(Bipartition::empty());
    let y = fock::divided_power(2, 1, &x, &s).unwrap();
    let z = fock::divided_power(0, 2, &y, &s).unwrap();
    assert!(z.terms().values().all(|c| c.min_exp().is_some()));
    assert_eq!(fock::divided_power(1, 0, &x, &s).unwrap(), x);
    assert_eq!(LaurentPoly::one(), x.coeff(&Bipartition::empty()));
}
