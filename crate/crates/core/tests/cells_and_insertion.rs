use std::collections::BTreeSet;

use blobcell::domino::{domino_insert, domino_reverse};
use blobcell::hecke::{compute_kl_basis, left_cells};
use blobcell::knuth::plactic_class;
use blobcell::SignedPermutation;
use proptest::prelude::*;

fn arb_signed(n: usize) -> impl Strategy<Value = SignedPermutation> {
    (Just((1..=n as i32).collect::<Vec<_>>()).prop_shuffle(), proptest::collection::vec(any::<bool>(), n)).prop_map(|(p, s)| {
        SignedPermutation::new(p.iter().zip(s).map(|(&x, neg)| if neg { -x } else { x }).collect()).unwrap()
    })
}

/// Left cells at `L(s_0) = 1 < L(s_i) = 2` are exactly the fibres of the recording tableau.
#[test]
fn left_cells_are_q_fibres() {
    for n in 1..=4 {
        let b = compute_kl_basis(n).unwrap();
        let all = &b.table().elements;
        let cells = left_cells(&b);
        for c in &cells {
            let q = domino_insert(&c[0]).q;
            let fibre: BTreeSet<_> = all.iter().filter(|x| domino_insert(x).q == q).cloned().collect();
            assert_eq!(c.iter().cloned().collect::<BTreeSet<_>>(), fibre, "n = {n}");
        }
    }
}

/// The three local relations only ever connect elements with a common insertion tableau,
/// but from rank four on they no longer reach the whole fibre.
#[test]
fn knuth_relations_split_some_fibres_in_rank_four() {
    let w = SignedPermutation::new(vec![-4, -3, -1, -2]).unwrap();
    let p = domino_insert(&w).p;
    let class = plactic_class(&w).unwrap();
    let fibre: Vec<_> = SignedPermutation::all(4).into_iter().filter(|x| domino_insert(x).p == p).collect();
    assert!(class.iter().all(|x| fibre.contains(x)));
    assert_eq!((class.len(), fibre.len()), (6, 8));
}

proptest! {
    #[test]
    fn insertion_round_trip(w in (1usize..=8).prop_flat_map(arb_signed)) {
        let pair = domino_insert(&w);
        prop_assert_eq!(pair.p.shape(), pair.q.shape());
        prop_assert_eq!(&pair.q, &domino_insert(&w.inverse()).p);
        prop_assert_eq!(domino_reverse(&pair).unwrap(), w);
    }

    #[test]
    fn wb_criteria_agree(w in (1usize..=8).prop_flat_map(arb_signed)) {
        let rows = blobcell::domino::domino_shape(&w).len();
        prop_assert_eq!(w.is_in_wb_by_words(), rows <= 2);
    }

    #[test]
    fn classes_stay_in_fibres(w in (1usize..=5).prop_flat_map(arb_signed)) {
        let p = domino_insert(&w).p;
        for x in plactic_class(&w).unwrap() {
            prop_assert_eq!(&domino_insert(&x).p, &p);
        }
    }
}
