use std::collections::BTreeMap;

use blobcell::blob::{self, BlobDiagram, BlobElement, BlobScalars};
use blobcell::LaurentPoly;
use proptest::prelude::*;

fn word_element(n: usize, word: &[usize], sc: &BlobScalars<LaurentPoly>) -> BlobElement<LaurentPoly> {
    let mut x: BlobElement<LaurentPoly> = BTreeMap::from([(BlobDiagram::identity(n), LaurentPoly::one())]);
    for &k in word {
        let g = BTreeMap::from([(BlobDiagram::generator(n, k).unwrap(), LaurentPoly::one())]);
        x = blob::multiply(&x, &g, sc).unwrap();
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn multiplication_is_associative(n in 2usize..=4, a in proptest::collection::vec(0usize..4, 0..4), b in proptest::collection::vec(0usize..4, 0..4), c in proptest::collection::vec(0usize..4, 0..4), m in 2i64..5) {
        let sc = BlobScalars::generic(m);
        let clip = |w: &[usize]| w.iter().map(|k| k % n).collect::<Vec<_>>();
        let (x, y, z) = (word_element(n, &clip(&a), &sc), word_element(n, &clip(&b), &sc), word_element(n, &clip(&c), &sc));
        let left = blob::multiply(&blob::multiply(&x, &y, &sc).unwrap(), &z, &sc).unwrap();
        let right = blob::multiply(&x, &blob::multiply(&y, &z, &sc).unwrap(), &sc).unwrap();
        prop_assert_eq!(left, right);
    }
}

#[test]
fn diagram_count_matches_dimension() {
    for n in 1..=5 {
        assert_eq!(BlobDiagram::all(n).unwrap().len(), blob::blob_algebra_dimension(n).unwrap());
    }
}
