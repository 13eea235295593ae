//! Knuth relations on signed permutations and the resulting plactic and coplactic classes.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weylb::SignedPermutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KnuthKind {
    /// `b c a <-> b a c` for `a < b < c`.
    K1,
    /// `a c b <-> c a b` for `a < b < c`.
    K2,
    /// `i_1 i_2 ... <-> -i_1 i_2 ...` for `|i_1| > |i_2|`.
    K3,
}

/// A relation applied at a 0-based window position (the start of the triple for K1 and K2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KnuthMove {
    pub kind: KnuthKind,
    pub position: usize,
}

/// Every element one relation away from `w`, in either direction.
pub fn knuth_neighbors(w: &SignedPermutation) -> Vec<(KnuthMove, SignedPermutation)> {
    let x = w.window();
    let mut out = Vec::new();
    let mut push = |kind, position, y: Vec<i32>| {
        out.push((KnuthMove { kind, position }, SignedPermutation::new(y).expect("relations permute letters")));
    };
    for i in 0..x.len().saturating_sub(2) {
        let (p, q, r) = (x[i], x[i + 1], x[i + 2]);
        // K1 swaps the last two letters when the first lies strictly between them.
        if (q < p && p < r) || (r < p && p < q) {
            let mut y = x.to_vec();
            y.swap(i + 1, i + 2);
            push(KnuthKind::K1, i, y);
        }
        // K2 swaps the first two letters when the last lies strictly between them.
        if (p < r && r < q) || (q < r && r < p) {
            let mut y = x.to_vec();
            y.swap(i, i + 1);
            push(KnuthKind::K2, i, y);
        }
    }
    if x.len() >= 2 && x[0].abs() > x[1].abs() {
        let mut y = x.to_vec();
        y[0] = -y[0];
        push(KnuthKind::K3, 0, y);
    }
    out
}

fn closure(w: &SignedPermutation) -> BTreeSet<SignedPermutation> {
    let mut seen = BTreeSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(x) = queue.pop_front() {
        for (_, y) in knuth_neighbors(&x) {
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn check_bound(w: &SignedPermutation) -> Result<()> {
    let bound = crate::max_n(7);
    if w.n() > bound {
        return Err(Error::BoundExceeded { n: w.n(), bound });
    }
    Ok(())
}

/// The Knuth class of `w`, sorted by window.
pub fn plactic_class(w: &SignedPermutation) -> Result<Vec<SignedPermutation>> {
    check_bound(w)?;
    Ok(closure(w).into_iter().collect())
}

/// Inverses of the Knuth class of `w^{-1}`, sorted by window.
pub fn coplactic_class(w: &SignedPermutation) -> Result<Vec<SignedPermutation>> {
    check_bound(w)?;
    let mut v: Vec<_> = closure(&w.inverse()).into_iter().map(|x| x.inverse()).collect();
    v.sort();
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domino::domino_insert;

    fn sp(w: &[i32]) -> SignedPermutation {
        SignedPermutation::new(w.to_vec()).unwrap()
    }

    #[test]
    fn neighbor_examples() {
        let n = knuth_neighbors(&sp(&[2, 3, 1]));
        assert!(n.contains(&(KnuthMove { kind: KnuthKind::K1, position: 0 }, sp(&[2, 1, 3]))));
        let n = knuth_neighbors(&sp(&[2, -1, 3]));
        assert!(n.contains(&(KnuthMove { kind: KnuthKind::K3, position: 0 }, sp(&[-2, -1, 3]))));
        assert!(knuth_neighbors(&SignedPermutation::identity(2)).is_empty());
        assert!(knuth_neighbors(&SignedPermutation::identity(1)).is_empty());
    }

    #[test]
    fn relations_are_symmetric() {
        for w in SignedPermutation::all(3) {
            for (m, y) in knuth_neighbors(&w) {
                assert!(knuth_neighbors(&y).iter().any(|(m2, z)| *z == w && m2.kind == m.kind));
            }
        }
    }

    #[test]
    fn classes_are_fibres_rank_three() {
        let all = SignedPermutation::all(3);
        let pairs: Vec<_> = all.iter().map(domino_insert).collect();
        for (w, pw) in all.iter().zip(&pairs) {
            let fibre: Vec<_> = all.iter().zip(&pairs).filter(|(_, p)| p.p == pw.p).map(|(x, _)| x.clone()).collect();
            assert_eq!(plactic_class(w).unwrap(), fibre);
            let cofibre: Vec<_> =
                all.iter().zip(&pairs).filter(|(_, p)| p.q == pw.q).map(|(x, _)| x.clone()).collect();
            assert_eq!(coplactic_class(w).unwrap(), cofibre);
        }
    }

    #[test]
    fn identity_class() {
        let id = SignedPermutation::identity(3);
        let class = plactic_class(&id).unwrap();
        assert!(class.contains(&id));
        let p = domino_insert(&id).p;
        let fibre = SignedPermutation::all(3).into_iter().filter(|x| domino_insert(x).p == p).count();
        assert_eq!(class.len(), fibre);
    }
}
