//! Multiplication tables for the finite Coxeter groups used by the Hecke module:
//! type B in signed-permutation form and type A in one-line form.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::weylb::SignedPermutation;

/// A group element that knows how to multiply by a simple reflection on either side.
pub trait CoxeterElement: Clone + Eq + Hash + Ord {
    fn identity_of_rank(rank: usize) -> Self;
    fn times_gen(&self, s: usize) -> Self;
    fn gen_times(&self, s: usize) -> Self;
    fn coxeter_length(&self) -> usize;
}

impl CoxeterElement for SignedPermutation {
    fn identity_of_rank(rank: usize) -> Self {
        SignedPermutation::identity(rank)
    }
    fn times_gen(&self, s: usize) -> Self {
        self.times_generator(s)
    }
    fn gen_times(&self, s: usize) -> Self {
        self.left_generator(s).expect("generator in range")
    }
    fn coxeter_length(&self) -> usize {
        self.length()
    }
}

/// A permutation of `0..N` in one-line form; generator `s` swaps positions `s` and `s + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<usize>);

impl CoxeterElement for Perm {
    /// Rank `r` means the symmetric group on `r + 1` letters.
    fn identity_of_rank(rank: usize) -> Self {
        Perm((0..=rank).collect())
    }
    fn times_gen(&self, s: usize) -> Self {
        let mut p = self.0.clone();
        p.swap(s, s + 1);
        Perm(p)
    }
    fn gen_times(&self, s: usize) -> Self {
        Perm(
            self.0
                .iter()
                .map(|&x| if x == s { s + 1 } else if x == s + 1 { s } else { x })
                .collect(),
        )
    }
    fn coxeter_length(&self) -> usize {
        let p = &self.0;
        (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
    }
}

/// Elements sorted by `(length, element)` with left and right generator tables.
#[derive(Debug, Clone)]
pub struct CoxeterTable<E> {
    pub rank: usize,
    pub elements: Vec<E>,
    pub index: HashMap<E, usize>,
    /// `right[w][s]` is the index of `w s`.
    pub right: Vec<Vec<usize>>,
    /// `left[w][s]` is the index of `s w`.
    pub left: Vec<Vec<usize>>,
    pub length: Vec<usize>,
    /// Weight `L(s)` of each generator; `q_s = v^{L(s)}`.
    pub gen_weight: Vec<i32>,
}

impl<E: CoxeterElement> CoxeterTable<E> {
    pub fn new(rank: usize, gen_weight: Vec<i32>) -> Self {
        assert_eq!(gen_weight.len(), rank);
        let id = E::identity_of_rank(rank);
        let mut seen = HashMap::from([(id.clone(), ())]);
        let mut queue = VecDeque::from([id]);
        let mut elements = Vec::new();
        while let Some(w) = queue.pop_front() {
            for s in 0..rank {
                let x = w.times_gen(s);
                if seen.insert(x.clone(), ()).is_none() {
                    queue.push_back(x);
                }
            }
            elements.push(w);
        }
        let mut keyed: Vec<(usize, E)> = elements.into_iter().map(|e| (e.coxeter_length(), e)).collect();
        keyed.sort();
        let length: Vec<usize> = keyed.iter().map(|(l, _)| *l).collect();
        let elements: Vec<E> = keyed.into_iter().map(|(_, e)| e).collect();
        let index: HashMap<E, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let right = elements
            .iter()
            .map(|e| (0..rank).map(|s| index[&e.times_gen(s)]).collect())
            .collect();
        let left = elements
            .iter()
            .map(|e| (0..rank).map(|s| index[&e.gen_times(s)]).collect())
            .collect();
        Self { rank, elements, index, right, left, length, gen_weight }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_left_descent(&self, w: usize, s: usize) -> bool {
        self.length[self.left[w][s]] < self.length[w]
    }

    pub fn is_right_descent(&self, w: usize, s: usize) -> bool {
        self.length[self.right[w][s]] < self.length[w]
    }

    pub fn first_left_descent(&self, w: usize) -> Option<usize> {
        (0..self.rank).find(|&s| self.is_left_descent(w, s))
    }

    /// A reduced word, read left to right.
    pub fn reduced_word(&self, mut w: usize) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length[w]);
        while let Some(s) = self.first_left_descent(w) {
            word.push(s);
            w = self.left[w][s];
        }
        word
    }

    /// The weight `L(w)`, the sum of generator weights along a reduced word.
    pub fn weight(&self, w: usize) -> i32 {
        self.reduced_word(w).iter().map(|&s| self.gen_weight[s]).sum()
    }

    pub fn inverse(&self, w: usize) -> usize {
        let mut x = 0;
        for &s in self.reduced_word(w).iter() {
            x = self.left[x][s];
        }
        x
    }
}

/// Type `B_n` with `L(s_0) = 1` and `L(s_i) = 2`.
pub fn type_b(n: usize) -> CoxeterTable<SignedPermutation> {
    let weights = (0..n).map(|s| if s == 0 { 1 } else { 2 }).collect();
    CoxeterTable::new(n, weights)
}

/// The symmetric group on `m` letters with all weights 2.
pub fn type_a(m: usize) -> CoxeterTable<Perm> {
    let rank = m.saturating_sub(1);
    CoxeterTable::new(rank, vec![2; rank])
}
