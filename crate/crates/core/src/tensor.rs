//! The two-dimensional tensor space `V^{⊗n}` as a module for the type-B Hecke algebra.
//!
//! `T_i` acts by an R-matrix on slots `i, i+1`, and `T_0` is the composite
//! `T_1^{-1} ... T_{n-1}^{-1} S_{n-1} ... S_1 ϖ` applied right to left, where `S_k`
//! is the unscaled flip on slots `k, k+1` and `ϖ` scales by `Q` or `-Q^{-1}` according
//! to the first tensor factor.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::laurent::{CycloNumber, LaurentPoly, Specialization};
use crate::matrix::Ring;
use crate::partitions::BlobWeight;

/// A word over `{1, 2}` naming the basis vector `v_{i_1} ⊗ ... ⊗ v_{i_n}`.
pub type TensorWord = Vec<u8>;

/// A sparse vector in `V^{⊗n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorVector<S: Ring> {
    terms: BTreeMap<TensorWord, S>,
}

impl<S: Ring> TensorVector<S> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn basis(word: TensorWord, one: &S) -> Self {
        Self { terms: BTreeMap::from([(word, one.one_like())]) }
    }

    pub fn terms(&self) -> &BTreeMap<TensorWord, S> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: TensorWord, c: &S) {
        if c.is_zero_elem() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(e) => {
                *e = e.add_r(c);
                if e.is_zero_elem() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        for (w, a) in &other.terms {
            self.add_term(w.clone(), &a.mul_r(c));
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    fn map_words(&self, f: impl Fn(&TensorWord, &S, &mut Self)) -> Self {
        let mut out = Self::zero();
        for (w, a) in &self.terms {
            f(w, a, &mut out);
        }
        out
    }
}

/// The scalars `q`, `Q` and their inverses.
#[derive(Debug, Clone)]
pub struct TensorParams<S> {
    pub q: S,
    pub q_inv: S,
    pub big_q: S,
    pub big_q_inv: S,
}

impl TensorParams<LaurentPoly> {
    /// `q = v^a`, `Q = v^b`.
    pub fn generic(a: i32, b: i32) -> Self {
        Self {
            q: LaurentPoly::monomial(1, a),
            q_inv: LaurentPoly::monomial(1, -a),
            big_q: LaurentPoly::monomial(1, b),
            big_q_inv: LaurentPoly::monomial(1, -b),
        }
    }

    /// Parameters matching the Hecke module: `q = v^2`, `Q = v`.
    pub fn hecke() -> Self {
        Self::generic(2, 1)
    }

    /// `[2]_{Q/q}`.
    pub fn two_q_over_q(&self) -> LaurentPoly {
        let r = &self.big_q * &self.q_inv;
        let ri = &self.big_q_inv * &self.q;
        &r + &ri
    }

    pub fn specialize(&self, spec: &Specialization) -> TensorParams<CycloNumber> {
        TensorParams {
            q: spec.apply(&self.q),
            q_inv: spec.apply(&self.q_inv),
            big_q: spec.apply(&self.big_q),
            big_q_inv: spec.apply(&self.big_q_inv),
        }
    }
}

impl<S: Ring> TensorParams<S> {
    fn gap(&self) -> S {
        self.q.sub_r(&self.q_inv)
    }

    pub fn one(&self) -> S {
        self.q.one_like()
    }
}

/// `R` on slots `i, i+1` (0-based).
fn apply_r<S: Ring>(i: usize, x: &TensorVector<S>, p: &TensorParams<S>) -> TensorVector<S> {
    let gap = p.gap();
    x.map_words(|w, a, out| {
        let mut sw = w.clone();
        sw.swap(i, i + 1);
        match (w[i], w[i + 1]) {
            (l, r) if l == r => out.add_term(w.clone(), &a.mul_r(&p.q)),
            (2, 1) => out.add_term(sw, a),
            _ => {
                out.add_term(sw, a);
                out.add_term(w.clone(), &a.mul_r(&gap));
            }
        }
    })
}

/// `R^{-1} = R - (q - q^{-1})` on slots `i, i+1`.
fn apply_r_inv<S: Ring>(i: usize, x: &TensorVector<S>, p: &TensorParams<S>) -> TensorVector<S> {
    let mut out = apply_r(i, x, p);
    out.add_scaled(x, &p.gap().neg_r());
    out
}

/// `S_k` on slots `k, k+1` (1-based `k`).
fn apply_s<S: Ring>(k: usize, x: &TensorVector<S>, p: &TensorParams<S>) -> TensorVector<S> {
    let (i, j) = (k - 1, k);
    x.map_words(|w, a, out| {
        if w[i] == w[j] {
            out.add_term(w.clone(), &a.mul_r(&p.q));
        } else {
            let mut sw = w.clone();
            sw.swap(i, j);
            out.add_term(sw, a);
        }
    })
}

fn apply_varpi<S: Ring>(x: &TensorVector<S>, p: &TensorParams<S>) -> TensorVector<S> {
    let neg = p.big_q_inv.neg_r();
    x.map_words(|w, a, out| {
        let c = if w[0] == 1 { &p.big_q } else { &neg };
        out.add_term(w.clone(), &a.mul_r(c));
    })
}

/// `T_gen x` on `V^{⊗n}` with `n` the word length of `x`'s support.
pub fn tensor_action<S: Ring>(n: usize, gen: usize, x: &TensorVector<S>, p: &TensorParams<S>) -> Result<TensorVector<S>> {
    if gen >= n {
        return Err(Error::IndexOutOfRange { index: gen, n });
    }
    if x.terms.keys().any(|w| w.len() != n) {
        return Err(Error::SizeMismatch(n, x.terms.keys().next().map_or(0, Vec::len)));
    }
    if gen > 0 {
        return Ok(apply_r(gen - 1, x, p));
    }
    let mut y = apply_varpi(x, p);
    for k in 1..n {
        y = apply_s(k, &y, p);
    }
    for i in (1..n).rev() {
        y = apply_r_inv(i - 1, &y, p);
    }
    Ok(y)
}

/// `C_gen x = (T_gen - q_gen) x` with `q_0 = Q`.
pub fn tensor_c_action<S: Ring>(n: usize, gen: usize, x: &TensorVector<S>, p: &TensorParams<S>) -> Result<TensorVector<S>> {
    let mut y = tensor_action(n, gen, x, p)?;
    let qs = if gen == 0 { &p.big_q } else { &p.q };
    y.add_scaled(x, &qs.neg_r());
    Ok(y)
}

/// `C_{s_1} ... C_{s_k} x`.
pub fn tensor_c_word<S: Ring>(n: usize, word: &[usize], x: &TensorVector<S>, p: &TensorParams<S>) -> Result<TensorVector<S>> {
    let mut y = x.clone();
    for &s in word.iter().rev() {
        y = tensor_c_action(n, s, &y, p)?;
    }
    Ok(y)
}

/// All basis words of length `n`, in lexicographic order.
pub fn all_words(n: usize) -> Vec<TensorWord> {
    (0u32..1 << n)
        .map(|m| (0..n).map(|i| if m >> (n - 1 - i) & 1 == 1 { 2 } else { 1 }).collect())
        .collect()
}

/// Basis words of `M_n(λ)`: `#1 - #2 = λ`.
pub fn permutation_module(n: usize, lam: i64) -> Result<Vec<TensorWord>> {
    let w = BlobWeight::new(n, lam)?;
    Ok(all_words(n)
        .into_iter()
        .filter(|word| {
            let ones = word.iter().filter(|&&c| c == 1).count() as i64;
            ones - (n as i64 - ones) == w.value
        })
        .collect())
}

/// Whether both generators of `J_n` kill every basis vector of `V^{⊗n}`.
pub fn jn_annihilates<S: Ring>(n: usize, p: &TensorParams<S>, two_q_over_q: &S) -> Result<bool> {
    let one = p.one();
    for word in all_words(n) {
        let x = TensorVector::basis(word, &one);
        if n >= 3 {
            let mut y = tensor_c_word(n, &[1, 2, 1], &x, p)?;
            y.add_scaled(&tensor_c_action(n, 1, &x, p)?, &one.neg_r());
            if !y.is_zero() {
                return Ok(false);
            }
        }
        if n >= 2 {
            let mut y = tensor_c_word(n, &[1, 0, 1], &x, p)?;
            y.add_scaled(&tensor_c_action(n, 1, &x, p)?, &two_q_over_q.neg_r());
            if !y.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `C_1 C_0 (v_1⊗v_2 - q v_2⊗v_1)⊗v̄ = [2]_{Q/q} (v_1⊗v_2 - q v_2⊗v_1)⊗v̄` for every `v̄`.
pub fn ideal_vanish_identity<S: Ring>(n: usize, p: &TensorParams<S>, two_q_over_q: &S) -> Result<bool> {
    if n < 2 {
        return Ok(true);
    }
    let one = p.one();
    for tail in all_words(n - 2) {
        let mut x = TensorVector::zero();
        let head = |a: u8, b: u8| [vec![a, b], tail.clone()].concat();
        x.add_term(head(1, 2), &one);
        x.add_term(head(2, 1), &p.q.neg_r());
        let lhs = tensor_c_word(n, &[1, 0], &x, p)?;
        if lhs != x.scale(two_q_over_q) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply_word(n: usize, word: &[usize], x: &TensorVector<LaurentPoly>, p: &TensorParams<LaurentPoly>) -> TensorVector<LaurentPoly> {
        word.iter().rev().fold(x.clone(), |acc, &g| tensor_action(n, g, &acc, p).unwrap())
    }

    #[test]
    fn r_matrix_examples() {
        let p = TensorParams::hecke();
        let x = TensorVector::basis(vec![1, 1], &LaurentPoly::one());
        assert_eq!(tensor_action(2, 1, &x, &p).unwrap(), x.scale(&p.q));
        let y = TensorVector::basis(vec![1, 2, 2], &LaurentPoly::one());
        // ϖ alone on a vector beginning with v_1 multiplies by Q
        assert_eq!(apply_varpi(&y, &p), y.scale(&p.big_q));
    }

    #[test]
    fn hecke_relations_hold() {
        for (a, b) in [(2, 1), (3, 1), (2, 3), (5, 2), (1, 4)] {
            let p = TensorParams::generic(a, b);
            for n in 1..=4 {
                for word in all_words(n) {
                    let x = TensorVector::basis(word, &LaurentPoly::one());
                    for g in 0..n {
                        let qs = if g == 0 { &p.big_q } else { &p.q };
                        let qi = if g == 0 { &p.big_q_inv } else { &p.q_inv };
                        // (T - q_s)(T + q_s^{-1}) = 0
                        let t = apply_word(n, &[g], &x, &p);
                        let mut y = apply_word(n, &[g], &t, &p);
                        y.add_scaled(&t, &(qi - qs));
                        y.add_scaled(&x, &-(qs * qi));
                        assert!(y.is_zero(), "quadratic relation for T_{g}, n={n}, (a,b)=({a},{b})");
                    }
                    if n >= 2 {
                        assert_eq!(apply_word(n, &[0, 1, 0, 1], &x, &p), apply_word(n, &[1, 0, 1, 0], &x, &p));
                    }
                    for i in 2..n {
                        assert_eq!(apply_word(n, &[0, i], &x, &p), apply_word(n, &[i, 0], &x, &p));
                    }
                    for i in 1..n.saturating_sub(1) {
                        assert_eq!(apply_word(n, &[i, i + 1, i], &x, &p), apply_word(n, &[i + 1, i, i + 1], &x, &p));
                    }
                }
            }
        }
    }

    #[test]
    fn j_n_annihilates_generic() {
        for (a, b) in [(2, 1), (3, 1), (2, 3)] {
            let p = TensorParams::generic(a, b);
            let two = p.two_q_over_q();
            for n in 1..=4 {
                assert!(jn_annihilates(n, &p, &two).unwrap(), "n={n}, (a,b)=({a},{b})");
                assert!(ideal_vanish_identity(n, &p, &two).unwrap());
            }
        }
    }

    #[test]
    fn permutation_modules() {
        assert_eq!(permutation_module(2, 0).unwrap(), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(permutation_module(4, 4).unwrap().len(), 1);
        assert!(permutation_module(3, 2).is_err());
        let p = TensorParams::hecke();
        for n in 1..=4 {
            for lam in BlobWeight::all(n) {
                let basis = permutation_module(n, lam.value).unwrap();
                assert_eq!(basis.len() as u64, crate::binomial(n, (n - lam.value.unsigned_abs() as usize) / 2));
                for w in &basis {
                    let x = TensorVector::basis(w.clone(), &LaurentPoly::one());
                    for g in 0..n {
                        let y = tensor_action(n, g, &x, &p).unwrap();
                        assert!(y.terms().keys().all(|u| basis.contains(u)));
                    }
                }
            }
        }
    }
}
