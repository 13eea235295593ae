//! Signed permutations, Coxeter words in type B, and the subset `W_b`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `W_n` in window notation `(w(1), ..., w(n))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct SignedPermutation {
    window: Vec<i32>,
}

/// A word in the generators `s_0, ..., s_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoxeterWord(pub Vec<usize>);

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        Self { window: (1..=n as i32).collect() }
    }

    pub fn new(window: Vec<i32>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &x in &window {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(Error::InvalidWindow(window));
            }
            seen[a] = true;
        }
        Ok(Self { window })
    }

    /// Evaluates `s_{k_1} s_{k_2} ...` starting from the identity.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(n);
        for &k in word {
            w = w.apply_generator(k)?;
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &x)| x == i as i32 + 1)
    }

    /// `w(k)` for `k` in `±{1..n}`.
    pub fn image(&self, k: i32) -> i32 {
        let x = self.window[k.unsigned_abs() as usize - 1];
        if k < 0 {
            -x
        } else {
            x
        }
    }

    /// `w * s_k`.
    pub fn apply_generator(&self, k: usize) -> Result<Self> {
        if k >= self.n() {
            return Err(Error::IndexOutOfRange { index: k, n: self.n() });
        }
        Ok(self.times_generator(k))
    }

    pub(crate) fn times_generator(&self, k: usize) -> Self {
        let mut w = self.window.clone();
        if k == 0 {
            w[0] = -w[0];
        } else {
            w.swap(k - 1, k);
        }
        Self { window: w }
    }

    /// `s_k * w`.
    pub fn left_generator(&self, k: usize) -> Result<Self> {
        if k >= self.n() {
            return Err(Error::IndexOutOfRange { index: k, n: self.n() });
        }
        let k = k as i32;
        let window = self
            .window
            .iter()
            .map(|&x| match (k, x.abs()) {
                (0, 1) => -x,
                (0, _) => x,
                (_, a) if a == k => x.signum() * (k + 1),
                (_, a) if a == k + 1 => x.signum() * k,
                _ => x,
            })
            .collect();
        Ok(Self { window })
    }

    /// Composition `self * other` as maps: `(uv)(k) = u(v(k))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        Ok(Self { window: other.window.iter().map(|&x| self.image(x)).collect() })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.window.iter().enumerate() {
            inv[x.unsigned_abs() as usize - 1] = x.signum() * (i as i32 + 1);
        }
        Self { window: inv }
    }

    pub fn is_right_descent(&self, k: usize) -> bool {
        if k == 0 {
            self.window[0] < 0
        } else {
            self.window[k - 1] > self.window[k]
        }
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (0..self.n()).filter(|&k| self.is_right_descent(k)).collect()
    }

    pub fn left_descents(&self) -> Vec<usize> {
        self.inverse().right_descents()
    }

    /// Coxeter length: inversions of the window minus the sum of its negative entries.
    pub fn length(&self) -> usize {
        let w = &self.window;
        let mut inv = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        let neg: i32 = w.iter().filter(|&&x| x < 0).map(|&x| -x).sum();
        inv + neg as usize
    }

    /// A reduced expression, built by stripping the smallest right descent.
    pub fn reduced_word(&self) -> CoxeterWord {
        let mut letters = Vec::with_capacity(self.length());
        let mut w = self.clone();
        while let Some(&k) = w.right_descents().first() {
            letters.push(k);
            w = w.times_generator(k);
        }
        letters.reverse();
        CoxeterWord(letters)
    }

    /// Bruhat order via the lifting property.
    pub fn bruhat_leq(&self, w: &Self) -> Result<bool> {
        if self.n() != w.n() {
            return Err(Error::SizeMismatch(self.n(), w.n()));
        }
        let (mut u, mut w) = (self.clone(), w.clone());
        loop {
            let Some(&s) = w.right_descents().first() else {
                return Ok(u.is_identity());
            };
            if u.is_right_descent(s) {
                u = u.times_generator(s);
            }
            w = w.times_generator(s);
        }
    }

    /// The image under the embedding into the symmetric group on `n̄ < ... < 1̄ < 1 < ... < n`.
    pub fn iota(&self) -> TypeAPermutation {
        let mut one_line: Vec<i32> = self.window.iter().rev().map(|&x| -x).collect();
        one_line.extend_from_slice(&self.window);
        TypeAPermutation { n: self.n(), one_line }
    }

    /// Every reduced expression avoids the forbidden factors `s_i s_j s_i` (`i >= 1`, `|i - j| = 1`).
    pub fn is_in_wb_by_avoidance(&self) -> bool {
        let mut memo = HashMap::new();
        !has_forbidden_factor(self, &mut memo)
    }

    /// The criterion on negative entries and decreasing subsequences.
    pub fn is_in_wb_by_words(&self) -> bool {
        let w = &self.window;
        let Some(last_neg) = w.iter().rposition(|&x| x < 0) else {
            return !has_long_decreasing(w);
        };
        let negs: Vec<i32> = w.iter().filter(|&&x| x < 0).map(|&x| -x).collect();
        let prefix: Vec<i32> = w[..last_neg].iter().copied().filter(|&x| x > 0).collect();
        // a_l < ... < a_1 < i_1 < ... < i_{k_l}
        let mut chain: Vec<i32> = negs.iter().rev().copied().collect();
        chain.extend_from_slice(&prefix);
        if chain.windows(2).any(|p| p[0] >= p[1]) {
            return false;
        }
        let mut wl: Vec<i32> = negs.iter().rev().copied().collect();
        wl.extend(w.iter().copied().filter(|&x| x > 0));
        !has_long_decreasing(&wl)
    }

    /// All elements of `W_n`, sorted by window.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut perm: Vec<i32> = (1..=n as i32).collect();
        permutations(&mut perm, 0, &mut |p| {
            for signs in 0u32..(1 << n) {
                let window = p
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| if signs >> i & 1 == 1 { -x } else { x })
                    .collect();
                out.push(Self { window });
            }
        });
        out.sort();
        out
    }
}

fn permutations(p: &mut Vec<i32>, k: usize, f: &mut impl FnMut(&[i32])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Whether some decreasing subsequence has length at least three.
fn has_long_decreasing(w: &[i32]) -> bool {
    // For each entry, the largest value seen before it that exceeds it starts a length-2 run.
    let mut max_so_far = i32::MIN;
    let mut best_pair_low = i32::MIN;
    for &x in w {
        if x < best_pair_low {
            return true;
        }
        if x < max_so_far {
            best_pair_low = best_pair_low.max(x);
        }
        max_so_far = max_so_far.max(x);
    }
    false
}

fn has_forbidden_factor(w: &SignedPermutation, memo: &mut HashMap<Vec<i32>, bool>) -> bool {
    if let Some(&b) = memo.get(&w.window) {
        return b;
    }
    let mut bad = false;
    for s in w.right_descents() {
        let ws = w.times_generator(s);
        if has_forbidden_factor(&ws, memo) {
            bad = true;
            break;
        }
        if s == 0 {
            continue;
        }
        // A reduced word of w ending in s_j s_s ... s_s with the middle letter adjacent.
        for j in [s - 1, s + 1] {
            if j < w.n() && ws.is_right_descent(j) {
                let wsj = ws.times_generator(j);
                if wsj.is_right_descent(s) {
                    bad = true;
                    break;
                }
            }
        }
        if bad {
            break;
        }
    }
    memo.insert(w.window.clone(), bad);
    bad
}

/// All elements of `W_b` for the given rank, sorted by window.
pub fn enumerate_wb(n: usize) -> Result<Vec<SignedPermutation>> {
    let bound = crate::max_n(8);
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    Ok(SignedPermutation::all(n).into_iter().filter(SignedPermutation::is_in_wb_by_words).collect())
}

impl TryFrom<Vec<i32>> for SignedPermutation {
    type Error = Error;
    fn try_from(v: Vec<i32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<SignedPermutation> for Vec<i32> {
    fn from(w: SignedPermutation) -> Self {
        w.window
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.window.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

impl CoxeterWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn evaluate(&self, n: usize) -> Result<SignedPermutation> {
        SignedPermutation::from_word(n, &self.0)
    }
}

impl fmt::Display for CoxeterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self.0.iter().map(|k| format!("s{k}")).collect();
        write!(f, "{}", s.join(" "))
    }
}

/// A permutation of `n̄ < ... < 1̄ < 1 < ... < n`, stored as the one-line images
/// of these symbols in that order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeAPermutation {
    n: usize,
    one_line: Vec<i32>,
}

impl TypeAPermutation {
    pub fn one_line(&self) -> &[i32] {
        &self.one_line
    }

    /// Position (0-based) of a symbol in the ordered alphabet.
    pub fn position(n: usize, symbol: i32) -> usize {
        if symbol > 0 {
            n + symbol as usize - 1
        } else {
            n - symbol.unsigned_abs() as usize
        }
    }

    /// The same permutation as a permutation of `0..2n` on positions.
    pub fn to_positions(&self) -> Vec<usize> {
        self.one_line.iter().map(|&x| Self::position(self.n, x)).collect()
    }

    pub fn inverse(&self) -> Self {
        let pos = self.to_positions();
        let symbols: Vec<i32> = (0..2 * self.n)
            .map(|p| if p < self.n { -((self.n - p) as i32) } else { (p - self.n + 1) as i32 })
            .collect();
        let mut one_line = vec![0; 2 * self.n];
        for (p, &q) in pos.iter().enumerate() {
            one_line[q] = symbols[p];
        }
        Self { n: self.n, one_line }
    }
}
