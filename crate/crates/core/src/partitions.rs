//! Integer partitions, bipartitions, 2-cores and 2-quotients, and the orders
//! used to compare them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Result of comparing two elements in a partial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartialOrdering {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Builds a partition, dropping trailing zeros. Fails if the parts are not weakly decreasing.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidTableau(format!("parts {parts:?} are not decreasing")));
        }
        Ok(Self(parts))
    }

    /// Single-row partition `(a)` (empty for `a = 0`).
    pub fn row(a: usize) -> Self {
        if a == 0 {
            Self::empty()
        } else {
            Self(vec![a])
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Adds a box at the end of row `i`; the caller guarantees the result is a partition.
    pub(crate) fn with_box_added(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        if i == v.len() {
            v.push(1);
        } else {
            v[i] += 1;
        }
        Self(v)
    }

    /// Removes the last box of row `i`; the caller guarantees the result is a partition.
    pub(crate) fn with_box_removed(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v[i] -= 1;
        if v[i] == 0 {
            v.pop();
        }
        Self(v)
    }

    /// Conjugate partition.
    pub fn conjugate(&self) -> Self {
        let cols = self.part(0);
        Self((0..cols).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    /// Beta numbers `parts[i] + (len - 1 - i)` for a chosen length `len >= self.len()`.
    fn beta_numbers(&self, len: usize) -> Vec<usize> {
        (0..len).map(|i| self.part(i) + (len - 1 - i)).collect()
    }

    fn from_beta(mut beta: Vec<usize>) -> Self {
        beta.sort_unstable_by(|a, b| b.cmp(a));
        let len = beta.len();
        let parts = beta.iter().enumerate().map(|(i, b)| b - (len - 1 - i)).collect();
        Self::new(parts).expect("beta numbers give a partition")
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "\u{2205}");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// A pair of partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "(Partition, Partition)", into = "(Partition, Partition)")]
pub struct Bipartition {
    pub first: Partition,
    pub second: Partition,
}

impl Bipartition {
    pub fn new(first: Partition, second: Partition) -> Self {
        Self { first, second }
    }

    /// The one-line bipartition `(a),(b)`.
    pub fn one_line(a: usize, b: usize) -> Self {
        Self::new(Partition::row(a), Partition::row(b))
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn size(&self) -> usize {
        self.first.size() + self.second.size()
    }

    pub fn component(&self, c: usize) -> &Partition {
        if c == 1 {
            &self.first
        } else {
            &self.second
        }
    }

    pub fn component_mut(&mut self, c: usize) -> &mut Partition {
        if c == 1 {
            &mut self.first
        } else {
            &mut self.second
        }
    }

    /// Both components have at most one row.
    pub fn is_one_line(&self) -> bool {
        self.first.len() <= 1 && self.second.len() <= 1
    }

    /// Bipartition notation used in the conversion tables: `(a),(b)` for
    /// one-line bipartitions and `((..),(..))` otherwise.
    pub fn table_notation(&self) -> String {
        let comp = |p: &Partition| {
            if p.is_empty() {
                "(\u{2205})".to_string()
            } else {
                p.to_string()
            }
        };
        if self.is_one_line() {
            format!("{},{}", comp(&self.first), comp(&self.second))
        } else {
            format!("({}, {})", comp(&self.first), comp(&self.second))
        }
    }
}

impl From<(Partition, Partition)> for Bipartition {
    fn from((a, b): (Partition, Partition)) -> Self {
        Self::new(a, b)
    }
}

impl From<Bipartition> for (Partition, Partition) {
    fn from(b: Bipartition) -> Self {
        (b.first, b.second)
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

/// An element of `Lambda_n = {-n, -n+2, ..., n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlobWeight {
    pub n: usize,
    #[serde(rename = "lambda")]
    pub value: i64,
}

impl BlobWeight {
    pub fn new(n: usize, value: i64) -> Result<Self> {
        if value.unsigned_abs() as usize > n || (value - n as i64).rem_euclid(2) != 0 {
            return Err(Error::WeightOutOfRange { n, lambda: value });
        }
        Ok(Self { n, value })
    }

    /// All of `Lambda_n`, from `n` down to `-n`.
    pub fn all(n: usize) -> Vec<Self> {
        (0..=n).map(|k| Self { n, value: n as i64 - 2 * k as i64 }).collect()
    }

    /// The one-line bipartition `(a),(b)` with `a - b = value`.
    pub fn to_bipartition(self) -> Bipartition {
        let a = (self.n as i64 + self.value) / 2;
        Bipartition::one_line(a as usize, self.n - a as usize)
    }
}

/// Number of removable dominoes is zero iff the partition is its own 2-core.
pub fn two_core(p: &Partition) -> Partition {
    // On a 2-runner abacus the core is obtained by sliding every bead up its runner.
    let len = p.len() + (p.len() % 2);
    let beta = p.beta_numbers(len);
    let mut beads = [0usize; 2];
    for b in &beta {
        beads[b % 2] += 1;
    }
    let mut core_beta = Vec::with_capacity(len);
    for (r, &count) in beads.iter().enumerate() {
        core_beta.extend((0..count).map(|k| 2 * k + r));
    }
    Partition::from_beta(core_beta)
}

/// The 2-quotient of a partition with empty 2-core.
///
/// Runner convention: with an even number of beta numbers, the odd runner gives the
/// first component. This reproduces `(a),(b) -> (2a, 2b)` for `a >= b` and
/// `(a),(b) -> (2b-1, 2a+1)` for `a < b`.
pub fn two_quotient(p: &Partition) -> Result<Bipartition> {
    if !two_core(p).is_empty() {
        return Err(Error::NonEmptyCore);
    }
    let len = p.len() + (p.len() % 2);
    let beta = p.beta_numbers(len);
    let runner = |r: usize| {
        let positions: Vec<usize> = beta.iter().filter(|b| *b % 2 == r).map(|b| b / 2).collect();
        Partition::from_beta(positions)
    };
    Ok(Bipartition::new(runner(1), runner(0)))
}

/// Inverse of [`two_quotient`].
pub fn two_quotient_inverse(b: &Bipartition) -> Partition {
    let k = b.first.len().max(b.second.len());
    let mut beta = Vec::with_capacity(2 * k);
    beta.extend(b.first.beta_numbers(k).into_iter().map(|x| 2 * x + 1));
    beta.extend(b.second.beta_numbers(k).into_iter().map(|x| 2 * x));
    Partition::from_beta(beta)
}

/// Dominance order; partitions of different size are incomparable.
pub fn dominance(p: &Partition, q: &Partition) -> PartialOrdering {
    if p == q {
        return PartialOrdering::Equal;
    }
    if p.size() != q.size() {
        return PartialOrdering::Incomparable;
    }
    let (mut le, mut ge) = (true, true);
    let (mut sp, mut sq) = (0, 0);
    for i in 0..p.len().max(q.len()) {
        sp += p.part(i);
        sq += q.part(i);
        le &= sp <= sq;
        ge &= sp >= sq;
    }
    match (le, ge) {
        (true, false) => PartialOrdering::Less,
        (false, true) => PartialOrdering::Greater,
        _ => PartialOrdering::Incomparable,
    }
}

/// `x < y` iff the inverse 2-quotients compare that way in dominance.
pub fn bip_order(x: &Bipartition, y: &Bipartition) -> PartialOrdering {
    dominance(&two_quotient_inverse(x), &two_quotient_inverse(y))
}

/// The bijection `(a),(b) -> a - b` onto `Lambda_n`.
pub fn blob_weight_of(b: &Bipartition) -> Result<BlobWeight> {
    if !b.is_one_line() {
        return Err(Error::NotOneLine);
    }
    let a = b.first.size() as i64;
    let c = b.second.size() as i64;
    BlobWeight::new(b.size(), a - c)
}

/// The quasi-hereditary order: `x < y` iff `|x| > |y|`.
pub fn qh_order(x: BlobWeight, y: BlobWeight) -> Result<PartialOrdering> {
    if x.n != y.n {
        return Err(Error::AmbientMismatch(x.n, y.n));
    }
    Ok(if x == y {
        PartialOrdering::Equal
    } else if x.value.abs() > y.value.abs() {
        PartialOrdering::Less
    } else if x.value.abs() < y.value.abs() {
        PartialOrdering::Greater
    } else {
        PartialOrdering::Incomparable
    })
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All bipartitions of total size `n`.
pub fn bipartitions_of(n: usize) -> Vec<Bipartition> {
    let mut out = Vec::new();
    for k in (0..=n).rev() {
        for a in partitions_of(k) {
            for b in partitions_of(n - k) {
                out.push(Bipartition::new(a.clone(), b));
            }
        }
    }
    out
}
