//! The blob algebra `b_n(q, m)` realized on blobbed Temperley–Lieb diagrams.
//!
//! A diagram has top points `0..n` and bottom points `n..2n` (bottom point `i` has id `n + i`).
//! A line may carry one blob only when it is exposed: not nested under an arc and with no
//! propagating line strictly to its left. Stacking `a` over `b` produces closed loops and
//! merged blobs, which are recorded as a [`LoopCount`] and turned into scalars by
//! [`BlobScalars`].

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hecke::{cell_module_of, compute_kl_basis};
use crate::laurent::{quantum_int, CycloFieldExt, CycloNumber, LaurentPoly, Specialization};
use crate::matrix::{Field, Matrix, Ring};
use crate::partitions::{blob_weight_of, two_quotient, BlobWeight};
use crate::weylb::SignedPermutation;

/// Exponents of the three loop scalars picked up by one composition.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct LoopCount {
    pub plain_loops: u32,
    pub blobbed_loops: u32,
    pub merges: u32,
}

impl LoopCount {
    /// Accounts for a closed loop carrying `blobs` blobs.
    fn close_loop(&mut self, blobs: u32) {
        if blobs == 0 {
            self.plain_loops += 1;
        } else {
            self.blobbed_loops += 1;
            self.merges += blobs - 1;
        }
    }

    /// Accounts for an open line carrying `blobs` blobs; returns whether it keeps one.
    fn open_line(&mut self, blobs: u32) -> bool {
        if blobs > 1 {
            self.merges += blobs - 1;
        }
        blobs > 0
    }
}

/// The loop scalars: a plain loop, a loop with one blob, and two blobs merging on a line.
#[derive(Debug, Clone, PartialEq)]
pub struct BlobScalars<S> {
    pub delta_plain: S,
    pub blob_loop: S,
    pub blob_merge: S,
}

impl BlobScalars<LaurentPoly> {
    /// `-[2]`, `[m-1]`, `-[m]` as Laurent polynomials in `q`.
    pub fn generic(m: i64) -> Self {
        Self { delta_plain: -quantum_int(2), blob_loop: quantum_int(m - 1), blob_merge: -quantum_int(m) }
    }

    pub fn specialize(&self, spec: &Specialization) -> BlobScalars<CycloNumber> {
        BlobScalars {
            delta_plain: spec.apply(&self.delta_plain),
            blob_loop: spec.apply(&self.blob_loop),
            blob_merge: spec.apply(&self.blob_merge),
        }
    }

    pub fn at_rational(&self, q: &BigRational) -> BlobScalars<BigRational> {
        BlobScalars {
            delta_plain: self.delta_plain.eval_rational(q),
            blob_loop: self.blob_loop.eval_rational(q),
            blob_merge: self.blob_merge.eval_rational(q),
        }
    }
}

impl<S: Ring> BlobScalars<S> {
    pub fn weight(&self, c: LoopCount) -> S {
        let mut acc = self.delta_plain.one_like();
        for _ in 0..c.plain_loops {
            acc = acc.mul_r(&self.delta_plain);
        }
        for _ in 0..c.blobbed_loops {
            acc = acc.mul_r(&self.blob_loop);
        }
        for _ in 0..c.merges {
            acc = acc.mul_r(&self.blob_merge);
        }
        acc
    }

    pub fn one(&self) -> S {
        self.delta_plain.one_like()
    }

    /// `[2] = -delta_plain`.
    pub fn two(&self) -> S {
        self.delta_plain.neg_r()
    }
}

/// A planar blobbed diagram on `n` top and `n` bottom points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlobDiagram {
    n: usize,
    partner: Vec<usize>,
    /// Indexed by point; both endpoints of a blobbed line are marked.
    blob: Vec<bool>,
}

impl BlobDiagram {
    /// Builds a diagram from lines `(p, q, blobbed)` over point ids `0..2n`.
    pub fn new(n: usize, lines: &[(usize, usize, bool)]) -> Result<Self> {
        let mut partner = vec![usize::MAX; 2 * n];
        let mut blob = vec![false; 2 * n];
        for &(p, q, b) in lines {
            if p >= 2 * n || q >= 2 * n || p == q || partner[p] != usize::MAX || partner[q] != usize::MAX {
                return Err(Error::InvalidDiagram(format!("bad line ({p}, {q})")));
            }
            partner[p] = q;
            partner[q] = p;
            blob[p] = b;
            blob[q] = b;
        }
        if partner.contains(&usize::MAX) {
            return Err(Error::InvalidDiagram("not a perfect matching".into()));
        }
        let d = Self { n, partner, blob };
        if !d.is_planar() {
            return Err(Error::InvalidDiagram("lines cross".into()));
        }
        if (0..2 * n).any(|p| d.blob[p] && !d.is_exposed(p)) {
            return Err(Error::ExposureViolation);
        }
        Ok(d)
    }

    pub fn identity(n: usize) -> Self {
        let partner = (0..2 * n).map(|p| if p < n { p + n } else { p - n }).collect();
        Self { n, partner, blob: vec![false; 2 * n] }
    }

    /// `U_0` blobs the first strand; `U_i` for `i >= 1` caps strands `i-1, i` above and below.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let mut d = Self::identity(n);
        if i == 0 {
            d.blob[0] = true;
            d.blob[n] = true;
        } else {
            let (a, b) = (i - 1, i);
            d.partner[a] = b;
            d.partner[b] = a;
            d.partner[n + a] = n + b;
            d.partner[n + b] = n + a;
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partner(&self, p: usize) -> usize {
        self.partner[p]
    }

    pub fn has_blob(&self, p: usize) -> bool {
        self.blob[p]
    }

    /// Each line once, as `(p, q, blobbed)` with `p < q`.
    pub fn lines(&self) -> Vec<(usize, usize, bool)> {
        (0..2 * self.n).filter(|&p| p < self.partner[p]).map(|p| (p, self.partner[p], self.blob[p])).collect()
    }

    /// Number of propagating lines.
    pub fn rank(&self) -> usize {
        (0..self.n).filter(|&p| self.partner[p] >= self.n).count()
    }

    fn boundary_pos(&self, p: usize) -> usize {
        if p < self.n {
            p
        } else {
            3 * self.n - 1 - p
        }
    }

    fn is_planar(&self) -> bool {
        let spans: Vec<(usize, usize)> = self
            .lines()
            .iter()
            .map(|&(p, q, _)| {
                let (a, b) = (self.boundary_pos(p), self.boundary_pos(q));
                (a.min(b), a.max(b))
            })
            .collect();
        spans.iter().all(|&(a, b)| spans.iter().all(|&(c, d)| !(a < c && c < b && b < d)))
    }

    pub fn is_exposed(&self, p: usize) -> bool {
        let n = self.n;
        let q = self.partner[p];
        let (a, b) = (p.min(q), p.max(q));
        let props: Vec<(usize, usize)> = (0..n).filter(|&t| self.partner[t] >= n).map(|t| (t, self.partner[t] - n)).collect();
        if a < n && b >= n {
            return props.iter().all(|&(t, _)| t >= a);
        }
        // An arc on one side: `side_index` maps a point to its position on that side.
        let top = a < n;
        let idx = |x: usize| if top { x } else { x - n };
        let (i, j) = (idx(a), idx(b));
        let range = if top { 0..n } else { n..2 * n };
        let nested = range.clone().any(|x| {
            let y = self.partner[x];
            x < y && range.contains(&y) && idx(x) < i && idx(y) > j
        });
        let prop_left = props.iter().any(|&(t, u)| if top { t < i } else { u < i });
        !nested && !prop_left
    }

    /// Every diagram on `n` strands, sorted.
    pub fn all(n: usize) -> Result<Vec<Self>> {
        let bound = crate::max_n(7);
        if n > bound {
            return Err(Error::BoundExceeded { n, bound });
        }
        let order: Vec<usize> = (0..n).chain((0..n).rev().map(|i| n + i)).collect();
        let mut out = Vec::new();
        for m in noncrossing_matchings(2 * n) {
            let mut partner = vec![0; 2 * n];
            for (x, y) in m {
                partner[order[x]] = order[y];
                partner[order[y]] = order[x];
            }
            let base = Self { n, partner, blob: vec![false; 2 * n] };
            let exposed: Vec<usize> =
                (0..2 * n).filter(|&p| p < base.partner[p] && base.is_exposed(p)).collect();
            for mask in 0u32..(1 << exposed.len()) {
                let mut d = base.clone();
                for (k, &p) in exposed.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        d.blob[p] = true;
                        d.blob[d.partner[p]] = true;
                    }
                }
                out.push(d);
            }
        }
        out.sort();
        Ok(out)
    }

    /// `D ⊗ ∪∩`: the diagram on `n + 2` strands with a cap and cup on the last two.
    pub fn extend_by_cap(&self) -> Self {
        let n = self.n;
        let m = n + 2;
        let relabel = |p: usize| if p < n { p } else { p - n + m };
        let mut partner = vec![0; 2 * m];
        let mut blob = vec![false; 2 * m];
        for p in 0..2 * n {
            partner[relabel(p)] = relabel(self.partner[p]);
            blob[relabel(p)] = self.blob[p];
        }
        for (a, b) in [(n, n + 1), (m + n, m + n + 1)] {
            partner[a] = b;
            partner[b] = a;
        }
        Self { n: m, partner, blob }
    }
}

impl std::fmt::Display for BlobDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .lines()
            .iter()
            .map(|&(p, q, b)| format!("{}-{}{}", point_label(self.n, p), point_label(self.n, q), if b { "*" } else { "" }))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `3` for top point 2 and `3'` for bottom point 2.
fn point_label(n: usize, p: usize) -> String {
    if p < n {
        format!("{}", p + 1)
    } else {
        format!("{}'", p - n + 1)
    }
}

impl Serialize for BlobDiagram {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        let lines: Vec<(String, String, bool)> =
            self.lines().iter().map(|&(p, q, b)| (point_label(self.n, p), point_label(self.n, q), b)).collect();
        let mut st = s.serialize_struct("BlobDiagram", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("lines", &lines)?;
        st.end()
    }
}

/// All noncrossing perfect matchings of `0..len` as pair lists.
fn noncrossing_matchings(len: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
        if lo >= hi {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for k in (lo + 1..hi).step_by(2) {
            for inner in rec(lo + 1, k) {
                for outer in rec(k + 1, hi) {
                    let mut m = vec![(lo, k)];
                    m.extend(inner.iter().copied());
                    m.extend(outer.iter().copied());
                    out.push(m);
                }
            }
        }
        out
    }
    rec(0, len)
}

/// `a` stacked on top of `b`.
pub fn compose_diagrams(a: &BlobDiagram, b: &BlobDiagram) -> Result<(LoopCount, BlobDiagram)> {
    if a.n != b.n {
        return Err(Error::SizeMismatch(a.n, b.n));
    }
    let n = a.n;
    // Nodes: 0..n top of `a`, n..2n the middle row, 2n..3n bottom of `b`.
    // `a` sees nodes 0..2n as its own point ids; `b` sees node x as point x - n.
    let step = |in_a: bool, x: usize| -> (usize, bool) {
        if in_a {
            (a.partner[x], a.blob[x])
        } else {
            (b.partner[x - n] + n, b.blob[x - n])
        }
    };
    let outer = |x: usize| x < n || x >= 2 * n;
    let mut seen_mid = vec![false; n];
    let mut count = LoopCount::default();
    let mut partner = vec![0; 2 * n];
    let mut blob = vec![false; 2 * n];
    let result_id = |x: usize| if x < n { x } else { x - n };
    for start in (0..n).chain(2 * n..3 * n) {
        let (mut cur, mut in_a, mut blobs) = (start, start < n, 0u32);
        let end = loop {
            let (nx, bl) = step(in_a, cur);
            blobs += bl as u32;
            if outer(nx) {
                break nx;
            }
            seen_mid[nx - n] = true;
            cur = nx;
            in_a = !in_a;
        };
        if start < end {
            let keep = count.open_line(blobs);
            let (p, q) = (result_id(start), result_id(end));
            partner[p] = q;
            partner[q] = p;
            blob[p] = keep;
            blob[q] = keep;
        }
    }
    for m in 0..n {
        if seen_mid[m] {
            continue;
        }
        let start = m + n;
        let (mut cur, mut in_a, mut blobs) = (start, true, 0u32);
        loop {
            let (nx, bl) = step(in_a, cur);
            blobs += bl as u32;
            seen_mid[nx - n] = true;
            cur = nx;
            in_a = !in_a;
            if cur == start && in_a {
                break;
            }
        }
        count.close_loop(blobs);
    }
    let d = BlobDiagram { n, partner, blob };
    if (0..2 * n).any(|p| d.blob[p] && !d.is_exposed(p)) {
        return Err(Error::ExposureViolation);
    }
    Ok((count, d))
}

/// A linear combination of diagrams.
pub type BlobElement<S> = BTreeMap<BlobDiagram, S>;

pub fn multiply<S: Ring>(x: &BlobElement<S>, y: &BlobElement<S>, sc: &BlobScalars<S>) -> Result<BlobElement<S>> {
    let mut out: BlobElement<S> = BTreeMap::new();
    for (a, ca) in x {
        for (b, cb) in y {
            let (w, d) = compose_diagrams(a, b)?;
            let c = ca.mul_r(cb).mul_r(&sc.weight(w));
            let e = out.entry(d).or_insert_with(|| c.zero_like());
            *e = e.add_r(&c);
        }
    }
    out.retain(|_, c| !c.is_zero_elem());
    Ok(out)
}

/// `sum_i C(n, i)^2`, counted by enumerating diagrams.
pub fn blob_algebra_dimension(n: usize) -> Result<usize> {
    Ok(BlobDiagram::all(n)?.len())
}

/// A half-diagram: a planar partial matching of `0..n` whose unmatched points are defects.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlobHalfDiagram {
    partner: Vec<Option<usize>>,
    /// Indexed by point; both ends of a blobbed arc are marked, and a blobbed defect marks itself.
    blob: Vec<bool>,
}

impl BlobHalfDiagram {
    pub fn n(&self) -> usize {
        self.partner.len()
    }

    pub fn arcs(&self) -> Vec<(usize, usize, bool)> {
        (0..self.n())
            .filter_map(|p| self.partner[p].filter(|&q| p < q).map(|q| (p, q, self.blob[p])))
            .collect()
    }

    pub fn defects(&self) -> Vec<usize> {
        (0..self.n()).filter(|&p| self.partner[p].is_none()).collect()
    }

    pub fn defect_blob(&self) -> bool {
        self.defects().first().is_some_and(|&d| self.blob[d])
    }

    /// A line is exposed if it is the leftmost defect, or an outermost arc with no defect to its left.
    pub fn is_exposed(&self, p: usize) -> bool {
        let defects = self.defects();
        match self.partner[p] {
            None => defects.first() == Some(&p),
            Some(q) => {
                let (a, b) = (p.min(q), p.max(q));
                let nested = self.arcs().iter().any(|&(x, y, _)| x < a && y > b);
                !nested && defects.iter().all(|&d| d > a)
            }
        }
    }

    /// The basis of the standard module for `lam`, sorted.
    pub fn all(lam: BlobWeight) -> Vec<Self> {
        let n = lam.n;
        let defects = lam.value.unsigned_abs() as usize;
        let mut shapes = Vec::new();
        let mut cur = vec![None; n];
        half_shapes(0, &mut Vec::new(), &mut cur, defects, &mut shapes);
        let mut out = Vec::new();
        for partner in shapes {
            let base = Self { partner, blob: vec![false; n] };
            let free: Vec<usize> = base.arcs().iter().map(|a| a.0).filter(|&p| base.is_exposed(p)).collect();
            for mask in 0u32..(1 << free.len()) {
                let mut h = base.clone();
                for (k, &p) in free.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        let q = h.partner[p].expect("arc");
                        h.blob[p] = true;
                        h.blob[q] = true;
                    }
                }
                if lam.value < 0 {
                    let d = h.defects()[0];
                    h.blob[d] = true;
                }
                out.push(h);
            }
        }
        out.sort();
        out
    }
}

/// Planar partial matchings with exactly `defects` unmatched points, none under an arc.
fn half_shapes(
    p: usize,
    open: &mut Vec<usize>,
    cur: &mut Vec<Option<usize>>,
    defects: usize,
    out: &mut Vec<Vec<Option<usize>>>,
) {
    let n = cur.len();
    let used_defects = (0..p).filter(|&x| cur[x].is_none()).count() - open.len();
    if p == n {
        if open.is_empty() && used_defects == defects {
            out.push(cur.clone());
        }
        return;
    }
    // Open an arc.
    open.push(p);
    half_shapes(p + 1, open, cur, defects, out);
    open.pop();
    // Close the innermost open arc.
    if let Some(&q) = open.last() {
        open.pop();
        cur[p] = Some(q);
        cur[q] = Some(p);
        half_shapes(p + 1, open, cur, defects, out);
        cur[p] = None;
        cur[q] = None;
        open.push(q);
    }
    // A defect, allowed only outside every arc.
    if open.is_empty() && used_defects < defects {
        half_shapes(p + 1, open, cur, defects, out);
    }
}

/// `d` stacked on top of `h`, truncated to the standard module of weight `lam`.
/// `None` means the product vanishes in that module.
pub fn act_on_half(d: &BlobDiagram, h: &BlobHalfDiagram, lam: BlobWeight) -> Result<Option<(LoopCount, BlobHalfDiagram)>> {
    let n = d.n;
    if h.n() != n {
        return Err(Error::SizeMismatch(n, h.n()));
    }
    let mut seen_mid = vec![false; n];
    let mut count = LoopCount::default();
    let mut partner = vec![None; n];
    let mut blobs_at = vec![0u32; n];
    for start in 0..n {
        let (mut cur, mut blobs) = (start, 0u32);
        // Alternate: up through `d` from `cur`, then across `h` at the middle row.
        let end = loop {
            let (nx, bl) = (d.partner[cur], d.blob[cur]);
            blobs += bl as u32;
            if nx < n {
                break Some(nx);
            }
            let m = nx - n;
            seen_mid[m] = true;
            blobs += h.blob[m] as u32;
            match h.partner[m] {
                None => break None,
                Some(k) => {
                    seen_mid[k] = true;
                    cur = k + n;
                }
            }
        };
        partner[start] = end;
        blobs_at[start] = blobs;
    }
    if (0..n).any(|m| !seen_mid[m] && h.partner[m].is_none()) {
        return Ok(None);
    }
    for m in 0..n {
        if seen_mid[m] {
            continue;
        }
        let (mut cur, mut blobs) = (m, 0u32);
        loop {
            seen_mid[cur] = true;
            let k = h.partner[cur].expect("loops avoid defects");
            blobs += h.blob[cur] as u32;
            seen_mid[k] = true;
            let nx = d.partner[k + n];
            blobs += d.blob[k + n] as u32;
            cur = nx - n;
            if cur == m {
                break;
            }
        }
        count.close_loop(blobs);
    }
    let mut blob = vec![false; n];
    let defects: Vec<usize> = (0..n).filter(|&p| partner[p].is_none()).collect();
    for p in 0..n {
        match partner[p] {
            Some(q) if p < q => {
                let keep = count.open_line(blobs_at[p]);
                blob[p] = keep;
                blob[q] = keep;
            }
            Some(_) => {}
            None => {
                if blobs_at[p] == 0 {
                    continue;
                }
                if lam.value >= 0 {
                    return Ok(None);
                }
                if defects[0] != p {
                    return Err(Error::ExposureViolation);
                }
                blob[p] = count.open_line(blobs_at[p]);
            }
        }
    }
    let out = BlobHalfDiagram { partner, blob };
    if lam.value < 0 && !out.defect_blob() {
        return Ok(None);
    }
    if (0..n).any(|p| out.blob[p] && !out.is_exposed(p)) {
        return Err(Error::ExposureViolation);
    }
    Ok(Some((count, out)))
}

/// The standard module `Δ_n(λ)`: half-diagram basis and the matrices of `U_0, ..., U_{n-1}`.
#[derive(Debug, Clone)]
pub struct StandardModule<S: Ring> {
    pub lambda: BlobWeight,
    pub basis: Vec<BlobHalfDiagram>,
    /// Entry `(i, j)` of `actions[k]` is the coefficient of `basis[i]` in `U_k basis[j]`.
    pub actions: Vec<Matrix<S>>,
}

impl<S: Ring> StandardModule<S> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> StandardModule<T> {
        StandardModule {
            lambda: self.lambda,
            basis: self.basis.clone(),
            actions: self.actions.iter().map(|m| m.map(&f)).collect(),
        }
    }
}

pub fn standard_module<S: Ring>(lam: BlobWeight, sc: &BlobScalars<S>) -> Result<StandardModule<S>> {
    let lam = BlobWeight::new(lam.n, lam.value)?;
    let n = lam.n;
    let basis = BlobHalfDiagram::all(lam);
    let index: BTreeMap<&BlobHalfDiagram, usize> = basis.iter().enumerate().map(|(i, h)| (h, i)).collect();
    let zero = sc.one().zero_like();
    let mut actions = Vec::with_capacity(n);
    for k in 0..n {
        let g = BlobDiagram::generator(n, k)?;
        let mut m = Matrix::zeros(basis.len(), basis.len(), &zero);
        for (j, h) in basis.iter().enumerate() {
            if let Some((w, out)) = act_on_half(&g, h, lam)? {
                let i = *index.get(&out).ok_or(Error::ExposureViolation)?;
                m.add_at(i, j, &sc.weight(w));
            }
        }
        actions.push(m);
    }
    Ok(StandardModule { lambda: lam, basis, actions })
}

/// Left multiplication by `U_0, ..., U_{n-1}` on the diagram basis.
pub fn regular_representation<S: Ring>(n: usize, sc: &BlobScalars<S>) -> Result<Vec<Matrix<S>>> {
    let basis = BlobDiagram::all(n)?;
    let index: BTreeMap<&BlobDiagram, usize> = basis.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let zero = sc.one().zero_like();
    (0..n)
        .map(|k| {
            let g = BlobDiagram::generator(n, k)?;
            let mut m = Matrix::zeros(basis.len(), basis.len(), &zero);
            for (j, d) in basis.iter().enumerate() {
                let (w, out) = compose_diagrams(&g, d)?;
                m.add_at(index[&out], j, &sc.weight(w));
            }
            Ok(m)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub generators: usize,
    pub checks: Vec<RelationCheck>,
}

impl PresentationReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Substitutes `u[0..n]` into every defining relation of `b_n`.
pub fn verify_presentation<S: Ring>(u: &[Matrix<S>], sc: &BlobScalars<S>) -> PresentationReport {
    let n = u.len();
    let mut checks = Vec::new();
    let mut check = |relation: String, lhs: Matrix<S>, rhs: Matrix<S>| {
        checks.push(RelationCheck { relation, holds: lhs == rhs });
    };
    if n >= 1 {
        check("U0 U0 = -[m] U0".into(), u[0].mul(&u[0]), u[0].scale(&sc.blob_merge));
    }
    for i in 1..n {
        check(format!("U{i} U{i} = -[2] U{i}"), u[i].mul(&u[i]), u[i].scale(&sc.delta_plain));
    }
    if n >= 2 {
        check("U1 U0 U1 = [m-1] U1".into(), u[1].mul(&u[0]).mul(&u[1]), u[1].scale(&sc.blob_loop));
    }
    for i in 1..n.saturating_sub(1) {
        let j = i + 1;
        check(format!("U{i} U{j} U{i} = U{i}"), u[i].mul(&u[j]).mul(&u[i]), u[i].clone());
        check(format!("U{j} U{i} U{j} = U{j}"), u[j].mul(&u[i]).mul(&u[j]), u[j].clone());
    }
    for i in 0..n {
        for j in i + 2..n {
            check(format!("U{i} U{j} = U{j} U{i}"), u[i].mul(&u[j]), u[j].mul(&u[i]));
        }
    }
    PresentationReport { generators: n, checks }
}

/// Traces of every product `u[w_1] ... u[w_k]` with `1 <= k <= max_len`, in lexicographic word order.
pub fn word_traces<S: Ring>(u: &[Matrix<S>], max_len: usize) -> Vec<S> {
    fn rec<S: Ring>(u: &[Matrix<S>], prefix: &Matrix<S>, left: usize, out: &mut Vec<S>) {
        if left == 0 {
            return;
        }
        for g in u {
            let p = prefix.mul(g);
            out.push(p.trace());
            rec(u, &p, left - 1, out);
        }
    }
    let mut out = Vec::new();
    if let Some(first) = u.first() {
        let id = Matrix::identity(first.rows(), first.proto());
        rec(u, &id, max_len, &mut out);
    }
    out
}

/// The image `e M` of `e = -(1/[2]) U_{n-1}` as a module for `b_{n-2}`.
#[derive(Debug, Clone)]
pub struct Localized<S: Ring> {
    pub n: usize,
    pub lambda: BlobWeight,
    pub dim: usize,
    /// Action of `U_0, ..., U_{n-3}` on a basis of `e M`.
    pub actions: Vec<Matrix<S>>,
}

pub fn localize<S: Field>(module: &StandardModule<S>, sc: &BlobScalars<S>) -> Result<Localized<S>> {
    let n = module.lambda.n;
    if n < 2 {
        return Err(Error::IndexOutOfRange { index: 1, n });
    }
    if sc.two().inv_r().is_none() {
        return Err(Error::TwoNotInvertible);
    }
    let top = &module.actions[n - 1];
    let pivots = top.clone().rref();
    let image = top.select_cols(&pivots);
    let mut actions = Vec::with_capacity(n - 2);
    for k in 0..n - 2 {
        let moved = module.actions[k].mul(&image);
        actions.push(image.solve_columns(&moved).ok_or(Error::ExposureViolation)?);
    }
    Ok(Localized { n, lambda: module.lambda, dim: pivots.len(), actions })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalizationCheck {
    pub lambda: BlobWeight,
    pub dim: usize,
    pub expected_dim: usize,
    pub traces_match: bool,
}

impl LocalizationCheck {
    pub fn holds(&self) -> bool {
        self.dim == self.expected_dim && self.traces_match
    }
}

/// `F Δ_n(λ) ≅ Δ_{n-2}(λ)` for `|λ| < n` and `0` otherwise, with `q` set to a rational value.
pub fn check_localization(lam: BlobWeight, m: i64, q: &BigRational) -> Result<LocalizationCheck> {
    let generic = BlobScalars::generic(m);
    let sc = generic.at_rational(q);
    let module = standard_module(lam, &generic)?.map(|p| p.eval_rational(q));
    let loc = localize(&module, &sc)?;
    let small = lam.value.unsigned_abs() as usize + 2 <= lam.n;
    let (expected_dim, traces_match) = if small {
        let target = standard_module(BlobWeight::new(lam.n - 2, lam.value)?, &sc)?;
        (target.dim(), word_traces(&loc.actions, 3) == word_traces(&target.actions, 3))
    } else {
        (0, true)
    };
    Ok(LocalizationCheck { lambda: lam, dim: loc.dim, expected_dim, traces_match })
}

/// `D ↦ -(1/[2]) D ⊗ ∪∩` is an algebra isomorphism `b_{n-2} → e b_n e`:
/// products of extended diagrams pick up exactly one extra plain loop, and
/// `U_{n-1} D U_{n-1}` lands in the span of extended diagrams for every `D`.
pub fn check_corner_isomorphism(n: usize, m: i64) -> Result<bool> {
    if n < 2 {
        return Err(Error::IndexOutOfRange { index: 1, n });
    }
    let sc = BlobScalars::generic(m);
    let small = BlobDiagram::all(n - 2)?;
    for a in &small {
        for b in &small {
            let (w, ab) = compose_diagrams(a, b)?;
            let (w2, ext) = compose_diagrams(&a.extend_by_cap(), &b.extend_by_cap())?;
            let mut expect = w;
            expect.plain_loops += 1;
            if ext != ab.extend_by_cap() || sc.weight(w2) != sc.weight(expect) {
                return Ok(false);
            }
        }
    }
    let cap = BlobDiagram::generator(n, n - 1)?;
    let images: std::collections::BTreeSet<BlobDiagram> = small.iter().map(|d| d.extend_by_cap()).collect();
    for d in BlobDiagram::all(n)? {
        let (_, x) = compose_diagrams(&cap, &d)?;
        let (_, y) = compose_diagrams(&x, &cap)?;
        if !images.contains(&y) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One left cell of `W_b` compared against the standard module of its weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellComparison {
    pub representative: SignedPermutation,
    pub cell_size: usize,
    pub lambda: BlobWeight,
    pub dim_standard: usize,
    pub relations_hold: bool,
    pub traces_match: bool,
    /// For one-dimensional cells: the generator matrices agree entry by entry.
    pub exact_match: Option<bool>,
}

impl CellComparison {
    pub fn holds(&self) -> bool {
        self.cell_size == self.dim_standard && self.relations_hold && self.traces_match && self.exact_match != Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellComparisonReport {
    pub n: usize,
    pub m: i64,
    pub l: u32,
    pub cells: Vec<CellComparison>,
}

impl CellComparisonReport {
    pub fn holds(&self) -> bool {
        self.cells.iter().all(CellComparison::holds)
    }
}

/// Specializations for `q = zeta_l`, `Q = i q^m`, checked against `q = -q^{2m}`.
/// Returns `(v ↦ Q, q ↦ zeta_l)` over `Q(zeta_N)` with `N = lcm(l, 4)`.
pub fn root_of_unity_specializations(m: i64, l: u32) -> Result<(Specialization, Specialization)> {
    if l < 3 {
        return Err(Error::SpecializationInvalid);
    }
    let conductor = num_integer::lcm(l, 4);
    let step = (conductor / l) as i64;
    let hecke = Specialization::new(conductor, conductor as i64 / 4 + m * step)?;
    let blob = Specialization::new(conductor, step)?;
    let q = blob.image_of_v();
    if q != -&q.pow((2 * m).rem_euclid(l as i64) as u32) {
        return Err(Error::SpecializationInvalid);
    }
    Ok((hecke, blob))
}

/// Every left cell inside `W_b` compared with `Δ_n(λ)` at `q = zeta_l`, `Q = i q^m`.
pub fn compare_cell_to_standard(n: usize, m: i64, l: u32) -> Result<CellComparisonReport> {
    let bound = crate::max_n(if cfg!(feature = "long-tests") { 4 } else { 3 });
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    let (hspec, bspec) = root_of_unity_specializations(m, l)?;
    let field = bspec.field().clone();
    let q = bspec.image_of_v();
    let i = field.zeta_pow(field.conductor() as i64 / 4);
    let rescale = (&i * &(&q - &q.inv().expect("unit"))).inv().ok_or(Error::SpecializationInvalid)?;
    let generic = BlobScalars::generic(m);
    let sc = generic.specialize(&bspec);
    let basis = compute_kl_basis(n)?;
    let mut cells = Vec::new();
    for cell in basis.left_cells() {
        if !basis.table().elements[cell[0]].is_in_wb_by_words() {
            continue;
        }
        let cm = cell_module_of(&basis, &cell);
        let lambda = blob_weight_of(&two_quotient(&cm.shape())?)?;
        let mut u: Vec<Matrix<CycloNumber>> = cm.actions.iter().map(|a| a.map(|p| hspec.apply(p))).collect();
        u[0] = u[0].scale(&rescale);
        let delta = standard_module(lambda, &generic)?.map(|p| bspec.apply(p));
        let dims_agree = delta.dim() == cm.dim();
        let traces_match = dims_agree && word_traces(&u, 4) == word_traces(&delta.actions, 4);
        let exact_match = (cm.dim() == 1 && dims_agree).then(|| u == delta.actions);
        cells.push(CellComparison {
            representative: cm.cell[0].clone(),
            cell_size: cm.dim(),
            lambda,
            dim_standard: delta.dim(),
            relations_hold: verify_presentation(&u, &sc).holds(),
            traces_match,
            exact_match,
        });
    }
    Ok(CellComparisonReport { n, m, l, cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial;

    fn u(n: usize, i: usize) -> BlobDiagram {
        BlobDiagram::generator(n, i).unwrap()
    }

    fn sc() -> BlobScalars<LaurentPoly> {
        BlobScalars::generic(3)
    }

    fn product(ds: &[BlobDiagram]) -> (LaurentPoly, BlobDiagram) {
        let s = sc();
        let mut acc = (LaurentPoly::one(), ds[0].clone());
        for d in &ds[1..] {
            let (w, x) = compose_diagrams(&acc.1, d).unwrap();
            acc = (&acc.0 * &s.weight(w), x);
        }
        acc
    }

    #[test]
    fn generator_products() {
        let (c, d) = product(&[u(2, 0), u(2, 0)]);
        assert_eq!((c, d), (sc().blob_merge, u(2, 0)));
        let (c, d) = product(&[u(2, 1), u(2, 0), u(2, 1)]);
        assert_eq!((c, d), (sc().blob_loop, u(2, 1)));
        let (c, d) = product(&[u(3, 1), u(3, 2), u(3, 1)]);
        assert_eq!((c, d), (LaurentPoly::one(), u(3, 1)));
        let (c, _) = product(&[u(3, 2), u(3, 2)]);
        assert_eq!(c, -quantum_int(2));
    }

    #[test]
    fn algebra_dimensions() {
        for n in 0..=6 {
            let expected: u64 = (0..=n).map(|i| binomial(n, i).pow(2)).sum();
            assert_eq!(blob_algebra_dimension(n).unwrap() as u64, expected, "n = {n}");
        }
        assert_eq!(blob_algebra_dimension(1).unwrap(), 2);
        assert_eq!(blob_algebra_dimension(2).unwrap(), 6);
        assert_eq!(blob_algebra_dimension(3).unwrap(), 20);
    }

    #[test]
    fn diagram_validation() {
        assert!(BlobDiagram::new(2, &[(0, 2, false), (1, 3, true)]).is_err());
        assert!(BlobDiagram::new(2, &[(0, 3, false), (1, 2, false)]).is_err());
        assert!(BlobDiagram::new(2, &[(0, 1, true), (2, 3, true)]).is_ok());
    }

    #[test]
    fn standard_dimensions() {
        for n in 0..=8 {
            let mut square_sum = 0u64;
            for lam in BlobWeight::all(n) {
                let k = (n as i64 - lam.value) / 2;
                let d = BlobHalfDiagram::all(lam).len() as u64;
                assert_eq!(d, binomial(n, k as usize));
                square_sum += d * d;
            }
            if n <= 6 {
                assert_eq!(square_sum as usize, blob_algebra_dimension(n).unwrap());
            }
        }
    }

    #[test]
    fn one_dimensional_modules() {
        let s = sc();
        for n in 1..=4 {
            let top = standard_module(BlobWeight::new(n, n as i64).unwrap(), &s).unwrap();
            assert_eq!(top.dim(), 1);
            assert!(top.actions.iter().all(|m| m.is_zero()));
            let bottom = standard_module(BlobWeight::new(n, -(n as i64)).unwrap(), &s).unwrap();
            assert_eq!(bottom.dim(), 1);
            assert_eq!(bottom.actions[0].get(0, 0), &s.blob_merge);
            assert!(bottom.actions[1..].iter().all(|m| m.is_zero()));
        }
        assert_eq!(standard_module(BlobWeight::new(2, 0).unwrap(), &s).unwrap().dim(), 2);
    }

    #[test]
    fn presentation_regular() {
        for m in [2, 3] {
            let s = BlobScalars::generic(m);
            for n in 1..=4 {
                let r = verify_presentation(&regular_representation(n, &s).unwrap(), &s);
                assert!(r.holds(), "n = {n}: {r:?}");
            }
        }
    }

    #[test]
    fn presentation_standard() {
        let s = sc();
        for n in 1..=6 {
            for lam in BlobWeight::all(n) {
                let module = standard_module(lam, &s).unwrap();
                assert!(verify_presentation(&module.actions, &s).holds(), "{lam:?}");
            }
        }
    }

    #[test]
    fn localization() {
        let q = BigRational::from_integer(2.into());
        for n in 2..=6 {
            for lam in BlobWeight::all(n) {
                let c = check_localization(lam, 3, &q).unwrap();
                assert!(c.holds(), "{c:?}");
            }
        }
        let c = check_localization(BlobWeight::new(4, 0).unwrap(), 2, &q).unwrap();
        assert_eq!(c.dim, 2);
    }

    #[test]
    fn localization_needs_two() {
        // q = i makes [2] = q + q^{-1} vanish.
        let bspec = Specialization::new(4, 1).unwrap();
        let generic = BlobScalars::generic(2);
        let s = generic.specialize(&bspec);
        let module = standard_module(BlobWeight::new(2, 0).unwrap(), &generic).unwrap().map(|p| bspec.apply(p));
        assert_eq!(localize(&module, &s).unwrap_err(), Error::TwoNotInvertible);
    }

    #[test]
    fn corner_isomorphism() {
        for n in 2..=4 {
            assert!(check_corner_isomorphism(n, 3).unwrap());
        }
    }

    #[test]
    fn specialization_condition() {
        assert!(root_of_unity_specializations(2, 6).is_ok());
        assert_eq!(root_of_unity_specializations(2, 8).unwrap_err(), Error::SpecializationInvalid);
        assert!(root_of_unity_specializations(3, 10).is_ok());
    }

    #[test]
    fn cells_match_standard_modules() {
        for n in 1..=3 {
            let r = compare_cell_to_standard(n, 2, 6).unwrap();
            assert!(r.holds(), "{r:?}");
            let count: usize = r.cells.iter().map(|c| c.cell_size).sum();
            assert_eq!(count, blob_algebra_dimension(n).unwrap());
            let id = r.cells.iter().find(|c| c.representative.is_identity()).unwrap();
            assert_eq!(id.lambda.value, n as i64);
            let s0 = r.cells.iter().find(|c| c.representative == SignedPermutation::from_word(n, &[0]).unwrap());
            assert_eq!(s0.unwrap().lambda.value, -(n as i64));
        }
    }
}
