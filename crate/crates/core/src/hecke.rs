//! The Hecke algebra of a finite Coxeter group over `Z[v, v^-1]`, with `q_s = v^{L(s)}`.
//!
//! For type `B_n` the weights are `L(s_0) = 1` and `L(s_i) = 2`, so `q = v^2` and `Q = v`.
//! The Kazhdan–Lusztig basis is built by triangular correction, cells are strongly
//! connected components of the left preorder, and cell modules are read off from
//! the left action of the generators on the basis.

use std::collections::BTreeMap;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::coxeter::{self, CoxeterElement, CoxeterTable, Perm};
use crate::domino::domino_shape;
use crate::error::{Error, Result};
use crate::laurent::{gauss, LaurentPoly};
use crate::matrix::Matrix;
use crate::partitions::Partition;
use crate::weylb::SignedPermutation;

pub use crate::tensor::{permutation_module, tensor_action, TensorVector};

/// A sparse element in the standard basis `T_w`, indexed by positions in a [`CoxeterTable`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HeckeElement {
    terms: BTreeMap<usize, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: usize) -> Self {
        Self { terms: BTreeMap::from([(w, LaurentPoly::one())]) }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, LaurentPoly)>) -> Self {
        let mut x = Self::zero();
        for (w, c) in terms {
            x.add_term(w, &c);
        }
        x
    }

    pub fn terms(&self) -> &BTreeMap<usize, LaurentPoly> {
        &self.terms
    }

    pub fn coeff(&self, w: usize) -> LaurentPoly {
        self.terms.get(&w).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: usize, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_insert_with(LaurentPoly::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        for (&w, a) in &other.terms {
            self.add_term(w, &(a * c));
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &LaurentPoly::one());
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &LaurentPoly::constant(-1));
        out
    }
}

/// Multiplication rules for a fixed Coxeter group and weight function.
#[derive(Debug, Clone)]
pub struct Hecke<E> {
    pub table: CoxeterTable<E>,
}

impl<E: CoxeterElement> Hecke<E> {
    pub fn new(table: CoxeterTable<E>) -> Self {
        Self { table }
    }

    pub fn rank(&self) -> usize {
        self.table.rank
    }

    /// `q_s = v^{L(s)}`.
    pub fn param(&self, s: usize) -> LaurentPoly {
        LaurentPoly::monomial(1, self.table.gen_weight[s])
    }

    /// `q_s - q_s^{-1}`.
    fn param_gap(&self, s: usize) -> LaurentPoly {
        let l = self.table.gen_weight[s];
        LaurentPoly::from_terms([(l, 1), (-l, -1)])
    }

    pub fn one(&self) -> HeckeElement {
        HeckeElement::basis(0)
    }

    pub fn t(&self, w: usize) -> HeckeElement {
        HeckeElement::basis(w)
    }

    pub fn t_gen(&self, s: usize) -> HeckeElement {
        HeckeElement::basis(self.table.right[0][s])
    }

    /// `C_s = T_s - q_s`.
    pub fn c_gen(&self, s: usize) -> HeckeElement {
        let mut x = self.t_gen(s);
        x.add_term(0, &-self.param(s));
        x
    }

    /// `T_s * x`.
    pub fn left_t(&self, s: usize, x: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        let gap = self.param_gap(s);
        for (&w, a) in &x.terms {
            let sw = self.table.left[w][s];
            out.add_term(sw, a);
            if self.table.length[sw] < self.table.length[w] {
                out.add_term(w, &(a * &gap));
            }
        }
        out
    }

    /// `x * T_s`.
    pub fn right_t(&self, x: &HeckeElement, s: usize) -> HeckeElement {
        let mut out = HeckeElement::zero();
        let gap = self.param_gap(s);
        for (&w, a) in &x.terms {
            let ws = self.table.right[w][s];
            out.add_term(ws, a);
            if self.table.length[ws] < self.table.length[w] {
                out.add_term(w, &(a * &gap));
            }
        }
        out
    }

    /// `C_s * x`.
    pub fn left_c(&self, s: usize, x: &HeckeElement) -> HeckeElement {
        let mut out = self.left_t(s, x);
        out.add_scaled(x, &-self.param(s));
        out
    }

    /// `x * C_s`.
    pub fn right_c(&self, x: &HeckeElement, s: usize) -> HeckeElement {
        let mut out = self.right_t(x, s);
        out.add_scaled(x, &-self.param(s));
        out
    }

    pub fn mul(&self, x: &HeckeElement, y: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (&w, a) in &x.terms {
            let mut z = y.clone();
            for &s in self.table.reduced_word(w).iter().rev() {
                z = self.left_t(s, &z);
            }
            out.add_scaled(&z, a);
        }
        out
    }

    /// `C_{s_1} C_{s_2} ... C_{s_k}`.
    pub fn c_word(&self, word: &[usize]) -> HeckeElement {
        word.iter().rev().fold(self.one(), |acc, &s| self.left_c(s, &acc))
    }

    /// The ring involution `T_w -> T_{w^{-1}}^{-1}`, `v -> v^{-1}`.
    pub fn bar(&self, x: &HeckeElement) -> HeckeElement {
        let mut cache: BTreeMap<usize, HeckeElement> = BTreeMap::new();
        let mut out = HeckeElement::zero();
        for (&w, a) in &x.terms {
            let bt = self.bar_t(w, &mut cache);
            out.add_scaled(&bt, &a.bar());
        }
        out
    }

    fn bar_t(&self, w: usize, cache: &mut BTreeMap<usize, HeckeElement>) -> HeckeElement {
        if w == 0 {
            return self.one();
        }
        if let Some(x) = cache.get(&w) {
            return x.clone();
        }
        let s = (0..self.rank()).find(|&s| self.table.is_right_descent(w, s)).expect("nonidentity");
        let prev = self.bar_t(self.table.right[w][s], cache);
        // T_s^{-1} = T_s - (q_s - q_s^{-1})
        let mut x = self.right_t(&prev, s);
        x.add_scaled(&prev, &-self.param_gap(s));
        cache.insert(w, x.clone());
        x
    }
}

/// The Kazhdan–Lusztig basis of a Hecke algebra.
#[derive(Debug, Clone)]
pub struct KLBasis<E> {
    pub hecke: Hecke<E>,
    /// `c[w]` is `C_w` in the `T`-basis.
    pub c: Vec<HeckeElement>,
}

impl<E: CoxeterElement> KLBasis<E> {
    pub fn compute(hecke: Hecke<E>) -> Result<Self> {
        let n = hecke.table.len();
        let mut c: Vec<HeckeElement> = Vec::with_capacity(n);
        c.push(hecke.one());
        for w in 1..n {
            let s = hecke.table.first_left_descent(w).expect("nonidentity has a descent");
            let prev = hecke.table.left[w][s];
            let mut d = hecke.left_c(s, &c[prev]);
            let below: Vec<usize> = d.terms.range(..w).map(|(&y, _)| y).rev().collect();
            for y in below {
                // Terms only reach lower indices, so `y` has its final coefficient here.
                let p = d.coeff(y);
                if !p.is_zero() && !p.in_positive_span() {
                    let mu = p.bar_symmetric_correction();
                    d.add_scaled(&c[y], &-mu);
                }
            }
            let ok = d.coeff(w).is_one()
                && d.terms.keys().all(|&y| y <= w)
                && d.terms.iter().all(|(&y, p)| y == w || p.in_positive_span());
            if !ok {
                return Err(Error::KlCorrectionFailed(w));
            }
            c.push(d);
        }
        Ok(Self { hecke, c })
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn table(&self) -> &CoxeterTable<E> {
        &self.hecke.table
    }

    /// Coordinates of `x` in the `C`-basis.
    pub fn to_c_basis(&self, x: &HeckeElement) -> BTreeMap<usize, LaurentPoly> {
        let mut rest = x.clone();
        let mut out = BTreeMap::new();
        while let Some((&y, a)) = rest.terms.last_key_value() {
            let a = a.clone();
            rest.add_scaled(&self.c[y], &-a.clone());
            out.insert(y, a);
        }
        out
    }

    /// `C_s C_w` in the `C`-basis.
    pub fn left_structure(&self, s: usize, w: usize) -> BTreeMap<usize, LaurentPoly> {
        self.to_c_basis(&self.hecke.left_c(s, &self.c[w]))
    }

    /// `edges[w]` lists every `y` with `C_y` occurring in some `C_s C_w`.
    pub fn left_edges(&self) -> Vec<Vec<usize>> {
        (0..self.len())
            .map(|w| {
                let mut ys: Vec<usize> =
                    (0..self.hecke.rank()).flat_map(|s| self.left_structure(s, w).into_keys()).collect();
                ys.sort_unstable();
                ys.dedup();
                ys
            })
            .collect()
    }

    /// Left cells, each sorted, listed by their smallest element.
    pub fn left_cells(&self) -> Vec<Vec<usize>> {
        cells_from_edges(&self.left_edges())
    }
}

/// Strongly connected components of `w -> y` edges, each sorted, listed by smallest element.
pub fn cells_from_edges(edges: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut g = DiGraph::<(), ()>::with_capacity(edges.len(), 0);
    let nodes: Vec<_> = (0..edges.len()).map(|_| g.add_node(())).collect();
    for (w, ys) in edges.iter().enumerate() {
        for &y in ys {
            g.add_edge(nodes[w], nodes[y], ());
        }
    }
    let mut cells: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|x| x.index()).collect();
            v.sort_unstable();
            v
        })
        .collect();
    cells.sort();
    cells
}

/// Type `B_n` with `q = v^2`, `Q = v`.
pub fn type_b_hecke(n: usize) -> Hecke<SignedPermutation> {
    Hecke::new(coxeter::type_b(n))
}

/// The type-`B_n` Kazhdan–Lusztig basis; the default bound on `n` is 4.
pub fn compute_kl_basis(n: usize) -> Result<KLBasis<SignedPermutation>> {
    let bound = crate::max_n(if cfg!(feature = "long-tests") { 5 } else { 4 });
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    KLBasis::compute(type_b_hecke(n))
}

/// Left cells of `W_n` as sorted lists of signed permutations.
pub fn left_cells(basis: &KLBasis<SignedPermutation>) -> Vec<Vec<SignedPermutation>> {
    basis
        .left_cells()
        .into_iter()
        .map(|c| c.into_iter().map(|i| basis.table().elements[i].clone()).collect())
        .collect()
}

/// `[2]_{Q/q} = v + v^{-1}`.
pub fn two_q_over_q() -> LaurentPoly {
    gauss(2, -1).expect("nonnegative")
}

/// The generators `C_1 C_2 C_1 - C_1` and `C_1 C_0 C_1 - [2]_{Q/q} C_1` of `J_n` (those that exist).
pub fn jn_generators(h: &Hecke<SignedPermutation>) -> Vec<HeckeElement> {
    let n = h.rank();
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(h.c_word(&[1, 2, 1]).sub(&h.c_gen(1)));
    }
    if n >= 2 {
        gens.push(h.c_word(&[1, 0, 1]).sub(&h.c_gen(1).scale(&two_q_over_q())));
    }
    gens
}

/// Result of checking that `span{C_w : w not in W_b}` is the ideal generated by `J_n`'s generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealReport {
    pub n: usize,
    pub group_order: usize,
    pub complement_size: usize,
    pub closed_left: bool,
    pub closed_right: bool,
    pub contains_generators: bool,
    pub corank: usize,
    pub expected_corank: u64,
    /// Dimension of the two-sided ideal generated by the generators, computed modulo a prime.
    pub generated_rank: usize,
}

impl IdealReport {
    pub fn holds(&self) -> bool {
        self.closed_left
            && self.closed_right
            && self.contains_generators
            && self.corank as u64 == self.expected_corank
            && self.generated_rank == self.complement_size
    }
}

/// Membership in `span{C_w : w not in W_b}`.
pub fn in_ideal(basis: &KLBasis<SignedPermutation>, x: &HeckeElement) -> bool {
    basis.to_c_basis(x).keys().all(|&y| !basis.table().elements[y].is_in_wb_by_words())
}

pub fn ideal_check(basis: &KLBasis<SignedPermutation>) -> IdealReport {
    let h = &basis.hecke;
    let t = basis.table();
    let n = t.rank;
    let outside: Vec<usize> = (0..t.len()).filter(|&w| !t.elements[w].is_in_wb_by_words()).collect();
    let is_out = |y: &usize| !t.elements[*y].is_in_wb_by_words();
    let mut closed_left = true;
    let mut closed_right = true;
    for &w in &outside {
        for s in 0..n {
            closed_left &= basis.to_c_basis(&h.left_c(s, &basis.c[w])).keys().all(is_out);
            closed_right &= basis.to_c_basis(&h.right_c(&basis.c[w], s)).keys().all(is_out);
        }
    }
    let gens = jn_generators(h);
    let contains_generators = gens.iter().all(|g| in_ideal(basis, g));
    let expected: u64 = (0..=n).map(|i| crate::binomial(n, i).pow(2)).sum();
    IdealReport {
        n,
        group_order: t.len(),
        complement_size: outside.len(),
        closed_left,
        closed_right,
        contains_generators,
        corank: t.len() - outside.len(),
        expected_corank: expected,
        generated_rank: generated_ideal_rank(h, &gens),
    }
}

const PRIME: u64 = 4_294_967_291;
const EVAL_POINT: u64 = 7_919;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= PRIME;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, PRIME - 2)
}

fn eval_mod(p: &LaurentPoly) -> u64 {
    let vinv = inv_mod(EVAL_POINT);
    p.terms().fold(0, |acc, (e, c)| {
        let base = if e >= 0 { pow_mod(EVAL_POINT, e as u64) } else { pow_mod(vinv, (-e) as u64) };
        let c = c.rem_euclid(PRIME as i64) as u64;
        (acc + c * base % PRIME) % PRIME
    })
}

/// Dimension over `F_p` (with `v` evaluated at a fixed point) of the two-sided ideal generated by `gens`.
/// Specialization can only lower the rank, so this is a lower bound for the generic rank.
fn generated_ideal_rank<E: CoxeterElement>(h: &Hecke<E>, gens: &[HeckeElement]) -> usize {
    let t = &h.table;
    let size = t.len();
    let q: Vec<u64> = (0..t.rank).map(|s| eval_mod(&h.param(s))).collect();
    let gap: Vec<u64> = (0..t.rank).map(|s| (q[s] + PRIME - inv_mod(q[s])) % PRIME).collect();
    let mul_c = |x: &[u64], s: usize, left: bool| -> Vec<u64> {
        let table = if left { &t.left } else { &t.right };
        let mut y = vec![0u64; size];
        for (w, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let sw = table[w][s];
            y[sw] = (y[sw] + a) % PRIME;
            if t.length[sw] < t.length[w] {
                y[w] = (y[w] + a * gap[s]) % PRIME;
            }
            y[w] = (y[w] + PRIME - a * q[s] % PRIME) % PRIME;
        }
        y
    };
    let mut echelon: Vec<(usize, Vec<u64>)> = Vec::new();
    let reduce = |mut x: Vec<u64>, echelon: &mut Vec<(usize, Vec<u64>)>| -> bool {
        for (p, row) in echelon.iter() {
            let f = x[*p];
            if f != 0 {
                for (xi, ri) in x.iter_mut().zip(row) {
                    *xi = (*xi + PRIME - f * ri % PRIME) % PRIME;
                }
            }
        }
        let Some(p) = x.iter().position(|&a| a != 0) else {
            return false;
        };
        let inv = inv_mod(x[p]);
        for xi in x.iter_mut() {
            *xi = *xi * inv % PRIME;
        }
        for (_, row) in echelon.iter_mut() {
            let f = row[p];
            if f != 0 {
                for (ri, xi) in row.iter_mut().zip(&x) {
                    *ri = (*ri + PRIME - f * xi % PRIME) % PRIME;
                }
            }
        }
        echelon.push((p, x));
        true
    };
    let mut queue: Vec<Vec<u64>> = Vec::new();
    for g in gens {
        let mut x = vec![0u64; size];
        for (&w, c) in g.terms() {
            x[w] = eval_mod(c);
        }
        if reduce(x.clone(), &mut echelon) {
            queue.push(x);
        }
    }
    while let Some(x) = queue.pop() {
        for s in 0..t.rank {
            for left in [true, false] {
                let y = mul_c(&x, s, left);
                if reduce(y.clone(), &mut echelon) {
                    queue.push(y);
                }
            }
        }
    }
    echelon.len()
}

/// The left action of the generators on a left cell, modulo lower cells.
#[derive(Debug, Clone)]
pub struct CellModule {
    pub cell: Vec<SignedPermutation>,
    /// `actions[s]` has entry `(i, j)` equal to the coefficient of `C_{cell[i]}` in `C_s C_{cell[j]}`.
    pub actions: Vec<Matrix<LaurentPoly>>,
}

impl CellModule {
    pub fn dim(&self) -> usize {
        self.cell.len()
    }

    /// `Q(Sh(w))` for the cell's elements, as a blob weight `a - b`.
    pub fn shape(&self) -> Partition {
        domino_shape(&self.cell[0])
    }
}

/// The cell module of the left cell containing `w`, for `w` in `W_b`.
pub fn cell_module(basis: &KLBasis<SignedPermutation>, w: &SignedPermutation) -> Result<CellModule> {
    if !w.is_in_wb_by_words() {
        return Err(Error::NotInWb);
    }
    let t = basis.table();
    let wi = *t.index.get(w).ok_or(Error::SizeMismatch(w.n(), t.rank))?;
    let cell = basis.left_cells().into_iter().find(|c| c.contains(&wi)).expect("cells partition the group");
    Ok(cell_module_of(basis, &cell))
}

pub fn cell_module_of(basis: &KLBasis<SignedPermutation>, cell: &[usize]) -> CellModule {
    let pos: BTreeMap<usize, usize> = cell.iter().enumerate().map(|(i, &y)| (y, i)).collect();
    let d = cell.len();
    let actions = (0..basis.hecke.rank())
        .map(|s| {
            let mut m = Matrix::zeros(d, d, &LaurentPoly::zero());
            for (j, &z) in cell.iter().enumerate() {
                for (y, a) in basis.left_structure(s, z) {
                    if let Some(&i) = pos.get(&y) {
                        m.set(i, j, a);
                    }
                }
            }
            m
        })
        .collect();
    CellModule { cell: cell.iter().map(|&i| basis.table().elements[i].clone()).collect(), actions }
}

/// A failure of the implication `N != 0 => Ñ != 0` for the structure constants of `C_{s_{n-1}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferViolation {
    pub w: SignedPermutation,
    pub z: SignedPermutation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeAReport {
    pub n: usize,
    pub pairs_checked: usize,
    pub violations: Vec<TransferViolation>,
    pub cells_checked: usize,
    /// Left cells inside `W_b` that are not the trace of a type-A left cell.
    pub cell_mismatches: Vec<Vec<SignedPermutation>>,
}

impl TypeAReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.cell_mismatches.is_empty()
    }
}

/// Positions of `ι(w)` as a permutation of `0..2n`.
fn iota_perm(w: &SignedPermutation) -> Perm {
    Perm(w.iota().to_positions())
}

/// Compares the structure constants of `C_{s_{n-1}}` on `W_b` with those of its image in `S_{2n}`.
pub fn type_a_kl_compare(n: usize) -> Result<TypeAReport> {
    let bound = crate::max_n(3);
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    if n < 2 {
        return Ok(TypeAReport { n, pairs_checked: 0, violations: vec![], cells_checked: 0, cell_mismatches: vec![] });
    }
    let b = KLBasis::compute(type_b_hecke(n))?;
    let a = KLBasis::compute(Hecke::new(coxeter::type_a(2 * n)))?;
    let ta = a.table();
    // ι(s_{n-1}) is the product of the commuting reflections at positions (2n-2, 2n-1) and (0, 1).
    let (sa, sb) = (2 * n - 2, 0);
    let tb = b.table();
    let mut violations = Vec::new();
    let mut pairs = 0;
    for w in 0..tb.len() {
        let wp = &tb.elements[w];
        if !wp.is_in_wb_by_words() {
            continue;
        }
        let nb = b.left_structure(n - 1, w);
        let wa = ta.index[&iota_perm(wp)];
        let prod = a.hecke.left_c(sa, &a.hecke.left_c(sb, &a.c[wa]));
        let na = a.to_c_basis(&prod);
        for (z, coeff) in nb {
            pairs += 1;
            let za = ta.index[&iota_perm(&tb.elements[z])];
            if !coeff.is_zero() && na.get(&za).is_none_or(|c| c.is_zero()) {
                violations.push(TransferViolation { w: wp.clone(), z: tb.elements[z].clone() });
            }
        }
    }
    let a_cells = a.left_cells();
    let mut cell_of = vec![0; ta.len()];
    for (k, c) in a_cells.iter().enumerate() {
        for &x in c {
            cell_of[x] = k;
        }
    }
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for cell in b.left_cells() {
        if !tb.elements[cell[0]].is_in_wb_by_words() {
            continue;
        }
        checked += 1;
        let k = cell_of[ta.index[&iota_perm(&tb.elements[cell[0]])]];
        let mut trace: Vec<usize> = a_cells[k]
            .iter()
            .filter_map(|&x| {
                let p = &ta.elements[x].0;
                // Signed permutations are the permutations commuting with k -> -k.
                let m = 2 * n;
                (0..m).all(|i| p[m - 1 - i] == m - 1 - p[i]).then(|| {
                    let window = (0..n)
                        .map(|k| {
                            let img = p[n + k];
                            if img >= n {
                                (img - n + 1) as i32
                            } else {
                                -((n - img) as i32)
                            }
                        })
                        .collect();
                    tb.index[&SignedPermutation::new(window).expect("valid window")]
                })
            })
            .collect();
        trace.sort_unstable();
        if trace != cell {
            mismatches.push(cell.iter().map(|&i| tb.elements[i].clone()).collect());
        }
    }
    Ok(TypeAReport { n, pairs_checked: pairs, violations, cells_checked: checked, cell_mismatches: mismatches })
}
