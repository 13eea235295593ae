//! Standard domino tableaux, domino insertion on signed permutations, and
//! ordinary row insertion on words.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::weylb::SignedPermutation;

/// A cell `(row, column)`, 0-based, row 0 on top.
pub type Cell = (usize, usize);

/// Two adjacent cells; `first` is the top or left one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Domino {
    pub first: Cell,
    pub second: Cell,
}

impl Domino {
    pub fn horizontal(r: usize, c: usize) -> Self {
        Self { first: (r, c), second: (r, c + 1) }
    }

    pub fn vertical(r: usize, c: usize) -> Self {
        Self { first: (r, c), second: (r + 1, c) }
    }

    pub fn from_cells(a: Cell, b: Cell) -> Result<Self> {
        let (first, second) = if a <= b { (a, b) } else { (b, a) };
        let adjacent = (first.0 == second.0 && first.1 + 1 == second.1)
            || (first.1 == second.1 && first.0 + 1 == second.0);
        if !adjacent {
            return Err(Error::InvalidTableau(format!("cells {a:?} and {b:?} are not adjacent")));
        }
        Ok(Self { first, second })
    }

    pub fn is_horizontal(&self) -> bool {
        self.first.0 == self.second.0
    }

    pub fn cells(&self) -> [Cell; 2] {
        [self.first, self.second]
    }

    fn contains(&self, c: Cell) -> bool {
        self.first == c || self.second == c
    }
}

/// Row lengths of a growing Young diagram.
#[derive(Debug, Clone, Default)]
struct Rows(Vec<usize>);

impl Rows {
    fn len_of(&self, r: usize) -> usize {
        self.0.get(r).copied().unwrap_or(0)
    }

    fn height_of(&self, c: usize) -> usize {
        self.0.iter().take_while(|&&l| l > c).count()
    }

    fn covers(&self, (r, c): Cell) -> bool {
        c < self.len_of(r)
    }

    fn add(&mut self, d: &Domino) {
        for (r, c) in d.cells() {
            if self.0.len() <= r {
                self.0.resize(r + 1, 0);
            }
            self.0[r] = self.0[r].max(c + 1);
        }
    }

    fn is_partition(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    fn to_partition(&self) -> Partition {
        Partition::new(self.0.clone()).expect("rows form a partition")
    }
}

/// A domino tableau: labelled dominoes tiling a Young diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "TableauJson", into = "TableauJson")]
pub struct DominoTableau {
    dominoes: BTreeMap<usize, Domino>,
}

impl DominoTableau {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a tableau and checks that it is standard.
    pub fn new(dominoes: BTreeMap<usize, Domino>) -> Result<Self> {
        let t = Self { dominoes };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let mut rows = Rows::default();
        let mut seen = std::collections::HashSet::new();
        for (label, d) in &self.dominoes {
            for c in d.cells() {
                if !seen.insert(c) {
                    return Err(Error::InvalidTableau(format!("cell {c:?} covered twice")));
                }
            }
            // Every prefix must be a Young diagram grown by exactly the two cells of the domino.
            let before: usize = rows.0.iter().sum();
            let outside = d.cells().iter().all(|&c| !rows.covers(c));
            rows.add(d);
            let after: usize = rows.0.iter().sum();
            if !outside || after != before + 2 || !rows.is_partition() {
                return Err(Error::InvalidTableau(format!("domino {label} breaks standardness")));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.dominoes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dominoes.is_empty()
    }

    pub fn dominoes(&self) -> &BTreeMap<usize, Domino> {
        &self.dominoes
    }

    pub fn get(&self, label: usize) -> Option<&Domino> {
        self.dominoes.get(&label)
    }

    fn rows_below(&self, bound: usize) -> Rows {
        let mut rows = Rows::default();
        for d in self.dominoes.range(..bound).map(|(_, d)| d) {
            rows.add(d);
        }
        rows
    }

    pub fn shape(&self) -> Partition {
        self.rows_below(usize::MAX).to_partition()
    }

    /// Label at each cell, row by row.
    pub fn grid(&self) -> Vec<Vec<usize>> {
        let shape = self.shape();
        let mut grid: Vec<Vec<usize>> = shape.parts().iter().map(|&l| vec![0; l]).collect();
        for (&label, d) in &self.dominoes {
            for (r, c) in d.cells() {
                grid[r][c] = label;
            }
        }
        grid
    }

    /// Multi-line rendering: `[ k   k ]` for horizontal dominoes, `[ k]` stacked for vertical ones.
    pub fn render(&self) -> String {
        let shape = self.shape();
        let width = self.dominoes.keys().max().map_or(1, |m| m.to_string().len());
        let mut out = String::new();
        for (r, &len) in shape.parts().iter().enumerate() {
            let mut c = 0;
            while c < len {
                let (label, d) = self
                    .dominoes
                    .iter()
                    .find(|(_, d)| d.contains((r, c)))
                    .expect("tableau tiles its shape");
                if d.is_horizontal() {
                    out.push_str(&format!("[{label:>w$} {:>w$}]", "", w = width + 1));
                    c += 2;
                } else {
                    out.push_str(&format!("[{label:>w$}]", w = width + 1));
                    c += 1;
                }
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for DominoTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Serialize, Deserialize)]
struct TableauJson {
    shape: Partition,
    dominoes: Vec<(usize, [usize; 2], [usize; 2])>,
}

impl From<DominoTableau> for TableauJson {
    fn from(t: DominoTableau) -> Self {
        let shape = t.shape();
        let dominoes = t
            .dominoes
            .iter()
            .map(|(&l, d)| (l, [d.first.0 + 1, d.first.1 + 1], [d.second.0 + 1, d.second.1 + 1]))
            .collect();
        Self { shape, dominoes }
    }
}

impl TryFrom<TableauJson> for DominoTableau {
    type Error = Error;
    fn try_from(j: TableauJson) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (l, a, b) in j.dominoes {
            if a.contains(&0) || b.contains(&0) {
                return Err(Error::InvalidTableau("cells are 1-based".into()));
            }
            let d = Domino::from_cells((a[0] - 1, a[1] - 1), (b[0] - 1, b[1] - 1))?;
            if map.insert(l, d).is_some() {
                return Err(Error::InvalidTableau(format!("label {l} repeated")));
            }
        }
        let t = DominoTableau::new(map)?;
        if t.shape() != j.shape {
            return Err(Error::ShapeMismatch);
        }
        Ok(t)
    }
}

/// The insertion tableau and the recording tableau.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableauPair {
    #[serde(rename = "P")]
    pub p: DominoTableau,
    #[serde(rename = "Q")]
    pub q: DominoTableau,
}

/// Inserts the signed letter `x` (its label `|x|` must be absent); returns the new
/// tableau and the domino by which the shape grew.
pub fn insert_letter(t: &DominoTableau, x: i32) -> (DominoTableau, Domino) {
    let a = x.unsigned_abs() as usize;
    assert!(!t.dominoes.contains_key(&a), "label {a} already present");
    let mut out = BTreeMap::new();
    let mut rows = Rows::default();
    for (&j, d) in t.dominoes.range(..a) {
        out.insert(j, *d);
        rows.add(d);
    }
    let new = if x > 0 {
        Domino::horizontal(0, rows.len_of(0))
    } else {
        Domino::vertical(rows.height_of(0), 0)
    };
    out.insert(a, new);
    rows.add(&new);
    for (&j, d) in t.dominoes.range(a + 1..) {
        let covered = d.cells().map(|c| rows.covers(c));
        let moved = match covered {
            [false, false] => *d,
            [true, true] => {
                if d.is_horizontal() {
                    let r = d.first.0 + 1;
                    Domino::horizontal(r, rows.len_of(r))
                } else {
                    let c = d.first.1 + 1;
                    Domino::vertical(rows.height_of(c), c)
                }
            }
            _ => {
                let (r, c) = d.first;
                if d.is_horizontal() {
                    Domino::vertical(r, c + 1)
                } else {
                    Domino::horizontal(r + 1, c)
                }
            }
        };
        out.insert(j, moved);
        rows.add(&moved);
    }
    let old = t.shape();
    let grown = Rows(rows.0.clone());
    let mut added = Vec::new();
    for (r, &l) in grown.0.iter().enumerate() {
        for c in old.part(r)..l {
            added.push((r, c));
        }
    }
    debug_assert_eq!(added.len(), 2);
    let e = Domino::from_cells(added[0], added[1]).expect("shape grows by a domino");
    (DominoTableau { dominoes: out }, e)
}

/// Undoes [`insert_letter`], given the domino `e` by which the shape grew.
pub fn uninsert(p: &DominoTableau, e: Domino) -> Result<(DominoTableau, i32)> {
    let bad = || Error::InvalidTableau("reverse bumping failed".into());
    let mut e = e;
    let mut out = p.dominoes.clone();
    for (&j, &d) in p.dominoes.iter().rev() {
        let inter = d.cells().iter().filter(|c| e.contains(**c)).count();
        match inter {
            0 => {}
            2 => {
                let at_start = if d.is_horizontal() { d.first.0 == 0 } else { d.first.1 == 0 };
                if at_start {
                    out.remove(&j);
                    let x = if d.is_horizontal() { j as i32 } else { -(j as i32) };
                    return Ok((DominoTableau { dominoes: out }, x));
                }
                let rows = p.rows_below(j);
                let prev = if d.is_horizontal() {
                    let r = d.first.0 - 1;
                    let l = rows.len_of(r);
                    if l < 2 {
                        return Err(bad());
                    }
                    Domino::horizontal(r, l - 2)
                } else {
                    let c = d.first.1 - 1;
                    let h = rows.height_of(c);
                    if h < 2 {
                        return Err(bad());
                    }
                    Domino::vertical(h - 2, c)
                };
                out.insert(j, prev);
                e = prev;
            }
            _ => {
                let (prev, z, x) = if d.is_horizontal() {
                    // retained left cell, new right cell
                    if !e.contains(d.second) || d.first.0 == 0 {
                        return Err(bad());
                    }
                    let (r, c) = d.first;
                    (Domino::vertical(r - 1, c), d.second, (r - 1, c))
                } else {
                    if !e.contains(d.second) || d.first.1 == 0 {
                        return Err(bad());
                    }
                    let (r, c) = d.first;
                    (Domino::horizontal(r, c - 1), d.second, (r, c - 1))
                };
                let keep = if e.first == z { e.second } else { e.first };
                out.insert(j, prev);
                e = Domino::from_cells(keep, x)?;
            }
        }
    }
    Err(bad())
}

/// Domino insertion of the window, left to right.
pub fn domino_insert(w: &SignedPermutation) -> TableauPair {
    let mut p = DominoTableau::empty();
    let mut q = BTreeMap::new();
    for (k, &x) in w.window().iter().enumerate() {
        let (np, e) = insert_letter(&p, x);
        p = np;
        q.insert(k + 1, e);
    }
    TableauPair { p, q: DominoTableau { dominoes: q } }
}

/// The common shape of `P(w)` and `Q(w)`.
pub fn domino_shape(w: &SignedPermutation) -> Partition {
    domino_insert(w).p.shape()
}

/// The inverse of [`domino_insert`].
pub fn domino_reverse(pair: &TableauPair) -> Result<SignedPermutation> {
    let n = pair.q.len();
    if pair.p.shape() != pair.q.shape() || pair.p.len() != n {
        return Err(Error::ShapeMismatch);
    }
    for t in [&pair.p, &pair.q] {
        t.validate()?;
        if !t.dominoes.keys().copied().eq(1..=n) {
            return Err(Error::InvalidTableau("labels must be 1..n".into()));
        }
    }
    let mut p = pair.p.clone();
    let mut window = vec![0; n];
    for k in (1..=n).rev() {
        let (np, x) = uninsert(&p, pair.q.dominoes[&k])?;
        p = np;
        window[k - 1] = x;
    }
    SignedPermutation::new(window)
}

/// All standard domino tableaux with `n` dominoes, grouped by shape.
pub fn standard_domino_tableaux(n: usize) -> BTreeMap<Partition, Vec<DominoTableau>> {
    fn rec(t: &mut BTreeMap<usize, Domino>, rows: &Rows, k: usize, n: usize, out: &mut Vec<BTreeMap<usize, Domino>>) {
        if k > n {
            out.push(t.clone());
            return;
        }
        let nrows = rows.0.len();
        for r in 0..=nrows {
            let l = rows.len_of(r);
            let above = if r == 0 { usize::MAX } else { rows.len_of(r - 1) };
            if l + 2 <= above {
                let d = Domino::horizontal(r, l);
                let mut nr = rows.clone();
                nr.add(&d);
                t.insert(k, d);
                rec(t, &nr, k + 1, n, out);
                t.remove(&k);
            }
            let below = rows.len_of(r + 1);
            if l == below && (r == 0 || rows.len_of(r - 1) > l) {
                let d = Domino::vertical(r, l);
                let mut nr = rows.clone();
                nr.add(&d);
                t.insert(k, d);
                rec(t, &nr, k + 1, n, out);
                t.remove(&k);
            }
        }
    }
    let mut raw = Vec::new();
    rec(&mut BTreeMap::new(), &Rows::default(), 1, n, &mut raw);
    let mut out: BTreeMap<Partition, Vec<DominoTableau>> = BTreeMap::new();
    for d in raw {
        let t = DominoTableau { dominoes: d };
        out.entry(t.shape()).or_default().push(t);
    }
    out
}

/// A standard Young tableau stored as rows of entries.
pub type YoungTableau<T> = Vec<Vec<T>>;

/// Classical row insertion on a word of distinct letters.
pub fn rsk_type_a(word: &[i32]) -> Result<(YoungTableau<i32>, YoungTableau<usize>)> {
    let mut seen = std::collections::HashSet::new();
    let mut p: YoungTableau<i32> = Vec::new();
    let mut q: YoungTableau<usize> = Vec::new();
    for (k, &x) in word.iter().enumerate() {
        if !seen.insert(x) {
            return Err(Error::DuplicateLetter(x));
        }
        let mut x = x;
        let mut r = 0;
        loop {
            if r == p.len() {
                p.push(vec![x]);
                q.push(vec![k + 1]);
                break;
            }
            match p[r].iter().position(|&y| y > x) {
                Some(i) => {
                    std::mem::swap(&mut p[r][i], &mut x);
                    r += 1;
                }
                None => {
                    p[r].push(x);
                    q[r].push(k + 1);
                    break;
                }
            }
        }
    }
    Ok((p, q))
}
