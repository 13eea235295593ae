//! Dense matrices over the exact scalar types, shared by the module
//! constructions in `blob` and `hecke`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::laurent::{CycloFieldExt, CycloNumber, LaurentPoly};

/// A commutative ring whose elements know how to build `0` and `1` of their own kind.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_r(&self, o: &Self) -> Self;
    fn sub_r(&self, o: &Self) -> Self;
    fn mul_r(&self, o: &Self) -> Self;
    fn neg_r(&self) -> Self;
    fn from_int_like(&self, c: i64) -> Self;
}

pub trait Field: Ring {
    fn inv_r(&self) -> Option<Self>;
}

impl Ring for LaurentPoly {
    fn zero_like(&self) -> Self {
        LaurentPoly::zero()
    }
    fn one_like(&self) -> Self {
        LaurentPoly::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_r(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_r(&self) -> Self {
        -self
    }
    fn from_int_like(&self, c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl Ring for CycloNumber {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_r(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_r(&self) -> Self {
        -self
    }
    fn from_int_like(&self, c: i64) -> Self {
        self.field().from_int(c)
    }
}

impl Field for CycloNumber {
    fn inv_r(&self) -> Option<Self> {
        self.inv()
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_r(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_r(&self) -> Self {
        -self
    }
    fn from_int_like(&self, c: i64) -> Self {
        BigRational::from_integer(c.into())
    }
}

impl Field for BigRational {
    fn inv_r(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

/// Row-major dense matrix. `proto` is a sample scalar used to create zeros.
#[derive(Clone, PartialEq)]
pub struct Matrix<S: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
    proto: S,
}

impl<S: Ring> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize, proto: &S) -> Self {
        let z = proto.zero_like();
        Self { rows, cols, data: vec![z.clone(); rows * cols], proto: z }
    }

    pub fn identity(n: usize, proto: &S) -> Self {
        let mut m = Self::zeros(n, n, proto);
        for i in 0..n {
            m.set(i, i, proto.one_like());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn proto(&self) -> &S {
        &self.proto
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: S) {
        self.data[r * self.cols + c] = x;
    }

    pub fn add_at(&mut self, r: usize, c: usize, x: &S) {
        let k = r * self.cols + c;
        self.data[k] = self.data[k].add_r(x);
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix dimension mismatch");
        let mut out = Self::zeros(self.rows, o.cols, &self.proto);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero_elem() {
                        out.add_at(i, j, &a.mul_r(b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.add_r(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.sub_r(b))
    }

    fn zip(&self, o: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix dimension mismatch");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect();
        Self { rows: self.rows, cols: self.cols, data, proto: self.proto.clone() }
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|a| a.mul_r(s))
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        let data: Vec<T> = self.data.iter().map(&f).collect();
        Matrix { rows: self.rows, cols: self.cols, data, proto: f(&self.proto).zero_like() }
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(self.proto.zero_like(), |acc, i| acc.add_r(self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero_elem())
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

impl<S: Field> Matrix<S> {
    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero_elem()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv_r().expect("nonzero pivot");
            for j in 0..self.cols {
                let x = self.get(r, j).mul_r(&inv);
                self.set(r, j, x);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero_elem() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in 0..self.cols {
                    let x = self.get(i, j).sub_r(&f.mul_r(self.get(r, j)));
                    self.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Columns indexed by `cols` as a new matrix.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len(), &self.proto);
        for i in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                out.set(i, k, self.get(i, c).clone());
            }
        }
        out
    }

    /// Solves `self * X = rhs` for a matrix `self` with independent columns.
    /// Returns `None` if some column of `rhs` is outside the column space.
    pub fn solve_columns(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let k = self.cols;
        let mut aug = Self::zeros(self.rows, k + rhs.cols, &self.proto);
        for i in 0..self.rows {
            for j in 0..k {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                aug.set(i, k + j, rhs.get(i, j).clone());
            }
        }
        let pivots = aug.rref();
        if pivots.len() != k || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        // Rows below k must vanish in the right-hand block.
        for i in k..self.rows {
            if (0..rhs.cols).any(|j| !aug.get(i, k + j).is_zero_elem()) {
                return None;
            }
        }
        let mut out = Self::zeros(k, rhs.cols, &self.proto);
        for i in 0..k {
            for j in 0..rhs.cols {
                out.set(i, j, aug.get(i, k + j).clone());
            }
        }
        Some(out)
    }
}

impl<S: Ring> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
