//! Dense linear algebra over exact fields.
//!
//! Every field in the crate (prime fields, their extensions, subfields represented
//! inside an extension, and the residue fields `E_ĥ`) implements [`FieldOps`]; the
//! routines here only ever combine elements with those operations, so elimination
//! over a subfield whose elements are stored in a larger field stays in the subfield.

use std::fmt::Debug;
use std::hash::Hash;

/// Context object for exact field arithmetic.
pub trait FieldOps: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_int(&self, v: i64) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_cols(cols: Vec<Vec<T>>, rows: usize) -> Self {
        let c = cols.len();
        let mut data = Vec::with_capacity(rows * c);
        for i in 0..rows {
            for col in &cols {
                data.push(col[i].clone());
            }
        }
        Matrix {
            rows,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn zeros<F: FieldOps<Elem = T>>(ops: &F, rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, ops.zero())
    }

    pub fn identity<F: FieldOps<Elem = T>>(ops: &F, n: usize) -> Self {
        let mut m = Matrix::zeros(ops, n, n);
        for i in 0..n {
            m.set(i, i, ops.one());
        }
        m
    }
}

pub fn mat_mul<F: FieldOps>(ops: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "matrix product shape");
    let mut out = Matrix::zeros(ops, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if ops.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let v = ops.add(out.get(i, j), &ops.mul(aik, b.get(k, j)));
                out.set(i, j, v);
            }
        }
    }
    out
}

pub fn mat_add<F: FieldOps>(ops: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a
            .data
            .iter()
            .zip(&b.data)
            .map(|(x, y)| ops.add(x, y))
            .collect(),
    }
}

pub fn mat_sub<F: FieldOps>(ops: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a
            .data
            .iter()
            .zip(&b.data)
            .map(|(x, y)| ops.sub(x, y))
            .collect(),
    }
}

pub fn mat_scale<F: FieldOps>(ops: &F, c: &F::Elem, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    a.map(|x| ops.mul(c, x))
}

pub fn mat_vec<F: FieldOps>(ops: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|i| {
            a.row(i)
                .iter()
                .zip(v)
                .fold(ops.zero(), |acc, (x, y)| ops.add(&acc, &ops.mul(x, y)))
        })
        .collect()
}

pub fn is_zero_matrix<F: FieldOps>(ops: &F, a: &Matrix<F::Elem>) -> bool {
    a.data.iter().all(|x| ops.is_zero(x))
}

/// Reduces `m` to reduced row echelon form in place and returns the pivot columns.
pub fn rref<F: FieldOps>(ops: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !ops.is_zero(m.get(i, c))) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = ops.inv(m.get(r, c)).expect("nonzero pivot");
        for j in c..m.cols {
            let v = ops.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c).clone();
            if ops.is_zero(&factor) {
                continue;
            }
            for j in c..m.cols {
                let v = ops.sub(m.get(i, j), &ops.mul(&factor, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: FieldOps>(ops: &F, m: &Matrix<F::Elem>) -> usize {
    let mut work = m.clone();
    rref(ops, &mut work).len()
}

/// Basis of the right kernel `{v : m v = 0}`.
pub fn kernel<F: FieldOps>(ops: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut work = m.clone();
    let pivots = rref(ops, &mut work);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![ops.zero(); m.cols];
            v[fc] = ops.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = ops.neg(work.get(r, fc));
            }
            v
        })
        .collect()
}

pub fn inverse<F: FieldOps>(ops: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    let mut aug = Matrix::zeros(ops, n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, ops.one());
    }
    let pivots = rref(ops, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut out = Matrix::zeros(ops, n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, aug.get(i, n + j).clone());
        }
    }
    Some(out)
}

pub fn det<F: FieldOps>(ops: &F, m: &Matrix<F::Elem>) -> F::Elem {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a = m.clone();
    let mut d = ops.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !ops.is_zero(a.get(i, c))) else {
            return ops.zero();
        };
        if p != c {
            a.swap_rows(p, c);
            d = ops.neg(&d);
        }
        let piv = a.get(c, c).clone();
        d = ops.mul(&d, &piv);
        let inv = ops.inv(&piv).expect("nonzero pivot");
        for i in c + 1..n {
            let factor = ops.mul(a.get(i, c), &inv);
            if ops.is_zero(&factor) {
                continue;
            }
            for j in c..n {
                let v = ops.sub(a.get(i, j), &ops.mul(&factor, a.get(c, j)));
                a.set(i, j, v);
            }
        }
    }
    d
}

/// Solves `W y = x` for a fixed `W` of full column rank.
///
/// The row operations bringing `W` to echelon form are recorded once, so each
/// solve is a single matrix-vector product plus a consistency check.
#[derive(Clone, Debug)]
pub struct LinearSolver<F: FieldOps> {
    ops: F,
    transform: Matrix<F::Elem>,
    unknowns: usize,
}

impl<F: FieldOps> LinearSolver<F> {
    /// Returns `None` when the columns of `w` are linearly dependent.
    pub fn new(ops: &F, w: &Matrix<F::Elem>) -> Option<Self> {
        let n = w.rows;
        let c = w.cols;
        let mut aug = Matrix::zeros(ops, n, c + n);
        for i in 0..n {
            for j in 0..c {
                aug.set(i, j, w.get(i, j).clone());
            }
            aug.set(i, c + i, ops.one());
        }
        // Only eliminate on the W block.
        let pivots = rref_prefix(ops, &mut aug, c);
        if pivots.len() != c || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return None;
        }
        let mut transform = Matrix::zeros(ops, n, n);
        for i in 0..n {
            for j in 0..n {
                transform.set(i, j, aug.get(i, c + j).clone());
            }
        }
        Some(LinearSolver {
            ops: ops.clone(),
            transform,
            unknowns: c,
        })
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    /// `None` when `x` is not in the column span.
    pub fn solve(&self, x: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let y = mat_vec(&self.ops, &self.transform, x);
        if y[self.unknowns..].iter().any(|v| !self.ops.is_zero(v)) {
            return None;
        }
        Some(y[..self.unknowns].to_vec())
    }
}

fn rref_prefix<F: FieldOps>(ops: &F, m: &mut Matrix<F::Elem>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !ops.is_zero(m.get(i, c))) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = ops.inv(m.get(r, c)).expect("nonzero pivot");
        for j in 0..m.cols {
            let v = ops.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c).clone();
            if ops.is_zero(&factor) {
                continue;
            }
            for j in 0..m.cols {
                let v = ops.sub(m.get(i, j), &ops.mul(&factor, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Incrementally maintained echelon basis; used for greedy span tests.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: FieldOps> {
    ops: F,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: FieldOps> EchelonBasis<F> {
    pub fn new(ops: &F) -> Self {
        EchelonBasis {
            ops: ops.clone(),
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if self.ops.is_zero(&w[*p]) {
                continue;
            }
            let factor = w[*p].clone();
            for (wi, ri) in w.iter_mut().zip(row) {
                *wi = self.ops.sub(wi, &self.ops.mul(&factor, ri));
            }
        }
        w
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.ops.is_zero(x))
    }

    /// Adds `v`; returns `false` (and leaves the basis unchanged) if it was dependent.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !self.ops.is_zero(x)) else {
            return false;
        };
        let inv = self.ops.inv(&w[p]).expect("nonzero");
        let w: Vec<_> = w.iter().map(|x| self.ops.mul(x, &inv)).collect();
        self.rows.push((p, w));
        true
    }
}
