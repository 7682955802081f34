//! Exact linear algebra over a prime field GF(p).
//!
//! Residues are plain `u32` values in `[0, p)`; every routine takes the
//! field context explicitly so no object ever mixes characteristics.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not an odd prime below 65536")]
    BadModulus(u32),
}

/// The prime field GF(p), p odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Fp, FieldError> {
        if !(3..1 << 16).contains(&p) || p.is_multiple_of(2) || (3..).step_by(2).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(FieldError::BadModulus(p));
        }
        Ok(Fp { p })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a % self.p, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in GF({})", self.p);
        self.pow(a, u64::from(self.p) - 2)
    }

    pub fn div(self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    /// The inverse of 2, i.e. (p+1)/2.
    pub fn half(self) -> u32 {
        self.p.div_ceil(2)
    }

    /// Reduce a signed integer.
    pub fn from_i64(self, a: i64) -> u32 {
        a.rem_euclid(i64::from(self.p)) as u32
    }

    /// Signed representative in (-p/2, p/2], handy for display.
    pub fn signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            i64::from(a) - i64::from(self.p)
        } else {
            i64::from(a)
        }
    }

    pub fn is_square(self, a: u32) -> bool {
        a == 0 || self.pow(a, u64::from((self.p - 1) / 2)) == 1
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

// ---------------------------------------------------------------------------
// vector helpers

#[inline]
pub fn axpy(f: Fp, y: &mut [u32], a: u32, x: &[u32]) {
    if a == 0 {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        if xi != 0 {
            *yi = (*yi + a * xi) % f.p;
        }
    }
}

pub fn scale(f: Fp, x: &mut [u32], a: u32) {
    for xi in x.iter_mut() {
        *xi = f.mul(*xi, a);
    }
}

pub fn dot(f: Fp, x: &[u32], y: &[u32]) -> u32 {
    let mut acc: u64 = 0;
    for (&a, &b) in x.iter().zip(y) {
        acc += u64::from(a * b);
    }
    (acc % u64::from(f.p)) as u32
}

pub fn add_vec(f: Fp, x: &[u32], y: &[u32]) -> Vec<u32> {
    x.iter().zip(y).map(|(&a, &b)| f.add(a, b)).collect()
}

pub fn sub_vec(f: Fp, x: &[u32], y: &[u32]) -> Vec<u32> {
    x.iter().zip(y).map(|(&a, &b)| f.sub(a, b)).collect()
}

pub fn is_zero(x: &[u32]) -> bool {
    x.iter().all(|&a| a == 0)
}

pub fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

// ---------------------------------------------------------------------------
// sparse vectors

/// Sorted `(index, nonzero coefficient)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    pub entries: Vec<(u32, u32)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_dense(v: &[u32]) -> Self {
        SparseVec {
            entries: v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i as u32, c)).collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<u32> {
        let mut v = vec![0; n];
        for &(i, c) in &self.entries {
            v[i as usize] = c;
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> u32 {
        match self.entries.binary_search_by_key(&(i as u32), |e| e.0) {
            Ok(k) => self.entries[k].1,
            Err(_) => 0,
        }
    }

    pub fn scaled(&self, f: Fp, a: u32) -> SparseVec {
        if a == 0 {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|&(i, c)| (i, f.mul(c, a))).collect() }
    }

    /// `out += a * self`, out dense.
    #[inline]
    pub fn add_into(&self, f: Fp, out: &mut [u32], a: u32) {
        if a == 0 {
            return;
        }
        for &(i, c) in &self.entries {
            let o = &mut out[i as usize];
            *o = (*o + a * c) % f.p;
        }
    }
}

/// Square or rectangular operator stored column by column: `cols[j]` is the
/// image of the j-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix { rows, cols: vec![SparseVec::new(); cols] }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> SparseMatrix {
        debug_assert!(cols.iter().all(|c| c.entries.last().is_none_or(|e| (e.0 as usize) < rows)));
        SparseMatrix { rows, cols }
    }

    pub fn from_dense(m: &Matrix) -> SparseMatrix {
        SparseMatrix { rows: m.rows(), cols: (0..m.cols()).map(|j| SparseVec::from_dense(&m.column(j))).collect() }
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols.len());
        for (j, c) in self.cols.iter().enumerate() {
            for &(i, v) in &c.entries {
                m.set(i as usize, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.cols[j].get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn apply(&self, f: Fp, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.rows];
        self.apply_into(f, v, &mut out, 1);
        out
    }

    /// `out += a * self(v)`
    pub fn apply_into(&self, f: Fp, v: &[u32], out: &mut [u32], a: u32) {
        for (c, &x) in self.cols.iter().zip(v) {
            if x != 0 {
                c.add_into(f, out, f.mul(a, x));
            }
        }
    }

    pub fn apply_sparse(&self, f: Fp, v: &SparseVec) -> Vec<u32> {
        let mut out = vec![0; self.rows];
        for &(j, x) in &v.entries {
            self.cols[j as usize].add_into(f, &mut out, x);
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut out = vec![Vec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for &(i, v) in &c.entries {
                out[i as usize].push((j as u32, v));
            }
        }
        SparseMatrix { rows: self.cols.len(), cols: out.into_iter().map(|entries| SparseVec { entries }).collect() }
    }

    /// `self ∘ other`
    pub fn mul(&self, f: Fp, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols.len(), other.rows, "operator composition shape mismatch");
        let mut acc = vec![0u32; self.rows];
        let cols = other
            .cols
            .iter()
            .map(|c| {
                for &(k, x) in &c.entries {
                    self.cols[k as usize].add_into(f, &mut acc, x);
                }
                let v = SparseVec::from_dense(&acc);
                for &(i, _) in &v.entries {
                    acc[i as usize] = 0;
                }
                v
            })
            .collect();
        SparseMatrix { rows: self.rows, cols }
    }

    pub fn lin_comb(f: Fp, rows: usize, ncols: usize, terms: &[(u32, &SparseMatrix)]) -> SparseMatrix {
        let mut acc = vec![0u32; rows];
        let cols = (0..ncols)
            .map(|j| {
                for &(a, m) in terms {
                    m.cols[j].add_into(f, &mut acc, a);
                }
                let v = SparseVec::from_dense(&acc);
                for &(i, _) in &v.entries {
                    acc[i as usize] = 0;
                }
                v
            })
            .collect();
        SparseMatrix { rows, cols }
    }

    pub fn commutator(&self, f: Fp, other: &SparseMatrix) -> SparseMatrix {
        let ab = self.mul(f, other);
        let ba = other.mul(f, self);
        SparseMatrix::lin_comb(f, self.rows, self.cols.len(), &[(1, &ab), (f.neg(1), &ba)])
    }

    pub fn scaled(&self, f: Fp, a: u32) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: self.cols.iter().map(|c| c.scaled(f, a)).collect() }
    }

    /// Row-major flattening, matching `Matrix::as_slice`.
    pub fn flatten(&self) -> Vec<u32> {
        let n = self.cols.len();
        let mut out = vec![0; self.rows * n];
        for (j, c) in self.cols.iter().enumerate() {
            for &(i, v) in &c.entries {
                out[i as usize * n + j] = v;
            }
        }
        out
    }

    pub fn from_flat(rows: usize, cols: usize, flat: &[u32]) -> SparseMatrix {
        SparseMatrix::from_dense(&Matrix::from_flat(rows, cols, flat.to_vec()))
    }

    pub fn trace(&self, f: Fp) -> u32 {
        (0..self.cols.len().min(self.rows)).fold(0, |acc, i| f.add(acc, self.get(i, i)))
    }
}

// ---------------------------------------------------------------------------
// dense matrices

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(n: usize, c: u32) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<u32>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "flat data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Matrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, cols: &[Vec<u32>]) -> Matrix {
        let mut m = Matrix::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m.data[i * cols.len() + j] = c[i];
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[u32] {
        &self.data
    }

    pub fn into_flat(self) -> Vec<u32> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, f: Fp, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = u64::from(a);
                for (s, &b) in acc.iter_mut().zip(other.row(k)) {
                    *s += a * u64::from(b);
                }
            }
            for (o, &s) in out.row_mut(i).iter_mut().zip(&acc) {
                *o = (s % u64::from(f.p)) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, f: Fp, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows).map(|i| dot(f, self.row(i), v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, f: Fp, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.rows, v.len(), "vector-matrix shape mismatch");
        let mut out = vec![0; self.cols];
        for (i, &c) in v.iter().enumerate() {
            axpy(f, &mut out, c, self.row(i));
        }
        out
    }

    pub fn add(&self, f: Fp, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: add_vec(f, &self.data, &other.data) }
    }

    pub fn sub(&self, f: Fp, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: sub_vec(f, &self.data, &other.data) }
    }

    pub fn scaled(&self, f: Fp, c: u32) -> Matrix {
        let mut m = self.clone();
        scale(f, &mut m.data, c);
        m
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, f: Fp, c: u32, other: &Matrix) {
        axpy(f, &mut self.data, c, &other.data);
    }

    pub fn commutator(&self, f: Fp, other: &Matrix) -> Matrix {
        self.mul(f, other).sub(f, &other.mul(f, self))
    }

    pub fn trace(&self, f: Fp) -> u32 {
        (0..self.rows.min(self.cols)).fold(0, |acc, i| f.add(acc, self.get(i, i)))
    }

    pub fn rank(&self, f: Fp) -> usize {
        rref(f, self).1.len()
    }
}

/// Reduced row echelon form and pivot columns. Pivots are the first nonzero
/// entry found scanning rows in order.
pub fn rref(f: Fp, m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a.get(i, c) != 0) else { continue };
        if pr != r {
            for j in 0..cols {
                a.data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(a.get(r, c));
        scale(f, a.row_mut(r), inv);
        let pivot_row = a.row(r).to_vec();
        for i in 0..rows {
            if i != r {
                let x = a.get(i, c);
                if x != 0 {
                    axpy(f, a.row_mut(i), f.neg(x), &pivot_row);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Rank and right kernel `{v : m v = 0}`.
pub fn rank_kernel(f: Fp, m: &Matrix) -> (usize, Subspace) {
    let (red, pivots) = rref(f, m);
    let cols = m.cols;
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut kernel = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = f.neg(red.get(r, free));
        }
        kernel.push(v);
    }
    (pivots.len(), Subspace::from_vectors(f, cols, kernel))
}

/// Some `x` with `m x = b`, free variables 0; `None` when inconsistent.
pub fn solve(f: Fp, m: &Matrix, b: &[u32]) -> Option<Vec<u32>> {
    assert_eq!(b.len(), m.rows, "right-hand side length mismatch");
    let aug = Matrix::from_fn(m.rows, m.cols + 1, |i, j| if j < m.cols { m.get(i, j) } else { b[i] });
    let (red, pivots) = rref(f, &aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![0; m.cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = red.get(r, m.cols);
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// subspaces

/// A subspace of `GF(p)^n` held as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace { ambient, basis: (0..ambient).map(|i| unit(ambient, i)).collect(), pivots: (0..ambient).collect() }
    }

    pub fn from_vectors(f: Fp, ambient: usize, vectors: impl IntoIterator<Item = Vec<u32>>) -> Subspace {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.insert(f, v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Reduce `v` against the basis in place.
    pub fn reduce(&self, f: Fp, v: &mut [u32]) {
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let x = v[c];
            if x != 0 {
                axpy(f, v, f.neg(x), row);
            }
        }
    }

    pub fn contains(&self, f: Fp, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        is_zero(&w)
    }

    pub fn contains_subspace(&self, f: Fp, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(f, v))
    }

    /// Coordinates relative to the echelon basis, `None` outside the span.
    pub fn coordinates(&self, f: Fp, v: &[u32]) -> Option<Vec<u32>> {
        let coords: Vec<u32> = self.pivots.iter().map(|&c| v[c]).collect();
        let mut w = v.to_vec();
        for (row, &a) in self.basis.iter().zip(&coords) {
            axpy(f, &mut w, f.neg(a), row);
        }
        is_zero(&w).then_some(coords)
    }

    /// Insert a vector, keeping the basis fully reduced and sorted by pivot.
    /// Returns whether the dimension grew.
    pub fn insert(&mut self, f: Fp, mut v: Vec<u32>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        self.reduce(f, &mut v);
        let Some(c) = v.iter().position(|&x| x != 0) else { return false };
        let inv = f.inv(v[c]);
        scale(f, &mut v, inv);
        for row in &mut self.basis {
            let x = row[c];
            if x != 0 {
                axpy(f, row, f.neg(x), &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(at, c);
        self.basis.insert(at, v);
        true
    }

    /// `{u : u·b = 0 for all basis vectors b}`.
    pub fn annihilator(&self, f: Fp) -> Subspace {
        let m = Matrix::from_rows(&self.basis);
        if self.basis.is_empty() {
            return Subspace::full(self.ambient);
        }
        rank_kernel(f, &m).1
    }

    pub fn sum(&self, f: Fp, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(f, v.clone());
        }
        s
    }

    pub fn intersect(&self, f: Fp, other: &Subspace) -> Subspace {
        // U ∩ W = ann(ann U + ann W)
        self.annihilator(f).sum(f, &other.annihilator(f)).annihilator(f)
    }
}

/// A span together with a basis chosen greedily (in input order) from the
/// input vectors, and coordinates with respect to that chosen basis.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    space: Subspace,
    selected: Vec<usize>,
    vectors: Vec<Vec<u32>>,
    // row k of the echelon basis equals sum_l transform[k][l] * vectors[l]
    transform: Vec<Vec<u32>>,
}

impl SpanBasis {
    pub fn new(ambient: usize) -> SpanBasis {
        SpanBasis { space: Subspace::zero(ambient), selected: Vec::new(), vectors: Vec::new(), transform: Vec::new() }
    }

    /// Offer the next input vector (with its input index); keeps it when
    /// independent of those selected so far.
    pub fn offer(&mut self, f: Fp, index: usize, v: &[u32]) -> bool {
        let r = self.vectors.len();
        let mut w = v.to_vec();
        let mut t = vec![0; r + 1];
        t[r] = 1;
        for ((row, &c), tr) in self.space.basis.iter().zip(&self.space.pivots).zip(&self.transform) {
            let x = w[c];
            if x != 0 {
                let nx = f.neg(x);
                axpy(f, &mut w, nx, row);
                axpy(f, &mut t[..r], nx, tr);
            }
        }
        let Some(c) = w.iter().position(|&x| x != 0) else { return false };
        let inv = f.inv(w[c]);
        scale(f, &mut w, inv);
        scale(f, &mut t, inv);
        for tr in &mut self.transform {
            tr.push(0);
        }
        for (row, tr) in self.space.basis.iter_mut().zip(self.transform.iter_mut()) {
            let x = row[c];
            if x != 0 {
                let nx = f.neg(x);
                axpy(f, row, nx, &w);
                axpy(f, tr, nx, &t);
            }
        }
        let at = self.space.pivots.partition_point(|&q| q < c);
        self.space.pivots.insert(at, c);
        self.space.basis.insert(at, w);
        self.transform.insert(at, t);
        self.selected.push(index);
        self.vectors.push(v.to_vec());
        true
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Input indices of the chosen basis vectors.
    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn vectors(&self) -> &[Vec<u32>] {
        &self.vectors
    }

    /// Coordinates read off the pivot entries; only meaningful for members.
    pub fn coords_unchecked(&self, f: Fp, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.vectors.len()];
        for (tr, &c) in self.transform.iter().zip(&self.space.pivots) {
            axpy(f, &mut out, v[c], tr);
        }
        out
    }

    /// Linear combination of the chosen basis vectors.
    pub fn combine(&self, f: Fp, coords: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.space.ambient];
        for (v, &c) in self.vectors.iter().zip(coords) {
            axpy(f, &mut out, c, v);
        }
        out
    }

    /// Coordinates in the chosen basis, `None` when `v` is outside the span.
    pub fn coords(&self, f: Fp, v: &[u32]) -> Option<Vec<u32>> {
        let c = self.coords_unchecked(f, v);
        (self.combine(f, &c) == v).then_some(c)
    }
}

/// Greedy basis of the span in input order plus its coordinate map.
pub fn span_and_coords(f: Fp, ambient: usize, vectors: &[Vec<u32>]) -> SpanBasis {
    let mut s = SpanBasis::new(ambient);
    for (i, v) in vectors.iter().enumerate() {
        s.offer(f, i, v);
    }
    s
}

// ---------------------------------------------------------------------------
// bilinear forms

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    Alternating,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormError {
    #[error("gram matrix is not square")]
    NotSquare,
    #[error("gram matrix is not {0:?}")]
    WrongSymmetry(Symmetry),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinForm {
    gram: Matrix,
    symmetry: Symmetry,
}

impl BilinForm {
    pub fn new(f: Fp, gram: Matrix, symmetry: Symmetry) -> Result<BilinForm, FormError> {
        if gram.rows() != gram.cols() {
            return Err(FormError::NotSquare);
        }
        let n = gram.rows();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (gram.get(i, j), gram.get(j, i));
                let ok = match symmetry {
                    Symmetry::Symmetric => a == b,
                    Symmetry::Alternating => a == f.neg(b) && (i != j || a == 0),
                };
                if !ok {
                    return Err(FormError::WrongSymmetry(symmetry));
                }
            }
        }
        Ok(BilinForm { gram, symmetry })
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    #[inline]
    pub fn eval_basis(&self, i: usize, j: usize) -> u32 {
        self.gram.get(i, j)
    }

    pub fn eval(&self, f: Fp, x: &[u32], y: &[u32]) -> u32 {
        let gy = self.gram.mul_vec(f, y);
        dot(f, x, &gy)
    }

    /// Row vector `x ↦ (x|·)` as a covector.
    pub fn covector(&self, f: Fp, x: &[u32]) -> Vec<u32> {
        self.gram.vec_mul(f, x)
    }

    pub fn is_zero(&self) -> bool {
        self.gram.is_zero()
    }

    pub fn is_nondegenerate(&self, f: Fp) -> bool {
        self.gram.rank(f) == self.dim()
    }
}

/// `{x : f(x, y) = 0 for all y}`.
pub fn form_radical(f: Fp, form: &BilinForm) -> Subspace {
    rank_kernel(f, &form.gram.transpose()).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> Fp {
        Fp::new(3).unwrap()
    }

    #[test]
    fn field_rejects_even_and_composite() {
        for p in [0, 1, 2, 9, 15, 65537] {
            assert!(Fp::new(p).is_err(), "{p}");
        }
        let f = Fp::new(7).unwrap();
        assert_eq!(f.half(), 4);
        assert_eq!(f.mul(f.half(), 2), 1);
        assert_eq!(f.inv(3), 5);
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn identity_and_zero_kernels() {
        let f = f3();
        let (r, k) = rank_kernel(f, &Matrix::identity(3));
        assert_eq!((r, k.dim()), (3, 0));
        let (r, k) = rank_kernel(f, &Matrix::zeros(2, 4));
        assert_eq!((r, k.dim()), (0, 4));
    }

    #[test]
    fn solve_edge_cases() {
        let f = f3();
        assert_eq!(solve(f, &Matrix::identity(3), &[1, 2, 0]), Some(vec![1, 2, 0]));
        assert_eq!(solve(f, &Matrix::zeros(2, 2), &[1, 0]), None);
        // free variables are set to zero
        let m = Matrix::from_rows(&[vec![1, 1]]);
        assert_eq!(solve(f, &m, &[2]), Some(vec![2, 0]));
    }

    #[test]
    fn greedy_coordinates() {
        let f = f3();
        let s = span_and_coords(f, 2, &[vec![1, 0], vec![1, 1]]);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.coords(f, &[0, 1]), Some(vec![2, 1]));
        let s = span_and_coords(f, 2, &[vec![1, 2], vec![1, 2]]);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.selected(), &[0]);
        assert_eq!(s.coords(f, &[0, 1]), None);
    }

    #[test]
    fn subspace_insert_keeps_rref() {
        let f = Fp::new(5).unwrap();
        let mut s = Subspace::zero(3);
        assert!(s.insert(f, vec![0, 2, 4]));
        assert!(s.insert(f, vec![3, 1, 0]));
        assert!(!s.insert(f, vec![3, 3, 4]));
        assert_eq!(s.pivots(), &[0, 1]);
        for (row, &c) in s.basis().iter().zip(s.pivots()) {
            assert_eq!(row[c], 1);
        }
        assert_eq!(s.basis()[0][1], 0);
    }

    #[test]
    fn radical_of_forms() {
        let f = f3();
        let g = BilinForm::new(f, Matrix::from_rows(&[vec![0, 1], vec![2, 0]]), Symmetry::Alternating).unwrap();
        assert_eq!(form_radical(f, &g).dim(), 0);
        let z = BilinForm::new(f, Matrix::zeros(3, 3), Symmetry::Symmetric).unwrap();
        assert_eq!(form_radical(f, &z).dim(), 3);
        assert!(BilinForm::new(f, Matrix::identity(2), Symmetry::Alternating).is_err());
    }

    #[test]
    fn intersection_and_annihilator() {
        let f = f3();
        let u = Subspace::from_vectors(f, 3, [vec![1, 0, 0], vec![0, 1, 0]]);
        let w = Subspace::from_vectors(f, 3, [vec![0, 1, 0], vec![0, 0, 1]]);
        let i = u.intersect(f, &w);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(f, &[0, 1, 0]));
        assert_eq!(u.annihilator(f).basis(), &[vec![0, 0, 1]]);
    }

    fn matrix_strategy() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0u32..3, r * c).prop_map(move |d| Matrix::from_flat(r, c, d))
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(m in matrix_strategy()) {
            let f = f3();
            prop_assert_eq!(m.rank(f), m.transpose().rank(f));
        }

        #[test]
        fn solve_recovers_image(m in matrix_strategy(), seed in proptest::collection::vec(0u32..3, 6)) {
            let f = f3();
            let x: Vec<u32> = seed.into_iter().take(m.cols()).chain(std::iter::repeat(0)).take(m.cols()).collect();
            let b = m.mul_vec(f, &x);
            let y = solve(f, &m, &b).expect("consistent system");
            prop_assert_eq!(m.mul_vec(f, &y), b);
        }

        #[test]
        fn kernel_vectors_are_annihilated(m in matrix_strategy()) {
            let f = f3();
            let (r, k) = rank_kernel(f, &m);
            prop_assert_eq!(r + k.dim(), m.cols());
            for v in k.basis() {
                prop_assert!(is_zero(&m.mul_vec(f, v)));
            }
        }
    }
}
