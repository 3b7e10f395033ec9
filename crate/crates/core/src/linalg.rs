//! Exact linear algebra over Q(z_l): dense matrices, sparse vectors, an
//! incremental echelon basis and a sparse solver for linear systems.
//!
//! Vectors are row vectors and matrices act on the right (`v * M`),
//! matching the right-module convention used by every module in this crate.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};

/// Sparse vector: column index -> nonzero entry.
pub type SparseVec = BTreeMap<usize, CycloNum>;

/// `v += c * w`, dropping entries that cancel.
pub fn axpy(v: &mut SparseVec, c: &CycloNum, w: &SparseVec) {
    for (&j, x) in w {
        let t = c * x;
        match v.get_mut(&j) {
            Some(e) => {
                *e += &t;
                if e.is_zero() {
                    v.remove(&j);
                }
            }
            None => {
                if !t.is_zero() {
                    v.insert(j, t);
                }
            }
        }
    }
}

pub fn to_sparse(v: &[CycloNum]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(l: u32, v: &SparseVec, n: usize) -> Vec<CycloNum> {
    let mut out = vec![CycloNum::zero(l); n];
    for (&i, x) in v {
        out[i] = x.clone();
    }
    out
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    l: u32,
    rows: usize,
    cols: usize,
    data: Vec<CycloNum>,
}

impl Matrix {
    pub fn zeros(l: u32, rows: usize, cols: usize) -> Self {
        Matrix {
            l,
            rows,
            cols,
            data: vec![CycloNum::zero(l); rows * cols],
        }
    }

    pub fn identity(l: u32, n: usize) -> Self {
        Self::scalar(l, n, &CycloNum::one(l))
    }

    pub fn scalar(l: u32, n: usize, c: &CycloNum) -> Self {
        let mut m = Self::zeros(l, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_fn(l: u32, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycloNum) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { l, rows, cols, data }
    }

    pub fn from_rows(l: u32, rows: Vec<Vec<CycloNum>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        if rows.iter().flatten().any(|x| x.order() != l) {
            return Err(Error::InvalidInput(format!("matrix entries must lie in Q(z_{l})")));
        }
        Ok(Matrix {
            l,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Flat row-major entries; the length must be `rows * cols`.
    pub fn from_flat(l: u32, rows: usize, cols: usize, data: Vec<CycloNum>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "expected {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { l, rows, cols, data })
    }

    pub fn order(&self) -> u32 {
        self.l
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: CycloNum) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[CycloNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[CycloNum] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycloNum::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// The scalar `c` if the matrix is `c * I`.
    pub fn as_scalar(&self) -> Option<CycloNum> {
        if !self.is_diagonal() || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0).clone();
        (0..self.rows).all(|i| *self.get(i, i) == c).then_some(c)
    }

    pub fn diagonal(&self) -> Vec<CycloNum> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn trace(&self) -> CycloNum {
        let mut t = CycloNum::zero(self.l);
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.l, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &CycloNum) -> Matrix {
        Matrix {
            l: self.l,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| if x.is_zero() { x.clone() } else { x * c }).collect(),
        }
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[CycloNum]) -> Vec<CycloNum> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let mut out = vec![CycloNum::zero(self.l); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let m = self.get(i, j);
                if !m.is_zero() {
                    *o += &(vi * m);
                }
            }
        }
        out
    }

    /// Sparse row vector times matrix.
    pub fn apply_sparse(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, vi) in v {
            for j in 0..self.cols {
                let m = self.get(i, j);
                if !m.is_zero() {
                    let t = vi * m;
                    let e = out.entry(j).or_insert_with(|| CycloNum::zero(self.l));
                    *e += &t;
                }
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    pub fn pow(&self, k: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.l, self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Flattened (row-major) sparse form.
    pub fn to_sparse_flat(&self) -> SparseVec {
        to_sparse(&self.data)
    }

    pub fn from_sparse_flat(l: u32, rows: usize, cols: usize, v: &SparseVec) -> Matrix {
        Matrix {
            l,
            rows,
            cols,
            data: to_dense(l, v, rows * cols),
        }
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.l, self.cols);
        for i in 0..self.rows {
            ech.insert(to_sparse(self.row(i)));
        }
        ech.dim()
    }

    /// Basis of `{v : v * self = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<CycloNum>> {
        // v * M = 0  <=>  M^T v^T = 0; one equation per column of M.
        let eqs: Vec<SparseVec> = (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .filter(|&i| !self.get(i, j).is_zero())
                    .map(|i| (i, self.get(i, j).clone()))
                    .collect()
            })
            .collect();
        let sol = solve_sparse(self.l, self.rows, eqs);
        sol.kernel.iter().map(|v| to_dense(self.l, v, self.rows)).collect()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::InvalidInput("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        // Gauss-Jordan on [M | I]
        let mut rows: Vec<Vec<CycloNum>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| {
                    if i == j {
                        CycloNum::one(self.l)
                    } else {
                        CycloNum::zero(self.l)
                    }
                }));
                r
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !rows[r][col].is_zero())
                .ok_or_else(|| Error::InvalidInput("matrix is singular".into()))?;
            rows.swap(col, piv);
            let inv = rows[col][col].inv()?;
            for x in rows[col].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
            let pivot_row = rows[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &(&f * p);
                    }
                }
            }
        }
        let data = rows.into_iter().flat_map(|r| r.into_iter().skip(n)).collect();
        Ok(Matrix {
            l: self.l,
            rows: n,
            cols: n,
            data,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        Matrix::from_fn(self.l, r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                other.get(i - self.rows, j - self.cols).clone()
            } else {
                CycloNum::zero(self.l)
            }
        })
    }

    /// First entry where `self` and `other` differ.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize, CycloNum)> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self.get(i, j) - other.get(i, j);
                if !d.is_zero() {
                    return Some((i, j, d));
                }
            }
        }
        None
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix[l={}] {}x{}", self.l, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix dimension mismatch");
        let mut out = Matrix::zeros(self.l, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let t = a * b;
                        out.data[i * rhs.cols + j] += &t;
                    }
                }
            }
        }
        out
    }
}

impl Mul<Matrix> for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        &self * &rhs
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix dimension mismatch");
        Matrix {
            l: self.l,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix dimension mismatch");
        Matrix {
            l: self.l,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            l: self.l,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

/// Matrix stored as sparse rows; used where the same matrix multiplies
/// many vectors (closure, spin-up).
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    rows: Vec<Vec<(usize, CycloNum)>>,
    cols: usize,
}

impl SparseMatrix {
    pub fn from_dense(m: &Matrix) -> Self {
        let rows = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { rows, cols: m.cols() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<(usize, CycloNum)>] {
        &self.rows
    }

    /// Sparse row vector times this matrix.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, vi) in v {
            for (j, m) in &self.rows[i] {
                let t = vi * m;
                match out.get_mut(j) {
                    Some(e) => *e += &t,
                    None => {
                        out.insert(*j, t);
                    }
                }
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    /// Flattened n x n matrix `a` (row-major sparse) times this matrix.
    pub fn right_mul_flat(&self, a: &SparseVec, n: usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (&idx, x) in a {
            let (i, k) = (idx / n, idx % n);
            for (j, m) in &self.rows[k] {
                let t = x * m;
                let key = i * self.cols + j;
                match out.get_mut(&key) {
                    Some(e) => *e += &t,
                    None => {
                        out.insert(key, t);
                    }
                }
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }
}

/// Incrementally built semi-echelon basis: every stored row has a distinct
/// pivot (its first nonzero column) normalized to 1.
#[derive(Clone, Debug)]
pub struct Echelon {
    l: u32,
    ambient: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(l: u32, ambient: usize) -> Self {
        Echelon {
            l,
            ambient,
            rows: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn order(&self) -> u32 {
        self.l
    }

    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(&c, x)| (c, x.clone()));
            let Some((c, x)) = next else { break };
            axpy(&mut v, &-x, &self.rows[&c]);
            cursor = c + 1;
        }
        v
    }

    /// Adds `v` to the span; returns the normalized new basis row if `v` was independent.
    pub fn insert(&mut self, v: SparseVec) -> Option<&SparseVec> {
        let r = self.reduce(v);
        let (&p, lead) = r.iter().next()?;
        let inv = lead.inv().expect("nonzero pivot");
        let normalized: SparseVec = r.into_iter().map(|(j, x)| (j, &x * &inv)).collect();
        self.rows.insert(p, normalized);
        self.rows.get(&p)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    /// Fully reduced row echelon form as dense rows (canonical for the span).
    pub fn rref(&self) -> Vec<Vec<CycloNum>> {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        let mut reduced: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for &p in pivots.iter().rev() {
            let mut row = self.rows[&p].clone();
            for (&q, qrow) in &reduced {
                if let Some(x) = row.get(&q).cloned() {
                    axpy(&mut row, &-x, qrow);
                }
            }
            reduced.insert(p, row);
        }
        reduced
            .values()
            .map(|r| to_dense(self.l, r, self.ambient))
            .collect()
    }
}

/// Solution set of a sparse linear system.
#[derive(Clone, Debug)]
pub struct SparseSolution {
    /// A particular solution of the inhomogeneous system, if consistent.
    pub particular: Option<SparseVec>,
    /// Basis of the homogeneous solution space.
    pub kernel: Vec<SparseVec>,
}

/// Solves `A x = b` where each equation is a sparse row over `nvars`
/// unknowns; column `nvars` (if present) holds the right-hand side.
pub fn solve_sparse(l: u32, nvars: usize, equations: Vec<SparseVec>) -> SparseSolution {
    let mut ech = Echelon::new(l, nvars + 1);
    for eq in equations {
        if !eq.is_empty() {
            ech.insert(eq);
        }
    }
    let inconsistent = ech.rows.contains_key(&nvars);
    let pivots: Vec<usize> = ech.rows.keys().copied().filter(|&p| p < nvars).collect();
    let back_substitute = |seed: SparseVec, with_rhs: bool| -> SparseVec {
        let mut x = seed;
        for &p in pivots.iter().rev() {
            let row = &ech.rows[&p];
            let mut val = if with_rhs {
                row.get(&nvars).cloned().unwrap_or_else(|| CycloNum::zero(l))
            } else {
                CycloNum::zero(l)
            };
            for (&c, a) in row.range(p + 1..nvars) {
                if let Some(xc) = x.get(&c) {
                    val -= &(a * xc);
                }
            }
            if !val.is_zero() {
                x.insert(p, val);
            }
        }
        x
    };
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let kernel = (0..nvars)
        .filter(|c| !pivot_set.contains(c))
        .map(|f| {
            let mut seed = SparseVec::new();
            seed.insert(f, CycloNum::one(l));
            back_substitute(seed, false)
        })
        .collect();
    let particular = (!inconsistent).then(|| back_substitute(SparseVec::new(), true));
    SparseSolution { particular, kernel }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(l: u32, k: i64) -> CycloNum {
        CycloNum::from_int(l, k)
    }

    fn m(l: u32, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(l, rows.iter().map(|r| r.iter().map(|&x| n(l, x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(3, &[&[1, 2, 0], &[0, 1, 3], &[4, 0, 1]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert!((&inv * &a).is_identity());
        let singular = m(3, &[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_err());
        assert_eq!(singular.rank(), 1);
    }

    #[test]
    fn left_kernel_is_annihilated() {
        let a = m(4, &[&[1, 2], &[2, 4], &[0, 1]]);
        let ker = a.left_kernel();
        assert_eq!(ker.len(), 1);
        assert!(a.apply(&ker[0]).iter().all(CycloNum::is_zero));
    }

    #[test]
    fn sparse_solver_particular_and_kernel() {
        let l = 5;
        // x0 + x1 = 3, x1 - x2 = 1
        let mut e1 = SparseVec::new();
        e1.insert(0, n(l, 1));
        e1.insert(1, n(l, 1));
        e1.insert(3, n(l, 3));
        let mut e2 = SparseVec::new();
        e2.insert(1, n(l, 1));
        e2.insert(2, n(l, -1));
        e2.insert(3, n(l, 1));
        let sol = solve_sparse(l, 3, vec![e1.clone(), e2.clone()]);
        assert_eq!(sol.kernel.len(), 1);
        let x = to_dense(l, sol.particular.as_ref().unwrap(), 3);
        assert_eq!(&x[0] + &x[1], n(l, 3));
        assert_eq!(&x[1] - &x[2], n(l, 1));
        // inconsistent: 0 = 1
        let mut bad = SparseVec::new();
        bad.insert(3, n(l, 1));
        assert!(solve_sparse(l, 3, vec![e1, bad]).particular.is_none());
    }

    #[test]
    fn echelon_rref_is_canonical() {
        let l = 3;
        let a = vec![n(l, 1), n(l, 2), n(l, 3)];
        let b = vec![n(l, 0), n(l, 1), n(l, 1)];
        let mut e1 = Echelon::new(l, 3);
        e1.insert(to_sparse(&a));
        e1.insert(to_sparse(&b));
        let mut e2 = Echelon::new(l, 3);
        let sum: Vec<CycloNum> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        e2.insert(to_sparse(&sum));
        e2.insert(to_sparse(&b));
        assert_eq!(e1.rref(), e2.rref());
        assert!(e1.insert(to_sparse(&sum)).is_none());
    }
}
