use std::fmt;
use std::ops::Add;

use smallvec::{smallvec, SmallVec};

use super::vector::{words_for, GF2Vector};
use crate::error::{Error, Result};

/// A dense matrix over GF(2) stored row by row.
///
/// Each row occupies `stride = ceil(cols / 64)` words with the same packing as
/// [`GF2Vector`]. A matrix may have zero rows (the basis of the zero subspace).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: SmallVec<[u64; 8]>,
}

impl GF2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: smallvec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Stacks row vectors. `cols` is needed when `rows` may be empty.
    pub fn from_rows(cols: usize, rows: &[GF2Vector]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Parameter(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    /// Outer product `a b^T`.
    pub fn outer(a: &GF2Vector, b: &GF2Vector) -> Self {
        let mut m = Self::zeros(a.len(), b.len());
        for i in a.ones_iter() {
            m.row_words_mut(i).copy_from_slice(b.words());
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> GF2Vector {
        assert!(i < self.rows, "row {i} out of range ({} rows)", self.rows);
        GF2Vector::from_words(self.cols, self.row_words(i))
    }

    pub fn row_iter(&self) -> impl Iterator<Item = GF2Vector> + '_ {
        (0..self.rows).map(|i| self.row(i))
    }

    pub fn set_row(&mut self, i: usize, v: &GF2Vector) {
        assert_eq!(v.len(), self.cols, "set_row: length mismatch");
        self.row_words_mut(i).copy_from_slice(v.words());
    }

    pub fn column(&self, j: usize) -> GF2Vector {
        let mut v = GF2Vector::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        (self.data[i * self.stride + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(
            i < self.rows && j < self.cols,
            "entry ({i},{j}) out of range"
        );
        let w = &mut self.data[i * self.stride + j / 64];
        let mask = 1u64 << (j % 64);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    #[inline]
    fn xor_row_into(&mut self, dst: usize, src: usize) {
        for w in 0..self.stride {
            let s = self.data[src * self.stride + w];
            self.data[dst * self.stride + w] ^= s;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for w in 0..self.stride {
                self.data.swap(a * self.stride + w, b * self.stride + w);
            }
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row(i).ones_iter() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// `M x` for a column vector `x` of length `cols`.
    pub fn mul_vec(&self, x: &GF2Vector) -> GF2Vector {
        assert_eq!(x.len(), self.cols, "mul_vec: length mismatch");
        let mut out = GF2Vector::zeros(self.rows);
        for i in 0..self.rows {
            let parity = self
                .row_words(i)
                .iter()
                .zip(x.words())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.set(i, true);
            }
        }
        out
    }

    /// `x M` for a row vector `x` of length `rows`: the combination of rows
    /// selected by `x`.
    pub fn vec_mul(&self, x: &GF2Vector) -> GF2Vector {
        assert_eq!(x.len(), self.rows, "vec_mul: length mismatch");
        let mut out = GF2Vector::zeros(self.cols);
        for i in x.ones_iter() {
            for (o, r) in out.words_mut().iter_mut().zip(self.row_words(i)) {
                *o ^= r;
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Parameter(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let r = rhs.vec_mul(&self.row(i));
            out.set_row(i, &r);
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn stack(&self, below: &Self) -> Result<Self> {
        if self.cols != below.cols {
            return Err(Error::Parameter("stack: column mismatch".into()));
        }
        let mut out = Self::zeros(self.rows + below.rows, self.cols);
        out.data[..self.data.len()].copy_from_slice(&self.data);
        out.data[self.data.len()..].copy_from_slice(&below.data);
        Ok(out)
    }

    /// Horizontal concatenation `[self | right]`.
    pub fn hconcat(&self, right: &Self) -> Result<Self> {
        if self.rows != right.rows {
            return Err(Error::Parameter("hconcat: row mismatch".into()));
        }
        let rows: Vec<GF2Vector> = (0..self.rows)
            .map(|i| self.row(i).concat(&right.row(i)))
            .collect();
        Self::from_rows(self.cols + right.cols, &rows)
    }

    pub fn select_columns(&self, coords: &[usize]) -> Self {
        let rows: Vec<GF2Vector> = self.row_iter().map(|r| r.select(coords)).collect();
        Self::from_rows(coords.len(), &rows).expect("selected rows share a length")
    }

    /// Reduces in place to RREF, searching pivots only in the first
    /// `pivot_limit` columns. Returns the pivot columns; rows past the
    /// returned count have a zero prefix but are not dropped.
    fn eliminate(&mut self, pivot_limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_limit.min(self.cols) {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(r, p);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row_into(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn truncate_rows(&mut self, rows: usize) {
        self.rows = rows;
        self.data.truncate(rows * self.stride);
    }

    /// Reduced row-echelon form with zero rows dropped, and the pivot columns
    /// in increasing order.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate(m.cols);
        m.truncate_rows(pivots.len());
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(m.cols).len()
    }

    /// Left-solve: some `x` (length `rows`) with `x M = rhs`, if one exists.
    pub fn solve_left(&self, rhs: &GF2Vector) -> Option<GF2Vector> {
        assert_eq!(
            rhs.len(),
            self.cols,
            "solve_left: rhs length must equal cols"
        );
        // [M | I]; eliminating on the M block records each reduced row as a
        // combination of original rows in the I block.
        let aug = self
            .hconcat(&Self::identity(self.rows))
            .expect("identity has matching rows");
        let mut red = aug;
        let pivots = red.eliminate(self.cols);
        let mut residual = rhs.clone();
        let mut x = GF2Vector::zeros(self.rows);
        for (i, &p) in pivots.iter().enumerate() {
            if residual.get(p) {
                let row = red.row(i);
                residual += &row.slice(0, self.cols);
                x += &row.slice(self.cols, self.rows);
            }
        }
        residual.is_zero().then_some(x)
    }

    /// Right-solve: some `x` (length `cols`) with `M x = rhs`.
    pub fn solve_right(&self, rhs: &GF2Vector) -> Option<GF2Vector> {
        self.transpose().solve_left(rhs)
    }

    /// Basis (as rows) of `{x : M x = 0}`, i.e. the orthogonal complement of
    /// the row space.
    pub fn nullspace(&self) -> Self {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Self::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, true);
            for (i, &p) in pivots.iter().enumerate() {
                if r.get(i, f) {
                    out.set(k, p, true);
                }
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = self
            .hconcat(&Self::identity(n))
            .expect("square matrix has matching rows");
        let pivots = aug.eliminate(n);
        if pivots.len() < n {
            return None;
        }
        let rows: Vec<GF2Vector> = (0..n).map(|i| aug.row(i).slice(n, n)).collect();
        Some(Self::from_rows(n, &rows).expect("rows have length n"))
    }

    /// Packs entries row-major, entry `(i, j)` at bit `i * cols + j`.
    /// Requires `rows * cols <= 64`.
    pub fn to_index(&self) -> u64 {
        assert!(
            self.rows * self.cols <= 64,
            "matrix too large for a u64 index"
        );
        let mut idx = 0u64;
        for i in 0..self.rows {
            let w = self.row_words(i).first().copied().unwrap_or(0);
            idx |= w << (i * self.cols);
        }
        idx
    }

    pub fn from_index(rows: usize, cols: usize, idx: u64) -> Self {
        assert!(rows * cols <= 64, "matrix too large for a u64 index");
        let mut m = Self::zeros(rows, cols);
        if cols == 0 {
            return m;
        }
        let mask = if cols == 64 {
            u64::MAX
        } else {
            (1u64 << cols) - 1
        };
        for i in 0..rows {
            m.row_words_mut(i)[0] = (idx >> (i * cols)) & mask;
        }
        m
    }

    /// Parses rows joined by `;`, each a vector literal. A single `0x` hex
    /// literal is read with the packed-index layout and needs `shape`.
    pub fn parse_literal(s: &str, shape: Option<(usize, usize)>) -> Result<Self> {
        let s = s.trim();
        if s.starts_with("0x") || s.starts_with("0X") {
            let (r, c) =
                shape.ok_or_else(|| Error::format(0, "hex matrix literal needs a shape"))?;
            let flat = GF2Vector::parse_literal(s, Some(r * c))?;
            let rows: Vec<GF2Vector> = (0..r).map(|i| flat.slice(i * c, c)).collect();
            return Self::from_rows(c, &rows);
        }
        let rows = s
            .split(';')
            .map(|r| GF2Vector::parse_literal(r, None))
            .collect::<Result<Vec<_>>>()?;
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let m = Self::from_rows(cols, &rows).map_err(|e| Error::format(0, e.to_string()))?;
        if let Some((r, c)) = shape {
            if (r, c) != m.shape() {
                return Err(Error::format(
                    0,
                    format!("matrix literal is {}x{}, expected {r}x{c}", m.rows, m.cols),
                ));
            }
        }
        Ok(m)
    }
}

impl Add for &GF2Matrix {
    type Output = GF2Matrix;
    fn add(self, rhs: &GF2Matrix) -> GF2Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix shape mismatch");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a ^= b;
        }
        out
    }
}

impl fmt::Display for GF2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GF2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF2Matrix[{}x{}]({self})", self.rows, self.cols)
    }
}

/// GF(2) row rank.
pub fn rank(m: &GF2Matrix) -> usize {
    m.rank()
}
