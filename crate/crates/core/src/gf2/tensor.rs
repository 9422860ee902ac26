use std::fmt;
use std::ops::Add;

use super::matrix::GF2Matrix;
use super::vector::GF2Vector;

/// An `l x m x n` tensor over GF(2).
///
/// Entry `(i, j, k)` is bit `(i*m + j)*n + k` of the packed representation, so
/// mode-1 slice `i` is the `m x n` matrix packed at offset `i*m*n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GF2Tensor {
    dims: (usize, usize, usize),
    bits: GF2Vector,
}

impl GF2Tensor {
    pub fn zeros(l: usize, m: usize, n: usize) -> Self {
        Self {
            dims: (l, m, n),
            bits: GF2Vector::zeros(l * m * n),
        }
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    #[inline]
    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        let (_, m, n) = self.dims;
        (i * m + j) * n + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> bool {
        self.bits.get(self.offset(i, j, k))
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: bool) {
        let o = self.offset(i, j, k);
        self.bits.set(o, value);
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    /// `a ⊗ b ⊗ c`.
    pub fn outer(a: &GF2Vector, b: &GF2Vector, c: &GF2Vector) -> Self {
        let mut t = Self::zeros(a.len(), b.len(), c.len());
        for i in a.ones_iter() {
            for j in b.ones_iter() {
                for k in c.ones_iter() {
                    t.set(i, j, k, true);
                }
            }
        }
        t
    }

    /// Mode-1 slice `T(i, ., .)`.
    pub fn slice(&self, i: usize) -> GF2Matrix {
        let (_, m, n) = self.dims;
        let mut s = GF2Matrix::zeros(m, n);
        for j in 0..m {
            for k in 0..n {
                if self.get(i, j, k) {
                    s.set(j, k, true);
                }
            }
        }
        s
    }

    /// Whether the tensor equals `a ⊗ b ⊗ c` with `a, b, c` all nonzero.
    ///
    /// Over GF(2) such a tensor has slices `a_i (b c^T)`, so it is rank one
    /// exactly when it is nonzero, all nonzero slices coincide, and the common
    /// slice has matrix rank one.
    pub fn is_rank_one(&self) -> bool {
        let (l, _, _) = self.dims;
        let mut common: Option<GF2Matrix> = None;
        for i in 0..l {
            let s = self.slice(i);
            if s.is_zero() {
                continue;
            }
            match &common {
                None => common = Some(s),
                Some(c) if *c == s => {}
                Some(_) => return false,
            }
        }
        common.is_some_and(|c| c.rank() == 1)
    }

    /// Packed index; requires `l*m*n <= 64`.
    pub fn to_index(&self) -> u64 {
        self.bits.to_u64()
    }

    pub fn from_index(l: usize, m: usize, n: usize, idx: u64) -> Self {
        Self {
            dims: (l, m, n),
            bits: GF2Vector::from_u64(l * m * n, idx),
        }
    }

    pub fn packed(&self) -> &GF2Vector {
        &self.bits
    }
}

impl Add for &GF2Tensor {
    type Output = GF2Tensor;
    fn add(self, rhs: &GF2Tensor) -> GF2Tensor {
        assert_eq!(self.dims, rhs.dims, "tensor dims mismatch");
        GF2Tensor {
            dims: self.dims,
            bits: &self.bits + &rhs.bits,
        }
    }
}

impl fmt::Debug for GF2Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, m, n) = self.dims;
        write!(f, "GF2Tensor[{l}x{m}x{n}](")?;
        for i in 0..l {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{}", self.slice(i))?;
        }
        f.write_str(")")
    }
}
