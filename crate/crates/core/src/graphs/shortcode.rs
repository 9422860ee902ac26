use super::DEFAULT_VERTEX_CAP;
use crate::error::{Error, Result};
use crate::gf2::{sample_vector, GF2Matrix, GF2Tensor, GF2Vector};
use crate::rng::Prng;

/// Packed index of the outer product `a b^T` for an `l x n` matrix,
/// `a`, `b` given as packed integers.
#[inline]
pub fn outer_index(l: usize, n: usize, a: u64, b: u64) -> u64 {
    let mut idx = 0u64;
    for i in 0..l {
        if (a >> i) & 1 == 1 {
            idx |= b << (i * n);
        }
    }
    idx
}

/// Packed index of `a ⊗ b ⊗ c` for an `l x m x n` tensor.
#[inline]
pub fn outer3_index(l: usize, m: usize, n: usize, a: u64, b: u64, c: u64) -> u64 {
    let mut idx = 0u64;
    for i in 0..l {
        if (a >> i) & 1 == 0 {
            continue;
        }
        for j in 0..m {
            if (b >> j) & 1 == 1 {
                idx |= c << ((i * m + j) * n);
            }
        }
    }
    idx
}

/// The degree-2 shortcode graph S_{l,n} on `l x n` matrices, adjacent when
/// the difference has rank exactly one.
///
/// Vertices are encoded by their packed index, so `l * n <= 64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShortcodeGraph {
    l: usize,
    n: usize,
}

impl ShortcodeGraph {
    pub fn new(l: usize, n: usize) -> Result<Self> {
        if l == 0 || n == 0 || l * n > 64 {
            return Err(Error::Parameter(format!(
                "shortcode graph needs l, n >= 1 and l*n <= 64, got l={l}, n={n}"
            )));
        }
        Ok(Self { l, n })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `log2` of the vertex count.
    pub fn vertex_bits(&self) -> usize {
        self.l * self.n
    }

    /// Number of vertices, `None` past 2^63.
    pub fn vertex_count(&self) -> Option<u64> {
        (self.vertex_bits() < 64).then(|| 1u64 << self.vertex_bits())
    }

    pub fn degree(&self) -> u64 {
        ((1u64 << self.l) - 1) * ((1u64 << self.n) - 1)
    }

    pub fn check_cap(&self, cap: u64) -> Result<u64> {
        match self.vertex_count() {
            Some(c) if c <= cap => Ok(c),
            _ => Err(Error::resource(
                format!("vertex enumeration of S({},{})", self.l, self.n),
                format!("2^{}", self.vertex_bits()),
                cap,
            )),
        }
    }

    pub fn vertex(&self, idx: u64) -> GF2Matrix {
        GF2Matrix::from_index(self.l, self.n, idx)
    }

    pub fn check_vertex(&self, m: &GF2Matrix) -> Result<()> {
        if m.shape() != (self.l, self.n) {
            return Err(Error::Parameter(format!(
                "{}x{} matrix is not a vertex of S({},{})",
                m.rows(),
                m.cols(),
                self.l,
                self.n
            )));
        }
        Ok(())
    }

    /// Vertex indices `0..2^(l n)` in order.
    pub fn vertices(&self) -> Result<std::ops::Range<u64>> {
        self.vertices_with_cap(DEFAULT_VERTEX_CAP)
    }

    pub fn vertices_with_cap(&self, cap: u64) -> Result<std::ops::Range<u64>> {
        Ok(0..self.check_cap(cap)?)
    }

    /// Every undirected edge `(i, j)`, `i < j`, ordered by `i` then by the
    /// generator `(a, b)`.
    pub fn edges(&self) -> Result<Vec<(u64, u64)>> {
        let count = self.check_cap(DEFAULT_VERTEX_CAP)?;
        let gens = self.rank_one_indices();
        let mut out = Vec::with_capacity((count * gens.len() as u64 / 2) as usize);
        for i in 0..count {
            for &g in &gens {
                let j = i ^ g;
                if i < j {
                    out.push((i, j));
                }
            }
        }
        Ok(out)
    }

    /// Packed indices of all rank-one matrices `a b^T`, `a, b != 0`.
    pub fn rank_one_indices(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for a in 1..(1u64 << self.l) {
            for b in 1..(1u64 << self.n) {
                out.push(outer_index(self.l, self.n, a, b));
            }
        }
        out
    }

    pub fn is_adjacent(&self, a: &GF2Matrix, b: &GF2Matrix) -> Result<bool> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        Ok((a + b).rank() == 1)
    }

    /// One step of the test distribution: `a`, `b` uniform over all vectors
    /// (zero included), `M2 = M + a b^T`.
    pub fn step(&self, prng: &mut Prng, m: &GF2Matrix) -> (GF2Matrix, GF2Vector, GF2Vector) {
        let a = sample_vector(prng, self.l);
        let b = sample_vector(prng, self.n);
        let m2 = m + &GF2Matrix::outer(&a, &b);
        (m2, a, b)
    }
}

pub fn shortcode_adjacent(a: &GF2Matrix, b: &GF2Matrix) -> Result<bool> {
    if a.shape() != b.shape() {
        return Err(Error::Parameter(format!(
            "shape mismatch: {:?} vs {:?}",
            a.shape(),
            b.shape()
        )));
    }
    Ok((a + b).rank() == 1)
}

pub fn shortcode_step(prng: &mut Prng, m: &GF2Matrix) -> (GF2Matrix, GF2Vector, GF2Vector) {
    let a = sample_vector(prng, m.rows());
    let b = sample_vector(prng, m.cols());
    let m2 = m + &GF2Matrix::outer(&a, &b);
    (m2, a, b)
}

/// The degree-3 shortcode graph on `l x m x n` tensors, adjacent when the
/// difference is a nonzero rank-one tensor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TensorGraph {
    l: usize,
    m: usize,
    n: usize,
}

impl TensorGraph {
    pub fn new(l: usize, m: usize, n: usize) -> Result<Self> {
        if l == 0 || m == 0 || n == 0 || l * m * n > 64 {
            return Err(Error::Parameter(format!(
                "tensor graph needs positive dims with l*m*n <= 64, got ({l},{m},{n})"
            )));
        }
        Ok(Self { l, m, n })
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.l, self.m, self.n)
    }

    pub fn vertex_bits(&self) -> usize {
        self.l * self.m * self.n
    }

    pub fn check_cap(&self, cap: u64) -> Result<u64> {
        let bits = self.vertex_bits();
        if bits < 64 && (1u64 << bits) <= cap {
            Ok(1u64 << bits)
        } else {
            Err(Error::resource(
                format!(
                    "vertex enumeration of Ten({},{},{})",
                    self.l, self.m, self.n
                ),
                format!("2^{bits}"),
                cap,
            ))
        }
    }

    pub fn vertices(&self) -> Result<std::ops::Range<u64>> {
        Ok(0..self.check_cap(DEFAULT_VERTEX_CAP)?)
    }

    pub fn vertex(&self, idx: u64) -> GF2Tensor {
        GF2Tensor::from_index(self.l, self.m, self.n, idx)
    }

    pub fn rank_one_indices(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for a in 1..(1u64 << self.l) {
            for b in 1..(1u64 << self.m) {
                for c in 1..(1u64 << self.n) {
                    out.push(outer3_index(self.l, self.m, self.n, a, b, c));
                }
            }
        }
        out
    }

    pub fn edges(&self) -> Result<Vec<(u64, u64)>> {
        let count = self.check_cap(DEFAULT_VERTEX_CAP)?;
        let gens = self.rank_one_indices();
        let mut out = Vec::new();
        for i in 0..count {
            for &g in &gens {
                if i < i ^ g {
                    out.push((i, i ^ g));
                }
            }
        }
        Ok(out)
    }
}

pub fn tensor_adjacent(a: &GF2Tensor, b: &GF2Tensor) -> Result<bool> {
    if a.dims() != b.dims() {
        return Err(Error::Parameter(format!(
            "tensor dims mismatch: {:?} vs {:?}",
            a.dims(),
            b.dims()
        )));
    }
    Ok((a + b).is_rank_one())
}

/// Test-distribution step on tensors with `a`, `b`, `c` uniform over all
/// vectors (zero included).
pub fn tensor_step(prng: &mut Prng, t: &GF2Tensor) -> (GF2Tensor, GF2Vector, GF2Vector, GF2Vector) {
    let (l, m, n) = t.dims();
    let a = sample_vector(prng, l);
    let b = sample_vector(prng, m);
    let c = sample_vector(prng, n);
    let t2 = t + &GF2Tensor::outer(&a, &b, &c);
    (t2, a, b, c)
}
