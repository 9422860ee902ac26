//! Uniform samplers. Subspaces and invertible matrices use rejection.

use super::basis::Basis;
use super::matrix::GF2Matrix;
use super::subspace::Subspace;
use super::vector::GF2Vector;
use crate::rng::Prng;

pub fn sample_vector(prng: &mut Prng, n: usize) -> GF2Vector {
    let mut v = GF2Vector::zeros(n);
    for w in v.words_mut() {
        *w = prng.bits(64);
    }
    v.mask_tail();
    v
}

pub fn sample_nonzero_vector(prng: &mut Prng, n: usize) -> GF2Vector {
    assert!(n > 0, "no nonzero vectors in GF(2)^0");
    loop {
        let v = sample_vector(prng, n);
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn sample_matrix(prng: &mut Prng, rows: usize, cols: usize) -> GF2Matrix {
    let mut m = GF2Matrix::zeros(rows, cols);
    for i in 0..rows {
        m.set_row(i, &sample_vector(prng, cols));
    }
    m
}

pub fn sample_invertible(prng: &mut Prng, n: usize) -> GF2Matrix {
    loop {
        let m = sample_matrix(prng, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

pub fn sample_basis(prng: &mut Prng, n: usize) -> Basis {
    Basis::new(sample_invertible(prng, n)).expect("sampled matrix is invertible")
}

/// Uniform `l`-dimensional subspace: draw `l` vectors until independent.
pub fn sample_subspace(prng: &mut Prng, n: usize, l: usize) -> Subspace {
    assert!(l <= n, "sample_subspace needs l <= n");
    loop {
        let m = sample_matrix(prng, l, n);
        let (r, pivots) = m.rref();
        if pivots.len() == l {
            return Subspace::from_rref_unchecked(r);
        }
    }
}
