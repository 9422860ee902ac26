use super::matrix::GF2Matrix;
use super::vector::GF2Vector;
use crate::error::{Error, Result};

/// An ordered basis of GF(2)^n: the rows of an invertible `n x n` matrix `B`,
/// with `C = B^{-1}` cached.
///
/// A vector `x` has B-coordinates `c` when `x = c B`, so `c = x C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Basis {
    matrix: GF2Matrix,
    inverse: GF2Matrix,
}

impl Basis {
    pub fn new(matrix: GF2Matrix) -> Result<Self> {
        let inverse = matrix
            .inverse()
            .ok_or_else(|| Error::Domain("basis matrix is not invertible".into()))?;
        debug_assert_eq!(
            matrix.mul(&inverse).unwrap(),
            GF2Matrix::identity(matrix.rows())
        );
        Ok(Self { matrix, inverse })
    }

    pub fn standard(n: usize) -> Self {
        Self {
            matrix: GF2Matrix::identity(n),
            inverse: GF2Matrix::identity(n),
        }
    }

    pub fn ambient(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &GF2Matrix {
        &self.matrix
    }

    pub fn inverse(&self) -> &GF2Matrix {
        &self.inverse
    }

    pub fn is_standard(&self) -> bool {
        self.matrix == GF2Matrix::identity(self.ambient())
    }

    pub fn to_coords(&self, x: &GF2Vector) -> GF2Vector {
        self.inverse.vec_mul(x)
    }

    pub fn from_coords(&self, c: &GF2Vector) -> GF2Vector {
        self.matrix.vec_mul(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_round_trip() {
        let b = Basis::new(GF2Matrix::parse_literal("110;011;001", None).unwrap()).unwrap();
        for idx in 0..8 {
            let x = GF2Vector::from_u64(3, idx);
            assert_eq!(b.from_coords(&b.to_coords(&x)), x);
        }
        // b_1 = 110 has coordinates e_1
        let b1: GF2Vector = "110".parse().unwrap();
        assert_eq!(b.to_coords(&b1).to_string(), "100");
    }

    #[test]
    fn singular_rejected() {
        assert!(Basis::new(GF2Matrix::parse_literal("11;11", None).unwrap()).is_err());
    }
}
