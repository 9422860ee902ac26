use crate::error::{Error, Result};
use crate::gf2::{sample_vector, GF2Vector};
use crate::rng::Prng;

/// `x -> <coefficients, x> + constant` on GF(2)^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearFunctional {
    coefficients: GF2Vector,
    constant: bool,
}

impl LinearFunctional {
    pub fn new(coefficients: GF2Vector, constant: bool) -> Self {
        Self {
            coefficients,
            constant,
        }
    }

    pub fn linear(coefficients: GF2Vector) -> Self {
        Self::new(coefficients, false)
    }

    pub fn zero(n: usize) -> Self {
        Self::linear(GF2Vector::zeros(n))
    }

    /// The coordinate functional `x -> x_i` (zero-based).
    pub fn coordinate(n: usize, i: usize) -> Self {
        Self::linear(GF2Vector::unit(n, i))
    }

    /// Uniform linear functional (constant 0).
    pub fn random(prng: &mut Prng, n: usize) -> Self {
        Self::linear(sample_vector(prng, n))
    }

    pub fn ambient(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &GF2Vector {
        &self.coefficients
    }

    pub fn constant(&self) -> bool {
        self.constant
    }

    pub fn is_linear(&self) -> bool {
        !self.constant
    }

    pub fn eval(&self, x: &GF2Vector) -> Result<bool> {
        if x.len() != self.ambient() {
            return Err(Error::Parameter(format!(
                "functional on GF(2)^{} applied to a vector of length {}",
                self.ambient(),
                x.len()
            )));
        }
        Ok(self.coefficients.dot(x) ^ self.constant)
    }

    /// `x -> f(x) + <h, x>`.
    pub fn shifted(&self, h: &GF2Vector) -> Self {
        Self::new(&self.coefficients + h, self.constant)
    }
}
