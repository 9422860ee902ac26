//! Eigenvalues of the shortcode Cayley graph under the step `a b^T` with
//! uniform `a`, `b`.
//!
//! The character of `A` is `χ_A(X) = (-1)^{<A, X>}`; its eigenvalue is
//! `E_{a,b} (-1)^{a^T A b} = Pr_a[A^T a = 0] = 2^{-rank A}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gf2::GF2Matrix;
use crate::graphs::outer_index;

fn pow2_inv(k: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << k)
}

pub fn cayley_eigenvalue(a: &GF2Matrix) -> BigRational {
    pow2_inv(a.rank())
}

/// `(rank, λ)` for every rank `0..=min(l, n)`.
pub fn spectrum_by_rank(l: usize, n: usize) -> Vec<(usize, BigRational)> {
    (0..=l.min(n)).map(|k| (k, pow2_inv(k))).collect()
}

/// `E_{a,b} (-1)^{a^T A b}` by summing over every `(a, b)`.
pub fn character_average(a: &GF2Matrix) -> Result<BigRational> {
    let (l, n) = a.shape();
    if l + n > 40 {
        return Err(Error::resource(
            "character sum",
            format!("2^{}", l + n),
            1 << 40,
        ));
    }
    let idx = a.to_index();
    let mut sum = 0i64;
    for x in 0..(1u64 << l) {
        for y in 0..(1u64 << n) {
            sum += if (idx & outer_index(l, n, x, y)).count_ones() % 2 == 0 {
                1
            } else {
                -1
            };
        }
    }
    Ok(BigRational::new(
        BigInt::from(sum),
        BigInt::one() << (l + n),
    ))
}

/// `Pr[a b^T = X]` for every packed `X`, rebuilt from the eigenvalues by the
/// inverse transform `2^{-ln} Σ_A λ(A) χ_A(X)`.
pub fn step_distribution_from_spectrum(l: usize, n: usize) -> Result<Vec<BigRational>> {
    let bits = l * n;
    if bits > 12 {
        return Err(Error::resource(
            "inverse transform",
            format!("2^{}", 2 * bits),
            1 << 24,
        ));
    }
    let lambdas: Vec<BigRational> = (0..(1u64 << bits))
        .map(|a| cayley_eigenvalue(&GF2Matrix::from_index(l, n, a)))
        .collect();
    Ok((0..(1u64 << bits))
        .map(|x| {
            let mut acc = BigRational::zero();
            for (a, lambda) in lambdas.iter().enumerate() {
                if (a as u64 & x).count_ones() % 2 == 0 {
                    acc += lambda;
                } else {
                    acc -= lambda;
                }
            }
            acc * pow2_inv(bits)
        })
        .collect())
}

/// `Pr[a b^T = X]` by counting pairs.
pub fn step_distribution(l: usize, n: usize) -> Vec<BigRational> {
    let mut counts = vec![0i64; 1 << (l * n)];
    for a in 0..(1u64 << l) {
        for b in 0..(1u64 << n) {
            counts[outer_index(l, n, a, b) as usize] += 1;
        }
    }
    counts
        .into_iter()
        .map(|c| BigRational::new(c.into(), BigInt::one() << (l + n)))
        .collect()
}
