use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use super::matrix::GF2Matrix;
use super::vector::GF2Vector;
use crate::error::{Error, Result};

/// A linear subspace of GF(2)^n held by its reduced row-echelon basis.
///
/// The RREF basis (pivots leftmost-first, zero rows dropped) is the unique
/// representative, so equal subspaces compare and hash equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: GF2Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: GF2Matrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: GF2Matrix::identity(ambient),
        }
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &GF2Matrix) -> Self {
        Self {
            ambient: m.cols(),
            basis: m.rref().0,
        }
    }

    pub fn span(ambient: usize, vectors: &[GF2Vector]) -> Result<Self> {
        Ok(Self::from_matrix(&GF2Matrix::from_rows(ambient, vectors)?))
    }

    /// Wraps a matrix already known to be in RREF without zero rows.
    pub(crate) fn from_rref_unchecked(basis: GF2Matrix) -> Self {
        debug_assert_eq!(basis.rref().0, basis);
        Self {
            ambient: basis.cols(),
            basis,
        }
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The canonical RREF basis, one row per basis vector.
    #[inline]
    pub fn basis(&self) -> &GF2Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .row_iter()
            .map(|r| r.first_one().expect("RREF rows are nonzero"))
            .collect()
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is not in the
    /// subspace.
    pub fn coordinates(&self, v: &GF2Vector) -> Option<GF2Vector> {
        assert_eq!(v.len(), self.ambient, "coordinates: ambient mismatch");
        let mut coords = GF2Vector::zeros(self.dim());
        let mut residual = v.clone();
        for (i, p) in self.pivots().into_iter().enumerate() {
            if residual.get(p) {
                coords.set(i, true);
                residual += &self.basis.row(i);
            }
        }
        residual.is_zero().then_some(coords)
    }

    pub fn contains(&self, v: &GF2Vector) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.row_iter().all(|r| other.contains(&r))
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Parameter(format!(
                "ambient dimensions differ ({} vs {})",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// `span(self ∪ other)`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::from_matrix(&self.basis.stack(&other.basis)?))
    }

    /// Intersection via the Zassenhaus block reduction.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let n = self.ambient;
        let top = self.basis.hconcat(&self.basis)?;
        let bottom = other.basis.hconcat(&GF2Matrix::zeros(other.dim(), n))?;
        let (r, pivots) = top.stack(&bottom)?.rref();
        let rows: Vec<GF2Vector> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= n)
            .map(|(i, _)| r.row(i).slice(n, n))
            .collect();
        Self::span(n, &rows)
    }

    /// `{x : <x, v> = 0 for all v in self}`.
    pub fn orthogonal_complement(&self) -> Self {
        Self::from_matrix(&self.basis.nullspace())
    }

    /// Image under keeping the coordinates in `coords`, as a subspace of
    /// GF(2)^|coords|.
    pub fn project(&self, coords: &[usize]) -> Self {
        Self::from_matrix(&self.basis.select_columns(coords))
    }

    /// Image under `x -> x T` for an `n x k` matrix `T`.
    pub fn map_right(&self, t: &GF2Matrix) -> Result<Self> {
        Ok(Self::from_matrix(&self.basis.mul(t)?))
    }

    /// All `2^dim` elements, ordered by their coordinate integer.
    pub fn elements(&self) -> impl Iterator<Item = GF2Vector> + '_ {
        assert!(self.dim() < 64, "too many elements to list");
        (0..(1u64 << self.dim()))
            .map(move |c| self.basis.vec_mul(&GF2Vector::from_u64(self.dim(), c)))
    }

    /// Every subspace of GF(2)^n of dimension `k` in enumeration order.
    pub fn enumerate(n: usize, k: usize) -> RrefEnumerator {
        RrefEnumerator::new(n, k, n)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, r) in self.basis.row_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(n={}, {self})", self.ambient)
    }
}

/// Enumerates RREF matrices of rank `k` with `n` columns whose pivots all lie
/// in the first `pivot_limit` columns.
///
/// Order: pivot sets in lexicographic order; within a pivot set, the free
/// entries (row-major over non-pivot columns right of each pivot) count up as
/// a binary integer, first free entry least significant.
pub struct RrefEnumerator {
    n: usize,
    k: usize,
    pivot_limit: usize,
    pivots: Option<Vec<usize>>,
    free: Vec<(usize, usize)>,
    counter: u64,
}

impl RrefEnumerator {
    pub fn new(n: usize, k: usize, pivot_limit: usize) -> Self {
        let limit = pivot_limit.min(n);
        let pivots = (k <= limit).then(|| (0..k).collect::<Vec<_>>());
        let mut e = Self {
            n,
            k,
            pivot_limit: limit,
            pivots,
            free: Vec::new(),
            counter: 0,
        };
        e.refresh_free();
        e
    }

    fn refresh_free(&mut self) {
        self.free.clear();
        self.counter = 0;
        if let Some(p) = &self.pivots {
            for (i, &pi) in p.iter().enumerate() {
                for c in pi + 1..self.n {
                    if !p.contains(&c) {
                        self.free.push((i, c));
                    }
                }
            }
            assert!(
                self.free.len() < 64,
                "pivot pattern has too many free entries"
            );
        }
    }

    fn advance_pivots(&mut self) {
        let Some(p) = self.pivots.as_mut() else {
            return;
        };
        let k = self.k;
        let limit = self.pivot_limit;
        let mut i = k;
        loop {
            if i == 0 {
                self.pivots = None;
                return;
            }
            i -= 1;
            if p[i] < limit - (k - i) {
                p[i] += 1;
                for j in i + 1..k {
                    p[j] = p[j - 1] + 1;
                }
                break;
            }
        }
        self.refresh_free();
    }
}

impl Iterator for RrefEnumerator {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        let pivots = self.pivots.as_ref()?;
        let mut m = GF2Matrix::zeros(self.k, self.n);
        for (i, &p) in pivots.iter().enumerate() {
            m.set(i, p, true);
        }
        for (b, &(i, c)) in self.free.iter().enumerate() {
            if (self.counter >> b) & 1 == 1 {
                m.set(i, c, true);
            }
        }
        self.counter += 1;
        if self.counter >> self.free.len() != 0 {
            self.advance_pivots();
        }
        Some(Subspace::from_rref_unchecked(m))
    }
}

/// Number of `l`-dimensional subspaces of GF(2)^n.
pub fn gaussian_binomial(n: usize, l: usize) -> BigUint {
    assert!(l <= n, "gaussian_binomial needs l <= n");
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..l {
        num *= (BigUint::one() << (n - i)) - 1u32;
        den *= (BigUint::one() << (l - i)) - 1u32;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn v(s: &str) -> GF2Vector {
        s.parse().unwrap()
    }

    fn span(rows: &[&str]) -> Subspace {
        let vs: Vec<GF2Vector> = rows.iter().map(|r| v(r)).collect();
        Subspace::span(vs[0].len(), &vs).unwrap()
    }

    #[test]
    fn intersect_examples() {
        let a = span(&["110", "011"]);
        assert_eq!(a.intersect(&a).unwrap(), a);
        let b = span(&["101", "010"]);
        assert_eq!(a.intersect(&b).unwrap(), span(&["101"]));
        let c = span(&["100"]);
        let d = span(&["010"]);
        assert_eq!(c.intersect(&d).unwrap(), Subspace::zero(3));
    }

    #[test]
    fn project_examples() {
        let a = span(&["110", "011"]);
        assert_eq!(a.project(&[0, 1, 2]), a);
        assert_eq!(a.project(&[0, 1]), Subspace::full(2));
        assert_eq!(span(&["011"]).project(&[0]), Subspace::zero(1));
    }

    #[test]
    fn gaussian_binomial_examples() {
        assert_eq!(gaussian_binomial(2, 1), BigUint::from(3u32));
        assert_eq!(gaussian_binomial(4, 2), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(7, 0), BigUint::from(1u32));
    }

    /// Brute-force count: distinct row spaces over all k-tuples of vectors.
    fn brute_count(n: usize, k: usize) -> usize {
        let mut seen = HashSet::new();
        let total = 1u64 << (n * k);
        for idx in 0..total {
            let m = GF2Matrix::from_index(k, n, idx);
            if m.rank() == k {
                seen.insert(Subspace::from_matrix(&m));
            }
        }
        seen.len()
    }

    #[test]
    fn enumeration_matches_gaussian_binomial_and_brute_force() {
        for n in 0..=5 {
            for k in 0..=n {
                let listed: Vec<Subspace> = Subspace::enumerate(n, k).collect();
                let distinct: HashSet<_> = listed.iter().cloned().collect();
                assert_eq!(listed.len(), distinct.len());
                assert_eq!(BigUint::from(listed.len()), gaussian_binomial(n, k));
                assert!(listed.iter().all(|s| s.dim() == k && s.ambient() == n));
                if n * k <= 12 {
                    assert_eq!(listed.len(), brute_count(n, k), "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn canonical_form_is_generator_independent() {
        // every generating pair of each 2-dim subspace of GF(2)^4
        for s in Subspace::enumerate(4, 2) {
            let elems: Vec<GF2Vector> = s.elements().filter(|e| !e.is_zero()).collect();
            for a in &elems {
                for b in &elems {
                    if a != b {
                        let t = Subspace::span(4, &[a.clone(), b.clone()]).unwrap();
                        assert_eq!(t, s);
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_formula_exhaustive() {
        let all: Vec<Subspace> = (0..=4).flat_map(|k| Subspace::enumerate(4, k)).collect();
        for a in &all {
            for b in &all {
                let i = a.intersect(b).unwrap();
                let s = a.sum(b).unwrap();
                assert_eq!(a.dim() + b.dim(), i.dim() + s.dim());
                assert!(i.is_subspace_of(a) && i.is_subspace_of(b));
            }
        }
    }

    #[test]
    fn coordinates_reconstruct() {
        let a = span(&["110", "011"]);
        for e in a.elements() {
            let c = a.coordinates(&e).unwrap();
            assert_eq!(a.basis().vec_mul(&c), e);
        }
        assert!(a.coordinates(&v("100")).is_none());
    }

    #[test]
    fn restricted_pivots() {
        // 1-dim subspaces of GF(2)^3 spanned by a vector with a 1 in the
        // first coordinate: 100, 110, 101, 111
        let got: Vec<Subspace> = RrefEnumerator::new(3, 1, 1).collect();
        assert_eq!(got.len(), 4);
        assert!(got.iter().all(|s| s.pivots() == vec![0]));
    }
}
