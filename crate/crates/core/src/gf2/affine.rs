use super::matrix::GF2Matrix;
use super::subspace::Subspace;
use super::vector::GF2Vector;

/// An affine subspace `offset + directions` of GF(2)^N.
///
/// The offset is reduced against the direction basis, so equal sets compare
/// equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineSubspace {
    offset: GF2Vector,
    directions: Subspace,
}

impl AffineSubspace {
    pub fn new(offset: GF2Vector, directions: Subspace) -> Self {
        assert_eq!(
            offset.len(),
            directions.ambient(),
            "affine: ambient mismatch"
        );
        let offset = reduce(&offset, &directions);
        Self { offset, directions }
    }

    /// Solution set of `E x = rhs`, or `None` when inconsistent.
    pub fn solve(equations: &GF2Matrix, rhs: &GF2Vector) -> Option<Self> {
        let x = equations.solve_right(rhs)?;
        let directions = Subspace::from_matrix(&equations.nullspace());
        Some(Self::new(x, directions))
    }

    pub fn ambient(&self) -> usize {
        self.offset.len()
    }

    pub fn dim(&self) -> usize {
        self.directions.dim()
    }

    pub fn offset(&self) -> &GF2Vector {
        &self.offset
    }

    pub fn directions(&self) -> &Subspace {
        &self.directions
    }

    pub fn contains(&self, x: &GF2Vector) -> bool {
        self.directions.contains(&(x + &self.offset))
    }

    pub fn elements(&self) -> impl Iterator<Item = GF2Vector> + '_ {
        self.directions.elements().map(move |d| &d + &self.offset)
    }
}

fn reduce(v: &GF2Vector, s: &Subspace) -> GF2Vector {
    let mut r = v.clone();
    for (i, p) in s.pivots().into_iter().enumerate() {
        if r.get(p) {
            r += &s.basis().row(i);
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_enumerate() {
        // x1 + x2 = 1 over GF(2)^3
        let e = GF2Matrix::parse_literal("110", None).unwrap();
        let a = AffineSubspace::solve(&e, &"1".parse().unwrap()).unwrap();
        assert_eq!(a.dim(), 2);
        let members: Vec<String> = a.elements().map(|v| v.to_string()).collect();
        assert_eq!(members.len(), 4);
        for m in 0..8u64 {
            let v = GF2Vector::from_u64(3, m);
            assert_eq!(a.contains(&v), v.get(0) ^ v.get(1));
        }
    }

    #[test]
    fn inconsistent_is_none() {
        let e = GF2Matrix::parse_literal("10;10", None).unwrap();
        assert!(AffineSubspace::solve(&e, &"10".parse().unwrap()).is_none());
    }

    #[test]
    fn offset_is_canonical() {
        let d = Subspace::span(2, &["11".parse().unwrap()]).unwrap();
        let a = AffineSubspace::new("10".parse().unwrap(), d.clone());
        let b = AffineSubspace::new("01".parse().unwrap(), d);
        assert_eq!(a, b);
    }
}
