//! The map φ_B from subspaces whose first `l` coordinates (in basis `B`)
//! are independent onto `Mat_{l, n-l}`.
//!
//! Everything is computed in `B`-coordinates: a vector `x` has coordinates
//! `x C` with `C = B^{-1}`, and `V` lies in the domain iff its RREF in those
//! coordinates has pivots `0..l`. The RREF rows are then the canonical basis
//! and their tails are the rows of φ(V).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::expansion::{NiceSetGrassmann, NiceSetShortcode};
use crate::gf2::{gaussian_binomial, Basis, GF2Matrix, GF2Vector, Subspace};
use crate::graphs::{grassmann_adjacent, shortcode_adjacent, GrassmannGraph, ShortcodeGraph};
use crate::strategies::{
    eval_grassmann, GrassmannBacking, GrassmannStrategy, LinearFunctional, ShortcodeStrategy,
};

#[derive(Clone, Debug)]
pub struct Embedding {
    l: usize,
    n: usize,
    basis: Basis,
}

/// The vectors `v_1..v_l` of `V` whose first `l` coordinates are `e_1..e_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalBasis {
    /// In `B`-coordinates, one row per vector.
    pub coords: GF2Matrix,
    /// The same vectors in standard coordinates.
    pub vectors: GF2Matrix,
}

impl Embedding {
    pub fn new(l: usize, basis: Basis) -> Result<Self> {
        let n = basis.ambient();
        if l == 0 || l > n {
            return Err(Error::Parameter(format!(
                "embedding needs 0 < l <= n, got l={l}, n={n}"
            )));
        }
        Ok(Self { l, n, basis })
    }

    pub fn standard(l: usize, n: usize) -> Result<Self> {
        Self::new(l, Basis::standard(n))
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    fn check_dim(&self, v: &Subspace) -> Result<()> {
        if v.ambient() != self.n || v.dim() != self.l {
            return Err(Error::Parameter(format!(
                "expected an {}-dimensional subspace of GF(2)^{}, got dim {} in GF(2)^{}",
                self.l,
                self.n,
                v.dim(),
                v.ambient()
            )));
        }
        Ok(())
    }

    /// `V` in `B`-coordinates.
    fn in_coords(&self, v: &Subspace) -> Subspace {
        if self.basis.is_standard() {
            v.clone()
        } else {
            v.map_right(self.basis.inverse())
                .expect("n x n change of basis")
        }
    }

    fn lift(&self, v: &Subspace) -> Subspace {
        if self.basis.is_standard() {
            v.clone()
        } else {
            v.map_right(self.basis.matrix())
                .expect("n x n change of basis")
        }
    }

    fn head(&self) -> Vec<usize> {
        (0..self.l).collect()
    }

    fn tail(&self) -> Vec<usize> {
        (self.l..self.n).collect()
    }

    pub fn in_domain(&self, v: &Subspace) -> Result<bool> {
        self.check_dim(v)?;
        Ok(self.in_coords(v).project(&self.head()).dim() == self.l)
    }

    pub fn canonical_basis(&self, v: &Subspace) -> Result<CanonicalBasis> {
        self.check_dim(v)?;
        let vb = self.in_coords(v);
        if vb.pivots() != self.head() {
            return Err(Error::Domain(format!(
                "{v} is outside the domain of the embedding"
            )));
        }
        let coords = vb.basis().clone();
        let vectors = coords.mul(self.basis.matrix())?;
        Ok(CanonicalBasis { coords, vectors })
    }

    pub fn phi(&self, v: &Subspace) -> Result<GF2Matrix> {
        Ok(self.canonical_basis(v)?.coords.select_columns(&self.tail()))
    }

    /// The subspace spanned by `(e_i, row_i(M))` in `B`-coordinates, returned
    /// in standard coordinates.
    pub fn phi_inverse(&self, m: &GF2Matrix) -> Result<Subspace> {
        if m.shape() != (self.l, self.n - self.l) {
            return Err(Error::Parameter(format!(
                "expected a {}x{} matrix, got {}x{}",
                self.l,
                self.n - self.l,
                m.rows(),
                m.cols()
            )));
        }
        let rows = GF2Matrix::identity(self.l).hconcat(m)?;
        Ok(self.lift(&Subspace::from_matrix(&rows)))
    }

    /// Every vertex of the domain, in order of the packed index of φ(V).
    pub fn domain(&self, cap: u64) -> Result<Vec<Subspace>> {
        let bits = self.l * (self.n - self.l);
        if bits >= 64 || (1u64 << bits) > cap {
            return Err(Error::resource(
                "embedding domain",
                format!("2^{bits}"),
                cap,
            ));
        }
        (0..(1u64 << bits))
            .map(|i| self.phi_inverse(&GF2Matrix::from_index(self.l, self.n - self.l, i)))
            .collect()
    }

    /// Exhaustive check of `V ~ V'` iff `φ(V) ~ φ(V')`, plus bijectivity.
    pub fn verify_homomorphism(&self, cap: u64) -> Result<HomomorphismReport> {
        let count = gaussian_binomial(self.n, self.l);
        if count > BigUint::from(cap) {
            return Err(Error::resource("homomorphism check", count, cap));
        }
        let graph = GrassmannGraph::new(self.l, self.n)?;
        let vertices = graph.vertices_with_cap(cap)?;
        let mut domain = Vec::new();
        for v in vertices.iter() {
            if self.in_domain(v)? {
                domain.push((v.clone(), self.phi(v)?));
            }
        }
        let mut images: Vec<u64> = domain.iter().map(|(_, m)| m.to_index()).collect();
        images.sort_unstable();
        images.dedup();
        let mut round_trip_failures = 0u64;
        for (v, m) in &domain {
            if &self.phi_inverse(m)? != v {
                round_trip_failures += 1;
            }
        }
        let mut pairs = 0u64;
        let mut violations = Vec::new();
        for i in 0..domain.len() {
            for j in (i + 1)..domain.len() {
                pairs += 1;
                let g = grassmann_adjacent(&domain[i].0, &domain[j].0)?;
                let s = shortcode_adjacent(&domain[i].1, &domain[j].1)?;
                if g != s {
                    violations.push((domain[i].0.clone(), domain[j].0.clone()));
                }
            }
        }
        Ok(HomomorphismReport {
            domain_size: domain.len() as u64,
            distinct_images: images.len() as u64,
            round_trip_failures,
            pairs,
            violations,
        })
    }

    /// Fraction of the neighbors of `V` that lie in the domain.
    pub fn neighbor_fraction(&self, v: &Subspace) -> Result<BigRational> {
        let graph = GrassmannGraph::new(self.l, self.n)?;
        let nbrs = graph.neighbors(v)?;
        let inside = nbrs
            .iter()
            .map(|w| self.in_domain(w))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .filter(|&b| b)
            .count();
        Ok(BigRational::new(
            BigInt::from(inside),
            BigInt::from(nbrs.len()),
        ))
    }

    /// Image of `S ∩ domain` as a shortcode nice set, `None` when it is empty.
    ///
    /// A vector `w` orthogonal to `W` (in `B`-coordinates) becomes the right
    /// constraint `M tail(w) = head(w)`; a vector `x` of `Q` becomes the left
    /// constraint `head(x)^T M = tail(x)^T`.
    pub fn map_nice_set(&self, s: &NiceSetGrassmann) -> Result<Option<NiceSetShortcode>> {
        if s.n() != self.n || s.l() != self.l {
            return Err(Error::Parameter("nice set has different parameters".into()));
        }
        let (head, tail) = (self.head(), self.tail());
        let w_perp = self.in_coords(s.w()).orthogonal_complement();
        let q = self.in_coords(s.q());
        let right: Vec<(GF2Vector, GF2Vector)> = w_perp
            .basis()
            .row_iter()
            .map(|w| (w.select(&tail), w.select(&head)))
            .collect();
        let left: Vec<(GF2Vector, GF2Vector)> = q
            .basis()
            .row_iter()
            .map(|x| (x.select(&head), x.select(&tail)))
            .collect();
        let tails: Vec<GF2Vector> = right.iter().map(|(t, _)| t.clone()).collect();
        let heads: Vec<GF2Vector> = left.iter().map(|(h, _)| h.clone()).collect();
        // dependent tails (heads) force a nonzero head (tail) to vanish
        if Subspace::span(self.n - self.l, &tails)?.dim() < tails.len()
            || Subspace::span(self.l, &heads)?.dim() < heads.len()
        {
            return Ok(None);
        }
        let set = NiceSetShortcode::new(self.l, self.n - self.l, right, left)?;
        Ok((!set.is_empty()).then_some(set))
    }

    /// A Grassmann nice set whose intersection with the domain maps onto
    /// `t`, `None` when `t` is empty.
    pub fn map_nice_set_inverse(&self, t: &NiceSetShortcode) -> Result<Option<NiceSetGrassmann>> {
        if t.l() != self.l || t.n() != self.n - self.l {
            return Err(Error::Parameter("nice set has different parameters".into()));
        }
        let ws: Vec<GF2Vector> = t.right().iter().map(|(q, tv)| tv.concat(q)).collect();
        let xs: Vec<GF2Vector> = t.left().iter().map(|(r, s)| r.concat(s)).collect();
        let w = Subspace::span(self.n, &ws)?.orthogonal_complement();
        let q = Subspace::span(self.n, &xs)?;
        if !q.is_subspace_of(&w) {
            return Ok(None);
        }
        Ok(Some(NiceSetGrassmann::new(
            self.l,
            self.lift(&q),
            self.lift(&w),
        )?))
    }

    /// `G(φ(V)) = (F(V)(v_1), ..., F(V)(v_l))`. Restriction strategies map to
    /// affine ones in closed form; other backings are tabulated.
    pub fn transfer_to_shortcode(&self, f: &GrassmannStrategy) -> Result<ShortcodeStrategy> {
        if f.l() != self.l || f.n() != self.n {
            return Err(Error::Parameter("strategy has different parameters".into()));
        }
        if let GrassmannBacking::Linear(g) = f.backing() {
            // f(v) = <v_B, B c> for v = v_B B
            let w = self.basis.matrix().mul_vec(g.coefficients());
            return ShortcodeStrategy::affine(w.select(&self.tail()), w.select(&self.head()));
        }
        let (l, k) = (self.l, self.n - self.l);
        let graph = ShortcodeGraph::new(l, k)?;
        let mut labels = Vec::new();
        for idx in graph.vertices()? {
            let v = self.phi_inverse(&graph.vertex(idx))?;
            let cb = self.canonical_basis(&v)?;
            let mut label = 0u64;
            for (i, row) in cb.vectors.row_iter().enumerate() {
                if eval_grassmann(f, &v, &row)? {
                    label |= 1 << i;
                }
            }
            labels.push(label);
        }
        ShortcodeStrategy::table(l, k, labels)
    }

    /// The linear functional `f` with `(f(v_1), ..., f(v_l)) = M z + u` for
    /// `M = φ(V)`: coefficients `(u, z)` in `B`-coordinates.
    pub fn transfer_affine_to_grassmann(&self, h: &ShortcodeStrategy) -> Result<GrassmannStrategy> {
        let (z, u) = h.as_affine().ok_or_else(|| {
            Error::Precondition("only affine shortcode strategies transfer back".into())
        })?;
        if u.len() != self.l || z.len() != self.n - self.l {
            return Err(Error::Parameter("strategy has different parameters".into()));
        }
        let coeffs = self.basis.inverse().mul_vec(&u.concat(&z));
        GrassmannStrategy::linear(self.l, self.n, LinearFunctional::linear(coeffs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomomorphismReport {
    pub domain_size: u64,
    pub distinct_images: u64,
    pub round_trip_failures: u64,
    pub pairs: u64,
    pub violations: Vec<(Subspace, Subspace)>,
}

impl HomomorphismReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
            && self.round_trip_failures == 0
            && self.distinct_images == self.domain_size
    }
}

/// `|domain| / |vertices| = 2^{l(n-l)} / [n choose l]_2`.
pub fn domain_fraction(l: usize, n: usize) -> BigRational {
    let num = BigInt::from(BigUint::from(1u8) << (l * (n - l)));
    BigRational::new(num, BigInt::from(gaussian_binomial(n, l)))
}
