use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;

use super::DEFAULT_VERTEX_CAP;
use crate::error::{Error, Result};
use crate::gf2::{
    gaussian_binomial, sample_invertible, sample_subspace, sample_vector, GF2Matrix, GF2Vector,
    Subspace,
};
use crate::rng::Prng;

/// The Grassmann graph G(l, n): `l`-dimensional subspaces of GF(2)^n, adjacent
/// when they meet in dimension `l - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GrassmannGraph {
    l: usize,
    n: usize,
}

/// The vertex list of a Grassmann graph in enumeration order, with the
/// inverse lookup. A vertex's integer encoding is its position here.
#[derive(Debug)]
pub struct GrassmannVertices {
    graph: GrassmannGraph,
    list: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
}

impl GrassmannVertices {
    pub fn graph(&self) -> GrassmannGraph {
        self.graph
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn get(&self, i: usize) -> &Subspace {
        &self.list[i]
    }

    pub fn index_of(&self, v: &Subspace) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subspace> {
        self.list.iter()
    }
}

impl GrassmannGraph {
    pub fn new(l: usize, n: usize) -> Result<Self> {
        if l == 0 || l >= n {
            return Err(Error::Parameter(format!(
                "Grassmann graph needs 0 < l < n, got l={l}, n={n}"
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

    pub fn vertex_count(&self) -> BigUint {
        gaussian_binomial(self.n, self.l)
    }

    /// `(2^l - 1)(2^(n-l+1) - 2)`: one factor per hyperplane of `V`, one per
    /// other `l`-space through that hyperplane.
    pub fn degree(&self) -> u64 {
        ((1u64 << self.l) - 1) * ((1u64 << (self.n - self.l + 1)) - 2)
    }

    fn check_vertex(&self, v: &Subspace) -> Result<()> {
        if v.ambient() != self.n || v.dim() != self.l {
            return Err(Error::Parameter(format!(
                "subspace of dim {} in GF(2)^{} is not a vertex of G({},{})",
                v.dim(),
                v.ambient(),
                self.l,
                self.n
            )));
        }
        Ok(())
    }

    pub fn vertices(&self) -> Result<Arc<GrassmannVertices>> {
        self.vertices_with_cap(DEFAULT_VERTEX_CAP)
    }

    pub fn vertices_with_cap(&self, cap: u64) -> Result<Arc<GrassmannVertices>> {
        let count = self.vertex_count();
        if count > BigUint::from(cap) {
            return Err(Error::resource(
                format!("vertex enumeration of G({},{})", self.l, self.n),
                count,
                cap,
            ));
        }
        let list: Vec<Subspace> = Subspace::enumerate(self.n, self.l).collect();
        let index = list
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        Ok(Arc::new(GrassmannVertices {
            graph: *self,
            list,
            index,
        }))
    }

    pub fn is_adjacent(&self, a: &Subspace, b: &Subspace) -> Result<bool> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        Ok(a.intersect(b)?.dim() + 1 == self.l)
    }

    /// Every neighbor of `v`, sorted.
    pub fn neighbors(&self, v: &Subspace) -> Result<Vec<Subspace>> {
        self.check_vertex(v)?;
        let mut out = BTreeSet::new();
        for h in hyperplanes(v) {
            for w in 0..(1u64 << self.n) {
                let w = GF2Vector::from_u64(self.n, w);
                if v.contains(&w) {
                    continue;
                }
                let rows: Vec<GF2Vector> = h.basis().row_iter().chain(std::iter::once(w)).collect();
                out.insert(Subspace::span(self.n, &rows)?);
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Undirected edges as index pairs `(i, j)` with `i < j`, in order.
    pub fn edges(&self, vertices: &GrassmannVertices) -> Result<Vec<(usize, usize)>> {
        let mut edges = Vec::new();
        for (i, v) in vertices.iter().enumerate() {
            for w in self.neighbors(v)? {
                let j = vertices
                    .index_of(&w)
                    .expect("neighbors are vertices of the same graph");
                if i < j {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        Ok(edges)
    }

    pub fn edge_count(&self) -> BigUint {
        self.vertex_count() * BigUint::from(self.degree()) / 2u32
    }

    pub fn sample_vertex(&self, prng: &mut Prng) -> Subspace {
        sample_subspace(prng, self.n, self.l)
    }

    /// Uniform neighbor: keep the span of the first `l - 1` vectors of a
    /// uniformly random ordered basis of `v`, then adjoin a uniform vector
    /// outside `v`.
    pub fn sample_neighbor(&self, prng: &mut Prng, v: &Subspace) -> Result<Subspace> {
        self.check_vertex(v)?;
        let change = sample_invertible(prng, self.l);
        let ordered = change.mul(v.basis())?;
        let w = loop {
            let w = sample_vector(prng, self.n);
            if !v.contains(&w) {
                break w;
            }
        };
        let mut rows: Vec<GF2Vector> = ordered.row_iter().take(self.l - 1).collect();
        rows.push(w);
        Subspace::span(self.n, &rows)
    }

    /// Uniform edge (ordered): uniform vertex then uniform neighbor. Valid
    /// because the graph is regular.
    pub fn sample_edge(&self, prng: &mut Prng) -> Result<(Subspace, Subspace)> {
        let v = self.sample_vertex(prng);
        let w = self.sample_neighbor(prng, &v)?;
        Ok((v, w))
    }
}

/// All hyperplanes (codimension-one subspaces) of `v`.
pub(crate) fn hyperplanes(v: &Subspace) -> Vec<Subspace> {
    let l = v.dim();
    (1..(1u64 << l))
        .map(|c| {
            let functional = GF2Matrix::from_rows(l, &[GF2Vector::from_u64(l, c)])
                .expect("functional has length l");
            let coeffs = functional.nullspace();
            Subspace::from_matrix(&coeffs.mul(v.basis()).expect("coefficients have l columns"))
        })
        .collect()
}

pub fn grassmann_adjacent(a: &Subspace, b: &Subspace) -> Result<bool> {
    if a.ambient() != b.ambient() || a.dim() != b.dim() {
        return Err(Error::Parameter(format!(
            "vertices from different Grassmann graphs: dim {} in GF(2)^{} vs dim {} in GF(2)^{}",
            a.dim(),
            a.ambient(),
            b.dim(),
            b.ambient()
        )));
    }
    Ok(a.intersect(b)?.dim() + 1 == a.dim())
}

pub fn grassmann_neighbor(prng: &mut Prng, v: &Subspace) -> Result<Subspace> {
    GrassmannGraph::new(v.dim(), v.ambient())?.sample_neighbor(prng, v)
}
