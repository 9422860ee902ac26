use std::collections::HashSet;
use std::sync::Arc;

use super::LinearFunctional;
use crate::error::{Error, Result};
use crate::expansion::NiceSetGrassmann;
use crate::gf2::{GF2Vector, Subspace};
use crate::graphs::{GrassmannGraph, GrassmannVertices, DEFAULT_VERTEX_CAP};
use crate::rng::Prng;

/// A set of Grassmann vertices used as a planted part.
#[derive(Clone, Debug)]
pub enum GrassmannRegion {
    Nice(NiceSetGrassmann),
    Explicit(Arc<HashSet<Subspace>>),
}

impl GrassmannRegion {
    pub fn contains(&self, v: &Subspace) -> bool {
        match self {
            GrassmannRegion::Nice(s) => s.contains(v),
            GrassmannRegion::Explicit(s) => s.contains(v),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GrassmannPlanted {
    pub parts: Vec<(GrassmannRegion, LinearFunctional)>,
    pub fallback_seed: u64,
}

#[derive(Clone, Debug)]
pub enum GrassmannBacking {
    /// `values[i]` is F(V_i) on the RREF basis rows of the `i`-th vertex.
    Table {
        vertices: Arc<GrassmannVertices>,
        values: Arc<Vec<GF2Vector>>,
    },
    /// The restriction strategy `F_f(V) = f|_V`.
    Linear(LinearFunctional),
    Planted(Arc<GrassmannPlanted>),
}

/// An assignment of a linear function on `V` to each vertex `V` of G(l, n).
#[derive(Clone, Debug)]
pub struct GrassmannStrategy {
    graph: GrassmannGraph,
    backing: GrassmannBacking,
}

impl GrassmannStrategy {
    pub fn linear(l: usize, n: usize, f: LinearFunctional) -> Result<Self> {
        let graph = GrassmannGraph::new(l, n)?;
        if f.ambient() != n || !f.is_linear() {
            return Err(Error::Parameter(format!(
                "Grassmann restriction strategy needs a linear functional on GF(2)^{n}"
            )));
        }
        Ok(Self {
            graph,
            backing: GrassmannBacking::Linear(f),
        })
    }

    pub fn table(vertices: Arc<GrassmannVertices>, values: Vec<GF2Vector>) -> Result<Self> {
        let graph = vertices.graph();
        if values.len() != vertices.len() {
            return Err(Error::Parameter(format!(
                "table has {} entries for {} vertices",
                values.len(),
                vertices.len()
            )));
        }
        if let Some(bad) = values.iter().find(|x| x.len() != graph.l()) {
            return Err(Error::Parameter(format!(
                "table value of length {} for l={}",
                bad.len(),
                graph.l()
            )));
        }
        Ok(Self {
            graph,
            backing: GrassmannBacking::Table {
                vertices,
                values: Arc::new(values),
            },
        })
    }

    /// Table built by evaluating `value(i, V_i)` on every vertex.
    pub fn table_from_fn(
        vertices: Arc<GrassmannVertices>,
        mut value: impl FnMut(usize, &Subspace) -> GF2Vector,
    ) -> Result<Self> {
        let values = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| value(i, v))
            .collect();
        Self::table(vertices, values)
    }

    pub fn planted(
        l: usize,
        n: usize,
        parts: Vec<(GrassmannRegion, LinearFunctional)>,
        fallback_seed: u64,
    ) -> Result<Self> {
        let graph = GrassmannGraph::new(l, n)?;
        if l * n > 64 {
            return Err(Error::Parameter(
                "planted Grassmann strategies need l*n <= 64".into(),
            ));
        }
        for (_, f) in &parts {
            if f.ambient() != n || !f.is_linear() {
                return Err(Error::Parameter(
                    "planted parts need linear functionals".into(),
                ));
            }
        }
        Ok(Self {
            graph,
            backing: GrassmannBacking::Planted(Arc::new(GrassmannPlanted {
                parts,
                fallback_seed,
            })),
        })
    }

    pub fn graph(&self) -> GrassmannGraph {
        self.graph
    }

    pub fn l(&self) -> usize {
        self.graph.l()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn backing(&self) -> &GrassmannBacking {
        &self.backing
    }

    fn check_vertex(&self, v: &Subspace) -> Result<()> {
        if v.ambient() != self.n() || v.dim() != self.l() {
            return Err(Error::Parameter(format!(
                "subspace of dim {} in GF(2)^{} is not a vertex of G({},{})",
                v.dim(),
                v.ambient(),
                self.l(),
                self.n()
            )));
        }
        Ok(())
    }

    /// F(V) on the RREF basis rows of `V`.
    pub fn values(&self, v: &Subspace) -> Result<GF2Vector> {
        self.check_vertex(v)?;
        Ok(match &self.backing {
            GrassmannBacking::Linear(f) => restrict(f, v),
            GrassmannBacking::Table { vertices, values } => {
                let i = vertices
                    .index_of(v)
                    .ok_or_else(|| Error::Parameter(format!("{v} is not in the strategy table")))?;
                values[i].clone()
            }
            GrassmannBacking::Planted(p) => {
                match p.parts.iter().find(|(region, _)| region.contains(v)) {
                    Some((_, f)) => restrict(f, v),
                    None => {
                        let mut prng = Prng::new(p.fallback_seed, v.basis().to_index());
                        GF2Vector::from_u64(self.l(), prng.bits(self.l()))
                    }
                }
            }
        })
    }

    /// Expands any backing into a table over the full vertex list.
    pub fn to_table(&self, vertices: Arc<GrassmannVertices>) -> Result<Self> {
        if vertices.graph() != self.graph {
            return Err(Error::Parameter(
                "vertex list belongs to another graph".into(),
            ));
        }
        let values = vertices
            .iter()
            .map(|v| self.values(v))
            .collect::<Result<Vec<_>>>()?;
        Self::table(vertices, values)
    }

    pub fn expand(&self) -> Result<Self> {
        self.to_table(self.graph.vertices_with_cap(DEFAULT_VERTEX_CAP)?)
    }
}

fn restrict(f: &LinearFunctional, v: &Subspace) -> GF2Vector {
    let bits: Vec<bool> = v
        .basis()
        .row_iter()
        .map(|row| f.coefficients().dot(&row))
        .collect();
    GF2Vector::from_bools(&bits)
}

/// Value at `x ∈ V` of the linear function F(V).
pub fn eval_grassmann(f: &GrassmannStrategy, v: &Subspace, x: &GF2Vector) -> Result<bool> {
    f.check_vertex(v)?;
    if let GrassmannBacking::Linear(g) = &f.backing {
        if !v.contains(x) {
            return Err(Error::Domain(format!("{x} is not in {v}")));
        }
        return g.eval(x);
    }
    let coords = v
        .coordinates(x)
        .ok_or_else(|| Error::Domain(format!("{x} is not in {v}")))?;
    Ok(coords.dot(&f.values(v)?))
}

/// Planted Grassmann strategy: a uniform linear functional per part, random
/// linear functions elsewhere.
pub fn make_planted_grassmann(
    prng: &mut Prng,
    l: usize,
    n: usize,
    parts: Vec<GrassmannRegion>,
) -> Result<GrassmannStrategy> {
    let parts = parts
        .into_iter()
        .map(|region| (region, LinearFunctional::random(prng, n)))
        .collect();
    let seed = prng.bits(64);
    GrassmannStrategy::planted(l, n, parts, seed)
}
