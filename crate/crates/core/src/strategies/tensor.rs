use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::{GF2Tensor, GF2Vector};
use crate::graphs::{TensorGraph, DEFAULT_VERTEX_CAP};

#[derive(Clone, Debug)]
pub enum TensorBacking {
    Table(Arc<Vec<u64>>),
    /// `F(T)_i = Σ_{j,k} T(i,j,k) y_j z_k`.
    Bilinear {
        y: GF2Vector,
        z: GF2Vector,
    },
}

/// An `l`-bit label on each `l x m x n` tensor.
#[derive(Clone, Debug)]
pub struct TensorStrategy {
    graph: TensorGraph,
    backing: TensorBacking,
}

impl TensorStrategy {
    pub fn bilinear(l: usize, y: GF2Vector, z: GF2Vector) -> Result<Self> {
        let graph = TensorGraph::new(l, y.len(), z.len())?;
        Ok(Self {
            graph,
            backing: TensorBacking::Bilinear { y, z },
        })
    }

    pub fn table(l: usize, m: usize, n: usize, labels: Vec<u64>) -> Result<Self> {
        let graph = TensorGraph::new(l, m, n)?;
        let count = graph.check_cap(u64::MAX)?;
        if labels.len() as u64 != count {
            return Err(Error::Parameter(format!(
                "table has {} entries, expected {count}",
                labels.len()
            )));
        }
        if labels.iter().any(|&x| x >> l != 0) {
            return Err(Error::Parameter(format!("table label wider than l={l}")));
        }
        Ok(Self {
            graph,
            backing: TensorBacking::Table(Arc::new(labels)),
        })
    }

    pub fn graph(&self) -> TensorGraph {
        self.graph
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.graph.dims()
    }

    pub fn backing(&self) -> &TensorBacking {
        &self.backing
    }

    /// Packed label of the packed tensor `idx`.
    pub fn label(&self, idx: u64) -> u64 {
        match &self.backing {
            TensorBacking::Table(t) => t[idx as usize],
            TensorBacking::Bilinear { y, z } => {
                let (l, m, n) = self.dims();
                let zb = z.to_u64();
                let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
                let mut out = 0u64;
                for i in 0..l {
                    let mut acc = 0u32;
                    for j in y.ones_iter() {
                        let fiber = (idx >> ((i * m + j) * n)) & mask;
                        acc ^= (fiber & zb).count_ones() & 1;
                    }
                    out |= (acc as u64) << i;
                }
                out
            }
        }
    }

    pub fn eval(&self, t: &GF2Tensor) -> Result<GF2Vector> {
        if t.dims() != self.dims() {
            return Err(Error::Parameter(format!(
                "tensor of dims {:?} for a strategy on {:?}",
                t.dims(),
                self.dims()
            )));
        }
        Ok(GF2Vector::from_u64(self.dims().0, self.label(t.to_index())))
    }

    pub fn labels(&self) -> Result<Vec<u64>> {
        Ok((0..self.graph.check_cap(DEFAULT_VERTEX_CAP)?)
            .map(|i| self.label(i))
            .collect())
    }

    pub fn expand(&self) -> Result<Self> {
        let (l, m, n) = self.dims();
        Self::table(l, m, n, self.labels()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bilinear_matches_definition_and_table() {
        let (l, m, n) = (2, 2, 2);
        for yc in 0..4u64 {
            for zc in 0..4u64 {
                let (y, z) = (GF2Vector::from_u64(m, yc), GF2Vector::from_u64(n, zc));
                let s = TensorStrategy::bilinear(l, y.clone(), z.clone()).unwrap();
                let t = s.expand().unwrap();
                for idx in 0..(1u64 << (l * m * n)) {
                    let ten = GF2Tensor::from_index(l, m, n, idx);
                    let bits: Vec<bool> = (0..l)
                        .map(|i| {
                            let mut acc = false;
                            for j in 0..m {
                                for k in 0..n {
                                    acc ^= ten.get(i, j, k) && y.get(j) && z.get(k);
                                }
                            }
                            acc
                        })
                        .collect();
                    let want = GF2Vector::from_bools(&bits);
                    assert_eq!(s.eval(&ten).unwrap(), want);
                    assert_eq!(t.eval(&ten).unwrap(), want);
                }
            }
        }
    }
}
