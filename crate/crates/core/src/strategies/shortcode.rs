use std::collections::HashSet;
use std::sync::Arc;

use super::LinearFunctional;
use crate::error::{Error, Result};
use crate::expansion::NiceSetShortcode;
use crate::gf2::{sample_vector, GF2Matrix, GF2Vector};
use crate::graphs::{ShortcodeGraph, DEFAULT_VERTEX_CAP};
use crate::rng::Prng;

#[inline]
fn row_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Packed `M z` for the packed `l x n` matrix `m`.
#[inline]
pub(crate) fn packed_mul_vec(l: usize, n: usize, m: u64, z: u64) -> u64 {
    let mask = row_mask(n);
    let mut out = 0u64;
    for i in 0..l {
        let row = (m >> (i * n)) & mask;
        out |= (((row & z).count_ones() & 1) as u64) << i;
    }
    out
}

/// A set of shortcode vertices used as a planted part.
#[derive(Clone, Debug)]
pub enum ShortcodeRegion {
    Nice(NiceSetShortcode),
    Explicit(Arc<HashSet<u64>>),
}

impl ShortcodeRegion {
    pub fn contains(&self, l: usize, n: usize, idx: u64) -> bool {
        match self {
            ShortcodeRegion::Nice(s) => s.contains(&GF2Matrix::from_index(l, n, idx)),
            ShortcodeRegion::Explicit(s) => s.contains(&idx),
        }
    }
}

/// One planted part: vertices in `region` get `f` applied per row plus
/// `offset`.
#[derive(Clone, Debug)]
pub struct PlantedPart {
    pub region: ShortcodeRegion,
    pub f: LinearFunctional,
    pub offset: GF2Vector,
}

#[derive(Clone, Debug)]
pub struct ShortcodePlanted {
    pub parts: Vec<PlantedPart>,
    pub fallback_seed: u64,
}

#[derive(Clone, Debug)]
pub enum ShortcodeBacking {
    /// Packed labels indexed by packed matrix.
    Table(Arc<Vec<u64>>),
    /// `F(M) = M z + u`.
    Affine {
        z: GF2Vector,
        u: GF2Vector,
    },
    /// `F(M)_i = f(row i of M)`.
    RowFn(LinearFunctional),
    Planted(Arc<ShortcodePlanted>),
    /// `F(M) = base(M) + M h`.
    Shifted {
        base: Arc<ShortcodeStrategy>,
        h: GF2Vector,
    },
}

/// An `l`-bit label on each vertex of S_{l,n}.
#[derive(Clone, Debug)]
pub struct ShortcodeStrategy {
    graph: ShortcodeGraph,
    backing: ShortcodeBacking,
}

impl ShortcodeStrategy {
    pub fn affine(z: GF2Vector, u: GF2Vector) -> Result<Self> {
        let graph = ShortcodeGraph::new(u.len(), z.len())?;
        Ok(Self {
            graph,
            backing: ShortcodeBacking::Affine { z, u },
        })
    }

    pub fn row_fn(l: usize, f: LinearFunctional) -> Result<Self> {
        let graph = ShortcodeGraph::new(l, f.ambient())?;
        Ok(Self {
            graph,
            backing: ShortcodeBacking::RowFn(f),
        })
    }

    pub fn constant(n: usize, u: GF2Vector) -> Result<Self> {
        Self::affine(GF2Vector::zeros(n), u)
    }

    pub fn table(l: usize, n: usize, labels: Vec<u64>) -> Result<Self> {
        let graph = ShortcodeGraph::new(l, n)?;
        let count = graph.check_cap(u64::MAX)?;
        if labels.len() as u64 != count {
            return Err(Error::Parameter(format!(
                "table has {} entries, S({l},{n}) has {count} vertices",
                labels.len()
            )));
        }
        if labels.iter().any(|&x| x & !row_mask(l) != 0) {
            return Err(Error::Parameter(format!("table label wider than l={l}")));
        }
        Ok(Self {
            graph,
            backing: ShortcodeBacking::Table(Arc::new(labels)),
        })
    }

    pub fn table_from_fn(l: usize, n: usize, mut label: impl FnMut(u64) -> u64) -> Result<Self> {
        let graph = ShortcodeGraph::new(l, n)?;
        let labels = graph.vertices()?.map(&mut label).collect();
        Self::table(l, n, labels)
    }

    /// Uniformly random table.
    pub fn random_table(prng: &mut Prng, l: usize, n: usize) -> Result<Self> {
        Self::table_from_fn(l, n, |_| prng.bits(l))
    }

    pub fn planted(
        l: usize,
        n: usize,
        parts: Vec<PlantedPart>,
        fallback_seed: u64,
    ) -> Result<Self> {
        let graph = ShortcodeGraph::new(l, n)?;
        for p in &parts {
            if p.f.ambient() != n || p.offset.len() != l {
                return Err(Error::Parameter("planted part has the wrong shape".into()));
            }
        }
        Ok(Self {
            graph,
            backing: ShortcodeBacking::Planted(Arc::new(ShortcodePlanted {
                parts,
                fallback_seed,
            })),
        })
    }

    pub fn graph(&self) -> ShortcodeGraph {
        self.graph
    }

    pub fn l(&self) -> usize {
        self.graph.l()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn backing(&self) -> &ShortcodeBacking {
        &self.backing
    }

    /// Packed label of the packed matrix `idx`.
    pub fn label(&self, idx: u64) -> u64 {
        let (l, n) = (self.l(), self.n());
        match &self.backing {
            ShortcodeBacking::Table(t) => t[idx as usize],
            ShortcodeBacking::Affine { z, u } => packed_mul_vec(l, n, idx, z.to_u64()) ^ u.to_u64(),
            ShortcodeBacking::RowFn(f) => {
                let c = if f.constant() { row_mask(l) } else { 0 };
                packed_mul_vec(l, n, idx, f.coefficients().to_u64()) ^ c
            }
            ShortcodeBacking::Planted(p) => {
                match p.parts.iter().find(|part| part.region.contains(l, n, idx)) {
                    Some(part) => {
                        let c = if part.f.constant() { row_mask(l) } else { 0 };
                        packed_mul_vec(l, n, idx, part.f.coefficients().to_u64())
                            ^ c
                            ^ part.offset.to_u64()
                    }
                    None => Prng::new(p.fallback_seed, idx).bits(l),
                }
            }
            ShortcodeBacking::Shifted { base, h } => {
                base.label(idx) ^ packed_mul_vec(l, n, idx, h.to_u64())
            }
        }
    }

    pub fn eval(&self, m: &GF2Matrix) -> Result<GF2Vector> {
        self.graph.check_vertex(m)?;
        Ok(GF2Vector::from_u64(self.l(), self.label(m.to_index())))
    }

    /// All labels in vertex order.
    pub fn labels(&self) -> Result<Vec<u64>> {
        Ok(self
            .graph
            .vertices_with_cap(DEFAULT_VERTEX_CAP)?
            .map(|i| self.label(i))
            .collect())
    }

    pub fn expand(&self) -> Result<Self> {
        Self::table(self.l(), self.n(), self.labels()?)
    }

    /// `G(M) = F(M) + M h`, in closed form where the backing allows.
    pub fn shifted(&self, h: &GF2Vector) -> Result<Self> {
        if h.len() != self.n() {
            return Err(Error::Parameter(format!(
                "shift of length {} for n={}",
                h.len(),
                self.n()
            )));
        }
        let (l, n) = (self.l(), self.n());
        let backing = match &self.backing {
            ShortcodeBacking::Affine { z, u } => ShortcodeBacking::Affine {
                z: z + h,
                u: u.clone(),
            },
            ShortcodeBacking::RowFn(f) => ShortcodeBacking::RowFn(f.shifted(h)),
            ShortcodeBacking::Table(t) => {
                let hb = h.to_u64();
                ShortcodeBacking::Table(Arc::new(
                    t.iter()
                        .enumerate()
                        .map(|(i, &x)| x ^ packed_mul_vec(l, n, i as u64, hb))
                        .collect(),
                ))
            }
            ShortcodeBacking::Shifted { base, h: h0 } => ShortcodeBacking::Shifted {
                base: base.clone(),
                h: h0 + h,
            },
            ShortcodeBacking::Planted(_) => ShortcodeBacking::Shifted {
                base: Arc::new(self.clone()),
                h: h.clone(),
            },
        };
        Ok(Self {
            graph: self.graph,
            backing,
        })
    }

    /// `(z, u)` when the backing is affine or row-functional.
    pub fn as_affine(&self) -> Option<(GF2Vector, GF2Vector)> {
        match &self.backing {
            ShortcodeBacking::Affine { z, u } => Some((z.clone(), u.clone())),
            ShortcodeBacking::RowFn(f) => Some((
                f.coefficients().clone(),
                if f.constant() {
                    GF2Vector::ones(self.l())
                } else {
                    GF2Vector::zeros(self.l())
                },
            )),
            _ => None,
        }
    }
}

pub fn eval_shortcode(f: &ShortcodeStrategy, m: &GF2Matrix) -> Result<GF2Vector> {
    f.eval(m)
}

/// Planted shortcode strategy: each part gets a uniform linear functional
/// applied per row plus a uniform offset; first matching part wins, other
/// vertices get independent seeded labels.
pub fn make_planted(
    prng: &mut Prng,
    l: usize,
    n: usize,
    parts: Vec<ShortcodeRegion>,
) -> Result<ShortcodeStrategy> {
    let parts = parts
        .into_iter()
        .map(|region| PlantedPart {
            region,
            f: LinearFunctional::random(prng, n),
            offset: sample_vector(prng, l),
        })
        .collect();
    let seed = prng.bits(64);
    ShortcodeStrategy::planted(l, n, parts, seed)
}

/// Draws a uniform `h` and returns it with `G(M) = F(M) + M h`.
pub fn uniquify(prng: &mut Prng, f: &ShortcodeStrategy) -> (GF2Vector, ShortcodeStrategy) {
    let h = sample_vector(prng, f.n());
    let g = f.shifted(&h).expect("h has length n");
    (h, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> GF2Vector {
        s.parse().unwrap()
    }

    fn m(s: &str) -> GF2Matrix {
        GF2Matrix::parse_literal(s, None).unwrap()
    }

    #[test]
    fn eval_examples() {
        let c = ShortcodeStrategy::constant(2, v("10")).unwrap();
        assert_eq!(eval_shortcode(&c, &m("11;01")).unwrap(), v("10"));
        let a = ShortcodeStrategy::affine(v("10"), v("00")).unwrap();
        assert_eq!(eval_shortcode(&a, &m("11;01")).unwrap(), v("10"));
        let r = ShortcodeStrategy::row_fn(1, LinearFunctional::new(v("11"), true)).unwrap();
        assert_eq!(eval_shortcode(&r, &m("10")).unwrap(), v("0"));
        assert!(eval_shortcode(&a, &m("11")).is_err());
    }

    #[test]
    fn structured_backings_match_direct_evaluation() {
        for (l, n) in [(1, 3), (2, 2), (2, 3), (3, 4)] {
            let graph = ShortcodeGraph::new(l, n).unwrap();
            for zc in 0..(1u64 << n) {
                let z = GF2Vector::from_u64(n, zc);
                let u = GF2Vector::from_u64(l, zc % (1 << l));
                let aff = ShortcodeStrategy::affine(z.clone(), u.clone()).unwrap();
                let f = LinearFunctional::new(z.clone(), zc & 1 == 1);
                let row = ShortcodeStrategy::row_fn(l, f.clone()).unwrap();
                let (aff_t, row_t) = (aff.expand().unwrap(), row.expand().unwrap());
                for idx in graph.vertices().unwrap() {
                    let mat = graph.vertex(idx);
                    let want_aff = &mat.mul_vec(&z) + &u;
                    let bits: Vec<bool> = mat.row_iter().map(|r| f.eval(&r).unwrap()).collect();
                    let want_row = GF2Vector::from_bools(&bits);
                    assert_eq!(aff.eval(&mat).unwrap(), want_aff);
                    assert_eq!(aff_t.eval(&mat).unwrap(), want_aff);
                    assert_eq!(row.eval(&mat).unwrap(), want_row);
                    assert_eq!(row_t.eval(&mat).unwrap(), want_row);
                }
            }
        }
    }

    #[test]
    fn shift_commutes_with_table_expansion() {
        let mut prng = Prng::new(8, 0);
        let (l, n) = (2, 3);
        let region = ShortcodeRegion::Nice(
            NiceSetShortcode::new(l, n, vec![(v("100"), v("01"))], vec![]).unwrap(),
        );
        let strategies = vec![
            ShortcodeStrategy::affine(v("101"), v("11")).unwrap(),
            ShortcodeStrategy::row_fn(l, LinearFunctional::new(v("011"), true)).unwrap(),
            ShortcodeStrategy::random_table(&mut prng, l, n).unwrap(),
            make_planted(&mut prng, l, n, vec![region]).unwrap(),
        ];
        for f in &strategies {
            for hc in 0..8u64 {
                let h = GF2Vector::from_u64(n, hc);
                let shifted = f.shifted(&h).unwrap();
                let by_table = f.expand().unwrap().shifted(&h).unwrap();
                for idx in 0..(1u64 << (l * n)) {
                    let mat = GF2Matrix::from_index(l, n, idx);
                    let want = &f.eval(&mat).unwrap() + &mat.mul_vec(&h);
                    assert_eq!(shifted.eval(&mat).unwrap(), want);
                    assert_eq!(by_table.eval(&mat).unwrap(), want);
                }
                // shifting twice by h is the identity
                assert_eq!(
                    shifted.shifted(&h).unwrap().labels().unwrap(),
                    f.labels().unwrap()
                );
            }
        }
    }

    #[test]
    fn uniquify_affine_closed_form() {
        let f = ShortcodeStrategy::affine(v("110"), v("1")).unwrap();
        let mut prng = Prng::new(4, 0);
        let (h, g) = uniquify(&mut prng, &f);
        assert_eq!(g.as_affine().unwrap(), (&v("110") + &h, v("1")));
        let zero = f.shifted(&GF2Vector::zeros(3)).unwrap();
        assert_eq!(zero.labels().unwrap(), f.labels().unwrap());
    }

    #[test]
    fn planted_parts_label_affinely() {
        let mut prng = Prng::new(2, 0);
        let (l, n) = (1, 2);
        let a = NiceSetShortcode::new(l, n, vec![(v("10"), v("0"))], vec![]).unwrap();
        let b = NiceSetShortcode::new(l, n, vec![(v("10"), v("1"))], vec![]).unwrap();
        let p = make_planted(
            &mut prng,
            l,
            n,
            vec![
                ShortcodeRegion::Nice(a.clone()),
                ShortcodeRegion::Nice(b.clone()),
            ],
        )
        .unwrap();
        let ShortcodeBacking::Planted(inner) = p.backing() else {
            panic!("planted backing expected");
        };
        for (part, set) in inner.parts.iter().zip([&a, &b]) {
            let (z, u) = (part.f.coefficients().to_u64(), part.offset.to_u64());
            for idx in set.members() {
                assert_eq!(p.label(idx), packed_mul_vec(l, n, idx, z) ^ u);
            }
        }
    }

    #[test]
    fn planted_without_parts_is_seeded_random() {
        let p1 = make_planted(&mut Prng::new(6, 0), 2, 3, vec![]).unwrap();
        let p2 = make_planted(&mut Prng::new(6, 0), 2, 3, vec![]).unwrap();
        assert_eq!(p1.labels().unwrap(), p2.labels().unwrap());
        let distinct: HashSet<u64> = p1.labels().unwrap().into_iter().collect();
        assert_eq!(distinct.len(), 4);
    }
}
