//! Exhaustive decoders: the nice set and global rule with the highest
//! conditional agreement.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use super::{NiceSetGrassmann, NiceSetShortcode};
use crate::error::{Error, Result};
use crate::gf2::GF2Vector;
use crate::graphs::DEFAULT_VERTEX_CAP;
use crate::strategies::{GrassmannStrategy, ShortcodeStrategy};

/// Default cap on the decoder's work (member evaluations).
pub const DEFAULT_DECODE_CAP: u64 = 1 << 28;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodedSet {
    Shortcode(NiceSetShortcode),
    Grassmann(NiceSetGrassmann),
}

impl DecodedSet {
    pub fn r(&self) -> usize {
        match self {
            DecodedSet::Shortcode(t) => t.r(),
            DecodedSet::Grassmann(s) => s.r(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodedRule {
    /// `F(M) = M z + u`.
    Affine { z: GF2Vector, u: GF2Vector },
    /// `F(V) = f|_V`.
    Functional(GF2Vector),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeReport {
    pub l: usize,
    pub n: usize,
    pub r_max: usize,
    pub set: DecodedSet,
    pub rule: DecodedRule,
    /// Members of the set on which the strategy follows the rule.
    pub agree: u64,
    pub size: u64,
    pub density: BigRational,
    /// Nice sets examined.
    pub candidates: u64,
}

impl DecodeReport {
    pub fn r(&self) -> usize {
        self.set.r()
    }

    pub fn to_json(&self) -> Value {
        let pairs = |list: &[(GF2Vector, GF2Vector)], a: &str, b: &str| -> Value {
            list.iter()
                .map(|(x, y)| json!({ a: x.to_string(), b: y.to_string() }))
                .collect()
        };
        let rows = |s: &crate::gf2::Subspace| -> Value {
            s.basis().row_iter().map(|r| json!(r.to_string())).collect()
        };
        let (graph, set) = match &self.set {
            DecodedSet::Shortcode(t) => (
                "shortcode",
                json!({
                    "right": pairs(t.right(), "q", "t"),
                    "left": pairs(t.left(), "r", "s"),
                }),
            ),
            DecodedSet::Grassmann(s) => {
                ("grassmann", json!({ "q": rows(s.q()), "w": rows(s.w()) }))
            }
        };
        let rule = match &self.rule {
            DecodedRule::Affine { z, u } => json!({ "z": z.to_string(), "u": u.to_string() }),
            DecodedRule::Functional(f) => json!({ "f": f.to_string() }),
        };
        json!({
            "graph": graph,
            "l": self.l,
            "n": self.n,
            "search": "exhaustive",
            "r_max": self.r_max,
            "r": self.r(),
            "set": set,
            "rule": rule,
            "agree": self.agree,
            "size": self.size,
            "density": self.density.to_string(),
            "candidates": self.candidates,
        })
    }
}

/// Current best as `(agree, size)`; strictly better densities replace it,
/// so earlier candidates win ties.
struct Best<W> {
    agree: u64,
    size: u64,
    witness: Option<W>,
}

impl<W> Best<W> {
    fn new() -> Self {
        Self {
            agree: 0,
            size: 1,
            witness: None,
        }
    }

    fn offer(&mut self, agree: u64, size: u64, witness: impl FnOnce() -> W) {
        if self.witness.is_none()
            || agree as u128 * self.size as u128 > self.agree as u128 * size as u128
        {
            self.agree = agree;
            self.size = size;
            self.witness = Some(witness());
        }
    }
}

fn parity(x: u64) -> u64 {
    (x.count_ones() & 1) as u64
}

fn packed_mul(l: usize, n: usize, m: u64, z: u64) -> u64 {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    (0..l).fold(0, |acc, i| acc | parity((m >> (i * n)) & mask & z) << i)
}

/// Searches every nice set with `r <= r_max` and every affine rule
/// `M z + u`. Ties go to the earlier candidate: smaller `r`, then the
/// canonical enumeration order of nice sets, then smaller `z`, then smaller `u`.
pub fn decode_shortcode(f: &ShortcodeStrategy, r_max: usize, cap: u64) -> Result<DecodeReport> {
    let (l, n) = (f.l(), f.n());
    let bits = l * n + l + n;
    if bits >= 64 || (1u64 << bits) > cap {
        return Err(Error::resource(
            format!("decoder search on S({l},{n})"),
            format!("2^{bits}"),
            cap,
        ));
    }
    let labels = f.labels()?;
    let sets = NiceSetShortcode::enumerate(l, n, r_max);
    let members: Vec<Vec<u64>> = sets.iter().map(|t| t.members()).collect();
    let work: u128 = members.iter().map(|m| m.len() as u128).sum::<u128>() << n;
    if work > cap as u128 {
        return Err(Error::resource("decoder work", work, cap));
    }
    let mut best = Best::new();
    let mut counts = vec![0u64; 1 << l];
    for (k, ms) in members.iter().enumerate() {
        for z in 0..(1u64 << n) {
            counts.iter_mut().for_each(|c| *c = 0);
            for &m in ms {
                counts[(labels[m as usize] ^ packed_mul(l, n, m, z)) as usize] += 1;
            }
            for (u, &c) in counts.iter().enumerate() {
                best.offer(c, ms.len() as u64, || (k, z, u as u64));
            }
        }
    }
    let (k, z, u) = best
        .witness
        .expect("the unconstrained set is always a candidate");
    Ok(DecodeReport {
        l,
        n,
        r_max,
        set: DecodedSet::Shortcode(sets[k].clone()),
        rule: DecodedRule::Affine {
            z: GF2Vector::from_u64(n, z),
            u: GF2Vector::from_u64(l, u),
        },
        agree: best.agree,
        size: best.size,
        density: BigRational::new(BigInt::from(best.agree), BigInt::from(best.size)),
        candidates: sets.len() as u64,
    })
}

/// Searches pairs `Q ⊆ W` with `dim Q + codim W <= r_max` and every linear
/// functional `f` on GF(2)^n. A constant term would make `f|_V` non-linear,
/// so only the `2^n` linear functionals are candidates. Ties as for
/// [`decode_shortcode`].
pub fn decode_grassmann(f: &GrassmannStrategy, r_max: usize, cap: u64) -> Result<DecodeReport> {
    let (l, n) = (f.l(), f.n());
    if n >= 63 {
        return Err(Error::resource(
            format!("decoder search on G({l},{n})"),
            format!("2^{n}"),
            cap,
        ));
    }
    let vertices = f.graph().vertices_with_cap(cap.min(DEFAULT_VERTEX_CAP))?;
    let table: Vec<(u64, Vec<u64>)> = vertices
        .iter()
        .map(|v| {
            let rows = v.basis().row_iter().map(|r| r.to_u64()).collect();
            f.values(v).map(|x| (x.to_u64(), rows))
        })
        .collect::<Result<_>>()?;
    let sets = NiceSetGrassmann::enumerate(l, n, r_max);
    let members: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| {
            s.members()
                .iter()
                .map(|v| vertices.index_of(v).expect("members are vertices"))
                .collect()
        })
        .collect();
    let work: u128 = members.iter().map(|m| m.len() as u128).sum::<u128>() << n;
    if work > cap as u128 {
        return Err(Error::resource("decoder work", work, cap));
    }
    let mut best = Best::new();
    for (k, ms) in members.iter().enumerate() {
        for c in 0..(1u64 << n) {
            let agree = ms
                .iter()
                .filter(|&&i| {
                    let (value, rows) = &table[i];
                    let predicted = rows
                        .iter()
                        .enumerate()
                        .fold(0, |acc, (j, &row)| acc | parity(row & c) << j);
                    predicted == *value
                })
                .count() as u64;
            best.offer(agree, ms.len() as u64, || (k, c));
        }
    }
    let (k, c) = best
        .witness
        .expect("the unconstrained set is always a candidate");
    Ok(DecodeReport {
        l,
        n,
        r_max,
        set: DecodedSet::Grassmann(sets[k].clone()),
        rule: DecodedRule::Functional(GF2Vector::from_u64(n, c)),
        agree: best.agree,
        size: best.size,
        density: BigRational::new(BigInt::from(best.agree), BigInt::from(best.size)),
        candidates: sets.len() as u64,
    })
}

/// Density of agreement between a strategy and a reported witness,
/// recomputed from scratch.
pub fn remeasure_shortcode(f: &ShortcodeStrategy, report: &DecodeReport) -> Result<BigRational> {
    let (DecodedSet::Shortcode(t), DecodedRule::Affine { z, u }) = (&report.set, &report.rule)
    else {
        return Err(Error::Parameter("not a shortcode decode report".into()));
    };
    let rule = ShortcodeStrategy::affine(z.clone(), u.clone())?;
    let members = t.members();
    let agree = members
        .iter()
        .filter(|&&m| f.label(m) == rule.label(m))
        .count();
    Ok(BigRational::new(
        BigInt::from(agree),
        BigInt::from(members.len()),
    ))
}

pub fn remeasure_grassmann(f: &GrassmannStrategy, report: &DecodeReport) -> Result<BigRational> {
    let (DecodedSet::Grassmann(s), DecodedRule::Functional(c)) = (&report.set, &report.rule) else {
        return Err(Error::Parameter("not a Grassmann decode report".into()));
    };
    let members = s.members();
    let mut agree = 0usize;
    for v in &members {
        let predicted: Vec<bool> = v.basis().row_iter().map(|row| c.dot(&row)).collect();
        if f.values(v)? == GF2Vector::from_bools(&predicted) {
            agree += 1;
        }
    }
    Ok(BigRational::new(
        BigInt::from(agree),
        BigInt::from(members.len()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::Subspace;
    use crate::rng::Prng;
    use crate::strategies::LinearFunctional;

    fn v(s: &str) -> GF2Vector {
        s.parse().unwrap()
    }

    #[test]
    fn affine_strategy_decodes_at_order_zero() {
        let f = ShortcodeStrategy::affine(v("101"), v("1")).unwrap();
        let r = decode_shortcode(&f, 1, DEFAULT_DECODE_CAP).unwrap();
        assert_eq!(r.r(), 0);
        assert_eq!(r.density, BigRational::from_integer(1.into()));
        assert_eq!(
            r.rule,
            DecodedRule::Affine {
                z: v("101"),
                u: v("1")
            }
        );
        assert_eq!(remeasure_shortcode(&f, &r).unwrap(), r.density);
    }

    #[test]
    fn corrupted_affine_strategy() {
        let base = ShortcodeStrategy::affine(v("011"), v("0")).unwrap();
        let mut labels = base.labels().unwrap();
        labels[5] ^= 1;
        let f = ShortcodeStrategy::table(1, 3, labels).unwrap();
        let r = decode_shortcode(&f, 0, DEFAULT_DECODE_CAP).unwrap();
        assert_eq!(
            r.rule,
            DecodedRule::Affine {
                z: v("011"),
                u: v("0")
            }
        );
        assert_eq!(r.density, BigRational::new(7.into(), 8.into()));
        // one constraint can cut the corrupted vertex away
        let r1 = decode_shortcode(&f, 1, DEFAULT_DECODE_CAP).unwrap();
        assert_eq!(
            (r1.r(), r1.density.clone()),
            (1, BigRational::from_integer(1.into()))
        );
        assert_eq!(remeasure_shortcode(&f, &r1).unwrap(), r1.density);
    }

    #[test]
    fn decoder_cap() {
        let f = ShortcodeStrategy::affine(v("0110"), v("00")).unwrap();
        assert!(matches!(
            decode_shortcode(&f, 1, 1000),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn grassmann_linear_strategy() {
        let f = GrassmannStrategy::linear(2, 4, LinearFunctional::linear(v("1011"))).unwrap();
        let r = decode_grassmann(&f, 1, DEFAULT_DECODE_CAP).unwrap();
        assert_eq!(r.r(), 0);
        assert_eq!(r.rule, DecodedRule::Functional(v("1011")));
        assert_eq!(r.density, BigRational::from_integer(1.into()));
    }

    #[test]
    fn grassmann_random_table_matches_brute_force() {
        let mut prng = Prng::new(12, 0);
        let g = crate::graphs::GrassmannGraph::new(1, 3).unwrap();
        let vertices = g.vertices().unwrap();
        let values: Vec<GF2Vector> = (0..vertices.len())
            .map(|_| GF2Vector::from_u64(1, prng.bits(1)))
            .collect();
        let f = GrassmannStrategy::table(vertices.clone(), values).unwrap();
        let r = decode_grassmann(&f, 1, DEFAULT_DECODE_CAP).unwrap();
        // oracle: every (Q, W) by brute-force membership, every f
        let mut best = (0usize, 1usize);
        let subspaces: Vec<Subspace> = (0..=3).flat_map(|k| Subspace::enumerate(3, k)).collect();
        for q in subspaces.iter().filter(|q| q.dim() <= 1) {
            for w in subspaces
                .iter()
                .filter(|w| w.dim() >= 2 && q.is_subspace_of(w))
            {
                if q.dim() + 3 - w.dim() > 1 {
                    continue;
                }
                let ms: Vec<&Subspace> = vertices
                    .iter()
                    .filter(|x| q.is_subspace_of(x) && x.is_subspace_of(w))
                    .collect();
                for c in 0..8u64 {
                    let c = GF2Vector::from_u64(3, c);
                    let hits = ms
                        .iter()
                        .filter(|x| f.values(x).unwrap().get(0) == c.dot(&x.basis().row(0)))
                        .count();
                    if hits * best.1 > best.0 * ms.len() {
                        best = (hits, ms.len());
                    }
                }
            }
        }
        assert_eq!(r.density, BigRational::new(best.0.into(), best.1.into()));
        assert_eq!(remeasure_grassmann(&f, &r).unwrap(), r.density);
    }
}
