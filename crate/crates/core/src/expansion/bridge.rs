//! Links between expansion, soundness and the embedding, measured on
//! concrete strategies and sets.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use super::measure::{nice_density, stay_probability, GrassmannSet, ShortcodeSet};
use super::NiceSetShortcode;
use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::gf2::{sample_basis, GF2Vector};
use crate::graphs::ShortcodeGraph;
use crate::rng::Prng;
use crate::strategies::ShortcodeStrategy;
use crate::testers::{shortcode_pass_probability, Mode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSet {
    pub z: GF2Vector,
    pub size: u64,
    /// ν(S_z).
    pub stay: BigRational,
}

/// The averaging step from a unique-test pass probability to a level set
/// `S_z = {M : F(M) = z}` with high stay probability, and the affine rule
/// `H(M) = M q + t + z` that is constant on the best nice set for `S_z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeReport {
    pub l: usize,
    pub n: usize,
    pub levels: Vec<LevelSet>,
    /// Unique-test pass probability of `F`.
    pub pass: BigRational,
    /// `Σ_z |S_z| / N · ν(S_z)`; equals `pass`.
    pub average: BigRational,
    /// Level set with the largest stay probability (smallest `z` on ties).
    pub best: usize,
    pub witness: NiceSetShortcode,
    /// `|S_best ∩ witness| / |witness|`.
    pub density: BigRational,
    /// `H` as `(z_H, u_H)` with `H(M) = M z_H + u_H`.
    pub h: (GF2Vector, GF2Vector),
    /// Fraction of the witness on which `F` and `H` agree.
    pub h_agreement: BigRational,
}

impl BridgeReport {
    pub fn identity_holds(&self) -> bool {
        self.average == self.pass
    }

    pub fn averaging_holds(&self) -> bool {
        self.levels[self.best].stay >= self.pass
    }

    pub fn to_json(&self) -> Value {
        json!({
            "l": self.l,
            "n": self.n,
            "levels": self.levels.iter().map(|s| json!({
                "z": s.z.to_string(),
                "size": s.size,
                "stay": s.stay.to_string(),
            })).collect::<Vec<_>>(),
            "pass": self.pass.to_string(),
            "average": self.average.to_string(),
            "best_z": self.levels[self.best].z.to_string(),
            "witness": {
                "right": self.witness.right().iter().map(|(q, t)| json!({"q": q.to_string(), "t": t.to_string()})).collect::<Vec<_>>(),
                "left": self.witness.left().iter().map(|(r, s)| json!({"r": r.to_string(), "s": s.to_string()})).collect::<Vec<_>>(),
            },
            "density": self.density.to_string(),
            "h": { "z": self.h.0.to_string(), "u": self.h.1.to_string() },
            "h_agreement": self.h_agreement.to_string(),
        })
    }
}

pub fn expansion_soundness_bridge(
    f: &ShortcodeStrategy,
    r_max: usize,
    cap: u64,
) -> Result<BridgeReport> {
    let (l, n) = (f.l(), f.n());
    let graph = ShortcodeGraph::new(l, n)?;
    let total = graph.check_cap(cap)?;
    let labels = f.labels()?;
    let mode = Mode::Exact { cap, jobs: 1 };
    let pass = shortcode_pass_probability(f, true, mode)?
        .probability
        .exact()
        .cloned()
        .expect("exact mode");

    let mut levels = Vec::new();
    let mut sets = Vec::new();
    let mut average = BigRational::zero();
    for z in 0..(1u64 << l) {
        let set = ShortcodeSet::new(graph, (0..total).filter(|&m| labels[m as usize] == z))?;
        if set.is_empty() {
            continue;
        }
        let stay = stay_probability(&set, mode)?
            .stay
            .exact()
            .cloned()
            .expect("exact mode");
        let weight = BigRational::new(BigInt::from(set.len()), BigInt::from(total));
        average += weight * &stay;
        levels.push(LevelSet {
            z: GF2Vector::from_u64(l, z),
            size: set.len() as u64,
            stay,
        });
        sets.push(set);
    }
    let mut best = 0;
    for (i, level) in levels.iter().enumerate() {
        if level.stay > levels[best].stay {
            best = i;
        }
    }

    let mut witness: Option<(NiceSetShortcode, BigRational)> = None;
    for t in NiceSetShortcode::enumerate(l, n, r_max) {
        let d = nice_density(&sets[best], &t)?;
        if witness.as_ref().is_none_or(|(_, w)| d > *w) {
            witness = Some((t, d));
        }
    }
    let (witness, density) = witness.expect("the unconstrained set is always a candidate");

    let z = levels[best].z.clone();
    let (q, t) = witness
        .right()
        .first()
        .cloned()
        .unwrap_or_else(|| (GF2Vector::zeros(n), GF2Vector::zeros(l)));
    let h = ShortcodeStrategy::affine(q.clone(), &t + &z)?;
    let members = witness.members();
    let agree = members
        .iter()
        .filter(|&&m| h.label(m) == labels[m as usize])
        .count();
    let h_agreement = BigRational::new(BigInt::from(agree), BigInt::from(members.len()));

    Ok(BridgeReport {
        l,
        n,
        levels,
        pass,
        average,
        best,
        witness,
        density,
        h: (q, &t + &z),
        h_agreement,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConverseTrial {
    pub image_size: u64,
    /// ν of the image, `None` when the image is empty.
    pub stay: Option<BigRational>,
    /// Walk stay probability of the image, `None` when the image is empty.
    pub walk_stay: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConverseReport {
    pub l: usize,
    pub n: usize,
    pub size: u64,
    pub trials: Vec<ConverseTrial>,
    /// Mean of `|φ_B(S ∩ 𝒱_l(B))| / |S|` over the sampled bases.
    pub mean_fraction: f64,
    /// Sample standard deviation of that fraction.
    pub std_fraction: f64,
    /// Mean walk stay probability over trials with a nonempty image.
    pub mean_walk_stay: f64,
}

impl ConverseReport {
    pub fn to_json(&self) -> Value {
        json!({
            "l": self.l,
            "n": self.n,
            "size": self.size,
            "trials": self.trials.len(),
            "mean_fraction": self.mean_fraction,
            "std_fraction": self.std_fraction,
            "mean_walk_stay": self.mean_walk_stay,
            "image_sizes": self.trials.iter().map(|t| t.image_size).collect::<Vec<_>>(),
        })
    }
}

/// Images of `S` under `φ_B` for `trials` uniformly random bases `B`.
pub fn converse_embedding_expansion(
    s: &GrassmannSet,
    trials: usize,
    prng: &mut Prng,
    cap: u64,
) -> Result<ConverseReport> {
    if s.is_empty() {
        return Err(Error::Domain("converse check of an empty set".into()));
    }
    let g = s.graph();
    let (l, n) = (g.l(), g.n());
    let graph = ShortcodeGraph::new(l, n - l)?;
    let mode = Mode::Exact { cap, jobs: 1 };
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let e = Embedding::new(l, sample_basis(prng, n))?;
        let mut image = Vec::new();
        for v in s.members() {
            if e.in_domain(v)? {
                image.push(e.phi(v)?.to_index());
            }
        }
        let image = ShortcodeSet::new(graph, image)?;
        let (stay, walk_stay) = if image.is_empty() {
            (None, None)
        } else {
            let r = stay_probability(&image, mode)?;
            (r.stay.exact().cloned(), r.walk_stay().exact().cloned())
        };
        out.push(ConverseTrial {
            image_size: image.len() as u64,
            stay,
            walk_stay,
        });
    }
    let size = s.len() as f64;
    let fractions: Vec<f64> = out.iter().map(|t| t.image_size as f64 / size).collect();
    let k = fractions.len().max(1) as f64;
    let mean = fractions.iter().sum::<f64>() / k;
    let var = if fractions.len() > 1 {
        fractions.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0)
    } else {
        0.0
    };
    let walks: Vec<f64> = out
        .iter()
        .filter_map(|t| t.walk_stay.as_ref())
        .map(|r| num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN))
        .collect();
    let mean_walk_stay = if walks.is_empty() {
        0.0
    } else {
        walks.iter().sum::<f64>() / walks.len() as f64
    };
    Ok(ConverseReport {
        l,
        n,
        size: s.len() as u64,
        trials: out,
        mean_fraction: mean,
        std_fraction: var.sqrt(),
        mean_walk_stay,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::NiceSetGrassmann;
    use crate::graphs::GrassmannGraph;
    use crate::strategies::make_planted;
    use crate::strategies::ShortcodeRegion;

    fn v(s: &str) -> GF2Vector {
        s.parse().unwrap()
    }

    #[test]
    fn constant_strategy_has_one_level() {
        let f = ShortcodeStrategy::constant(3, v("1")).unwrap();
        let r = expansion_soundness_bridge(&f, 1, 1 << 20).unwrap();
        assert_eq!(r.levels.len(), 1);
        assert_eq!(r.levels[0].stay, BigRational::from_integer(1.into()));
        assert!(r.identity_holds() && r.averaging_holds());
        assert_eq!(r.h_agreement, BigRational::from_integer(1.into()));
    }

    #[test]
    fn affine_strategy_identity() {
        for z in 0..8u64 {
            let f = ShortcodeStrategy::affine(GF2Vector::from_u64(3, z), v("0")).unwrap();
            let r = expansion_soundness_bridge(&f, 1, 1 << 20).unwrap();
            assert!(r.identity_holds());
            assert!(r.averaging_holds());
            // every level set of a nonconstant affine rule is itself 1-nice
            if z != 0 {
                assert_eq!(r.density, BigRational::from_integer(1.into()));
            }
            assert_eq!(r.h_agreement, r.density);
        }
    }

    #[test]
    fn planted_strategy_averaging() {
        let mut prng = Prng::new(4, 0);
        let parts = vec![
            ShortcodeRegion::Nice(
                NiceSetShortcode::new(1, 3, vec![(v("100"), v("0"))], vec![]).unwrap(),
            ),
            ShortcodeRegion::Nice(
                NiceSetShortcode::new(1, 3, vec![(v("100"), v("1"))], vec![]).unwrap(),
            ),
        ];
        let f = make_planted(&mut prng, 1, 3, parts).unwrap();
        let r = expansion_soundness_bridge(&f, 1, 1 << 20).unwrap();
        assert!(r.identity_holds() && r.averaging_holds());
        assert_eq!(r.h_agreement, r.density);
    }

    #[test]
    fn converse_on_everything() {
        let g = GrassmannGraph::new(2, 4).unwrap();
        let all = GrassmannSet::from_predicate(g, 1 << 10, |_| true).unwrap();
        let mut prng = Prng::new(2, 0);
        let r = converse_embedding_expansion(&all, 5, &mut prng, 1 << 20).unwrap();
        assert!(r.trials.iter().all(|t| t.image_size == 16));
        assert!((r.mean_fraction - 16.0 / 35.0).abs() < 1e-12);

        let nice = NiceSetGrassmann::new(
            2,
            Subspace::span(4, &[v("1100")]).unwrap(),
            Subspace::full(4),
        )
        .unwrap();
        let s = GrassmannSet::from_nice(&nice).unwrap();
        let r = converse_embedding_expansion(&s, 5, &mut prng, 1 << 20).unwrap();
        assert_eq!(r.size, 7);
    }

    use crate::gf2::Subspace;
}
