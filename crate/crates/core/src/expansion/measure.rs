use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use super::{NiceSetGrassmann, NiceSetShortcode};
use crate::error::{Error, Result};
use crate::gf2::Subspace;
use crate::graphs::{outer_index, GrassmannGraph, ShortcodeGraph};
use crate::montecarlo::{count_successes, sum_over, three_sigma};
use crate::rng::Prng;
use crate::testers::{ratio, Mode, Probability};

/// Salt for the second estimate of a sampled report, so the two figures use
/// distinct streams.
const PHI_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

/// A set of shortcode vertices, stored by packed index.
#[derive(Clone, Debug)]
pub struct ShortcodeSet {
    graph: ShortcodeGraph,
    members: Vec<u64>,
    lookup: HashSet<u64>,
}

impl ShortcodeSet {
    pub fn new(graph: ShortcodeGraph, members: impl IntoIterator<Item = u64>) -> Result<Self> {
        let count = graph.check_cap(u64::MAX)?;
        let mut members: Vec<u64> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&m| m >= count) {
            return Err(Error::Parameter(format!("vertex index {bad} out of range")));
        }
        let lookup = members.iter().copied().collect();
        Ok(Self {
            graph,
            members,
            lookup,
        })
    }

    pub fn from_predicate(
        graph: ShortcodeGraph,
        cap: u64,
        pred: impl Fn(u64) -> bool,
    ) -> Result<Self> {
        let count = graph.check_cap(cap)?;
        Self::new(graph, (0..count).filter(|&m| pred(m)))
    }

    pub fn from_nice(t: &NiceSetShortcode) -> Result<Self> {
        Self::new(ShortcodeGraph::new(t.l(), t.n())?, t.members())
    }

    pub fn graph(&self) -> ShortcodeGraph {
        self.graph
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: u64) -> bool {
        self.lookup.contains(&m)
    }
}

/// A set of Grassmann vertices.
#[derive(Clone, Debug)]
pub struct GrassmannSet {
    graph: GrassmannGraph,
    members: Vec<Subspace>,
    lookup: HashSet<Subspace>,
}

impl GrassmannSet {
    pub fn new(graph: GrassmannGraph, members: impl IntoIterator<Item = Subspace>) -> Result<Self> {
        let mut out: Vec<Subspace> = Vec::new();
        let mut lookup = HashSet::new();
        for v in members {
            if v.ambient() != graph.n() || v.dim() != graph.l() {
                return Err(Error::Parameter(format!(
                    "{v} is not a vertex of G({},{})",
                    graph.l(),
                    graph.n()
                )));
            }
            if lookup.insert(v.clone()) {
                out.push(v);
            }
        }
        Ok(Self {
            graph,
            members: out,
            lookup,
        })
    }

    pub fn from_predicate(
        graph: GrassmannGraph,
        cap: u64,
        pred: impl Fn(&Subspace) -> bool,
    ) -> Result<Self> {
        let vertices = graph.vertices_with_cap(cap)?;
        Self::new(graph, vertices.iter().filter(|v| pred(v)).cloned())
    }

    pub fn from_nice(s: &NiceSetGrassmann) -> Result<Self> {
        Self::new(GrassmannGraph::new(s.l(), s.n())?, s.members())
    }

    pub fn graph(&self) -> GrassmannGraph {
        self.graph
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: &Subspace) -> bool {
        self.lookup.contains(v)
    }
}

/// Stay probability and conditional edge expansion of a vertex set.
///
/// For shortcode sets `stay` is ν(S), the chance that `M + a b^T` stays in
/// `S` over uniform `a`, `b` (zero steps included), while `phi` counts only
/// steps that move. For Grassmann sets every step moves and `stay = 1 - phi`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionReport {
    pub graph: &'static str,
    pub l: usize,
    pub n: usize,
    pub size: u64,
    pub seed: Option<u64>,
    pub stay: Probability,
    pub stay_counts: (u64, u64),
    pub phi: Probability,
    pub phi_counts: (u64, u64),
}

impl ExpansionReport {
    /// Probability that a uniform neighbor (of a uniform member) stays in
    /// the set.
    pub fn walk_stay(&self) -> Probability {
        match &self.phi {
            Probability::Exact(r) => Probability::Exact(BigRational::from_integer(1.into()) - r),
            Probability::Estimate { value, ci3sigma } => Probability::Estimate {
                value: 1.0 - value,
                ci3sigma: *ci3sigma,
            },
        }
    }

    pub fn to_json(&self) -> Value {
        let prob = |p: &Probability| match p {
            Probability::Exact(r) => json!(r.to_string()),
            Probability::Estimate { value, .. } => json!(value),
        };
        let mut v = json!({
            "graph": self.graph,
            "l": self.l,
            "n": self.n,
            "size": self.size,
            "stay": prob(&self.stay),
            "stay_counts": [self.stay_counts.0, self.stay_counts.1],
            "phi": prob(&self.phi),
            "phi_counts": [self.phi_counts.0, self.phi_counts.1],
        });
        let o = v.as_object_mut().unwrap();
        match (&self.stay, &self.phi) {
            (
                Probability::Estimate { ci3sigma: a, .. },
                Probability::Estimate { ci3sigma: b, .. },
            ) => {
                o.insert("mode".into(), json!("monte_carlo"));
                o.insert("seed".into(), json!(self.seed));
                o.insert("stay_ci3sigma".into(), json!(a));
                o.insert("phi_ci3sigma".into(), json!(b));
            }
            _ => {
                o.insert("mode".into(), json!("exact"));
            }
        }
        v
    }
}

fn probability(mode: Mode, hits: u64, total: u64) -> Probability {
    match mode {
        Mode::Exact { .. } => Probability::Exact(ratio(hits, total)),
        Mode::MonteCarlo { .. } => {
            let p = hits as f64 / total.max(1) as f64;
            Probability::Estimate {
                value: p,
                ci3sigma: three_sigma(p, total.max(1)),
            }
        }
    }
}

fn checked_work(what: &str, work: u128, cap: u64) -> Result<u64> {
    if work > cap as u128 {
        return Err(Error::resource(what, work, cap));
    }
    Ok(work as u64)
}

pub fn stay_probability(s: &ShortcodeSet, mode: Mode) -> Result<ExpansionReport> {
    if s.is_empty() {
        return Err(Error::Domain("stay probability of an empty set".into()));
    }
    let g = s.graph();
    let (l, n) = (g.l(), g.n());
    let size = s.len() as u64;
    let (stay_counts, phi_counts, seed) = match mode {
        Mode::Exact { cap, jobs } => {
            let per = 1u64 << (l + n);
            let steps = g.rank_one_indices();
            let stay_total =
                checked_work("stay-probability outcomes", size as u128 * per as u128, cap)?;
            let phi_total = checked_work(
                "expansion outcomes",
                size as u128 * steps.len() as u128,
                cap,
            )?;
            let stays = sum_over(size, jobs, |i| {
                let m = s.members()[i as usize];
                let mut hits = 0;
                for a in 0..(1u64 << l) {
                    for b in 0..(1u64 << n) {
                        hits += s.contains(m ^ outer_index(l, n, a, b)) as u64;
                    }
                }
                hits
            })?;
            let leaves = sum_over(size, jobs, |i| {
                let m = s.members()[i as usize];
                steps.iter().filter(|&&d| !s.contains(m ^ d)).count() as u64
            })?;
            ((stays, stay_total), (leaves, phi_total), None)
        }
        Mode::MonteCarlo { trials, seed, jobs } => {
            let pick = |prng: &mut Prng| s.members()[prng.below(size) as usize];
            let stays = count_successes(trials, seed, jobs, |prng| {
                let m = pick(prng);
                let (a, b) = (prng.bits(l), prng.bits(n));
                Ok(s.contains(m ^ outer_index(l, n, a, b)))
            })?;
            let leaves = count_successes(trials, seed ^ PHI_SALT, jobs, |prng| {
                let m = pick(prng);
                let a = 1 + prng.below((1u64 << l) - 1);
                let b = 1 + prng.below((1u64 << n) - 1);
                Ok(!s.contains(m ^ outer_index(l, n, a, b)))
            })?;
            ((stays, trials), (leaves, trials), Some(seed))
        }
    };
    Ok(ExpansionReport {
        graph: "shortcode",
        l,
        n,
        size,
        seed,
        stay: probability(mode, stay_counts.0, stay_counts.1),
        stay_counts,
        phi: probability(mode, phi_counts.0, phi_counts.1),
        phi_counts,
    })
}

pub fn grassmann_expansion(s: &GrassmannSet, mode: Mode) -> Result<ExpansionReport> {
    if s.is_empty() {
        return Err(Error::Domain("expansion of an empty set".into()));
    }
    let g = s.graph();
    let size = s.len() as u64;
    let (leaves, total, seed) = match mode {
        Mode::Exact { cap, jobs } => {
            let total = checked_work("expansion outcomes", size as u128 * g.degree() as u128, cap)?;
            let errors = std::sync::Mutex::new(None);
            let leaves = sum_over(size, jobs, |i| {
                match g.neighbors(&s.members()[i as usize]) {
                    Ok(nbrs) => nbrs.iter().filter(|w| !s.contains(w)).count() as u64,
                    Err(e) => {
                        *errors.lock().unwrap() = Some(e);
                        0
                    }
                }
            })?;
            if let Some(e) = errors.into_inner().unwrap() {
                return Err(e);
            }
            (leaves, total, None)
        }
        Mode::MonteCarlo { trials, seed, jobs } => {
            let leaves = count_successes(trials, seed, jobs, |prng| {
                let v = &s.members()[prng.below(size) as usize];
                Ok(!s.contains(&g.sample_neighbor(prng, v)?))
            })?;
            (leaves, trials, Some(seed))
        }
    };
    let phi = probability(mode, leaves, total);
    let stay = match &phi {
        Probability::Exact(r) => Probability::Exact(BigRational::from_integer(1.into()) - r),
        Probability::Estimate { value, ci3sigma } => Probability::Estimate {
            value: 1.0 - value,
            ci3sigma: *ci3sigma,
        },
    };
    Ok(ExpansionReport {
        graph: "grassmann",
        l: g.l(),
        n: g.n(),
        size,
        seed,
        stay,
        stay_counts: (total - leaves, total),
        phi,
        phi_counts: (leaves, total),
    })
}

/// `|S ∩ T| / |T|`, enumerating `T`.
pub fn nice_density(s: &ShortcodeSet, t: &NiceSetShortcode) -> Result<BigRational> {
    let members = t.members();
    if members.is_empty() {
        return Err(Error::Domain("nice set is empty".into()));
    }
    let hits = members.iter().filter(|&&m| s.contains(m)).count();
    Ok(BigRational::new(
        BigInt::from(hits),
        BigInt::from(members.len()),
    ))
}

pub fn nice_density_grassmann(s: &GrassmannSet, t: &NiceSetGrassmann) -> Result<BigRational> {
    let members = t.members();
    if members.is_empty() {
        return Err(Error::Domain("nice set is empty".into()));
    }
    let hits = members.iter().filter(|v| s.contains(v)).count();
    Ok(BigRational::new(
        BigInt::from(hits),
        BigInt::from(members.len()),
    ))
}
