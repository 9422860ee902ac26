//! The four consistency tests and their pass-probability estimators.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf2::{sample_vector, GF2Matrix, GF2Tensor, GF2Vector, Subspace};
use crate::graphs::{grassmann_adjacent, outer3_index, outer_index, DEFAULT_VERTEX_CAP};
use crate::montecarlo::{count_successes, sum_over, three_sigma};
use crate::rng::Prng;
use crate::strategies::{
    eval_grassmann, AnyStrategy, GrassmannStrategy, ShortcodeStrategy, TensorStrategy,
};

/// Default cap on the number of outcomes enumerated in exact mode.
pub const DEFAULT_OUTCOME_CAP: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TestKind {
    GrassmannConsistency,
    Deg2Shortcode,
    UniqueDeg2Shortcode,
    UniqueDeg3Shortcode,
}

impl TestKind {
    pub const ALL: [TestKind; 4] = [
        TestKind::GrassmannConsistency,
        TestKind::Deg2Shortcode,
        TestKind::UniqueDeg2Shortcode,
        TestKind::UniqueDeg3Shortcode,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TestKind::GrassmannConsistency => "grassmann",
            TestKind::Deg2Shortcode => "deg2",
            TestKind::UniqueDeg2Shortcode => "unique-deg2",
            TestKind::UniqueDeg3Shortcode => "unique-deg3",
        }
    }
}

impl fmt::Display for TestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TestKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TestKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                Error::Parameter(format!(
                    "unknown test {s:?}; expected grassmann, deg2, unique-deg2 or unique-deg3"
                ))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact { cap: u64, jobs: usize },
    MonteCarlo { trials: u64, seed: u64, jobs: usize },
}

impl Mode {
    pub fn exact() -> Self {
        Mode::Exact {
            cap: DEFAULT_OUTCOME_CAP,
            jobs: 1,
        }
    }

    pub fn monte_carlo(trials: u64, seed: u64) -> Self {
        Mode::MonteCarlo {
            trials,
            seed,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Probability {
    Exact(BigRational),
    Estimate { value: f64, ci3sigma: f64 },
}

impl Probability {
    pub fn as_f64(&self) -> f64 {
        match self {
            Probability::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Probability::Estimate { value, .. } => *value,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Probability::Exact(r) => Some(r),
            Probability::Estimate { .. } => None,
        }
    }
}

/// Ratio `passes / outcomes` as an exact rational.
pub fn ratio(passes: u64, outcomes: u64) -> BigRational {
    BigRational::new(BigInt::from(passes), BigInt::from(outcomes))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TestReport {
    pub kind: TestKind,
    pub l: usize,
    pub n: usize,
    pub m: Option<usize>,
    pub seed: Option<u64>,
    /// Accepting outcomes (exact) or accepting trials (sampled).
    pub passes: u64,
    /// Equiprobable outcomes (exact) or trials (sampled).
    pub outcomes: u64,
    pub probability: Probability,
}

impl TestReport {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "kind": self.kind.name(),
            "l": self.l,
            "n": self.n,
        });
        let o = v.as_object_mut().unwrap();
        if let Some(m) = self.m {
            o.insert("m".into(), json!(m));
        }
        match &self.probability {
            Probability::Exact(r) => {
                o.insert("mode".into(), json!("exact"));
                o.insert("passes".into(), json!(self.passes));
                o.insert("outcomes".into(), json!(self.outcomes));
                o.insert("probability".into(), json!(r.to_string()));
            }
            Probability::Estimate { value, ci3sigma } => {
                o.insert("mode".into(), json!("monte_carlo"));
                o.insert("trials".into(), json!(self.outcomes));
                o.insert("seed".into(), json!(self.seed));
                o.insert("passes".into(), json!(self.passes));
                o.insert("probability".into(), json!(value));
                o.insert("ci3sigma".into(), json!(ci3sigma));
            }
        }
        v
    }

    fn build(
        kind: TestKind,
        dims: (usize, usize, Option<usize>),
        mode: Mode,
        passes: u64,
        outcomes: u64,
    ) -> Self {
        let (probability, seed) = match mode {
            Mode::Exact { .. } => (Probability::Exact(ratio(passes, outcomes)), None),
            Mode::MonteCarlo { seed, .. } => {
                let p = if outcomes == 0 {
                    0.0
                } else {
                    passes as f64 / outcomes as f64
                };
                (
                    Probability::Estimate {
                        value: p,
                        ci3sigma: three_sigma(p, outcomes.max(1)),
                    },
                    Some(seed),
                )
            }
        };
        TestReport {
            kind,
            l: dims.0,
            n: dims.1,
            m: dims.2,
            seed,
            passes,
            outcomes,
            probability,
        }
    }
}

/// Accepts iff F(V) and F(V') agree on `V ∩ V'`.
pub fn accept_grassmann(f: &GrassmannStrategy, v: &Subspace, w: &Subspace) -> Result<bool> {
    if !grassmann_adjacent(v, w)? {
        return Err(Error::Precondition(
            "Grassmann test needs adjacent vertices".into(),
        ));
    }
    let common = v.intersect(w)?;
    for x in common.basis().row_iter() {
        if eval_grassmann(f, v, &x)? != eval_grassmann(f, w, &x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn shortcode_labels(
    f: &ShortcodeStrategy,
    m: &GF2Matrix,
    a: &GF2Vector,
    b: &GF2Vector,
) -> Result<(GF2Vector, GF2Vector)> {
    if a.len() != f.l() || b.len() != f.n() {
        return Err(Error::Parameter(format!(
            "step vectors of lengths ({}, {}) for S({},{})",
            a.len(),
            b.len(),
            f.l(),
            f.n()
        )));
    }
    let m2 = m + &GF2Matrix::outer(a, b);
    Ok((f.eval(m)?, f.eval(&m2)?))
}

/// Accepts iff `F(M + a b^T) - F(M) ∈ {0, a}`.
pub fn accept_deg2(
    f: &ShortcodeStrategy,
    m: &GF2Matrix,
    a: &GF2Vector,
    b: &GF2Vector,
) -> Result<bool> {
    let (x, y) = shortcode_labels(f, m, a, b)?;
    let d = &x + &y;
    Ok(d.is_zero() || &d == a)
}

/// Accepts iff `F(M + a b^T) = F(M)`.
pub fn accept_unique_deg2(
    f: &ShortcodeStrategy,
    m: &GF2Matrix,
    a: &GF2Vector,
    b: &GF2Vector,
) -> Result<bool> {
    let (x, y) = shortcode_labels(f, m, a, b)?;
    Ok(x == y)
}

/// Accepts iff `F(T + a ⊗ b ⊗ c) = F(T)`.
pub fn accept_unique_deg3(
    f: &TensorStrategy,
    t: &GF2Tensor,
    a: &GF2Vector,
    b: &GF2Vector,
    c: &GF2Vector,
) -> Result<bool> {
    let (l, m, n) = f.dims();
    if (a.len(), b.len(), c.len()) != (l, m, n) {
        return Err(Error::Parameter(
            "step vectors do not match tensor dims".into(),
        ));
    }
    let t2 = t + &GF2Tensor::outer(a, b, c);
    Ok(f.eval(t)? == f.eval(&t2)?)
}

fn checked_outcomes(what: &str, bits: usize, cap: u64) -> Result<u64> {
    if bits >= 64 || (1u64 << bits) > cap {
        return Err(Error::resource(what, format!("2^{bits}"), cap));
    }
    Ok(1u64 << bits)
}

/// Pass probability of the Grassmann consistency test over uniform edges.
pub fn grassmann_pass_probability(f: &GrassmannStrategy, mode: Mode) -> Result<TestReport> {
    let g = f.graph();
    let dims = (g.l(), g.n(), None);
    match mode {
        Mode::Exact { cap, jobs } => {
            let edges = g.edge_count();
            if edges > cap.into() {
                return Err(Error::resource(
                    format!("edges of G({},{})", g.l(), g.n()),
                    edges,
                    cap,
                ));
            }
            let vertices = g.vertices_with_cap(DEFAULT_VERTEX_CAP)?;
            // One table lookup per vertex instead of per edge.
            let table = f.to_table(vertices.clone())?;
            let edge_list = g.edges(&vertices)?;
            let failures = std::sync::Mutex::new(None);
            let passes = sum_over(edge_list.len() as u64, jobs, |e| {
                let (i, j) = edge_list[e as usize];
                match accept_grassmann(&table, vertices.get(i), vertices.get(j)) {
                    Ok(ok) => ok as u64,
                    Err(err) => {
                        *failures.lock().unwrap() = Some(err);
                        0
                    }
                }
            })?;
            if let Some(err) = failures.into_inner().unwrap() {
                return Err(err);
            }
            Ok(TestReport::build(
                TestKind::GrassmannConsistency,
                dims,
                mode,
                passes,
                edge_list.len() as u64,
            ))
        }
        Mode::MonteCarlo { trials, seed, jobs } => {
            let passes = count_successes(trials, seed, jobs, |prng| {
                let (v, w) = g.sample_edge(prng)?;
                accept_grassmann(f, &v, &w)
            })?;
            Ok(TestReport::build(
                TestKind::GrassmannConsistency,
                dims,
                mode,
                passes,
                trials,
            ))
        }
    }
}

/// Pass probability of the degree-2 shortcode test (or its unique variant)
/// over uniform `M`, `a`, `b`.
pub fn shortcode_pass_probability(
    f: &ShortcodeStrategy,
    unique: bool,
    mode: Mode,
) -> Result<TestReport> {
    let (l, n) = (f.l(), f.n());
    let kind = if unique {
        TestKind::UniqueDeg2Shortcode
    } else {
        TestKind::Deg2Shortcode
    };
    let accept = |m: u64, a: u64, b: u64| -> bool {
        let d = f.label(m) ^ f.label(m ^ outer_index(l, n, a, b));
        d == 0 || (!unique && d == a)
    };
    match mode {
        Mode::Exact { cap, jobs } => {
            let outcomes =
                checked_outcomes(&format!("outcomes of S({l},{n})"), l * n + l + n, cap)?;
            let passes = sum_over(1u64 << (l * n), jobs, |m| {
                let mut hits = 0;
                for a in 0..(1u64 << l) {
                    for b in 0..(1u64 << n) {
                        hits += accept(m, a, b) as u64;
                    }
                }
                hits
            })?;
            Ok(TestReport::build(
                kind,
                (l, n, None),
                mode,
                passes,
                outcomes,
            ))
        }
        Mode::MonteCarlo { trials, seed, jobs } => {
            let passes = count_successes(trials, seed, jobs, |prng| {
                let m = prng.bits(l * n);
                let a = prng.bits(l);
                let b = prng.bits(n);
                Ok(accept(m, a, b))
            })?;
            Ok(TestReport::build(kind, (l, n, None), mode, passes, trials))
        }
    }
}

/// How the degree-3 step `a ⊗ b ⊗ c` is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Deg3Steps {
    /// `a`, `b`, `c` all uniform, zero included.
    Uniform,
    /// `a` uniform over nonzero vectors, `b`, `c` uniform.
    NonzeroA,
}

/// Pass probability of the unique degree-3 test over uniform `T` and steps
/// drawn per `steps`.
pub fn tensor_pass_probability(
    f: &TensorStrategy,
    steps: Deg3Steps,
    mode: Mode,
) -> Result<TestReport> {
    let (l, m, n) = f.dims();
    let accept = |t: u64, a: u64, b: u64, c: u64| -> bool {
        f.label(t) == f.label(t ^ outer3_index(l, m, n, a, b, c))
    };
    let a_min = match steps {
        Deg3Steps::Uniform => 0,
        Deg3Steps::NonzeroA => 1,
    };
    let dims = (l, n, Some(m));
    match mode {
        Mode::Exact { cap, jobs } => {
            let per_tensor = ((1u64 << l) - a_min) << (m + n);
            let tensors = checked_outcomes(
                &format!("outcomes of Ten({l},{m},{n})"),
                l * m * n + l + m + n,
                cap,
            )? >> (l + m + n);
            let passes = sum_over(tensors, jobs, |t| {
                let mut hits = 0;
                for a in a_min..(1u64 << l) {
                    for b in 0..(1u64 << m) {
                        for c in 0..(1u64 << n) {
                            hits += accept(t, a, b, c) as u64;
                        }
                    }
                }
                hits
            })?;
            let outcomes = tensors * per_tensor;
            Ok(TestReport::build(
                TestKind::UniqueDeg3Shortcode,
                dims,
                mode,
                passes,
                outcomes,
            ))
        }
        Mode::MonteCarlo { trials, seed, jobs } => {
            let passes = count_successes(trials, seed, jobs, |prng| {
                let t = prng.bits(l * m * n);
                let a = loop {
                    let a = prng.bits(l);
                    if a >= a_min {
                        break a;
                    }
                };
                let (b, c) = (prng.bits(m), prng.bits(n));
                Ok(accept(t, a, b, c))
            })?;
            Ok(TestReport::build(
                TestKind::UniqueDeg3Shortcode,
                dims,
                mode,
                passes,
                trials,
            ))
        }
    }
}

/// Dispatches on the test kind; the strategy must be of the matching type.
pub fn pass_probability(f: &AnyStrategy, kind: TestKind, mode: Mode) -> Result<TestReport> {
    match (kind, f) {
        (TestKind::GrassmannConsistency, AnyStrategy::Grassmann(g)) => {
            grassmann_pass_probability(g, mode)
        }
        (TestKind::Deg2Shortcode, AnyStrategy::Shortcode(s)) => {
            shortcode_pass_probability(s, false, mode)
        }
        (TestKind::UniqueDeg2Shortcode, AnyStrategy::Shortcode(s)) => {
            shortcode_pass_probability(s, true, mode)
        }
        (TestKind::UniqueDeg3Shortcode, AnyStrategy::Tensor(t)) => {
            tensor_pass_probability(t, Deg3Steps::Uniform, mode)
        }
        (kind, _) => Err(Error::Parameter(format!(
            "test {kind} does not apply to this kind of strategy"
        ))),
    }
}

/// Average over every `h` of the exact unique-test pass probability of
/// `G_h(M) = F(M) + M h`.
pub fn uniquified_average(f: &ShortcodeStrategy, cap: u64) -> Result<BigRational> {
    let n = f.n();
    let mut total = BigRational::from_integer(0.into());
    let mode = Mode::Exact { cap, jobs: 1 };
    for hc in 0..(1u64 << n) {
        let g = f.shifted(&GF2Vector::from_u64(n, hc))?;
        let report = shortcode_pass_probability(&g, true, mode)?;
        total += report.probability.exact().unwrap().clone();
    }
    Ok(total / BigRational::from_integer(BigInt::from(1u64 << n)))
}

/// One sampled deg-2 step outcome, exposed for callers building their own
/// estimators.
pub fn sample_shortcode_outcome(
    prng: &mut Prng,
    l: usize,
    n: usize,
) -> (GF2Matrix, GF2Vector, GF2Vector) {
    let m = GF2Matrix::from_index(l, n, prng.bits(l * n));
    (m, sample_vector(prng, l), sample_vector(prng, n))
}
