//! The verification suite: every structural claim checked at concrete
//! parameters, reported as `{id, anchor, expected, observed, verdict}`.
//!
//! Checks tagged with the configured `(l, n, m)` follow the configured mode
//! (exact, or sampled with a 3σ tolerance); the rest run exactly at fixed
//! desk-scale parameters.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::embedding::{domain_fraction, Embedding};
use crate::error::Result;
use crate::expansion::{
    cayley_eigenvalue, character_average, decode_shortcode, expansion_soundness_bridge,
    grassmann_expansion, stay_probability, GrassmannSet, NiceSetGrassmann, NiceSetShortcode,
    ShortcodeSet, DEFAULT_DECODE_CAP,
};
use crate::gf2::{sample_basis, sample_nonzero_vector, GF2Matrix, GF2Vector};
use crate::graphs::{grassmann_adjacent, GrassmannGraph, ShortcodeGraph};
use crate::rng::Prng;
use crate::strategies::{
    AnyStrategy, GrassmannStrategy, LinearFunctional, ShortcodeStrategy, TensorStrategy,
};
use crate::testers::{
    grassmann_pass_probability, shortcode_pass_probability, tensor_pass_probability,
    uniquified_average, Deg3Steps, Mode, Probability, TestReport, DEFAULT_OUTCOME_CAP,
};

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub l: usize,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub mode: Mode,
    /// Extra strategy that should pass its test with certainty.
    pub strategy: Option<AnyStrategy>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            l: 2,
            n: 4,
            m: 2,
            seed: 7,
            mode: Mode::exact(),
            strategy: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub anchor: &'static str,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl Check {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "anchor": self.anchor,
            "expected": self.expected,
            "observed": self.observed,
            "verdict": if self.pass { "pass" } else { "fail" },
        })
    }
}

pub fn suite_json(checks: &[Check]) -> Value {
    Value::Array(checks.iter().map(Check::to_json).collect())
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn pow2_inv(k: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << k)
}

/// Observed value of a report and whether it matches `expected`: exactly in
/// exact mode, within the 3σ radius otherwise.
fn compare(report: &TestReport, expected: &BigRational) -> (String, bool) {
    match &report.probability {
        Probability::Exact(r) => (r.to_string(), r == expected),
        Probability::Estimate { value, ci3sigma } => {
            let e = expected.to_f64().unwrap_or(f64::NAN);
            (
                format!("{value:.6} ± {ci3sigma:.6}"),
                (value - e).abs() <= *ci3sigma,
            )
        }
    }
}

struct Runner<'a> {
    cfg: &'a SuiteConfig,
    checks: Vec<Check>,
}

impl Runner<'_> {
    fn push(
        &mut self,
        id: impl Into<String>,
        anchor: &'static str,
        expected: impl ToString,
        observed: impl ToString,
        pass: bool,
    ) {
        self.checks.push(Check {
            id: id.into(),
            anchor,
            expected: expected.to_string(),
            observed: observed.to_string(),
            pass,
        });
    }

    fn prng(&self, stream: u64) -> Prng {
        Prng::new(self.cfg.seed, stream)
    }

    fn tag(&self, name: &str) -> String {
        format!("{name}@{},{}", self.cfg.l, self.cfg.n)
    }

    fn grassmann_completeness(&mut self) -> Result<()> {
        let (l, n) = (self.cfg.l, self.cfg.n);
        let f = LinearFunctional::random(&mut self.prng(1), n);
        let report =
            grassmann_pass_probability(&GrassmannStrategy::linear(l, n, f)?, self.cfg.mode)?;
        let (obs, ok) = compare(&report, &BigRational::one());
        self.push(
            self.tag("grassmann-completeness"),
            "restrictions of one linear function always pass the Grassmann test",
            "1",
            obs,
            ok,
        );
        Ok(())
    }

    fn shortcode_completeness(&mut self) -> Result<()> {
        let (l, n) = (self.cfg.l, self.cfg.n);
        let mut prng = self.prng(2);
        let f = LinearFunctional::new(crate::gf2::sample_vector(&mut prng, n), prng.bit());
        let report =
            shortcode_pass_probability(&ShortcodeStrategy::row_fn(l, f)?, false, self.cfg.mode)?;
        let (obs, ok) = compare(&report, &BigRational::one());
        self.push(
            self.tag("shortcode-completeness"),
            "row-affine strategies always pass the degree-2 test",
            "1",
            obs,
            ok,
        );
        Ok(())
    }

    fn deg3_completeness(&mut self) -> Result<()> {
        let (l, m) = (self.cfg.l, self.cfg.m);
        let n = self.cfg.n;
        let mut prng = self.prng(3);
        let y = sample_nonzero_vector(&mut prng, m);
        let z = sample_nonzero_vector(&mut prng, n);
        let tag = format!("@{l},{m},{n}");
        let f = TensorStrategy::bilinear(l, y.clone(), z)?;
        let r = tensor_pass_probability(&f, Deg3Steps::NonzeroA, self.cfg.mode)?;
        let (obs, ok) = compare(&r, &q(3, 4));
        self.push(format!("deg3-completeness{tag}"), "bilinear strategies pass the unique degree-3 test with probability 3/4 for a nonzero first step", "3/4", obs, ok);

        let uniform = BigRational::one() - (BigRational::one() - pow2_inv(l)) * q(1, 4);
        let r = tensor_pass_probability(&f, Deg3Steps::Uniform, self.cfg.mode)?;
        let (obs, ok) = compare(&r, &uniform);
        self.push(
            format!("deg3-uniform-steps{tag}"),
            "with a zero first step allowed the pass probability is 1 - (1 - 2^-l)/4",
            uniform,
            obs,
            ok,
        );

        let g =
            TensorStrategy::bilinear(l, GF2Vector::zeros(m), sample_nonzero_vector(&mut prng, n))?;
        let r = tensor_pass_probability(&g, Deg3Steps::NonzeroA, self.cfg.mode)?;
        let (obs, ok) = compare(&r, &BigRational::one());
        self.push(
            format!("deg3-degenerate{tag}"),
            "a bilinear strategy with y = 0 always passes",
            "1",
            obs,
            ok,
        );
        Ok(())
    }

    fn embedding_checks(&mut self) -> Result<()> {
        let (l, n) = (self.cfg.l, self.cfg.n);
        let e = Embedding::new(l, sample_basis(&mut self.prng(4), n))?;
        let anchor =
            "V ~ V' iff φ(V) ~ φ(V') on the domain, and φ is a bijection onto the matrices";
        match self.cfg.mode {
            Mode::Exact { cap, .. } => {
                let r = e.verify_homomorphism(cap)?;
                let obs = format!(
                    "{} violations, {} round-trip failures, {} images of {} vertices",
                    r.violations.len(),
                    r.round_trip_failures,
                    r.distinct_images,
                    r.domain_size
                );
                let ok = r.is_clean() && r.domain_size == 1u64 << (l * (n - l));
                let exp = format!(
                    "0 violations, 0 round-trip failures, {0} images of {0} vertices",
                    1u64 << (l * (n - l))
                );
                self.push(self.tag("homomorphism"), anchor, exp, obs, ok);
            }
            Mode::MonteCarlo { trials, seed, .. } => {
                let samples = trials.min(2000);
                let mut prng = Prng::new(seed, 4);
                let mut bad = 0u64;
                for _ in 0..samples {
                    let a = GF2Matrix::from_index(l, n - l, prng.bits(l * (n - l)));
                    let b = crate::gf2::sample_matrix(&mut prng, l, n - l);
                    let step = GF2Matrix::outer(
                        &crate::gf2::sample_vector(&mut prng, l),
                        &crate::gf2::sample_vector(&mut prng, n - l),
                    );
                    for other in [b, &a + &step] {
                        let (va, vb) = (e.phi_inverse(&a)?, e.phi_inverse(&other)?);
                        let same = grassmann_adjacent(&va, &vb)? == ((&a + &other).rank() == 1);
                        bad += (!same || e.phi(&va)? != a) as u64;
                    }
                }
                self.push(
                    self.tag("homomorphism"),
                    anchor,
                    "0 violations",
                    format!("{bad} violations in {} sampled pairs", 2 * samples),
                    bad == 0,
                );
            }
        }

        let frac = domain_fraction(l, n);
        let anchor = "the domain holds 2^{l(n-l)} / [n choose l]_2 of all vertices";
        match self.cfg.mode {
            Mode::Exact { cap, .. } => {
                let g = GrassmannGraph::new(l, n)?;
                let vs = g.vertices_with_cap(cap)?;
                let inside = vs
                    .iter()
                    .filter(|v| e.in_domain(v).unwrap_or(false))
                    .count();
                let obs = BigRational::new(inside.into(), vs.len().into());
                self.push(
                    self.tag("domain-fraction"),
                    anchor,
                    &frac,
                    &obs,
                    obs == frac,
                );
            }
            Mode::MonteCarlo { trials, seed, jobs } => {
                let g = GrassmannGraph::new(l, n)?;
                let hits = crate::montecarlo::count_successes(trials, seed ^ 5, jobs, |p| {
                    e.in_domain(&g.sample_vertex(p))
                })?;
                let p = hits as f64 / trials as f64;
                let ci = crate::montecarlo::three_sigma(p, trials);
                let ok = (p - frac.to_f64().unwrap()).abs() <= ci;
                self.push(
                    self.tag("domain-fraction"),
                    anchor,
                    &frac,
                    format!("{p:.6} ± {ci:.6}"),
                    ok,
                );
            }
        }

        let mut prng = self.prng(6);
        let v = e.phi_inverse(&crate::gf2::sample_matrix(&mut prng, l, n - l))?;
        let anchor = "exactly half the neighbors of a domain vertex lie in the domain";
        match self.cfg.mode {
            Mode::Exact { .. } => {
                let obs = e.neighbor_fraction(&v)?;
                let ok = obs == q(1, 2);
                self.push(self.tag("neighbor-fraction"), anchor, "1/2", obs, ok);
            }
            Mode::MonteCarlo { trials, seed, jobs } => {
                let g = GrassmannGraph::new(l, n)?;
                let hits = crate::montecarlo::count_successes(trials, seed ^ 6, jobs, |p| {
                    e.in_domain(&g.sample_neighbor(p, &v)?)
                })?;
                let p = hits as f64 / trials as f64;
                let ci = crate::montecarlo::three_sigma(p, trials);
                self.push(
                    self.tag("neighbor-fraction"),
                    anchor,
                    "1/2",
                    format!("{p:.6} ± {ci:.6}"),
                    (p - 0.5).abs() <= ci,
                );
            }
        }
        Ok(())
    }

    fn fixed_checks(&mut self) -> Result<()> {
        // G(x) = x_1 + x_2 + 1 applied per row, uniquified, on S_{1,2}
        let f = ShortcodeStrategy::row_fn(1, LinearFunctional::new("11".parse()?, true))?;
        let avg = uniquified_average(&f, DEFAULT_OUTCOME_CAP)?;
        self.push(
            "uniquify-worked-value",
            "averaging G_h(M) = F(M) + M h over h for the row rule x1 + x2 + 1 on S_{1,2}",
            "13/16",
            &avg,
            avg == q(13, 16),
        );

        let mut prng = self.prng(7);
        let mut worst: Option<(BigRational, BigRational)> = None;
        for k in 0..6 {
            let f = match k % 3 {
                0 => ShortcodeStrategy::random_table(&mut prng, 2, 3)?,
                1 => ShortcodeStrategy::affine(
                    crate::gf2::sample_vector(&mut prng, 3),
                    crate::gf2::sample_vector(&mut prng, 2),
                )?,
                _ => ShortcodeStrategy::row_fn(2, LinearFunctional::random(&mut prng, 3))?,
            };
            let avg = uniquified_average(&f, DEFAULT_OUTCOME_CAP)?;
            let half = shortcode_pass_probability(&f, false, Mode::exact())?
                .probability
                .exact()
                .cloned()
                .unwrap()
                * q(1, 2);
            let slack = &avg - &half;
            if worst.as_ref().is_none_or(|(s, _)| slack < *s) {
                worst = Some((slack, avg));
            }
        }
        let (slack, _) = worst.unwrap();
        self.push(
            "uniquify-half",
            "uniquifying keeps at least half the degree-2 pass probability on average over h",
            ">= 0",
            &slack,
            slack >= BigRational::zero(),
        );

        let low = (1..=8)
            .map(|l| domain_fraction(l, 2 * l * l))
            .min()
            .unwrap();
        self.push(
            "domain-fraction-bound",
            "the domain fraction at n = 2l^2 stays above 0.288 for l <= 8",
            ">= 36/125",
            format!("{:.6}", low.to_f64().unwrap()),
            low >= q(36, 125),
        );

        let e = Embedding::standard(2, 4)?;
        let domain = e.domain(1 << 10)?;
        let mut mismatches = 0u64;
        for s in NiceSetGrassmann::enumerate(2, 4, 1) {
            let image = e.map_nice_set(&s)?;
            for v in &domain {
                let m = e.phi(v)?;
                mismatches +=
                    (s.contains(v) != image.as_ref().is_some_and(|t| t.contains(&m))) as u64;
            }
        }
        for t in NiceSetShortcode::enumerate(2, 2, 1) {
            let pre = e.map_nice_set_inverse(&t)?;
            for v in &domain {
                let m = e.phi(v)?;
                mismatches +=
                    (t.contains(&m) != pre.as_ref().is_some_and(|s| s.contains(v))) as u64;
            }
        }
        self.push(
            "nice-set-correspondence",
            "nice sets of order r map to nice sets of order r in both directions (r <= 1 at (2,4))",
            "0 mismatches",
            format!("{mismatches} mismatches"),
            mismatches == 0,
        );

        let sg = ShortcodeGraph::new(2, 2)?;
        let gg = GrassmannGraph::new(2, 4)?;
        let mut worst: Option<BigRational> = None;
        for t in NiceSetShortcode::enumerate(2, 2, 1) {
            let set = ShortcodeSet::from_nice(&t)?;
            let walk = stay_probability(&set, Mode::exact())?
                .walk_stay()
                .exact()
                .cloned()
                .unwrap();
            let pre = GrassmannSet::new(
                gg,
                set.members()
                    .iter()
                    .map(|&m| e.phi_inverse(&GF2Matrix::from_index(2, 2, m)))
                    .collect::<Result<Vec<_>>>()?,
            )?;
            let g = grassmann_expansion(&pre, Mode::exact())?
                .stay
                .exact()
                .cloned()
                .unwrap();
            let slack = g - walk * q(1, 2);
            if worst.as_ref().is_none_or(|w| slack < *w) {
                worst = Some(slack);
            }
        }
        let slack = worst.unwrap();
        let _ = sg;
        self.push("expansion-transfer", "the preimage of a set staying with probability η under a random step stays with probability at least η/2", ">= 0", &slack, slack >= BigRational::zero());

        let t = NiceSetShortcode::new(1, 2, vec![("10".parse()?, "0".parse()?)], vec![])?;
        let nu = stay_probability(&ShortcodeSet::from_nice(&t)?, Mode::exact())?.stay;
        let nu = nu.exact().cloned().unwrap();
        self.push(
            "stay-single-constraint",
            "one right constraint on S_{1,2} keeps M + a b^T inside with probability 3/4",
            "3/4",
            &nu,
            nu == q(3, 4),
        );
        let e12 = Embedding::standard(1, 2)?;
        let g12 = GrassmannGraph::new(1, 2)?;
        let dom = GrassmannSet::new(g12, e12.domain(16)?)?;
        let phi = grassmann_expansion(&dom, Mode::exact())?
            .phi
            .exact()
            .cloned()
            .unwrap();
        self.push(
            "domain-expansion",
            "the embedding domain in G(1,2) has expansion 1/2",
            "1/2",
            &phi,
            phi == q(1, 2),
        );
        let all = GrassmannSet::from_predicate(g12, 16, |_| true)?;
        let phi = grassmann_expansion(&all, Mode::exact())?
            .phi
            .exact()
            .cloned()
            .unwrap();
        self.push(
            "full-set-expansion",
            "the full vertex set has expansion 0",
            "0",
            &phi,
            phi.is_zero(),
        );

        let base = ShortcodeStrategy::affine("011".parse()?, "1".parse()?)?;
        let mut labels = base.labels()?;
        labels[(self.cfg.seed % 8) as usize] ^= 1;
        let corrupted = ShortcodeStrategy::table(1, 3, labels)?;
        let r = decode_shortcode(&corrupted, 0, DEFAULT_DECODE_CAP)?;
        let obs = format!("r={} density={}", r.r(), r.density);
        let ok = r.r() == 0
            && r.density == q(7, 8)
            && r.rule
                == crate::expansion::DecodedRule::Affine {
                    z: "011".parse()?,
                    u: "1".parse()?,
                };
        self.push(
            "decode-corrupted-affine",
            "an affine rule corrupted on 1/8 of S_{1,3} is recovered with density 7/8",
            "r=0 density=7/8",
            obs,
            ok,
        );

        let mut bad = 0;
        for a in 0..16u64 {
            let a = GF2Matrix::from_index(2, 2, a);
            bad += (cayley_eigenvalue(&a) != character_average(&a)?) as u32;
        }
        self.push(
            "cayley-spectrum",
            "the character of A has eigenvalue 2^{-rank A} under uniform rank-one steps",
            "0 mismatches of 16",
            format!("{bad} mismatches of 16"),
            bad == 0,
        );

        let f = ShortcodeStrategy::random_table(&mut self.prng(8), 1, 3)?;
        let b = expansion_soundness_bridge(&f, 1, DEFAULT_OUTCOME_CAP)?;
        let obs = format!(
            "pass={} average={} best level={}",
            b.pass, b.average, b.levels[b.best].stay
        );
        self.push("level-set-averaging", "the unique-test pass probability is the size-weighted average of level-set stay probabilities", "average = pass <= best level", obs, b.identity_holds() && b.averaging_holds());
        Ok(())
    }

    fn input_strategy(&mut self, f: &AnyStrategy) -> Result<()> {
        let anchor = "the supplied strategy passes its test with certainty";
        let (name, report, expected) = match f {
            AnyStrategy::Grassmann(g) => (
                "grassmann",
                grassmann_pass_probability(g, self.cfg.mode)?,
                BigRational::one(),
            ),
            AnyStrategy::Shortcode(s) => (
                "deg2",
                shortcode_pass_probability(s, false, self.cfg.mode)?,
                BigRational::one(),
            ),
            AnyStrategy::Tensor(t) => (
                "unique-deg3",
                tensor_pass_probability(t, Deg3Steps::NonzeroA, self.cfg.mode)?,
                q(3, 4),
            ),
        };
        let (obs, _) = compare(&report, &expected);
        let ok = match &report.probability {
            Probability::Exact(r) => *r >= expected,
            Probability::Estimate { value, ci3sigma } => {
                value + ci3sigma >= expected.to_f64().unwrap()
            }
        };
        let id = format!("input-strategy-{name}");
        self.push(id, anchor, format!(">= {expected}"), obs, ok);
        Ok(())
    }
}

/// Runs every check. Errors (bad parameters, exceeded caps) abort the run.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut r = Runner {
        cfg,
        checks: Vec::new(),
    };
    r.grassmann_completeness()?;
    r.shortcode_completeness()?;
    r.deg3_completeness()?;
    r.embedding_checks()?;
    r.fixed_checks()?;
    if let Some(f) = &cfg.strategy {
        r.input_strategy(f)?;
    }
    Ok(r.checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let cfg = SuiteConfig {
            l: 1,
            n: 3,
            m: 1,
            ..SuiteConfig::default()
        };
        let a = run_suite(&cfg).unwrap();
        assert!(a.iter().all(|c| c.pass), "{a:#?}");
        assert_eq!(a, run_suite(&cfg).unwrap());

        let mc = SuiteConfig {
            mode: Mode::monte_carlo(20_000, 3),
            ..cfg
        };
        let b = run_suite(&mc).unwrap();
        assert!(b.iter().all(|c| c.pass), "{b:#?}");
    }

    #[test]
    fn corrupted_input_fails() {
        // at l = 1 every strategy passes the degree-2 test, so corrupt S_{2,2}
        let base = ShortcodeStrategy::affine("01".parse().unwrap(), "10".parse().unwrap()).unwrap();
        let mut labels = base.labels().unwrap();
        labels[3] ^= 1;
        let cfg = SuiteConfig {
            l: 1,
            n: 3,
            m: 1,
            strategy: Some(ShortcodeStrategy::table(2, 2, labels).unwrap().into()),
            ..SuiteConfig::default()
        };
        let checks = run_suite(&cfg).unwrap();
        let failed: Vec<&str> = checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.id.as_str())
            .collect();
        assert_eq!(failed, vec!["input-strategy-deg2"]);
    }

    #[test]
    fn oversized_exact_run_is_a_resource_error() {
        let cfg = SuiteConfig {
            n: 20,
            ..SuiteConfig::default()
        };
        assert!(matches!(
            run_suite(&cfg),
            Err(crate::Error::Resource { .. })
        ));
    }
}
