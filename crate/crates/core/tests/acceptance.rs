//! Acceptance criteria, one printed verdict line each.
//!
//! Run with `cargo test -p grassmann-core --test acceptance -- --nocapture`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use grassmann_core::embedding::{domain_fraction, Embedding};
use grassmann_core::expansion::{
    cayley_eigenvalue, decode_shortcode, grassmann_expansion, remeasure_shortcode,
    stay_probability, DecodedRule, GrassmannSet, NiceSetGrassmann, NiceSetShortcode, ShortcodeSet,
    DEFAULT_DECODE_CAP,
};
use grassmann_core::gf2::{sample_basis, sample_vector, Basis, GF2Matrix, GF2Vector, Subspace};
use grassmann_core::graphs::{GrassmannGraph, ShortcodeGraph};
use grassmann_core::rng::Prng;
use grassmann_core::strategies::{
    make_planted, GrassmannStrategy, LinearFunctional, ShortcodeRegion, ShortcodeStrategy,
    TensorStrategy,
};
use grassmann_core::suite::{run_suite, suite_json, SuiteConfig};
use grassmann_core::testers::{
    grassmann_pass_probability, shortcode_pass_probability, tensor_pass_probability,
    uniquified_average, Deg3Steps, Mode, Probability, DEFAULT_OUTCOME_CAP,
};

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn exact(p: &Probability) -> BigRational {
    p.exact().cloned().expect("exact mode")
}

fn jobs() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

struct Verdicts {
    lines: Vec<(String, bool)>,
}

impl Verdicts {
    fn record(&mut self, id: &str, pass: bool, detail: String) {
        let line = format!(
            "criterion {id:>2} {}  {detail}",
            if pass { "PASS" } else { "FAIL" }
        );
        println!("{line}");
        self.lines.push((line, pass));
    }

    fn note(&self, detail: String) {
        println!("     note     {detail}");
    }
}

// Independent GF(2) helpers on packed matrices (entry (i, j) at bit i*n + j).

fn outer(l: usize, n: usize, a: u64, b: u64) -> u64 {
    (0..l)
        .filter(|i| a >> i & 1 == 1)
        .fold(0, |acc, i| acc | b << (i * n))
}

fn rank(l: usize, n: usize, m: u64) -> usize {
    let mut rows: Vec<u64> = (0..l).map(|i| (m >> (i * n)) & ((1 << n) - 1)).collect();
    let mut r = 0;
    for col in 0..n {
        if let Some(p) = (r..l).find(|&i| rows[i] >> col & 1 == 1) {
            rows.swap(r, p);
            for i in 0..l {
                if i != r && rows[i] >> col & 1 == 1 {
                    rows[i] ^= rows[r];
                }
            }
            r += 1;
        }
    }
    r
}

fn mul_vec(l: usize, n: usize, m: u64, z: u64) -> u64 {
    (0..l).fold(0, |acc, i| {
        acc | ((((m >> (i * n)) & z).count_ones() as u64) & 1) << i
    })
}

fn dot(x: u64, y: u64) -> bool {
    (x & y).count_ones() % 2 == 1
}

fn c1_grassmann_completeness(v: &mut Verdicts) {
    let mut ok = true;
    let mut runs = 0;
    for (l, n) in [(2, 4), (2, 5)] {
        for s in 0..10 {
            let f = LinearFunctional::random(&mut Prng::new(100 + s, 0), n);
            let g = GrassmannStrategy::linear(l, n, f).unwrap();
            let r = grassmann_pass_probability(&g, Mode::exact()).unwrap();
            ok &= exact(&r.probability).is_one() && r.passes == r.outcomes;
            runs += 1;
        }
    }
    v.record(
        "1",
        ok,
        format!("linear strategies pass every edge of G(2,4) and G(2,5) ({runs} strategies)"),
    );
}

fn c2_shortcode_completeness(v: &mut Verdicts) {
    let mut ok = true;
    for c in 0..8u64 {
        for constant in [false, true] {
            let f = LinearFunctional::new(GF2Vector::from_u64(3, c), constant);
            let s = ShortcodeStrategy::row_fn(2, f).unwrap();
            let r = shortcode_pass_probability(&s, false, Mode::exact()).unwrap();
            ok &= exact(&r.probability).is_one();
        }
    }
    v.record(
        "2",
        ok,
        "all 16 row-affine strategies on S_{2,3} pass the degree-2 test with probability 1".into(),
    );
}

fn c3_deg3_completeness(v: &mut Verdicts) {
    let (l, m, n) = (2, 2, 2);
    let mut ok = true;
    let mut uniform_seen = HashSet::new();
    for yc in 0..4u64 {
        for zc in 0..4u64 {
            let f =
                TensorStrategy::bilinear(l, GF2Vector::from_u64(m, yc), GF2Vector::from_u64(n, zc))
                    .unwrap();
            let nonzero = exact(
                &tensor_pass_probability(&f, Deg3Steps::NonzeroA, Mode::exact())
                    .unwrap()
                    .probability,
            );
            let uniform = exact(
                &tensor_pass_probability(&f, Deg3Steps::Uniform, Mode::exact())
                    .unwrap()
                    .probability,
            );
            // oracle: accept iff a = 0 or <b,y><c,z> = 0
            let (mut hits_nz, mut hits_u) = (0i64, 0i64);
            for a in 0..(1u64 << l) {
                for b in 0..(1u64 << m) {
                    for c in 0..(1u64 << n) {
                        let accept = a == 0 || !(dot(b, yc) && dot(c, zc));
                        hits_u += accept as i64;
                        if a != 0 {
                            hits_nz += accept as i64;
                        }
                    }
                }
            }
            let oracle_nz = q(hits_nz, 3 * 16);
            let oracle_u = q(hits_u, 4 * 16);
            ok &= nonzero == oracle_nz && uniform == oracle_u;
            if yc != 0 && zc != 0 {
                ok &= nonzero == q(3, 4) && uniform == q(13, 16);
                uniform_seen.insert(uniform.to_string());
            }
            if yc == 0 {
                ok &= nonzero.is_one() && uniform.is_one();
            }
        }
    }
    v.record(
        "3",
        ok,
        "bilinear strategy on Ten_{2,2,2}: 3/4 for y,z != 0 and 1 for y = 0 (nonzero first step)"
            .into(),
    );
    v.note(format!(
        "with a, b, c all uniform (zero first step allowed) the y,z != 0 value is {:?}, not 3/4; see the decisions ledger",
        uniform_seen
    ));
}

fn c4_uniquify(v: &mut Verdicts) {
    let mut prng = Prng::new(4, 0);
    let mut corpus = Vec::new();
    for _ in 0..5 {
        corpus.push(
            ShortcodeStrategy::affine(sample_vector(&mut prng, 3), sample_vector(&mut prng, 2))
                .unwrap(),
        );
        let f = LinearFunctional::new(sample_vector(&mut prng, 3), prng.bit());
        corpus.push(ShortcodeStrategy::row_fn(2, f).unwrap());
        let sets = NiceSetShortcode::enumerate(2, 3, 1);
        let regions = (0..2)
            .map(|_| ShortcodeRegion::Nice(sets[prng.below(sets.len() as u64) as usize].clone()))
            .collect();
        corpus.push(make_planted(&mut prng, 2, 3, regions).unwrap());
        corpus.push(ShortcodeStrategy::random_table(&mut prng, 2, 3).unwrap());
    }
    let mut ok = true;
    let mut min_slack: Option<BigRational> = None;
    for f in &corpus {
        let avg = uniquified_average(f, DEFAULT_OUTCOME_CAP).unwrap();
        let deg2 = exact(
            &shortcode_pass_probability(f, false, Mode::exact())
                .unwrap()
                .probability,
        );
        let slack = avg - deg2 * q(1, 2);
        ok &= slack >= BigRational::zero();
        if min_slack.as_ref().is_none_or(|m| slack < *m) {
            min_slack = Some(slack);
        }
    }
    let worked =
        ShortcodeStrategy::row_fn(1, LinearFunctional::new("11".parse().unwrap(), true)).unwrap();
    let value = uniquified_average(&worked, DEFAULT_OUTCOME_CAP).unwrap();
    ok &= value == q(13, 16);
    v.record(
        "4",
        ok,
        format!(
            "uniquified average >= half the degree-2 pass probability on {} strategies (min slack {}); worked value {value}",
            corpus.len(),
            min_slack.unwrap()
        ),
    );
}

fn c5_homomorphism(v: &mut Verdicts) {
    let mut ok = true;
    let mut pairs = 0;
    for (l, n) in [(1, 3), (2, 4), (2, 5)] {
        let mut prng = Prng::new(5, (l * 10 + n) as u64);
        let mut bases = vec![Basis::standard(n)];
        bases.extend((0..5).map(|_| sample_basis(&mut prng, n)));
        for b in bases {
            let r = Embedding::new(l, b)
                .unwrap()
                .verify_homomorphism(1 << 20)
                .unwrap();
            ok &= r.is_clean()
                && r.domain_size == 1 << (l * (n - l))
                && r.distinct_images == r.domain_size;
            pairs += r.pairs;
        }
    }
    v.record("5", ok, format!("no adjacency violations and phi bijective at (1,3), (2,4), (2,5), 6 bases each ({pairs} pairs)"));
}

fn c6_projection(v: &mut Verdicts) {
    // oracle: count 2-dim subspaces of GF(2)^4 as unordered bases, by projection rank
    let mut seen = HashSet::new();
    let mut inside = 0;
    for x in 1..16u64 {
        for y in 1..16u64 {
            if x == y {
                continue;
            }
            let space: Vec<u64> = {
                let mut s = vec![0, x, y, x ^ y];
                s.sort();
                s
            };
            if seen.insert(space.clone()) {
                let proj = [x & 3, y & 3, (x ^ y) & 3];
                let full = proj
                    .iter()
                    .filter(|&&p| p != 0)
                    .collect::<HashSet<_>>()
                    .len()
                    == 3;
                inside += full as i64;
            }
        }
    }
    let oracle = q(inside, seen.len() as i64);
    let mut ok = oracle == q(16, 35) && domain_fraction(2, 4) == oracle;

    let e = Embedding::standard(2, 4).unwrap();
    let g = GrassmannGraph::new(2, 4).unwrap();
    let vs = g.vertices().unwrap();
    let counted = vs.iter().filter(|x| e.in_domain(x).unwrap()).count();
    ok &= q(counted as i64, vs.len() as i64) == oracle;

    let mut low = f64::INFINITY;
    for l in 1..=8usize {
        let f = domain_fraction(l, 2 * l * l);
        ok &= f >= q(288, 1000);
        low = low.min(f.to_f64().unwrap());
    }
    for (l, n) in [(1, 2), (2, 4)] {
        let e = Embedding::standard(l, n).unwrap();
        for x in e.domain(1 << 10).unwrap() {
            ok &= e.neighbor_fraction(&x).unwrap() == q(1, 2);
        }
    }
    v.record("6", ok, format!("domain fraction 16/35 at (2,4); min over l <= 8, n = 2l^2 is {low:.6}; neighbor fraction 1/2"));
}

fn c7_nice_sets(v: &mut Verdicts) {
    let mut ok = true;
    let mut checked = 0;
    let mut prng = Prng::new(7, 0);
    for basis in [Basis::standard(4), sample_basis(&mut prng, 4)] {
        let e = Embedding::new(2, basis).unwrap();
        let domain = e.domain(1 << 10).unwrap();
        for s in NiceSetGrassmann::enumerate(2, 4, 2) {
            let image = e.map_nice_set(&s).unwrap();
            if let Some(t) = &image {
                ok &= t.r() <= s.r();
            }
            for x in &domain {
                let m = e.phi(x).unwrap();
                ok &= s.contains(x) == image.as_ref().is_some_and(|t| t.contains(&m));
            }
            checked += 1;
        }
        for t in NiceSetShortcode::enumerate(2, 2, 2) {
            let pre = e.map_nice_set_inverse(&t).unwrap();
            ok &= pre.as_ref().is_some_and(|s| s.r() <= t.r());
            for x in &domain {
                let m = e.phi(x).unwrap();
                ok &= t.contains(&m) == pre.as_ref().is_some_and(|s| s.contains(x));
            }
            checked += 1;
        }
    }
    v.record(
        "7",
        ok,
        format!(
            "membership agrees for {checked} nice sets with r <= 2 at (2,4), in both directions"
        ),
    );
}

fn c8_expansion_transfer(v: &mut Verdicts) {
    let e = Embedding::standard(2, 4).unwrap();
    let gg = GrassmannGraph::new(2, 4).unwrap();
    let sg = ShortcodeGraph::new(2, 2).unwrap();
    let mut sets: Vec<ShortcodeSet> = NiceSetShortcode::enumerate(2, 2, 1)
        .iter()
        .filter(|t| t.r() == 1)
        .map(|t| ShortcodeSet::from_nice(t).unwrap())
        .collect();
    let nice_count = sets.len();
    let mut prng = Prng::new(8, 0);
    while sets.len() < nice_count + 20 {
        let members: Vec<u64> = (0..16).filter(|_| prng.bit()).collect();
        if !members.is_empty() {
            sets.push(ShortcodeSet::new(sg, members).unwrap());
        }
    }
    let (mut ok, mut all_equal, mut literal_failures) = (true, true, 0);
    let mut worst_literal: Option<(BigRational, BigRational)> = None;
    for t in &sets {
        let report = stay_probability(t, Mode::exact()).unwrap();
        let walk = exact(&report.walk_stay());
        let nu = exact(&report.stay);
        let pre: Vec<Subspace> = t
            .members()
            .iter()
            .map(|&m| e.phi_inverse(&GF2Matrix::from_index(2, 2, m)).unwrap())
            .collect();
        let g = exact(
            &grassmann_expansion(&GrassmannSet::new(gg, pre).unwrap(), Mode::exact())
                .unwrap()
                .stay,
        );
        ok &= g >= &walk * q(1, 2);
        all_equal &= g == &walk * q(1, 2);
        if g < &nu * q(1, 2) {
            literal_failures += 1;
            if worst_literal.as_ref().is_none_or(|(w, _)| g < *w) {
                worst_literal = Some((g.clone(), &nu * q(1, 2)));
            }
        }
    }
    v.record(
        "8",
        ok,
        format!(
            "Grassmann stay of the preimage >= half the random-neighbor stay of T for {} nice + 20 random sets (equality throughout: {all_equal})",
            nice_count
        ),
    );
    if let Some((g, half_nu)) = worst_literal {
        v.note(format!(
            "measuring T by nu (zero steps included) instead: {literal_failures} sets violate, e.g. stay {g} < nu/2 = {half_nu}; see the decisions ledger"
        ));
    }
}

fn c9_expansion_values(v: &mut Verdicts) {
    let t = NiceSetShortcode::new(
        1,
        2,
        vec![("10".parse().unwrap(), "0".parse().unwrap())],
        vec![],
    )
    .unwrap();
    let nu = exact(
        &stay_probability(&ShortcodeSet::from_nice(&t).unwrap(), Mode::exact())
            .unwrap()
            .stay,
    );
    // oracle: stay iff a = 0 or <b, q> = 0
    let hits = (0..2u64)
        .flat_map(|a| (0..4u64).map(move |b| (a, b)))
        .filter(|&(a, b)| a == 0 || !dot(b, 0b01))
        .count();
    let oracle = q(hits as i64, 8);
    let g = GrassmannGraph::new(1, 2).unwrap();
    let dom = GrassmannSet::new(g, Embedding::standard(1, 2).unwrap().domain(16).unwrap()).unwrap();
    let phi_dom = exact(&grassmann_expansion(&dom, Mode::exact()).unwrap().phi);
    let all = GrassmannSet::from_predicate(g, 16, |_| true).unwrap();
    let phi_all = exact(&grassmann_expansion(&all, Mode::exact()).unwrap().phi);
    let ok = nu == q(3, 4) && oracle == nu && phi_dom == q(1, 2) && phi_all.is_zero();
    v.record(
        "9",
        ok,
        format!("nu = {nu}, Phi(domain of G(1,2)) = {phi_dom}, Phi(everything) = {phi_all}"),
    );
}

/// Best density over every set cut out by at most one constraint, and every
/// affine rule, by direct membership tests.
fn decode_oracle(labels: &[u64], l: usize, n: usize) -> BigRational {
    let vertices: Vec<u64> = (0..(1u64 << (l * n))).collect();
    let mut families: Vec<Vec<u64>> = vec![vertices.clone()];
    for qv in 1..(1u64 << n) {
        for t in 0..(1u64 << l) {
            families.push(
                vertices
                    .iter()
                    .copied()
                    .filter(|&m| mul_vec(l, n, m, qv) == t)
                    .collect(),
            );
        }
    }
    for r in 1..(1u64 << l) {
        for s in 0..(1u64 << n) {
            // r^T M = s^T, row by row
            families.push(
                vertices
                    .iter()
                    .copied()
                    .filter(|&m| {
                        (0..l)
                            .filter(|i| r >> i & 1 == 1)
                            .fold(0, |acc, i| acc ^ (m >> (i * n)) & ((1 << n) - 1))
                            == s
                    })
                    .collect(),
            );
        }
    }
    let mut best = BigRational::zero();
    for fam in families.iter().filter(|f| !f.is_empty()) {
        for z in 0..(1u64 << n) {
            for u in 0..(1u64 << l) {
                let hits = fam
                    .iter()
                    .filter(|&&m| labels[m as usize] == mul_vec(l, n, m, z) ^ u)
                    .count();
                best = best.max(BigRational::new(
                    BigInt::from(hits),
                    BigInt::from(fam.len()),
                ));
            }
        }
    }
    best
}

fn c10_decoding(v: &mut Verdicts) {
    let mut ok = true;
    for seed in 0..8u64 {
        let mut prng = Prng::new(10, seed);
        let (z, u) = (sample_vector(&mut prng, 3), sample_vector(&mut prng, 1));
        let base = ShortcodeStrategy::affine(z.clone(), u.clone()).unwrap();
        let mut labels = base.labels().unwrap();
        labels[prng.below(8) as usize] ^= 1;
        let f = ShortcodeStrategy::table(1, 3, labels).unwrap();
        let r = decode_shortcode(&f, 0, DEFAULT_DECODE_CAP).unwrap();
        ok &= r.r() == 0 && r.density == q(7, 8) && r.rule == DecodedRule::Affine { z, u };
        ok &= remeasure_shortcode(&f, &r).unwrap() == r.density;
    }
    let sets: Vec<NiceSetShortcode> = NiceSetShortcode::enumerate(1, 3, 1)
        .into_iter()
        .filter(|t| t.r() == 1)
        .collect();
    let mut planted = 0;
    for seed in 0..10u64 {
        let mut prng = Prng::new(11, seed);
        let regions = (0..2)
            .map(|_| ShortcodeRegion::Nice(sets[prng.below(sets.len() as u64) as usize].clone()))
            .collect();
        let f = make_planted(&mut prng, 1, 3, regions).unwrap();
        let r = decode_shortcode(&f, 1, DEFAULT_DECODE_CAP).unwrap();
        ok &= r.density == decode_oracle(&f.labels().unwrap(), 1, 3);
        ok &= remeasure_shortcode(&f, &r).unwrap() == r.density;
        planted += 1;
    }
    v.record("10", ok, format!("1/8-corrupted affine rules on S_{{1,3}} decode at r = 0 with density 7/8; {planted} planted strategies match the oracle"));
}

fn c11_spectrum(v: &mut Verdicts) {
    let (l, n) = (2, 2);
    let mut ok = true;
    for a in 0..16u64 {
        let mut sum = 0i64;
        for x in 0..4u64 {
            for y in 0..4u64 {
                sum += if (a & outer(l, n, x, y)).count_ones().is_multiple_of(2) {
                    1
                } else {
                    -1
                };
            }
        }
        let lambda = cayley_eigenvalue(&GF2Matrix::from_index(l, n, a));
        ok &= lambda == q(sum, 16)
            && lambda == BigRational::new(BigInt::one(), BigInt::one() << rank(l, n, a));
    }
    v.record(
        "11",
        ok,
        "lambda(A) = 2^-rank(A) equals the character sum for all 16 characters at (2,2)".into(),
    );
}

fn calibrate(exact_p: f64, run: impl Fn(u64) -> f64) -> usize {
    const TRIALS: f64 = 100_000.0;
    let sigma = (exact_p * (1.0 - exact_p) / TRIALS).sqrt();
    (0..40u64)
        .filter(|&s| (run(s) - exact_p).abs() <= 3.0 * sigma)
        .count()
}

fn c12_calibration(v: &mut Verdicts) {
    let trials = 100_000;
    let mc = |seed: u64| Mode::MonteCarlo {
        trials,
        seed,
        jobs: jobs(),
    };
    let mut results: Vec<(&str, usize)> = Vec::new();

    for n in [4, 5] {
        let g =
            GrassmannStrategy::linear(2, n, LinearFunctional::random(&mut Prng::new(100, 0), n))
                .unwrap();
        let name = if n == 4 {
            "G(2,4) completeness"
        } else {
            "G(2,5) completeness"
        };
        results.push((
            name,
            calibrate(1.0, |s| {
                grassmann_pass_probability(&g, mc(s))
                    .unwrap()
                    .probability
                    .as_f64()
            }),
        ));
    }
    let row =
        ShortcodeStrategy::row_fn(2, LinearFunctional::new("101".parse().unwrap(), true)).unwrap();
    results.push((
        "S_{2,3} completeness",
        calibrate(1.0, |s| {
            shortcode_pass_probability(&row, false, mc(s))
                .unwrap()
                .probability
                .as_f64()
        }),
    ));
    let bil = TensorStrategy::bilinear(2, "11".parse().unwrap(), "10".parse().unwrap()).unwrap();
    results.push((
        "Ten deg-3 3/4",
        calibrate(0.75, |s| {
            tensor_pass_probability(&bil, Deg3Steps::NonzeroA, mc(s))
                .unwrap()
                .probability
                .as_f64()
        }),
    ));
    results.push((
        "Ten deg-3 uniform 13/16",
        calibrate(13.0 / 16.0, |s| {
            tensor_pass_probability(&bil, Deg3Steps::Uniform, mc(s))
                .unwrap()
                .probability
                .as_f64()
        }),
    ));
    let degenerate =
        TensorStrategy::bilinear(2, "00".parse().unwrap(), "10".parse().unwrap()).unwrap();
    results.push((
        "Ten deg-3 y = 0",
        calibrate(1.0, |s| {
            tensor_pass_probability(&degenerate, Deg3Steps::NonzeroA, mc(s))
                .unwrap()
                .probability
                .as_f64()
        }),
    ));

    let t = NiceSetShortcode::new(
        1,
        2,
        vec![("10".parse().unwrap(), "0".parse().unwrap())],
        vec![],
    )
    .unwrap();
    let set = ShortcodeSet::from_nice(&t).unwrap();
    results.push((
        "nu of one constraint",
        calibrate(0.75, |s| {
            stay_probability(&set, mc(s)).unwrap().stay.as_f64()
        }),
    ));
    let g = GrassmannGraph::new(1, 2).unwrap();
    let dom = GrassmannSet::new(g, Embedding::standard(1, 2).unwrap().domain(16).unwrap()).unwrap();
    results.push((
        "Phi of the domain",
        calibrate(0.5, |s| {
            grassmann_expansion(&dom, mc(s)).unwrap().phi.as_f64()
        }),
    ));
    let all = GrassmannSet::from_predicate(g, 16, |_| true).unwrap();
    results.push((
        "Phi of everything",
        calibrate(0.0, |s| {
            grassmann_expansion(&all, mc(s)).unwrap().phi.as_f64()
        }),
    ));

    let ok = results.iter().all(|&(_, k)| k >= 38);
    let summary: Vec<String> = results
        .iter()
        .map(|(name, k)| format!("{name} {k}/40"))
        .collect();
    v.record(
        "12",
        ok,
        format!(
            "10^5-trial estimates within 3 sigma: {}",
            summary.join(", ")
        ),
    );
}

fn c13_reproducibility(v: &mut Verdicts) {
    let cfg = SuiteConfig::default();
    let a = serde_json::to_string_pretty(&suite_json(&run_suite(&cfg).unwrap())).unwrap();
    let b = serde_json::to_string_pretty(&suite_json(&run_suite(&cfg).unwrap())).unwrap();
    let cfg4 = SuiteConfig {
        mode: Mode::Exact {
            cap: DEFAULT_OUTCOME_CAP,
            jobs: 4,
        },
        ..SuiteConfig::default()
    };
    let c = serde_json::to_string_pretty(&suite_json(&run_suite(&cfg4).unwrap())).unwrap();
    v.record(
        "13",
        a == b && a == c,
        format!(
            "suite JSON identical across runs and job counts ({} bytes)",
            a.len()
        ),
    );
}

#[test]
fn acceptance() {
    let mut v = Verdicts { lines: Vec::new() };
    c1_grassmann_completeness(&mut v);
    c2_shortcode_completeness(&mut v);
    c3_deg3_completeness(&mut v);
    c4_uniquify(&mut v);
    c5_homomorphism(&mut v);
    c6_projection(&mut v);
    c7_nice_sets(&mut v);
    c8_expansion_transfer(&mut v);
    c9_expansion_values(&mut v);
    c10_decoding(&mut v);
    c11_spectrum(&mut v);
    c12_calibration(&mut v);
    c13_reproducibility(&mut v);
    let failed: Vec<&String> = v.lines.iter().filter(|(_, p)| !p).map(|(l, _)| l).collect();
    assert!(failed.is_empty(), "failed criteria:\n{failed:#?}");
}
