use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use grassmann_core::expansion::{
    decode_grassmann, decode_shortcode, format_grassmann_set, format_shortcode_set,
    grassmann_expansion, parse_grassmann_set, parse_shortcode_set, spectrum_by_rank,
    stay_probability, DecodeReport, DecodedRule, DecodedSet, ExpansionReport, GrassmannSet,
    ShortcodeSet, DEFAULT_DECODE_CAP,
};
use grassmann_core::rng::Prng;
use grassmann_core::strategies::{
    make_planted, read_strategy, write_strategy, AnyStrategy, ShortcodeRegion,
};
use grassmann_core::suite::{run_suite, suite_json, SuiteConfig};
use grassmann_core::testers::{
    pass_probability, Mode, Probability, TestKind, TestReport, DEFAULT_OUTCOME_CAP,
};
use grassmann_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "grassmann",
    version,
    about = "Grassmann and shortcode graph test harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every verification check; exits 1 if any check fails.
    Suite {
        #[command(flatten)]
        common: Common,
        /// Strategy file that must pass its test with certainty.
        #[arg(long)]
        strategy: Option<PathBuf>,
    },
    /// Pass probability of a strategy file under one of the tests.
    Estimate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        strategy: PathBuf,
        /// grassmann, deg2, unique-deg2 or unique-deg3 (default: by strategy kind).
        #[arg(long)]
        test: Option<TestKind>,
    },
    /// Stay probability and expansion of a nice set.
    Expansion {
        #[command(flatten)]
        common: Common,
        /// Constraints such as "R10=1;L1=01" (shortcode) or "Q1000;P0001" (Grassmann).
        #[arg(long, default_value = "all")]
        set: String,
        #[arg(long, value_enum, default_value_t = Graph::Shortcode)]
        graph: Graph,
    },
    /// Best nice set and global rule for a strategy file.
    Decode {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        strategy: PathBuf,
    },
    /// Eigenvalue of the shortcode Cayley graph per character rank.
    Spectrum {
        #[command(flatten)]
        common: Common,
    },
    /// Write a planted shortcode strategy file.
    Plant {
        #[command(flatten)]
        common: Common,
        /// Nice sets separated by '|', one per planted part.
        #[arg(long)]
        parts: String,
    },
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 2)]
    l: usize,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Monte Carlo trials; without it everything is enumerated exactly.
    #[arg(long, conflicts_with = "exact")]
    trials: Option<u64>,
    #[arg(long)]
    exact: bool,
    #[arg(long, default_value_t = 1)]
    rmax: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

impl Common {
    fn mode(&self) -> Mode {
        let jobs = self.jobs as usize;
        match self.trials {
            Some(trials) => Mode::MonteCarlo {
                trials,
                seed: self.seed,
                jobs,
            },
            None => Mode::Exact {
                cap: DEFAULT_OUTCOME_CAP,
                jobs,
            },
        }
    }

    fn emit(&self, json: &Value, csv_rows: Vec<Vec<String>>) -> Result<()> {
        let text = match self.format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(json).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for row in csv_rows {
                    w.write_record(&row).map_err(io_error)?;
                }
                String::from_utf8(w.into_inner().map_err(|e| io_error(e.into_error()))?)
                    .expect("csv output is utf-8")
            }
        };
        write_out(self.out.as_deref(), &text)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Graph {
    Shortcode,
    Grassmann,
}

fn io_error(e: impl std::fmt::Display) -> Error {
    Error::Parameter(format!("i/o: {e}"))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_error(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(io_error),
    }
}

fn load(path: &Path) -> Result<AnyStrategy> {
    let text =
        fs::read_to_string(path).map_err(|e| io_error(format!("{}: {e}", path.display())))?;
    read_strategy(&text)
}

macro_rules! row {
    ($($cell:expr),* $(,)?) => {
        vec![$($cell.to_string()),*]
    };
}

fn probability_cells(p: &Probability) -> (String, String) {
    match p {
        Probability::Exact(r) => (r.to_string(), String::new()),
        Probability::Estimate { value, ci3sigma } => (value.to_string(), ci3sigma.to_string()),
    }
}

fn cmd_suite(c: &Common, strategy: Option<&Path>) -> Result<bool> {
    let cfg = SuiteConfig {
        l: c.l,
        n: c.n,
        m: c.m,
        seed: c.seed,
        mode: c.mode(),
        strategy: strategy.map(load).transpose()?,
    };
    let checks = run_suite(&cfg)?;
    let mut rows = vec![row!["id", "anchor", "expected", "observed", "verdict"]];
    for k in &checks {
        let verdict = if k.pass { "pass" } else { "fail" };
        rows.push(row![k.id, k.anchor, k.expected, k.observed, verdict]);
    }
    c.emit(&suite_json(&checks), rows)?;
    for k in checks.iter().filter(|k| !k.pass) {
        eprintln!(
            "check failed: {} (expected {}, observed {})",
            k.id, k.expected, k.observed
        );
    }
    Ok(checks.iter().all(|k| k.pass))
}

fn default_test(f: &AnyStrategy) -> TestKind {
    match f {
        AnyStrategy::Grassmann(_) => TestKind::GrassmannConsistency,
        AnyStrategy::Shortcode(_) => TestKind::Deg2Shortcode,
        AnyStrategy::Tensor(_) => TestKind::UniqueDeg3Shortcode,
    }
}

fn estimate_rows(r: &TestReport) -> Vec<Vec<String>> {
    let (p, ci) = probability_cells(&r.probability);
    let mode = if r.probability.exact().is_some() {
        "exact"
    } else {
        "monte_carlo"
    };
    let m = r.m.map(|m| m.to_string()).unwrap_or_default();
    vec![
        row![
            "kind",
            "l",
            "n",
            "m",
            "mode",
            "passes",
            "outcomes",
            "probability",
            "ci3sigma"
        ],
        row![r.kind, r.l, r.n, m, mode, r.passes, r.outcomes, p, ci],
    ]
}

fn cmd_estimate(c: &Common, strategy: &Path, test: Option<TestKind>) -> Result<()> {
    let f = load(strategy)?;
    let kind = test.unwrap_or_else(|| default_test(&f));
    let report = pass_probability(&f, kind, c.mode())?;
    c.emit(&report.to_json(), estimate_rows(&report))
}

fn expansion_rows(r: &ExpansionReport) -> Vec<Vec<String>> {
    let (stay, _) = probability_cells(&r.stay);
    let (phi, _) = probability_cells(&r.phi);
    vec![
        row!["graph", "l", "n", "size", "stay", "phi"],
        row![r.graph, r.l, r.n, r.size, stay, phi],
    ]
}

fn cmd_expansion(c: &Common, set: &str, graph: Graph) -> Result<()> {
    let (report, spec) = match graph {
        Graph::Shortcode => {
            let t = parse_shortcode_set(c.l, c.n, set)?;
            let s = ShortcodeSet::from_nice(&t)?;
            (stay_probability(&s, c.mode())?, format_shortcode_set(&t))
        }
        Graph::Grassmann => {
            let t = parse_grassmann_set(c.l, c.n, set)?;
            let s = GrassmannSet::from_nice(&t)?;
            (grassmann_expansion(&s, c.mode())?, format_grassmann_set(&t))
        }
    };
    let mut json = report.to_json();
    json["set"] = json!(spec);
    c.emit(&json, expansion_rows(&report))
}

fn decode_rows(r: &DecodeReport) -> Vec<Vec<String>> {
    let (graph, set) = match &r.set {
        DecodedSet::Shortcode(t) => ("shortcode", format_shortcode_set(t)),
        DecodedSet::Grassmann(s) => ("grassmann", format_grassmann_set(s)),
    };
    let rule = match &r.rule {
        DecodedRule::Affine { z, u } => format!("z={z};u={u}"),
        DecodedRule::Functional(f) => format!("f={f}"),
    };
    vec![
        row!["graph", "l", "n", "r", "set", "rule", "agree", "size", "density"],
        row![
            graph,
            r.l,
            r.n,
            r.r(),
            set,
            rule,
            r.agree,
            r.size,
            r.density
        ],
    ]
}

fn cmd_decode(c: &Common, strategy: &Path) -> Result<()> {
    let report = match load(strategy)? {
        AnyStrategy::Shortcode(f) => decode_shortcode(&f, c.rmax, DEFAULT_DECODE_CAP)?,
        AnyStrategy::Grassmann(f) => decode_grassmann(&f, c.rmax, DEFAULT_DECODE_CAP)?,
        AnyStrategy::Tensor(_) => {
            return Err(Error::Parameter(
                "decoding applies to shortcode and Grassmann strategies".into(),
            ))
        }
    };
    let mut json = report.to_json();
    if let DecodedSet::Shortcode(t) = &report.set {
        json["set_spec"] = json!(format_shortcode_set(t));
    }
    if let DecodedSet::Grassmann(s) = &report.set {
        json["set_spec"] = json!(format_grassmann_set(s));
    }
    c.emit(&json, decode_rows(&report))
}

fn cmd_spectrum(c: &Common) -> Result<()> {
    let table = spectrum_by_rank(c.l, c.n);
    let json: Value = table
        .iter()
        .map(|(k, lambda)| json!({ "rank": k, "lambda": lambda.to_string() }))
        .collect();
    let mut rows = vec![row!["rank", "lambda"]];
    rows.extend(table.iter().map(|(k, lambda)| row![k, lambda]));
    c.emit(&json, rows)
}

fn cmd_plant(c: &Common, parts: &str) -> Result<()> {
    let regions = parts
        .split('|')
        .map(|p| parse_shortcode_set(c.l, c.n, p).map(ShortcodeRegion::Nice))
        .collect::<Result<Vec<_>>>()?;
    let f = make_planted(&mut Prng::new(c.seed, 0), c.l, c.n, regions)?;
    write_out(c.out.as_deref(), &write_strategy(&f.into())?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Suite { common, strategy } => cmd_suite(common, strategy.as_deref()),
        Command::Estimate {
            common,
            strategy,
            test,
        } => cmd_estimate(common, strategy, *test).map(|_| true),
        Command::Expansion { common, set, graph } => {
            cmd_expansion(common, set, *graph).map(|_| true)
        }
        Command::Decode { common, strategy } => cmd_decode(common, strategy).map(|_| true),
        Command::Spectrum { common } => cmd_spectrum(common).map(|_| true),
        Command::Plant { common, parts } => cmd_plant(common, parts).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
