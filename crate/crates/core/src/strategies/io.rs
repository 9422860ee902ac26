//! Text strategy files.
//!
//! ```text
//! strategy v1 kind=shortcode backing=affine l=2 n=3
//! z=101
//! u=01
//! ```
//!
//! Table backings list one hex label per line, the line index being the
//! vertex encoding. Planted and shifted strategies are written as tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{
    GrassmannBacking, GrassmannStrategy, LinearFunctional, ShortcodeBacking, ShortcodeStrategy,
    TensorBacking, TensorStrategy,
};
use crate::error::{Error, Result};
use crate::gf2::GF2Vector;
use crate::graphs::{GrassmannGraph, DEFAULT_VERTEX_CAP};

#[derive(Clone, Debug)]
pub enum AnyStrategy {
    Grassmann(GrassmannStrategy),
    Shortcode(ShortcodeStrategy),
    Tensor(TensorStrategy),
}

impl From<GrassmannStrategy> for AnyStrategy {
    fn from(s: GrassmannStrategy) -> Self {
        AnyStrategy::Grassmann(s)
    }
}

impl From<ShortcodeStrategy> for AnyStrategy {
    fn from(s: ShortcodeStrategy) -> Self {
        AnyStrategy::Shortcode(s)
    }
}

impl From<TensorStrategy> for AnyStrategy {
    fn from(s: TensorStrategy) -> Self {
        AnyStrategy::Tensor(s)
    }
}

fn bit(b: bool) -> char {
    if b {
        '1'
    } else {
        '0'
    }
}

fn hex_lines(out: &mut String, width: usize, labels: impl Iterator<Item = u64>) {
    for x in labels {
        out.push_str(&GF2Vector::from_u64(width, x).to_hex());
        out.push('\n');
    }
}

/// Serializes a strategy.
pub fn write_strategy(s: &AnyStrategy) -> Result<String> {
    let mut out = String::new();
    match s {
        AnyStrategy::Grassmann(g) => {
            let (l, n) = (g.l(), g.n());
            match g.backing() {
                GrassmannBacking::Linear(f) => {
                    writeln!(out, "strategy v1 kind=grassmann backing=rowfn l={l} n={n}").unwrap();
                    writeln!(out, "f={}", f.coefficients()).unwrap();
                    writeln!(out, "c={}", bit(f.constant())).unwrap();
                }
                _ => {
                    let vertices = g.graph().vertices_with_cap(DEFAULT_VERTEX_CAP)?;
                    writeln!(out, "strategy v1 kind=grassmann backing=table l={l} n={n}").unwrap();
                    for v in vertices.iter() {
                        out.push_str(&g.values(v)?.to_hex());
                        out.push('\n');
                    }
                }
            }
        }
        AnyStrategy::Shortcode(sc) => {
            let (l, n) = (sc.l(), sc.n());
            match sc.backing() {
                ShortcodeBacking::Affine { z, u } => {
                    writeln!(out, "strategy v1 kind=shortcode backing=affine l={l} n={n}").unwrap();
                    writeln!(out, "z={z}").unwrap();
                    writeln!(out, "u={u}").unwrap();
                }
                ShortcodeBacking::RowFn(f) => {
                    writeln!(out, "strategy v1 kind=shortcode backing=rowfn l={l} n={n}").unwrap();
                    writeln!(out, "f={}", f.coefficients()).unwrap();
                    writeln!(out, "c={}", bit(f.constant())).unwrap();
                }
                _ => {
                    let labels = sc.labels()?;
                    writeln!(out, "strategy v1 kind=shortcode backing=table l={l} n={n}").unwrap();
                    hex_lines(&mut out, l, labels.into_iter());
                }
            }
        }
        AnyStrategy::Tensor(t) => {
            let (l, m, n) = t.dims();
            match t.backing() {
                TensorBacking::Bilinear { y, z } => {
                    writeln!(
                        out,
                        "strategy v1 kind=tensor backing=bilinear l={l} n={n} m={m}"
                    )
                    .unwrap();
                    writeln!(out, "y={y}").unwrap();
                    writeln!(out, "z={z}").unwrap();
                }
                TensorBacking::Table(_) => {
                    let labels = t.labels()?;
                    writeln!(
                        out,
                        "strategy v1 kind=tensor backing=table l={l} n={n} m={m}"
                    )
                    .unwrap();
                    hex_lines(&mut out, l, labels.into_iter());
                }
            }
        }
    }
    Ok(out)
}

struct Header {
    kind: String,
    backing: String,
    l: usize,
    n: usize,
    m: Option<usize>,
}

fn parse_header(line: &str) -> Result<Header> {
    let mut tokens = line.split_whitespace();
    if tokens.next() != Some("strategy") || tokens.next() != Some("v1") {
        return Err(Error::format(1, "header must start with `strategy v1`"));
    }
    let mut fields = BTreeMap::new();
    for tok in tokens {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| Error::format(1, format!("malformed header field {tok:?}")))?;
        if fields.insert(k, v).is_some() {
            return Err(Error::format(1, format!("duplicate header field {k:?}")));
        }
    }
    let take = |k: &str| -> Result<&str> {
        fields
            .get(k)
            .copied()
            .ok_or_else(|| Error::format(1, format!("header is missing {k}=")))
    };
    let num = |k: &str| -> Result<usize> {
        take(k)?
            .parse()
            .map_err(|_| Error::format(1, format!("header field {k} is not a number")))
    };
    let header = Header {
        kind: take("kind")?.to_string(),
        backing: take("backing")?.to_string(),
        l: num("l")?,
        n: num("n")?,
        m: if fields.contains_key("m") {
            Some(num("m")?)
        } else {
            None
        },
    };
    if let Some(extra) = fields
        .keys()
        .find(|k| !["kind", "backing", "l", "n", "m"].contains(k))
    {
        return Err(Error::format(1, format!("unknown header field {extra:?}")));
    }
    Ok(header)
}

/// Reads `key=value` lines (in any order) following the header.
fn parse_fields<'a>(
    body: &[(usize, &'a str)],
    keys: &[&str],
) -> Result<BTreeMap<String, (usize, &'a str)>> {
    let mut out = BTreeMap::new();
    for &(line, text) in body {
        let (k, v) = text
            .split_once('=')
            .ok_or_else(|| Error::format(line, format!("expected key=value, got {text:?}")))?;
        if !keys.contains(&k) {
            return Err(Error::format(line, format!("unexpected field {k:?}")));
        }
        if out.insert(k.to_string(), (line, v)).is_some() {
            return Err(Error::format(line, format!("duplicate field {k:?}")));
        }
    }
    let last = body.last().map_or(1, |&(l, _)| l);
    for k in keys {
        if !out.contains_key(*k) {
            return Err(Error::format(last + 1, format!("missing field {k}=")));
        }
    }
    Ok(out)
}

fn field_vec(fields: &BTreeMap<String, (usize, &str)>, key: &str, len: usize) -> Result<GF2Vector> {
    let (line, text) = fields[key];
    GF2Vector::parse_literal(text, Some(len)).map_err(|e| relocate(e, line))
}

fn field_bit(fields: &BTreeMap<String, (usize, &str)>, key: &str) -> Result<bool> {
    let (line, text) = fields[key];
    match text {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(Error::format(line, format!("{key} must be 0 or 1"))),
    }
}

fn relocate(e: Error, line: usize) -> Error {
    match e {
        Error::Format { message, .. } => Error::Format { line, message },
        Error::Parameter(message) | Error::Domain(message) => Error::Format { line, message },
        other => other,
    }
}

fn table_labels(body: &[(usize, &str)], width: usize, expected: u64) -> Result<Vec<u64>> {
    if body.len() as u64 != expected {
        let line = body.last().map_or(2, |&(l, _)| l + 1);
        return Err(Error::format(
            line,
            format!("table has {} entries, expected {expected}", body.len()),
        ));
    }
    body.iter()
        .map(|&(line, text)| {
            GF2Vector::from_hex(text.trim(), width)
                .map(|v| v.to_u64())
                .map_err(|e| relocate(e, line))
        })
        .collect()
}

/// Parses a strategy file. Errors carry 1-based line numbers.
pub fn read_strategy(text: &str) -> Result<AnyStrategy> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, header_line) = lines
        .next()
        .ok_or_else(|| Error::format(1, "empty strategy file"))?;
    let header = parse_header(header_line)?;
    let body: Vec<(usize, &str)> = lines.filter(|(_, l)| !l.is_empty()).collect();
    let Header {
        kind,
        backing,
        l,
        n,
        m,
    } = header;
    let wrap = |e: Error| relocate(e, 1);
    if kind != "tensor" && m.is_some() {
        return Err(Error::format(1, "m= is only valid for tensor strategies"));
    }
    match (kind.as_str(), backing.as_str()) {
        ("grassmann", "rowfn") => {
            let f = parse_fields(&body, &["f", "c"])?;
            let func = LinearFunctional::new(field_vec(&f, "f", n)?, field_bit(&f, "c")?);
            Ok(GrassmannStrategy::linear(l, n, func).map_err(wrap)?.into())
        }
        ("grassmann", "table") => {
            let graph = GrassmannGraph::new(l, n).map_err(wrap)?;
            let vertices = graph.vertices_with_cap(DEFAULT_VERTEX_CAP)?;
            let labels = table_labels(&body, l, vertices.len() as u64)?;
            let values = labels
                .into_iter()
                .map(|x| GF2Vector::from_u64(l, x))
                .collect();
            Ok(GrassmannStrategy::table(vertices, values)
                .map_err(wrap)?
                .into())
        }
        ("shortcode", "affine") => {
            let f = parse_fields(&body, &["z", "u"])?;
            let s = ShortcodeStrategy::affine(field_vec(&f, "z", n)?, field_vec(&f, "u", l)?);
            Ok(s.map_err(wrap)?.into())
        }
        ("shortcode", "rowfn") => {
            let f = parse_fields(&body, &["f", "c"])?;
            let func = LinearFunctional::new(field_vec(&f, "f", n)?, field_bit(&f, "c")?);
            Ok(ShortcodeStrategy::row_fn(l, func).map_err(wrap)?.into())
        }
        ("shortcode", "table") => {
            let graph = crate::graphs::ShortcodeGraph::new(l, n).map_err(wrap)?;
            let count = graph.check_cap(DEFAULT_VERTEX_CAP)?;
            let labels = table_labels(&body, l, count)?;
            Ok(ShortcodeStrategy::table(l, n, labels).map_err(wrap)?.into())
        }
        ("tensor", "bilinear") => {
            let m = m.ok_or_else(|| Error::format(1, "tensor header needs m="))?;
            let f = parse_fields(&body, &["y", "z"])?;
            let s = TensorStrategy::bilinear(l, field_vec(&f, "y", m)?, field_vec(&f, "z", n)?);
            Ok(s.map_err(wrap)?.into())
        }
        ("tensor", "table") => {
            let m = m.ok_or_else(|| Error::format(1, "tensor header needs m="))?;
            let graph = crate::graphs::TensorGraph::new(l, m, n).map_err(wrap)?;
            let count = graph.check_cap(DEFAULT_VERTEX_CAP)?;
            let labels = table_labels(&body, l, count)?;
            Ok(TensorStrategy::table(l, m, n, labels).map_err(wrap)?.into())
        }
        (k, b) => Err(Error::format(
            1,
            format!("unsupported kind/backing combination {k}/{b}"),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::GF2Matrix;
    use crate::rng::Prng;

    fn v(s: &str) -> GF2Vector {
        s.parse().unwrap()
    }

    fn shortcode(s: &AnyStrategy) -> &ShortcodeStrategy {
        match s {
            AnyStrategy::Shortcode(x) => x,
            other => panic!("expected shortcode strategy, got {other:?}"),
        }
    }

    #[test]
    fn affine_round_trip() {
        let f = ShortcodeStrategy::affine(v("101"), v("01")).unwrap();
        let text = write_strategy(&f.clone().into()).unwrap();
        assert_eq!(
            text,
            "strategy v1 kind=shortcode backing=affine l=2 n=3\nz=101\nu=01\n"
        );
        let back = read_strategy(&text).unwrap();
        assert_eq!(shortcode(&back).as_affine(), f.as_affine());
        assert_eq!(write_strategy(&back).unwrap(), text);
    }

    #[test]
    fn table_for_s12() {
        let text = "strategy v1 kind=shortcode backing=table l=1 n=2\n0\n1\n1\n0\n";
        let s = read_strategy(text).unwrap();
        let s = shortcode(&s);
        assert_eq!(
            s.eval(&GF2Matrix::parse_literal("10", None).unwrap())
                .unwrap(),
            v("1")
        );
        assert_eq!(
            s.eval(&GF2Matrix::parse_literal("11", None).unwrap())
                .unwrap(),
            v("0")
        );
        assert_eq!(write_strategy(&s.clone().into()).unwrap(), text);
    }

    #[test]
    fn wrong_entry_count_is_format_error() {
        let text = "strategy v1 kind=shortcode backing=table l=1 n=2\n0\n1\n1\n";
        assert!(matches!(
            read_strategy(text),
            Err(Error::Format { line: 5, .. })
        ));
    }

    #[test]
    fn bad_lines_report_their_number() {
        let text = "strategy v1 kind=shortcode backing=table l=1 n=2\n0\n1\nz\n0\n";
        assert!(matches!(
            read_strategy(text),
            Err(Error::Format { line: 4, .. })
        ));
        let text = "strategy v1 kind=shortcode backing=affine l=2 n=3\nz=10\nu=01\n";
        assert!(matches!(
            read_strategy(text),
            Err(Error::Format { line: 2, .. })
        ));
        assert!(matches!(
            read_strategy("strategy v2 kind=shortcode"),
            Err(Error::Format { line: 1, .. })
        ));
        assert!(matches!(
            read_strategy("strategy v1 kind=shortcode backing=affine l=2\nz=1\nu=01"),
            Err(Error::Format { line: 1, .. })
        ));
        // a label wider than l
        let text = "strategy v1 kind=shortcode backing=table l=1 n=2\n0\n2\n1\n0\n";
        assert!(matches!(
            read_strategy(text),
            Err(Error::Format { line: 3, .. })
        ));
    }

    #[test]
    fn every_kind_round_trips() {
        let mut prng = Prng::new(1, 0);
        let samples: Vec<AnyStrategy> = vec![
            GrassmannStrategy::linear(2, 4, LinearFunctional::linear(v("1011")))
                .unwrap()
                .into(),
            GrassmannStrategy::linear(2, 4, LinearFunctional::linear(v("1011")))
                .unwrap()
                .expand()
                .unwrap()
                .into(),
            ShortcodeStrategy::row_fn(2, LinearFunctional::new(v("110"), true))
                .unwrap()
                .into(),
            ShortcodeStrategy::random_table(&mut prng, 2, 3)
                .unwrap()
                .into(),
            TensorStrategy::bilinear(2, v("10"), v("11"))
                .unwrap()
                .into(),
            TensorStrategy::bilinear(2, v("10"), v("11"))
                .unwrap()
                .expand()
                .unwrap()
                .into(),
        ];
        for s in samples {
            let text = write_strategy(&s).unwrap();
            let back = read_strategy(&text).unwrap();
            assert_eq!(write_strategy(&back).unwrap(), text);
        }
    }
}
