//! Text form of nice sets: `;`-separated constraints in the vector literal
//! format.
//!
//! Shortcode sets use `R<q>=<t>` for `M q = t` and `L<r>=<s>` for
//! `r^T M = s^T`. Grassmann sets use `Q<v>` for a vector of `Q` and `P<w>`
//! for a vector orthogonal to `W`. `all` (or an empty string) is the
//! unconstrained set.

use super::{NiceSetGrassmann, NiceSetShortcode};
use crate::error::{Error, Result};
use crate::gf2::{GF2Vector, Subspace};

fn items(spec: &str) -> impl Iterator<Item = &str> {
    let spec = spec.trim();
    let spec = if spec == "all" { "" } else { spec };
    spec.split(';').map(str::trim).filter(|s| !s.is_empty())
}

fn pair(body: &str, a: usize, b: usize) -> Result<(GF2Vector, GF2Vector)> {
    let (x, y) = body
        .split_once('=')
        .ok_or_else(|| Error::Parameter(format!("constraint {body:?} needs '='")))?;
    Ok((
        GF2Vector::parse_literal(x, Some(a))?,
        GF2Vector::parse_literal(y, Some(b))?,
    ))
}

pub fn parse_shortcode_set(l: usize, n: usize, spec: &str) -> Result<NiceSetShortcode> {
    let (mut right, mut left) = (Vec::new(), Vec::new());
    for item in items(spec) {
        match item.split_at(1) {
            ("R", body) => right.push(pair(body, n, l)?),
            ("L", body) => left.push(pair(body, l, n)?),
            _ => return Err(Error::Parameter(format!("unknown constraint {item:?}"))),
        }
    }
    NiceSetShortcode::new(l, n, right, left)
}

pub fn parse_grassmann_set(l: usize, n: usize, spec: &str) -> Result<NiceSetGrassmann> {
    let (mut q, mut p) = (Vec::new(), Vec::new());
    for item in items(spec) {
        match item.split_at(1) {
            ("Q", body) => q.push(GF2Vector::parse_literal(body, Some(n))?),
            ("P", body) => p.push(GF2Vector::parse_literal(body, Some(n))?),
            _ => return Err(Error::Parameter(format!("unknown constraint {item:?}"))),
        }
    }
    let w = Subspace::span(n, &p)?.orthogonal_complement();
    NiceSetGrassmann::new(l, Subspace::span(n, &q)?, w)
}

pub fn format_shortcode_set(t: &NiceSetShortcode) -> String {
    let parts: Vec<String> = t
        .right()
        .iter()
        .map(|(q, v)| format!("R{q}={v}"))
        .chain(t.left().iter().map(|(r, s)| format!("L{r}={s}")))
        .collect();
    if parts.is_empty() {
        "all".into()
    } else {
        parts.join(";")
    }
}

pub fn format_grassmann_set(s: &NiceSetGrassmann) -> String {
    let parts: Vec<String> = s
        .q()
        .basis()
        .row_iter()
        .map(|v| format!("Q{v}"))
        .chain(
            s.w()
                .orthogonal_complement()
                .basis()
                .row_iter()
                .map(|w| format!("P{w}")),
        )
        .collect();
    if parts.is_empty() {
        "all".into()
    } else {
        parts.join(";")
    }
}
