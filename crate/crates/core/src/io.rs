//! The JSON input format for linear spaces and helpers for emitting exact
//! values.
//!
//! A space is `{"rows": d, "cols": n, "entries": [["p/q", ...], ...]}`.
//! Optional fields: `"complement"`, an `(n−d)×n` basis of the orthogonal
//! complement used by the entropic constructions, and `"factor"`, a `k×k`
//! matrix `Q` with `QQᵀ = ±G` for the exact certificate. Entries may be
//! strings `"p/q"`, `"p"`, Gaussian rationals such as `"1/2-3i"`, or JSON
//! integers.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::gauss::GaussianRational;
use crate::algebra::matrix::RatMatrix;
use crate::algebra::rational::{parse_rational, to_pq};
use crate::error::{Error, Result};
use crate::exterior::PlueckerVector;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpace {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Value>>,
    #[serde(default)]
    complement: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    factor: Option<Vec<Vec<Value>>>,
}

#[derive(Clone, Debug)]
pub struct SpaceInput {
    /// Entries as given, possibly complex.
    pub entries: Vec<Vec<GaussianRational>>,
    pub complement: Option<RatMatrix>,
    pub factor: Option<RatMatrix>,
}

impl SpaceInput {
    /// The real matrix; complex entries are a precondition failure.
    pub fn matrix(&self) -> Result<RatMatrix> {
        crate::reality::real_matrix(&self.entries)
    }
}

/// Parses `"a"`, `"a+bi"`, `"a-bi"`, `"bi"`, `"i"`, `"-i"` with rational parts.
pub fn parse_gaussian(s: &str) -> Result<GaussianRational> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else {
        return parse_rational(&t).map(GaussianRational::real);
    };
    let split = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(i, _)| i).last();
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other.strip_prefix('+').unwrap_or(other),
    };
    let bad = |_| Error::Parse(format!("invalid Gaussian rational {s:?}"));
    Ok(GaussianRational::new(parse_rational(re).map_err(bad)?, parse_rational(im).map_err(bad)?))
}

fn parse_entry(v: &Value, at: &str) -> Result<GaussianRational> {
    let located = |e: Error| Error::Parse(format!("{at}: {e}"));
    match v {
        Value::String(s) => parse_gaussian(s).map_err(located),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()).map(GaussianRational::real).map_err(located),
        _ => Err(Error::Parse(format!("{at}: expected a rational string or an integer"))),
    }
}

fn parse_grid(rows: &[Vec<Value>], field: &str) -> Result<Vec<Vec<GaussianRational>>> {
    rows.iter()
        .enumerate()
        .map(|(r, row)| row.iter().enumerate().map(|(c, v)| parse_entry(v, &format!("{field}[{r}][{c}]"))).collect())
        .collect()
}

fn real_grid(rows: &[Vec<Value>], field: &str) -> Result<RatMatrix> {
    let g = parse_grid(rows, field)?;
    if g.iter().flatten().any(|z| !z.is_real()) {
        return Err(Error::Parse(format!("{field}: entries must be real")));
    }
    let width = g.first().map_or(0, Vec::len);
    if g.iter().any(|r| r.len() != width) {
        return Err(Error::Parse(format!("{field}: rows have different lengths")));
    }
    RatMatrix::from_rows(g.into_iter().map(|r| r.into_iter().map(|z| z.re).collect()).collect())
}

pub fn parse_space(text: &str) -> Result<SpaceInput> {
    let raw: RawSpace = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if raw.entries.len() != raw.rows {
        return Err(Error::Parse(format!("entries: expected {} rows, found {}", raw.rows, raw.entries.len())));
    }
    if let Some((r, row)) = raw.entries.iter().enumerate().find(|(_, row)| row.len() != raw.cols) {
        return Err(Error::Parse(format!("entries[{r}]: expected {} columns, found {}", raw.cols, row.len())));
    }
    let entries = parse_grid(&raw.entries, "entries")?;
    let complement = raw.complement.as_deref().map(|c| real_grid(c, "complement")).transpose()?;
    if let Some(c) = &complement {
        if c.cols() != raw.cols || c.rows() + raw.rows != raw.cols {
            return Err(Error::Parse(format!("complement: expected {}x{}", raw.cols - raw.rows.min(raw.cols), raw.cols)));
        }
    }
    let factor = raw.factor.as_deref().map(|q| real_grid(q, "factor")).transpose()?;
    Ok(SpaceInput { entries, complement, factor })
}

pub fn rational_json(r: &BigRational) -> Value {
    Value::String(to_pq(r))
}

pub fn matrix_json(m: &RatMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(rational_json).collect())).collect())
}

/// The input format for a real matrix.
pub fn space_json(m: &RatMatrix) -> Value {
    json!({"rows": m.rows(), "cols": m.cols(), "entries": matrix_json(m)})
}

/// Nonzero coordinates keyed by subset label.
pub fn pluecker_json(p: &PlueckerVector) -> Value {
    let mut map = serde_json::Map::new();
    for (s, c) in p.subsets().iter().zip(p.coeffs()) {
        if !c.is_zero() {
            map.insert(s.label(), rational_json(c));
        }
    }
    Value::Object(map)
}
