//! The TOML input format: `[algebra]` with name, field, basis and table,
//! `[frobenius]` with the functional, and optional `[options]`.

use std::ops::Range;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use tatehh::algebra::{Algebra, Frobenius};
use tatehh::exactla::{Field, Scalar};
use toml::Spanned;

use crate::error::{CliError, Result};

pub const DEFAULT_WINDOW: usize = 4;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    algebra: RawAlgebra,
    frobenius: RawFrobenius,
    #[serde(default)]
    options: RawOptions,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    name: String,
    field: Spanned<String>,
    basis: Spanned<Vec<String>>,
    table: Spanned<Vec<Spanned<Vec<Vec<Entry>>>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFrobenius {
    functional: Spanned<Vec<Entry>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    window: Option<Spanned<i64>>,
    engine: Option<Spanned<String>>,
}

/// Integers, or strings for rationals such as `"-3/4"`.
#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Str(String),
}

/// Which route computes Tate groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Formula,
    Stable,
    Both,
}

impl Engine {
    pub fn parse(s: &str) -> Option<Engine> {
        match s {
            "formula" => Some(Engine::Formula),
            "stable" => Some(Engine::Stable),
            "both" => Some(Engine::Both),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Formula => "formula",
            Engine::Stable => "stable",
            Engine::Both => "both",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub window: usize,
    pub engine: Option<Engine>,
}

/// A parsed and validated spec file.
#[derive(Clone, Debug)]
pub struct SpecFile {
    pub name: String,
    pub algebra: Arc<Algebra>,
    pub frobenius: Frobenius,
    pub options: Options,
    /// SHA-256 of the canonical structure constants and functional.
    pub hash: String,
}

struct Source<'a> {
    text: &'a str,
}

impl Source<'_> {
    fn line(&self, span: Range<usize>) -> usize {
        self.text[..span.start.min(self.text.len())].matches('\n').count() + 1
    }

    fn err(&self, span: Range<usize>, msg: impl std::fmt::Display) -> CliError {
        CliError::Parse(format!("line {}: {msg}", self.line(span)))
    }
}

pub fn load(path: &Path) -> Result<SpecFile> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    parse(&text).map_err(|e| match e {
        CliError::Parse(m) => CliError::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn parse(text: &str) -> Result<SpecFile> {
    let raw: RawSpec = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string().trim_end().to_string()))?;
    let src = Source { text };
    let field = Field::parse(raw.algebra.field.get_ref()).map_err(|e| src.err(raw.algebra.field.span(), e))?;
    let basis = raw.algebra.basis.get_ref().clone();
    let d = basis.len();
    if d == 0 {
        return Err(src.err(raw.algebra.basis.span(), "basis is empty"));
    }
    let scalar = |e: &Entry, span: Range<usize>| -> Result<Scalar> {
        match e {
            Entry::Int(n) => Ok(field.from_i64(*n)),
            Entry::Str(s) => field.parse_scalar(s).map_err(|err| src.err(span, err)),
        }
    };
    let rows = raw.algebra.table.get_ref();
    if rows.len() != d {
        return Err(src.err(raw.algebra.table.span(), format!("table has {} rows, basis has {d} elements", rows.len())));
    }
    let mut table = Vec::with_capacity(d);
    for (i, row) in rows.iter().enumerate() {
        let cells = row.get_ref();
        if cells.len() != d {
            return Err(src.err(row.span(), format!("table row {i} has {} entries, expected {d}", cells.len())));
        }
        let mut out = Vec::with_capacity(d);
        for (j, cell) in cells.iter().enumerate() {
            if cell.len() != d {
                return Err(src.err(row.span(), format!("product ({i}, {j}) has {} coordinates, expected {d}", cell.len())));
            }
            out.push(cell.iter().map(|e| scalar(e, row.span())).collect::<Result<Vec<_>>>()?);
        }
        table.push(out);
    }
    let fspan = raw.frobenius.functional.span();
    let lambda = raw.frobenius.functional.get_ref().iter().map(|e| scalar(e, fspan.clone())).collect::<Result<Vec<_>>>()?;
    if lambda.len() != d {
        return Err(src.err(fspan, format!("functional has {} entries, expected {d}", lambda.len())));
    }
    let window = match &raw.options.window {
        Some(w) if *w.get_ref() < 2 => return Err(src.err(w.span(), "window must be at least 2")),
        Some(w) => *w.get_ref() as usize,
        None => DEFAULT_WINDOW,
    };
    let engine = match &raw.options.engine {
        Some(e) => Some(Engine::parse(e.get_ref()).ok_or_else(|| src.err(e.span(), format!("unknown engine {:?}", e.get_ref())))?),
        None => None,
    };

    let algebra = Algebra::new(&raw.algebra.name, field, basis.clone(), &table).map_err(|e| match e {
        tatehh::Error::NonAssociative(i, j, k) => CliError::Precondition(format!(
            "multiplication is not associative on the triple ({}, {}, {}) (basis indices {i}, {j}, {k})",
            basis[i], basis[j], basis[k]
        )),
        tatehh::Error::UnitViolation(i) => CliError::Precondition(format!(
            "the first basis element {} is not a two-sided unit (fails against {})",
            basis[0], basis[i]
        )),
        other => CliError::Math(other),
    })?;
    let frobenius = Frobenius::new(&algebra, &lambda)?;
    let hash = canonical_hash(field, &table, &lambda);
    Ok(SpecFile {
        name: raw.algebra.name,
        algebra: Arc::new(algebra),
        frobenius,
        options: Options { window, engine },
        hash,
    })
}

/// Names and labels do not enter the hash; the field, constants and functional do.
fn canonical_hash(field: Field, table: &[Vec<Vec<Scalar>>], lambda: &[Scalar]) -> String {
    let mut h = Sha256::new();
    h.update(format!("{field};{};", table.len()));
    for v in table.iter().flatten().flatten().chain(lambda) {
        h.update(format!("{v},"));
    }
    format!("{:x}", h.finalize())
}
