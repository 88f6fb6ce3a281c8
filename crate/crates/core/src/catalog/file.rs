//! Versioned JSON scheme files.
//!
//! ```text
//! {
//!   "format_version": 1,
//!   "dims": [u, v, w],
//!   "rank": r,
//!   "terms": [
//!     {"alpha":[[row,col,"coef"],...],"beta":[...],"gamma":[...]},
//!     ...
//!   ],
//!   "name": "...",
//!   "provenance": "..."
//! }
//! ```
//!
//! Indices are 0-based, `gamma` is indexed by result cell, and coefficients
//! are exact fractions (`"1"`, `"-3/2"`). Zero coefficients and repeated
//! positions are invalid. Rendering is deterministic: one term per line.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{FmmError, Result};
use crate::rational::{parse_rational, render_rational};
use crate::scheme::{BilinearScheme, CoeffMatrix, Dims, MulTerm};
use crate::verify::{brent_check, BrentReport};

pub const FORMAT_VERSION: u32 = 1;

/// `[row, col, "coefficient"]`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffEntry(pub usize, pub usize, pub String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub alpha: Vec<CoeffEntry>,
    pub beta: Vec<CoeffEntry>,
    pub gamma: Vec<CoeffEntry>,
}

/// On-disk form of a scheme, field order as written.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeFile {
    pub format_version: u32,
    pub dims: [usize; 3],
    pub rank: usize,
    pub terms: Vec<TermRecord>,
    pub name: String,
    pub provenance: String,
}

impl SchemeFile {
    pub fn from_scheme(scheme: &BilinearScheme) -> Self {
        let entries = |m: &CoeffMatrix| {
            m.iter()
                .map(|(r, c, q)| CoeffEntry(r, c, render_rational(q)))
                .collect()
        };
        SchemeFile {
            format_version: FORMAT_VERSION,
            dims: scheme.dims().as_array(),
            rank: scheme.rank(),
            terms: scheme
                .terms()
                .iter()
                .map(|t| TermRecord {
                    alpha: entries(&t.alpha),
                    beta: entries(&t.beta),
                    gamma: entries(&t.gamma),
                })
                .collect(),
            name: scheme.name().to_string(),
            provenance: scheme.provenance().to_string(),
        }
    }

    pub fn into_scheme(self) -> Result<BilinearScheme> {
        if self.format_version != FORMAT_VERSION {
            return Err(FmmError::Validation(format!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                self.format_version
            )));
        }
        if self.rank != self.terms.len() {
            return Err(FmmError::Validation(format!(
                "rank field is {} but {} terms are listed",
                self.rank,
                self.terms.len()
            )));
        }
        let [u, v, w] = self.dims;
        let dims = Dims::new(u, v, w)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (index, record) in self.terms.into_iter().enumerate() {
            let convert = |factor: &str, entries: Vec<CoeffEntry>, rows: usize, cols: usize| {
                let mut parsed = Vec::with_capacity(entries.len());
                for CoeffEntry(r, c, text) in entries {
                    let q = parse_rational(&text).map_err(|_| {
                        FmmError::Validation(format!(
                            "term {index} {factor}: invalid coefficient {text:?}"
                        ))
                    })?;
                    if num_traits::Zero::is_zero(&q) {
                        return Err(FmmError::Validation(format!(
                            "term {index} {factor}: zero coefficient at ({r}, {c})"
                        )));
                    }
                    parsed.push((r, c, q));
                }
                CoeffMatrix::from_entries(rows, cols, parsed).map_err(|message| {
                    FmmError::Validation(format!("term {index} {factor}: {message}"))
                })
            };
            terms.push(MulTerm::new(
                convert("alpha", record.alpha, u, v)?,
                convert("beta", record.beta, v, w)?,
                convert("gamma", record.gamma, u, w)?,
            ));
        }
        BilinearScheme::new(dims, terms, self.name, self.provenance)
    }
}

/// Deterministic text form; see the module docs for the layout.
pub fn render_scheme(scheme: &BilinearScheme) -> String {
    let file = SchemeFile::from_scheme(scheme);
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"format_version\": {},\n", file.format_version));
    out.push_str(&format!("  \"dims\": {},\n", json(&file.dims)));
    out.push_str(&format!("  \"rank\": {},\n", file.rank));
    if file.terms.is_empty() {
        out.push_str("  \"terms\": [],\n");
    } else {
        out.push_str("  \"terms\": [\n");
        let lines: Vec<String> = file
            .terms
            .iter()
            .map(|t| format!("    {}", json(t)))
            .collect();
        out.push_str(&lines.join(",\n"));
        out.push_str("\n  ],\n");
    }
    out.push_str(&format!("  \"name\": {},\n", json(&file.name)));
    out.push_str(&format!("  \"provenance\": {}\n", json(&file.provenance)));
    out.push_str("}\n");
    out
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data always serializes")
}

/// Parses and validates scheme file text.
pub fn parse_scheme(text: &str) -> Result<BilinearScheme> {
    let file: SchemeFile = serde_json::from_str(text).map_err(|e| FmmError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.into_scheme()
}

pub fn load_scheme(path: impl AsRef<Path>) -> Result<BilinearScheme> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| FmmError::io(path, e))?;
    parse_scheme(&text)
}

/// Loads a scheme, runs [`brent_check`] on it and records the verdict in the
/// provenance.
pub fn load_scheme_verified(path: impl AsRef<Path>) -> Result<(BilinearScheme, BrentReport)> {
    let scheme = load_scheme(path)?;
    let report = brent_check(&scheme);
    let verdict = if report.passed { "PASS" } else { "FAIL" };
    let provenance = format!(
        "{}; brent {verdict} ({} equations)",
        scheme.provenance(),
        report.total_equations
    );
    Ok((scheme.with_provenance(provenance), report))
}

pub fn save_scheme(scheme: &BilinearScheme, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, render_scheme(scheme)).map_err(|e| FmmError::io(path, e))
}
