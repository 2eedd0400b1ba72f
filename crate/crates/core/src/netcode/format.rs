//! Text form of network codes.
//!
//! ```text
//! field q=2
//! vector T=1
//! code 0 : x0=1
//! code 1 : e0=1 e3=1
//! global 0 : 1,0
//! ```
//!
//! Every edge of the expanded instance has exactly one `code` line, in
//! edge-id order. `global` lines are informational and ignored on input.

use std::fmt::Write as _;

use thiserror::Error;

use super::{GlobalCodeTable, Input, NetworkCode};
use crate::field::{FieldError, PrimeField};
use crate::graph::EdgeId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `field q=<q>` header")]
    MissingField,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("line {line}: expected code line for edge {expected}")]
    EdgeOrder { line: usize, expected: usize },
}

fn syntax(line: usize, message: impl Into<String>) -> CodeParseError {
    CodeParseError::Syntax { line, message: message.into() }
}

fn header_value(line: usize, token: Option<&str>, key: &str) -> Result<usize, CodeParseError> {
    let token = token.ok_or_else(|| syntax(line, format!("expected {key}=<value>")))?;
    token
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| syntax(line, format!("invalid `{token}`")))
}

pub fn write_code(code: &NetworkCode, table: Option<&GlobalCodeTable>) -> String {
    let mut out = String::new();
    writeln!(out, "field q={}", code.field().q()).unwrap();
    writeln!(out, "vector T={}", code.t()).unwrap();
    for e in 0..code.edge_count() {
        write!(out, "code {e} :").unwrap();
        for &(input, c) in code.coefficients(EdgeId(e)) {
            write!(out, " {input}={c}").unwrap();
        }
        out.push('\n');
    }
    if let Some(table) = table {
        for (e, v) in table.vectors.iter().enumerate() {
            writeln!(out, "global {e} : {v}").unwrap();
        }
    }
    out
}

pub fn parse_code(text: &str) -> Result<NetworkCode, CodeParseError> {
    let mut q = None;
    let mut t = 1;
    let mut rows: Vec<Vec<(Input, u32)>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            None | Some("global") => continue,
            Some("field") => q = Some(header_value(line, tokens.next(), "q")?),
            Some("vector") => t = header_value(line, tokens.next(), "T")?.max(1),
            Some("code") => {
                let id: usize =
                    tokens.next().and_then(|s| s.parse().ok()).ok_or_else(|| syntax(line, "expected edge id"))?;
                if id != rows.len() {
                    return Err(CodeParseError::EdgeOrder { line, expected: rows.len() });
                }
                if tokens.next() != Some(":") {
                    return Err(syntax(line, "expected `:` after edge id"));
                }
                let mut row = Vec::new();
                for tok in tokens {
                    let (key, value) = tok.split_once('=').ok_or_else(|| syntax(line, format!("invalid `{tok}`")))?;
                    let value: u32 =
                        value.parse().map_err(|_| syntax(line, format!("invalid coefficient `{value}`")))?;
                    let input = if let Some(n) = key.strip_prefix('e') {
                        Input::Edge(EdgeId(n.parse().map_err(|_| syntax(line, format!("invalid input `{key}`")))?))
                    } else if let Some(n) = key.strip_prefix('x') {
                        Input::Symbol(n.parse().map_err(|_| syntax(line, format!("invalid input `{key}`")))?)
                    } else {
                        return Err(syntax(line, format!("invalid input `{key}`")));
                    };
                    row.push((input, value));
                }
                rows.push(row);
            }
            Some(other) => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    let q = q.ok_or(CodeParseError::MissingField)?;
    let field = PrimeField::new(u32::try_from(q).map_err(|_| FieldError::NotPrime(u32::MAX))?)?;
    let mut code = NetworkCode::new(field, t, rows.len());
    for (e, row) in rows.into_iter().enumerate() {
        for (input, value) in row {
            if value >= field.q() {
                return Err(syntax(0, format!("coefficient {value} on edge {e} is outside GF({})", field.q())));
            }
            code.set(EdgeId(e), input, value);
        }
    }
    Ok(code)
}
