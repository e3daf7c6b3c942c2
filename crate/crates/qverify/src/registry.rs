//! The registered identity suite and the suite-file format.
//!
//! A suite file is UTF-8 text with one identity per line:
//!
//! ```text
//! name [@order] [#tag,...] : lhs == rhs
//! ```
//!
//! Lines starting with `#` (and blank lines) are comments. The built-in
//! registry lives in `suites/core.suite` and is embedded at compile time.

use crate::ast::Expr;
use crate::parser::{parse_equation, ParseError};
use std::fmt;
use std::sync::OnceLock;

pub const DEFAULT_ORDER: i64 = 50;

#[derive(Clone, Debug)]
pub struct Identity {
    pub name: String,
    pub order: i64,
    pub tags: Vec<String>,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Identity {
    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @{}", self.name, self.order)?;
        if !self.tags.is_empty() {
            write!(f, " #{}", self.tags.join(","))?;
        }
        write!(f, " : {} == {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for SuiteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for SuiteError {}

fn suite_err(line: usize, msg: impl Into<String>) -> SuiteError {
    SuiteError {
        line,
        msg: msg.into(),
    }
}

impl From<(usize, ParseError)> for SuiteError {
    fn from((line, e): (usize, ParseError)) -> Self {
        suite_err(line, e.to_string())
    }
}

/// Parse a suite file. Line numbers in errors are 1-based.
pub fn parse_suite(text: &str) -> Result<Vec<Identity>, SuiteError> {
    qseries::symbol::seed_standard_symbols();
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (header, body) = line
            .split_once(':')
            .ok_or_else(|| suite_err(lineno, "missing ':' between header and equation"))?;
        let mut name = None;
        let mut order = DEFAULT_ORDER;
        let mut tags = Vec::new();
        for tok in header.split_whitespace() {
            if let Some(n) = tok.strip_prefix('@') {
                order = n
                    .parse::<i64>()
                    .ok()
                    .filter(|n| *n > 0)
                    .ok_or_else(|| suite_err(lineno, format!("bad order {tok}")))?;
            } else if let Some(t) = tok.strip_prefix('#') {
                tags.extend(t.split(',').filter(|s| !s.is_empty()).map(str::to_string));
            } else if name.is_none() {
                name = Some(tok.to_string());
            } else {
                return Err(suite_err(lineno, format!("unexpected header token {tok}")));
            }
        }
        let name = name.ok_or_else(|| suite_err(lineno, "missing identity name"))?;
        let (lhs, rhs) = parse_equation(body).map_err(|e| SuiteError::from((lineno, e)))?;
        out.push(Identity {
            name,
            order,
            tags,
            lhs,
            rhs,
        });
    }
    Ok(out)
}

/// The built-in registry.
pub fn builtin_suite() -> &'static [Identity] {
    static SUITE: OnceLock<Vec<Identity>> = OnceLock::new();
    SUITE.get_or_init(|| {
        parse_suite(include_str!("../suites/core.suite")).expect("the embedded suite must parse")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_expr;

    #[test]
    fn builtin_suite_parses_and_roundtrips() {
        let suite = builtin_suite();
        assert!(suite.len() >= 50, "registry has {} identities", suite.len());
        for id in suite {
            for side in [&id.lhs, &id.rhs] {
                let printed = side.to_string();
                let reparsed =
                    parse_expr(&printed).unwrap_or_else(|e| panic!("{}: {printed}: {e}", id.name));
                assert_eq!(side, &reparsed, "canonical print of {} drifted", id.name);
            }
        }
    }

    #[test]
    fn every_catalog_entry_appears_in_some_identity() {
        let mut used: Vec<String> = Vec::new();
        for id in builtin_suite() {
            id.lhs.called_names(&mut used);
            id.rhs.called_names(&mut used);
        }
        for entry in qseries::catalog::entries() {
            assert!(
                used.iter().any(|n| n == entry.name),
                "catalog entry {} is not exercised by any registered identity",
                entry.name
            );
        }
    }

    #[test]
    fn suite_format_errors_carry_line_numbers() {
        let e =
            parse_suite("ok-line @5 : pent() == pinf(q,1)\nbad line without colon").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_suite("dup name tokens : 1 == 1").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_suite("x @nope : 1 == 1").unwrap_err();
        assert!(e.msg.contains("bad order"));
        assert!(parse_suite("# a comment\n\n").unwrap().is_empty());
    }

    #[test]
    fn names_and_orders_flow_through() {
        let ids = parse_suite("a @7 #t1,t2 : pent() == pinf(q,1)\nb : 1 + q == 1 + q").unwrap();
        assert_eq!(ids[0].name, "a");
        assert_eq!(ids[0].order, 7);
        assert!(ids[0].has_tag("t1") && ids[0].has_tag("t2"));
        assert_eq!(ids[1].order, DEFAULT_ORDER);
        assert!(ids[1].tags.is_empty());
    }
}
