//! DIMACS CNF reader and writer.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Clause, CnfFormula, Literal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input: no problem line found")]
    EmptyInput,
    #[error("line {line}: malformed problem line {text:?}")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: clause data before the problem line")]
    MissingHeader { line: usize },
    #[error("line {line}: duplicate problem line")]
    DuplicateHeader { line: usize },
    #[error("line {line}: invalid literal {token:?}")]
    InvalidLiteral { line: usize, token: String },
    #[error("line {line}: literal {literal} exceeds declared variable count {num_vars}")]
    VariableOutOfRange {
        line: usize,
        literal: i64,
        num_vars: u32,
    },
    #[error("line {line}: last clause is missing its terminating 0")]
    MissingTerminator { line: usize },
}

/// Result of parsing: the formula plus normalization bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedCnf {
    pub formula: CnfFormula,
    /// Clauses dropped because they contained both `l` and `-l`.
    pub dropped_tautologies: usize,
    /// Clause count announced by the problem line.
    pub declared_clauses: usize,
}

/// Parses DIMACS CNF text.
///
/// Lines starting with `c` are comments; a line starting with `%` ends the
/// clause section (SATLIB convention). Clauses may span lines.
pub fn parse_dimacs(text: &str) -> Result<ParsedCnf, ParseError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut dropped = 0;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        last_line = line;
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::DuplicateHeader { line });
            }
            header = Some(parse_header(trimmed, line)?);
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(ParseError::MissingHeader { line });
        };
        for token in trimmed.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| ParseError::InvalidLiteral {
                line,
                token: token.to_string(),
            })?;
            if value == 0 {
                match Clause::normalized(current.drain(..)) {
                    Some(c) => clauses.push(c),
                    None => dropped += 1,
                }
                continue;
            }
            if value.unsigned_abs() > num_vars as u64 {
                return Err(ParseError::VariableOutOfRange {
                    line,
                    literal: value,
                    num_vars,
                });
            }
            current.push(Literal::from_dimacs(value).expect("nonzero"));
        }
    }

    let Some((num_vars, declared_clauses)) = header else {
        return Err(ParseError::EmptyInput);
    };
    if !current.is_empty() {
        return Err(ParseError::MissingTerminator { line: last_line });
    }
    let formula = CnfFormula::new(num_vars, clauses).expect("literals range-checked while parsing");
    Ok(ParsedCnf {
        formula,
        dropped_tautologies: dropped,
        declared_clauses,
    })
}

fn parse_header(text: &str, line: usize) -> Result<(u32, usize), ParseError> {
    let malformed = || ParseError::MalformedHeader {
        line,
        text: text.to_string(),
    };
    let fields: Vec<&str> = text.split_whitespace().collect();
    match fields.as_slice() {
        ["p", "cnf", vars, clauses] => {
            let vars = vars.parse().map_err(|_| malformed())?;
            let clauses = clauses.parse().map_err(|_| malformed())?;
            Ok((vars, clauses))
        }
        _ => Err(malformed()),
    }
}

/// Writes `f` as DIMACS CNF: a problem line followed by one clause per line.
pub fn emit_dimacs(f: &CnfFormula) -> String {
    let mut out = String::with_capacity(16 + f.literal_count() * 5);
    writeln!(out, "p cnf {} {}", f.num_vars(), f.clause_count()).unwrap();
    for clause in f.clauses() {
        for lit in clause {
            write!(out, "{} ", lit.to_dimacs()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}
