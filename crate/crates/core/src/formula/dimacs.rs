//! DIMACS CNF reading and writing.

use super::{Clause, CnfFormula, Lit};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: expected header `p cnf <vars> <clauses>`")]
    MalformedHeader { line: usize },
    #[error("line {line}: unexpected token `{token}`")]
    BadToken { line: usize, token: String },
    #[error("line {line}: literal {literal} out of range for {var_count} variables")]
    LiteralOutOfRange {
        line: usize,
        literal: i64,
        var_count: usize,
    },
    #[error("line {line}: found {found} clauses but the header declares {declared}")]
    ClauseCountMismatch {
        line: usize,
        found: usize,
        declared: usize,
    },
    #[error("line {line}: clause not terminated by 0 at end of input")]
    UnterminatedClause { line: usize },
    #[error("missing `p cnf` header")]
    MissingHeader,
}

/// Parses DIMACS CNF text. Comment lines start with `c`, the header is
/// `p cnf <vars> <clauses>`, clauses are zero-terminated and may span
/// lines. Clause order is preserved.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Clause = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::MalformedHeader { line });
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(DimacsError::MalformedHeader { line });
            }
            let vars = fields[2]
                .parse::<usize>()
                .map_err(|_| DimacsError::MalformedHeader { line })?;
            let count = fields[3]
                .parse::<usize>()
                .map_err(|_| DimacsError::MalformedHeader { line })?;
            header = Some((vars, count));
            continue;
        }
        let (var_count, declared) = header.ok_or(DimacsError::MissingHeader)?;
        for token in trimmed.split_whitespace() {
            let literal = token.parse::<i64>().map_err(|_| DimacsError::BadToken {
                line,
                token: token.to_string(),
            })?;
            if literal == 0 {
                if clauses.len() == declared {
                    return Err(DimacsError::ClauseCountMismatch {
                        line,
                        found: declared + 1,
                        declared,
                    });
                }
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            let var = literal.unsigned_abs() as usize - 1;
            if var >= var_count {
                return Err(DimacsError::LiteralOutOfRange {
                    line,
                    literal,
                    var_count,
                });
            }
            current.push(Lit {
                var,
                positive: literal > 0,
            });
        }
    }

    let (var_count, declared) = header.ok_or(DimacsError::MissingHeader)?;
    if !current.is_empty() {
        return Err(DimacsError::UnterminatedClause { line: last_line });
    }
    if clauses.len() != declared {
        return Err(DimacsError::ClauseCountMismatch {
            line: last_line,
            found: clauses.len(),
            declared,
        });
    }
    Ok(CnfFormula::new(var_count, clauses).expect("literals range-checked during parse"))
}

/// Renders a formula in DIMACS CNF, one clause per line.
pub fn write_dimacs(formula: &CnfFormula) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "p cnf {} {}",
        formula.var_count(),
        formula.clause_count()
    )
    .unwrap();
    for clause in formula.clauses() {
        for lit in clause {
            let signed = if lit.positive {
                lit.var as i64 + 1
            } else {
                -(lit.var as i64 + 1)
            };
            write!(out, "{signed} ").unwrap();
        }
        writeln!(out, "0").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_single_clause() {
        let f = parse_dimacs("p cnf 3 1\n1 -2 3 0\n").unwrap();
        assert_eq!(f.var_count(), 3);
        assert_eq!(
            f.clauses(),
            &[vec![Lit::pos(0), Lit::neg(1), Lit::pos(2)]]
        );
    }

    #[test]
    fn parses_empty_formula() {
        let f = parse_dimacs("p cnf 0 0\n").unwrap();
        assert_eq!(f.var_count(), 0);
        assert_eq!(f.clause_count(), 0);
    }

    #[test]
    fn rejects_out_of_range_literal() {
        assert_eq!(
            parse_dimacs("p cnf 2 1\n1 3 0\n"),
            Err(DimacsError::LiteralOutOfRange {
                line: 2,
                literal: 3,
                var_count: 2
            })
        );
    }

    #[test]
    fn rejects_clause_count_mismatch() {
        assert!(matches!(
            parse_dimacs("p cnf 2 2\n1 0\n"),
            Err(DimacsError::ClauseCountMismatch { declared: 2, found: 1, .. })
        ));
    }

    #[test]
    fn skips_comments_and_spans_lines() {
        let f = parse_dimacs("c header comment\np cnf 4 2\n1 2\n-3 0 4 0\n").unwrap();
        assert_eq!(f.clause_count(), 2);
        assert_eq!(f.clauses()[0], vec![Lit::pos(0), Lit::pos(1), Lit::neg(2)]);
        assert_eq!(f.clauses()[1], vec![Lit::pos(3)]);
    }

    #[test]
    fn writes_empty_formula() {
        assert_eq!(write_dimacs(&CnfFormula::empty()), "p cnf 0 0\n");
    }

    #[test]
    fn round_trips_single_clause() {
        let text = "p cnf 3 1\n1 -2 3 0\n";
        let f = parse_dimacs(text).unwrap();
        assert_eq!(write_dimacs(&f), text);
        assert_eq!(parse_dimacs(&write_dimacs(&f)).unwrap(), f);
    }
}
