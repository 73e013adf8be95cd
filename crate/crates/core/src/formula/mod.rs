//! CNF formulas, DIMACS I/O, (3,4)-form normalization and an exhaustive
//! satisfiability oracle.

mod dimacs;
mod transform;

pub use dimacs::{parse_dimacs, write_dimacs, DimacsError};
pub use transform::{transform_to_34, CLAUSE_GROWTH_BOUND};

use thiserror::Error;

/// A signed occurrence of a variable inside a clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, positive: false }
    }

    pub fn negated(self) -> Self {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }
}

pub type Clause = Vec<Lit>;

/// A CNF formula over variables `0..var_count`.
///
/// Clause order is preserved from construction; all operations in this
/// crate treat formulas as immutable values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    var_count: usize,
    clauses: Vec<Clause>,
}

#[derive(Debug, Error)]
pub enum FormulaError {
    #[error("clause {clause} references variable {var} but only {var_count} variables are declared")]
    LiteralOutOfRange {
        clause: usize,
        var: usize,
        var_count: usize,
    },
    #[error("clause {clause} has {width} distinct variables, at most three are supported here")]
    ClauseTooWide { clause: usize, width: usize },
    #[error("{var_count} variables exceed the exhaustive-search limit {limit}")]
    OracleLimit { var_count: usize, limit: usize },
    #[error("assignment covers {assignment} variables but the formula has {var_count}")]
    AssignmentMismatch { assignment: usize, var_count: usize },
}

impl CnfFormula {
    pub fn new(var_count: usize, clauses: Vec<Clause>) -> Result<Self, FormulaError> {
        for (idx, clause) in clauses.iter().enumerate() {
            for lit in clause {
                if lit.var >= var_count {
                    return Err(FormulaError::LiteralOutOfRange {
                        clause: idx,
                        var: lit.var,
                        var_count,
                    });
                }
            }
        }
        Ok(CnfFormula { var_count, clauses })
    }

    pub fn empty() -> Self {
        CnfFormula {
            var_count: 0,
            clauses: Vec::new(),
        }
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// Number of clauses each variable appears in. A variable repeated
    /// inside one clause is counted once for that clause.
    pub fn occurrence_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.var_count];
        for clause in &self.clauses {
            let mut seen: Vec<usize> = clause.iter().map(|l| l.var).collect();
            seen.sort_unstable();
            seen.dedup();
            for var in seen {
                counts[var] += 1;
            }
        }
        counts
    }

    pub fn evaluate(&self, assignment: &Assignment) -> Result<bool, FormulaError> {
        if assignment.len() != self.var_count {
            return Err(FormulaError::AssignmentMismatch {
                assignment: assignment.len(),
                var_count: self.var_count,
            });
        }
        Ok(self
            .clauses
            .iter()
            .all(|clause| clause.iter().any(|lit| assignment.get(lit.var) == lit.positive)))
    }
}

/// A total truth assignment for the variables of one formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn from_mask(mask: u64, var_count: usize) -> Self {
        Assignment {
            values: (0..var_count).map(|v| mask >> v & 1 == 1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, var: usize) -> bool {
        self.values[var]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }
}

/// Default variable limit for [`sat_oracle`].
pub const DEFAULT_ORACLE_LIMIT: usize = 24;

/// Exhaustive satisfiability check: tries all `2^var_count` assignments in
/// ascending bit-mask order (variable 0 is the least significant bit) and
/// returns the first satisfying one.
///
/// Refuses formulas with more than `var_limit` variables so that callers
/// cannot trigger an accidental exponential blow-up.
pub fn sat_oracle(
    formula: &CnfFormula,
    var_limit: usize,
) -> Result<Option<Assignment>, FormulaError> {
    let n = formula.var_count();
    if n > var_limit || n >= 64 {
        return Err(FormulaError::OracleLimit {
            var_count: n,
            limit: var_limit.min(63),
        });
    }
    // Per-clause bit masks make the inner loop two tests per clause.
    let masks: Vec<(u64, u64)> = formula
        .clauses()
        .iter()
        .map(|clause| {
            let mut pos = 0u64;
            let mut neg = 0u64;
            for lit in clause {
                if lit.positive {
                    pos |= 1 << lit.var;
                } else {
                    neg |= 1 << lit.var;
                }
            }
            (pos, neg)
        })
        .collect();
    for mask in 0..1u64 << n {
        if masks
            .iter()
            .all(|&(pos, neg)| pos & mask != 0 || neg & !mask != 0)
        {
            return Ok(Some(Assignment::from_mask(mask, n)));
        }
    }
    Ok(None)
}

/// One defect found by [`validate_34`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation34 {
    /// A clause mentions the same variable more than once.
    DuplicateVariable { clause: usize, var: usize },
    /// A clause does not have exactly three literals.
    WrongWidth { clause: usize, width: usize },
    /// A variable occurs in more than four clauses.
    TooManyOccurrences { var: usize, count: usize },
}

/// Checks the (3,4)-form contract: every clause has exactly three distinct
/// variables and every variable occurs in at most four clauses. Reports
/// every violation instead of failing on the first.
pub fn validate_34(formula: &CnfFormula) -> Vec<Violation34> {
    let mut report = Vec::new();
    for (idx, clause) in formula.clauses().iter().enumerate() {
        let mut vars: Vec<usize> = clause.iter().map(|l| l.var).collect();
        vars.sort_unstable();
        let mut dup = vars.clone();
        dup.dedup();
        if dup.len() != vars.len() {
            let mut reported = Vec::new();
            for w in vars.windows(2) {
                if w[0] == w[1] && !reported.contains(&w[0]) {
                    reported.push(w[0]);
                    report.push(Violation34::DuplicateVariable {
                        clause: idx,
                        var: w[0],
                    });
                }
            }
        }
        if clause.len() != 3 {
            report.push(Violation34::WrongWidth {
                clause: idx,
                width: clause.len(),
            });
        }
    }
    for (var, count) in formula.occurrence_counts().into_iter().enumerate() {
        if count > 4 {
            report.push(Violation34::TooManyOccurrences { var, count });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clause(lits: &[(usize, bool)]) -> Clause {
        lits.iter().map(|&(v, p)| Lit { var: v, positive: p }).collect()
    }

    /// All eight sign patterns over three variables; unsatisfiable.
    pub(crate) fn sign_pattern_formula() -> CnfFormula {
        let mut clauses = Vec::new();
        for bits in 0..8u32 {
            clauses.push(clause(&[
                (0, bits & 1 == 0),
                (1, bits & 2 == 0),
                (2, bits & 4 == 0),
            ]));
        }
        CnfFormula::new(3, clauses).unwrap()
    }

    #[test]
    fn oracle_rejects_all_sign_patterns() {
        // Eight clauses rule out all eight assignments.
        let f = sign_pattern_formula();
        assert_eq!(sat_oracle(&f, 24).unwrap(), None);
    }

    #[test]
    fn oracle_finds_all_true_witness() {
        let f = sign_pattern_formula();
        let mut clauses = f.clauses().to_vec();
        // Drop the all-negative clause; x = y = z = true now works.
        clauses.retain(|c| c.iter().any(|l| l.positive));
        let f = CnfFormula::new(3, clauses).unwrap();
        let witness = sat_oracle(&f, 24).unwrap().expect("satisfiable");
        assert_eq!(witness.values(), &[true, true, true]);
        assert!(f.evaluate(&witness).unwrap());
    }

    #[test]
    fn oracle_accepts_empty_formula() {
        assert!(sat_oracle(&CnfFormula::empty(), 24).unwrap().is_some());
    }

    #[test]
    fn oracle_refuses_beyond_limit() {
        let f = CnfFormula::new(30, vec![]).unwrap();
        assert!(matches!(
            sat_oracle(&f, 24),
            Err(FormulaError::OracleLimit { var_count: 30, .. })
        ));
    }

    #[test]
    fn validate_reports_wrong_width() {
        let f = CnfFormula::new(2, vec![clause(&[(0, true), (1, false)])]).unwrap();
        assert_eq!(
            validate_34(&f),
            vec![Violation34::WrongWidth { clause: 0, width: 2 }]
        );
    }

    #[test]
    fn validate_reports_overused_variable() {
        let clauses = (0..5)
            .map(|i| clause(&[(0, true), (1 + i, true), (6 + i, true)]))
            .collect();
        let f = CnfFormula::new(11, clauses).unwrap();
        assert_eq!(
            validate_34(&f),
            vec![Violation34::TooManyOccurrences { var: 0, count: 5 }]
        );
    }

    #[test]
    fn validate_reports_duplicates_once_per_var() {
        let f = CnfFormula::new(2, vec![clause(&[(0, true), (0, true), (1, true)])]).unwrap();
        assert_eq!(
            validate_34(&f),
            vec![Violation34::DuplicateVariable { clause: 0, var: 0 }]
        );
    }

    #[test]
    fn validate_accepts_34_form() {
        let f = sign_pattern_formula();
        // Width and duplicates fine, but variables occur eight times.
        let report = validate_34(&f);
        assert_eq!(report.len(), 3);
        assert!(report
            .iter()
            .all(|v| matches!(v, Violation34::TooManyOccurrences { count: 8, .. })));
    }
}
