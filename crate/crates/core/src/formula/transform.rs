//! Normalization of arbitrary CNF with at-most-three-variable clauses into
//! (3,4)-form: every clause exactly three distinct variables, every
//! variable in at most four clauses, equisatisfiable with the input.

use super::{Clause, CnfFormula, FormulaError, Lit};

/// Documented linear-size contract: the output never has more than
/// `CLAUSE_GROWTH_BOUND * max(1, input clauses)` clauses.
pub const CLAUSE_GROWTH_BOUND: usize = 24;

/// Rewrites a formula into (3,4)-form.
///
/// Duplicate literals inside a clause are merged and tautological clauses
/// dropped first. A formula already in (3,4)-form after that cleanup is
/// returned as-is. Otherwise:
///
/// * a variable occurring in five or more clauses is replaced by a chain
///   of copies, each serving at most two of its occurrences (positive
///   occurrences first), with implication clauses `copy_j -> copy_{j+1}`
///   keeping the copies consistent — with positives ahead of negatives a
///   one-directional chain suffices, because any model can be projected
///   by reading the earliest true copy;
/// * every clause with fewer than three distinct variables (including the
///   width-two implication clauses above) is padded with fresh filler
///   variables that the added gadget clauses force to `false` in every
///   model, so padding never creates new satisfying assignments.
///
/// Clauses with more than three distinct variables violate the contract
/// and are rejected.
pub fn transform_to_34(formula: &CnfFormula) -> Result<CnfFormula, FormulaError> {
    let mut clauses = normalize(formula)?;
    if is_34(formula.var_count(), &clauses) {
        return Ok(CnfFormula::new(formula.var_count(), clauses)
            .expect("normalization keeps literals in range"));
    }

    let mut builder = Builder::new(formula.var_count());
    split_overused_vars(&mut clauses, &mut builder);
    for clause in &mut clauses {
        builder.pad_to_width_three(clause);
    }
    let mut links = std::mem::take(&mut builder.link_clauses);
    for clause in &mut links {
        builder.pad_to_width_three(clause);
    }
    clauses.extend(links);
    clauses.extend(std::mem::take(&mut builder.gadget_clauses));

    let out = CnfFormula::new(builder.var_count, clauses)
        .expect("builder allocates every referenced variable");
    debug_assert!(super::validate_34(&out).is_empty());
    Ok(out)
}

/// Merges duplicate literals, drops tautologies, rejects wide clauses.
fn normalize(formula: &CnfFormula) -> Result<Vec<Clause>, FormulaError> {
    let mut out = Vec::with_capacity(formula.clause_count());
    'clauses: for (idx, clause) in formula.clauses().iter().enumerate() {
        let mut merged: Clause = Vec::with_capacity(3);
        for &lit in clause {
            if merged.contains(&lit.negated()) {
                continue 'clauses; // tautology
            }
            if !merged.contains(&lit) {
                merged.push(lit);
            }
        }
        if merged.len() > 3 {
            return Err(FormulaError::ClauseTooWide {
                clause: idx,
                width: merged.len(),
            });
        }
        out.push(merged);
    }
    Ok(out)
}

fn is_34(var_count: usize, clauses: &[Clause]) -> bool {
    let mut occ = vec![0usize; var_count];
    for clause in clauses {
        if clause.len() != 3 {
            return false;
        }
        for lit in clause {
            occ[lit.var] += 1;
        }
    }
    occ.into_iter().all(|c| c <= 4)
}

struct Builder {
    var_count: usize,
    /// Implication clauses produced by variable splitting; width two until
    /// padded.
    link_clauses: Vec<Clause>,
    /// Enforcer and growth clauses backing the filler pool.
    gadget_clauses: Vec<Clause>,
    /// The two most recently created fillers, used to ground the next one.
    recent_fillers: Option<(usize, usize)>,
    fillers_created: usize,
}

impl Builder {
    fn new(var_count: usize) -> Self {
        Builder {
            var_count,
            link_clauses: Vec::new(),
            gadget_clauses: Vec::new(),
            recent_fillers: None,
            fillers_created: 0,
        }
    }

    fn fresh_var(&mut self) -> usize {
        let v = self.var_count;
        self.var_count += 1;
        v
    }

    /// Five clauses over four fresh variables that force `z = false` in
    /// every model while staying satisfiable themselves. With `z` true the
    /// first three clauses leave exactly the models `p=r=true, q=false`
    /// and `q=true, p=r=false` over `(p, q, r)`, and the last two clauses
    /// exclude precisely those. `z` appears three times, so one occurrence
    /// is left for consuming it elsewhere.
    fn forced_false_seed(&mut self) -> usize {
        let z = self.fresh_var();
        let p = self.fresh_var();
        let q = self.fresh_var();
        let r = self.fresh_var();
        self.gadget_clauses.extend([
            vec![Lit::neg(z), Lit::pos(p), Lit::pos(q)],
            vec![Lit::neg(z), Lit::neg(p), Lit::pos(r)],
            vec![Lit::neg(z), Lit::neg(q), Lit::neg(r)],
            vec![Lit::neg(p), Lit::pos(q), Lit::neg(r)],
            vec![Lit::pos(p), Lit::neg(q), Lit::pos(r)],
        ]);
        z
    }

    /// Returns a fresh variable that is `false` in every model of the
    /// final formula, budgeted so the caller may use it in exactly one
    /// clause. Each filler is grounded by a clause `f -> a \/ b` on two
    /// earlier forced-false variables; the first two draw on dedicated
    /// seed gadgets.
    fn filler(&mut self) -> usize {
        let (a, b) = match self.recent_fillers {
            None => {
                let z1 = self.forced_false_seed();
                let z2 = self.forced_false_seed();
                (z1, z2)
            }
            Some((_, f_prev)) if self.fillers_created == 1 => {
                let z3 = self.forced_false_seed();
                (z3, f_prev)
            }
            Some(pair) => pair,
        };
        let f = self.fresh_var();
        self.gadget_clauses
            .push(vec![Lit::neg(f), Lit::pos(a), Lit::pos(b)]);
        self.recent_fillers = Some(match self.recent_fillers {
            None => (f, f),
            Some((_, f_prev)) => (f_prev, f),
        });
        self.fillers_created += 1;
        f
    }

    fn pad_to_width_three(&mut self, clause: &mut Clause) {
        while clause.len() < 3 {
            let f = self.filler();
            clause.push(Lit::pos(f));
        }
    }
}

/// Replaces every variable occurring in five or more clauses by a chain of
/// copies, each serving at most two occurrences.
fn split_overused_vars(clauses: &mut [Clause], builder: &mut Builder) {
    let original_vars = builder.var_count;
    for var in 0..original_vars {
        // (clause index, literal position, polarity), positives first.
        let mut occurrences: Vec<(usize, usize, bool)> = Vec::new();
        for (c_idx, clause) in clauses.iter().enumerate() {
            for (l_idx, lit) in clause.iter().enumerate() {
                if lit.var == var {
                    occurrences.push((c_idx, l_idx, lit.positive));
                }
            }
        }
        if occurrences.len() <= 4 {
            continue;
        }
        occurrences.sort_by_key(|&(c, _, positive)| (!positive, c));

        let copy_count = occurrences.len().div_ceil(2);
        let mut copies = vec![var];
        copies.extend((1..copy_count).map(|_| builder.fresh_var()));

        for (occ_idx, &(c_idx, l_idx, positive)) in occurrences.iter().enumerate() {
            clauses[c_idx][l_idx] = Lit {
                var: copies[occ_idx / 2],
                positive,
            };
        }
        for pair in copies.windows(2) {
            builder
                .link_clauses
                .push(vec![Lit::neg(pair[0]), Lit::pos(pair[1])]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{sat_oracle, validate_34, write_dimacs};

    fn lit(v: i64) -> Lit {
        if v > 0 {
            Lit::pos(v as usize - 1)
        } else {
            Lit::neg((-v) as usize - 1)
        }
    }

    fn cnf(var_count: usize, clauses: &[&[i64]]) -> CnfFormula {
        CnfFormula::new(
            var_count,
            clauses
                .iter()
                .map(|c| c.iter().map(|&v| lit(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn equisat_by_oracle(input: &CnfFormula, output: &CnfFormula) {
        let before = sat_oracle(input, 24).unwrap().is_some();
        let after = sat_oracle(output, 24).unwrap().is_some();
        assert_eq!(before, after, "satisfiability changed:\n{}", write_dimacs(output));
    }

    #[test]
    fn already_34_is_returned_unchanged() {
        let f = cnf(
            6,
            &[&[1, 2, 3], &[-1, 4, 5], &[2, -4, 6], &[-3, -5, -6]],
        );
        assert_eq!(transform_to_34(&f).unwrap(), f);
    }

    #[test]
    fn tautological_clause_is_dropped() {
        let f = cnf(2, &[&[1, -1, 2]]);
        let out = transform_to_34(&f).unwrap();
        assert_eq!(out.clause_count(), 0);
        equisat_by_oracle(&f, &out);
    }

    #[test]
    fn duplicate_literals_are_merged() {
        // (x | x | y) merges to width two and is padded back to three.
        let f = cnf(2, &[&[1, 1, 2]]);
        let out = transform_to_34(&f).unwrap();
        assert!(validate_34(&out).is_empty());
        equisat_by_oracle(&f, &out);
    }

    #[test]
    fn wide_clause_is_rejected() {
        let f = cnf(4, &[&[1, 2, 3, 4]]);
        assert!(matches!(
            transform_to_34(&f),
            Err(FormulaError::ClauseTooWide { clause: 0, width: 4 })
        ));
    }

    #[test]
    fn padding_preserves_unsatisfiability() {
        // (x) & (!x): both unit clauses take two fillers each. If fillers
        // were not forced false the output would become satisfiable.
        let f = cnf(1, &[&[1], &[-1]]);
        let out = transform_to_34(&f).unwrap();
        assert!(validate_34(&out).is_empty());
        assert!(sat_oracle(&f, 24).unwrap().is_none());
        assert!(sat_oracle(&out, 24).unwrap().is_none());
    }

    #[test]
    fn padding_keeps_satisfiable_formulas_satisfiable() {
        let f = cnf(2, &[&[1], &[1, 2]]);
        let out = transform_to_34(&f).unwrap();
        assert!(validate_34(&out).is_empty());
        equisat_by_oracle(&f, &out);
    }

    #[test]
    fn empty_clause_yields_unsatisfiable_output() {
        let f = cnf(1, &[&[1], &[]]);
        let out = transform_to_34(&f).unwrap();
        assert!(validate_34(&out).is_empty());
        assert!(sat_oracle(&out, 24).unwrap().is_none());
    }

    #[test]
    fn splitting_preserves_forced_contradiction() {
        // Four wide clauses force x = true, the unit clause demands
        // x = false; x occurs five times and gets split into a copy chain.
        let f = cnf(
            3,
            &[
                &[1, 2, 3],
                &[1, -2, 3],
                &[1, 2, -3],
                &[1, -2, -3],
                &[-1],
            ],
        );
        assert!(sat_oracle(&f, 24).unwrap().is_none());
        let out = transform_to_34(&f).unwrap();
        assert!(validate_34(&out).is_empty());
        assert!(out.var_count() <= 24, "got {} vars", out.var_count());
        assert!(sat_oracle(&out, 24).unwrap().is_none());
    }

    #[test]
    fn splitting_preserves_satisfiability_with_mixed_polarities() {
        // x occurs six times with both polarities; satisfiable input.
        let f = cnf(
            4,
            &[
                &[1, 2, 3],
                &[1, -2, 4],
                &[1, 3, 4],
                &[-1, 2, 4],
                &[-1, -3, -4],
                &[-1, -2, -4],
            ],
        );
        assert!(sat_oracle(&f, 24).unwrap().is_some());
        let out = transform_to_34(&f).unwrap();
        assert!(validate_34(&out).is_empty());
        assert!(sat_oracle(&out, 24).unwrap().is_some());
    }

    #[test]
    fn clause_growth_stays_linear() {
        let f = cnf(
            3,
            &[&[1, 2, 3], &[1, -2, 3], &[1, 2, -3], &[1, -2, -3], &[-1], &[2], &[3]],
        );
        let out = transform_to_34(&f).unwrap();
        assert!(out.clause_count() <= CLAUSE_GROWTH_BOUND * f.clause_count());
    }

    #[test]
    fn seed_gadget_forces_its_variable_false() {
        // Exhaustively confirm the enforcer in isolation: satisfiable, and
        // z (variable 0 of the gadget) is false in every model.
        let mut builder = Builder::new(0);
        let z = builder.forced_false_seed();
        let f = CnfFormula::new(builder.var_count, builder.gadget_clauses.clone()).unwrap();
        let mut models = 0;
        for mask in 0..1u64 << f.var_count() {
            let a = crate::formula::Assignment::from_mask(mask, f.var_count());
            if f.evaluate(&a).unwrap() {
                models += 1;
                assert!(!a.get(z), "enforcer admits a model with z true");
            }
        }
        assert!(models > 0, "enforcer must stay satisfiable");
    }
}
