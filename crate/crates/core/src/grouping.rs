//! Variable coloring and clause packing.
//!
//! Variables are colored so that no clause contains two variables of the
//! same color (a proper coloring of the conflict graph), optionally
//! rebalanced so no color class exceeds `ceil(n / (k - 9))` variables.
//! Clauses are then packed greedily into `2^k` groups such that within a
//! group the clause color sets are pairwise disjoint.

use crate::formula::CnfFormula;
use crate::graph::ColoredMultigraph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupingError {
    #[error("variable {var} has {degree} conflict neighbors, too many for {k} colors")]
    TooFewColors { var: usize, degree: usize, k: usize },
    #[error("balancing requires more than nine colors, got k = {k}")]
    BalanceNeedsHeadroom { k: usize },
    #[error("the paper regime requires at least 16 variables, got {n}")]
    TooFewVariables { n: usize },
    #[error("no free group for clause {clause} among 2^{k} groups")]
    PackingFailed { clause: usize, k: usize },
    #[error("coloring uses {colors} colors but k = {k}")]
    ColorCountMismatch { colors: usize, k: usize },
}

/// A coloring of a formula's variables with colors `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableColoring {
    pub k: usize,
    pub color_of: Vec<usize>,
}

impl VariableColoring {
    /// Distinct colors of the variables in one clause.
    pub fn clause_colors(&self, clause: &[crate::formula::Lit]) -> Vec<usize> {
        let mut colors: Vec<usize> = clause.iter().map(|l| self.color_of[l.var]).collect();
        colors.sort_unstable();
        colors.dedup();
        colors
    }

    /// True iff no clause of `formula` contains two variables of the same
    /// color.
    pub fn is_proper_for(&self, formula: &CnfFormula) -> bool {
        formula.clauses().iter().all(|clause| {
            let mut vars: Vec<usize> = clause.iter().map(|l| l.var).collect();
            vars.sort_unstable();
            vars.dedup();
            let mut colors: Vec<usize> = vars.iter().map(|&v| self.color_of[v]).collect();
            colors.sort_unstable();
            let len = colors.len();
            colors.dedup();
            colors.len() == len
        })
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.k];
        for &c in &self.color_of {
            sizes[c] += 1;
        }
        sizes
    }
}

/// Assignment of each clause to one of `2^k` groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClausePacking {
    pub k: usize,
    pub group_of: Vec<usize>,
}

impl ClausePacking {
    pub fn group_count(&self) -> usize {
        1 << self.k
    }

    /// Clause indices per group.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.group_count()];
        for (clause, &g) in self.group_of.iter().enumerate() {
            groups[g].push(clause);
        }
        groups
    }
}

/// The auxiliary graph on variables, adjacent iff they co-occur in some
/// clause. Uncolored (one vertex color, one edge color).
pub fn conflict_graph(formula: &CnfFormula) -> ColoredMultigraph {
    let mut edges = Vec::new();
    for clause in formula.clauses() {
        let mut vars: Vec<usize> = clause.iter().map(|l| l.var).collect();
        vars.sort_unstable();
        vars.dedup();
        for i in 0..vars.len() {
            for j in i + 1..vars.len() {
                edges.push((vars[i], vars[j], 0));
            }
        }
    }
    ColoredMultigraph::new(vec![0; formula.var_count()], 1, edges, 1)
        .expect("conflict graph edges are in range by construction")
}

/// Greedy proper coloring of the conflict graph: variables in index
/// order, each taking the lowest color unused among its already-colored
/// neighbors. Fails if some variable would need color `k` or higher.
pub fn greedy_color(formula: &CnfFormula, k: usize) -> Result<VariableColoring, GroupingError> {
    let conflict = conflict_graph(formula);
    let adjacency = conflict.adjacency();
    let mut color_of = vec![0usize; formula.var_count()];
    for var in 0..formula.var_count() {
        let mut used = vec![false; k + 1];
        for &(neighbor, _) in &adjacency[var] {
            if neighbor < var && color_of[neighbor] <= k {
                used[color_of[neighbor]] = true;
            }
        }
        let lowest = (0..=k).find(|&c| !used[c]).unwrap();
        if lowest >= k {
            return Err(GroupingError::TooFewColors {
                var,
                degree: adjacency[var].len(),
                k,
            });
        }
        color_of[var] = lowest;
    }
    Ok(VariableColoring { k, color_of })
}

/// Rebalances a proper coloring so that no color class holds more than
/// `ceil(n / (k - 9))` variables, splitting oversized classes into new
/// colors. Requires `k > 9`; the result stays proper because every new
/// class is a subset of an old one.
pub fn balance_coloring(
    coloring: &VariableColoring,
    k: usize,
    n: usize,
) -> Result<VariableColoring, GroupingError> {
    if k <= 9 {
        return Err(GroupingError::BalanceNeedsHeadroom { k });
    }
    let bound = n.div_ceil(k - 9);
    let mut color_of = coloring.color_of.clone();
    let mut next_color = coloring.k;
    loop {
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); next_color];
        for (var, &c) in color_of.iter().enumerate() {
            members[c].push(var);
        }
        match members.iter().position(|class| class.len() > bound) {
            None => break,
            Some(over) => {
                // The lowest-indexed `bound` variables of the class form
                // the new color.
                for &var in members[over].iter().take(bound) {
                    color_of[var] = next_color;
                }
                next_color += 1;
            }
        }
    }
    // Every split creates a full class of `bound` variables, so at most
    // k - 9 new colors appear and next_color never exceeds k.
    assert!(next_color <= k, "balancing exceeded {k} colors");
    Ok(VariableColoring { k, color_of })
}

/// Color count for the paper regime: `ceil(log2 n - log2 log2 n) + 9`,
/// defined for `n >= 16`.
pub fn compute_k(n: usize) -> Result<usize, GroupingError> {
    if n < 16 {
        return Err(GroupingError::TooFewVariables { n });
    }
    let log_n = (n as f64).log2();
    Ok((log_n - log_n.log2()).ceil() as usize + 9)
}

/// Greedy clause packing: clauses in index order, each assigned to the
/// lowest-indexed group whose used colors are disjoint from the clause's
/// colors. In the paper regime (`k = compute_k(n)` on a (3,4)-form
/// formula) a free group always exists by a counting argument; the error
/// is still reported for out-of-regime inputs.
pub fn pack_clauses(
    formula: &CnfFormula,
    coloring: &VariableColoring,
    k: usize,
) -> Result<ClausePacking, GroupingError> {
    if coloring.k != k {
        return Err(GroupingError::ColorCountMismatch {
            colors: coloring.k,
            k,
        });
    }
    let group_count = 1usize << k;
    // Used colors per group as bitmasks; k stays far below 64 in every
    // regime this crate supports.
    assert!(k < 64, "group masks require k < 64");
    let mut used: Vec<u64> = vec![0; group_count];
    let mut group_of = Vec::with_capacity(formula.clause_count());
    for (idx, clause) in formula.clauses().iter().enumerate() {
        let mut mask = 0u64;
        for color in coloring.clause_colors(clause) {
            mask |= 1 << color;
        }
        let group = (0..group_count)
            .find(|&g| used[g] & mask == 0)
            .ok_or(GroupingError::PackingFailed { clause: idx, k })?;
        used[group] |= mask;
        group_of.push(group);
    }
    Ok(ClausePacking { k, group_of })
}

/// Checks the packing invariant directly: within every group the clause
/// color sets are pairwise disjoint.
pub fn packing_is_valid(
    formula: &CnfFormula,
    coloring: &VariableColoring,
    packing: &ClausePacking,
) -> bool {
    let mut used: Vec<Vec<usize>> = vec![Vec::new(); packing.group_count()];
    for (idx, clause) in formula.clauses().iter().enumerate() {
        let group = packing.group_of[idx];
        for color in coloring.clause_colors(clause) {
            if used[group].contains(&color) {
                return false;
            }
            used[group].push(color);
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Lit;

    fn cnf(n: usize, clauses: &[&[usize]]) -> CnfFormula {
        CnfFormula::new(
            n,
            clauses
                .iter()
                .map(|c| c.iter().map(|&v| Lit::pos(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_clause_conflicts_form_triangle() {
        let g = conflict_graph(&cnf(3, &[&[0, 1, 2]]));
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(0, 1, 0) && g.has_edge(0, 2, 0) && g.has_edge(1, 2, 0));
    }

    #[test]
    fn disjoint_clauses_form_disjoint_triangles() {
        let g = conflict_graph(&cnf(6, &[&[0, 1, 2], &[3, 4, 5]]));
        assert_eq!(g.edge_count(), 6);
        assert!(!g.has_edge(2, 3, 0));
    }

    #[test]
    fn triangle_takes_three_colors() {
        let coloring = greedy_color(&cnf(3, &[&[0, 1, 2]]), 3).unwrap();
        assert_eq!(coloring.color_of, vec![0, 1, 2]);
    }

    #[test]
    fn triangle_fails_with_two_colors() {
        assert_eq!(
            greedy_color(&cnf(3, &[&[0, 1, 2]]), 2),
            Err(GroupingError::TooFewColors { var: 2, degree: 2, k: 2 })
        );
    }

    #[test]
    fn compute_k_matches_closed_form() {
        assert_eq!(compute_k(16).unwrap(), 11);
        assert_eq!(compute_k(256).unwrap(), 14);
        assert_eq!(compute_k(15), Err(GroupingError::TooFewVariables { n: 15 }));
    }

    #[test]
    fn balance_splits_oversized_classes() {
        // Twenty variables in one color class, n = 20, k = 14: classes of
        // at most ceil(20 / 5) = 4 afterwards.
        let coloring = VariableColoring {
            k: 9,
            color_of: vec![0; 20],
        };
        let balanced = balance_coloring(&coloring, 14, 20).unwrap();
        assert!(balanced.class_sizes().iter().all(|&s| s <= 4));
        assert!(balanced.k <= 14);
    }

    #[test]
    fn balance_keeps_already_balanced_coloring() {
        let f = cnf(4, &[&[0, 1], &[2, 3]]);
        let coloring = greedy_color(&f, 9).unwrap();
        let balanced = balance_coloring(&coloring, 11, 4).unwrap();
        assert_eq!(balanced.color_of, coloring.color_of);
    }

    #[test]
    fn balance_requires_headroom() {
        let coloring = VariableColoring { k: 9, color_of: vec![] };
        assert_eq!(
            balance_coloring(&coloring, 9, 0),
            Err(GroupingError::BalanceNeedsHeadroom { k: 9 })
        );
    }

    #[test]
    fn clauses_sharing_a_variable_land_in_distinct_groups() {
        let f = cnf(5, &[&[0, 1, 2], &[0, 3, 4]]);
        let coloring = greedy_color(&f, 5).unwrap();
        let packing = pack_clauses(&f, &coloring, 5).unwrap();
        assert_ne!(packing.group_of[0], packing.group_of[1]);
        assert!(packing_is_valid(&f, &coloring, &packing));
    }

    #[test]
    fn color_disjoint_clauses_may_share_group_zero() {
        let f = cnf(6, &[&[0, 1, 2], &[3, 4, 5]]);
        // Greedy coloring gives both clauses the colors {0, 1, 2}, which
        // blocks cohabitation, so color the second clause apart by hand.
        let coloring = VariableColoring {
            k: 6,
            color_of: vec![0, 1, 2, 3, 4, 5],
        };
        let packing = pack_clauses(&f, &coloring, 6).unwrap();
        assert_eq!(packing.group_of, vec![0, 0]);
    }

    #[test]
    fn eight_sign_pattern_clauses_fill_all_groups_at_k3() {
        let f = crate::harness::corpus::sign_pattern_family();
        let coloring = greedy_color(&f, 3).unwrap();
        let packing = pack_clauses(&f, &coloring, 3).unwrap();
        assert_eq!(packing.group_of, (0..8).collect::<Vec<_>>());
        assert!(packing_is_valid(&f, &coloring, &packing));
    }
}
