//! Deterministic corpus generators. Every generator is a pure function of
//! the supplied RNG, so a fixed seed reproduces the same corpus on any
//! platform.

use crate::formula::{Assignment, Clause, CnfFormula, Lit};
use crate::graph::{ColoredMultigraph, SiInstance};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seeded RNG used across the corpus.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All eight sign patterns over three variables: unsatisfiable, and at
/// k = 3 its eight clauses pack into the eight groups one-to-one.
pub fn sign_pattern_family() -> CnfFormula {
    let clauses = (0..8u32)
        .map(|bits| {
            (0..3)
                .map(|v| Lit {
                    var: v,
                    positive: bits >> v & 1 == 0,
                })
                .collect()
        })
        .collect();
    CnfFormula::new(3, clauses).expect("fixed family is well-formed")
}

/// The eight satisfiable siblings of the sign-pattern family, each
/// obtained by removing one clause.
pub fn sat_siblings() -> Vec<CnfFormula> {
    let family = sign_pattern_family();
    (0..family.clause_count())
        .map(|skip| {
            let clauses = family
                .clauses()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, c)| c.clone())
                .collect();
            CnfFormula::new(3, clauses).expect("sibling is well-formed")
        })
        .collect()
}

/// Loose-model random 3-CNF: each clause draws three literals uniformly
/// with replacement, so duplicate variables and tautologies occur.
pub fn random_3cnf(rng: &mut ChaCha8Rng, var_count: usize, clause_count: usize) -> CnfFormula {
    let clauses = (0..clause_count)
        .map(|_| {
            (0..3)
                .map(|_| Lit {
                    var: rng.gen_range(0..var_count),
                    positive: rng.gen_bool(0.5),
                })
                .collect()
        })
        .collect();
    CnfFormula::new(var_count, clauses).expect("literals drawn in range")
}

/// Strict-model random 3-CNF: three distinct variables per clause.
pub fn random_3cnf_distinct(
    rng: &mut ChaCha8Rng,
    var_count: usize,
    clause_count: usize,
) -> CnfFormula {
    assert!(var_count >= 3);
    let clauses = (0..clause_count)
        .map(|_| {
            let mut vars = Vec::with_capacity(3);
            while vars.len() < 3 {
                let v = rng.gen_range(0..var_count);
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
            vars.into_iter()
                .map(|var| Lit {
                    var,
                    positive: rng.gen_bool(0.5),
                })
                .collect()
        })
        .collect();
    CnfFormula::new(var_count, clauses).expect("literals drawn in range")
}

/// Random satisfiable (3,4)-form formula with a planted assignment.
///
/// Clauses pick three distinct variables that still have occurrence
/// budget; polarities are random, then one literal is flipped to agree
/// with the planted assignment if needed. Width, occurrence bound and
/// satisfiability all hold by construction; the planted witness makes
/// large formulas usable where the exhaustive oracle cannot go.
pub fn random_34_sat(
    rng: &mut ChaCha8Rng,
    var_count: usize,
    clause_count: usize,
) -> (CnfFormula, Assignment) {
    assert!(clause_count * 3 <= var_count * 4, "occurrence budget too small");
    let planted = Assignment::new((0..var_count).map(|_| rng.gen_bool(0.5)).collect());
    let mut budget = vec![4usize; var_count];
    let mut clauses: Vec<Clause> = Vec::with_capacity(clause_count);
    for _ in 0..clause_count {
        let mut available: Vec<usize> = (0..var_count).filter(|&v| budget[v] > 0).collect();
        assert!(available.len() >= 3, "budget argument guarantees room");
        available.shuffle(rng);
        let vars = &available[..3];
        let mut clause: Clause = vars
            .iter()
            .map(|&var| Lit {
                var,
                positive: rng.gen_bool(0.5),
            })
            .collect();
        if !clause.iter().any(|l| planted.get(l.var) == l.positive) {
            let fix = rng.gen_range(0..3);
            clause[fix].positive = planted.get(clause[fix].var);
        }
        for &var in vars {
            budget[var] -= 1;
        }
        clauses.push(clause);
    }
    let formula = CnfFormula::new(var_count, clauses).expect("literals drawn in range");
    debug_assert!(formula.evaluate(&planted).unwrap());
    (formula, planted)
}

/// Random colored graph on `n` vertices: every vertex color uniform in
/// `[c]`, every (pair, edge color) present with probability `edge_prob`.
pub fn random_colored_graph(
    rng: &mut ChaCha8Rng,
    n: usize,
    c: usize,
    t: usize,
    edge_prob: f64,
) -> ColoredMultigraph {
    let colors = (0..n).map(|_| rng.gen_range(0..c)).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            for color in 0..t {
                if rng.gen_bool(edge_prob) {
                    edges.push((u, v, color));
                }
            }
        }
    }
    ColoredMultigraph::new(colors, c, edges, t).expect("colors drawn in range")
}

/// Random colored SI instance with equal vertex counts on both sides.
/// Half the instances plant the pattern inside the host (same colors
/// under a hidden permutation, edges a random subset), the other half
/// draw both sides independently, giving a mix of YES and NO cases.
pub fn random_colored_instance(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    max_c: usize,
    max_t: usize,
) -> SiInstance {
    let n = rng.gen_range(1..=max_n);
    let c = rng.gen_range(1..=max_c);
    let t = rng.gen_range(1..=max_t);
    let host = random_colored_graph(rng, n, c, t, 0.4);
    let pattern = if rng.gen_bool(0.5) {
        // Planted: pattern vertex i plays host vertex perm[i].
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let colors = (0..n).map(|i| host.vertex_color(perm[i])).collect();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                for color in 0..t {
                    if host.has_edge(perm[u], perm[v], color) && rng.gen_bool(0.7) {
                        edges.push((u, v, color));
                    }
                }
            }
        }
        ColoredMultigraph::new(colors, c, edges, t).expect("planted pattern in range")
    } else {
        random_colored_graph(rng, n, c, t, 0.3)
    };
    SiInstance::new(pattern, host).expect("sides share the color space")
}

/// Random plain graph for the homomorphism corpus.
pub fn random_plain_graph(rng: &mut ChaCha8Rng, n: usize, edge_prob: f64) -> ColoredMultigraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(edge_prob) {
                edges.push((u, v, 0));
            }
        }
    }
    ColoredMultigraph::new(vec![0; n], 1, edges, 1).expect("plain graph in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{sat_oracle, validate_34};

    #[test]
    fn sign_pattern_family_is_unsat_and_width_three() {
        let f = sign_pattern_family();
        assert_eq!(f.clause_count(), 8);
        assert!(sat_oracle(&f, 24).unwrap().is_none());
    }

    #[test]
    fn all_siblings_are_satisfiable() {
        for sibling in sat_siblings() {
            assert_eq!(sibling.clause_count(), 7);
            assert!(sat_oracle(&sibling, 24).unwrap().is_some());
        }
    }

    #[test]
    fn planted_34_formulas_are_well_formed() {
        let mut r = rng(7);
        for _ in 0..20 {
            let n = r.gen_range(16..=40);
            let (f, planted) = random_34_sat(&mut r, n, n);
            assert!(validate_34(&f).is_empty());
            assert!(f.evaluate(&planted).unwrap());
        }
    }

    #[test]
    fn generators_are_deterministic_per_seed() {
        let a = random_3cnf(&mut rng(42), 8, 12);
        let b = random_3cnf(&mut rng(42), 8, 12);
        assert_eq!(a, b);
        let ia = random_colored_instance(&mut rng(9), 8, 3, 4);
        let ib = random_colored_instance(&mut rng(9), 8, 3, 4);
        assert_eq!(ia, ib);
    }

    #[test]
    fn colored_instances_have_equal_sides() {
        let mut r = rng(3);
        for _ in 0..50 {
            let inst = random_colored_instance(&mut r, 8, 3, 4);
            assert_eq!(inst.pattern.n_vertices(), inst.host.n_vertices());
        }
    }
}
