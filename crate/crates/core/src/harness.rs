//! End-to-end verification pipeline and deterministic corpus generation.
//!
//! The pipeline runs a formula through coloring, packing and the SI
//! encoding, then compares the exhaustive SAT verdict against the SI
//! family verdict. Test mode (small caller-chosen k) checks both
//! directions by sweeping every preimage sequence; paper mode
//! (`k = compute_k(n)`) checks the satisfiable direction through the
//! witness path and never auto-enumerates the astronomically large host
//! family.

pub mod corpus;

use crate::formula::{
    sat_oracle, transform_to_34, validate_34, Assignment, CnfFormula, DEFAULT_ORACLE_LIMIT,
};
use crate::grouping::{balance_coloring, compute_k, greedy_color, pack_clauses};
use crate::sat2si::{
    build_host, build_pattern, enumerate_sequences, sequence_count, total_vertices,
    witness_sequence_and_embedding,
};
use crate::solve::{si_family_solve, verify_embedding, FamilyVerdict, DEFAULT_NODE_BUDGET};
use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PipelineMode {
    /// Small caller-chosen k, exhaustive two-sided check over the whole
    /// host family.
    Test,
    /// `k = compute_k(n)` on a (3,4)-form formula; witness path only.
    Paper,
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub mode: PipelineMode,
    /// Replaces the default k (3 in test mode, `compute_k(n)` in paper
    /// mode).
    pub k_override: Option<usize>,
    pub sequence_cap: u64,
    pub node_budget: u64,
    pub oracle_limit: usize,
    /// A satisfying assignment for formulas too large for the oracle.
    pub witness: Option<Assignment>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            mode: PipelineMode::Test,
            k_override: None,
            sequence_cap: 1_000_000,
            node_budget: DEFAULT_NODE_BUDGET,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
            witness: None,
        }
    }
}

#[derive(Debug, Error)]
#[error("stage {stage}: {message}")]
pub struct PipelineError {
    pub stage: &'static str,
    pub message: String,
}

fn stage_err<E: std::fmt::Display>(stage: &'static str) -> impl Fn(E) -> PipelineError {
    move |e| PipelineError {
        stage,
        message: e.to_string(),
    }
}

#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub mode: PipelineMode,
    pub k: usize,
    /// Paper mode only: the input was rewritten into (3,4)-form first.
    pub normalized: bool,
    pub var_count: usize,
    pub clause_count: usize,
    pub coloring_class_sizes: Vec<usize>,
    pub groups_used: usize,
    pub pattern_vertices: usize,
    pub pattern_edges: usize,
    pub sequence_count: BigUint,
    pub sat_verdict: Option<bool>,
    pub si_verdict: Option<bool>,
    /// Lowest sequence index witnessing YES, in test mode.
    pub si_witness_index: Option<usize>,
    /// Paper mode refuses to sweep the family; the witness path is the
    /// only checked direction.
    pub enumeration_refused: bool,
    /// `Some(true)` when both verdicts were produced and they match, or
    /// when the one checkable direction validated; `Some(false)` on a
    /// genuine mismatch; `None` when nothing could be cross-checked.
    pub agreement: Option<bool>,
}

/// Runs the full verification pipeline on one formula.
pub fn verify_pipeline(
    formula: &CnfFormula,
    config: &PipelineConfig,
) -> Result<PipelineReport, PipelineError> {
    match config.mode {
        PipelineMode::Test => run_test_mode(formula, config),
        PipelineMode::Paper => run_paper_mode(formula, config),
    }
}

fn run_test_mode(
    formula: &CnfFormula,
    config: &PipelineConfig,
) -> Result<PipelineReport, PipelineError> {
    let k = config.k_override.unwrap_or(3);
    let coloring = greedy_color(formula, k).map_err(stage_err("coloring"))?;
    let packing = pack_clauses(formula, &coloring, k).map_err(stage_err("packing"))?;
    let pattern = build_pattern(formula, &coloring, &packing, k).map_err(stage_err("pattern"))?;

    let sat_witness = sat_oracle(formula, config.oracle_limit).map_err(stage_err("sat-oracle"))?;
    let sat_verdict = sat_witness.is_some();

    let sequences =
        enumerate_sequences(k, config.sequence_cap, false).map_err(stage_err("enumeration"))?;
    let family = si_family_solve(
        &pattern,
        sequences,
        |s| build_host(k, &s),
        config.node_budget,
    );
    let (si_verdict, si_witness_index) = match family {
        FamilyVerdict::Yes { index, embedding } => {
            let host_seq = enumerate_sequences(k, config.sequence_cap, false)
                .map_err(stage_err("enumeration"))?
                .nth(index)
                .expect("witness index is within the family");
            let inst = crate::graph::SiInstance::new(pattern.clone(), build_host(k, &host_seq))
                .expect("family shares the pattern's color space");
            let violations = verify_embedding(&inst, &embedding);
            if !violations.is_empty() {
                return Err(PipelineError {
                    stage: "family-witness",
                    message: format!("solver returned an invalid embedding: {violations:?}"),
                });
            }
            (Some(true), Some(index))
        }
        FamilyVerdict::No => (Some(false), None),
        FamilyVerdict::Inconclusive => (None, None),
    };

    let agreement = si_verdict.map(|si| si == sat_verdict);
    Ok(PipelineReport {
        mode: PipelineMode::Test,
        k,
        normalized: false,
        var_count: formula.var_count(),
        clause_count: formula.clause_count(),
        coloring_class_sizes: coloring.class_sizes(),
        groups_used: packing
            .groups()
            .iter()
            .filter(|g| !g.is_empty())
            .count(),
        pattern_vertices: pattern.n_vertices(),
        pattern_edges: pattern.edge_count(),
        sequence_count: sequence_count(k),
        sat_verdict: Some(sat_verdict),
        si_verdict,
        si_witness_index,
        enumeration_refused: false,
        agreement,
    })
}

fn run_paper_mode(
    formula: &CnfFormula,
    config: &PipelineConfig,
) -> Result<PipelineReport, PipelineError> {
    let (formula, normalized) = if validate_34(formula).is_empty() {
        (formula.clone(), false)
    } else {
        (
            transform_to_34(formula).map_err(stage_err("normalization"))?,
            true,
        )
    };
    let n = formula.var_count();
    let k = match config.k_override {
        Some(k) => k,
        None => compute_k(n).map_err(stage_err("compute-k"))?,
    };
    let nine = greedy_color(&formula, 9).map_err(stage_err("coloring"))?;
    let coloring = balance_coloring(&nine, k, n).map_err(stage_err("balancing"))?;
    let packing = pack_clauses(&formula, &coloring, k).map_err(stage_err("packing"))?;
    let pattern =
        build_pattern(&formula, &coloring, &packing, k).map_err(stage_err("pattern"))?;
    debug_assert_eq!(pattern.n_vertices(), total_vertices(k));

    // Satisfiable direction: a caller-provided assignment, or the oracle
    // when the formula is small enough.
    let assignment = match &config.witness {
        Some(a) => {
            let ok = formula.evaluate(a).map_err(stage_err("witness"))?;
            if !ok {
                return Err(PipelineError {
                    stage: "witness",
                    message: "provided assignment does not satisfy the formula".into(),
                });
            }
            Some(a.clone())
        }
        None if n <= config.oracle_limit => {
            sat_oracle(&formula, config.oracle_limit).map_err(stage_err("sat-oracle"))?
        }
        None => None,
    };
    let sat_verdict = match (&assignment, config.witness.is_some() || n <= config.oracle_limit) {
        (Some(_), _) => Some(true),
        (None, true) => Some(false),
        (None, false) => None,
    };

    let si_verdict = match &assignment {
        Some(a) => {
            let witness = witness_sequence_and_embedding(&formula, &coloring, &packing, k, a)
                .map_err(stage_err("witness-path"))?;
            let violations = verify_embedding(&witness.instance, &witness.embedding);
            if !violations.is_empty() {
                return Err(PipelineError {
                    stage: "witness-path",
                    message: format!("witness embedding rejected: {violations:?}"),
                });
            }
            Some(true)
        }
        None => None,
    };

    let agreement = match (sat_verdict, si_verdict) {
        (Some(true), Some(true)) => Some(true),
        (Some(true), _) => Some(false),
        _ => None,
    };
    Ok(PipelineReport {
        mode: PipelineMode::Paper,
        k,
        normalized,
        var_count: n,
        clause_count: formula.clause_count(),
        coloring_class_sizes: coloring.class_sizes(),
        groups_used: packing
            .groups()
            .iter()
            .filter(|g| !g.is_empty())
            .count(),
        pattern_vertices: pattern.n_vertices(),
        pattern_edges: pattern.edge_count(),
        sequence_count: sequence_count(k),
        sat_verdict,
        si_verdict,
        si_witness_index: None,
        enumeration_refused: true,
        agreement,
    })
}
