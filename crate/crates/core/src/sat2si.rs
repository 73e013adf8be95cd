//! Encoding of a packed CNF formula as a family of colored subgraph
//! isomorphism instances.
//!
//! The pattern graph has one blue vertex per clause group plus a rigid
//! gadget: a path of red vertices with a green pendant at one end. Each
//! red vertex stands for a choice of three variable colors and one
//! valuation of them; a blue-red edge says "the clauses of this group do
//! not reach that forbidden valuation". One host graph is generated per
//! preimage-size sequence: it has the same vertex counts, with each blue
//! vertex carrying one of `2^k` valuation strings. Blue host vertices are
//! connected by an edge of color `j` exactly when their strings agree on
//! bit `j`, and a blue-red host edge is present unless the string matches
//! the red vertex's valuation exactly. The formula is satisfiable iff the
//! pattern embeds into the host for some sequence.

use crate::compose::{composition_count, weak_compositions};
use crate::formula::{Assignment, CnfFormula};
use crate::graph::{ColoredMultigraph, Embedding, SiInstance, BLUE, GREEN, RED};
use crate::grouping::{packing_is_valid, ClausePacking, VariableColoring};
use crate::solve::verify_embedding;
use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Sat2SiError {
    #[error("clause {clause} has {width} distinct variables; the encoding needs exactly three")]
    ClauseNotWidthThree { clause: usize, width: usize },
    #[error("coloring is not proper for the formula")]
    ImproperColoring,
    #[error("packing is not valid for the formula and coloring")]
    InvalidPacking,
    #[error("coloring uses {coloring} colors, packing {packing}, expected k = {k}")]
    InconsistentK {
        coloring: usize,
        packing: usize,
        k: usize,
    },
    #[error("sequence has {len} entries summing to {sum}, expected 2^{k} entries summing to 2^{k}")]
    BadSequence { len: usize, sum: usize, k: usize },
    #[error("{count} sequences exceed the cap of {cap}; pass force to enumerate anyway")]
    FamilyTooLarge { count: BigUint, cap: u64 },
    #[error("assignment does not satisfy the formula")]
    UnsatisfiedAssignment,
    #[error("embedding rejected by the verifier: {0} violations")]
    InvalidEmbedding(usize),
    #[error("embedding decodes inconsistently: variable {var} reads both {a} and {b}")]
    InconsistentDecode { var: usize, a: bool, b: bool },
}

/// Preimage sizes of the group-to-valuation map: entry `v` is the number
/// of groups whose valuation string equals `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreimageSequence {
    counts: Vec<usize>,
}

impl PreimageSequence {
    pub fn new(counts: Vec<usize>, k: usize) -> Result<Self, Sat2SiError> {
        let sum: usize = counts.iter().sum();
        if counts.len() != 1 << k || sum != 1 << k {
            return Err(Sat2SiError::BadSequence {
                len: counts.len(),
                sum,
                k,
            });
        }
        Ok(PreimageSequence { counts })
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Start offset of each string's block of blue host vertices, plus the
    /// total as a sentinel.
    fn offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.counts.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for &c in &self.counts {
            acc += c;
            offsets.push(acc);
        }
        offsets
    }
}

/// Identity of one red vertex: three strictly increasing variable-color
/// indices and one bit per index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RedVertexLabel {
    pub indices: [usize; 3],
    pub bits: [bool; 3],
}

impl RedVertexLabel {
    pub fn new(indices: [usize; 3], bits: [bool; 3]) -> Self {
        assert!(indices[0] < indices[1] && indices[1] < indices[2]);
        RedVertexLabel { indices, bits }
    }

    fn matches(&self, string: usize) -> bool {
        self.indices
            .iter()
            .zip(&self.bits)
            .all(|(&i, &b)| bit(string, i) == b)
    }
}

/// Bit `j` of a valuation string (least significant bit is index 0).
fn bit(string: usize, j: usize) -> bool {
    string >> j & 1 == 1
}

/// Number of red vertices for a given color count.
pub fn red_vertex_count(k: usize) -> usize {
    8 * choose3(k)
}

fn choose3(k: usize) -> usize {
    if k < 3 {
        0
    } else {
        k * (k - 1) * (k - 2) / 6
    }
}

/// Position of a red vertex on the path, measured as distance from the
/// green vertex (1-based). Triples of indices are ordered
/// lexicographically, the eight bit patterns within one triple in binary
/// order with the first bit most significant.
pub fn red_vertex_position(label: &RedVertexLabel, k: usize) -> usize {
    let [i1, i2, i3] = label.indices;
    let mut rank = 0;
    for a in 0..i1 {
        rank += choose2(k - 1 - a);
    }
    for b in i1 + 1..i2 {
        rank += k - 1 - b;
    }
    rank += i3 - i2 - 1;
    let bits = (label.bits[0] as usize) << 2 | (label.bits[1] as usize) << 1 | label.bits[2] as usize;
    rank * 8 + bits + 1
}

fn choose2(k: usize) -> usize {
    if k < 2 {
        0
    } else {
        k * (k - 1) / 2
    }
}

/// All red vertex labels in path order (position 1 first).
pub fn labels_in_order(k: usize) -> Vec<RedVertexLabel> {
    let mut labels = Vec::with_capacity(red_vertex_count(k));
    for i1 in 0..k {
        for i2 in i1 + 1..k {
            for i3 in i2 + 1..k {
                for bits in 0..8usize {
                    labels.push(RedVertexLabel {
                        indices: [i1, i2, i3],
                        bits: [bit(bits, 2), bit(bits, 1), bit(bits, 0)],
                    });
                }
            }
        }
    }
    labels
}

/// Vertex layout shared by pattern and host: blue vertices `0..2^k`, the
/// green vertex at `2^k`, red vertex at position `p` at id `2^k + p`.
pub fn green_vertex(k: usize) -> usize {
    1 << k
}

pub fn total_vertices(k: usize) -> usize {
    (1 << k) + red_vertex_count(k) + 1
}

fn gadget_vertex_colors(k: usize) -> Vec<usize> {
    let mut colors = vec![BLUE; 1 << k];
    colors.push(GREEN);
    colors.extend(std::iter::repeat(RED).take(red_vertex_count(k)));
    colors
}

/// Gadget edges (green pendant plus the red path), shared verbatim by
/// pattern and host. All of color 0.
fn gadget_edges(k: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    let green = green_vertex(k);
    let reds = red_vertex_count(k);
    (0..reds).map(move |p| (green + p, green + p + 1, 0))
}

fn check_inputs(
    formula: &CnfFormula,
    coloring: &VariableColoring,
    packing: &ClausePacking,
    k: usize,
) -> Result<(), Sat2SiError> {
    if coloring.k != k || packing.k != k {
        return Err(Sat2SiError::InconsistentK {
            coloring: coloring.k,
            packing: packing.k,
            k,
        });
    }
    for (idx, clause) in formula.clauses().iter().enumerate() {
        let mut vars: Vec<usize> = clause.iter().map(|l| l.var).collect();
        vars.sort_unstable();
        vars.dedup();
        if vars.len() != 3 || clause.len() != 3 {
            return Err(Sat2SiError::ClauseNotWidthThree {
                clause: idx,
                width: vars.len(),
            });
        }
    }
    if !coloring.is_proper_for(formula) {
        return Err(Sat2SiError::ImproperColoring);
    }
    if !packing_is_valid(formula, coloring, packing) {
        return Err(Sat2SiError::InvalidPacking);
    }
    Ok(())
}

/// The red-vertex label encoding one clause: its variable colors in
/// increasing order together with the unique valuation of those colors
/// that satisfies no literal.
fn clause_label(clause: &[crate::formula::Lit], coloring: &VariableColoring) -> RedVertexLabel {
    let mut colored: Vec<(usize, bool)> = clause
        .iter()
        .map(|l| (coloring.color_of[l.var], !l.positive))
        .collect();
    colored.sort_unstable_by_key(|&(c, _)| c);
    RedVertexLabel {
        indices: [colored[0].0, colored[1].0, colored[2].0],
        bits: [colored[0].1, colored[1].1, colored[2].1],
    }
}

/// Builds the pattern graph. It depends only on the formula, coloring and
/// packing — never on a preimage sequence — so the whole host family
/// shares one pattern.
pub fn build_pattern(
    formula: &CnfFormula,
    coloring: &VariableColoring,
    packing: &ClausePacking,
    k: usize,
) -> Result<ColoredMultigraph, Sat2SiError> {
    check_inputs(formula, coloring, packing, k)?;
    let green = green_vertex(k);
    let mut edges: Vec<(usize, usize, usize)> = gadget_edges(k).collect();

    // Consistency edges: one per variable and unordered pair of clauses
    // containing it, colored by the variable's color.
    let mut clauses_of_var: Vec<Vec<usize>> = vec![Vec::new(); formula.var_count()];
    for (idx, clause) in formula.clauses().iter().enumerate() {
        for lit in clause {
            if !clauses_of_var[lit.var].contains(&idx) {
                clauses_of_var[lit.var].push(idx);
            }
        }
    }
    for (var, clauses) in clauses_of_var.iter().enumerate() {
        for (a_pos, &a) in clauses.iter().enumerate() {
            for &b in &clauses[a_pos + 1..] {
                let (ga, gb) = (packing.group_of[a], packing.group_of[b]);
                debug_assert_ne!(ga, gb, "packing put two clauses sharing a variable together");
                edges.push((ga, gb, coloring.color_of[var]));
            }
        }
    }

    // Forbidden-valuation edges from each group to the red vertex of the
    // clause's label.
    for (idx, clause) in formula.clauses().iter().enumerate() {
        let label = clause_label(clause, coloring);
        let red = green + red_vertex_position(&label, k);
        edges.push((packing.group_of[idx], red, 0));
    }

    Ok(
        ColoredMultigraph::new(gadget_vertex_colors(k), 3, edges, k.max(1))
            .expect("pattern construction stays in range"),
    )
}

/// Builds the host graph for one preimage sequence.
pub fn build_host(k: usize, sequence: &PreimageSequence) -> ColoredMultigraph {
    let blues = 1usize << k;
    let green = green_vertex(k);
    // string_of[b] = valuation string carried by blue vertex b.
    let mut string_of: Vec<usize> = Vec::with_capacity(blues);
    for (string, &count) in sequence.counts().iter().enumerate() {
        string_of.extend(std::iter::repeat(string).take(count));
    }
    debug_assert_eq!(string_of.len(), blues);

    let labels = labels_in_order(k);
    let mut edges: Vec<(usize, usize, usize)> =
        Vec::with_capacity(blues * blues / 2 + blues * labels.len() / 8);
    for a in 0..blues {
        for b in a + 1..blues {
            let agree = !(string_of[a] ^ string_of[b]);
            for j in 0..k {
                if agree >> j & 1 == 1 {
                    edges.push((a, b, j));
                }
            }
        }
        for (pos, label) in labels.iter().enumerate() {
            if !label.matches(string_of[a]) {
                edges.push((a, green + pos + 1, 0));
            }
        }
    }
    edges.extend(gadget_edges(k));

    ColoredMultigraph::new(gadget_vertex_colors(k), 3, edges, k.max(1))
        .expect("host construction stays in range")
}

/// Exact number of preimage sequences for a given k.
pub fn sequence_count(k: usize) -> BigUint {
    composition_count(1 << k, 1 << k)
}

/// Streams all preimage sequences in lexicographic order. Refuses to
/// start when the family size exceeds `cap`, unless `force` is set.
pub fn enumerate_sequences(
    k: usize,
    cap: u64,
    force: bool,
) -> Result<impl Iterator<Item = PreimageSequence>, Sat2SiError> {
    let count = sequence_count(k);
    if !force && count > BigUint::from(cap) {
        return Err(Sat2SiError::FamilyTooLarge { count, cap });
    }
    Ok(weak_compositions(1 << k, 1 << k).map(move |counts| PreimageSequence { counts }))
}

/// A satisfiable-direction witness: the sequence selecting the right host,
/// the finished instance, and the embedding the verifier accepts.
#[derive(Debug, Clone)]
pub struct Witness {
    pub sequence: PreimageSequence,
    pub instance: SiInstance,
    pub embedding: Embedding,
}

/// Turns a satisfying assignment into the preimage sequence it induces
/// and an embedding of the pattern into that sequence's host.
///
/// Each group reads one bit per color from the assignment: the bit of
/// color `c` comes from the group's variable of color `c` if one occurs
/// in its clauses, otherwise from the lowest-indexed variable of color
/// `c` in the formula, and defaults to 0 when the color class is empty.
pub fn witness_sequence_and_embedding(
    formula: &CnfFormula,
    coloring: &VariableColoring,
    packing: &ClausePacking,
    k: usize,
    assignment: &Assignment,
) -> Result<Witness, Sat2SiError> {
    check_inputs(formula, coloring, packing, k)?;
    if !formula
        .evaluate(assignment)
        .map_err(|_| Sat2SiError::UnsatisfiedAssignment)?
    {
        return Err(Sat2SiError::UnsatisfiedAssignment);
    }

    let mut lowest_of_color: Vec<Option<usize>> = vec![None; k];
    for (var, &color) in coloring.color_of.iter().enumerate() {
        if lowest_of_color[color].is_none() {
            lowest_of_color[color] = Some(var);
        }
    }

    let blues = 1usize << k;
    let groups = packing.groups();
    let mut string_of_group = vec![0usize; blues];
    for (group, members) in groups.iter().enumerate() {
        let mut var_of_color: Vec<Option<usize>> = vec![None; k];
        for &clause_idx in members {
            for lit in &formula.clauses()[clause_idx] {
                let color = coloring.color_of[lit.var];
                debug_assert!(
                    var_of_color[color].is_none() || var_of_color[color] == Some(lit.var),
                    "two variables of one color inside a group"
                );
                var_of_color[color] = Some(lit.var);
            }
        }
        let mut string = 0usize;
        for color in 0..k {
            let value = var_of_color[color]
                .or(lowest_of_color[color])
                .map(|var| assignment.get(var))
                .unwrap_or(false);
            if value {
                string |= 1 << color;
            }
        }
        string_of_group[group] = string;
    }

    let mut counts = vec![0usize; blues];
    for &s in &string_of_group {
        counts[s] += 1;
    }
    let sequence = PreimageSequence::new(counts, k)?;

    // Groups in increasing index order take host copies of their string in
    // increasing vertex-id order.
    let offsets = sequence.offsets();
    let mut next_free = offsets.clone();
    let mut map = vec![0usize; total_vertices(k)];
    for group in 0..blues {
        let target = next_free[string_of_group[group]];
        next_free[string_of_group[group]] += 1;
        map[group] = target;
    }
    for v in blues..total_vertices(k) {
        map[v] = v;
    }

    let pattern = build_pattern(formula, coloring, packing, k)?;
    let host = build_host(k, &sequence);
    let instance = SiInstance::new(pattern, host).expect("pattern and host share color spaces");
    let embedding = Embedding::new(map);
    let violations = verify_embedding(&instance, &embedding);
    if !violations.is_empty() {
        return Err(Sat2SiError::InvalidEmbedding(violations.len()));
    }
    Ok(Witness {
        sequence,
        instance,
        embedding,
    })
}

/// Reads a satisfying assignment back out of a verified embedding: the
/// value of a variable is the bit of its color in the string of the host
/// vertex its clause group maps to. Variables in no clause default to
/// false.
pub fn decode_assignment(
    instance: &SiInstance,
    sequence: &PreimageSequence,
    embedding: &Embedding,
    formula: &CnfFormula,
    coloring: &VariableColoring,
    packing: &ClausePacking,
    k: usize,
) -> Result<Assignment, Sat2SiError> {
    check_inputs(formula, coloring, packing, k)?;
    let violations = verify_embedding(instance, embedding);
    if !violations.is_empty() {
        return Err(Sat2SiError::InvalidEmbedding(violations.len()));
    }

    // Recover each blue host vertex's string from the sequence offsets.
    let offsets = sequence.offsets();
    let string_of_host = |host_vertex: usize| -> usize {
        debug_assert!(host_vertex < offsets[offsets.len() - 1]);
        offsets.partition_point(|&o| o <= host_vertex) - 1
    };

    let mut values = vec![None; formula.var_count()];
    for (idx, clause) in formula.clauses().iter().enumerate() {
        let group = packing.group_of[idx];
        let string = string_of_host(embedding.map[group]);
        for lit in clause {
            let value = bit(string, coloring.color_of[lit.var]);
            match values[lit.var] {
                None => values[lit.var] = Some(value),
                Some(prev) if prev == value => {}
                Some(prev) => {
                    return Err(Sat2SiError::InconsistentDecode {
                        var: lit.var,
                        a: prev,
                        b: value,
                    })
                }
            }
        }
    }
    let assignment = Assignment::new(values.into_iter().map(|v| v.unwrap_or(false)).collect());
    if !formula
        .evaluate(&assignment)
        .map_err(|_| Sat2SiError::UnsatisfiedAssignment)?
    {
        return Err(Sat2SiError::UnsatisfiedAssignment);
    }
    Ok(assignment)
}

/// The rigid anchor alone: a path of red vertices with a green pendant at
/// vertex 0, using the same colors as the full construction.
pub fn assignment_gadget(k: usize) -> ColoredMultigraph {
    let reds = red_vertex_count(k);
    let mut colors = vec![GREEN];
    colors.extend(std::iter::repeat(RED).take(reds));
    let edges = (0..reds).map(|p| (p, p + 1, 0));
    ColoredMultigraph::new(colors, 3, edges, 1).expect("gadget is a path")
}
