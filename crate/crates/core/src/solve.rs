//! Brute-force decision and search for colored subgraph isomorphism, an
//! embedding verifier, and OR-aggregation over host families.
//!
//! The solver is a plain backtracking search: pattern vertices are
//! processed by descending degree (ties by id), host candidates by
//! ascending id, and candidates are filtered by vertex color, per-color
//! degree dominance and consistency with the edges into already-mapped
//! vertices. All filters are sound, so verdicts match naive enumeration.

use crate::graph::{ColoredMultigraph, Embedding, SiInstance};
use std::ops::ControlFlow;

/// Default per-instance search budget, counted in accepted partial
/// assignments.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    /// An embedding exists; the returned one is the first in the solver's
    /// deterministic search order.
    Embedded(Embedding),
    NoEmbedding,
    /// The node budget ran out before the search space was exhausted.
    BudgetExhausted,
}

impl SolveResult {
    pub fn is_yes(&self) -> bool {
        matches!(self, SolveResult::Embedded(_))
    }
}

/// Decides one instance within a node budget.
pub fn si_solve(inst: &SiInstance, node_budget: u64) -> SolveResult {
    solve_member(&inst.pattern, &inst.host, node_budget)
}

/// Collects embeddings up to `limit` in search order. The second return
/// value reports whether the budget ran out first.
pub fn si_embeddings(inst: &SiInstance, limit: usize, node_budget: u64) -> (Vec<Embedding>, bool) {
    let mut found = Vec::new();
    let exhausted = search(&inst.pattern, &inst.host, node_budget, &mut |map| {
        found.push(Embedding::new(map.to_vec()));
        if found.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    (found, exhausted)
}

/// Backtracking core. Returns true iff the budget was exhausted.
fn search(
    pattern: &ColoredMultigraph,
    host: &ColoredMultigraph,
    node_budget: u64,
    on_found: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
) -> bool {
    let n_p = pattern.n_vertices();
    let n_h = host.n_vertices();
    if n_p > n_h {
        return false;
    }
    // Color histograms give an immediate sound refutation.
    let p_hist = pattern.color_histogram();
    let h_hist = host.color_histogram();
    if p_hist.iter().zip(&h_hist).any(|(p, h)| p > h) {
        return false;
    }

    let t = pattern.edge_color_count();
    let p_adj = pattern.adjacency();
    let h_adj = host.adjacency();
    let p_cdeg = color_degrees(pattern, t);
    let h_cdeg = color_degrees(host, t);

    let mut order: Vec<usize> = (0..n_p).collect();
    order.sort_by_key(|&u| (std::cmp::Reverse(p_adj[u].len()), u));

    let mut state = Search {
        pattern,
        host,
        p_adj: &p_adj,
        p_cdeg: &p_cdeg,
        h_cdeg: &h_cdeg,
        h_degree: h_adj.iter().map(|a| a.len()).collect(),
        order: &order,
        map: vec![usize::MAX; n_p],
        used: vec![false; n_h],
        nodes_left: node_budget,
    };
    matches!(state.descend(0, on_found), Descend::Exhausted)
}

fn color_degrees(g: &ColoredMultigraph, t: usize) -> Vec<Vec<u32>> {
    let mut cdeg = vec![vec![0u32; t]; g.n_vertices()];
    for (u, v, c) in g.edges() {
        cdeg[u][c] += 1;
        cdeg[v][c] += 1;
    }
    cdeg
}

enum Descend {
    Done,
    Stopped,
    Exhausted,
}

struct Search<'a> {
    pattern: &'a ColoredMultigraph,
    host: &'a ColoredMultigraph,
    p_adj: &'a [Vec<(usize, usize)>],
    p_cdeg: &'a [Vec<u32>],
    h_cdeg: &'a [Vec<u32>],
    h_degree: Vec<usize>,
    order: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
    nodes_left: u64,
}

impl Search<'_> {
    fn descend(
        &mut self,
        depth: usize,
        on_found: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Descend {
        if depth == self.order.len() {
            return match on_found(&self.map) {
                ControlFlow::Break(()) => Descend::Stopped,
                ControlFlow::Continue(()) => Descend::Done,
            };
        }
        let u = self.order[depth];
        for v in 0..self.host.n_vertices() {
            if !self.admissible(u, v) {
                continue;
            }
            if self.nodes_left == 0 {
                return Descend::Exhausted;
            }
            self.nodes_left -= 1;
            self.map[u] = v;
            self.used[v] = true;
            let verdict = self.descend(depth + 1, on_found);
            self.map[u] = usize::MAX;
            self.used[v] = false;
            if !matches!(verdict, Descend::Done) {
                return verdict;
            }
        }
        Descend::Done
    }

    fn admissible(&self, u: usize, v: usize) -> bool {
        if self.used[v]
            || self.pattern.vertex_color(u) != self.host.vertex_color(v)
            || self.p_adj[u].len() > self.h_degree[v]
        {
            return false;
        }
        if self.p_cdeg[u]
            .iter()
            .zip(&self.h_cdeg[v])
            .any(|(p, h)| p > h)
        {
            return false;
        }
        self.p_adj[u].iter().all(|&(w, color)| {
            let target = self.map[w];
            target == usize::MAX || self.host.has_edge(v, target, color)
        })
    }
}

/// One reason an embedding is not valid for an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingViolation {
    WrongLength { expected: usize, got: usize },
    TargetOutOfRange { pattern_vertex: usize, target: usize },
    NotInjective { a: usize, b: usize, target: usize },
    VertexColorMismatch { pattern_vertex: usize, target: usize },
    MissingEdge { u: usize, v: usize, color: usize },
}

/// Checks injectivity, vertex-color preservation and per-color edge
/// preservation, reporting every violation. An empty report means the
/// embedding witnesses the instance.
pub fn verify_embedding(inst: &SiInstance, embedding: &Embedding) -> Vec<EmbeddingViolation> {
    let mut violations = Vec::new();
    let pattern = &inst.pattern;
    let host = &inst.host;
    if embedding.map.len() != pattern.n_vertices() {
        violations.push(EmbeddingViolation::WrongLength {
            expected: pattern.n_vertices(),
            got: embedding.map.len(),
        });
        return violations;
    }
    let mut seen: Vec<Option<usize>> = vec![None; host.n_vertices()];
    for (p, &h) in embedding.map.iter().enumerate() {
        if h >= host.n_vertices() {
            violations.push(EmbeddingViolation::TargetOutOfRange {
                pattern_vertex: p,
                target: h,
            });
            continue;
        }
        if let Some(prev) = seen[h] {
            violations.push(EmbeddingViolation::NotInjective {
                a: prev,
                b: p,
                target: h,
            });
        } else {
            seen[h] = Some(p);
        }
        if pattern.vertex_color(p) != host.vertex_color(h) {
            violations.push(EmbeddingViolation::VertexColorMismatch {
                pattern_vertex: p,
                target: h,
            });
        }
    }
    if violations.is_empty() {
        for (u, v, color) in pattern.edges() {
            if !host.has_edge(embedding.map[u], embedding.map[v], color) {
                violations.push(EmbeddingViolation::MissingEdge { u, v, color });
            }
        }
    }
    violations
}

/// Reference decision procedure: enumerates every injective map from
/// pattern to host vertices in plain index order and accepts iff some
/// complete tuple passes [`verify_embedding`]. No pruning, no search
/// ordering — deliberately independent of [`si_solve`].
pub fn naive_oracle(inst: &SiInstance) -> bool {
    let n_p = inst.pattern.n_vertices();
    let n_h = inst.host.n_vertices();
    if n_p > n_h {
        return false;
    }
    let mut map = vec![0usize; n_p];
    let mut used = vec![false; n_h];
    fn recurse(
        inst: &SiInstance,
        depth: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == map.len() {
            return verify_embedding(inst, &Embedding::new(map.clone())).is_empty();
        }
        for v in 0..used.len() {
            if used[v] {
                continue;
            }
            map[depth] = v;
            used[v] = true;
            let hit = recurse(inst, depth + 1, map, used);
            used[v] = false;
            if hit {
                return true;
            }
        }
        false
    }
    recurse(inst, 0, &mut map, &mut used)
}

/// Verdict of an OR-aggregation over a family of hosts sharing one
/// pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyVerdict {
    /// Witness with the lowest index in the family stream.
    Yes { index: usize, embedding: Embedding },
    No,
    /// No witness found but at least one member ran out of budget.
    Inconclusive,
}

/// Chunk size for family-level parallelism. Hosts are built and solved in
/// index chunks so early exit and the lowest-index-wins rule both hold
/// under parallel execution.
const FAMILY_CHUNK: usize = 64;

/// Solves `pattern -> build(item)` for every item in the stream, stopping
/// at the first chunk containing a witness. Returns the witness with the
/// lowest stream index; `No` only after exhausting the stream.
pub fn si_family_solve<T, I, F>(
    pattern: &ColoredMultigraph,
    items: I,
    build: F,
    node_budget: u64,
) -> FamilyVerdict
where
    T: Send,
    I: Iterator<Item = T>,
    F: Fn(T) -> ColoredMultigraph + Sync,
{
    let mut inconclusive = false;
    let mut items = items.enumerate();
    loop {
        let chunk: Vec<(usize, T)> = items.by_ref().take(FAMILY_CHUNK).collect();
        if chunk.is_empty() {
            return if inconclusive {
                FamilyVerdict::Inconclusive
            } else {
                FamilyVerdict::No
            };
        }
        let results = solve_chunk(pattern, chunk, &build, node_budget);
        for (index, result) in results {
            match result {
                SolveResult::Embedded(embedding) => {
                    return FamilyVerdict::Yes { index, embedding }
                }
                SolveResult::BudgetExhausted => inconclusive = true,
                SolveResult::NoEmbedding => {}
            }
        }
    }
}

#[cfg(feature = "parallel")]
fn solve_chunk<T, F>(
    pattern: &ColoredMultigraph,
    chunk: Vec<(usize, T)>,
    build: &F,
    node_budget: u64,
) -> Vec<(usize, SolveResult)>
where
    T: Send,
    F: Fn(T) -> ColoredMultigraph + Sync,
{
    use rayon::prelude::*;
    chunk
        .into_par_iter()
        .map(|(index, item)| (index, solve_member(pattern, &build(item), node_budget)))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn solve_chunk<T, F>(
    pattern: &ColoredMultigraph,
    chunk: Vec<(usize, T)>,
    build: &F,
    node_budget: u64,
) -> Vec<(usize, SolveResult)>
where
    T: Send,
    F: Fn(T) -> ColoredMultigraph + Sync,
{
    chunk
        .into_iter()
        .map(|(index, item)| (index, solve_member(pattern, &build(item), node_budget)))
        .collect()
}

/// Sequential family sweep with identical semantics, kept public so the
/// two strategies can be compared directly in benchmarks.
pub fn si_family_solve_seq<T, I, F>(
    pattern: &ColoredMultigraph,
    items: I,
    build: F,
    node_budget: u64,
) -> FamilyVerdict
where
    I: Iterator<Item = T>,
    F: Fn(T) -> ColoredMultigraph,
{
    let mut inconclusive = false;
    for (index, item) in items.enumerate() {
        match solve_member(pattern, &build(item), node_budget) {
            SolveResult::Embedded(embedding) => return FamilyVerdict::Yes { index, embedding },
            SolveResult::BudgetExhausted => inconclusive = true,
            SolveResult::NoEmbedding => {}
        }
    }
    if inconclusive {
        FamilyVerdict::Inconclusive
    } else {
        FamilyVerdict::No
    }
}

fn solve_member(pattern: &ColoredMultigraph, host: &ColoredMultigraph, budget: u64) -> SolveResult {
    let mut found = None;
    let exhausted = search(pattern, host, budget, &mut |map| {
        found = Some(Embedding::new(map.to_vec()));
        ControlFlow::Break(())
    });
    match found {
        Some(e) => SolveResult::Embedded(e),
        None if exhausted => SolveResult::BudgetExhausted,
        None => SolveResult::NoEmbedding,
    }
}
