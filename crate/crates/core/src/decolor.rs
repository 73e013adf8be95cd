//! Color removal for SI instances whose pattern and host have the same
//! number of vertices.
//!
//! Edge colors go first: every vertex becomes a small gadget (a center
//! keeping the original vertex color plus a path of yellow vertices), and
//! an edge of color `x` turns into a pair of plain edges between the
//! gadget legs selected by an injective code `p(x) = (i, j)`. Vertex
//! colors are then erased by attaching a color-dependent number of leaves
//! to each vertex. Composing both yields an equivalent plain SI instance
//! with `O(c * sqrt(t))` times more vertices.

use crate::graph::{ColoredMultigraph, SiInstance};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecolorError {
    #[error("pattern has {pattern} vertices, host {host}; the gadgets need equal sizes")]
    SizeMismatch { pattern: usize, host: usize },
}

/// `t' = 2 * ceil(sqrt(t))`: leg count of the edge-color gadget, chosen
/// so that `C(t', 2) >= t` pairs are available.
pub fn leg_count(t: usize) -> usize {
    let mut s = (t as f64).sqrt() as usize;
    while s * s < t {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= t {
        s -= 1;
    }
    2 * s
}

/// Injective map from each edge color in `0..t` to a pair `(i, j)` with
/// `1 <= i < j <= t'`, assigned in lexicographic pair order.
pub fn pair_code(t: usize) -> Vec<(usize, usize)> {
    let t_prime = leg_count(t);
    let mut pairs = Vec::with_capacity(t);
    'outer: for i in 1..=t_prime {
        for j in i + 1..=t_prime {
            pairs.push((i, j));
            if pairs.len() == t {
                break 'outer;
            }
        }
    }
    assert_eq!(pairs.len(), t, "C(t', 2) >= t guarantees enough pairs");
    pairs
}

fn require_equal_sizes(inst: &SiInstance) -> Result<(), DecolorError> {
    if inst.pattern.n_vertices() != inst.host.n_vertices() {
        return Err(DecolorError::SizeMismatch {
            pattern: inst.pattern.n_vertices(),
            host: inst.host.n_vertices(),
        });
    }
    Ok(())
}

/// Removes edge colors: output has one edge color, `c + 1` vertex colors
/// (the fresh path color takes index `c`, which is the yellow code for
/// the three-color instances of the SAT reduction), and exactly
/// `(t' + 2) * n` vertices per side.
pub fn remove_edge_colors(inst: &SiInstance) -> Result<SiInstance, DecolorError> {
    require_equal_sizes(inst)?;
    let t = inst.edge_color_count();
    let c = inst.vertex_color_count();
    let pairs = pair_code(t);
    let t_prime = leg_count(t);
    let pattern = strip_edge_colors(&inst.pattern, &pairs, t_prime, c);
    let host = strip_edge_colors(&inst.host, &pairs, t_prime, c);
    Ok(SiInstance::new(pattern, host).expect("both sides get the same color space"))
}

fn strip_edge_colors(
    graph: &ColoredMultigraph,
    pairs: &[(usize, usize)],
    t_prime: usize,
    yellow: usize,
) -> ColoredMultigraph {
    let stride = t_prime + 2;
    let n = graph.n_vertices();
    let mut colors = Vec::with_capacity(n * stride);
    let mut edges = Vec::new();
    for v in 0..n {
        let base = v * stride;
        colors.push(graph.vertex_color(v));
        colors.extend(std::iter::repeat(yellow).take(t_prime + 1));
        // Center is adjacent to the first t' path vertices; the path has
        // one extra yellow vertex dangling at the end.
        for i in 1..=t_prime {
            edges.push((base, base + i, 0));
        }
        for i in 1..=t_prime {
            edges.push((base + i, base + i + 1, 0));
        }
    }
    for (u, v, x) in graph.edges() {
        let (i, j) = pairs[x];
        edges.push((u * stride + i, v * stride + j, 0));
        edges.push((u * stride + j, v * stride + i, 0));
    }
    ColoredMultigraph::new(colors, yellow + 1, edges, 1)
        .expect("gadget construction stays in range")
}

/// Removes vertex colors: each vertex of color code `x` gains `x + 2`
/// leaves (colors are numbered from 1 in the leaf counts, and a vertex
/// numbered `i` gets `i + 1` leaves), attached by edges of color 0. If
/// the per-color vertex counts of pattern and host differ the instance
/// is decided already and a canonical NO instance is returned.
pub fn remove_vertex_colors(inst: &SiInstance) -> Result<SiInstance, DecolorError> {
    require_equal_sizes(inst)?;
    let t = inst.edge_color_count().max(1);
    if inst.pattern.color_histogram() != inst.host.color_histogram() {
        return Ok(trivial_no_instance(t));
    }
    let pattern = strip_vertex_colors(&inst.pattern, t);
    let host = strip_vertex_colors(&inst.host, t);
    Ok(SiInstance::new(pattern, host).expect("both sides get the same color space"))
}

fn strip_vertex_colors(graph: &ColoredMultigraph, t: usize) -> ColoredMultigraph {
    let n = graph.n_vertices();
    let mut edges: Vec<(usize, usize, usize)> = graph.edges().collect();
    let mut next = n;
    for v in 0..n {
        for _ in 0..graph.vertex_color(v) + 2 {
            edges.push((v, next, 0));
            next += 1;
        }
    }
    ColoredMultigraph::new(vec![0; next], 1, edges, t)
        .expect("leaf construction stays in range")
}

/// Smallest instance that is unconditionally NO: an edge as the pattern,
/// two isolated vertices as the host.
pub fn trivial_no_instance(t: usize) -> SiInstance {
    let pattern = ColoredMultigraph::new(vec![0, 0], 1, [(0, 1, 0)], t).unwrap();
    let host = ColoredMultigraph::new(vec![0, 0], 1, [], t).unwrap();
    SiInstance::new(pattern, host).unwrap()
}

/// Full pipeline to a plain SI instance: edge colors out, then vertex
/// colors out.
pub fn decolor_pipeline(inst: &SiInstance) -> Result<SiInstance, DecolorError> {
    remove_vertex_colors(&remove_edge_colors(inst)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leg_count_handles_squares_exactly() {
        assert_eq!(leg_count(1), 2);
        assert_eq!(leg_count(3), 4);
        assert_eq!(leg_count(4), 4);
        assert_eq!(leg_count(5), 6);
        assert_eq!(leg_count(49), 14);
    }

    #[test]
    fn pair_code_matches_documented_assignment() {
        assert_eq!(pair_code(3), vec![(1, 2), (1, 3), (1, 4)]);
        assert_eq!(pair_code(1), vec![(1, 2)]);
    }

    #[test]
    fn pair_code_is_injective_up_to_64() {
        for t in 1..=64 {
            let code = pair_code(t);
            let t_prime = leg_count(t);
            let mut seen = code.clone();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len(), t, "t = {t}");
            assert!(code.iter().all(|&(i, j)| 1 <= i && i < j && j <= t_prime));
        }
    }

    #[test]
    fn edge_decolorizer_multiplies_sizes_by_leg_count_plus_two() {
        let g = ColoredMultigraph::new(vec![0, 1, 2], 3, [(0, 1, 0), (1, 2, 2)], 3).unwrap();
        let inst = SiInstance::new(g.clone(), g).unwrap();
        let out = remove_edge_colors(&inst).unwrap();
        assert_eq!(out.pattern.n_vertices(), 18);
        assert_eq!(out.host.n_vertices(), 18);
        assert_eq!(out.vertex_color_count(), 4);
        assert_eq!(out.edge_color_count(), 1);
    }

    #[test]
    fn edge_decolorizer_requires_equal_sizes() {
        let small = ColoredMultigraph::new(vec![0], 1, [], 1).unwrap();
        let big = ColoredMultigraph::new(vec![0, 0], 1, [], 1).unwrap();
        let inst = SiInstance::new(small, big).unwrap();
        assert_eq!(
            remove_edge_colors(&inst),
            Err(DecolorError::SizeMismatch { pattern: 1, host: 2 })
        );
    }

    #[test]
    fn vertex_decolorizer_attaches_color_plus_two_leaves() {
        use crate::graph::{BLUE, GREEN};
        let g = ColoredMultigraph::new(vec![GREEN, BLUE], 4, [(0, 1, 0)], 1).unwrap();
        let inst = SiInstance::new(g.clone(), g).unwrap();
        let out = remove_vertex_colors(&inst).unwrap();
        // Green (code 1) gets 3 leaves, blue (code 2) gets 4.
        assert_eq!(out.pattern.n_vertices(), 2 + 3 + 4);
        assert_eq!(out.vertex_color_count(), 1);
        let degrees = out.pattern.simple_degrees();
        assert_eq!(degrees[0], 1 + 3);
        assert_eq!(degrees[1], 1 + 4);
    }

    #[test]
    fn histogram_mismatch_turns_into_trivial_no() {
        let a = ColoredMultigraph::new(vec![0, 0], 2, [], 1).unwrap();
        let b = ColoredMultigraph::new(vec![0, 1], 2, [], 1).unwrap();
        let inst = SiInstance::new(a, b).unwrap();
        let out = remove_vertex_colors(&inst).unwrap();
        assert_eq!(out, trivial_no_instance(1));
        assert!(!crate::solve::naive_oracle(&out));
    }

    #[test]
    fn pipeline_produces_plain_instance() {
        let g = ColoredMultigraph::new(vec![0, 1], 2, [(0, 1, 1)], 2).unwrap();
        let inst = SiInstance::new(g.clone(), g).unwrap();
        let out = decolor_pipeline(&inst).unwrap();
        assert_eq!(out.vertex_color_count(), 1);
        assert_eq!(out.edge_color_count(), 1);
        assert_eq!(out.pattern.n_vertices(), out.host.n_vertices());
    }
}
