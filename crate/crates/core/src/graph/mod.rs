//! Vertex- and edge-colored undirected multigraphs, subgraph isomorphism
//! instances over them, and the text formats for both.
//!
//! Parallel edges are allowed only with distinct colors: the edge set is a
//! set of `(u, v, color)` triples with `u < v`, kept sorted so that two
//! graphs built from any permutation of the same edge list compare equal.

mod cgf;

pub use cgf::{
    parse_cgf, parse_embedding, parse_si_instance, write_cgf, write_embedding,
    write_si_instance, CgfError,
};

use thiserror::Error;

/// Fixed numeric codes for the vertex colors used by the reduction
/// pipeline. Colors are labels only; the codes matter for file formats
/// and for the leaf counts of the vertex decolorizer.
pub const RED: usize = 0;
pub const GREEN: usize = 1;
pub const BLUE: usize = 2;
pub const YELLOW: usize = 3;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge endpoint {vertex} out of range for {n} vertices")]
    EndpointOutOfRange { vertex: usize, n: usize },
    #[error("vertex {vertex} has color {color} but only {count} vertex colors are declared")]
    VertexColorOutOfRange {
        vertex: usize,
        color: usize,
        count: usize,
    },
    #[error("edge ({u}, {v}) has color {color} but only {count} edge colors are declared")]
    EdgeColorOutOfRange {
        u: usize,
        v: usize,
        color: usize,
        count: usize,
    },
    #[error("pattern declares {pattern} {kind} colors, host declares {host}")]
    ColorCountMismatch {
        kind: &'static str,
        pattern: usize,
        host: usize,
    },
}

/// An undirected multigraph with colored vertices and edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredMultigraph {
    vertex_colors: Vec<u32>,
    /// Sorted and deduplicated, `u < v` in every entry.
    edges: Vec<(u32, u32, u32)>,
    vertex_color_count: usize,
    edge_color_count: usize,
}

impl ColoredMultigraph {
    /// Builds a graph in canonical form: endpoints normalized to `u < v`,
    /// edges sorted and deduplicated. Colors must lie below the declared
    /// counts; self-loops are rejected.
    pub fn new(
        vertex_colors: Vec<usize>,
        vertex_color_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, usize)>,
        edge_color_count: usize,
    ) -> Result<Self, GraphError> {
        let n = vertex_colors.len();
        for (vertex, &color) in vertex_colors.iter().enumerate() {
            if color >= vertex_color_count {
                return Err(GraphError::VertexColorOutOfRange {
                    vertex,
                    color,
                    count: vertex_color_count,
                });
            }
        }
        let mut packed: Vec<(u32, u32, u32)> = Vec::new();
        for (u, v, color) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let out_of_range = u.max(v);
            if out_of_range >= n {
                return Err(GraphError::EndpointOutOfRange {
                    vertex: out_of_range,
                    n,
                });
            }
            if color >= edge_color_count {
                return Err(GraphError::EdgeColorOutOfRange {
                    u,
                    v,
                    color,
                    count: edge_color_count,
                });
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            packed.push((a as u32, b as u32, color as u32));
        }
        packed.sort_unstable();
        packed.dedup();
        Ok(ColoredMultigraph {
            vertex_colors: vertex_colors.into_iter().map(|c| c as u32).collect(),
            edges: packed,
            vertex_color_count,
            edge_color_count,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_colors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_color(&self, v: usize) -> usize {
        self.vertex_colors[v] as usize
    }

    /// Declared number of vertex colors.
    pub fn vertex_color_count(&self) -> usize {
        self.vertex_color_count
    }

    /// Declared number of edge colors.
    pub fn edge_color_count(&self) -> usize {
        self.edge_color_count
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.edges
            .iter()
            .map(|&(u, v, c)| (u as usize, v as usize, c as usize))
    }

    pub fn has_edge(&self, u: usize, v: usize, color: usize) -> bool {
        if u == v {
            return false;
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges
            .binary_search(&(a as u32, b as u32, color as u32))
            .is_ok()
    }

    /// Neighbor list with edge colors, both directions of every edge.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n_vertices()];
        for &(u, v, c) in &self.edges {
            adj[u as usize].push((v as usize, c as usize));
            adj[v as usize].push((u as usize, c as usize));
        }
        adj
    }

    /// Number of distinct neighbors of each vertex (parallel edges of
    /// different colors count once).
    pub fn simple_degrees(&self) -> Vec<usize> {
        let mut neighbors = vec![Vec::new(); self.n_vertices()];
        for &(u, v, _) in &self.edges {
            neighbors[u as usize].push(v);
            neighbors[v as usize].push(u);
        }
        neighbors
            .into_iter()
            .map(|mut ns| {
                ns.sort_unstable();
                ns.dedup();
                ns.len()
            })
            .collect()
    }

    /// Exact vertex counts per color, indexed by color code.
    pub fn color_histogram(&self) -> Vec<usize> {
        let mut hist = vec![0usize; self.vertex_color_count];
        for &c in &self.vertex_colors {
            hist[c as usize] += 1;
        }
        hist
    }
}

/// A colored subgraph isomorphism instance: does the pattern embed into
/// the host by an injective map preserving vertex and edge colors?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiInstance {
    pub pattern: ColoredMultigraph,
    pub host: ColoredMultigraph,
}

impl SiInstance {
    pub fn new(pattern: ColoredMultigraph, host: ColoredMultigraph) -> Result<Self, GraphError> {
        if pattern.vertex_color_count != host.vertex_color_count {
            return Err(GraphError::ColorCountMismatch {
                kind: "vertex",
                pattern: pattern.vertex_color_count,
                host: host.vertex_color_count,
            });
        }
        if pattern.edge_color_count != host.edge_color_count {
            return Err(GraphError::ColorCountMismatch {
                kind: "edge",
                pattern: pattern.edge_color_count,
                host: host.edge_color_count,
            });
        }
        Ok(SiInstance { pattern, host })
    }

    pub fn vertex_color_count(&self) -> usize {
        self.pattern.vertex_color_count
    }

    pub fn edge_color_count(&self) -> usize {
        self.pattern.edge_color_count
    }
}

/// A candidate witness for an [`SiInstance`]: `map[p]` is the host vertex
/// chosen for pattern vertex `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    pub fn new(map: Vec<usize>) -> Self {
        Embedding { map }
    }
}
