//! The CGF text format for colored multigraphs, SI instance files and
//! embedding files.
//!
//! One record per line: header `g <n_vertices> <n_edges> <c> <t>`, vertex
//! lines `v <id> <vcolor>`, edge lines `e <u> <v> <ecolor>` with `u < v`,
//! `#` starts a comment. An SI instance file is two CGF blocks separated
//! by a line `---`, pattern first. An embedding file has one
//! `map <pattern-id> <host-id>` line per pattern vertex.

use super::{ColoredMultigraph, Embedding, GraphError, SiInstance};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CgfError {
    #[error("line {line}: expected `{expected}`")]
    Malformed { line: usize, expected: &'static str },
    #[error("line {line}: vertex {id} out of range for {n} vertices")]
    VertexOutOfRange { line: usize, id: usize, n: usize },
    #[error("line {line}: vertex {id} declared twice")]
    DuplicateVertex { line: usize, id: usize },
    #[error("vertex {id} has no `v` line")]
    MissingVertex { id: usize },
    #[error("line {line}: edge endpoints must satisfy u < v")]
    UnorderedEdge { line: usize },
    #[error("found {found} edge lines, header declares {declared}")]
    EdgeCountMismatch { found: usize, declared: usize },
    #[error("missing `g` header line")]
    MissingHeader,
    #[error("expected `---` separator between pattern and host blocks")]
    MissingSeparator,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn parse_fields<const N: usize>(
    rest: &str,
    line: usize,
    expected: &'static str,
) -> Result<[usize; N], CgfError> {
    let mut out = [0usize; N];
    let mut fields = rest.split_whitespace();
    for slot in &mut out {
        let tok = fields
            .next()
            .ok_or(CgfError::Malformed { line, expected })?;
        *slot = tok
            .parse()
            .map_err(|_| CgfError::Malformed { line, expected })?;
    }
    if fields.next().is_some() {
        return Err(CgfError::Malformed { line, expected });
    }
    Ok(out)
}

/// Parses one CGF block.
pub fn parse_cgf(text: &str) -> Result<ColoredMultigraph, CgfError> {
    parse_block(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
}

fn parse_block<'a>(
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<ColoredMultigraph, CgfError> {
    let mut header: Option<(usize, usize, usize, usize)> = None;
    let mut colors: Vec<Option<usize>> = Vec::new();
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for (line, raw) in lines {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (tag, rest) = trimmed.split_at(1);
        match tag {
            "g" if header.is_none() => {
                let [n, m, c, t] = parse_fields(rest, line, "g <n> <m> <c> <t>")?;
                header = Some((n, m, c, t));
                colors = vec![None; n];
            }
            "v" => {
                let (n, ..) = header.ok_or(CgfError::MissingHeader)?;
                let [id, color] = parse_fields(rest, line, "v <id> <color>")?;
                if id >= n {
                    return Err(CgfError::VertexOutOfRange { line, id, n });
                }
                if colors[id].is_some() {
                    return Err(CgfError::DuplicateVertex { line, id });
                }
                colors[id] = Some(color);
            }
            "e" => {
                header.ok_or(CgfError::MissingHeader)?;
                let [u, v, color] = parse_fields(rest, line, "e <u> <v> <color>")?;
                if u >= v {
                    return Err(CgfError::UnorderedEdge { line });
                }
                edges.push((u, v, color));
            }
            _ => {
                return Err(CgfError::Malformed {
                    line,
                    expected: "g/v/e record",
                })
            }
        }
    }
    let (_, m, c, t) = header.ok_or(CgfError::MissingHeader)?;
    if edges.len() != m {
        return Err(CgfError::EdgeCountMismatch {
            found: edges.len(),
            declared: m,
        });
    }
    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(id, col)| col.ok_or(CgfError::MissingVertex { id }))
        .collect::<Result<Vec<usize>, _>>()?;
    Ok(ColoredMultigraph::new(colors, c, edges, t)?)
}

/// Renders a graph as a CGF block.
pub fn write_cgf(graph: &ColoredMultigraph) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "g {} {} {} {}",
        graph.n_vertices(),
        graph.edge_count(),
        graph.vertex_color_count(),
        graph.edge_color_count()
    )
    .unwrap();
    for v in 0..graph.n_vertices() {
        writeln!(out, "v {} {}", v, graph.vertex_color(v)).unwrap();
    }
    for (u, v, color) in graph.edges() {
        writeln!(out, "e {u} {v} {color}").unwrap();
    }
    out
}

/// Parses an SI instance file: pattern block, `---`, host block.
pub fn parse_si_instance(text: &str) -> Result<SiInstance, CgfError> {
    let mut numbered = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let pattern_lines: Vec<(usize, &str)> = numbered
        .by_ref()
        .take_while(|(_, l)| l.trim() != "---")
        .collect();
    let host_lines: Vec<(usize, &str)> = numbered.collect();
    if host_lines.is_empty() && !text.lines().any(|l| l.trim() == "---") {
        return Err(CgfError::MissingSeparator);
    }
    let pattern = parse_block(pattern_lines.into_iter())?;
    let host = parse_block(host_lines.into_iter())?;
    Ok(SiInstance::new(pattern, host)?)
}

pub fn write_si_instance(inst: &SiInstance) -> String {
    format!("{}---\n{}", write_cgf(&inst.pattern), write_cgf(&inst.host))
}

/// Parses an embedding file of `map <pattern-id> <host-id>` lines. Every
/// pattern vertex from `0` to the largest mentioned id must be mapped.
pub fn parse_embedding(text: &str) -> Result<Embedding, CgfError> {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let rest = trimmed
            .strip_prefix("map")
            .ok_or(CgfError::Malformed {
                line,
                expected: "map <pattern-id> <host-id>",
            })?;
        let [p, h] = parse_fields(rest, line, "map <pattern-id> <host-id>")?;
        pairs.push((p, h));
    }
    let n = pairs.iter().map(|&(p, _)| p + 1).max().unwrap_or(0);
    let mut map = vec![None; n];
    for (p, h) in pairs {
        map[p] = Some(h);
    }
    let map = map
        .into_iter()
        .enumerate()
        .map(|(id, h)| h.ok_or(CgfError::MissingVertex { id }))
        .collect::<Result<Vec<usize>, _>>()?;
    Ok(Embedding::new(map))
}

pub fn write_embedding(embedding: &Embedding) -> String {
    let mut out = String::new();
    for (p, &h) in embedding.map.iter().enumerate() {
        writeln!(out, "map {p} {h}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let g = parse_cgf("g 2 1 3 2\nv 0 1\nv 1 2\ne 0 1 0\n").unwrap();
        assert_eq!(g.n_vertices(), 2);
        assert_eq!(g.vertex_color(0), 1);
        assert_eq!(g.vertex_color(1), 2);
        assert_eq!(g.vertex_color_count(), 3);
        assert_eq!(g.edge_color_count(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1, 0)]);
    }

    #[test]
    fn parses_empty_graph() {
        let g = parse_cgf("g 0 0 1 1\n").unwrap();
        assert_eq!(g.n_vertices(), 0);
    }

    #[test]
    fn rejects_unordered_edge() {
        assert!(matches!(
            parse_cgf("g 2 1 1 1\nv 0 0\nv 1 0\ne 1 0 0\n"),
            Err(CgfError::UnorderedEdge { line: 4 })
        ));
    }

    #[test]
    fn rejects_missing_vertex_line() {
        assert!(matches!(
            parse_cgf("g 2 0 1 1\nv 0 0\n"),
            Err(CgfError::MissingVertex { id: 1 })
        ));
    }

    #[test]
    fn round_trips_with_comments() {
        let g = parse_cgf("# comment\ng 3 2 2 2\nv 0 0\nv 1 1\nv 2 0\ne 0 2 1\ne 0 1 0\n").unwrap();
        assert_eq!(parse_cgf(&write_cgf(&g)).unwrap(), g);
    }

    #[test]
    fn instance_file_round_trips() {
        let pattern = parse_cgf("g 1 0 2 1\nv 0 0\n").unwrap();
        let host = parse_cgf("g 2 1 2 1\nv 0 0\nv 1 1\ne 0 1 0\n").unwrap();
        let inst = SiInstance::new(pattern, host).unwrap();
        assert_eq!(parse_si_instance(&write_si_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn embedding_file_round_trips() {
        let e = Embedding::new(vec![2, 0, 1]);
        assert_eq!(parse_embedding(&write_embedding(&e)).unwrap(), e);
    }
}
