//! Graph files (JSON and plain edge lists) and DOT export.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::tree::RootedTree;

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<Vertex>,
    edges: Vec<[Vertex; 2]>,
}

pub fn graph_to_json(g: &Graph) -> String {
    let repr = GraphRepr { vertices: g.vertices().collect(), edges: g.edges().map(|(u, v)| [u, v]).collect() };
    serde_json::to_string(&repr).expect("graph serialises")
}

pub fn graph_from_json(text: &str) -> Result<Graph> {
    let repr: GraphRepr = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Graph::from_edges(repr.vertices, repr.edges.into_iter().map(|[u, v]| (u, v)))
}

/// One `u v` pair per line; a line holding a single id declares an isolated
/// vertex. Blank lines and `#` comments are skipped.
pub fn graph_from_edge_list(text: &str) -> Result<Graph> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let ids: Vec<Vertex> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        match ids[..] {
            [v] => vertices.push(v),
            [u, v] => edges.push((u, v)),
            _ => return Err(Error::Parse(format!("line {}: expected one or two ids", lineno + 1))),
        }
    }
    Graph::from_edges(vertices, edges)
}

pub fn graph_to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for v in g.vertices().filter(|&v| g.degree(v) == 0) {
        writeln!(out, "{v}").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Parses JSON when the text starts with `{`, an edge list otherwise.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        graph_from_json(text)
    } else {
        graph_from_edge_list(text)
    }
}

fn dot_header(out: &mut String) {
    out.push_str("graph G {\n");
    out.push_str("  node [shape=circle];\n");
}

fn dot_nodes(out: &mut String, g: &Graph, label: &dyn Fn(Vertex) -> String) {
    for v in g.vertices() {
        let l = label(v);
        if l == v.to_string() {
            writeln!(out, "  {v};").unwrap();
        } else {
            writeln!(out, "  {v} [label=\"{}\"];", l.replace('"', "\\\"")).unwrap();
        }
    }
}

pub fn graph_to_dot(g: &Graph, label: &dyn Fn(Vertex) -> String) -> String {
    let mut out = String::new();
    dot_header(&mut out);
    dot_nodes(&mut out, g, label);
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Tree edges solid, remaining host-graph edges dashed. Tree vertices are
/// drawn bold, the root doubled.
pub fn tree_to_dot(g: &Graph, t: &RootedTree, label: &dyn Fn(Vertex) -> String) -> String {
    let mut out = String::new();
    dot_header(&mut out);
    dot_nodes(&mut out, g, label);
    writeln!(out, "  {} [shape=doublecircle];", t.root()).unwrap();
    for v in t.vertices().filter(|&v| v != t.root()) {
        writeln!(out, "  {v} [style=bold];").unwrap();
    }
    for (u, v) in g.edges() {
        let tree_edge = t.parent(u) == Some(v) || t.parent(v) == Some(u);
        let style = if tree_edge { "solid" } else { "dashed" };
        writeln!(out, "  {u} -- {v} [style={style}];").unwrap();
    }
    out.push_str("}\n");
    out
}
