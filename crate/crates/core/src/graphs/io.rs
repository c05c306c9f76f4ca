//! Graph file formats: a line-based text form (`n`, then one `u v` per line), JSON
//! (`{"n": 3, "edges": [[0, 1], [1, 2]]}`) and a one-line compact form (`3:0-1,1-2`).

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphJson {
    pub fn from_graph(graph: &Graph) -> Self {
        Self {
            n: graph.vertex_count(),
            edges: graph.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().map(|&[u, v]| (u, v)))
            .map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn parse_graph_text(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty graph file".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::Parse(format!("bad vertex count {header:?}")))?;
    let mut edges = Vec::new();
    for line in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parsed: Vec<usize> = fields
            .iter()
            .map(|f| f.parse().map_err(|_| Error::Parse(format!("bad edge line {line:?}"))))
            .collect::<Result<_>>()?;
        match parsed.as_slice() {
            [u, v] => edges.push((*u, *v)),
            _ => return Err(Error::Parse(format!("edge line needs two vertices: {line:?}"))),
        }
    }
    Graph::new(n, edges).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_graph_json(text: &str) -> Result<Graph> {
    let raw: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    raw.to_graph()
}

/// Accepts any of the three formats: JSON when the text starts with `{`, the compact
/// form for a single line containing `:`, the line form otherwise.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        parse_graph_json(text)
    } else if trimmed.contains(':') && !trimmed.contains('\n') {
        parse_graph_compact(trimmed)
    } else {
        parse_graph_text(text)
    }
}

pub fn to_text(graph: &Graph) -> String {
    let mut out = format!("{}\n", graph.vertex_count());
    for &(u, v) in graph.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// One-line form `n:u-v,u-v,…`, e.g. `3:0-1,1-2`.
pub fn to_compact(graph: &Graph) -> String {
    let parts: Vec<String> = graph.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("{}:{}", graph.vertex_count(), parts.join(","))
}

pub fn parse_graph_compact(text: &str) -> Result<Graph> {
    let bad = || Error::Parse(format!("expected n:u-v,u-v,..., found {text:?}"));
    let (n, rest) = text.trim().split_once(':').ok_or_else(bad)?;
    let n: usize = n.parse().map_err(|_| bad())?;
    let mut edges = Vec::new();
    for part in rest.split(',').filter(|p| !p.is_empty()) {
        let (u, v) = part.split_once('-').ok_or_else(bad)?;
        edges.push((u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?));
    }
    Graph::new(n, edges).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_json(graph: &Graph) -> String {
    serde_json::to_string(&GraphJson::from_graph(graph)).expect("graph serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{h0, wheel};

    #[test]
    fn round_trips() {
        for g in [h0(), wheel(5).unwrap(), Graph::empty(3)] {
            assert_eq!(parse_graph(&to_text(&g)).unwrap(), g);
            assert_eq!(parse_graph(&to_json(&g)).unwrap(), g);
            assert_eq!(parse_graph(&to_compact(&g)).unwrap(), g);
        }
        assert_eq!(to_compact(&Graph::empty(2)), "2:");
        assert!(parse_graph_compact("3:0-1,1").is_err());
    }

    #[test]
    fn text_format_details() {
        let g = parse_graph("3\n0 1\n# note: a comment\n2 1\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert!(parse_graph_text("3\n0 0\n").is_err());
        assert!(parse_graph_text("3\n0 1\n1 0\n").is_err());
        assert!(parse_graph_text("3\n0 1 2\n").is_err());
        assert!(parse_graph_text("x\n").is_err());
        assert!(parse_graph_json(r#"{"n": 2, "edges": [[0, 1], [0, 1]]}"#).is_err());
        assert!(parse_graph_json(r#"{"n": 2, "edges": [[1, 1]]}"#).is_err());
    }
}
