//! Plain-text instance format.
//!
//! ```text
//! # comment
//! n m
//! u v        (m edge lines)
//! guards i1 i2 ...
//! ```
//!
//! Tokens are whitespace separated and `#` starts a comment anywhere on a line.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Graph, GraphError, GuardConfig};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("guard {guard} out of range for a graph on {n} vertices")]
    GuardOutOfRange { guard: usize, n: usize },
    #[error("unexpected end of input: {0}")]
    Truncated(String),
}

/// A graph together with its guard placement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub guards: GuardConfig,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub instance: Instance,
    pub warnings: Vec<String>,
}

/// JSON mirror of the text format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub guards: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl Instance {
    pub fn new(graph: Graph, guards: GuardConfig) -> Self {
        Instance { graph, guards }
    }

    pub fn to_json(&self) -> InstanceJson {
        InstanceJson {
            n: self.graph.n(),
            edges: self.graph.edges().map(|(u, v)| [u, v]).collect(),
            guards: self.guards.vertices().to_vec(),
            names: self.graph.names().map(<[String]>::to_vec),
        }
    }

    pub fn from_json(json: &InstanceJson) -> Result<Self, GraphError> {
        let edges: Vec<_> = json.edges.iter().map(|e| (e[0], e[1])).collect();
        let mut graph = Graph::from_edges(json.n, &edges)?;
        if let Some(names) = &json.names {
            graph = graph.with_names(names.clone())?;
        }
        let guards = GuardConfig::new(json.guards.clone(), json.n)?;
        Ok(Instance { graph, guards })
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn number(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| ParseError::Malformed {
        line,
        msg: format!("expected a nonnegative integer, found {tok:?}"),
    })
}

pub fn parse_instance(text: &str) -> Result<Parsed, ParseError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| ParseError::Truncated("missing header".into()))?;
    if header.len() != 2 {
        return Err(ParseError::Malformed { line, msg: "header must be \"n m\"".into() });
    }
    let n = number(header[0], line)?;
    let m = number(header[1], line)?;

    let mut warnings = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(m);
    for k in 0..m {
        let (line, toks) = lines
            .next()
            .ok_or_else(|| ParseError::Truncated(format!("expected {m} edges, found {k}")))?;
        if toks.len() != 2 {
            return Err(ParseError::Malformed { line, msg: "edge line must be \"u v\"".into() });
        }
        let (u, v) = (number(toks[0], line)?, number(toks[1], line)?);
        Graph::from_edges(n, &[(u, v)]).map_err(|source| ParseError::Graph { line, source })?;
        if !seen.insert((u.min(v), u.max(v))) {
            let msg = format!("line {line}: duplicate edge {u} {v} ignored");
            log::warn!("{msg}");
            warnings.push(msg);
            continue;
        }
        edges.push((u, v));
    }

    let (line, toks) = lines
        .next()
        .ok_or_else(|| ParseError::Truncated("missing guards line".into()))?;
    if toks[0] != "guards" {
        return Err(ParseError::Malformed { line, msg: "expected \"guards ...\"".into() });
    }
    let mut guards = Vec::with_capacity(toks.len() - 1);
    for tok in &toks[1..] {
        let g = number(tok, line)?;
        if g >= n {
            return Err(ParseError::GuardOutOfRange { guard: g, n });
        }
        guards.push(g);
    }
    if let Some((line, _)) = lines.next() {
        return Err(ParseError::Malformed { line, msg: "trailing content after guards line".into() });
    }

    let graph = Graph::from_edges(n, &edges).expect("edges validated above");
    let guards = GuardConfig::new(guards, n).map_err(|source| ParseError::Graph { line, source })?;
    Ok(Parsed { instance: Instance { graph, guards }, warnings })
}

pub fn serialize_instance(graph: &Graph, guards: &GuardConfig) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", graph.n(), graph.m()).unwrap();
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out.push_str("guards");
    for v in guards.iter() {
        write!(out, " {v}").unwrap();
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_with_middle_guard() {
        let p = parse_instance("3 2\n0 1\n1 2\nguards 1").unwrap();
        assert_eq!(p.instance.graph.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(p.instance.guards.vertices(), &[1]);
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn smallest_instance() {
        let p = parse_instance("1 0\nguards").unwrap();
        assert_eq!(p.instance.graph.n(), 1);
        assert!(p.instance.guards.is_empty());
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header\n\n3 1  # n m\n0 2\n# done\nguards 0 # one guard\n";
        let p = parse_instance(text).unwrap();
        assert_eq!(p.instance.graph.m(), 1);
        assert_eq!(p.instance.guards.vertices(), &[0]);
    }

    #[test]
    fn duplicate_edge_is_a_warning() {
        let p = parse_instance("2 2\n0 1\n1 0\nguards").unwrap();
        assert_eq!(p.instance.graph.m(), 1);
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_instance("3 1\n0 1 2\nguards"), Err(ParseError::Malformed { line: 2, .. })));
        assert!(matches!(
            parse_instance("3 1\n0 3\nguards"),
            Err(ParseError::Graph { line: 2, source: GraphError::VertexOutOfRange { vertex: 3, n: 3 } })
        ));
        assert_eq!(parse_instance("3 0\nguards 3"), Err(ParseError::GuardOutOfRange { guard: 3, n: 3 }));
        assert!(matches!(parse_instance("3 2\n0 1\nguards"), Err(ParseError::Malformed { .. })));
        assert!(matches!(parse_instance("3 0\n"), Err(ParseError::Truncated(_))));
        assert!(matches!(parse_instance("3 x\nguards"), Err(ParseError::Malformed { line: 1, .. })));
        assert!(matches!(parse_instance("2 0\nguards\n0 1"), Err(ParseError::Malformed { line: 3, .. })));
        assert!(matches!(parse_instance("2 1\n1 1\nguards"), Err(ParseError::Graph { .. })));
    }

    #[test]
    fn json_mirror() {
        let p = parse_instance("3 2\n0 1\n1 2\nguards 1").unwrap();
        let json = p.instance.to_json();
        assert_eq!(json.edges, vec![[0, 1], [1, 2]]);
        let text = serde_json::to_string(&json).unwrap();
        let back: InstanceJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Instance::from_json(&back).unwrap(), p.instance);
    }
}
