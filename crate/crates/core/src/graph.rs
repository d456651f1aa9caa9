//! Simple undirected graphs in compressed adjacency form.
//!
//! Nodes are dense indices `0..n`. Every neighbor list is sorted and free of
//! duplicates and self-loops, and adjacency is symmetric. These invariants are
//! established by the constructors and never change afterwards.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("self-loop on node {node} (line {line})")]
    SelfLoop { node: usize, line: usize },
    #[error("edge ({0}, {1}) references a node outside 0..{2}")]
    NodeOutOfRange(usize, usize, usize),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid parameters for `{family}`: {msg}")]
    InvalidParams { family: String, msg: String },
    #[error("generator `{0}` requires a seed")]
    MissingSeed(String),
    #[error("malformed generator spec `{0}` (expected name[:params[:seed]])")]
    BadSpec(String),
    #[error("invalid graph JSON: {0}")]
    Json(String),
}

/// Immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Graph {
    /// Builds a graph on `n` nodes from an edge iterator.
    ///
    /// Duplicate edges (in either orientation) collapse into one. Self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut lists: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::NodeOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop { node: u, line: 0 });
            }
            lists[u].push(v);
            lists[v].push(u);
        }
        Ok(Self::from_lists(lists))
    }

    fn from_lists(mut lists: Vec<Vec<usize>>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for list in lists.iter_mut() {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        Graph { offsets, targets }
    }

    /// The graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Sorted neighbor list of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degree_vector(&self) -> Vec<usize> {
        (0..self.node_count()).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.node_count())
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count() && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Graph obtained by renaming node `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, GraphError> {
        let n = self.node_count();
        Graph::from_edges(n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Disjoint union; nodes of `other` are shifted by `self.node_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.node_count();
        let mut lists: Vec<Vec<usize>> = (0..shift).map(|v| self.neighbors(v).to_vec()).collect();
        lists.extend(
            (0..other.node_count()).map(|v| other.neighbors(v).iter().map(|w| w + shift).collect()),
        );
        Graph::from_lists(lists)
    }

    /// Parses the edge-list text format: one `u v` pair per line, `#`
    /// comments and blank lines ignored. The node set is `0..=max index`.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        let mut n = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let node = |tok: Option<&str>| -> Result<usize, GraphError> {
                let tok = tok.ok_or_else(|| GraphError::Parse {
                    line: line_no,
                    msg: "expected two node indices".into(),
                })?;
                tok.parse::<usize>().map_err(|_| GraphError::Parse {
                    line: line_no,
                    msg: format!("`{tok}` is not a nonnegative integer"),
                })
            };
            let u = node(tokens.next())?;
            let v = node(tokens.next())?;
            if let Some(extra) = tokens.next() {
                return Err(GraphError::Parse {
                    line: line_no,
                    msg: format!("unexpected token `{extra}`"),
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop {
                    node: u,
                    line: line_no,
                });
            }
            n = n.max(u + 1).max(v + 1);
            edges.push((u, v));
        }
        Graph::from_edges(n, edges)
    }

    /// Serializes to the edge-list text format.
    ///
    /// Isolated nodes at the top of the index range cannot be expressed by
    /// edges alone, so a `# nodes N` comment is emitted first. Plain
    /// [`Graph::parse_edge_list`] skips it as a comment;
    /// [`Graph::from_edge_list_with_header`] honors it.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# nodes {}\n", self.node_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Like [`Graph::parse_edge_list`], but a leading `# nodes N` comment
    /// fixes the node count (so trailing isolated nodes survive a round trip).
    pub fn from_edge_list_with_header(text: &str) -> Result<Self, GraphError> {
        let parsed = Graph::parse_edge_list(text)?;
        let declared = text
            .lines()
            .map(str::trim)
            .find_map(|l| l.strip_prefix("# nodes "))
            .and_then(|rest| rest.trim().parse::<usize>().ok());
        match declared {
            Some(n) if n > parsed.node_count() => {
                Graph::from_edges(n, parsed.edges().collect::<Vec<_>>())
            }
            Some(n) if n < parsed.node_count() => Err(GraphError::Parse {
                line: 1,
                msg: format!(
                    "declared {n} nodes but edges reference {}",
                    parsed.node_count()
                ),
            }),
            _ => Ok(parsed),
        }
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.node_count(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self, GraphError> {
        Graph::from_edges(json.n, json.edges.iter().map(|e| (e[0], e[1])))
    }

    pub fn from_json_str(text: &str) -> Result<Self, GraphError> {
        let json: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        Graph::from_json(&json)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.node_count())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Interchange form `{n, edges: [[u, v], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}
