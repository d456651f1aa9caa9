//! Iterated degree sequences.
//!
//! At depth 0 a node's value is its degree; at depth `k + 1` it is the
//! multiset of its neighbors' depth-`k` values. Multisets are stored sorted,
//! with shared subtrees, and every multiset carries a SHA-256 digest over its
//! sorted children so equality and ordering never walk a shared subtree.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::graph::Graph;
use crate::refinement::RefinementError;

#[derive(Debug)]
enum Node {
    Degree(usize),
    Multiset {
        digest: [u8; 32],
        items: Vec<Arc<Node>>,
    },
}

impl Node {
    fn digest(&self) -> [u8; 32] {
        match self {
            Node::Degree(d) => {
                let mut h = Sha256::new();
                h.update(b"D");
                h.update((*d as u64).to_le_bytes());
                h.finalize().into()
            }
            Node::Multiset { digest, .. } => *digest,
        }
    }

    fn multiset(mut items: Vec<Arc<Node>>) -> Node {
        items.sort();
        let mut h = Sha256::new();
        h.update(b"M");
        h.update((items.len() as u64).to_le_bytes());
        for item in &items {
            h.update(item.digest());
        }
        Node::Multiset {
            digest: h.finalize().into(),
            items,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Degree(d) => write!(f, "{d}"),
            Node::Multiset { items, .. } => {
                f.write_str("{")?;
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    item.write(f)?;
                }
                f.write_str("}")
            }
        }
    }
}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Node::Degree(a), Node::Degree(b)) => a.cmp(b),
            (Node::Degree(_), Node::Multiset { .. }) => Ordering::Less,
            (Node::Multiset { .. }, Node::Degree(_)) => Ordering::Greater,
            (
                Node::Multiset {
                    digest: da,
                    items: a,
                },
                Node::Multiset {
                    digest: db,
                    items: b,
                },
            ) => {
                if da == db {
                    return Ordering::Equal;
                }
                // first differing child decides; equal children exit on the digest check
                a.iter().cmp(b.iter())
            }
        }
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl Hash for Node {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.digest().hash(state);
    }
}

/// Depth-truncated iterated degree of one node.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IteratedDegree {
    depth: usize,
    root: Arc<Node>,
}

impl IteratedDegree {
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// The plain degree, for depth-0 values.
    pub fn as_degree(&self) -> Option<usize> {
        match *self.root {
            Node::Degree(d) => Some(d),
            Node::Multiset { .. } => None,
        }
    }

    /// Number of elements in the outer multiset (the node's degree), or the
    /// degree itself at depth 0.
    pub fn outer_len(&self) -> usize {
        match &*self.root {
            Node::Degree(d) => *d,
            Node::Multiset { items, .. } => items.len(),
        }
    }

    /// Hex digest identifying the value.
    pub fn fingerprint(&self) -> String {
        self.root
            .digest()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

/// Nested-brace rendering such as `{{2,2},{2,2}}`. The text grows like
/// `degree^depth`, so this is meant for shallow values.
impl fmt::Display for IteratedDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.write(f)
    }
}

/// Iterated degrees of every node at the given depth.
pub fn iterated_degrees(g: &Graph, depth: usize) -> Vec<IteratedDegree> {
    let n = g.node_count();
    let mut level: Vec<Arc<Node>> = (0..n)
        .map(|v| Arc::new(Node::Degree(g.degree(v))))
        .collect();
    for _ in 0..depth {
        level = (0..n)
            .map(|v| {
                Arc::new(Node::multiset(
                    g.neighbors(v).iter().map(|&w| level[w].clone()).collect(),
                ))
            })
            .collect();
    }
    level
        .into_iter()
        .map(|root| IteratedDegree { depth, root })
        .collect()
}

pub fn iterated_degree(
    g: &Graph,
    node: usize,
    depth: usize,
) -> Result<IteratedDegree, RefinementError> {
    if node >= g.node_count() {
        return Err(RefinementError::NodeOutOfRange {
            node,
            n: g.node_count(),
        });
    }
    Ok(iterated_degrees(g, depth).swap_remove(node))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::generate;

    #[test]
    fn path3_center_depth1() {
        let g = generate("path", &[3.0], None).unwrap();
        let v = iterated_degree(&g, 1, 1).unwrap();
        assert_eq!(v.to_string(), "{1,1}");
        assert_eq!(v.outer_len(), 2);
    }

    #[test]
    fn cycle4_depth2() {
        let g = generate("cycle", &[4.0], None).unwrap();
        for v in 0..4 {
            assert_eq!(
                iterated_degree(&g, v, 2).unwrap().to_string(),
                "{{2,2},{2,2}}"
            );
        }
    }

    #[test]
    fn depth_zero_is_degree() {
        let g = generate("star", &[3.0], None).unwrap();
        for v in 0..4 {
            let d = iterated_degree(&g, v, 0).unwrap();
            assert_eq!(d.as_degree(), Some(g.degree(v)));
            assert_eq!(d.depth(), 0);
        }
    }

    #[test]
    fn out_of_range_node() {
        let g = generate("path", &[3.0], None).unwrap();
        assert_eq!(
            iterated_degree(&g, 3, 1),
            Err(RefinementError::NodeOutOfRange { node: 3, n: 3 })
        );
    }

    #[test]
    fn mixed_multiset_renders_sorted() {
        // 0-1, 1-2, 1-3, 3-4: node 1 has neighbors of degree 1, 1, 2
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(iterated_degree(&g, 1, 1).unwrap().to_string(), "{1,1,2}");
        assert_eq!(
            iterated_degree(&g, 3, 2).unwrap().to_string(),
            "{{1,1,2},{2}}"
        );
    }

    #[test]
    fn equality_ignores_construction_path() {
        // values computed from independent runs compare structurally
        let g = generate("cycle", &[6.0], None).unwrap();
        let a = iterated_degree(&g, 0, 5).unwrap();
        let b = iterated_degree(&g, 3, 5).unwrap();
        assert_eq!(a, b);
        let h = generate("path", &[6.0], None).unwrap();
        assert_ne!(a, iterated_degree(&h, 2, 5).unwrap());
    }
}
