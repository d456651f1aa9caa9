//! Node partitions, color refinement, and equitable-partition quotients.

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq)]
pub enum RefinementError {
    #[error("partition covers {partition} nodes but the graph has {graph}")]
    SizeMismatch { graph: usize, partition: usize },
    #[error(
        "partition is not equitable: nodes {a} and {b} of class {class} see different class counts"
    )]
    NotEquitable { class: usize, a: usize, b: usize },
    #[error("invalid partition: {0}")]
    Invalid(String),
    #[error("node {node} out of range 0..{n}")]
    NodeOutOfRange { node: usize, n: usize },
}

/// A partition of `0..n` into classes `0..K`.
///
/// Classes are numbered in order of their smallest member, so two partitions
/// describing the same equivalence relation compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Partition {
    /// Groups nodes by equal labels. Node `v` gets label `labels[v]`.
    pub fn from_labels<L: Eq + Hash>(labels: &[L]) -> Self {
        let mut ids: HashMap<&L, usize> = HashMap::with_capacity(labels.len());
        let mut class_of = Vec::with_capacity(labels.len());
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (v, label) in labels.iter().enumerate() {
            let next = ids.len();
            let c = *ids.entry(label).or_insert(next);
            if c == classes.len() {
                classes.push(Vec::new());
            }
            classes[c].push(v);
            class_of.push(c);
        }
        Partition { class_of, classes }
    }

    /// Builds a partition from explicit classes, which must cover `0..n`
    /// exactly once. Empty classes are rejected.
    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Self, RefinementError> {
        let mut label = vec![usize::MAX; n];
        for (c, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(RefinementError::Invalid(format!("class {c} is empty")));
            }
            for &v in class {
                if v >= n {
                    return Err(RefinementError::NodeOutOfRange { node: v, n });
                }
                if label[v] != usize::MAX {
                    return Err(RefinementError::Invalid(format!("node {v} appears twice")));
                }
                label[v] = c;
            }
        }
        if let Some(v) = label.iter().position(|&c| c == usize::MAX) {
            return Err(RefinementError::Invalid(format!("node {v} is not covered")));
        }
        Ok(Partition::from_labels(&label))
    }

    /// Every node in its own class.
    pub fn discrete(n: usize) -> Self {
        Partition {
            class_of: (0..n).collect(),
            classes: (0..n).map(|v| vec![v]).collect(),
        }
    }

    /// All nodes in one class (no classes when `n == 0`).
    pub fn unit(n: usize) -> Self {
        Partition::from_labels(&vec![(); n])
    }

    pub fn node_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// True when every class of `finer` lies inside a single class of `self`.
    pub fn is_coarser_or_equal(&self, finer: &Partition) -> bool {
        self.node_count() == finer.node_count()
            && finer.classes.iter().all(|class| {
                class
                    .iter()
                    .all(|&v| self.class_of[v] == self.class_of[class[0]])
            })
    }

    pub fn to_json(&self) -> PartitionJson {
        PartitionJson {
            k: self.num_classes(),
            class_of: self.class_of.clone(),
        }
    }

    pub fn from_json(json: &PartitionJson) -> Result<Self, RefinementError> {
        let p = Partition::from_labels(&json.class_of);
        if p.num_classes() != json.k {
            return Err(RefinementError::Invalid(format!(
                "K = {} but class_of uses {} classes",
                json.k,
                p.num_classes()
            )));
        }
        Ok(p)
    }
}

/// `{K, class_of: [...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    #[serde(rename = "K")]
    pub k: usize,
    pub class_of: Vec<usize>,
}

/// Per-class neighbor counts of an equitable partition.
///
/// `s[c][c2]` is the number of neighbors in class `c2` of any node in class `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientMatrix {
    #[serde(rename = "K")]
    pub k: usize,
    pub sizes: Vec<usize>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<usize>>,
}

impl QuotientMatrix {
    /// Common degree of the nodes in class `c`.
    pub fn class_degree(&self, c: usize) -> usize {
        self.s[c].iter().sum()
    }
}

/// Outcome of [`color_refinement_traced`]: the stable partition and the class
/// count after each refinement pass (starting from the unit partition).
#[derive(Clone, Debug)]
pub struct RefinementTrace {
    pub partition: Partition,
    pub class_counts: Vec<usize>,
}

impl RefinementTrace {
    /// Number of passes that split at least one class.
    pub fn splitting_passes(&self) -> usize {
        self.class_counts.len().saturating_sub(1)
    }
}

/// Coarsest equitable partition of `g`.
pub fn color_refinement(g: &Graph) -> Partition {
    color_refinement_traced(g).partition
}

/// Color refinement from the unit partition. Each pass recolors every node by
/// its current class together with the sorted multiset of its neighbors'
/// classes, and the loop stops at the first pass that splits nothing.
pub fn color_refinement_traced(g: &Graph) -> RefinementTrace {
    let n = g.node_count();
    let mut current = Partition::unit(n);
    let mut class_counts = vec![current.num_classes()];
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = g
                    .neighbors(v)
                    .iter()
                    .map(|&w| current.class_of(w))
                    .collect();
                around.sort_unstable();
                (current.class_of(v), around)
            })
            .collect();
        let next = Partition::from_labels(&signatures);
        if next.num_classes() == current.num_classes() {
            break;
        }
        class_counts.push(next.num_classes());
        current = next;
    }
    RefinementTrace {
        partition: current,
        class_counts,
    }
}

fn check_size(g: &Graph, p: &Partition) -> Result<(), RefinementError> {
    if g.node_count() != p.node_count() {
        return Err(RefinementError::SizeMismatch {
            graph: g.node_count(),
            partition: p.node_count(),
        });
    }
    Ok(())
}

/// Neighbor count of `v` in each class of `p`.
pub fn class_counts(g: &Graph, p: &Partition, v: usize) -> Vec<usize> {
    let mut counts = vec![0; p.num_classes()];
    for &w in g.neighbors(v) {
        counts[p.class_of(w)] += 1;
    }
    counts
}

fn first_inequitable(g: &Graph, p: &Partition) -> Option<(usize, usize, usize)> {
    p.classes().iter().enumerate().find_map(|(c, class)| {
        let reference = class_counts(g, p, class[0]);
        class[1..]
            .iter()
            .find(|&&v| class_counts(g, p, v) != reference)
            .map(|&v| (c, class[0], v))
    })
}

pub fn is_equitable(g: &Graph, p: &Partition) -> Result<bool, RefinementError> {
    check_size(g, p)?;
    Ok(first_inequitable(g, p).is_none())
}

pub fn quotient_matrix(g: &Graph, p: &Partition) -> Result<QuotientMatrix, RefinementError> {
    check_size(g, p)?;
    if let Some((class, a, b)) = first_inequitable(g, p) {
        return Err(RefinementError::NotEquitable { class, a, b });
    }
    Ok(QuotientMatrix {
        k: p.num_classes(),
        sizes: p.class_sizes(),
        s: p.classes()
            .iter()
            .map(|class| class_counts(g, p, class[0]))
            .collect(),
    })
}
