//! The degree-dominance preorder on nodes.
//!
//! `i ⪰ j` holds when some injective map sends each neighbor `k` of `j` to a
//! neighbor `f(k)` of `i` with `f(k) ⪰ k`. The relation is the greatest one
//! with this property, so it is computed by shrinking a starting relation
//! until every remaining pair has such a witness map.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::matching::injective_cover_exists;
use crate::refinement::Partition;

#[derive(Debug, Error, PartialEq)]
pub enum PreorderError {
    #[error("relation is not reflexive at node {0}")]
    NotReflexive(usize),
    #[error("relation is not transitive: {i} ⪰ {k} ⪰ {j} but not {i} ⪰ {j}")]
    NotTransitive { i: usize, k: usize, j: usize },
    #[error("{i} ⪰ {j} but deg({i}) < deg({j})")]
    DegreeInconsistent { i: usize, j: usize },
    #[error("relation has {relation} nodes but {other} were expected")]
    SizeMismatch { relation: usize, other: usize },
    #[error("pair ({0}, {1}) out of range")]
    PairOutOfRange(usize, usize),
}

/// Boolean relation on `0..n`; `dominates(i, j)` reads `i ⪰ j`.
#[derive(Clone, PartialEq, Eq)]
pub struct PreorderRelation {
    rows: Vec<FixedBitSet>,
    iterations: usize,
}

impl PreorderRelation {
    /// The identity relation.
    pub fn identity(n: usize) -> Self {
        PreorderRelation::from_pairs(n, (0..n).map(|i| (i, i))).expect("diagonal is in range")
    }

    /// Relation holding exactly on the given pairs (the diagonal is not added).
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self, PreorderError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for (i, j) in pairs {
            if i >= n || j >= n {
                return Err(PreorderError::PairOutOfRange(i, j));
            }
            rows[i].insert(j);
        }
        Ok(PreorderRelation {
            rows,
            iterations: 0,
        })
    }

    pub fn node_count(&self) -> usize {
        self.rows.len()
    }

    /// Fixed-point passes used to compute the relation (0 for hand-built ones).
    pub fn iterations(&self) -> usize {
        self.iterations
    }

    #[inline]
    pub fn dominates(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn equivalent(&self, i: usize, j: usize) -> bool {
        self.dominates(i, j) && self.dominates(j, i)
    }

    pub fn strictly_dominates(&self, i: usize, j: usize) -> bool {
        self.dominates(i, j) && !self.dominates(j, i)
    }

    /// Nodes dominated by `i`.
    pub fn dominated_by(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[i].ones()
    }

    /// Off-diagonal pairs `(i, j)` with `i ⪰ j`, in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.ones().filter(move |&j| j != i).map(move |j| (i, j)))
    }

    pub fn pair_count(&self) -> usize {
        self.pairs().count()
    }

    /// Checks reflexivity and transitivity.
    pub fn check_axioms(&self) -> Result<(), PreorderError> {
        for (i, row) in self.rows.iter().enumerate() {
            if !row.contains(i) {
                return Err(PreorderError::NotReflexive(i));
            }
        }
        for (i, row) in self.rows.iter().enumerate() {
            for k in row.ones() {
                if !self.rows[k].is_subset(row) {
                    let j = self.rows[k].difference(row).next().expect("not a subset");
                    return Err(PreorderError::NotTransitive { i, k, j });
                }
            }
        }
        Ok(())
    }

    /// Checks that `i ⪰ j` implies `deg(i) ≥ deg(j)`.
    pub fn check_degree_consistency(&self, g: &Graph) -> Result<(), PreorderError> {
        if g.node_count() != self.node_count() {
            return Err(PreorderError::SizeMismatch {
                relation: self.node_count(),
                other: g.node_count(),
            });
        }
        match self.pairs().find(|&(i, j)| g.degree(i) < g.degree(j)) {
            Some((i, j)) => Err(PreorderError::DegreeInconsistent { i, j }),
            None => Ok(()),
        }
    }

    /// Whether every pair has an injective neighbor witness inside the
    /// relation itself.
    pub fn is_inductive(&self, g: &Graph) -> bool {
        (0..self.node_count()).all(|i| {
            self.dominated_by(i)
                .all(|j| has_witness(g, &self.rows, i, j))
        })
    }

    pub fn to_json(&self) -> RelationJson {
        RelationJson {
            n: self.node_count(),
            pairs: self.pairs().map(|(i, j)| [i, j]).collect(),
        }
    }

    /// Reads the JSON form; the diagonal is implied.
    pub fn from_json(json: &RelationJson) -> Result<Self, PreorderError> {
        PreorderRelation::from_pairs(
            json.n,
            (0..json.n)
                .map(|i| (i, i))
                .chain(json.pairs.iter().map(|p| (p[0], p[1]))),
        )
    }
}

impl std::fmt::Debug for PreorderRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PreorderRelation")
            .field("n", &self.node_count())
            .field("pairs", &self.pairs().collect::<Vec<_>>())
            .field("iterations", &self.iterations)
            .finish()
    }
}

/// `{n, pairs: [[i, j], ...]}` listing `i ⪰ j` for `i ≠ j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub n: usize,
    pub pairs: Vec<[usize; 2]>,
}

fn has_witness(g: &Graph, rows: &[FixedBitSet], i: usize, j: usize) -> bool {
    injective_cover_exists(g.neighbors(j), g.neighbors(i), |target, source| {
        rows[target].contains(source)
    })
}

fn degree_relation(g: &Graph) -> Vec<FixedBitSet> {
    let n = g.node_count();
    (0..n)
        .map(|i| {
            let mut row = FixedBitSet::with_capacity(n);
            row.extend((0..n).filter(|&j| g.degree(i) >= g.degree(j)));
            row
        })
        .collect()
}

fn off_diagonal(rows: &[FixedBitSet]) -> Vec<(usize, usize)> {
    rows.iter()
        .enumerate()
        .flat_map(|(i, row)| row.ones().filter(move |&j| j != i).map(move |j| (i, j)))
        .collect()
}

/// Runs passes until no pair is removed. Every pass checks its candidate
/// pairs against the relation as it stood at the start of the pass, then
/// removes the failures together. `next_candidates` picks what the following
/// pass rechecks.
fn shrink_to_fixed_point<F>(g: &Graph, mut next_candidates: F) -> PreorderRelation
where
    F: FnMut(&[FixedBitSet], &[(usize, usize)]) -> Vec<(usize, usize)>,
{
    // every pair of the greatest fixed point already satisfies the degree bound
    let mut rows = degree_relation(g);
    let mut candidates = off_diagonal(&rows);
    let mut passes = 0;
    while !candidates.is_empty() {
        passes += 1;
        let removed: Vec<(usize, usize)> = candidates
            .iter()
            .copied()
            .filter(|&(i, j)| !has_witness(g, &rows, i, j))
            .collect();
        if removed.is_empty() {
            break;
        }
        for &(i, j) in &removed {
            rows[i].set(j, false);
        }
        candidates = next_candidates(&rows, &removed);
    }
    PreorderRelation {
        rows,
        iterations: passes,
    }
}

/// Computes `⪰` as the greatest fixed point of the injective-witness
/// operator. After removing `(u, v)`, only pairs `(i, j)` with `u ~ i` and
/// `v ~ j` can lose their witness, so only those are rechecked.
pub fn max_inductive_preorder(g: &Graph) -> PreorderRelation {
    let n = g.node_count();
    let mut queued = vec![FixedBitSet::with_capacity(n); n];
    shrink_to_fixed_point(g, |rows, removed| {
        let mut next = Vec::new();
        for &(u, v) in removed {
            for &i in g.neighbors(u) {
                for &j in g.neighbors(v) {
                    if i != j && rows[i].contains(j) && !queued[i].put(j) {
                        next.push((i, j));
                    }
                }
            }
        }
        for &(i, j) in &next {
            queued[i].set(j, false);
        }
        next
    })
}

/// Same fixed point, rechecking every surviving pair on every pass.
pub fn max_inductive_preorder_full_rescan(g: &Graph) -> PreorderRelation {
    shrink_to_fixed_point(g, |rows, _| off_diagonal(rows))
}

/// Equivalence classes of mutual dominance, canonically ordered.
pub fn equivalence_classes(r: &PreorderRelation) -> Result<Partition, PreorderError> {
    r.check_axioms()?;
    let labels: Vec<usize> = (0..r.node_count())
        .map(|i| {
            (0..=i)
                .find(|&j| r.equivalent(i, j))
                .expect("reflexive relation finds i itself")
        })
        .collect();
    Ok(Partition::from_labels(&labels))
}

/// The order induced on equivalence classes, transitively reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condensation {
    pub classes: Partition,
    /// `(a, b)`: class `a` strictly dominates class `b` with nothing in between.
    pub edges: Vec<(usize, usize)>,
}

impl Condensation {
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph condensation {\n");
        for (c, members) in self.classes.classes().iter().enumerate() {
            let names: Vec<String> = members.iter().map(usize::to_string).collect();
            out.push_str(&format!("  c{c} [label=\"{{{}}}\"];\n", names.join(",")));
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!("  c{a} -> c{b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

pub fn condensation(r: &PreorderRelation) -> Result<Condensation, PreorderError> {
    let classes = equivalence_classes(r)?;
    let k = classes.num_classes();
    let rep: Vec<usize> = classes.classes().iter().map(|c| c[0]).collect();
    let above = |a: usize, b: usize| a != b && r.dominates(rep[a], rep[b]);
    let mut edges = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if above(a, b) && !(0..k).any(|c| above(a, c) && above(c, b)) {
                edges.push((a, b));
            }
        }
    }
    Ok(Condensation { classes, edges })
}
