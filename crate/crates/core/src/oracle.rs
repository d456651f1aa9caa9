//! Brute-force references used to cross-check the fast algorithms.
//!
//! Nothing here is meant for large inputs: walk sets grow like
//! `degree^length` and the automorphism search is exponential.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::graph::Graph;
use crate::refinement::Partition;

/// Default cap on the number of walks enumerated from one node.
pub const DEFAULT_WALK_LIMIT: usize = 1_000_000;

/// Largest graph accepted by [`automorphism_orbits`].
pub const MAX_ORBIT_NODES: usize = 12;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("more than {limit} walks of length {length} start at node {origin}")]
    TooManyWalks {
        origin: usize,
        length: usize,
        limit: usize,
    },
    #[error("node {node} out of range 0..{n}")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("automorphism search supports at most {max} nodes, got {n}")]
    TooLarge { n: usize, max: usize },
}

/// All walks of a fixed length from one node. Walks may revisit nodes; only
/// consecutive entries need to be adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSet {
    pub origin: usize,
    pub length: usize,
    /// Lexicographically sorted, each of length `length + 1`.
    pub paths: Vec<Vec<usize>>,
}

impl PathSet {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

fn check_node(g: &Graph, node: usize) -> Result<(), OracleError> {
    if node >= g.node_count() {
        return Err(OracleError::NodeOutOfRange {
            node,
            n: g.node_count(),
        });
    }
    Ok(())
}

fn count_walks(
    g: &Graph,
    origin: usize,
    length: usize,
    limit: usize,
) -> Result<usize, OracleError> {
    // walks ending at each node, capped to avoid overflow
    let mut counts = vec![0usize; g.node_count()];
    counts[origin] = 1;
    for _ in 0..length {
        let mut next = vec![0usize; g.node_count()];
        for (v, &c) in counts.iter().enumerate() {
            if c > 0 {
                for &w in g.neighbors(v) {
                    next[w] = next[w].saturating_add(c);
                }
            }
        }
        counts = next;
    }
    let total = counts.iter().fold(0usize, |acc, &c| acc.saturating_add(c));
    if total > limit {
        return Err(OracleError::TooManyWalks {
            origin,
            length,
            limit,
        });
    }
    Ok(total)
}

pub fn enumerate_paths(g: &Graph, origin: usize, length: usize) -> Result<PathSet, OracleError> {
    enumerate_paths_bounded(g, origin, length, DEFAULT_WALK_LIMIT)
}

pub fn enumerate_paths_bounded(
    g: &Graph,
    origin: usize,
    length: usize,
    limit: usize,
) -> Result<PathSet, OracleError> {
    check_node(g, origin)?;
    let total = count_walks(g, origin, length, limit)?;
    let mut paths = Vec::with_capacity(total);
    let mut walk = vec![origin];
    extend_walks(g, length, &mut walk, &mut paths);
    Ok(PathSet {
        origin,
        length,
        paths,
    })
}

fn extend_walks(g: &Graph, length: usize, walk: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if walk.len() == length + 1 {
        out.push(walk.clone());
        return;
    }
    let last = *walk.last().expect("walk starts with its origin");
    // sorted neighbor lists keep the output lexicographic
    for &w in g.neighbors(last) {
        walk.push(w);
        extend_walks(g, length, walk, out);
        walk.pop();
    }
}

/// A map between walk sets, keyed by source walk.
pub type WalkMap = BTreeMap<Vec<usize>, Vec<usize>>;

/// Searches for a map from the length-`length` walks of `j` into those of
/// `i` that is injective, prefix-consistent in both directions, and
/// degree-dominating at every position.
///
/// Prefix consistency makes such a map a level-by-level embedding of `j`'s
/// walk tree into `i`'s: the children of each matched prefix go injectively
/// to children of its image. The search assigns children by plain
/// backtracking, memoized on the pair of explicit walk prefixes.
pub fn find_adapted_dominating_map(
    g: &Graph,
    j: usize,
    i: usize,
    length: usize,
) -> Result<Option<WalkMap>, OracleError> {
    check_node(g, j)?;
    check_node(g, i)?;
    count_walks(g, j, length, DEFAULT_WALK_LIMIT)?;
    count_walks(g, i, length, DEFAULT_WALK_LIMIT)?;
    if g.neighbors(j).is_empty() && length > 0 {
        // no walks from j: the empty map qualifies
        return Ok(Some(WalkMap::new()));
    }
    let mut search = EmbeddingSearch {
        g,
        length,
        memo: HashMap::new(),
    };
    let found = search.embed(&[j], &[i]);
    Ok(found.map(|leaves| leaves.into_iter().collect()))
}

pub fn adapted_dominating_map_exists(
    g: &Graph,
    j: usize,
    i: usize,
    length: usize,
) -> Result<bool, OracleError> {
    Ok(find_adapted_dominating_map(g, j, i, length)?.is_some())
}

type LeafPairs = Vec<(Vec<usize>, Vec<usize>)>;

struct EmbeddingSearch<'g> {
    g: &'g Graph,
    length: usize,
    memo: HashMap<(Vec<usize>, Vec<usize>), Option<LeafPairs>>,
}

impl EmbeddingSearch<'_> {
    /// Embeds the subtree below source prefix `p` into the subtree below
    /// target prefix `q`, returning the induced map on full-length walks.
    fn embed(&mut self, p: &[usize], q: &[usize]) -> Option<LeafPairs> {
        let key = (p.to_vec(), q.to_vec());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let result = self.embed_uncached(p, q);
        self.memo.insert(key, result.clone());
        result
    }

    fn embed_uncached(&mut self, p: &[usize], q: &[usize]) -> Option<LeafPairs> {
        let (pe, qe) = (*p.last()?, *q.last()?);
        if self.g.degree(qe) < self.g.degree(pe) {
            return None;
        }
        if p.len() == self.length + 1 {
            return Some(vec![(p.to_vec(), q.to_vec())]);
        }
        let sources: Vec<usize> = self.g.neighbors(pe).to_vec();
        let targets: Vec<usize> = self.g.neighbors(qe).to_vec();
        if sources.len() > targets.len() {
            return None;
        }
        let mut used = vec![false; targets.len()];
        let mut acc = Vec::new();
        if self.assign(p, q, &sources, &targets, 0, &mut used, &mut acc) {
            Some(acc)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn assign(
        &mut self,
        p: &[usize],
        q: &[usize],
        sources: &[usize],
        targets: &[usize],
        next: usize,
        used: &mut [bool],
        acc: &mut LeafPairs,
    ) -> bool {
        if next == sources.len() {
            return true;
        }
        let mut child_p = p.to_vec();
        child_p.push(sources[next]);
        for t in 0..targets.len() {
            if used[t] {
                continue;
            }
            let mut child_q = q.to_vec();
            child_q.push(targets[t]);
            if let Some(leaves) = self.embed(&child_p, &child_q) {
                let mark = acc.len();
                acc.extend(leaves);
                used[t] = true;
                if self.assign(p, q, sources, targets, next + 1, used, acc) {
                    return true;
                }
                used[t] = false;
                acc.truncate(mark);
            }
        }
        false
    }
}

/// Checks every defining condition of an adapted dominating map directly:
/// domain is exactly the walks of `j`, images are walks of `i`, agreement and
/// disagreement of every prefix are preserved, the map is injective, and
/// degrees dominate position by position.
pub fn verify_adapted_dominating_map(
    g: &Graph,
    j: usize,
    i: usize,
    length: usize,
    map: &WalkMap,
) -> Result<bool, OracleError> {
    let from = enumerate_paths(g, j, length)?;
    let to = enumerate_paths(g, i, length)?;
    if map.len() != from.len() || !from.paths.iter().all(|p| map.contains_key(p)) {
        return Ok(false);
    }
    if !map.values().all(|img| to.paths.binary_search(img).is_ok()) {
        return Ok(false);
    }
    for (p, fp) in map {
        if p.iter().zip(fp).any(|(&a, &b)| g.degree(b) < g.degree(a)) {
            return Ok(false);
        }
    }
    let entries: Vec<(&Vec<usize>, &Vec<usize>)> = map.iter().collect();
    for (a, (p, fp)) in entries.iter().enumerate() {
        for (q, fq) in &entries[a + 1..] {
            if fp == fq {
                return Ok(false);
            }
            for m in 0..=length {
                if (p[..=m] == q[..=m]) != (fp[..=m] == fq[..=m]) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Orbits of the automorphism group, by exhaustive search over vertex
/// permutations. Partial assignments are abandoned as soon as they break
/// adjacency among the already-placed nodes.
pub fn automorphism_orbits(g: &Graph) -> Result<Partition, OracleError> {
    let n = g.node_count();
    if n > MAX_ORBIT_NODES {
        return Err(OracleError::TooLarge {
            n,
            max: MAX_ORBIT_NODES,
        });
    }
    let mut orbit = (0..n).collect::<Vec<usize>>();
    for v in 0..n {
        if orbit[v] != v {
            continue;
        }
        #[allow(clippy::needless_range_loop)]
        for w in v + 1..n {
            if orbit[w] == w && automorphism_mapping(g, v, w).is_some() {
                orbit[w] = v;
            }
        }
    }
    Ok(Partition::from_labels(&orbit))
}

/// Some automorphism sending `from` to `to`, as `perm[v] = image of v`.
pub fn automorphism_mapping(g: &Graph, from: usize, to: usize) -> Option<Vec<usize>> {
    let n = g.node_count();
    if g.degree(from) != g.degree(to) {
        return None;
    }
    let mut perm = vec![usize::MAX; n];
    let mut taken = vec![false; n];
    perm[from] = to;
    taken[to] = true;
    let order: Vec<usize> = std::iter::once(from)
        .chain((0..n).filter(|&v| v != from))
        .collect();
    if place(g, &order, 1, &mut perm, &mut taken) {
        Some(perm)
    } else {
        None
    }
}

fn place(g: &Graph, order: &[usize], k: usize, perm: &mut [usize], taken: &mut [bool]) -> bool {
    if k == order.len() {
        return true;
    }
    let v = order[k];
    for image in 0..g.node_count() {
        if taken[image] || g.degree(image) != g.degree(v) {
            continue;
        }
        let consistent = order[..k]
            .iter()
            .all(|&u| g.has_edge(u, v) == g.has_edge(perm[u], image));
        if !consistent {
            continue;
        }
        perm[v] = image;
        taken[image] = true;
        if place(g, order, k + 1, perm, taken) {
            return true;
        }
        taken[image] = false;
        perm[v] = usize::MAX;
    }
    false
}

/// Whether `perm` is an automorphism of `g`.
pub fn is_automorphism(g: &Graph, perm: &[usize]) -> bool {
    let n = g.node_count();
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    perm.len() == n && g.edges().all(|(u, v)| g.has_edge(perm[u], perm[v]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::generate;

    fn named(name: &str, params: &[f64]) -> Graph {
        generate(name, params, Some(5)).unwrap()
    }

    #[test]
    fn k2_walks() {
        let g = named("complete", &[2.0]);
        assert_eq!(
            enumerate_paths(&g, 0, 2).unwrap().paths,
            vec![vec![0, 1, 0]]
        );
    }

    #[test]
    fn path3_center_walks() {
        let g = named("path", &[3.0]);
        assert_eq!(
            enumerate_paths(&g, 1, 1).unwrap().paths,
            vec![vec![1, 0], vec![1, 2]]
        );
    }

    #[test]
    fn cycle4_walk_counts_double() {
        let g = named("cycle", &[4.0]);
        for len in 0..8 {
            let ps = enumerate_paths(&g, 2, len).unwrap();
            assert_eq!(ps.len(), 1 << len);
            assert!(ps.paths.windows(2).all(|w| w[0] < w[1]));
            assert!(ps
                .paths
                .iter()
                .all(|p| p[0] == 2 && p.windows(2).all(|e| g.has_edge(e[0], e[1]))));
        }
    }

    #[test]
    fn walk_limit() {
        let g = named("complete", &[5.0]);
        assert_eq!(
            enumerate_paths_bounded(&g, 0, 3, 63),
            Err(OracleError::TooManyWalks {
                origin: 0,
                length: 3,
                limit: 63
            })
        );
        assert_eq!(enumerate_paths_bounded(&g, 0, 3, 64).unwrap().len(), 64);
    }

    #[test]
    fn identity_map_always_exists() {
        let g = named("erdos_renyi", &[6.0, 0.5]);
        for v in 0..6 {
            for len in 0..=3 {
                let map = find_adapted_dominating_map(&g, v, v, len)
                    .unwrap()
                    .expect("identity");
                assert!(verify_adapted_dominating_map(&g, v, v, len, &map).unwrap());
            }
        }
    }

    #[test]
    fn triangle_dominates_edge_at_depth_two() {
        let g = named("disjoint_union_cliques", &[3.0, 2.0]);
        let map = find_adapted_dominating_map(&g, 3, 0, 2)
            .unwrap()
            .expect("embedding exists");
        assert!(verify_adapted_dominating_map(&g, 3, 0, 2, &map).unwrap());
        assert!(!adapted_dominating_map_exists(&g, 0, 3, 1).unwrap());
    }

    #[test]
    fn path3_center_not_below_leaf() {
        let g = named("path", &[3.0]);
        assert!(!adapted_dominating_map_exists(&g, 1, 0, 1).unwrap());
    }

    #[test]
    fn verifier_rejects_broken_maps() {
        let g = named("cycle", &[4.0]);
        let mut map = find_adapted_dominating_map(&g, 0, 1, 2).unwrap().unwrap();
        assert!(verify_adapted_dominating_map(&g, 0, 1, 2, &map).unwrap());
        // collapse two images: loses injectivity
        let keys: Vec<Vec<usize>> = map.keys().cloned().collect();
        let first = map[&keys[0]].clone();
        map.insert(keys[1].clone(), first);
        assert!(!verify_adapted_dominating_map(&g, 0, 1, 2, &map).unwrap());
    }

    #[test]
    fn orbits_examples() {
        assert_eq!(
            automorphism_orbits(&named("cycle", &[4.0]))
                .unwrap()
                .num_classes(),
            1
        );
        assert_eq!(
            automorphism_orbits(&named("path", &[3.0]))
                .unwrap()
                .classes(),
            &[vec![0, 2], vec![1]]
        );
    }

    #[test]
    fn frucht_is_asymmetric() {
        let p = automorphism_orbits(&named("frucht", &[])).unwrap();
        assert_eq!(p.num_classes(), 12);
    }

    #[test]
    fn asymmetric_tree_has_trivial_orbits() {
        // spider with legs of length 1, 2, 3
        let g = Graph::from_edges(7, [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)]).unwrap();
        assert_eq!(automorphism_orbits(&g).unwrap(), Partition::discrete(7));
    }

    #[test]
    fn mappings_are_automorphisms() {
        let g = named("complete_bipartite", &[2.0, 3.0]);
        let perm = automorphism_mapping(&g, 2, 4).unwrap();
        assert_eq!(perm[2], 4);
        assert!(is_automorphism(&g, &perm));
        assert!(automorphism_mapping(&g, 0, 2).is_none());
    }

    #[test]
    fn orbit_size_limit() {
        let g = named("path", &[13.0]);
        assert_eq!(
            automorphism_orbits(&g),
            Err(OracleError::TooLarge { n: 13, max: 12 })
        );
    }
}
