//! Bipartite matching for the injective-neighbor-map test.

use std::collections::VecDeque;

const NIL: usize = usize::MAX;
const INF: usize = usize::MAX;

/// A maximum matching between left vertices `0..adj.len()` and right vertices
/// `0..n_right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub left_to_right: Vec<Option<usize>>,
    pub size: usize,
}

/// Hopcroft–Karp maximum bipartite matching. `adj[u]` lists the right
/// vertices adjacent to left vertex `u`.
pub fn hopcroft_karp(adj: &[Vec<usize>], n_right: usize) -> Matching {
    let n_left = adj.len();
    let mut match_l = vec![NIL; n_left];
    let mut match_r = vec![NIL; n_right];
    let mut dist = vec![INF; n_left];
    let mut size = 0;

    loop {
        // BFS layers from free left vertices
        let mut queue = VecDeque::new();
        for u in 0..n_left {
            if match_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_r[v];
                if w == NIL {
                    found = true;
                } else if dist[w] == INF {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        for u in 0..n_left {
            if match_l[u] == NIL && augment(u, adj, &mut match_l, &mut match_r, &mut dist) {
                size += 1;
            }
        }
    }

    Matching {
        left_to_right: match_l
            .into_iter()
            .map(|v| (v != NIL).then_some(v))
            .collect(),
        size,
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &v in &adj[u] {
        let w = match_r[v];
        if w == NIL || (dist[w] == dist[u] + 1 && augment(w, adj, match_l, match_r, dist)) {
            match_l[u] = v;
            match_r[v] = u;
            return true;
        }
    }
    dist[u] = INF;
    false
}

/// Whether an injective map `f: sources → targets` exists with
/// `dominates(f(s), s)` for every source `s`.
///
/// Equivalently, whether the bipartite graph with an edge `(s, t)` whenever
/// `dominates(t, s)` has a matching saturating all sources.
pub fn injective_cover_exists<F>(sources: &[usize], targets: &[usize], dominates: F) -> bool
where
    F: Fn(usize, usize) -> bool,
{
    if sources.len() > targets.len() {
        return false;
    }
    let mut adj = Vec::with_capacity(sources.len());
    for &s in sources {
        let row: Vec<usize> = targets
            .iter()
            .enumerate()
            .filter(|&(_, &t)| dominates(t, s))
            .map(|(k, _)| k)
            .collect();
        if row.is_empty() {
            return false;
        }
        adj.push(row);
    }
    hopcroft_karp(&adj, targets.len()).size == sources.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_edge() {
        assert!(injective_cover_exists(&[0], &[1], |t, s| (t, s) == (1, 0)));
    }

    #[test]
    fn pigeonhole() {
        assert!(!injective_cover_exists(&[0, 1], &[2], |_, _| true));
    }

    #[test]
    fn hall_violation() {
        // sources x1 = 0, x2 = 1; targets y1 = 10, y2 = 11; only y1 dominates anything
        assert!(!injective_cover_exists(&[0, 1], &[10, 11], |t, _| t == 10));
    }

    #[test]
    fn empty_sources_always_covered() {
        assert!(injective_cover_exists(&[], &[], |_, _| false));
        assert!(injective_cover_exists(&[], &[3], |_, _| false));
    }

    #[test]
    fn needs_augmenting_path() {
        // greedy 0->a blocks 1; augmenting path reroutes 0 to b
        let adj = vec![vec![0, 1], vec![0]];
        let m = hopcroft_karp(&adj, 2);
        assert_eq!(m.size, 2);
        assert_eq!(m.left_to_right, vec![Some(1), Some(0)]);
    }

    fn brute_max_matching(adj: &[Vec<usize>], used: &mut Vec<bool>, u: usize) -> usize {
        if u == adj.len() {
            return 0;
        }
        let mut best = brute_max_matching(adj, used, u + 1);
        for &v in &adj[u] {
            if !used[v] {
                used[v] = true;
                best = best.max(1 + brute_max_matching(adj, used, u + 1));
                used[v] = false;
            }
        }
        best
    }

    proptest! {
        #[test]
        fn matches_brute_force(
            n_left in 0usize..6,
            n_right in 0usize..6,
            bits in proptest::collection::vec(any::<bool>(), 36),
        ) {
            let adj: Vec<Vec<usize>> = (0..n_left)
                .map(|u| (0..n_right).filter(|&v| bits[u * 6 + v]).collect())
                .collect();
            let m = hopcroft_karp(&adj, n_right);
            let mut used = vec![false; n_right];
            prop_assert_eq!(m.size, brute_max_matching(&adj, &mut used, 0));
            // the returned matching is valid
            let mut seen = vec![false; n_right];
            for (u, v) in m.left_to_right.iter().enumerate() {
                if let Some(v) = *v {
                    prop_assert!(adj[u].contains(&v));
                    prop_assert!(!seen[v]);
                    seen[v] = true;
                }
            }
        }
    }
}
