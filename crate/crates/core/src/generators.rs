//! Named graph families.
//!
//! Random families draw from a ChaCha8 stream seeded by the caller, so a
//! `(name, params, seed)` triple always produces the same graph.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphError};

/// Standard 12-node, 18-edge cubic Frucht graph. Its automorphism group is trivial.
pub const FRUCHT_EDGES: [(usize, usize); 18] = [
    (0, 1),
    (0, 6),
    (0, 7),
    (1, 2),
    (1, 7),
    (2, 3),
    (2, 8),
    (3, 4),
    (3, 9),
    (4, 5),
    (4, 9),
    (5, 6),
    (5, 10),
    (6, 10),
    (7, 11),
    (8, 9),
    (8, 11),
    (10, 11),
];

pub const GENERATOR_NAMES: [&str; 10] = [
    "path",
    "cycle",
    "star",
    "complete",
    "complete_bipartite",
    "frucht",
    "random_regular",
    "erdos_renyi",
    "disjoint_union_cliques",
    "random_tree",
];

/// A parsed `name:params:seed` generator string, e.g. `cycle:4`,
/// `random_regular:12,3:42` or `erdos_renyi:16,0.2:7`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub name: String,
    pub params: Vec<f64>,
    pub seed: Option<u64>,
}

impl GeneratorSpec {
    pub fn new(name: &str, params: &[f64], seed: Option<u64>) -> Self {
        GeneratorSpec {
            name: name.to_string(),
            params: params.to_vec(),
            seed,
        }
    }

    pub fn build(&self) -> Result<Graph, GraphError> {
        generate(&self.name, &self.params, self.seed)
    }
}

impl FromStr for GeneratorSpec {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::BadSpec(s.to_string());
        let mut parts = s.split(':');
        let name = parts.next().filter(|n| !n.is_empty()).ok_or_else(bad)?;
        let params = match parts.next() {
            None | Some("") => Vec::new(),
            Some(list) => list
                .split(',')
                .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?,
        };
        let seed = match parts.next() {
            None | Some("") => None,
            Some(seed) => Some(seed.trim().parse::<u64>().map_err(|_| bad())?),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(GeneratorSpec {
            name: name.to_string(),
            params,
            seed,
        })
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if !self.params.is_empty() || self.seed.is_some() {
            let params: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
            write!(f, ":{}", params.join(","))?;
        }
        if let Some(seed) = self.seed {
            write!(f, ":{seed}")?;
        }
        Ok(())
    }
}

fn invalid(family: &str, msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParams {
        family: family.to_string(),
        msg: msg.into(),
    }
}

fn int_params(
    family: &str,
    params: &[f64],
    arity: Option<usize>,
) -> Result<Vec<usize>, GraphError> {
    if let Some(k) = arity {
        if params.len() != k {
            return Err(invalid(
                family,
                format!("expected {k} parameter(s), got {}", params.len()),
            ));
        }
    }
    params
        .iter()
        .map(|&p| {
            if p >= 0.0 && p.fract() == 0.0 && p <= u32::MAX as f64 {
                Ok(p as usize)
            } else {
                Err(invalid(
                    family,
                    format!("`{p}` is not a nonnegative integer"),
                ))
            }
        })
        .collect()
}

fn rng_for(family: &str, seed: Option<u64>) -> Result<ChaCha8Rng, GraphError> {
    seed.map(ChaCha8Rng::seed_from_u64)
        .ok_or_else(|| GraphError::MissingSeed(family.to_string()))
}

/// Builds the named graph family.
///
/// | name | params |
/// |------|--------|
/// | `path` | `n` |
/// | `cycle` | `n ≥ 3` |
/// | `star` | `k` leaves (k + 1 nodes) |
/// | `complete` | `n` |
/// | `complete_bipartite` | `a, b` |
/// | `frucht` | none |
/// | `random_regular` | `n, d` with `n·d` even, `d < n`; seeded |
/// | `erdos_renyi` | `n, p` with `p ∈ [0, 1]`; seeded |
/// | `disjoint_union_cliques` | clique sizes |
/// | `random_tree` | `n`; seeded, uniform over labeled trees |
pub fn generate(name: &str, params: &[f64], seed: Option<u64>) -> Result<Graph, GraphError> {
    match name {
        "path" => {
            let n = int_params(name, params, Some(1))?[0];
            Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
        }
        "cycle" => {
            let n = int_params(name, params, Some(1))?[0];
            if n < 3 {
                return Err(invalid(name, "a simple cycle needs at least 3 nodes"));
            }
            Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
        }
        "star" => {
            let k = int_params(name, params, Some(1))?[0];
            Graph::from_edges(k + 1, (1..=k).map(|v| (0, v)))
        }
        "complete" => {
            let n = int_params(name, params, Some(1))?[0];
            Ok(complete(n))
        }
        "complete_bipartite" => {
            let ab = int_params(name, params, Some(2))?;
            let (a, b) = (ab[0], ab[1]);
            Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
        }
        "frucht" => {
            int_params(name, params, Some(0))?;
            Graph::from_edges(12, FRUCHT_EDGES)
        }
        "random_regular" => {
            let nd = int_params(name, params, Some(2))?;
            let mut rng = rng_for(name, seed)?;
            random_regular(nd[0], nd[1], &mut rng)
        }
        "erdos_renyi" => {
            if params.len() != 2 {
                return Err(invalid(name, "expected parameters n, p"));
            }
            let n = int_params(name, &params[..1], None)?[0];
            let p = params[1];
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid(
                    name,
                    format!("edge probability {p} outside [0, 1]"),
                ));
            }
            let mut rng = rng_for(name, seed)?;
            Ok(erdos_renyi(n, p, &mut rng))
        }
        "disjoint_union_cliques" => {
            let sizes = int_params(name, params, None)?;
            if sizes.is_empty() {
                return Err(invalid(name, "expected at least one clique size"));
            }
            Ok(sizes
                .iter()
                .fold(Graph::empty(0), |acc, &k| acc.disjoint_union(&complete(k))))
        }
        "random_tree" => {
            let n = int_params(name, params, Some(1))?[0];
            let mut rng = rng_for(name, seed)?;
            Ok(random_tree(n, &mut rng))
        }
        other => Err(GraphError::UnknownGenerator(other.to_string())),
    }
}

fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        .expect("complete graph edges are in range")
}

pub fn erdos_renyi<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("edges are in range")
}

/// Uniform random labeled tree via a random Prüfer sequence.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    if n <= 2 {
        return Graph::from_edges(n, (1..n).map(|v| (0, v))).expect("in range");
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut remaining = vec![1usize; n];
    for &c in &code {
        remaining[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (0..n)
            .find(|&v| remaining[v] == 1)
            .expect("a leaf always exists");
        edges.push((leaf, c));
        remaining[leaf] = 0;
        remaining[c] -= 1;
    }
    let last: Vec<usize> = (0..n).filter(|&v| remaining[v] == 1).collect();
    edges.push((last[0], last[1]));
    Graph::from_edges(n, edges).expect("in range")
}

/// Random `d`-regular graph by sequential point pairing with restarts.
pub fn random_regular<R: Rng>(n: usize, d: usize, rng: &mut R) -> Result<Graph, GraphError> {
    let family = "random_regular";
    if d > 0 && d >= n {
        return Err(invalid(
            family,
            format!("degree {d} must be below node count {n}"),
        ));
    }
    if (n * d) % 2 == 1 {
        return Err(invalid(family, format!("n·d = {} is odd", n * d)));
    }
    const MAX_RESTARTS: usize = 1000;
    const RANDOM_TRIES: usize = 64;
    'restart: for _ in 0..MAX_RESTARTS {
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        points.shuffle(rng);
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let mut edges = Vec::with_capacity(n * d / 2);
        let key = |u: usize, v: usize| (u.min(v), u.max(v));
        while !points.is_empty() {
            let m = points.len();
            let mut chosen = None;
            for _ in 0..RANDOM_TRIES {
                let a = rng.gen_range(0..m);
                let b = rng.gen_range(0..m);
                let (u, v) = (points[a], points[b]);
                if a != b && u != v && !seen.contains(&key(u, v)) {
                    chosen = Some((a, b));
                    break;
                }
            }
            if chosen.is_none() {
                let suitable: Vec<(usize, usize)> = (0..m)
                    .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
                    .filter(|&(a, b)| {
                        points[a] != points[b] && !seen.contains(&key(points[a], points[b]))
                    })
                    .collect();
                match suitable.choose(rng) {
                    Some(&pair) => chosen = Some(pair),
                    None => continue 'restart,
                }
            }
            let (a, b) = chosen.expect("pair selected");
            let (u, v) = (points[a], points[b]);
            seen.insert(key(u, v));
            edges.push((u, v));
            let (hi, lo) = (a.max(b), a.min(b));
            points.swap_remove(hi);
            points.swap_remove(lo);
        }
        return Graph::from_edges(n, edges);
    }
    Err(invalid(family, "pairing failed repeatedly"))
}
