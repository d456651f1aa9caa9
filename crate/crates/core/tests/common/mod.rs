#![allow(dead_code)]

use nodeorder::{generate, Graph};

/// Named graphs used throughout the suites, as `(label, graph)`.
pub fn named_graphs() -> Vec<(String, Graph)> {
    let specs: &[(&str, &[f64], Option<u64>)] = &[
        ("path", &[6.0], None),
        ("cycle", &[7.0], None),
        ("star", &[5.0], None),
        ("complete", &[5.0], None),
        ("complete_bipartite", &[3.0, 4.0], None),
        ("frucht", &[], None),
        ("random_regular", &[12.0, 3.0], Some(42)),
        ("disjoint_union_cliques", &[3.0, 2.0], None),
        ("random_tree", &[9.0], Some(5)),
    ];
    specs
        .iter()
        .map(|&(name, params, seed)| {
            (
                format!("{name}{params:?}"),
                generate(name, params, seed).unwrap(),
            )
        })
        .collect()
}

/// 100 seeded Erdős–Rényi graphs cycling through n ∈ {8, 16, 32}, p ∈ {0.2, 0.5}.
pub fn erdos_renyi_suite() -> Vec<(String, Graph)> {
    let combos = [
        (8.0, 0.2),
        (8.0, 0.5),
        (16.0, 0.2),
        (16.0, 0.5),
        (32.0, 0.2),
        (32.0, 0.5),
    ];
    (0..100u64)
        .map(|seed| {
            let (n, p) = combos[seed as usize % combos.len()];
            let g = generate("erdos_renyi", &[n, p], Some(seed)).unwrap();
            (format!("erdos_renyi[{n}, {p}]:{seed}"), g)
        })
        .collect()
}

/// The full suite: the seeded random graphs followed by the named ones.
pub fn suite() -> Vec<(String, Graph)> {
    let mut all = erdos_renyi_suite();
    all.extend(named_graphs());
    all
}

/// Small graphs (n ≤ 6): every named family at small sizes plus 30 seeded
/// random ones.
pub fn small_graphs() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    let mut push = |name: &str, params: &[f64], seed: Option<u64>| {
        let g = generate(name, params, seed).unwrap();
        assert!(g.node_count() <= 6);
        out.push((format!("{name}{params:?}:{seed:?}"), g));
    };
    for n in 1..=6 {
        push("path", &[n as f64], None);
        push("complete", &[n as f64], None);
    }
    for n in 3..=6 {
        push("cycle", &[n as f64], None);
    }
    for k in 1..=5 {
        push("star", &[k as f64], None);
    }
    for a in 1..=3 {
        for b in a..=(6 - a) {
            push("complete_bipartite", &[a as f64, b as f64], None);
        }
    }
    for sizes in [
        &[3.0, 2.0][..],
        &[2.0, 2.0],
        &[1.0, 2.0, 3.0],
        &[4.0, 1.0],
        &[3.0, 3.0],
    ] {
        push("disjoint_union_cliques", sizes, None);
    }
    push("random_regular", &[6.0, 3.0], Some(1));
    push("random_regular", &[6.0, 2.0], Some(2));
    for seed in 0..30u64 {
        let n = 2 + seed % 5;
        let p = if seed % 2 == 0 { 0.6 } else { 0.3 };
        push("erdos_renyi", &[n as f64, p], Some(seed));
    }
    out
}
